use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mocktheta::cache;
use mocktheta::error::Result;
use mocktheta::exec;
use mocktheta::fixed::Fx;
use mocktheta::forms::{
    self, eisenstein_e_vector, eisenstein_e2, eisenstein_e2_bracket2, eisenstein_sigma2,
    f_plus_components, theta_g, CoeffTable,
};
use mocktheta::holproj;
use mocktheta::rat::{rat, rat_to_string};
use mocktheta::relations::{self, RelationReport};
use mocktheta::series::{QExp, VectorQExp};

#[derive(Parser)]
#[command(name = "mocktheta", version, about = "q-expansions and coefficient identities of the mock theta functions f and omega")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the q-expansion of a named series.
    Expand {
        /// One of: f, omega, G0, G1, G2, E2, E2b2, Esigma2, E, Fplus
        #[arg(long)]
        series: String,
        /// Number of integer exponent steps to expand to.
        #[arg(long)]
        order: i64,
        /// Output format: json or csv.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Check a coefficient identity over a sweep of indices.
    Verify {
        /// One of: thm11, thm47a, thm47b, thm47c, cor45, hurwitz,
        /// prime-rhs, holproj-cross
        #[arg(long)]
        relation: String,
        /// Largest index (or expansion order, for cor45) to check.
        #[arg(long, default_value_t = 50)]
        max_n: i64,
        /// Worker threads; 0 picks a default, 1 forces sequential.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run an observational experiment.
    Experiment {
        /// Experiment name; currently only modM.
        kind: String,
        /// Odd modulus greater than 1.
        #[arg(long)]
        modulus: i64,
        /// Count coefficients c(f; n) for n < max-x.
        #[arg(long, default_value_t = 10000)]
        max_x: usize,
    },
}

fn table_from_qexp(q: &QExp, label: &str, order: i64) -> Result<CoeffTable> {
    let values = (0..order)
        .map(|n| q.coeff_num(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoeffTable::new(label, values))
}

fn print_scalar(q: &QExp, format: &str) -> bool {
    match format {
        "json" => {
            println!("{}", q.to_json());
            true
        }
        "csv" => {
            println!("exponent,coefficient");
            for (e, c) in q.terms() {
                println!("{},{}", rat_to_string(&rat(e, q.denom())), rat_to_string(c));
            }
            true
        }
        _ => false,
    }
}

fn print_vector(v: &VectorQExp, format: &str) -> bool {
    match format {
        "json" => {
            let comps: Vec<_> = v.iter().map(|q| q.to_json()).collect();
            println!("{}", serde_json::json!({ "components": comps }));
            true
        }
        "csv" => {
            println!("component,exponent,coefficient");
            for (i, q) in v.iter().enumerate() {
                for (e, c) in q.terms() {
                    println!(
                        "{},{},{}",
                        i,
                        rat_to_string(&rat(e, q.denom())),
                        rat_to_string(c)
                    );
                }
            }
            true
        }
        _ => false,
    }
}

fn cmd_expand(series: &str, order: i64, format: &str) -> ExitCode {
    if order < 1 {
        eprintln!("error: order must be at least 1");
        return ExitCode::from(2);
    }
    let dir = cache::cache_dir();
    let scalar = match series {
        "f" => Some(cache::cached_qexp(&dir, "f", order, || {
            forms::expand_f_qexp(order)
        })),
        "omega" => Some(cache::cached_qexp(&dir, "omega", order, || {
            forms::expand_omega_qexp(order)
        })),
        "G0" => Some(theta_g(0, order)),
        "G1" => Some(theta_g(1, order)),
        "G2" => Some(theta_g(2, order)),
        "E2" => Some(eisenstein_e2(order)),
        "E2b2" => Some(eisenstein_e2_bracket2(order)),
        _ => None,
    };
    let ok = if let Some(q) = scalar {
        print_scalar(&q, format)
    } else {
        let vector = match series {
            "Esigma2" => Some(eisenstein_sigma2(order)),
            "E" => Some(eisenstein_e_vector(order)),
            "Fplus" => Some(f_plus_components(order)),
            _ => {
                eprintln!("error: unknown series '{}'", series);
                return ExitCode::from(2);
            }
        };
        print_vector(&vector.unwrap(), format)
    };
    if !ok {
        eprintln!("error: unknown format '{}' (expected json or csv)", format);
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}

fn summarize(relation: &str, reports: &[RelationReport]) -> ExitCode {
    let failures: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    for f in failures.iter().take(10) {
        println!(
            "FAIL {} at n = {}: lhs = {}, rhs = {}",
            f.relation,
            rat_to_string(&f.n),
            rat_to_string(&f.lhs),
            rat_to_string(&f.rhs)
        );
    }
    if failures.is_empty() {
        println!("{}: {} checks, all pass", relation, reports.len());
        ExitCode::SUCCESS
    } else {
        println!(
            "{}: {} checks, {} FAILED",
            relation,
            reports.len(),
            failures.len()
        );
        ExitCode::from(1)
    }
}

fn cmd_verify(relation: &str, max_n: i64, jobs: usize) -> ExitCode {
    if max_n < 1 {
        eprintln!("error: max-n must be at least 1");
        return ExitCode::from(2);
    }
    if jobs > 1 {
        exec::configure_jobs(jobs);
    }
    let parallel = jobs != 1;
    let dir = cache::cache_dir();
    let run = || -> Result<(Vec<RelationReport>, &'static str)> {
        match relation {
            "thm11" => {
                let q = cache::cached_qexp(&dir, "f", max_n + 1, || {
                    forms::expand_f_qexp(max_n + 1)
                });
                let f = table_from_qexp(&q, "f", max_n + 1)?;
                Ok((relations::verify_thm11_with(&f, max_n, parallel)?, "thm11"))
            }
            "thm47a" => {
                let q = cache::cached_qexp(&dir, "f", max_n + 1, || {
                    forms::expand_f_qexp(max_n + 1)
                });
                let f = table_from_qexp(&q, "f", max_n + 1)?;
                Ok((relations::verify_thm47a_with(&f, max_n, parallel)?, "thm47a"))
            }
            "thm47b" => {
                let q = cache::cached_qexp(&dir, "omega", 2 * max_n + 1, || {
                    forms::expand_omega_qexp(2 * max_n + 1)
                });
                let w = table_from_qexp(&q, "omega", 2 * max_n + 1)?;
                Ok((relations::verify_thm47b_with(&w, max_n, parallel)?, "thm47b"))
            }
            "thm47c" => {
                let q = cache::cached_qexp(&dir, "omega", 2 * max_n + 1, || {
                    forms::expand_omega_qexp(2 * max_n + 1)
                });
                let w = table_from_qexp(&q, "omega", 2 * max_n + 1)?;
                Ok((relations::verify_thm47c_with(&w, max_n, parallel)?, "thm47c"))
            }
            "cor45" => Ok((relations::verify_cor45(max_n.max(2))?, "cor45")),
            "hurwitz" => Ok((relations::verify_hurwitz(max_n, parallel)?, "hurwitz")),
            "prime-rhs" => Ok((
                relations::prime_rhs_check(max_n.max(7), parallel)?,
                "prime-rhs",
            )),
            "holproj-cross" => {
                let tol = Fx::pow10(-25);
                let reports = holproj::verify_holproj_cross(max_n, &tol, parallel)?;
                let failures = reports.iter().filter(|r| !r.pass).count();
                for r in reports.iter().filter(|r| !r.pass).take(10) {
                    println!(
                        "FAIL holproj-cross at n = {}: |diff| = {}",
                        rat_to_string(&r.n),
                        r.diff
                    );
                }
                if failures == 0 {
                    println!("holproj-cross: {} checks, all pass", reports.len());
                    std::process::exit(0);
                }
                println!(
                    "holproj-cross: {} checks, {} FAILED",
                    reports.len(),
                    failures
                );
                std::process::exit(1);
            }
            _ => Err(mocktheta::error::Error::Domain(format!(
                "unknown relation '{}'",
                relation
            ))),
        }
    };
    match run() {
        Ok((reports, name)) => summarize(name, &reports),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn cmd_experiment(kind: &str, modulus: i64, max_x: usize) -> ExitCode {
    if kind != "modM" {
        eprintln!("error: unknown experiment '{}'", kind);
        return ExitCode::from(2);
    }
    match relations::mod_m_experiment(modulus, max_x) {
        Ok(report) => {
            print!("{}", report.to_csv());
            println!(
                "modM: modulus {}, {} of {} coefficients nonzero, reference {:.3}",
                report.modulus, report.count, report.max_x, report.reference
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Expand {
            series,
            order,
            format,
        } => cmd_expand(&series, order, &format),
        Cmd::Verify {
            relation,
            max_n,
            jobs,
        } => cmd_verify(&relation, max_n, jobs),
        Cmd::Experiment {
            kind,
            modulus,
            max_x,
        } => cmd_experiment(kind.as_str(), modulus, max_x),
    }
}
