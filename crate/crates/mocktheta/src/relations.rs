//! Exact verification of the coefficient recursions: the divisor-sum
//! recursions for f and omega, the product identity that generates them,
//! the classical class-number relation, and the congruence-counting
//! experiment.

use num_traits::Signed;
use serde_json::{json, Value};

use crate::arith::{is_prime, sgn_plus, sigma, signed_divisor_pairs, HurwitzTable};
use crate::error::{Error, Result};
use crate::exec::map_indexed;
use crate::forms::{
    eisenstein_e_vector, expand_f, expand_f_mod, expand_omega, f_plus_components, theta_g, CoeffTable,
};
use crate::rat::{is_integer, rat, rat_to_string, rint, to_i64, Rat};
use crate::series::QExp;

/// One verified instance of a relation: both sides at index n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub relation: String,
    pub n: Rat,
    pub lhs: Rat,
    pub rhs: Rat,
    pub pass: bool,
}

impl RelationReport {
    fn new(relation: &str, n: Rat, lhs: Rat, rhs: Rat) -> RelationReport {
        let pass = lhs == rhs;
        RelationReport {
            relation: relation.to_string(),
            n,
            lhs,
            rhs,
            pass,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "relation": self.relation,
            "n": rat_to_string(&self.n),
            "lhs": rat_to_string(&self.lhs),
            "rhs": rat_to_string(&self.rhs),
            "pass": self.pass,
        })
    }
}

/// JSON-lines rendering, one report per line.
pub fn reports_to_jsonl(reports: &[RelationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.to_json().to_string());
        out.push('\n');
    }
    out
}

/// CSV rendering with a header row.
pub fn reports_to_csv(reports: &[RelationReport]) -> String {
    let mut out = String::from("relation,n,lhs,rhs,pass\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.relation,
            rat_to_string(&r.n),
            rat_to_string(&r.lhs),
            rat_to_string(&r.rhs),
            r.pass
        ));
    }
    out
}

pub fn all_pass(reports: &[RelationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

// --- divisor-pair sums -------------------------------------------------

/// sum over 2n = ab with N = (-3a+b-1)/6 and Nt = (3a+b-1)/6 integers of
/// sgn+(N) sgn+(Nt) (|N + 1/6| - |Nt + 1/6|).
pub fn pair_sum_11(n: i64) -> Result<Rat> {
    let mut sum = rint(0);
    for p in signed_divisor_pairs(2 * n)? {
        let (a, b) = (p.a, p.b);
        if (-3 * a + b - 1).rem_euclid(6) != 0 || (3 * a + b - 1).rem_euclid(6) != 0 {
            continue;
        }
        let big_n = (-3 * a + b - 1) / 6;
        let big_nt = (3 * a + b - 1) / 6;
        let s = sgn_plus(&rint(big_n)) * sgn_plus(&rint(big_nt));
        sum += ((rint(big_n) + rat(1, 6)).abs() - (rint(big_nt) + rat(1, 6)).abs()) * rint(s);
    }
    Ok(sum)
}

/// sum over 8n + 1 = ab with N = (3a-b-2)/12 and Nt = (3a+b-4)/12 integers of
/// sgn+(N) sgn+(Nt) (|N + 1/6| - |Nt + 1/3|).
pub fn pair_sum_45(n: &Rat) -> Result<Rat> {
    if !is_integer(&(n * rint(2))) {
        return Err(Error::Domain(format!("index {} is not on the (1/2)Z lattice", n)));
    }
    let target = n * rint(8) + rint(1);
    let mut sum = rint(0);
    for p in signed_divisor_pairs(to_i64(&target))? {
        let (a, b) = (p.a, p.b);
        if (3 * a - b - 2).rem_euclid(12) != 0 || (3 * a + b - 4).rem_euclid(12) != 0 {
            continue;
        }
        let big_n = (3 * a - b - 2) / 12;
        let big_nt = (3 * a + b - 4) / 12;
        let s = sgn_plus(&rint(big_n)) * sgn_plus(&rint(big_nt));
        sum += ((rint(big_n) + rat(1, 6)).abs() - (rint(big_nt) + rat(1, 3)).abs()) * rint(s);
    }
    Ok(sum)
}

/// sum over 8n + 3 = ab with N = (3a-b-4)/12 and Nt = (3a+b-2)/12 integers of
/// sgn+(N) sgn+(Nt) (|N + 1/3| - |Nt + 1/6|).
pub fn pair_sum_46(n: &Rat) -> Result<Rat> {
    if !is_integer(&(n * rint(2))) {
        return Err(Error::Domain(format!("index {} is not on the (1/2)Z lattice", n)));
    }
    let target = n * rint(8) + rint(3);
    let mut sum = rint(0);
    for p in signed_divisor_pairs(to_i64(&target))? {
        let (a, b) = (p.a, p.b);
        if (3 * a - b - 4).rem_euclid(12) != 0 || (3 * a + b - 2).rem_euclid(12) != 0 {
            continue;
        }
        let big_n = (3 * a - b - 4) / 12;
        let big_nt = (3 * a + b - 2) / 12;
        let s = sgn_plus(&rint(big_n)) * sgn_plus(&rint(big_nt));
        sum += ((rint(big_n) + rat(1, 3)).abs() - (rint(big_nt) + rat(1, 6)).abs()) * rint(s);
    }
    Ok(sum)
}

/// sum over 2n = ab with N = (a-3b-2)/6 and Nt = (a+3b-2)/6, where Nt is an
/// integer and N is an odd integer for h = 0 and an even integer for h = 1,
/// of sgn+(N) sgn+(Nt) (|N + 1/3| - |Nt + 1/3|).
pub fn pair_sum_47(n: &Rat, h: i64) -> Result<Rat> {
    assert!(h == 0 || h == 1);
    let target = n * rint(2);
    if !is_integer(&target) {
        return Err(Error::Domain(format!("index {} is not on the (1/2)Z lattice", n)));
    }
    let mut sum = rint(0);
    for p in signed_divisor_pairs(to_i64(&target))? {
        let (a, b) = (p.a, p.b);
        if (a - 3 * b - 2).rem_euclid(6) != 0 || (a + 3 * b - 2).rem_euclid(6) != 0 {
            continue;
        }
        let big_n = (a - 3 * b - 2) / 6;
        if big_n.rem_euclid(2) != 1 - h {
            continue;
        }
        let big_nt = (a + 3 * b - 2) / 6;
        let s = sgn_plus(&rint(big_n)) * sgn_plus(&rint(big_nt));
        sum += ((rint(big_n) + rat(1, 3)).abs() - (rint(big_nt) + rat(1, 3)).abs()) * rint(s);
    }
    Ok(sum)
}

/// Correction term for the second omega recursion:
/// (2/3)(sigma(n/2) - sigma(n)) for integer n, (1/3)(sigma(2n) - 2 sigma(n))
/// for half-integer n.
pub fn r_term(n: &Rat) -> Rat {
    if is_integer(n) {
        (sigma(&(n / rint(2))) - sigma(n)) * rat(2, 3)
    } else {
        (sigma(&(n * rint(2))) - sigma(n) * rint(2)) * rat(1, 3)
    }
}

// --- coefficient-side sums ---------------------------------------------

/// Coefficient of omega restricted to indices congruent to h mod 2; zero off
/// the nonnegative integers in the right class.
fn c_h_omega(w: &CoeffTable, h: i64, idx: &Rat) -> Result<Rat> {
    if !is_integer(idx) {
        return Ok(rint(0));
    }
    let j = to_i64(idx);
    if j < 0 || j.rem_euclid(2) != h {
        return Ok(rint(0));
    }
    w.get(j).cloned()
}

fn m_bound(two_n: i64) -> i64 {
    if two_n < 0 {
        return 0;
    }
    let mut b = 1i64;
    while 3 * b * b - 2 * b <= two_n {
        b += 1;
    }
    b + 1
}

/// sum over 3m^2 + m <= 2n of (m + 1/6) c(f; n - (3m^2 + m)/2).
pub fn thm11_lhs(f: &CoeffTable, n: i64) -> Result<Rat> {
    let mut sum = rint(0);
    let b = m_bound(2 * n);
    for m in -b..=b {
        let t = 3 * m * m + m;
        if t > 2 * n {
            continue;
        }
        sum += (rint(m) + rat(1, 6)) * f.get(n - t / 2)?;
    }
    Ok(sum)
}

/// (4/3) sigma(n) - (16/3) sigma(n/2) - 2 * pair_sum_11(n).
pub fn thm11_rhs(n: i64) -> Result<Rat> {
    Ok(sigma(&rint(n)) * rat(4, 3) - sigma(&rat(n, 2)) * rat(16, 3)
        - pair_sum_11(n)? * rint(2))
}

/// sum over 3m^2 + 2m <= 2n of (m + 1/3) c(f; n - (3/2)m^2 - m), with
/// c(f; x) = 0 off the integers.
pub fn thm45_lhs(f: &CoeffTable, n: &Rat) -> Result<Rat> {
    let two_n = to_i64(&(n * rint(2)));
    let mut sum = rint(0);
    let b = m_bound(two_n);
    for m in -b..=b {
        if 3 * m * m + 2 * m > two_n {
            continue;
        }
        let idx = n - rat(3 * m * m, 2) - rint(m);
        sum += (rint(m) + rat(1, 3)) * f.get_at(&idx)?;
    }
    Ok(sum)
}

/// sum over 3m^2 + m <= 2n of (m + 1/6) c_h(omega; 2n - 3m^2 - m).
pub fn thm46_lhs(w: &CoeffTable, h: i64, n: &Rat) -> Result<Rat> {
    let two_n = to_i64(&(n * rint(2)));
    let mut sum = rint(0);
    let b = m_bound(two_n);
    for m in -b..=b {
        let t = 3 * m * m + m;
        if t > two_n {
            continue;
        }
        sum += (rint(m) + rat(1, 6)) * c_h_omega(w, h, &rint(two_n - t))?;
    }
    Ok(sum)
}

/// sum over 3m^2 + 2m + 1 <= 2n of (m + 1/3) c_h(omega; 2n - 3m^2 - 2m - 1).
pub fn thm47_lhs(w: &CoeffTable, h: i64, n: &Rat) -> Result<Rat> {
    let two_n = to_i64(&(n * rint(2)));
    let mut sum = rint(0);
    let b = m_bound(two_n);
    for m in -b..=b {
        let t = 3 * m * m + 2 * m + 1;
        if t > two_n {
            continue;
        }
        sum += (rint(m) + rat(1, 3)) * c_h_omega(w, h, &rint(two_n - t))?;
    }
    Ok(sum)
}

// --- sweep drivers ------------------------------------------------------

fn collect_reports(results: Vec<Result<RelationReport>>) -> Result<Vec<RelationReport>> {
    results.into_iter().collect()
}

/// First recursion for c(f; n) over integer 1 <= n <= max_n, against a
/// supplied coefficient table (needs entries up to max_n).
pub fn verify_thm11_with(
    f: &CoeffTable,
    max_n: i64,
    parallel: bool,
) -> Result<Vec<RelationReport>> {
    assert!(max_n >= 1);
    collect_reports(map_indexed(
        max_n as usize,
        |i| {
            let n = i as i64 + 1;
            Ok(RelationReport::new(
                "thm11",
                rint(n),
                thm11_lhs(f, n)?,
                thm11_rhs(n)?,
            ))
        },
        parallel,
    ))
}

/// First recursion for c(f; n) over integer 1 <= n <= max_n.
pub fn verify_thm11(max_n: i64, parallel: bool) -> Result<Vec<RelationReport>> {
    verify_thm11_with(&expand_f(max_n + 1), max_n, parallel)
}

/// Second recursion for c(f; n) over n = j/2, 0 <= j <= 2 max_n, against a
/// supplied coefficient table.
pub fn verify_thm47a_with(
    f: &CoeffTable,
    max_n: i64,
    parallel: bool,
) -> Result<Vec<RelationReport>> {
    assert!(max_n >= 1);
    collect_reports(map_indexed(
        (2 * max_n + 1) as usize,
        |j| {
            let n = rat(j as i64, 2);
            Ok(RelationReport::new(
                "thm47a",
                n.clone(),
                thm45_lhs(f, &n)?,
                pair_sum_45(&n)? * rint(-2),
            ))
        },
        parallel,
    ))
}

/// Second recursion for c(f; n) over n = j/2, 0 <= j <= 2 max_n.
pub fn verify_thm47a(max_n: i64, parallel: bool) -> Result<Vec<RelationReport>> {
    verify_thm47a_with(&expand_f(max_n + 1), max_n, parallel)
}

/// First recursion for c(omega; n), h = 0 and 1, over n = j/2 with
/// j = h mod 2, 0 <= j <= 2 max_n, against a supplied coefficient table
/// (needs entries up to 2 max_n).
pub fn verify_thm47b_with(
    w: &CoeffTable,
    max_n: i64,
    parallel: bool,
) -> Result<Vec<RelationReport>> {
    assert!(max_n >= 1);
    let mut out = Vec::new();
    for h in [0i64, 1] {
        let js: Vec<i64> = (0..=2 * max_n).filter(|j| j.rem_euclid(2) == h).collect();
        let label = format!("thm47b-h{}", h);
        out.extend(collect_reports(map_indexed(
            js.len(),
            |i| {
                let n = rat(js[i], 2);
                let sign = if h == 0 { -1 } else { 1 };
                Ok(RelationReport::new(
                    &label,
                    n.clone(),
                    thm46_lhs(w, h, &n)?,
                    pair_sum_46(&n)? * rint(sign),
                ))
            },
            parallel,
        ))?);
    }
    Ok(out)
}

/// First recursion for c(omega; n), h = 0 and 1, over n = j/2 with
/// j = h mod 2, 0 <= j <= 2 max_n.
pub fn verify_thm47b(max_n: i64, parallel: bool) -> Result<Vec<RelationReport>> {
    verify_thm47b_with(&expand_omega(2 * max_n + 1), max_n, parallel)
}

/// Second recursion for c(omega; n), h = 0 and 1, over n = j/2,
/// 1 <= j <= 2 max_n, against a supplied coefficient table (needs entries up
/// to 2 max_n - 1).  The index n = 0 is excluded: its divisor-pair sum
/// ranges over the infinite family ab = 0.
pub fn verify_thm47c_with(
    w: &CoeffTable,
    max_n: i64,
    parallel: bool,
) -> Result<Vec<RelationReport>> {
    assert!(max_n >= 1);
    let mut out = Vec::new();
    for h in [0i64, 1] {
        let label = format!("thm47c-h{}", h);
        out.extend(collect_reports(map_indexed(
            (2 * max_n) as usize,
            |i| {
                let n = rat(i as i64 + 1, 2);
                let sign = if h == 0 { 1 } else { -1 };
                let rhs = r_term(&n) * rint(sign) + pair_sum_47(&n, h)? * rint(-sign);
                Ok(RelationReport::new(&label, n.clone(), thm47_lhs(w, h, &n)?, rhs))
            },
            parallel,
        ))?);
    }
    Ok(out)
}

/// Second recursion for c(omega; n), h = 0 and 1, over n = j/2,
/// 1 <= j <= 2 max_n.
pub fn verify_thm47c(max_n: i64, parallel: bool) -> Result<Vec<RelationReport>> {
    verify_thm47c_with(&expand_omega(2 * max_n + 1), max_n, parallel)
}

// --- the product identity ----------------------------------------------

fn cor45_block<F>(
    label: &str,
    p: &QExp,
    e_comb: Option<&QExp>,
    start_e: i64,
    rhs: F,
) -> Result<Vec<RelationReport>>
where
    F: Fn(&Rat) -> Result<Rat>,
{
    assert_eq!(p.denom(), 24);
    let mut bound = p.trunc();
    if let Some(ec) = e_comb {
        assert_eq!(ec.denom(), 24);
        bound = bound.min(ec.trunc());
    }
    let mut out = Vec::new();
    let mut e = start_e;
    while e < bound {
        let x = rat(e, 24);
        let mut lhs = -p.coeff(&x)?;
        if let Some(ec) = e_comb {
            lhs -= ec.coeff(&x)? * rat(1, 6);
        }
        out.push(RelationReport::new(label, x.clone(), lhs, rhs(&x)?));
        e += 24;
    }
    Ok(out)
}

/// Coefficientwise verification of the product identity behind all four
/// recursions: for every residue class supported by a component product
/// F_i G_j, the coefficients of -F_i G_j minus the matching Eisenstein
/// contribution reproduce the corresponding divisor-pair sum.
pub fn verify_cor45(order: i64) -> Result<Vec<RelationReport>> {
    assert!(order >= 2);
    let fp = f_plus_components(order);
    let g0 = theta_g(0, order);
    let g1 = theta_g(1, order);
    let g2 = theta_g(2, order);
    let g_plus = g1.sub(&g2)?; // even-index theta terms, doubled
    let g_minus = g1.neg().sub(&g2)?; // odd-index theta terms, doubled
    let f_even = fp.get(1).add(fp.get(2))?; // even omega indices, doubled
    let f_odd = fp.get(1).sub(fp.get(2))?; // odd omega indices, doubled
    let e = eisenstein_e_vector(order);
    let e1 = e.get(0).embed(24)?;
    let e5 = e.get(4).embed(24)?;
    let e9 = e.get(8).embed(24)?;

    let mut out = Vec::new();

    // Component (0,0): integer indices, Eisenstein part from the first entry.
    let p00 = fp.get(0).mul(&g0)?;
    // Constant term: the Eisenstein side contributes exactly 1/6 there, and
    // the divisor-pair sum is not defined at 0.
    out.push(RelationReport::new(
        "cor45-00-const",
        rint(0),
        -p00.coeff(&rint(0))?,
        rat(1, 6),
    ));
    out.extend(cor45_block("cor45-00", &p00, Some(&e1), 24, |x| {
        Ok(pair_sum_11(to_i64(x))? * rint(-2))
    })?);

    // Components (0,1)-(0,2): indices in Z + 1/8 of the raw product; after
    // reindexing, integer n (exponents 3 mod 24) and half-integer n
    // (exponents 15 mod 24).  No Eisenstein contribution.
    for (label, gc, start) in [
        ("cor45-45-int", &g_plus, 3i64),
        ("cor45-45-half", &g_minus, 15),
    ] {
        let p = fp.get(0).mul(gc)?;
        out.extend(cor45_block(label, &p, None, start, |x| {
            let n = x - rat(3, 24);
            Ok(pair_sum_45(&n)? * rint(4))
        })?);
    }

    // Components (1,0) and (2,0): omega-side recursion, exponents 9 and 21
    // mod 24 for h = 0 and h = 1.
    for (h, fc, start) in [(0i64, &f_even, 9i64), (1, &f_odd, 21)] {
        let p = fc.mul(&g0)?;
        let label = format!("cor45-46-h{}", h);
        let sign = if h == 0 { -4 } else { 4 };
        out.extend(cor45_block(&label, &p, None, start, |x| {
            let n = x - rat(9, 24);
            Ok(pair_sum_46(&n)? * rint(sign))
        })?);
    }

    // Components (1,1), (1,2), (2,1), (2,2): integer exponent products, with
    // the Eisenstein combinations of entries five and nine.
    let e5_minus_e9 = e5.sub(&e9)?;
    let e5_plus_e9 = e5.add(&e9)?;
    let combos: [(&QExp, &QExp, QExp, i64, i64); 4] = [
        (&f_even, &g_plus, e5_minus_e9.clone(), 0, 12), // h = 0, half-integer n
        (&f_odd, &g_plus, e5_plus_e9.clone(), 1, 24),   // h = 1, integer n
        (&f_even, &g_minus, e5_plus_e9.neg(), 0, 24),   // h = 0, integer n
        (&f_odd, &g_minus, e5_minus_e9.neg(), 1, 12),   // h = 1, half-integer n
    ];
    for (i, (fc, gc, ec, h, start)) in combos.iter().enumerate() {
        let p = fc.mul(gc)?;
        let label = format!("cor45-47-{}", i);
        let sign = if *h == 0 { 8 } else { -8 };
        out.extend(cor45_block(&label, &p, Some(ec), *start, |x| {
            Ok(pair_sum_47(x, *h)? * rint(sign))
        })?);
    }

    Ok(out)
}

// --- class numbers, primes, congruences ---------------------------------

/// Classical relation sum_{m^2 <= 4N} H(4N - m^2) = 2 sigma(N)
/// - sum_{N = ab, a,b > 0} min(a, b), for 1 <= N <= max_n.
pub fn verify_hurwitz(max_n: i64, parallel: bool) -> Result<Vec<RelationReport>> {
    assert!(max_n >= 1);
    let table = HurwitzTable::build((4 * max_n + 1) as usize)?;
    collect_reports(map_indexed(
        max_n as usize,
        |i| {
            let n = i as i64 + 1;
            let mut lhs = rint(0);
            let mut m = 0i64;
            while m * m <= 4 * n {
                lhs += table.get(4 * n - m * m)?;
                if m > 0 {
                    lhs += table.get(4 * n - m * m)?;
                }
                m += 1;
            }
            let mut min_sum = rint(0);
            let mut a = 1i64;
            while a * a <= n {
                if n % a == 0 {
                    let b = n / a;
                    min_sum += rint(if a == b { a } else { 2 * a });
                }
                a += 1;
            }
            let rhs = sigma(&rint(n)) * rint(2) - min_sum;
            Ok(RelationReport::new("hurwitz", rint(n), lhs, rhs))
        },
        parallel,
    ))
}

/// For prime n >= 7, the divisor-sum side of the first f recursion collapses
/// to (4/3)(n + 4); checked for all primes in [7, max_n].
pub fn prime_rhs_check(max_n: i64, parallel: bool) -> Result<Vec<RelationReport>> {
    let primes: Vec<i64> = (7..=max_n).filter(|&n| is_prime(n)).collect();
    collect_reports(map_indexed(
        primes.len(),
        |i| {
            let p = primes[i];
            Ok(RelationReport::new(
                "prime-rhs",
                rint(p),
                thm11_rhs(p)?,
                (rint(p) + rint(4)) * rat(4, 3),
            ))
        },
        parallel,
    ))
}

/// One checkpoint of the congruence-counting experiment.
#[derive(Clone, Debug)]
pub struct ModMRow {
    pub x: usize,
    pub count: usize,
    pub reference: f64,
}

/// Count of n < X with c(f; n) nonzero mod M, against the reference curve
/// sqrt(X) / log X.
#[derive(Clone, Debug)]
pub struct ModMReport {
    pub modulus: i64,
    pub max_x: usize,
    pub count: usize,
    pub reference: f64,
    pub rows: Vec<ModMRow>,
}

impl ModMReport {
    pub fn to_json(&self) -> Value {
        json!({
            "modulus": self.modulus,
            "max_x": self.max_x,
            "count": self.count,
            "reference": self.reference,
            "rows": self.rows.iter().map(|r| json!({
                "x": r.x, "count": r.count, "reference": r.reference,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,count,reference\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{:.3}\n", r.x, r.count, r.reference));
        }
        out
    }
}

fn reference_curve(x: usize) -> f64 {
    let xf = x as f64;
    xf.sqrt() / xf.ln()
}

/// Counts n < max_x with c(f; n) nonzero modulo an odd modulus M > 1, with
/// checkpoints at powers of ten.
pub fn mod_m_experiment(modulus: i64, max_x: usize) -> Result<ModMReport> {
    if modulus <= 1 || modulus % 2 == 0 {
        return Err(Error::Domain(format!(
            "modulus must be odd and greater than 1, got {}",
            modulus
        )));
    }
    assert!(max_x >= 10);
    let residues = expand_f_mod(max_x, modulus);
    let mut rows = Vec::new();
    let mut checkpoint = 10usize;
    let mut count = 0usize;
    for (n, r) in residues.iter().enumerate() {
        while n == checkpoint {
            rows.push(ModMRow {
                x: checkpoint,
                count,
                reference: reference_curve(checkpoint),
            });
            checkpoint *= 10;
        }
        if *r != 0 {
            count += 1;
        }
    }
    rows.push(ModMRow {
        x: max_x,
        count,
        reference: reference_curve(max_x),
    });
    Ok(ModMReport {
        modulus,
        max_x,
        count,
        reference: reference_curve(max_x),
        rows,
    })
}
