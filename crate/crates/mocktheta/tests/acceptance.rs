//! Acceptance gate: the full set of exact and numeric checks the crate
//! promises, each test printing one PASS line with its pinned bound.

use mocktheta::cyclotomic::CycNum;
use mocktheta::fixed::Fx;
use mocktheta::forms;
use mocktheta::holproj;
use mocktheta::numeric::{check_e2bracket_transformation, check_sigma2_s_invariance, UHPoint};
use mocktheta::rat::{rat, rint, Rat};
use mocktheta::relations::{self, all_pass};
use mocktheta::rep::{self, CycMat, Generator};
use mocktheta::series::QExp;

fn report(line: &str) {
    println!("PASS {}", line);
}

/// Exact coefficient recursion for f at every integer index up to 500.
#[test]
fn a01_f_recursion_exact_sweep() {
    let reports = relations::verify_thm11(500, true).unwrap();
    assert_eq!(reports.len(), 500);
    assert!(all_pass(&reports), "exact recursion for f failed");
    report("[1/10] f coefficient recursion exact for 1 <= n <= 500");
}

/// The smallest-index instance reproduced term by term: both sides equal
/// -2/3 and the divisor pair sum equals 1.
#[test]
fn a02_smallest_index_reproduction() {
    let f = forms::expand_f(4);
    let lhs = relations::thm11_lhs(&f, 1).unwrap();
    let rhs = relations::thm11_rhs(1).unwrap();
    assert_eq!(lhs, rat(-2, 3));
    assert_eq!(rhs, rat(-2, 3));
    assert_eq!(relations::pair_sum_11(1).unwrap(), rint(1));
    // RHS decomposition: (4/3) sigma(1) - (16/3) sigma(1/2) - 2 * 1.
    assert_eq!(rat(4, 3) - rint(2), rat(-2, 3));
    report("[2/10] worked n = 1 instance reproduced exactly (both sides -2/3)");
}

/// Exact sweeps of the three companion recursions on the half-integer
/// lattice up to 250.
#[test]
fn a03_companion_recursions_exact_sweeps() {
    let a = relations::verify_thm47a(250, true).unwrap();
    assert!(all_pass(&a), "second f recursion failed");
    let b = relations::verify_thm47b(250, true).unwrap();
    assert!(all_pass(&b), "omega recursion (parity-split) failed");
    let c = relations::verify_thm47c(250, true).unwrap();
    assert!(all_pass(&c), "omega recursion (shifted) failed");
    report("[3/10] all three companion recursions exact for 0 < n <= 250");
}

/// Hurwitz class number recursion, exact for 1 <= N <= 200.
#[test]
fn a04_hurwitz_recursion() {
    let reports = relations::verify_hurwitz(200, true).unwrap();
    assert_eq!(reports.len(), 200);
    assert!(all_pass(&reports));
    report("[4/10] Hurwitz class number recursion exact for 1 <= N <= 200");
}

/// At odd primes p >= 7 the right-hand side collapses to (4/3)(p + 4).
#[test]
fn a05_prime_rhs_collapse() {
    let reports = relations::prime_rhs_check(1000, true).unwrap();
    assert!(!reports.is_empty());
    assert!(all_pass(&reports));
    for n in [7i64, 11, 101, 997] {
        assert_eq!(relations::thm11_rhs(n).unwrap(), rat(4 * (n + 4), 3));
    }
    report("[5/10] prime-index right-hand side (4/3)(p+4) for 7 <= p <= 1000");
}

/// The analytic projection coefficient agrees with the exact divisor-pair
/// closed form on the half-integer lattice, and the hypergeometric series
/// matches its algebraic form across (0, 1).
#[test]
fn a06_projection_cross_check() {
    let tol = Fx::pow10(-25);
    let reports = holproj::verify_holproj_cross(50, &tol, true).unwrap();
    assert_eq!(reports.len(), 100);
    for r in &reports {
        assert!(r.pass, "cross-check failed at n = {:?}: diff {}", r.n, r.diff);
    }
    for j in 1..=100i64 {
        let z = Fx::from_rat(&rat(j, 101));
        let s = holproj::hyp2f1_series(&rat(3, 2), &rint(2), &z).unwrap();
        let c = holproj::hyp2f1_closed_132(&z);
        assert!((s - c).abs() < Fx::pow10(-25), "series vs closed at z = {}/101", j);
    }
    report("[6/10] projection formula vs exact closed form, |diff| < 1e-25 for 0 < n <= 50");
}

/// Exact representation-theoretic suite: generator relations, invariant
/// subspaces, eigenvalue exponents, and both dimension counts.
#[test]
fn a07_representation_suite() {
    let t = rep::rho3(Generator::T);
    let s = rep::rho3(Generator::S);
    assert!(t.is_unitary() && s.is_unitary());
    assert_eq!(s.pow(8), CycMat::identity(3));
    assert_eq!(s.mul(&t).pow(3), s.pow(2));

    let reps = rep::check_invariant_subspaces().unwrap();
    assert_eq!(reps.len(), 3);
    assert_eq!([reps[0].dim, reps[1].dim, reps[2].dim], [1, 2, 6]);

    let s2 = &reps[1];
    let s6 = &reps[2];
    assert_eq!(rep::alpha(&s2.t).unwrap(), rat(1, 2));
    assert_eq!(rep::alpha(&s2.s.neg()).unwrap(), rat(1, 2));
    let tw2 = {
        let st = s2.s.mul(&s2.t);
        st.pow(st.order(48).unwrap() - 1)
            .scale_cyc(&CycNum::zeta_pow(3, -1))
    };
    assert_eq!(rep::alpha(&tw2).unwrap(), rat(1, 3));
    assert_eq!(rep::alpha(&s6.t).unwrap(), rat(5, 2));
    assert_eq!(rep::alpha(&s6.s.neg()).unwrap(), rat(3, 2));
    let tw6 = {
        let st = s6.s.mul(&s6.t);
        st.pow(st.order(48).unwrap() - 1)
            .scale_cyc(&CycNum::zeta_pow(3, -1))
    };
    assert_eq!(rep::alpha(&tw6).unwrap(), rint(2));
    assert_eq!(rep::dim_m2(s2).unwrap(), rint(1));
    assert_eq!(rep::dim_m2(s6).unwrap(), rint(1));
    report("[7/10] representation suite exact: relations, subspaces, six exponents, dims 1/1");
}

/// Numeric weight-2 transformation identities at three base points, and
/// quadrature validation of the Gamma-integral identity.
#[test]
fn a08_numeric_transformations_and_quadrature() {
    let tol = Fx::pow10(-8);
    let points = [
        UHPoint::from_rat(&rint(0), &rint(1)),
        UHPoint::from_rat(&rint(0), &rint(2)),
        UHPoint::from_rat(&rat(1, 2), &rint(2)),
    ];
    for tau in &points {
        let r = check_e2bracket_transformation(tau, 200, &tol).unwrap();
        assert!(r.pass, "{}: diff = {}", r.label, r.diff);
        let r = check_sigma2_s_invariance(tau, 200, &tol).unwrap();
        assert!(r.pass, "{}: diff = {}", r.label, r.diff);
    }
    for (k, m) in [(rint(2), rint(1)), (rint(2), rat(1, 24)), (rat(7, 2), rint(1))] {
        let r = holproj::quadrature_check_def31(&k, &m).unwrap();
        assert!(r.diff < Fx::pow10(-20), "k = {}, m = {}: diff = {}", k, m, r.diff);
    }
    report("[8/10] transformations |diff| < 1e-8 at three points; quadrature < 1e-20");
}

/// Nonvanishing count of c(f; n) mod 3 below 10^4 dominates sqrt(X)/log X.
#[test]
fn a09_mod_m_nonvanishing_count() {
    let report_m = relations::mod_m_experiment(3, 10_000).unwrap();
    let floor = (10_000f64).sqrt() / (10_000f64).ln(); // about 10.86
    assert!(report_m.count >= 11, "count = {}", report_m.count);
    assert!((report_m.count as f64) >= report_m.reference);
    assert!((report_m.reference - floor).abs() < 1e-9);
    for row in &report_m.rows {
        assert!((row.count as f64) >= row.reference, "checkpoint x = {}", row.x);
    }
    report("[9/10] mod-3 nonvanishing count below 10^4 meets the sqrt(X)/log X floor");
}

/// Hand-rolled splitmix64 generator for reproducible randomized checks.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo) as u64) as i64
    }

    fn rat(&mut self) -> Rat {
        rat(self.in_range(-9, 10), self.in_range(1, 6))
    }

    fn qexp(&mut self, denom: i64, trunc: i64) -> QExp {
        let n_terms = self.in_range(1, 8);
        let terms: Vec<(i64, Rat)> = (0..n_terms)
            .map(|_| (self.in_range(-5, trunc), self.rat()))
            .collect();
        QExp::from_terms(denom, trunc, terms)
    }

    fn cyc(&mut self) -> CycNum {
        let mut acc = CycNum::zero();
        for _ in 0..3 {
            let term = CycNum::zeta24_pow(self.in_range(0, 24)).scale(&self.rat());
            acc = &acc + &term;
        }
        acc
    }
}

fn eq_to_common_trunc(a: &QExp, b: &QExp) -> bool {
    let t = a.trunc().min(b.trunc());
    a.truncate_to(t) == b.truncate_to(t)
}

/// 1000 randomized ring-property checks over the series and cyclotomic
/// arithmetic: 250 each of addition associativity, distributivity,
/// multiplication commutativity, and inversion / cyclotomic ring laws.
#[test]
fn a10_randomized_ring_properties() {
    let mut rng = SplitMix64(0x5EED_CAFE_F00D_D00D);
    for _ in 0..250 {
        let (a, b, c) = (rng.qexp(6, 30), rng.qexp(6, 30), rng.qexp(6, 30));
        let l = a.add(&b).unwrap().add(&c).unwrap();
        let r = a.add(&b.add(&c).unwrap()).unwrap();
        assert_eq!(l, r, "addition associativity");
    }
    for _ in 0..250 {
        let (a, b, c) = (rng.qexp(6, 30), rng.qexp(6, 30), rng.qexp(6, 30));
        let l = a.mul(&b.add(&c).unwrap()).unwrap();
        let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        assert!(eq_to_common_trunc(&l, &r), "distributivity");
    }
    for _ in 0..250 {
        let (a, b) = (rng.qexp(6, 30), rng.qexp(6, 30));
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap(), "commutativity");
    }
    for i in 0..250 {
        if i % 2 == 0 {
            // Series inversion: unit constant term, nonnegative exponents.
            let terms: Vec<(i64, Rat)> = (0..rng.in_range(1, 8))
                .map(|_| (rng.in_range(1, 25), rng.rat()))
                .collect();
            let unit = QExp::monomial(6, 0, rat(rng.in_range(1, 5), 1), 25);
            let a = QExp::from_terms(6, 25, terms).add(&unit).unwrap();
            let inv = a.invert(20).unwrap();
            let prod = a.mul(&inv).unwrap().truncate_to(20);
            assert_eq!(prod, QExp::one(6, 20), "series inversion");
        } else {
            // Cyclotomic ring laws: associativity and conjugation morphism.
            let (x, y, z) = (rng.cyc(), rng.cyc(), rng.cyc());
            assert_eq!(&(&x * &y) * &z, &x * &(&y * &z), "cyclotomic associativity");
            assert_eq!((&x * &y).conj(), &x.conj() * &y.conj(), "conjugation morphism");
        }
    }
    report("[10/10] 1000 randomized ring-property checks (splitmix64 seeded)");
}
