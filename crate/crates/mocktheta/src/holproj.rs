//! The holomorphic-projection coefficient formula, high-precision 2F1
//! evaluation, the exact closed form for the theta-component projection,
//! and quadrature validation of the defining Gamma integral.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::arith::signed_divisor_pairs;
use crate::error::{Error, Result};
use crate::fixed::{pi, Fx};
use crate::rat::{is_integer, rat, rint, to_i64, Rat};

/// Gamma at a positive integer or half-integer, as a fixed-point value.
/// Half-integer values use Gamma(m + 1/2) = (2m)! / (4^m m!) * sqrt(pi).
pub fn gamma_fx(x: &Rat) -> Fx {
    assert!(x.is_positive(), "gamma_fx requires a positive argument");
    if is_integer(x) {
        let n = to_i64(x);
        let mut acc = Fx::one();
        for j in 2..n {
            acc = acc.mul_i64(j);
        }
        return acc;
    }
    let half = x - rat(1, 2);
    assert!(
        is_integer(&half),
        "gamma_fx supports integers and half-integers, got {}",
        x
    );
    let m = to_i64(&half);
    let mut r = Rat::one();
    for j in 1..=(2 * m) {
        r *= rint(j);
    }
    for j in 1..=m {
        r /= rint(4) * rint(j);
    }
    Fx::from_rat(&r) * pi().sqrt()
}

/// 2F1(1, l, c; z) by direct series summation with the term recurrence
/// t_{n+1} = t_n * (l+n)/(c+n) * z, summed until the next term drops below
/// 1e-30 of the running sum.  Requires 0 <= z < 1.
pub fn hyp2f1_series(l: &Rat, c: &Rat, z: &Fx) -> Result<Fx> {
    if z >= &Fx::one() {
        return Err(Error::Divergence);
    }
    assert!(!z.is_negative(), "series evaluation expects z in [0, 1)");
    let mut sum = Fx::one();
    let mut term = Fx::one();
    let mut n = 0i64;
    loop {
        let factor = (l + rint(n)) / (c + rint(n));
        term = term * Fx::from_rat(&factor) * z;
        if term < Fx::pow10(-30) * &sum {
            break;
        }
        sum += &term;
        n += 1;
    }
    Ok(sum)
}

/// Algebraic form of 2F1(1, 3/2, 2; z): 2 (1 - sqrt(1-z)) / (z sqrt(1-z)).
pub fn hyp2f1_closed_132(z: &Fx) -> Fx {
    if z.is_zero() {
        return Fx::one();
    }
    let s = (Fx::one() - z).sqrt();
    (Fx::one() - &s).mul_i64(2) / (z * &s)
}

/// Weight pair for the projection formula.
#[derive(Clone, Debug)]
pub struct HolProjParams {
    pub k: Rat,
    pub l: Rat,
}

impl HolProjParams {
    pub fn new(k: Rat, l: Rat) -> Result<Self> {
        if &k + &l < rint(2) {
            return Err(Error::Domain(format!("k + l = {} < 2", &k + &l)));
        }
        if k == rint(1) {
            return Err(Error::Domain("k = 1 is excluded".into()));
        }
        Ok(HolProjParams { k, l })
    }
}

/// Projection coefficient at index n:
///   -(4 pi)^{k-1} Gamma(l)/Gamma(k+l) n^{k-1}
///     sum_{m + mt = n, m < 0} c^-(F;m) c(G;mt) (n/mt)^l 2F1(1, l, k+l; n/mt).
/// `fm` maps negative exponents m to c^-(F;m); `g` maps exponents mt >= 0 to
/// c(G;mt).  Exponents are exact rationals on a shared lattice.
pub fn holproj_coeff_thm34(
    params: &HolProjParams,
    fm: &BTreeMap<Rat, Rat>,
    g: &BTreeMap<Rat, Rat>,
    n: &Rat,
) -> Result<Fx> {
    assert!(n.is_positive(), "coefficient index must be positive");
    let mut total = Fx::zero();
    let mut any = false;
    let c = &params.k + &params.l;
    for (m, cf) in fm {
        assert!(m.is_negative(), "fm keys must be negative exponents");
        let mt = n - m;
        let cg = match g.get(&mt) {
            Some(v) if !v.is_zero() => v,
            _ => continue,
        };
        any = true;
        let ratio = n / &mt; // in (0, 1) since mt = n + |m| > n
        let z = Fx::from_rat(&ratio);
        let f21 = hyp2f1_series(&params.l, &c, &z)?;
        let term = Fx::from_rat(&(cf * cg)) * z.pow_rat(&params.l) * f21;
        total += &term;
    }
    if !any {
        return Ok(Fx::zero());
    }
    let km1 = &params.k - rint(1);
    let prefactor = (pi().mul_i64(4)).pow_rat(&km1)
        * gamma_fx(&params.l)
        * gamma_fx(&c).recip()
        * Fx::from_rat(n).pow_rat(&km1);
    Ok(-(prefactor * total))
}

/// Coefficient maps of the first theta component on both sides of the
/// projection pairing: negative exponents -(6N+1)^2/24 with coefficient
/// -(N + 1/6), and the same data at positive exponents.  `max_num` bounds
/// the exponent numerator (6N+1)^2.
pub fn g0_coeff_maps(max_num: i64) -> (BTreeMap<Rat, Rat>, BTreeMap<Rat, Rat>) {
    let mut fm = BTreeMap::new();
    let mut g = BTreeMap::new();
    let mut n = 0i64;
    loop {
        let mut hit = false;
        for s in [n, -n - 1] {
            let u = 6 * s + 1;
            if u * u <= max_num {
                hit = true;
                let e = rat(u * u, 24);
                let c = -(rint(s) + rat(1, 6));
                fm.insert(-e.clone(), c.clone());
                g.insert(e, c);
            }
        }
        if !hit && n > 0 {
            break;
        }
        n += 1;
    }
    (fm, g)
}

/// Exact closed form of the projection coefficient of the paired first theta
/// component: the rational multiplier of 1/sqrt(6) in
///   (1/sqrt 6) sum_{2n = ab} sgn((N+1/6)(Nt+1/6)) (|N+1/6| - |Nt+1/6|)
/// with N = (-3a+b-1)/6, Nt = (3a+b-1)/6, over pairs with N, Nt integers.
pub fn lemma46_closed(n: &Rat) -> Result<Rat> {
    let twice = n * rint(2);
    if !is_integer(&twice) {
        return Err(Error::Domain(format!("index {} is not on the (1/2)Z lattice", n)));
    }
    let target = to_i64(&twice);
    let mut sum = Rat::zero();
    for p in signed_divisor_pairs(target)? {
        let (a, b) = (p.a, p.b);
        if (-3 * a + b - 1).rem_euclid(6) != 0 || (3 * a + b - 1).rem_euclid(6) != 0 {
            continue;
        }
        let big_n = rat(-3 * a + b - 1, 6) + rat(1, 6);
        let big_nt = rat(3 * a + b - 1, 6) + rat(1, 6);
        let sgn = if (&big_n * &big_nt).is_negative() { -1 } else { 1 };
        sum += (big_n.abs() - big_nt.abs()) * rint(sgn);
    }
    Ok(sum)
}

/// Projection coefficient of the paired first theta component via the general
/// formula with k = 1/2, l = 3/2, for cross-checking against the closed form.
pub fn holproj_g0g0_thm34(n: &Rat) -> Result<Fx> {
    let params = HolProjParams::new(rat(1, 2), rat(3, 2))?;
    let ceil_n = to_i64(&(n * rint(2))) / 2 + 1;
    let bound = (12 * ceil_n + 2) * (12 * ceil_n + 2);
    let (fm, g) = g0_coeff_maps(bound);
    holproj_coeff_thm34(&params, &fm, &g, n)
}

/// One comparison of the general projection formula against the exact
/// closed form.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub n: Rat,
    pub diff: Fx,
    pub pass: bool,
}

/// Compares the analytic projection coefficient with the exact divisor-pair
/// closed form at every lattice point n = j/2, 1 <= j <= 2 max_n, within
/// tolerance `tol`.
pub fn verify_holproj_cross(max_n: i64, tol: &Fx, parallel: bool) -> Result<Vec<CrossCheckReport>> {
    assert!(max_n >= 1);
    let sqrt6 = Fx::from_i64(6).sqrt();
    let results = crate::exec::map_indexed(
        (2 * max_n) as usize,
        |j| -> Result<CrossCheckReport> {
            let n = rat(j as i64 + 1, 2);
            let numeric = holproj_g0g0_thm34(&n)?;
            let exact = Fx::from_rat(&lemma46_closed(&n)?) / &sqrt6;
            let diff = (numeric - exact).abs();
            let pass = &diff < tol;
            Ok(CrossCheckReport { n, diff, pass })
        },
        parallel,
    );
    results.into_iter().collect()
}

/// Report of one quadrature validation of the Gamma-integral identity.
#[derive(Clone, Debug)]
pub struct QuadratureReport {
    pub computed: Fx,
    pub expected: Fx,
    pub diff: Fx,
}

/// Validates int_0^infty e^{-4 pi m y} y^{k-2} dy = (4 pi m)^{1-k} Gamma(k-1)
/// by double-exponential quadrature (substitution y = exp((pi/2) sinh t)).
pub fn quadrature_check_def31(k: &Rat, m: &Rat) -> Result<QuadratureReport> {
    if k <= &rint(1) {
        return Err(Error::DivergentIntegral);
    }
    assert!(m.is_positive());
    let four_pi_m = pi().mul_i64(4) * Fx::from_rat(m);
    let km1 = k - rint(1);
    let half_pi = pi().div_i64(2);
    let h = rat(1, 32);
    let h_fx = Fx::from_rat(&h);
    let mut sum = Fx::zero();
    let steps = 1280i64;
    for j in -steps..=steps {
        let t = h_fx.mul_i64(j);
        let et = t.exp();
        let emt = et.recip();
        let sinh = (&et - &emt).div_i64(2);
        let cosh = (&et + &emt).div_i64(2);
        let u = &half_pi * &sinh; // log of the substituted variable
        if u > Fx::from_i64(200) {
            continue; // e^{-4 pi m y} vanishes at working precision
        }
        let log_power = &u * &Fx::from_rat(&km1);
        if log_power < Fx::from_i64(-140) {
            continue; // y^{k-1} underflows
        }
        let y = u.exp();
        let term = (-(&four_pi_m * &y)).exp() * log_power.exp() * &half_pi * &cosh;
        sum += &term;
    }
    let computed = sum * h_fx;
    let expected = four_pi_m.pow_rat(&(-&km1)) * gamma_fx(&km1);
    let diff = (&computed - &expected).abs();
    Ok(QuadratureReport {
        computed,
        expected,
        diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fx_close(a: &Fx, b: &Fx, digits: i32) -> bool {
        (a - b).abs() < Fx::pow10(-digits)
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_fx(&rint(1)), Fx::one());
        assert_eq!(gamma_fx(&rint(5)), Fx::from_i64(24));
        assert!(fx_close(&gamma_fx(&rat(1, 2)), &pi().sqrt(), 48));
        // Gamma(5/2) = 3 sqrt(pi) / 4
        let want = pi().sqrt().mul_i64(3).div_i64(4);
        assert!(fx_close(&gamma_fx(&rat(5, 2)), &want, 48));
    }

    #[test]
    fn hyp2f1_at_zero_and_small_z() {
        let l = rat(3, 2);
        let c = rint(2);
        assert_eq!(hyp2f1_series(&l, &c, &Fx::zero()).unwrap(), Fx::one());
        let z = Fx::from_rat(&rat(1, 1000));
        let v = hyp2f1_series(&l, &c, &z).unwrap();
        // 1 + (3/4) z + O(z^2)
        let first_order = Fx::one() + Fx::from_rat(&rat(3, 4000));
        assert!((v - first_order).abs() < Fx::pow10(-6));
        assert!(hyp2f1_series(&l, &c, &Fx::one()).is_err());
    }

    #[test]
    fn hyp2f1_series_matches_closed_form() {
        for num in [1i64, 5, 9] {
            let z = Fx::from_rat(&rat(num, 10));
            let s = hyp2f1_series(&rat(3, 2), &rint(2), &z).unwrap();
            let c = hyp2f1_closed_132(&z);
            assert!(fx_close(&s, &c, 25), "z = {}/10: {} vs {}", num, s, c);
        }
    }

    #[test]
    fn closed_form_small_values() {
        assert_eq!(lemma46_closed(&rint(1)).unwrap(), rint(1));
        assert!(lemma46_closed(&rint(0)).is_err());
        assert!(lemma46_closed(&rat(1, 3)).is_err());
    }

    #[test]
    fn thm34_agrees_with_closed_form_at_small_indices() {
        let sqrt6 = Fx::from_i64(6).sqrt();
        for twice in 1i64..=10 {
            let n = rat(twice, 2);
            let numeric = holproj_g0g0_thm34(&n).unwrap();
            let exact = Fx::from_rat(&lemma46_closed(&n).unwrap()) / &sqrt6;
            assert!(
                fx_close(&numeric, &exact, 25),
                "n = {}: {} vs {}",
                n,
                numeric,
                exact
            );
        }
    }

    #[test]
    fn thm34_single_pair_formula() {
        // One pair m = -1, mt = 2, n = 1 with unit coefficients.
        let params = HolProjParams::new(rat(1, 2), rat(3, 2)).unwrap();
        let mut fm = BTreeMap::new();
        fm.insert(rint(-1), rint(1));
        let mut g = BTreeMap::new();
        g.insert(rint(2), rint(1));
        let got = holproj_coeff_thm34(&params, &fm, &g, &rint(1)).unwrap();
        let z = Fx::from_rat(&rat(1, 2));
        let want = -((pi().mul_i64(4)).pow_rat(&rat(-1, 2))
            * gamma_fx(&rat(3, 2))
            * gamma_fx(&rint(2)).recip()
            * z.pow_rat(&rat(3, 2))
            * hyp2f1_series(&rat(3, 2), &rint(2), &z).unwrap());
        assert!(fx_close(&got, &want, 40));
        // Empty inputs give zero.
        let empty = holproj_coeff_thm34(&params, &BTreeMap::new(), &g, &rint(1)).unwrap();
        assert!(empty.is_zero());
        // Linearity in the F coefficient.
        fm.insert(rint(-1), rint(3));
        let scaled = holproj_coeff_thm34(&params, &fm, &g, &rint(1)).unwrap();
        assert!(fx_close(&scaled, &got.mul_i64(3), 40));
    }

    #[test]
    fn quadrature_examples() {
        // k = 2, m = 1: integral equals 1/(4 pi).
        let r = quadrature_check_def31(&rint(2), &rint(1)).unwrap();
        assert!(r.diff < Fx::pow10(-20));
        assert!(fx_close(&r.expected, &pi().mul_i64(4).recip(), 48));
        // k = 2, m = 1/24: integral equals 6/pi.
        let r = quadrature_check_def31(&rint(2), &rat(1, 24)).unwrap();
        assert!(r.diff < Fx::pow10(-20));
        assert!(fx_close(&r.expected, &(Fx::from_i64(6) / pi()), 47));
        // k = 7/2, m = 1.
        let r = quadrature_check_def31(&rat(7, 2), &rint(1)).unwrap();
        assert!(r.diff < Fx::pow10(-20));
        // k <= 1 diverges at the origin.
        assert!(quadrature_check_def31(&rint(1), &rint(1)).is_err());
    }
}
