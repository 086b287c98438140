//! High-precision evaluation of truncated q-expansions on the upper half
//! plane, with certified truncation-tail bounds, and numeric verification of
//! the weight-2 transformation identities.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::fixed::{pi, Cx, Fx};
use crate::forms;
use crate::rat::Rat;
use crate::rep;
use crate::series::QExp;

/// A point tau = x + iy with y > 0.
#[derive(Clone, Debug)]
pub struct UHPoint {
    pub x: Fx,
    pub y: Fx,
}

impl UHPoint {
    pub fn new(x: Fx, y: Fx) -> UHPoint {
        assert!(y > Fx::zero(), "upper half plane requires y > 0");
        UHPoint { x, y }
    }

    pub fn from_rat(x: &Rat, y: &Rat) -> UHPoint {
        UHPoint::new(Fx::from_rat(x), Fx::from_rat(y))
    }

    pub fn to_cx(&self) -> Cx {
        Cx::new(self.x.clone(), self.y.clone())
    }

    /// The point -1/tau.
    pub fn neg_inv(&self) -> UHPoint {
        let d = &self.x * &self.x + &self.y * &self.y;
        UHPoint::new(-(&self.x / &d), &self.y / &d)
    }

    /// The point tau/2.
    pub fn half(&self) -> UHPoint {
        UHPoint::new(self.x.div_i64(2), self.y.div_i64(2))
    }
}

/// Evaluation result with its certified truncation-tail bound.
#[derive(Clone, Debug)]
pub struct EvalOutcome {
    pub value: Cx,
    pub tail_bound: Fx,
}

/// Evaluate sum_e c_e e^{2 pi i (e/D) tau}.  The tail of exponents at or
/// above the truncation bound is estimated by C r^{trunc} / (1 - r) with
/// r = e^{-2 pi y / D} and a supplied coefficient-growth constant C; if that
/// bound exceeds `tol` the truncation is reported as insufficient.
pub fn eval_qexp(a: &QExp, tau: &UHPoint, growth_c: &Fx, tol: &Fx) -> Result<EvalOutcome> {
    let d = a.denom();
    let two_pi = pi().mul_i64(2);
    let r = (-(&two_pi * &tau.y).div_i64(d)).exp();
    assert!(a.trunc() > 0, "tail bound requires a positive truncation bound");
    let r_trunc = (-(&two_pi * &tau.y).mul_i64(a.trunc()).div_i64(d)).exp();
    let tail_bound = growth_c * &r_trunc / (Fx::one() - &r);
    if &tail_bound > tol {
        return Err(Error::InsufficientTruncation(format!(
            "tail bound {} exceeds tolerance {} at trunc {}/{}",
            tail_bound,
            tol,
            a.trunc(),
            d
        )));
    }
    let mut value = Cx::zero();
    for (e, c) in a.terms() {
        let mag = (-(&two_pi * &tau.y).mul_i64(e).div_i64(d)).exp();
        let (s, co) = (&two_pi * &tau.x).mul_i64(e).div_i64(d).sin_cos();
        let cf = Fx::from_rat(c);
        value = value.add(&Cx::new(&cf * &mag * &co, &cf * &mag * &s));
    }
    Ok(EvalOutcome { value, tail_bound })
}

/// Largest coefficient magnitude of a series, as a growth constant for the
/// tail bound (with a safety factor for the uncomputed range).
pub fn measured_growth_constant(a: &QExp) -> Fx {
    let mut best = Rat::from_integer(1.into());
    for (_, c) in a.terms() {
        let m = c.abs();
        if m > best {
            best = m;
        }
    }
    Fx::from_rat(&best).mul_i64(4)
}

/// Outcome of one numeric transformation check.
#[derive(Clone, Debug)]
pub struct NumericReport {
    pub label: String,
    pub diff: Fx,
    pub tol: Fx,
    pub pass: bool,
}

impl NumericReport {
    fn new(label: &str, diff: Fx, tol: Fx) -> NumericReport {
        let pass = diff < tol;
        NumericReport {
            label: label.to_string(),
            diff,
            tol,
            pass,
        }
    }
}

/// Checks E2^[2](-1/tau) = -(1/2) tau^2 E2^[2](tau/2) numerically.
pub fn check_e2bracket_transformation(
    tau: &UHPoint,
    order: i64,
    tol: &Fx,
) -> Result<NumericReport> {
    let b = forms::eisenstein_e2_bracket2(order);
    let c = measured_growth_constant(&b);
    let lhs = eval_qexp(&b, &tau.neg_inv(), &c, tol)?.value;
    let at_half = eval_qexp(&b, &tau.half(), &c, tol)?.value;
    let tau2 = tau.to_cx().powi(2);
    let rhs = tau2.mul(&at_half).scale(&Fx::from_rat(&crate::rat::rat(-1, 2)));
    let diff = lhs.sub(&rhs).abs();
    Ok(NumericReport::new("e2bracket-transformation", diff, tol.clone()))
}

/// Checks the S-invariance of the two-component Eisenstein vector:
/// sigma2(S)^{-1} tau^{-2} E(-1/tau) = E(tau) componentwise.
pub fn check_sigma2_s_invariance(tau: &UHPoint, order: i64, tol: &Fx) -> Result<NumericReport> {
    let e = forms::eisenstein_sigma2(order);
    let s = rep::sigma2_s_rational()?;
    // sigma2(S) is an involution, so it equals its own inverse.
    let c0 = measured_growth_constant(e.get(0));
    let c1 = measured_growth_constant(e.get(1));
    let at_inv = [
        eval_qexp(e.get(0), &tau.neg_inv(), &c0, tol)?.value,
        eval_qexp(e.get(1), &tau.neg_inv(), &c1, tol)?.value,
    ];
    let at_tau = [
        eval_qexp(e.get(0), tau, &c0, tol)?.value,
        eval_qexp(e.get(1), tau, &c1, tol)?.value,
    ];
    let tau_m2 = Cx::one().div(&tau.to_cx().powi(2));
    let mut max_diff = Fx::zero();
    for i in 0..2 {
        let mut acted = Cx::zero();
        for j in 0..2 {
            acted = acted.add(&at_inv[j].scale(&Fx::from_rat(&s[i][j])));
        }
        let lhs = tau_m2.mul(&acted);
        let diff = lhs.sub(&at_tau[i]).abs();
        if diff > max_diff {
            max_diff = diff;
        }
    }
    Ok(NumericReport::new("sigma2-S-invariance", max_diff, tol.clone()))
}

/// Classical reference value E2(i) = 3/pi, from the quasimodular fixed-point
/// relation at tau = i.
pub fn e2_reference_at_i() -> Fx {
    Fx::from_i64(3) / pi()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn tol(digits: i32) -> Fx {
        Fx::pow10(-digits)
    }

    #[test]
    fn eval_constants_and_monomials() {
        let one = QExp::one(1, 50);
        let tau = UHPoint::from_rat(&rint(0), &rint(1));
        let v = eval_qexp(&one, &tau, &Fx::one(), &tol(8)).unwrap().value;
        assert!((v.re - Fx::one()).abs() < tol(40));
        assert!(v.im.abs() < tol(40));
        // q at tau = i evaluates to e^{-2 pi}.
        let q = QExp::monomial(1, 1, rint(1), 50);
        let v = eval_qexp(&q, &tau, &Fx::one(), &tol(8)).unwrap().value;
        assert!((v.re - (-pi().mul_i64(2)).exp()).abs() < tol(40));
        assert!(v.im.abs() < tol(40));
    }

    #[test]
    fn eval_linearity() {
        let a = QExp::from_terms(2, 40, [(1, rat(1, 3)), (5, rint(-2))]);
        let b = QExp::from_terms(2, 40, [(2, rat(7, 2)), (3, rint(1))]);
        let tau = UHPoint::from_rat(&rat(1, 3), &rat(3, 4));
        let c = Fx::from_i64(4);
        let t = tol(8);
        let va = eval_qexp(&a, &tau, &c, &t).unwrap().value;
        let vb = eval_qexp(&b, &tau, &c, &t).unwrap().value;
        let vs = eval_qexp(&a.add(&b).unwrap(), &tau, &c, &t).unwrap().value;
        assert!(va.add(&vb).sub(&vs).abs() < tol(45));
    }

    #[test]
    fn insufficient_truncation_is_reported() {
        let a = QExp::one(24, 5);
        let tau = UHPoint::from_rat(&rint(0), &rat(1, 10));
        let r = eval_qexp(&a, &tau, &Fx::from_i64(1000), &tol(8));
        assert!(matches!(r, Err(Error::InsufficientTruncation(_))));
    }

    #[test]
    fn e2_value_at_i() {
        // E2(i) = 3/pi.
        let e2 = forms::eisenstein_e2(200);
        let tau = UHPoint::from_rat(&rint(0), &rint(1));
        let c = measured_growth_constant(&e2);
        let v = eval_qexp(&e2, &tau, &c, &tol(8)).unwrap().value;
        assert!((v.re - e2_reference_at_i()).abs() < tol(10));
        assert!(v.im.abs() < tol(10));
    }

    #[test]
    fn transformation_checks_at_i() {
        let tau = UHPoint::from_rat(&rint(0), &rint(1));
        let r = check_e2bracket_transformation(&tau, 200, &tol(8)).unwrap();
        assert!(r.pass, "diff = {}", r.diff);
        let r = check_sigma2_s_invariance(&tau, 200, &tol(8)).unwrap();
        assert!(r.pass, "diff = {}", r.diff);
    }
}
