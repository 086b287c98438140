//! Fixed-point high-precision reals for the numeric checks.
//!
//! Values are `mantissa / 10^DIGITS` with a `BigInt` mantissa and 50 decimal
//! digits of working precision.  Every operation rounds to the nearest
//! representable value, so accumulated error stays within a few ulp per
//! operation; the comparison tolerances used elsewhere (1e-25, 1e-20, 1e-8)
//! leave a wide margin.  The constants pi and e are computed at first use
//! from Machin's arctangent formula and the exponential series.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::rat::Rat;

pub const DIGITS: u32 = 50;

static SCALE: Lazy<BigInt> = Lazy::new(|| BigInt::from(10u32).pow(DIGITS));

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 >= b.abs() {
        if (a.sign() == b.sign()) || r.is_zero() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fx(BigInt);

impl Fx {
    pub fn zero() -> Fx {
        Fx(BigInt::zero())
    }

    pub fn one() -> Fx {
        Fx(SCALE.clone())
    }

    pub fn from_i64(n: i64) -> Fx {
        Fx(BigInt::from(n) * &*SCALE)
    }

    pub fn from_rat(r: &Rat) -> Fx {
        Fx(div_round(&(r.numer() * &*SCALE), r.denom()))
    }

    /// 10^e as a fixed-point value (e >= -DIGITS).
    pub fn pow10(e: i32) -> Fx {
        let shift = DIGITS as i32 + e;
        assert!(shift >= 0, "pow10 exponent below representable range");
        Fx(BigInt::from(10u32).pow(shift as u32))
    }

    pub fn to_rat(&self) -> Rat {
        Rat::new(self.0.clone(), SCALE.clone())
    }

    pub fn to_f64(&self) -> f64 {
        // Split to avoid overflowing f64 for large mantissas.
        let (q, r) = self.0.div_rem(&SCALE);
        q.to_f64().unwrap_or(f64::NAN) + r.to_f64().unwrap_or(0.0) / 1e50
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Fx {
        Fx(self.0.abs())
    }

    pub fn mul_i64(&self, n: i64) -> Fx {
        Fx(&self.0 * n)
    }

    pub fn div_i64(&self, n: i64) -> Fx {
        Fx(div_round(&self.0, &BigInt::from(n)))
    }

    pub fn recip(&self) -> Fx {
        assert!(!self.is_zero(), "division by zero");
        Fx(div_round(&(&*SCALE * &*SCALE), &self.0))
    }

    pub fn powi(&self, e: i64) -> Fx {
        if e < 0 {
            return self.powi(-e).recip();
        }
        let mut acc = Fx::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// x^(t/2) for integer t (x > 0).
    pub fn pow_half(&self, t: i64) -> Fx {
        if t % 2 == 0 {
            self.powi(t / 2)
        } else {
            self.powi(t.div_euclid(2)) * self.sqrt()
        }
    }

    /// Power with half-integer rational exponent 2e in Z.
    pub fn pow_rat(&self, e: &Rat) -> Fx {
        let twice = e * Rat::from_integer(2.into());
        assert!(
            twice.denom().is_one(),
            "pow_rat supports half-integer exponents, got {}",
            e
        );
        self.pow_half(crate::rat::to_i64(&twice))
    }

    pub fn sqrt(&self) -> Fx {
        assert!(!self.is_negative(), "sqrt of negative value");
        Fx((&self.0 * &*SCALE).sqrt())
    }

    pub fn exp(&self) -> Fx {
        // Below ~1e-54 the result underflows the representation.
        if self < &Fx::from_i64(-130) {
            return Fx::zero();
        }
        assert!(
            self < &Fx::from_i64(2000),
            "exp argument too large for fixed-point evaluation"
        );
        let n = self.0.div_floor(&SCALE).to_i64().expect("exp integer part fits i64");
        let r = self - &Fx::from_i64(n); // 0 <= r < 1
        let mut sum = Fx::one();
        let mut term = Fx::one();
        let mut k = 1i64;
        loop {
            term = (&term * &r).div_i64(k);
            if term.is_zero() {
                break;
            }
            sum += &term;
            k += 1;
        }
        sum * euler_e().powi(n)
    }

    pub fn cos(&self) -> Fx {
        self.sin_cos().1
    }

    pub fn sin(&self) -> Fx {
        self.sin_cos().0
    }

    pub fn sin_cos(&self) -> (Fx, Fx) {
        let two_pi = pi().mul_i64(2);
        let k = div_round(&self.0, &two_pi.0); // nearest multiple of 2 pi
        let x = self - &Fx(&two_pi.0 * &k); // |x| <= pi + ulp
        let mut sin = x.clone();
        let mut cos = Fx::one();
        // term holds x^(2k-1)/(2k-1)! entering iteration k.
        let mut term = x.clone();
        let mut k = 1i64;
        loop {
            let tc = (&term * &x).div_i64(2 * k); // x^(2k)/(2k)!
            if tc.is_zero() {
                break;
            }
            if k % 2 == 1 {
                cos -= &tc;
            } else {
                cos += &tc;
            }
            let ts = (&tc * &x).div_i64(2 * k + 1); // x^(2k+1)/(2k+1)!
            if k % 2 == 1 {
                sin -= &ts;
            } else {
                sin += &ts;
            }
            term = ts;
            k += 1;
        }
        (sin, cos)
    }
}

impl fmt::Debug for Fx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Fx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.0.is_negative();
        let mag = self.0.abs();
        let (q, r) = mag.div_rem(&SCALE);
        let frac = format!("{:0width$}", r, width = DIGITS as usize);
        let frac = frac.trim_end_matches('0');
        let frac = if frac.is_empty() { "0" } else { frac };
        write!(f, "{}{}.{}", if neg { "-" } else { "" }, q, frac)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $impl_fn:expr) => {
        impl<'a, 'b> $trait<&'b Fx> for &'a Fx {
            type Output = Fx;
            fn $method(self, rhs: &'b Fx) -> Fx {
                let f: fn(&Fx, &Fx) -> Fx = $impl_fn;
                f(self, rhs)
            }
        }
        impl $trait<Fx> for Fx {
            type Output = Fx;
            fn $method(self, rhs: Fx) -> Fx {
                $trait::$method(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Fx> for Fx {
            type Output = Fx;
            fn $method(self, rhs: &'a Fx) -> Fx {
                $trait::$method(&self, rhs)
            }
        }
        impl<'a> $trait<Fx> for &'a Fx {
            type Output = Fx;
            fn $method(self, rhs: Fx) -> Fx {
                $trait::$method(self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add, |a: &Fx, b: &Fx| Fx(&a.0 + &b.0));
impl_binop!(Sub, sub, |a: &Fx, b: &Fx| Fx(&a.0 - &b.0));
impl_binop!(Mul, mul, |a: &Fx, b: &Fx| Fx(div_round(&(&a.0 * &b.0), &SCALE)));
impl_binop!(Div, div, |a: &Fx, b: &Fx| {
    assert!(!b.0.is_zero(), "division by zero");
    Fx(div_round(&(&a.0 * &*SCALE), &b.0))
});

impl Neg for Fx {
    type Output = Fx;
    fn neg(self) -> Fx {
        Fx(-self.0)
    }
}

impl Neg for &Fx {
    type Output = Fx;
    fn neg(self) -> Fx {
        Fx(-self.0.clone())
    }
}

impl AddAssign<&Fx> for Fx {
    fn add_assign(&mut self, rhs: &Fx) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Fx> for Fx {
    fn sub_assign(&mut self, rhs: &Fx) {
        self.0 -= &rhs.0;
    }
}

fn atan_inv(x: i64) -> Fx {
    // arctan(1/x) = sum (-1)^k / ((2k+1) x^(2k+1))
    let inv_x = Fx::from_i64(1).div_i64(x);
    let inv_x2 = &inv_x * &inv_x;
    let mut power = inv_x;
    let mut sum = Fx::zero();
    let mut k = 0i64;
    loop {
        let term = power.div_i64(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power = &power * &inv_x2;
        k += 1;
    }
    sum
}

static PI: Lazy<Fx> = Lazy::new(|| atan_inv(5).mul_i64(16) - atan_inv(239).mul_i64(4));

static EULER_E: Lazy<Fx> = Lazy::new(|| {
    let mut sum = Fx::one();
    let mut term = Fx::one();
    let mut k = 1i64;
    loop {
        term = term.div_i64(k);
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    sum
});

pub fn pi() -> Fx {
    PI.clone()
}

pub fn euler_e() -> Fx {
    EULER_E.clone()
}

pub fn fx_cmp(a: &Fx, b: &Fx) -> Ordering {
    a.cmp(b)
}

/// Complex value over Fx.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cx {
    pub re: Fx,
    pub im: Fx,
}

impl Cx {
    pub fn new(re: Fx, im: Fx) -> Cx {
        Cx { re, im }
    }

    pub fn zero() -> Cx {
        Cx::new(Fx::zero(), Fx::zero())
    }

    pub fn one() -> Cx {
        Cx::new(Fx::one(), Fx::zero())
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        Cx::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, s: &Fx) -> Cx {
        Cx::new(&self.re * s, &self.im * s)
    }

    pub fn conj(&self) -> Cx {
        Cx::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sq(&self) -> Fx {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Fx {
        self.norm_sq().sqrt()
    }

    pub fn div(&self, o: &Cx) -> Cx {
        let d = o.norm_sq();
        let n = self.mul(&o.conj());
        Cx::new(n.re / &d, n.im / &d)
    }

    pub fn powi(&self, e: i64) -> Cx {
        if e < 0 {
            return Cx::one().div(&self.powi(-e));
        }
        let mut acc = Cx::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn constants_match_reference_digits() {
        // First 40 digits of pi and e.
        assert!(format!("{}", pi()).starts_with("3.141592653589793238462643383279502884197"));
        assert!(format!("{}", euler_e()).starts_with("2.718281828459045235360287471352662497757"));
    }

    #[test]
    fn arithmetic_round_trip() {
        let x = Fx::from_rat(&rat(22, 7));
        let y = (&x * &x) / &x;
        assert!((&y - &x).abs() < Fx::pow10(-48));
    }

    #[test]
    fn sqrt_and_pow() {
        let two = Fx::from_i64(2);
        let r = two.sqrt();
        assert!(format!("{}", r).starts_with("1.41421356237309504880168872420969807856"));
        assert!((two.pow_half(3) - &r * &r * &r).abs() < Fx::pow10(-47));
        assert!((two.powi(-2) - Fx::from_rat(&rat(1, 4))).abs() < Fx::pow10(-49));
    }

    #[test]
    fn exp_values() {
        assert!((Fx::from_i64(1).exp() - euler_e()).abs() < Fx::pow10(-48));
        let e10 = Fx::from_i64(10).exp();
        assert!(format!("{}", e10).starts_with("22026.4657948067165169579006452842443663"));
        let small = Fx::from_i64(-500).exp();
        assert!(small.is_zero());
        // exp(x)*exp(-x) = 1
        let x = Fx::from_rat(&rat(-37, 3));
        let p = x.exp() * (-&x).exp();
        assert!((p - Fx::one()).abs() < Fx::pow10(-43));
    }

    #[test]
    fn trig_values() {
        let (s, c) = pi().div_i64(6).sin_cos();
        assert!((s - Fx::from_rat(&rat(1, 2))).abs() < Fx::pow10(-47));
        let want = Fx::from_i64(3).sqrt().div_i64(2);
        assert!((c - want).abs() < Fx::pow10(-47));
        // Large-argument reduction: sin(1000)
        let s1000 = Fx::from_i64(1000).sin();
        assert!(format!("{}", s1000).starts_with("0.8268795405320025602558874291092"));
    }

    #[test]
    fn complex_ops() {
        let i = Cx::new(Fx::zero(), Fx::one());
        assert_eq!(i.powi(2), Cx::new(-Fx::one(), Fx::zero()));
        let z = Cx::new(Fx::from_i64(3), Fx::from_i64(4));
        assert_eq!(z.abs(), Fx::from_i64(5));
        let q = z.div(&z);
        assert!((q.re - Fx::one()).abs() < Fx::pow10(-48));
        assert!(q.im.abs() < Fx::pow10(-48));
    }
}
