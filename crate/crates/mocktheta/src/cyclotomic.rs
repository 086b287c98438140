//! Exact arithmetic in the 24th cyclotomic field Q(zeta_24).
//!
//! Elements are stored in the power basis 1, z, ..., z^7 modulo the 24th
//! cyclotomic polynomial x^8 - x^4 + 1, with rational coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::rat::{rat_to_string, rint, Rat};

pub const DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq)]
pub struct CycNum {
    coords: [Rat; DEGREE],
}

fn zero_coords() -> [Rat; DEGREE] {
    std::array::from_fn(|_| Rat::zero())
}

impl CycNum {
    pub fn zero() -> CycNum {
        CycNum {
            coords: zero_coords(),
        }
    }

    pub fn one() -> CycNum {
        CycNum::from_rat(&rint(1))
    }

    pub fn from_rat(r: &Rat) -> CycNum {
        let mut coords = zero_coords();
        coords[0] = r.clone();
        CycNum { coords }
    }

    pub fn from_i64(n: i64) -> CycNum {
        CycNum::from_rat(&rint(n))
    }

    /// zeta_24^k for any integer k.
    pub fn zeta24_pow(k: i64) -> CycNum {
        let k = k.rem_euclid(24) as usize;
        // Build x^k and reduce modulo x^8 - x^4 + 1.
        let mut poly = vec![Rat::zero(); k + 1];
        poly[k] = rint(1);
        CycNum::reduce(poly)
    }

    /// zeta_r^k for r dividing 24.
    pub fn zeta_pow(r: i64, k: i64) -> CycNum {
        assert!(r > 0 && 24 % r == 0, "root order {} does not divide 24", r);
        CycNum::zeta24_pow((24 / r) * k)
    }

    fn reduce(mut poly: Vec<Rat>) -> CycNum {
        // x^{8+i} = x^{4+i} - x^i
        for d in (DEGREE..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[d], Rat::zero());
            if c.is_zero() {
                continue;
            }
            poly[d - 4] += &c;
            poly[d - 8] -= &c;
        }
        let mut coords = zero_coords();
        for (i, c) in poly.into_iter().take(DEGREE).enumerate() {
            coords[i] = c;
        }
        CycNum { coords }
    }

    pub fn coords(&self) -> &[Rat; DEGREE] {
        &self.coords
    }

    /// Coordinate i, i.e. the coefficient of zeta_24^i in the power basis.
    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn from_coords(coords: [Rat; DEGREE]) -> CycNum {
        CycNum { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True if the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    /// The rational value; None if the element is not rational.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, s: &Rat) -> CycNum {
        let mut coords = zero_coords();
        for (i, c) in self.coords.iter().enumerate() {
            coords[i] = c * s;
        }
        CycNum { coords }
    }

    /// Complex conjugation: zeta_24 -> zeta_24^{-1}.
    pub fn conj(&self) -> CycNum {
        let mut out = CycNum::zero();
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &CycNum::zeta24_pow(-(i as i64)).scale(c);
            }
        }
        out
    }
}

// Render as a polynomial in z = zeta_24.
impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", rat_to_string(c))?;
            } else {
                write!(f, "({})z^{}", rat_to_string(c), i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a, 'b> Add<&'b CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &'b CycNum) -> CycNum {
        let mut coords = zero_coords();
        for i in 0..DEGREE {
            coords[i] = &self.coords[i] + &rhs.coords[i];
        }
        CycNum { coords }
    }
}

impl<'a, 'b> Sub<&'b CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &'b CycNum) -> CycNum {
        let mut coords = zero_coords();
        for i in 0..DEGREE {
            coords[i] = &self.coords[i] - &rhs.coords[i];
        }
        CycNum { coords }
    }
}

impl<'a> Neg for &'a CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let mut coords = zero_coords();
        for i in 0..DEGREE {
            coords[i] = -self.coords[i].clone();
        }
        CycNum { coords }
    }
}

impl<'a, 'b> Mul<&'b CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &'b CycNum) -> CycNum {
        let mut poly = vec![Rat::zero(); 2 * DEGREE - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                poly[i + j] += a * b;
            }
        }
        CycNum::reduce(poly)
    }
}
