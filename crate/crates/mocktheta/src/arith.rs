//! Number-theoretic primitives: divisor sums, sign conventions, signed
//! divisor-pair enumeration, and Hurwitz class numbers by brute force.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rat::{is_integer, rat, rat_to_string, rint, to_i64, Rat};

/// Sum of positive divisors of a positive integer; 0 for non-integers and
/// for integers <= 0.
pub fn sigma(n: &Rat) -> Rat {
    if !is_integer(n) {
        return rint(0);
    }
    let v = to_i64(n);
    if v <= 0 {
        return rint(0);
    }
    rint(divisor_sum(v))
}

fn divisor_sum(n: i64) -> i64 {
    let mut s = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += d;
            if d * d != n {
                s += n / d;
            }
        }
        d += 1;
    }
    s
}

/// sgn(n) for n != 0, and sgn+(0) := 1.
pub fn sgn_plus(n: &Rat) -> i64 {
    if n.is_negative() {
        -1
    } else {
        1
    }
}

/// An integer factorization ab = target with both signs allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisorPair {
    pub a: i64,
    pub b: i64,
}

/// All (a, b) in Z^2 with ab = target, target != 0, ascending in a.
pub fn signed_divisor_pairs(target: i64) -> Result<Vec<DivisorPair>> {
    if target == 0 {
        return Err(Error::InfiniteFamily);
    }
    let t = target.abs();
    let mut pos = Vec::new();
    let mut d = 1;
    while d * d <= t {
        if t % d == 0 {
            pos.push(d);
            if d * d != t {
                pos.push(t / d);
            }
        }
        d += 1;
    }
    let mut pairs: Vec<DivisorPair> = Vec::with_capacity(2 * pos.len());
    for &a in &pos {
        pairs.push(DivisorPair { a, b: target / a });
        pairs.push(DivisorPair {
            a: -a,
            b: -(target / a),
        });
    }
    pairs.sort_by_key(|p| (p.a, p.b));
    Ok(pairs)
}

/// Hurwitz class number H(N): weighted count of SL2(Z)-reduced positive
/// definite forms ax^2 + bxy + cy^2 of discriminant -N, with weight 1/2 for
/// forms equivalent to a(x^2 + y^2), weight 1/3 for a(x^2 + xy + y^2), and
/// the conventions H(0) = -1/12, H(N) = 0 for N = 1, 2 mod 4.
pub fn hurwitz(n: i64) -> Result<Rat> {
    if n < 0 {
        return Err(Error::Domain(format!("hurwitz: negative discriminant index {}", n)));
    }
    if n == 0 {
        return Ok(rat(-1, 12));
    }
    if n % 4 == 1 || n % 4 == 2 {
        return Ok(rint(0));
    }
    let mut h = rint(0);
    // Reduced: |b| <= a <= c, with b >= 0 if |b| = a or a = c.
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a..=a {
            let num = (b * b + n) as i64;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            h += if b.abs() == a && a == c {
                rat(1, 3) // a(x^2 + xy + y^2)
            } else if b == 0 && a == c {
                rat(1, 2) // a(x^2 + y^2)
            } else {
                rint(1)
            };
        }
        a += 1;
    }
    Ok(h)
}

/// Table of Hurwitz class numbers H(0), ..., H(len - 1).
#[derive(Clone, Debug)]
pub struct HurwitzTable {
    values: Vec<Rat>,
}

impl HurwitzTable {
    pub fn build(len: usize) -> Result<Self> {
        let values = crate::exec::map_indexed(len, |n| hurwitz(n as i64), true);
        Ok(HurwitzTable {
            values: values.into_iter().collect::<Result<_>>()?,
        })
    }

    pub fn build_sequential(len: usize) -> Result<Self> {
        let values = crate::exec::map_indexed(len, |n| hurwitz(n as i64), false);
        Ok(HurwitzTable {
            values: values.into_iter().collect::<Result<_>>()?,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: i64) -> Result<&Rat> {
        if n < 0 {
            return Err(Error::Domain(format!("hurwitz index {}", n)));
        }
        self.values.get(n as usize).ok_or(Error::TableTooShort {
            needed: n.to_string(),
            have: self.values.len(),
        })
    }

    /// CSV rows "N,p/q".
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (n, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{}\n", n, rat_to_string(v)));
        }
        out
    }
}

/// Deterministic Miller-Rabin for i64.
pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let n_u = n as u128;
    let mut d = (n - 1) as u64;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d as u128, n_u);
        if x == 1 || x == n_u - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = x * x % n_u;
            if x == n_u - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}
