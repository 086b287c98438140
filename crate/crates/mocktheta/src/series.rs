//! Exact formal q-expansions with a fractional exponent lattice.
//!
//! A [`QExp`] stores finitely many nonzero rational coefficients indexed by
//! exponent-numerators on the lattice (1/D)Z, together with an explicit
//! truncation bound: coefficients at numerators >= `trunc` are *unknown*,
//! not zero.  Binary operations propagate truncation conservatively so that
//! every reported coefficient is fully determined.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rat::{rat_from_str, rat_to_string, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExp {
    denom: i64,
    trunc: i64,
    coeffs: BTreeMap<i64, Rat>,
}

impl QExp {
    pub fn zero(denom: i64, trunc: i64) -> Self {
        assert!(denom > 0, "lattice denominator must be positive");
        QExp {
            denom,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(denom: i64, trunc: i64) -> Self {
        Self::monomial(denom, 0, Rat::from_integer(1.into()), trunc)
    }

    /// c * q^(e/denom), truncated at `trunc`.
    pub fn monomial(denom: i64, e: i64, c: Rat, trunc: i64) -> Self {
        let mut s = Self::zero(denom, trunc);
        s.set(e, c);
        s
    }

    /// Build from (exponent-numerator, coefficient) pairs; zeros are dropped,
    /// terms at or above `trunc` are rejected.
    pub fn from_terms<I>(denom: i64, trunc: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rat)>,
    {
        let mut s = Self::zero(denom, trunc);
        for (e, c) in terms {
            assert!(e < trunc, "term at numerator {} not below trunc {}", e, trunc);
            let cur = s.coeffs.remove(&e).unwrap_or_else(Rat::zero) + c;
            if !cur.is_zero() {
                s.coeffs.insert(e, cur);
            }
        }
        s
    }

    fn set(&mut self, e: i64, c: Rat) {
        if e >= self.trunc {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Least stored exponent-numerator, or `trunc` for the zero series.
    pub fn min_exp_num(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.trunc)
    }

    pub fn is_zero_series(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_lattice(&self, other: &QExp) -> Result<()> {
        if self.denom != other.denom {
            return Err(Error::LatticeMismatch(self.denom, other.denom));
        }
        Ok(())
    }

    pub fn add(&self, other: &QExp) -> Result<QExp> {
        self.check_lattice(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = QExp::zero(self.denom, trunc);
        for (&e, c) in &self.coeffs {
            if e < trunc {
                out.set(e, c.clone());
            }
        }
        for (&e, c) in &other.coeffs {
            if e < trunc {
                let cur = out.coeffs.remove(&e).unwrap_or_else(Rat::zero) + c;
                if !cur.is_zero() {
                    out.coeffs.insert(e, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> QExp {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &QExp) -> Result<QExp> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rat) -> QExp {
        let mut out = QExp::zero(self.denom, self.trunc);
        if s.is_zero() {
            return out;
        }
        for (&e, c) in &self.coeffs {
            out.coeffs.insert(e, c * s);
        }
        out
    }

    /// Cauchy product.  The result truncation is chosen so that every reported
    /// coefficient is fully determined:
    /// min(a.trunc + b.minexp, b.trunc + a.minexp).
    pub fn mul(&self, other: &QExp) -> Result<QExp> {
        self.check_lattice(other)?;
        let trunc = (self.trunc + other.min_exp_num()).min(other.trunc + self.min_exp_num());
        let mut acc: BTreeMap<i64, Rat> = BTreeMap::new();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                let e = ea + eb;
                if e >= trunc {
                    break; // eb ascending
                }
                let entry = acc.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(QExp {
            denom: self.denom,
            trunc,
            coeffs: acc,
        })
    }

    /// Multiplicative inverse b with a*b = 1 + O(q^(order/D)), by iterative
    /// coefficient solving.  `order` is an exponent-numerator bound.
    pub fn invert(&self, order: i64) -> Result<QExp> {
        let m = *self.coeffs.keys().next().ok_or(Error::NotInvertible)?;
        let lead = self.coeffs.get(&m).unwrap().clone();
        // Unit part: u_j are the coefficients of (a * q^{-m})^{-1}.
        let jmax = order.min(self.trunc - m);
        if jmax <= 0 {
            return Ok(QExp::zero(self.denom, order - m));
        }
        let mut u: Vec<Rat> = Vec::with_capacity(jmax as usize);
        u.push(Rat::from_integer(1.into()) / lead.clone());
        let shifted: Vec<(i64, Rat)> = self
            .coeffs
            .iter()
            .map(|(&e, c)| (e - m, c.clone()))
            .collect();
        for j in 1..jmax {
            let mut s = Rat::zero();
            for (i, c) in &shifted {
                if *i == 0 {
                    continue;
                }
                if *i > j {
                    break;
                }
                s += c * &u[(j - i) as usize];
            }
            u.push(-s / lead.clone());
        }
        Ok(QExp::from_terms(
            self.denom,
            order - m,
            u.into_iter()
                .enumerate()
                .map(|(j, c)| (j as i64 - m, c))
                .filter(|(_, c)| !c.is_zero()),
        ))
    }

    /// Substitution tau -> c*tau (q^x -> q^{cx}) for positive rational c.
    /// The smallest valid lattice denominator is chosen, and the result is
    /// normalized so that rescaling by c then 1/c round-trips exactly.
    pub fn rescale_tau(&self, c: &Rat) -> QExp {
        assert!(c.is_positive(), "rescale factor must be positive");
        let p = i64::try_from(c.numer()).expect("rescale numerator fits i64");
        let q = i64::try_from(c.denom()).expect("rescale denominator fits i64");
        let g = p.gcd(&(self.denom * q));
        let d_new = self.denom * q / g;
        let f = p / g;
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (&e, cf) in &self.coeffs {
            coeffs.insert(e * f, cf.clone());
        }
        let trunc = self.trunc * f;
        // Reduce to the coarsest lattice carrying all exponents and the bound.
        let mut red = d_new.gcd(&trunc);
        for &e in coeffs.keys() {
            red = red.gcd(&e);
            if red == 1 {
                break;
            }
        }
        if red > 1 {
            coeffs = coeffs.into_iter().map(|(e, c)| (e / red, c)).collect();
            return QExp {
                denom: d_new / red,
                trunc: trunc / red,
                coeffs,
            };
        }
        QExp {
            denom: d_new,
            trunc,
            coeffs,
        }
    }

    /// Re-express on a finer lattice (new_denom must be a multiple of denom).
    pub fn embed(&self, new_denom: i64) -> Result<QExp> {
        if new_denom % self.denom != 0 {
            return Err(Error::LatticeMismatch(self.denom, new_denom));
        }
        let f = new_denom / self.denom;
        Ok(QExp {
            denom: new_denom,
            trunc: self.trunc * f,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e * f, c.clone()))
                .collect(),
        })
    }

    /// Shift exponents by `k` numerator units (multiplication by q^{k/D}).
    pub fn shifted(&self, k: i64) -> QExp {
        QExp {
            denom: self.denom,
            trunc: self.trunc + k,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Lower the truncation bound, discarding coefficients at or above it.
    pub fn truncate_to(&self, trunc: i64) -> QExp {
        assert!(trunc <= self.trunc, "truncate_to may only lower the bound");
        QExp {
            denom: self.denom,
            trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&e, _)| e < trunc)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Coefficient at a rational exponent.  Exact zero off the support is
    /// reported only on the lattice and below the truncation bound.
    pub fn coeff(&self, exponent: &Rat) -> Result<Rat> {
        let scaled = exponent * Rat::from_integer(self.denom.into());
        if !scaled.denom().is_one() {
            return Err(Error::OffLattice(rat_to_string(exponent), self.denom));
        }
        let e = i64::try_from(scaled.numer())
            .map_err(|_| Error::OffLattice(rat_to_string(exponent), self.denom))?;
        self.coeff_num(e)
    }

    /// Coefficient at exponent-numerator `e`.
    pub fn coeff_num(&self, e: i64) -> Result<Rat> {
        if e >= self.trunc {
            return Err(Error::CoeffOutOfRange(format!("{}/{}", e, self.denom)));
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero))
    }

    /// JSON form: {"denom": D, "trunc": T, "coeffs": [[e, "p/q"], ...]}
    /// with exponent-numerators ascending.
    pub fn to_json(&self) -> Value {
        json!({
            "denom": self.denom,
            "trunc": self.trunc,
            "coeffs": self
                .coeffs
                .iter()
                .map(|(&e, c)| json!([e, rat_to_string(c)]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<QExp> {
        let bad = |msg: &str| Error::Cache(format!("malformed QExp payload: {}", msg));
        let denom = v["denom"].as_i64().ok_or_else(|| bad("denom"))?;
        let trunc = v["trunc"].as_i64().ok_or_else(|| bad("trunc"))?;
        if denom <= 0 {
            return Err(bad("denom must be positive"));
        }
        let mut s = QExp::zero(denom, trunc);
        let arr = v["coeffs"].as_array().ok_or_else(|| bad("coeffs"))?;
        for item in arr {
            let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("pair"))?;
            let e = pair[0].as_i64().ok_or_else(|| bad("exponent"))?;
            let c = rat_from_str(pair[1].as_str().ok_or_else(|| bad("coefficient"))?)?;
            if e >= trunc {
                return Err(bad("exponent at or above trunc"));
            }
            if c.is_zero() {
                return Err(bad("stored zero coefficient"));
            }
            s.coeffs.insert(e, c);
        }
        Ok(s)
    }
}

/// Fixed-length tuple of expansions on a shared lattice and truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorQExp {
    components: Vec<QExp>,
}

impl VectorQExp {
    pub fn new(components: Vec<QExp>) -> Self {
        assert!(!components.is_empty());
        let d = components[0].denom();
        let t = components[0].trunc();
        for c in &components {
            assert_eq!(c.denom(), d, "vector components must share the lattice");
            assert_eq!(c.trunc(), t, "vector components must share the truncation");
        }
        VectorQExp { components }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// 0-based access.
    pub fn get(&self, i: usize) -> &QExp {
        &self.components[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &QExp> {
        self.components.iter()
    }

    pub fn denom(&self) -> i64 {
        self.components[0].denom()
    }

    pub fn trunc(&self) -> i64 {
        self.components[0].trunc()
    }
}
