//! Constructions of all named expansions: the third-order mock theta function
//! f, its companion omega, the unary theta vector components, and the weight-2
//! Eisenstein series E2, its level-2 bracket, and the derived vectors.

use num_integer::Roots;
use serde_json::{json, Value};

use crate::arith::sigma;
use crate::error::{Error, Result};
use crate::rat::{rat, rat_from_str, rat_to_string, rint, Rat};
use crate::series::{QExp, VectorQExp};

/// Exact coefficient sequence c(.; n) for 0 <= n < len.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    label: String,
    values: Vec<Rat>,
}

impl CoeffTable {
    pub fn new(label: &str, values: Vec<Rat>) -> Self {
        CoeffTable {
            label: label.to_string(),
            values,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: i64) -> Result<&Rat> {
        if n < 0 {
            return Err(Error::Domain(format!("coefficient index {}", n)));
        }
        self.values.get(n as usize).ok_or(Error::TableTooShort {
            needed: n.to_string(),
            have: self.values.len(),
        })
    }

    /// Coefficient at a rational index: 0 off the integers.
    pub fn get_at(&self, n: &Rat) -> Result<Rat> {
        if !crate::rat::is_integer(n) {
            return Ok(rint(0));
        }
        self.get(crate::rat::to_i64(n)).cloned()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (n, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{}\n", n, rat_to_string(v)));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "values": self.values.iter().map(|v| rat_to_string(v)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<CoeffTable> {
        let bad = |msg: &str| Error::Cache(format!("malformed CoeffTable payload: {}", msg));
        let label = v["label"].as_str().ok_or_else(|| bad("label"))?;
        let arr = v["values"].as_array().ok_or_else(|| bad("values"))?;
        let values = arr
            .iter()
            .map(|x| rat_from_str(x.as_str().ok_or_else(|| bad("value"))?))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoeffTable::new(label, values))
    }
}

/// f(q) = 1 + sum_{n >= 1} q^{n^2} / ((1+q)^2 (1+q^2)^2 ... (1+q^n)^2)
/// as a q-expansion to q^{order-1}.
pub fn expand_f_qexp(order: i64) -> QExp {
    assert!(order >= 1);
    let mut acc = QExp::one(1, order);
    let mut den_inv = QExp::one(1, order);
    let mut n = 1i64;
    while n * n < order {
        // Fold in 1/(1 + q^n)^2 and add the q^{n^2} numerator shift.
        let factor = QExp::from_terms(
            1,
            order.max(2 * n + 1),
            [(0, rint(1)), (n, rint(2)), (2 * n, rint(1))],
        );
        den_inv = den_inv.mul(&factor.invert(order).unwrap()).unwrap();
        acc = acc
            .add(&den_inv.shifted(n * n).truncate_to(order))
            .unwrap();
        n += 1;
    }
    acc
}

pub fn expand_f(order: i64) -> CoeffTable {
    let q = expand_f_qexp(order);
    CoeffTable::new(
        "f",
        (0..order).map(|n| q.coeff_num(n).unwrap()).collect(),
    )
}

/// omega(q) = sum_{n >= 0} q^{2n^2+2n} / ((1-q)^2 (1-q^3)^2 ... (1-q^{2n+1})^2).
pub fn expand_omega_qexp(order: i64) -> QExp {
    assert!(order >= 1);
    let mut acc = QExp::zero(1, order);
    let mut den_inv = QExp::one(1, order);
    let mut n = 0i64;
    while 2 * n * n + 2 * n < order {
        let j = 2 * n + 1;
        let factor = QExp::from_terms(
            1,
            order.max(2 * j + 1),
            [(0, rint(1)), (j, rint(-2)), (2 * j, rint(1))],
        );
        den_inv = den_inv.mul(&factor.invert(order).unwrap()).unwrap();
        acc = acc
            .add(&den_inv.shifted(2 * n * n + 2 * n).truncate_to(order))
            .unwrap();
        n += 1;
    }
    acc
}

pub fn expand_omega(order: i64) -> CoeffTable {
    let q = expand_omega_qexp(order);
    CoeffTable::new(
        "omega",
        (0..order).map(|n| q.coeff_num(n).unwrap()).collect(),
    )
}

/// Coefficients of f modulo `modulus`, by dense polynomial arithmetic over
/// Z/modulus.  Fast path for the congruence counting experiment; validated
/// against the exact expansion in tests.
pub fn expand_f_mod(order: usize, modulus: i64) -> Vec<i64> {
    assert!(modulus > 1);
    let mut den = vec![0i64; order];
    den[0] = 1 % modulus;
    let mut acc = den.clone();
    let mut n = 1usize;
    while n * n < order {
        // In-place division by (1 + q^n)^2 = 1 + 2 q^n + q^{2n}:
        // Q[k] = P[k] - 2 Q[k-n] - Q[k-2n].
        for k in 0..order {
            let mut v = den[k];
            if k >= n {
                v -= 2 * den[k - n] % modulus;
            }
            if k >= 2 * n {
                v -= den[k - 2 * n];
            }
            den[k] = v.rem_euclid(modulus);
        }
        for k in (n * n)..order {
            acc[k] = (acc[k] + den[k - n * n]) % modulus;
        }
        n += 1;
    }
    acc
}

/// Theta vector component on the D = 24 lattice, to exponents below `order`.
///
/// Component 0: coefficient -(k + 1/6) at exponent (6k+1)^2/24.
/// Component 1: coefficient (-1)^k (k + 1/3) at exponent 4(3k+1)^2/24.
/// Component 2: coefficient -(k + 1/3) at exponent 4(3k+1)^2/24.
pub fn theta_g(component: usize, order: i64) -> QExp {
    assert!(component < 3);
    assert!(order >= 1);
    let t = 24 * order;
    let bound = t.sqrt() + 2;
    let mut terms: Vec<(i64, Rat)> = Vec::new();
    for k in -bound..=bound {
        let (e, c) = match component {
            0 => {
                let u = 6 * k + 1;
                (u * u, -(rint(k) + rat(1, 6)))
            }
            1 => {
                let u = 3 * k + 1;
                let s = if k.rem_euclid(2) == 0 { 1 } else { -1 };
                (4 * u * u, (rint(k) + rat(1, 3)) * rint(s))
            }
            _ => {
                let u = 3 * k + 1;
                (4 * u * u, -(rint(k) + rat(1, 3)))
            }
        };
        if e < t {
            terms.push((e, c));
        }
    }
    QExp::from_terms(24, t, terms)
}

fn omega_variant_qexp(order: i64, alternate: bool) -> QExp {
    let base = expand_omega_qexp(order);
    if !alternate {
        return base;
    }
    QExp::from_terms(
        1,
        order,
        base.terms().map(|(e, c)| {
            let s = if e.rem_euclid(2) == 0 { 1 } else { -1 };
            (e, c * rint(s))
        }),
    )
}

/// The holomorphic vector (q^{-1/24} f(q), 2 q^{1/3} omega(q^{1/2}),
/// 2 q^{1/3} omega(-q^{1/2})) on the D = 24 lattice.
pub fn f_plus_components(order: i64) -> VectorQExp {
    assert!(order >= 1);
    let t = 24 * order;
    let f = expand_f(order + 1);
    let comp0 = QExp::from_terms(
        24,
        t,
        (0..=order)
            .map(|n| (24 * n - 1, f.get(n).unwrap().clone()))
            .filter(|(e, _)| *e < t),
    );
    let build = |alternate: bool| -> QExp {
        omega_variant_qexp(2 * order, alternate)
            .rescale_tau(&rat(1, 2))
            .embed(24)
            .unwrap()
            .shifted(8)
            .scale(&rint(2))
            .truncate_to(t)
    };
    VectorQExp::new(vec![comp0, build(false), build(true)])
}

/// E2 = 1 - 24 sum sigma(n) q^n.
pub fn eisenstein_e2(order: i64) -> QExp {
    assert!(order >= 1);
    QExp::from_terms(
        1,
        order,
        std::iter::once((0, rint(1)))
            .chain((1..order).map(|n| (n, rint(-24) * sigma(&rint(n))))),
    )
}

/// E2^[2] = (2 E2(2 tau) - E2(tau)) / 12, cross-checked against the
/// equivalent expansion (1 + 24 sum sigma(n)(q^n - 2 q^{2n})) / 12.
pub fn eisenstein_e2_bracket2(order: i64) -> QExp {
    let e2 = eisenstein_e2(order);
    let a = e2
        .rescale_tau(&rint(2))
        .scale(&rint(2))
        .sub(&e2)
        .unwrap()
        .scale(&rat(1, 12));
    let mut terms: Vec<(i64, Rat)> = vec![(0, rat(1, 12))];
    for n in 1..order {
        let s = sigma(&rint(n));
        terms.push((n, rint(2) * &s));
        if 2 * n < order {
            terms.push((2 * n, rint(-4) * &s));
        }
    }
    let b = QExp::from_terms(1, order, terms);
    assert_eq!(a, b, "the two displayed expansions of E2^[2] must agree");
    a
}

/// The two-component vector (6(E2^[2](tau) - E2^[2](tau/2)), 12 E2^[2](tau))
/// on the D = 2 lattice.
pub fn eisenstein_sigma2(order: i64) -> VectorQExp {
    let b_emb = eisenstein_e2_bracket2(order).embed(2).unwrap();
    let b_half = eisenstein_e2_bracket2(2 * order).rescale_tau(&rat(1, 2));
    let comp1 = b_emb.sub(&b_half).unwrap().scale(&rint(6));
    let comp2 = b_emb.scale(&rint(12));
    VectorQExp::new(vec![comp1, comp2])
}

/// The nine-component vector with entries 1, 5, 9 (1-based) equal to
/// E2/3 + 8 E2^[2], E2/3 - 4 E2^[2](tau/2), E2/3 - 8 E2^[2] + 4 E2^[2](tau/2),
/// and zero elsewhere; D = 2 lattice.  Vector index i (0-based) is entry i+1.
pub fn eisenstein_e_vector(order: i64) -> VectorQExp {
    let e2 = eisenstein_e2(order).embed(2).unwrap().scale(&rat(1, 3));
    let b_emb = eisenstein_e2_bracket2(order).embed(2).unwrap();
    let b_half = eisenstein_e2_bracket2(2 * order).rescale_tau(&rat(1, 2));
    let c1 = e2.add(&b_emb.scale(&rint(8))).unwrap();
    let c5 = e2.sub(&b_half.scale(&rint(4))).unwrap();
    let c9 = e2
        .sub(&b_emb.scale(&rint(8)))
        .unwrap()
        .add(&b_half.scale(&rint(4)))
        .unwrap();
    let zero = || QExp::zero(2, 2 * order);
    VectorQExp::new(vec![
        c1,
        zero(),
        zero(),
        zero(),
        c5,
        zero(),
        zero(),
        zero(),
        c9,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_low_coefficients() {
        let f = expand_f(10);
        let want = [1, 1, -2, 3, -3, 3, -5, 7, -6, 6];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(f.get(n as i64).unwrap(), &rint(*w), "c(f;{})", n);
        }
        assert!(f.get(10).is_err());
        assert_eq!(f.get_at(&rat(1, 2)).unwrap(), rint(0));
    }

    #[test]
    fn omega_low_coefficients() {
        let w = expand_omega(8);
        let want = [1, 2, 3, 4, 6, 8, 10, 14];
        for (n, v) in want.iter().enumerate() {
            assert_eq!(w.get(n as i64).unwrap(), &rint(*v), "c(omega;{})", n);
        }
    }

    #[test]
    fn f_signs_alternate_from_two() {
        let order = 120;
        let f = expand_f(order);
        for n in 2..order {
            let c = f.get(n).unwrap();
            let expect_neg = n % 2 == 0;
            assert_eq!(
                c < &rint(0),
                expect_neg,
                "sign pattern broken at n = {}: {}",
                n,
                c
            );
        }
    }

    #[test]
    fn f_mod_matches_exact() {
        let order = 500usize;
        let f = expand_f(order as i64);
        for m in [3i64, 5, 7] {
            let fm = expand_f_mod(order, m);
            for n in 0..order {
                let exact = f.get(n as i64).unwrap();
                let r = (exact.numer() % m + m) % m;
                assert_eq!(
                    rint(fm[n]),
                    Rat::from_integer(r),
                    "mod-{} mismatch at n = {}",
                    m,
                    n
                );
            }
        }
    }

    #[test]
    fn theta_components() {
        let g0 = theta_g(0, 10);
        assert_eq!(g0.coeff(&rat(1, 24)).unwrap(), rat(-1, 6));
        assert_eq!(g0.coeff(&rat(25, 24)).unwrap(), rat(5, 6)); // k = -1
        let g1 = theta_g(1, 10);
        assert_eq!(g1.coeff(&rat(4, 24)).unwrap(), rat(1, 3));
        let g2 = theta_g(2, 10);
        assert_eq!(g2.coeff(&rat(4, 24)).unwrap(), rat(-1, 3));
        // Support of component 0 is exactly the (6k+1)^2/24 family.
        for (e, _) in g0.terms() {
            assert_eq!(e % 24, 1);
            let s = e.sqrt();
            assert_eq!(s * s, e, "exponent numerator {} is not a square", e);
        }
    }

    #[test]
    fn f_plus_vector() {
        let v = f_plus_components(6);
        assert_eq!(v.len(), 3);
        assert_eq!(v.get(0).coeff(&rat(-1, 24)).unwrap(), rint(1));
        assert_eq!(v.get(1).coeff(&rat(1, 3)).unwrap(), rint(2));
        // 1/3 + 1/2 = 5/6: picks 2 c(omega;1) with the odd-index sign flip.
        assert_eq!(v.get(1).coeff(&rat(5, 6)).unwrap(), rint(4));
        assert_eq!(v.get(2).coeff(&rat(5, 6)).unwrap(), rint(-4));
        // Component 0 support in Z - 1/24, components 1-2 in (1/2)Z + 1/3.
        for (e, _) in v.get(0).terms() {
            assert_eq!(e.rem_euclid(24), 23);
        }
        for i in [1, 2] {
            for (e, _) in v.get(i).terms() {
                assert_eq!(e.rem_euclid(12), 8);
            }
        }
    }

    #[test]
    fn eisenstein_coefficients() {
        let e2 = eisenstein_e2(10);
        assert_eq!(e2.coeff_num(0).unwrap(), rint(1));
        assert_eq!(e2.coeff_num(1).unwrap(), rint(-24));
        assert_eq!(e2.coeff_num(6).unwrap(), rint(-288));
        let b = eisenstein_e2_bracket2(10);
        assert_eq!(b.coeff_num(0).unwrap(), rat(1, 12));
        assert_eq!(b.coeff_num(1).unwrap(), rint(2));
        assert_eq!(b.coeff_num(2).unwrap(), rint(2));
    }

    #[test]
    fn sigma2_and_big_e_vectors() {
        let s = eisenstein_sigma2(10);
        assert_eq!(s.get(1).coeff_num(0).unwrap(), rint(1));
        assert_eq!(s.get(0).coeff_num(0).unwrap(), rint(0));
        assert_eq!(s.get(0).coeff(&rat(1, 2)).unwrap(), rint(-12));
        let e = eisenstein_e_vector(10);
        assert_eq!(e.len(), 9);
        assert_eq!(e.get(0).coeff_num(0).unwrap(), rint(1));
        assert_eq!(e.get(4).coeff_num(0).unwrap(), rint(0));
        assert_eq!(e.get(8).coeff_num(0).unwrap(), rint(0));
        for i in [1usize, 2, 3, 5, 6, 7] {
            assert!(e.get(i).is_zero_series());
        }
    }

    #[test]
    fn coeff_table_round_trips() {
        let f = expand_f(5);
        assert!(f.to_csv().starts_with("0,1\n1,1\n2,-2\n"));
        assert_eq!(CoeffTable::from_json(&f.to_json()).unwrap(), f);
    }
}
