//! Exact matrices over Q(zeta_24): the metaplectic generator images, their
//! Kronecker product, the invariant-subspace decomposition, the alpha
//! eigenvalue invariant, and the weight-2 dimension formula.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::rat::{is_integer, rat, rat_to_string, rint, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycMat {
    dim: usize,
    entries: Vec<CycNum>,
}

impl CycMat {
    pub fn zero(dim: usize) -> CycMat {
        CycMat {
            dim,
            entries: vec![CycNum::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> CycMat {
        let mut m = CycMat::zero(dim);
        for i in 0..dim {
            m.set(i, i, CycNum::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNum {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNum) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn from_rows(rows: &[Vec<CycNum>]) -> CycMat {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim));
        CycMat {
            dim,
            entries: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn mul(&self, other: &CycMat) -> CycMat {
        assert_eq!(self.dim, other.dim);
        let mut out = CycMat::zero(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                let mut s = CycNum::zero();
                for k in 0..self.dim {
                    let p = self.get(r, k) * other.get(k, c);
                    s = &s + &p;
                }
                out.set(r, c, s);
            }
        }
        out
    }

    pub fn scale_cyc(&self, s: &CycNum) -> CycMat {
        CycMat {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn neg(&self) -> CycMat {
        CycMat {
            dim: self.dim,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> CycMat {
        let mut acc = CycMat::identity(self.dim);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Conjugate transpose, with cyclotomic conjugation zeta -> zeta^{-1}.
    pub fn conj_transpose(&self) -> CycMat {
        let mut out = CycMat::zero(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.conj_transpose()) == CycMat::identity(self.dim)
    }

    pub fn trace(&self) -> CycNum {
        let mut s = CycNum::zero();
        for i in 0..self.dim {
            s = &s + &self.get(i, i).clone();
        }
        s
    }

    /// Multiplicative order, if at most `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let id = CycMat::identity(self.dim);
        let mut p = self.clone();
        for k in 1..=bound {
            if p == id {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| {
                        self.get(r, c)
                            .coords()
                            .iter()
                            .map(|x| rat_to_string(x))
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        json!(rows)
    }
}

/// Generator selector for the metaplectic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    T,
    S,
}

/// The three-dimensional representation attached to the mock theta vector:
/// rho3(T) = diag-block (zeta_24^{-1}; antidiag zeta_3),
/// rho3(S) = zeta_8^{-1} (0 1 0; 1 0 0; 0 0 -1).
pub fn rho3(generator: Generator) -> CycMat {
    let z = |k: i64| CycNum::zeta24_pow(k);
    let o = CycNum::zero;
    match generator {
        Generator::T => CycMat::from_rows(&[
            vec![z(-1), o(), o()],
            vec![o(), o(), z(8)],
            vec![o(), z(8), o()],
        ]),
        Generator::S => CycMat::from_rows(&[
            vec![o(), z(-3), o()],
            vec![z(-3), o(), o()],
            vec![o(), o(), -&z(-3)],
        ]),
    }
}

/// Kronecker product of A with the entrywise cyclotomic conjugate of B,
/// realizing the tensor of a representation with its complex conjugate.
/// Index convention: (i1, i2) -> dim(B) * i1 + i2.
pub fn kron(a: &CycMat, b_conj: &CycMat) -> CycMat {
    let da = a.dim();
    let db = b_conj.dim();
    let mut out = CycMat::zero(da * db);
    for i1 in 0..da {
        for j1 in 0..da {
            for i2 in 0..db {
                for j2 in 0..db {
                    let v = a.get(i1, j1) * &b_conj.get(i2, j2).conj();
                    out.set(db * i1 + i2, db * j1 + j2, v);
                }
            }
        }
    }
    out
}

/// Columns spanning the three invariant subspaces of the 9-dimensional
/// tensor representation, of dimensions 1, 2, 6.
pub fn subspace_basis(which: usize) -> Vec<Vec<Rat>> {
    let r = |n: i64| rint(n);
    match which {
        0 => vec![vec![
            r(1),
            r(0),
            r(0),
            r(0),
            r(1),
            r(0),
            r(0),
            r(0),
            r(1),
        ]],
        1 => vec![
            vec![r(0), r(0), r(0), r(0), r(1), r(0), r(0), r(0), r(-1)],
            vec![
                r(1),
                r(0),
                r(0),
                r(0),
                rat(-1, 2),
                r(0),
                r(0),
                r(0),
                rat(-1, 2),
            ],
        ],
        2 => {
            // Columns of the 9x6 matrix, read off its rows:
            // rows 2,3 carry columns 1-2; rows 4,7 columns 3-4; rows 6,8 columns 5-6.
            let rows: [[i64; 6]; 9] = [
                [0, 0, 0, 0, 0, 0],
                [1, 1, 0, 0, 0, 0],
                [-1, 1, 0, 0, 0, 0],
                [0, 0, 1, 1, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 1, 1],
                [0, 0, 1, -1, 0, 0],
                [0, 0, 0, 0, -1, 1],
                [0, 0, 0, 0, 0, 0],
            ];
            (0..6)
                .map(|c| (0..9).map(|rw| r(rows[rw][c])).collect())
                .collect()
        }
        _ => panic!("subspace index out of range"),
    }
}

/// Gaussian elimination over Q: solve a X = rhs for square rational a.
/// Returns None if a is singular.
fn solve_rat(a: &[Vec<Rat>], rhs: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let k = if n == 0 { 0 } else { rhs[0].len() };
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            a[i].iter()
                .cloned()
                .chain(rhs[i].iter().cloned())
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..n + k {
                    let delta = &f * &m[col][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n..].to_vec()).collect())
}

fn rat_rank(cols: &[Vec<Rat>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let rows = cols[0].len();
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let ncols = cols.len();
    let mut rank = 0;
    for col in 0..ncols {
        if let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) {
            m.swap(rank, p);
            let piv = m[rank][col].clone();
            for x in m[rank].iter_mut() {
                *x = &*x / &piv;
            }
            for r in 0..rows {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..ncols {
                        let delta = &f * &m[rank][c];
                        m[r][c] = &m[r][c] - &delta;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Induced generator images on one invariant subspace, plus its dimension.
#[derive(Clone, Debug)]
pub struct InducedRep {
    pub name: &'static str,
    pub dim: usize,
    pub t: CycMat,
    pub s: CycMat,
}

/// Verify that each claimed subspace is invariant under the tensor images of
/// T and S, and return the induced representations.  Fails if the linear
/// systems have no exact solution or the verification product differs.
pub fn check_invariant_subspaces() -> Result<Vec<InducedRep>> {
    let big_t = kron(&rho3(Generator::T), &rho3(Generator::T));
    let big_s = kron(&rho3(Generator::S), &rho3(Generator::S));
    let names = ["sigma1", "sigma2", "sigma6"];
    let mut out = Vec::new();
    for (which, name) in names.iter().enumerate() {
        let basis = subspace_basis(which);
        let d = basis.len();
        let induce = |m: &CycMat| -> Result<CycMat> {
            // v_c = M . basis[c] (9-vector over the cyclotomic field)
            let images: Vec<Vec<CycNum>> = basis
                .iter()
                .map(|col| {
                    (0..9)
                        .map(|r| {
                            let mut s = CycNum::zero();
                            for k in 0..9 {
                                s = &s + &m.get(r, k).scale(&col[k]);
                            }
                            s
                        })
                        .collect()
                })
                .collect();
            // Solve (B^T B) C = B^T images, coordinatewise over Q.
            let gram: Vec<Vec<Rat>> = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| (0..9).map(|r| &basis[i][r] * &basis[j][r]).sum())
                        .collect()
                })
                .collect();
            let mut coeff = CycMat::zero(d);
            for coord in 0..crate::cyclotomic::DEGREE {
                let rhs: Vec<Vec<Rat>> = (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| {
                                (0..9)
                                    .map(|r| &basis[i][r] * images[j][r].coord(coord))
                                    .sum()
                            })
                            .collect()
                    })
                    .collect();
                let sol = solve_rat(&gram, &rhs).ok_or_else(|| {
                    Error::DecompositionFailure(format!("{}: singular Gram matrix", name))
                })?;
                for i in 0..d {
                    for j in 0..d {
                        if !sol[i][j].is_zero() {
                            let mut coords: [Rat; crate::cyclotomic::DEGREE] =
                                coeff.get(i, j).coords().clone();
                            coords[coord] = sol[i][j].clone();
                            coeff.set(i, j, CycNum::from_coords(coords));
                        }
                    }
                }
            }
            // Verify M B = B C exactly.
            for j in 0..d {
                for r in 0..9 {
                    let mut s = CycNum::zero();
                    for i in 0..d {
                        s = &s + &coeff.get(i, j).scale(&basis[i][r]);
                    }
                    if s != images[j][r] {
                        return Err(Error::DecompositionFailure(format!(
                            "{}: column {} is not invariant",
                            name, j
                        )));
                    }
                }
            }
            Ok(coeff)
        };
        out.push(InducedRep {
            name,
            dim: d,
            t: induce(&big_t)?,
            s: induce(&big_s)?,
        });
    }
    // The three spans together must fill all of the 9-dimensional space.
    let all: Vec<Vec<Rat>> = (0..3).flat_map(subspace_basis).collect();
    if rat_rank(&all) != 9 {
        return Err(Error::DecompositionFailure(
            "subspace union does not have full rank".into(),
        ));
    }
    Ok(out)
}

/// alpha(M) = sum of the fractional parts b_i in [0,1) with eigenvalues
/// e^{2 pi i b_i}, for M of finite order dividing 24.  Multiplicities are
/// obtained from exact character sums over the cyclic group generated by M.
pub fn alpha(m: &CycMat) -> Result<Rat> {
    let k = m
        .order(48)
        .ok_or_else(|| Error::Domain("matrix has no small finite order".into()))? as i64;
    if 24 % k != 0 {
        return Err(Error::Domain(format!(
            "matrix order {} does not divide 24; eigenvalues leave Q(zeta_24)",
            k
        )));
    }
    // Traces of powers M^t for t = 0..k-1.
    let mut traces = Vec::with_capacity(k as usize);
    let mut p = CycMat::identity(m.dim());
    for _ in 0..k {
        traces.push(p.trace());
        p = p.mul(m);
    }
    let mut total = Rat::zero();
    let mut count = Rat::zero();
    for j in 0..k {
        // multiplicity of the eigenvalue zeta_k^j
        let mut s = CycNum::zero();
        for (t, tr) in traces.iter().enumerate() {
            s = &s + &(tr * &CycNum::zeta_pow(k, -(j * t as i64)));
        }
        let mult = s
            .scale(&rat(1, k))
            .as_rat()
            .ok_or_else(|| Error::Domain("non-rational eigenvalue multiplicity".into()))?;
        if !is_integer(&mult) || mult < Rat::zero() {
            return Err(Error::Domain(format!(
                "eigenvalue multiplicity {} is not a nonnegative integer",
                mult
            )));
        }
        count += &mult;
        total += mult * rat(j, k);
    }
    if count != rint(m.dim() as i64) {
        return Err(Error::Domain(
            "eigenvalue multiplicities do not sum to the dimension".into(),
        ));
    }
    Ok(total)
}

/// dim M_2 = d + 2d/12 - alpha(-S) - alpha(zeta_3^{-1} (ST)^{-1}) - alpha(T)
/// for an induced representation with S^2 the identity.
pub fn dim_m2(rep: &InducedRep) -> Result<Rat> {
    if rep.s.pow(2) != CycMat::identity(rep.dim) {
        return Err(Error::InapplicableFormula(format!(
            "{}: S image does not square to the identity",
            rep.name
        )));
    }
    let st = rep.s.mul(&rep.t);
    let k = st
        .order(48)
        .ok_or_else(|| Error::Domain("ST image has no small finite order".into()))?;
    let st_inv = st.pow(k - 1);
    let twisted = st_inv.scale_cyc(&CycNum::zeta_pow(3, -1));
    let d = rint(rep.dim as i64);
    Ok(&d + &d * rat(2, 12) - alpha(&rep.s.neg())? - alpha(&twisted)? - alpha(&rep.t)?)
}

/// The rational S image on the two-dimensional subspace; used by the numeric
/// transformation checks.
pub fn sigma2_s_rational() -> Result<[[Rat; 2]; 2]> {
    let reps = check_invariant_subspaces()?;
    let s = &reps[1].s;
    let entry = |r: usize, c: usize| -> Result<Rat> {
        s.get(r, c)
            .as_rat()
            .ok_or_else(|| Error::DecompositionFailure("sigma2 S image is not rational".into()))
    };
    Ok([
        [entry(0, 0)?, entry(0, 1)?],
        [entry(1, 0)?, entry(1, 1)?],
    ])
}

/// Full machine-readable report: induced generator images, alpha values, and
/// the two dimension counts.
pub fn report_json() -> Result<Value> {
    let reps = check_invariant_subspaces()?;
    let mut items = Vec::new();
    for rep in &reps {
        let st = rep.s.mul(&rep.t);
        let k = st.order(48).unwrap();
        let twisted = st.pow(k - 1).scale_cyc(&CycNum::zeta_pow(3, -1));
        let alphas = json!({
            "t": rat_to_string(&alpha(&rep.t)?),
            "neg_s": rat_to_string(&alpha(&rep.s.neg())?),
            "zeta3_inv_st_inv": rat_to_string(&alpha(&twisted)?),
        });
        let dim2 = if rep.dim == 1 {
            // trivial subrepresentation: the formula is not applied
            Value::Null
        } else {
            Value::String(rat_to_string(&dim_m2(rep)?))
        };
        items.push(json!({
            "name": rep.name,
            "dim": rep.dim,
            "t": rep.t.to_json(),
            "s": rep.s.to_json(),
            "alpha": alphas,
            "dim_m2": dim2,
        }));
    }
    Ok(json!({ "subrepresentations": items }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho3_relations() {
        let t = rho3(Generator::T);
        let s = rho3(Generator::S);
        assert!(t.is_unitary());
        assert!(s.is_unitary());
        assert_eq!(s.pow(8), CycMat::identity(3));
        // (ST)^3 = S^2 = -i I
        let st = s.mul(&t);
        assert_eq!(st.pow(3), s.pow(2));
        let minus_i = CycMat::identity(3).scale_cyc(&CycNum::zeta_pow(4, -1));
        assert_eq!(s.pow(2), minus_i);
    }

    #[test]
    fn kron_basics() {
        let id3 = CycMat::identity(3);
        assert_eq!(kron(&id3, &id3), CycMat::identity(9));
        let t = rho3(Generator::T);
        let tt = kron(&t, &t);
        assert_eq!(*tt.get(0, 0), CycNum::one()); // zeta^{-1} conj(zeta^{-1})
        assert!(tt.is_unitary());
        assert!(kron(&rho3(Generator::S), &rho3(Generator::S)).is_unitary());
    }

    #[test]
    fn decomposition_and_induced_images() {
        let reps = check_invariant_subspaces().unwrap();
        assert_eq!(reps.len(), 3);
        assert_eq!(reps[0].dim, 1);
        assert_eq!(reps[1].dim, 2);
        assert_eq!(reps[2].dim, 6);
        // sigma1 is trivial.
        assert_eq!(reps[0].t, CycMat::identity(1));
        assert_eq!(reps[0].s, CycMat::identity(1));
        // sigma2(S) = (1/2, 3/4; 1, -1/2).
        let s2 = sigma2_s_rational().unwrap();
        assert_eq!(s2[0][0], rat(1, 2));
        assert_eq!(s2[0][1], rat(3, 4));
        assert_eq!(s2[1][0], rint(1));
        assert_eq!(s2[1][1], rat(-1, 2));
        // sigma6 lift of -I acts as the identity: (induced S)^2 = I.
        assert_eq!(reps[2].s.pow(2), CycMat::identity(6));
    }

    #[test]
    fn alpha_values_and_dimensions() {
        let reps = check_invariant_subspaces().unwrap();
        let s2 = &reps[1];
        let s6 = &reps[2];
        assert_eq!(alpha(&CycMat::identity(4)).unwrap(), rint(0));
        assert_eq!(alpha(&s2.t).unwrap(), rat(1, 2));
        assert_eq!(alpha(&s2.s.neg()).unwrap(), rat(1, 2));
        let st2 = s2.s.mul(&s2.t);
        let tw2 = st2
            .pow(st2.order(48).unwrap() - 1)
            .scale_cyc(&CycNum::zeta_pow(3, -1));
        assert_eq!(alpha(&tw2).unwrap(), rat(1, 3));
        assert_eq!(alpha(&s6.t).unwrap(), rat(5, 2));
        assert_eq!(alpha(&s6.s.neg()).unwrap(), rat(3, 2));
        let st6 = s6.s.mul(&s6.t);
        let tw6 = st6
            .pow(st6.order(48).unwrap() - 1)
            .scale_cyc(&CycNum::zeta_pow(3, -1));
        assert_eq!(alpha(&tw6).unwrap(), rint(2));
        assert_eq!(dim_m2(s2).unwrap(), rint(1));
        assert_eq!(dim_m2(s6).unwrap(), rint(1));
    }

    #[test]
    fn report_is_well_formed() {
        let r = report_json().unwrap();
        let items = r["subrepresentations"].as_array().unwrap();
        assert_eq!(items.len(), 3);
        assert_eq!(items[1]["dim_m2"], "1");
        assert_eq!(items[2]["alpha"]["t"], "5/2");
    }
}
