//! Linear functionals on an algebra and the forms and subspaces they define.

mod subspace;

pub use subspace::Subspace;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{mat, Algebra};
use crate::arith::matrix::RatMatrix;
use crate::arith::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Spectral parameter: a finite rational or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlphaValue {
    Finite(Rational),
    Infinity,
}

impl AlphaValue {
    pub fn finite(r: Rational) -> Self {
        AlphaValue::Finite(r)
    }

    pub fn zero() -> Self {
        AlphaValue::Finite(Rational::zero())
    }

    pub fn one() -> Self {
        AlphaValue::Finite(Rational::one())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, AlphaValue::Infinity)
    }

    /// `1 / α`, with `1/0 = ∞` and `1/∞ = 0`.
    pub fn inverse(&self) -> Self {
        match self {
            AlphaValue::Infinity => AlphaValue::zero(),
            AlphaValue::Finite(r) if r.is_zero() => AlphaValue::Infinity,
            AlphaValue::Finite(r) => AlphaValue::Finite(r.recip()),
        }
    }

    /// `α β`, or `None` for the undefined `0 · ∞`.
    pub fn product(&self, other: &Self) -> Option<Self> {
        match (self, other) {
            (AlphaValue::Finite(a), AlphaValue::Finite(b)) => Some(AlphaValue::Finite(a * b)),
            (AlphaValue::Infinity, AlphaValue::Finite(x)) | (AlphaValue::Finite(x), AlphaValue::Infinity) => {
                (!x.is_zero()).then_some(AlphaValue::Infinity)
            }
            (AlphaValue::Infinity, AlphaValue::Infinity) => Some(AlphaValue::Infinity),
        }
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaValue::Finite(r) => f.write_str(&format_rational(r)),
            AlphaValue::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for AlphaValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" | "oo" => Ok(AlphaValue::Infinity),
            t => parse_rational(t).map(AlphaValue::Finite),
        }
    }
}

impl Serialize for AlphaValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AlphaValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A functional on `alg`, given by its values on the basis.
#[derive(Clone, PartialEq)]
pub struct Functional<'a> {
    alg: &'a Algebra,
    coords: Vec<Rational>,
}

impl<'a> Functional<'a> {
    pub fn new(alg: &'a Algebra, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: coords.len(),
            });
        }
        Ok(Functional { alg, coords })
    }

    pub fn from_i64(alg: &'a Algebra, coords: &[i64]) -> Result<Self> {
        Self::new(alg, coords.iter().map(|&c| crate::arith::rat(c)).collect())
    }

    pub fn zero(alg: &'a Algebra) -> Self {
        Functional {
            alg,
            coords: vec![Rational::zero(); alg.dim()],
        }
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.coords
            .iter()
            .zip(x)
            .filter(|(f, v)| !f.is_zero() && !v.is_zero())
            .map(|(f, v)| f * v)
            .sum()
    }

    pub fn add(&self, other: &Functional<'_>) -> Result<Functional<'a>> {
        if !std::ptr::eq(self.alg, other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Functional {
            alg: self.alg,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    /// Gram matrix `G[i][j] = F(e_i e_j)`.
    pub fn gram(&self) -> RatMatrix {
        let n = self.alg.dim();
        RatMatrix::from_fn(n, n, |i, j| {
            self.alg
                .product(i, j)
                .iter()
                .filter(|(k, _)| !self.coords[*k].is_zero())
                .map(|(k, c)| c * &self.coords[*k])
                .sum()
        })
    }

    /// Skew form `F(e_i e_j - e_j e_i)`.
    pub fn b_form(&self) -> RatMatrix {
        let g = self.gram();
        &g - &g.transpose()
    }

    /// Symmetric form `F(e_i e_j + e_j e_i)`.
    pub fn q_form(&self) -> RatMatrix {
        let g = self.gram();
        &g + &g.transpose()
    }

    /// `{a : F(a x) = α F(x a) for all x}`; for `α = ∞`, `{a : F(x a) = 0}`.
    pub fn stab(&self, alpha: &AlphaValue) -> Subspace {
        stab_from_gram(&self.gram(), alpha)
    }

    /// `Stab(0) ∩ Stab(∞)`.
    pub fn nil(&self) -> Subspace {
        let g = self.gram();
        let mut rows = g.transpose().to_rows();
        rows.extend(g.to_rows());
        Subspace::kernel_of(&RatMatrix::from_rows(rows).expect("uniform"))
    }

    pub fn rank_gram(&self) -> usize {
        self.gram().rank()
    }

    /// `F(e_i e_j) = F(e_i) F(e_j)` on all basis pairs.
    pub fn is_multiplicative(&self) -> bool {
        let g = self.gram();
        let n = self.alg.dim();
        (0..n).all(|i| (0..n).all(|j| g[(i, j)] == &self.coords[i] * &self.coords[j]))
    }

    /// `F(1)`, when the algebra is unital.
    pub fn unity_value(&self) -> Option<Rational> {
        self.alg.unity().map(|u| self.eval(u))
    }

    pub fn vanishes_on(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| self.eval(v).is_zero())
    }

    /// Values as a map from basis label to rational text.
    pub fn to_label_map(&self) -> BTreeMap<String, String> {
        self.alg
            .labels()
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l.clone(), format_rational(c)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_label_map()).expect("serializable")
    }

    /// Parse a JSON object mapping labels to rationals; missing labels are 0.
    pub fn from_json(alg: &'a Algebra, text: &str) -> Result<Self> {
        let raw: BTreeMap<String, serde_json::Value> = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        let mut coords = vec![Rational::zero(); alg.dim()];
        for (label, v) in &raw {
            let i = alg
                .label_index(label)
                .ok_or_else(|| Error::parse(label.clone(), "unknown basis label"))?;
            coords[i] = crate::algebra::json_value_rational(v).map_err(|e| Error::parse(label.clone(), e.to_string()))?;
        }
        Self::new(alg, coords)
    }
}

impl fmt::Debug for Functional<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "Functional[{}]", v.join(", "))
    }
}

impl fmt::Display for Functional<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .to_label_map()
            .into_iter()
            .map(|(l, c)| format!("{l}={c}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

/// `ker(Gᵀ - α G)`, or `ker G` at infinity.
pub fn stab_from_gram(g: &RatMatrix, alpha: &AlphaValue) -> Subspace {
    match alpha {
        AlphaValue::Infinity => Subspace::kernel_of(g),
        AlphaValue::Finite(a) => Subspace::kernel_of(&(&g.transpose() - &g.scale(a))),
    }
}

/// Span of all products `u v` with `u` from `U` and `v` from `V`.
pub fn subspace_product(alg: &Algebra, u: &Subspace, v: &Subspace) -> Result<Subspace> {
    for s in [u, v] {
        if s.ambient() != alg.dim() {
            return Err(Error::AlgebraMismatch);
        }
    }
    let mut prods = Vec::with_capacity(u.dim() * v.dim());
    for x in u.basis() {
        for y in v.basis() {
            prods.push(alg.multiply(x, y));
        }
    }
    Ok(Subspace::span(prods, alg.dim()))
}

/// Matrix of the form `m` in the bases of `rows` and `cols`.
pub fn restrict_form(m: &RatMatrix, rows: &Subspace, cols: &Subspace) -> Result<RatMatrix> {
    if rows.ambient() != m.rows() || cols.ambient() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: rows.ambient(),
        });
    }
    let mc: Vec<Vec<Rational>> = cols.basis().iter().map(|v| m.mul_vec(v)).collect();
    Ok(RatMatrix::from_fn(rows.dim(), cols.dim(), |a, b| {
        rows.basis()[a]
            .iter()
            .zip(&mc[b])
            .filter(|(x, y)| !x.is_zero() && !y.is_zero())
            .map(|(x, y)| x * y)
            .sum()
    }))
}

/// Square with nonzero determinant; the empty form counts as nondegenerate.
pub fn is_nondegenerate(m: &RatMatrix) -> bool {
    m.is_square() && !m.det().expect("square").is_zero()
}

/// Size `n` when `alg` is `mat(n)` with its standard basis order.
pub fn matrix_size(alg: &Algebra) -> Result<usize> {
    let n = (alg.dim() as f64).sqrt().round() as usize;
    if n == 0 || n * n != alg.dim() {
        return Err(Error::NotMatrixAlgebra);
    }
    let reference = mat(n)?;
    let same = (0..alg.dim()).all(|i| (0..alg.dim()).all(|j| alg.product(i, j) == reference.product(i, j)));
    if same {
        Ok(n)
    } else {
        Err(Error::NotMatrixAlgebra)
    }
}

/// The functional `x ↦ trace(f̂ x)` on `mat(n)`, so `F(E_ij) = f̂_ji`.
pub fn trace_pairing<'a>(alg: &'a Algebra, fhat: &RatMatrix) -> Result<Functional<'a>> {
    let n = matrix_size(alg)?;
    if fhat.rows() != n || fhat.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: fhat.rows(),
        });
    }
    Functional::new(alg, (0..n * n).map(|t| fhat[(t % n, t / n)].clone()).collect())
}

/// `F'(x) = F(g⁻¹ x g)` on `mat(n)`.
pub fn conjugate_functional<'a>(f: &Functional<'a>, g: &RatMatrix) -> Result<Functional<'a>> {
    let alg = f.algebra();
    let n = matrix_size(alg)?;
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.rows(),
        });
    }
    let gi = g.inverse()?;
    let c = f.coords();
    // g⁻¹ E_ij g = Σ_{k,l} gi[k][i] g[j][l] E_kl
    let coords = (0..n * n)
        .map(|t| {
            let (i, j) = (t / n, t % n);
            let mut total = Rational::zero();
            for k in 0..n {
                if gi[(k, i)].is_zero() {
                    continue;
                }
                for l in 0..n {
                    let fv = &c[k * n + l];
                    if fv.is_zero() || g[(j, l)].is_zero() {
                        continue;
                    }
                    total += &gi[(k, i)] * &g[(j, l)] * fv;
                }
            }
            total
        })
        .collect();
    Functional::new(alg, coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_sum, seaweed, type3_example, ut};
    use crate::arith::rational::{rat, ratio};

    fn diag_functional<'a>(alg: &'a Algebra, d: &[i64]) -> Functional<'a> {
        let n = d.len();
        let fhat = RatMatrix::from_fn(n, n, |i, j| if i == j { rat(d[i]) } else { rat(0) });
        trace_pairing(alg, &fhat).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![rat(0); n];
        v[i] = rat(1);
        v
    }

    #[test]
    fn gram_by_direct_evaluation() {
        let alg = mat(2).unwrap();
        let f = Functional::from_i64(&alg, &[1, 0, 0, 2]).unwrap();
        let g = f.gram();
        for i in 0..4 {
            for j in 0..4 {
                let prod = alg.multiply(&e(4, i), &e(4, j));
                assert_eq!(g[(i, j)], f.eval(&prod));
            }
        }
        let u = ut(2).unwrap();
        let f = Functional::from_i64(&u, &[1, 1, 1]).unwrap();
        assert_eq!(f.gram(), RatMatrix::from_i64(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 1]]));
        assert!(Functional::zero(&u).gram().is_zero());
    }

    #[test]
    fn forms_have_symmetry() {
        let alg = mat(2).unwrap();
        let f = Functional::from_i64(&alg, &[3, -1, 4, 1]).unwrap();
        assert_eq!(f.b_form().transpose(), f.b_form().scale(&rat(-1)));
        assert_eq!(f.q_form().transpose(), f.q_form());
        let one = alg.unity().unwrap().to_vec();
        assert_eq!(f.q_form().form(&one, &one), rat(2) * f.eval(&one));
    }

    #[test]
    fn mat3_stabilizers() {
        let alg = mat(3).unwrap();
        let d = [1, 2, 5];
        let f = diag_functional(&alg, &d);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let s = f.stab(&AlphaValue::Finite(ratio(d[i], d[j])));
                assert_eq!(s, Subspace::span(vec![e(9, 3 * i + j)], 9));
            }
        }
        let diag = Subspace::span(vec![e(9, 0), e(9, 4), e(9, 8)], 9);
        assert_eq!(f.stab(&AlphaValue::one()), diag);
        assert!(f.nil().is_zero());
    }

    #[test]
    fn seaweed_21_12_stab_zero_and_infinity() {
        let alg = seaweed(&[2, 1], &[1, 2]).unwrap();
        assert_eq!(alg.dim(), 5);
        let f = Functional::from_i64(&alg, &[3, -2, 5, 7, 11]).unwrap();
        let fv = |i: usize| f.coords()[i].clone();
        let comb = |p: usize, q: usize| {
            // F(p) e_q - F(q) e_p
            let mut v = vec![rat(0); 5];
            v[q] = fv(p);
            v[p] = -fv(q);
            v
        };
        let (a, b, c, d, ee) = (0, 1, 2, 3, 4);
        assert_eq!(f.stab(&AlphaValue::zero()), Subspace::span(vec![comb(a, b), comb(ee, d)], 5));
        assert_eq!(f.stab(&AlphaValue::Infinity), Subspace::span(vec![comb(b, c), comb(b, d)], 5));
    }

    #[test]
    fn type3_nil() {
        let alg = type3_example();
        let f = Functional::from_i64(&alg, &[0, 0, 0, 1]).unwrap();
        let nil = f.nil();
        // v1 - v2 and w
        assert_eq!(nil, Subspace::span(vec![vec![rat(1), rat(-1), rat(0), rat(0)], e(4, 3)], 4));
        let g = Functional::from_i64(&alg, &[2, -3, 1, 5]).unwrap();
        assert!(g.nil().contains(&e(4, 3)));
    }

    #[test]
    fn multiplicative_and_rank() {
        let alg = direct_sum(&mat(1).unwrap(), &mat(1).unwrap()).unwrap();
        let f = Functional::from_i64(&alg, &[1, 0]).unwrap();
        assert!(f.is_multiplicative());
        assert_eq!(f.rank_gram(), 1);
        let f = Functional::from_i64(&alg, &[1, 1]).unwrap();
        assert!(!f.is_multiplicative());
        assert_eq!(f.rank_gram(), 2);
    }

    #[test]
    fn products_of_subspaces() {
        let alg = mat(2).unwrap();
        let u = Subspace::span(vec![e(4, 1)], 4);
        let v = Subspace::span(vec![e(4, 2)], 4);
        assert_eq!(subspace_product(&alg, &u, &v).unwrap(), Subspace::span(vec![e(4, 0)], 4));
        let one = Subspace::span(vec![alg.unity().unwrap().to_vec()], 4);
        assert_eq!(subspace_product(&alg, &one, &one).unwrap(), one);
        assert!(subspace_product(&alg, &Subspace::zero(4), &v).unwrap().is_zero());
    }

    #[test]
    fn vanishing_and_restriction() {
        let alg = mat(2).unwrap();
        let f = diag_functional(&alg, &[1, 2]);
        assert!(f.vanishes_on(&f.stab(&AlphaValue::Finite(rat(2)))));
        let one = Subspace::span(vec![alg.unity().unwrap().to_vec()], 4);
        assert!(!f.vanishes_on(&one));
        let q = restrict_form(&f.q_form(), &f.stab(&AlphaValue::one()), &f.stab(&AlphaValue::one())).unwrap();
        assert_eq!(q, RatMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert!(is_nondegenerate(&q));
        let z = restrict_form(&q, &Subspace::zero(2), &Subspace::zero(2)).unwrap();
        assert!(is_nondegenerate(&z));
    }

    #[test]
    fn conjugation() {
        let alg = mat(2).unwrap();
        let f = diag_functional(&alg, &[1, 2]);
        let id = RatMatrix::identity(2);
        assert_eq!(conjugate_functional(&f, &id).unwrap(), f);
        let g = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let h = conjugate_functional(&conjugate_functional(&f, &g).unwrap(), &g.inverse().unwrap()).unwrap();
        assert_eq!(h, f);
        // F'(x) = F(g⁻¹ x g) checked on every unit via explicit matrices.
        let fp = conjugate_functional(&f, &g).unwrap();
        let gi = g.inverse().unwrap();
        for t in 0..4 {
            let unit = RatMatrix::from_fn(2, 2, |i, j| if i * 2 + j == t { rat(1) } else { rat(0) });
            let conj = &(&gi * &unit) * &g;
            let val: Rational = (0..4).map(|s| &conj[(s / 2, s % 2)] * &f.coords()[s]).sum();
            assert_eq!(fp.coords()[t], val);
        }
        assert_eq!(conjugate_functional(&Functional::zero(&ut(2).unwrap()), &id), Err(Error::NotMatrixAlgebra));
    }

    #[test]
    fn json_round_trip() {
        let alg = ut(2).unwrap();
        let f = Functional::from_i64(&alg, &[1, 0, -3]).unwrap();
        assert_eq!(Functional::from_json(&alg, &f.to_json()).unwrap(), f);
        assert!(Functional::from_json(&alg, r#"{"nope": "1"}"#).is_err());
    }

    #[test]
    fn alpha_parsing() {
        assert_eq!("inf".parse::<AlphaValue>().unwrap(), AlphaValue::Infinity);
        assert_eq!("-1/2".parse::<AlphaValue>().unwrap(), AlphaValue::Finite(ratio(-1, 2)));
        assert_eq!(AlphaValue::zero().inverse(), AlphaValue::Infinity);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::algebra::from_spec;
    use crate::arith::rational::{rat, ratio};
    use crate::test_support::{corpus, functional_on, CORPUS};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn gram_is_linear(idx in 0usize..CORPUS.len(), s in prop::collection::vec(-7i64..=7, 1..5), t in prop::collection::vec(-7i64..=7, 1..5)) {
            let algs = corpus();
            let alg = &algs[idx];
            let (f, g) = (functional_on(alg, &s), functional_on(alg, &t));
            prop_assert_eq!(f.add(&g).unwrap().gram(), &f.gram() + &g.gram());
        }

        #[test]
        fn stab_dims_are_inverse_symmetric(idx in 0usize..CORPUS.len(), s in prop::collection::vec(-7i64..=7, 1..5), num in 1i64..=5, den in 1i64..=5) {
            let alg = from_spec(CORPUS[idx]).unwrap();
            let f = functional_on(&alg, &s);
            for alpha in [AlphaValue::finite(ratio(num, den)), AlphaValue::finite(ratio(-num, den)), AlphaValue::zero()] {
                prop_assert_eq!(f.stab(&alpha).dim(), f.stab(&alpha.inverse()).dim());
            }
        }

        #[test]
        fn conjugation_preserves_chi(seed in prop::collection::vec(-5i64..=5, 4), g in prop::collection::vec(-3i64..=3, 4)) {
            let alg = from_spec("mat:2").unwrap();
            let gm = RatMatrix::from_fn(2, 2, |i, j| rat(g[2 * i + j]));
            prop_assume!(!gm.det().unwrap().is_zero());
            let f = Functional::new(&alg, seed.iter().map(|x| rat(*x)).collect()).unwrap();
            let h = conjugate_functional(&f, &gm).unwrap();
            prop_assert_eq!(crate::spectrum::char_poly(&h, None).unwrap(), crate::spectrum::char_poly(&f, None).unwrap());
        }
    }
}
