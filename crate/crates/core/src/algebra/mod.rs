//! Finite-dimensional associative algebras given by structure constants.

mod construct;
mod io;

pub use construct::{
    direct_sum, from_spec, letters, mat, nilpotent_pair, opposite, seaweed, tensor_product, type3_example, unital_extension,
    ut, NilpotentData,
};
pub use io::{parse_algebra, serialize_algebra, AlgebraDocument};
pub(crate) use construct::json_rational as json_value_rational;

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::rational::Rational;
use crate::error::{Error, Result};

/// Sparse coordinate vector: `(index, coefficient)` pairs with distinct,
/// ascending indices and nonzero coefficients.
pub type SparseVec = Vec<(usize, Rational)>;

pub(crate) fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub(crate) fn to_dense(v: &SparseVec, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<String>,
    table: Vec<Vec<SparseVec>>,
    unity: Option<Vec<Rational>>,
}

/// A failed axiom, naming basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Associativity(usize, usize, usize),
    Unity(usize),
}

impl Violation {
    pub fn to_error(&self) -> Error {
        match *self {
            Violation::Associativity(i, j, k) => Error::AssociativityViolation(i, j, k),
            Violation::Unity(i) => Error::UnityViolation(i),
        }
    }
}

impl Algebra {
    /// Build from a dense structure tensor `c[i][j][k]` and validate.
    pub fn new(labels: Vec<String>, structure: Vec<Vec<Vec<Rational>>>, unity: Option<Vec<Rational>>) -> Result<Self> {
        let n = labels.len();
        if structure.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: structure.len(),
            });
        }
        let mut table = Vec::with_capacity(n);
        for row in &structure {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            let mut out = Vec::with_capacity(n);
            for v in row {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: v.len(),
                    });
                }
                out.push(to_sparse(v));
            }
            table.push(out);
        }
        let alg = Self::from_sparse(labels, table, unity)?;
        if let Some(v) = alg.validate().first() {
            return Err(v.to_error());
        }
        Ok(alg)
    }

    /// Build from sparse products without checking the axioms.
    pub fn from_sparse(labels: Vec<String>, table: Vec<Vec<SparseVec>>, unity: Option<Vec<Rational>>) -> Result<Self> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: table.len(),
            });
        }
        if let Some(u) = &unity {
            if u.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: u.len(),
                });
            }
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidArgument(format!("duplicate basis label {dup:?}")));
        }
        Ok(Algebra { labels, table, unity })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unity(&self) -> Option<&[Rational]> {
        self.unity.as_deref()
    }

    /// The product `e_i e_j` in sparse coordinates.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i][j]
            .iter()
            .find(|(idx, _)| *idx == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Dense structure tensor.
    pub fn structure(&self) -> Vec<Vec<Vec<Rational>>> {
        let n = self.dim();
        self.table
            .iter()
            .map(|row| row.iter().map(|v| to_dense(v, n)).collect())
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<AlgebraElement<'_>> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        Ok(AlgebraElement { alg: self, coords })
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// `e_i` times a sparse vector.
    fn left_basis_mul(&self, i: usize, y: &SparseVec) -> SparseVec {
        let mut acc = std::collections::BTreeMap::<usize, Rational>::new();
        for (j, b) in y {
            for (k, c) in &self.table[i][*j] {
                *acc.entry(*k).or_insert_with(Rational::zero) += b * c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn right_basis_mul(&self, x: &SparseVec, k: usize) -> SparseVec {
        let mut acc = std::collections::BTreeMap::<usize, Rational>::new();
        for (j, a) in x {
            for (l, c) in &self.table[*j][k] {
                *acc.entry(*l).or_insert_with(Rational::zero) += a * c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// All axiom failures: associativity on basis triples, then the unity.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let left = self.right_basis_mul(ij, k);
                    let right = self.left_basis_mul(i, &self.table[j][k]);
                    if left != right {
                        out.push(Violation::Associativity(i, j, k));
                    }
                }
            }
        }
        if let Some(u) = &self.unity {
            for i in 0..n {
                let e = self.basis_vector(i);
                if self.multiply(u, &e) != e || self.multiply(&e, u) != e {
                    out.push(Violation::Unity(i));
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Same structure with new labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: labels.len(),
            });
        }
        Self::from_sparse(labels, self.table.clone(), self.unity.clone())
    }

    /// Labels replaced by `a, b, c, ...`.
    pub fn with_letters(&self) -> Self {
        self.relabeled(letters(self.dim())).expect("same dimension")
    }

    /// Reorder the basis: new basis element `t` is old element `perm[t]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.dim();
        let mut inv = vec![usize::MAX; n];
        for (t, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            inv[p] = t;
        }
        if perm.len() != n {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        let remap = |v: &SparseVec| {
            let mut out: SparseVec = v.iter().map(|(k, c)| (inv[*k], c.clone())).collect();
            out.sort_by_key(|(k, _)| *k);
            out
        };
        let table = (0..n)
            .map(|a| (0..n).map(|b| remap(&self.table[perm[a]][perm[b]])).collect())
            .collect();
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let unity = self.unity.as_ref().map(|u| perm.iter().map(|&p| u[p].clone()).collect());
        Self::from_sparse(labels, table, unity)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {}, basis [{}])", self.dim(), self.labels.join(", "))
    }
}

impl fmt::Display for Algebra {
    /// Multiplication table with products written over the basis labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let cells: Vec<Vec<String>> = (0..n)
            .map(|i| (0..n).map(|j| self.format_vector(&to_dense(&self.table[i][j], n))).collect())
            .collect();
        let w0 = self.labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
        let widths: Vec<usize> = (0..n)
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain([self.labels[j].chars().count()])
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        write!(f, "{:w0$} |", "")?;
        for (j, w) in widths.iter().enumerate() {
            write!(f, " {:>w$}", self.labels[j])?;
        }
        writeln!(f)?;
        for (i, row) in cells.iter().enumerate() {
            write!(f, "{:>w0$} |", self.labels[i])?;
            for (cell, w) in row.iter().zip(&widths) {
                write!(f, " {cell:>w$}")?;
            }
            writeln!(f)?;
        }
        if let Some(u) = &self.unity {
            writeln!(f, "unity = {}", self.format_vector(u))?;
        }
        Ok(())
    }
}

impl Algebra {
    /// Coordinates written as a combination of basis labels.
    pub fn format_vector(&self, v: &[Rational]) -> String {
        use num_traits::Signed;
        let mut out = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            if !abs.is_one() {
                out.push_str(&crate::arith::format_rational(&abs));
                out.push('*');
            }
            out.push_str(&self.labels[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// An element tied to its algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<'a> {
    alg: &'a Algebra,
    coords: Vec<Rational>,
}

impl<'a> AlgebraElement<'a> {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    pub fn mul(&self, other: &AlgebraElement<'_>) -> Result<AlgebraElement<'a>> {
        if !std::ptr::eq(self.alg, other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(AlgebraElement {
            alg: self.alg,
            coords: self.alg.multiply(&self.coords, &other.coords),
        })
    }

    pub fn add(&self, other: &AlgebraElement<'_>) -> Result<AlgebraElement<'a>> {
        if !std::ptr::eq(self.alg, other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(AlgebraElement {
            alg: self.alg,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for AlgebraElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alg.format_vector(&self.coords))
    }
}
