//! Fraction-free (Bareiss) determinants over exact integral domains.

use num_traits::{One, Zero};

use super::rational::Rational;

/// An exact integral domain in which division by a known factor is exact.
pub trait ExactDomain: Clone {
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// `self / divisor`, where the caller guarantees the quotient exists.
    fn div_exact_elem(&self, divisor: &Self) -> Self;
}

impl ExactDomain for Rational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, divisor: &Self) -> Self {
        self / divisor
    }
}

impl ExactDomain for num_bigint::BigInt {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, divisor: &Self) -> Self {
        self / divisor
    }
}

/// Determinant of a square matrix given as rows, by single-step Bareiss
/// elimination. Every intermediate division is exact, so the result is exact
/// for any [`ExactDomain`]. `one` is returned for the 0x0 matrix.
///
/// Panics if the rows are not square.
pub fn ff_det<T: ExactDomain>(mut m: Vec<Vec<T>>, one: T) -> T {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "ff_det needs a square matrix");
    if n == 0 {
        return one;
    }
    let mut negate = false;
    let mut prev: Option<T> = None;
    for k in 0..n - 1 {
        if m[k][k].is_zero_elem() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero_elem()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return zero_like(&m[k][k]),
            }
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let mut v = pivot.mul_elem(&row[j]);
                if !lead.is_zero_elem() {
                    v = v.sub_elem(&lead.mul_elem(&pivot_row[j]));
                }
                if let Some(p) = &prev {
                    v = v.div_exact_elem(p);
                }
                row[j] = v;
            }
            row[k] = zero_like(&lead);
        }
        prev = Some(m[k][k].clone());
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg_elem()
    } else {
        d
    }
}

fn zero_like<T: ExactDomain>(x: &T) -> T {
    x.sub_elem(x)
}

/// Reference determinant by Laplace expansion along the first row.
/// Exponential; intended for small oracle checks.
pub fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = Rational::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * cofactor_det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, ratio};

    fn rows(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn identity_and_empty() {
        let id = rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(ff_det(id, rat(1)), rat(1));
        assert_eq!(ff_det(Vec::<Vec<Rational>>::new(), rat(1)), rat(1));
    }

    #[test]
    fn needs_pivoting() {
        let m = rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(ff_det(m, rat(1)), rat(-1));
        let m = rows(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]);
        assert_eq!(ff_det(m, rat(1)), rat(-6));
    }

    #[test]
    fn singular() {
        let m = rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(ff_det(m, rat(1)), rat(0));
    }

    #[test]
    fn matches_cofactor_on_fractions() {
        let m = vec![
            vec![ratio(1, 2), ratio(-3, 4), rat(2)],
            vec![rat(0), ratio(5, 3), ratio(-1, 7)],
            vec![rat(4), rat(1), ratio(2, 9)],
        ];
        assert_eq!(ff_det(m.clone(), rat(1)), cofactor_det(&m));
    }
}
