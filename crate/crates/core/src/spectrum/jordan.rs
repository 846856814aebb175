use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::sampling::SamplerConfig;
use crate::arith::matrix::RatMatrix;
use crate::arith::rational::{rat, Rational};
use crate::error::{Error, Result};
use crate::functional::{AlphaValue, Functional, Subspace};

/// Ascending Jordan spaces `V_1(α) ⊆ V_2(α) ⊆ ...` of a functional. The list
/// stops at the first level equal to its predecessor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JordanFiltration {
    pub alpha: AlphaValue,
    pub levels: Vec<Subspace>,
    #[serde(with = "crate::arith::rational::serde_rational")]
    pub alpha0_used: Rational,
}

impl JordanFiltration {
    pub fn top(&self) -> &Subspace {
        self.levels.last().expect("at least one level")
    }

    /// `V_k`, with levels past the top equal to the top.
    pub fn level(&self, k: usize) -> Subspace {
        if k == 0 {
            return Subspace::zero(self.top().ambient());
        }
        self.levels[(k - 1).min(self.levels.len() - 1)].clone()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Subspace::dim).collect()
    }
}

const FIXED_ALPHA0: [i64; 6] = [0, 2, 3, 5, 7, -1];
const RANDOM_ALPHA0_TRIES: usize = 64;

/// `Gᵀ - α0·G`, the pencil at `α0`.
fn pencil_at(g: &RatMatrix, alpha0: &Rational) -> RatMatrix {
    &g.transpose() - &g.scale(alpha0)
}

/// Candidate `α0` values in search order, skipping `α` itself.
fn alpha0_candidates(alpha: &AlphaValue) -> impl Iterator<Item = Rational> + '_ {
    let mut rng = SamplerConfig::new(0x5eed, 0).rng();
    let random = (0..RANDOM_ALPHA0_TRIES).map(move |_| {
        let num: i64 = rng.gen_range(-1000..=1000);
        let den: i64 = rng.gen_range(1..=97);
        Rational::new(num.into(), den.into())
    });
    FIXED_ALPHA0
        .iter()
        .map(|&a| rat(a))
        .chain(random)
        .filter(move |a| !matches!(alpha, AlphaValue::Finite(x) if x == a))
}

/// First `α0` in search order at which the pencil is invertible.
pub fn regular_alpha0(f: &Functional<'_>, alpha: &AlphaValue) -> Result<Rational> {
    let g = f.gram();
    for a0 in alpha0_candidates(alpha) {
        if !pencil_at(&g, &a0).det()?.is_zero() {
            return Ok(a0);
        }
    }
    Err(Error::NoRegularAlpha0)
}

pub fn jordan_spaces(f: &Functional<'_>, alpha: &AlphaValue) -> Result<JordanFiltration> {
    let a0 = regular_alpha0(f, alpha)?;
    jordan_spaces_with_alpha0(f, alpha, &a0)
}

/// Jordan spaces as generalized eigenspaces of `(Gᵀ - α0 G)⁻¹ G` at
/// `θ = 1/(α - α0)` (`θ = 0` for `α = ∞`).
pub fn jordan_spaces_with_alpha0(f: &Functional<'_>, alpha: &AlphaValue, alpha0: &Rational) -> Result<JordanFiltration> {
    let theta = match alpha {
        AlphaValue::Infinity => Rational::zero(),
        AlphaValue::Finite(a) if a == alpha0 => {
            return Err(Error::InvalidArgument("alpha0 must differ from alpha".into()))
        }
        AlphaValue::Finite(a) => Rational::one() / (a - alpha0),
    };
    let g = f.gram();
    let n = g.rows();
    let p = pencil_at(&g, alpha0).inverse().map_err(|_| Error::NoRegularAlpha0)?;
    let m = &p * &g;
    let shifted = &m - &RatMatrix::identity(n).scale(&theta);
    let mut power = shifted.clone();
    let mut levels = vec![Subspace::kernel_of(&power)];
    loop {
        power = &power * &shifted;
        let next = Subspace::kernel_of(&power);
        if next.dim() == levels.last().expect("nonempty").dim() {
            break;
        }
        levels.push(next);
    }
    Ok(JordanFiltration {
        alpha: alpha.clone(),
        levels,
        alpha0_used: alpha0.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mat, nilpotent_pair, unital_extension, NilpotentData};
    use crate::arith::rational::ratio;
    use crate::functional::trace_pairing;

    /// `V_{k+1} = {b : (Gᵀ - αG) b ∈ (Gᵀ - α0 G) V_k}`, straight from the
    /// recursive definition.
    fn recursive_levels(f: &Functional<'_>, alpha: &AlphaValue, a0: &Rational, depth: usize) -> Vec<Subspace> {
        let g = f.gram();
        let n = g.rows();
        let lhs = match alpha {
            AlphaValue::Finite(a) => pencil_at(&g, a),
            AlphaValue::Infinity => g.clone(),
        };
        let rhs = pencil_at(&g, a0);
        let mut out = Vec::new();
        let mut prev = Subspace::zero(n);
        for _ in 0..depth {
            let target = prev.image(&rhs);
            let ann = target.annihilator();
            let next = if ann.is_zero() {
                Subspace::whole(n)
            } else {
                let a = RatMatrix::from_rows(ann.basis().to_vec()).unwrap();
                Subspace::kernel_of(&(&a * &lhs))
            };
            out.push(next.clone());
            prev = next;
        }
        out
    }

    #[test]
    fn diagonal_mat2() {
        let alg = mat(2).unwrap();
        let f = trace_pairing(&alg, &RatMatrix::from_i64(&[&[1, 0], &[0, 2]])).unwrap();
        let mut total = Vec::new();
        for a in [ratio(1, 2), rat(1), rat(2)] {
            let alpha = AlphaValue::Finite(a);
            let j = jordan_spaces(&f, &alpha).unwrap();
            assert_eq!(j.levels.len(), 1);
            assert_eq!(j.levels[0], f.stab(&alpha));
            total.extend(j.top().basis().iter().cloned());
        }
        assert_eq!(Subspace::span(total, 4), Subspace::whole(4));
    }

    fn jordan_example() -> Algebra {
        // B = [[0, B0], [B1, 0]] with B⁻¹Bᵀ not diagonalizable.
        let b = NilpotentData::scalar_i64(&[&[0, 0, 0, 1], &[0, 0, 1, -1], &[0, -1, 0, 0], &[-1, -1, 0, 0]]);
        unital_extension(&nilpotent_pair(&b).unwrap()).unwrap()
    }

    use crate::algebra::Algebra;

    #[test]
    fn nontrivial_chain() {
        let alg = jordan_example();
        let f = Functional::from_i64(&alg, &[3, 1, -2, 4, 5, 1]).unwrap();
        let j = jordan_spaces(&f, &AlphaValue::Finite(rat(-1))).unwrap();
        assert_eq!(j.dims(), vec![2, 4]);
        assert_eq!(j.levels[0], f.stab(&AlphaValue::Finite(rat(-1))));
    }

    #[test]
    fn matches_recursive_definition() {
        let alg = jordan_example();
        let f = Functional::from_i64(&alg, &[3, 1, -2, 4, 5, 1]).unwrap();
        for alpha in [AlphaValue::Finite(rat(-1)), AlphaValue::one(), AlphaValue::zero(), AlphaValue::Infinity] {
            let a0 = regular_alpha0(&f, &alpha).unwrap();
            let j = jordan_spaces_with_alpha0(&f, &alpha, &a0).unwrap();
            let rec = recursive_levels(&f, &alpha, &a0, j.levels.len() + 1);
            for (k, s) in rec.iter().enumerate() {
                assert_eq!(&j.level(k + 1), s, "alpha {alpha} level {}", k + 1);
            }
        }
    }

    #[test]
    fn alpha0_independence() {
        let alg = jordan_example();
        let f = Functional::from_i64(&alg, &[1, 2, -1, 3, 1, 2]).unwrap();
        let alpha = AlphaValue::Finite(rat(-1));
        let a = jordan_spaces_with_alpha0(&f, &alpha, &rat(3)).unwrap();
        let b = jordan_spaces_with_alpha0(&f, &alpha, &ratio(-7, 2)).unwrap();
        assert_eq!(a.levels, b.levels);
    }

    #[test]
    fn refuses_degenerate_pencil() {
        let alg = crate::algebra::type3_example();
        let f = Functional::from_i64(&alg, &[1, 2, 3, 4]).unwrap();
        assert_eq!(jordan_spaces(&f, &AlphaValue::one()).unwrap_err(), Error::NoRegularAlpha0);
    }
}
