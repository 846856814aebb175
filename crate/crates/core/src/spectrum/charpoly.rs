use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::Algebra;
use crate::arith::bivariate::{lambda_mu_vars, BivariatePoly};
use crate::arith::matrix::RatMatrix;
use crate::arith::multipoly::{poly_det, Monomial, MultivariatePoly};
use crate::arith::resultant::pencil_det;
use crate::arith::univariate::UnivariatePoly;
use crate::error::{Error, Result};
use crate::functional::{restrict_form, Functional, Subspace};

/// Largest subspace dimension for which a fully symbolic determinant is
/// attempted.
pub const SYMBOLIC_ENVELOPE: usize = 9;

/// Gram matrix restricted to `v` (or the whole algebra).
pub fn restricted_gram(f: &Functional<'_>, v: Option<&Subspace>) -> Result<RatMatrix> {
    let g = f.gram();
    match v {
        None => Ok(g),
        Some(s) => restrict_form(&g, s, s),
    }
}

/// `det(λ M + μ Mᵀ)` with `M` the gram matrix of `f` on `v`. The raw
/// determinant in the given basis is returned; it is defined up to a scalar
/// by the choice of basis, so comparisons use [`BivariatePoly::proportional`].
pub fn char_poly(f: &Functional<'_>, v: Option<&Subspace>) -> Result<BivariatePoly> {
    let m = restricted_gram(f, v)?;
    pencil_det(&m, &m.transpose())
}

/// `p(x) = χ(x, -1)`.
pub fn pencil_poly(f: &Functional<'_>, v: Option<&Subspace>) -> Result<UnivariatePoly> {
    Ok(char_poly(f, v)?.pencil_poly())
}

/// Variables of the symbolic characteristic polynomial: λ, μ, then one per
/// basis label.
pub fn symbolic_vars(alg: &Algebra) -> Vec<String> {
    let mut v = lambda_mu_vars();
    v.extend(alg.labels().iter().cloned());
    v
}

/// χ as a polynomial in λ, μ and the values of `F` on the basis.
pub fn char_poly_symbolic(alg: &Algebra, v: Option<&Subspace>) -> Result<MultivariatePoly> {
    let n = alg.dim();
    let size = v.map_or(n, Subspace::dim);
    if size > SYMBOLIC_ENVELOPE {
        return Err(Error::EnvelopeExceeded {
            size,
            limit: SYMBOLIC_ENVELOPE,
        });
    }
    let vars = Arc::new(symbolic_vars(alg));
    let nv = vars.len();
    // Symbolic gram entries, linear in the functional's coordinates.
    let linear = |coeffs: &[crate::arith::Rational]| {
        let mut p = MultivariatePoly::with_vars(vars.clone());
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u32; nv];
                e[2 + k] = 1;
                p.add_term(Monomial(e), c.clone());
            }
        }
        p
    };
    let basis: Vec<Vec<crate::arith::Rational>> = match v {
        Some(s) => s.basis().to_vec(),
        None => (0..n).map(|i| alg.basis_vector(i)).collect(),
    };
    // M[a][b] as a coefficient vector over the basis labels.
    let m: Vec<Vec<Vec<crate::arith::Rational>>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| alg.multiply(x, y)).collect())
        .collect();
    let lam = {
        let mut e = vec![0u32; nv];
        e[0] = 1;
        Monomial(e)
    };
    let mu = {
        let mut e = vec![0u32; nv];
        e[1] = 1;
        Monomial(e)
    };
    let scaled = |p: &MultivariatePoly, var: &Monomial| {
        let mut mono = MultivariatePoly::with_vars(vars.clone());
        mono.add_term(var.clone(), num_traits::One::one());
        p.mul(&mono)
    };
    let rows: Vec<Vec<MultivariatePoly>> = (0..size)
        .map(|a| {
            (0..size)
                .map(|b| scaled(&linear(&m[a][b]), &lam).add(&scaled(&linear(&m[b][a]), &mu)))
                .collect()
        })
        .collect();
    Ok(poly_det(rows, &vars))
}

/// Substitute the functional's values into a symbolic χ, leaving λ and μ.
pub fn specialize(symbolic: &MultivariatePoly, coords: &[crate::arith::Rational], degree: usize) -> Result<BivariatePoly> {
    let k = coords.len();
    let idx: Vec<usize> = (2..2 + k).collect();
    let p = symbolic.partial_eval(&idx, coords).project_vars(&[0, 1]);
    BivariatePoly::from_multivariate(&p, degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mat, seaweed, ut};
    use crate::arith::rational::rat;
    use crate::functional::trace_pairing;

    fn named(alg: &Algebra) -> Algebra {
        alg.with_letters()
    }

    /// Evaluate a textual formula over λ, μ and letters.
    fn formula(text: &str, alg: &Algebra) -> MultivariatePoly {
        MultivariatePoly::parse(text, &symbolic_vars(alg)).unwrap()
    }

    fn vars_poly(alg: &Algebra) -> impl Fn(&str) -> MultivariatePoly + '_ {
        move |name: &str| {
            let vars = symbolic_vars(alg);
            let i = vars.iter().position(|v| v == name).unwrap();
            MultivariatePoly::var(&vars, i, rat(1))
        }
    }

    #[test]
    fn mat2_symbolic() {
        let alg = named(&mat(2).unwrap());
        let x = vars_poly(&alg);
        let (l, m, a, b, c, d) = (x("λ"), x("μ"), x("a"), x("b"), x("c"), x("d"));
        let det = a.mul(&d).sub(&b.mul(&c));
        let lpm = l.add(&m);
        let expect = lpm
            .pow(2)
            .mul(&det)
            .mul(&l.sub(&m).pow(2).mul(&det).add(&l.mul(&m).mul(&a.add(&d).pow(2))))
            .neg();
        let got = char_poly_symbolic(&alg, None).unwrap();
        assert!(got.proportional(&expect));
        assert_eq!(got, expect);
    }

    #[test]
    fn seaweed_and_ut2_symbolic() {
        let alg = named(&seaweed(&[1, 2], &[2, 1]).unwrap());
        let got = char_poly_symbolic(&alg, None).unwrap();
        let x = vars_poly(&alg);
        let expect = x("λ")
            .pow(2)
            .mul(&x("μ").pow(2))
            .mul(&x("λ").add(&x("μ")))
            .mul(&x("b").pow(2))
            .mul(&x("d").pow(2))
            .mul(&x("a").add(&x("c")).add(&x("e")));
        assert!(got.proportional(&expect));

        let alg = named(&ut(2).unwrap());
        let got = char_poly_symbolic(&alg, None).unwrap();
        assert!(got.proportional(&formula("λ^2*μ*a*b^2 + λ^2*μ*b^2*c + λ*μ^2*a*b^2 + λ*μ^2*b^2*c", &alg)));
    }

    #[test]
    fn fixed_functional_matches_specialization() {
        let alg = ut(2).unwrap();
        let f = Functional::from_i64(&alg, &[1, 1, 1]).unwrap();
        let chi = char_poly(&f, None).unwrap();
        // -λμ(λ+μ)·2
        let expect = BivariatePoly::linear(rat(1), rat(0))
            .mul(&BivariatePoly::linear(rat(0), rat(1)))
            .mul(&BivariatePoly::linear(rat(1), rat(1)))
            .scale(&rat(-2));
        assert_eq!(chi, expect);
        let sym = char_poly_symbolic(&alg, None).unwrap();
        assert_eq!(specialize(&sym, f.coords(), 3).unwrap(), chi);
        assert!(char_poly(&Functional::zero(&alg), None).unwrap().is_zero());
    }

    #[test]
    fn mat2_diag_pencil_roots() {
        let alg = mat(2).unwrap();
        let fhat = RatMatrix::from_i64(&[&[1, 0], &[0, 2]]);
        let f = trace_pairing(&alg, &fhat).unwrap();
        let p = pencil_poly(&f, None).unwrap();
        let roots = crate::arith::uni_roots(&p).unwrap();
        let exact: Vec<_> = roots.iter().map(|(r, m)| (r.as_exact().unwrap().clone(), *m)).collect();
        assert_eq!(
            exact,
            vec![(crate::arith::ratio(1, 2), 1), (rat(1), 2), (rat(2), 1)]
        );
    }

    #[test]
    fn envelope() {
        let alg = mat(4).unwrap();
        assert_eq!(
            char_poly_symbolic(&alg, None).unwrap_err(),
            Error::EnvelopeExceeded { size: 16, limit: 9 }
        );
    }
}
