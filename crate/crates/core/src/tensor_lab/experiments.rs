use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{mat, tensor_product, Algebra};
use crate::arith::rational::Rational;
use crate::arith::univariate::UnivariatePoly;
use crate::error::{Error, Result};
use crate::functional::AlphaValue;
use crate::spectrum::{char_poly, classify, constant_spectrum, find_regular, index, RegularWitness, SamplerConfig, Verdict};

/// Largest product dimension for which the exact χ of the witness is formed.
pub const PRECISION_ENVELOPE: usize = 36;

/// Order of vanishing of `p` at `r`.
pub fn root_multiplicity(p: &UnivariatePoly, r: &Rational) -> usize {
    let lin = UnivariatePoly::linear_root(r);
    let mut q = p.clone();
    let mut k = 0;
    while !q.is_zero() && q.eval(r).is_zero() {
        q = q.div_exact(&lin).expect("exact division by a root factor");
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatTensorIndexReport {
    pub n: usize,
    pub factor_dim: usize,
    pub factor_unital: bool,
    pub factor_index: usize,
    pub product_index: usize,
    pub expected: usize,
    pub pass: bool,
    /// Whether `dim Stab(1)` at the witness equals the multiplicity of 1 in
    /// its pencil; absent above the exact-χ envelope.
    pub witness_one_precise: Option<bool>,
    pub witness: RegularWitness,
    pub warnings: Vec<String>,
}

/// Index of `mat(n)⊗B` against `n · ind B`.
pub fn mat_tensor_index_experiment(n: usize, b: &Algebra, cfg: &SamplerConfig) -> Result<MatTensorIndexReport> {
    let product = tensor_product(&mat(n)?, b)?;
    let factor = index(b, cfg)?;
    let witness = index(&product, cfg)?;
    let mut warnings = Vec::new();
    if b.unity().is_none() {
        warnings.push("factor algebra has no unity".to_string());
    }
    if factor.dim != 1 {
        warnings.push(format!("factor algebra has index {}, not 1", factor.dim));
    }
    let witness_one_precise = if product.dim() <= PRECISION_ENVELOPE {
        let f = witness.functional(&product);
        let p = char_poly(&f, None)?.pencil_poly();
        Some(!p.is_zero() && root_multiplicity(&p, &Rational::one()) == witness.dim)
    } else {
        None
    };
    let expected = n * factor.dim;
    Ok(MatTensorIndexReport {
        n,
        factor_dim: b.dim(),
        factor_unital: b.unity().is_some(),
        factor_index: factor.dim,
        product_index: witness.dim,
        expected,
        pass: witness.dim == expected,
        witness_one_precise,
        witness,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonanceTerm {
    pub alpha: AlphaValue,
    pub dim_a: usize,
    pub dim_b_inverse: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub index_product: usize,
    pub index_a: usize,
    pub index_b: usize,
    pub product_of_indices: usize,
    pub resonance: Vec<ResonanceTerm>,
    pub resonance_sum: usize,
    pub hypothesis: String,
    pub hypothesis_consistent: bool,
    pub seed: u64,
    pub samples: usize,
}

/// Constant spectral values other than 1 at which `Stab` is nonzero at an
/// α-regular functional, with that minimal dimension.
fn constant_values(alg: &Algebra, cfg: &SamplerConfig) -> Result<Vec<(AlphaValue, usize)>> {
    let mut candidates = vec![AlphaValue::zero(), AlphaValue::Infinity];
    candidates.extend(
        constant_spectrum(alg, cfg)?
            .into_iter()
            .filter(|r| !r.is_one())
            .map(AlphaValue::Finite),
    );
    let mut out = Vec::new();
    for alpha in candidates {
        let w = find_regular(alg, &alpha, cfg)?;
        if w.dim > 0 {
            out.push((alpha, w.dim));
        }
    }
    Ok(out)
}

/// Index of `A⊗B` next to `ind A · ind B` and the resonance sum
/// `Σ dim Stab_F(α) · dim Stab_G(1/α)` over constant values `α ≠ 1` shared
/// by both spectra. Nothing is asserted; the additive formula is reported as
/// a hypothesis together with whether these numbers are consistent with it.
pub fn conjecture_probe(a: &Algebra, b: &Algebra, cfg: &SamplerConfig) -> Result<ConjectureReport> {
    for (name, alg) in [("first", a), ("second", b)] {
        let c = classify(alg, cfg)?;
        if c.verdict != Verdict::Type1 {
            return Err(Error::NotType1(format!("{name} factor classifies as {}", c.verdict)));
        }
    }
    let ia = index(a, cfg)?.dim;
    let ib = index(b, cfg)?.dim;
    let iab = index(&tensor_product(a, b)?, cfg)?.dim;
    let va = constant_values(a, cfg)?;
    let vb = constant_values(b, cfg)?;
    let mut resonance = Vec::new();
    for (alpha, dim_a) in &va {
        if !vb.iter().any(|(beta, _)| beta == alpha) {
            continue;
        }
        let inv = alpha.inverse();
        let dim_b_inverse = find_regular(b, &inv, cfg)?.dim;
        resonance.push(ResonanceTerm {
            alpha: alpha.clone(),
            dim_a: *dim_a,
            dim_b_inverse,
        });
    }
    let resonance_sum = resonance.iter().map(|t| t.dim_a * t.dim_b_inverse).sum();
    Ok(ConjectureReport {
        index_product: iab,
        index_a: ia,
        index_b: ib,
        product_of_indices: ia * ib,
        resonance,
        resonance_sum,
        hypothesis: "unverified hypothesis: ind(A⊗B) = ind A · ind B + resonance sum".into(),
        hypothesis_consistent: iab == ia * ib + resonance_sum,
        seed: cfg.seed,
        samples: cfg.samples,
    })
}
