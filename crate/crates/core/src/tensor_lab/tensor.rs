use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::identities::{factored_rhs, relative_error, CheckMode, IdentityReport};
use crate::algebra::{tensor_product, Algebra};
use crate::arith::rational::Rational;
use crate::arith::resultant::pencil_det;
use crate::error::{Error, Result};
use crate::functional::{AlphaValue, Functional, Subspace};
use crate::spectrum::{char_poly, jordan_spaces, spectrum, CheckResult, JordanFiltration};

/// `(F⊗G)(x⊗y) = F(x) G(y)` on an algebra built by `tensor_product(a, b)`.
pub fn tensor_functional<'t>(tensor: &'t Algebra, f: &Functional<'_>, g: &Functional<'_>) -> Result<Functional<'t>> {
    let (a, b) = (f.algebra(), g.algebra());
    let m = b.dim();
    if tensor.dim() != a.dim() * m {
        return Err(Error::AlgebraMismatch);
    }
    let labels_match = (0..tensor.dim()).all(|i| tensor.labels()[i] == format!("{}⊗{}", a.labels()[i / m], b.labels()[i % m]));
    if !labels_match {
        return Err(Error::AlgebraMismatch);
    }
    let coords = (0..tensor.dim())
        .map(|i| &f.coords()[i / m] * &g.coords()[i % m])
        .collect();
    Functional::new(tensor, coords)
}

/// Kronecker product of coordinate vectors, matching the tensor basis order.
pub fn tensor_vector(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    u.iter().flat_map(|x| v.iter().map(move |y| x * y)).collect()
}

/// χ of `F⊗G` computed twice exactly (on the tensor algebra, and as the
/// pencil of Kronecker products of the gram matrices), plus the factored
/// numeric form `det χ_F(λ G_G, μ G_Gᵀ)` when `χ_F ≠ 0`.
pub fn tensor_char_check(f: &Functional<'_>, g: &Functional<'_>, tolerance: f64) -> Result<IdentityReport> {
    let tensor = tensor_product(f.algebra(), g.algebra())?;
    let h = tensor_functional(&tensor, f, g)?;
    let direct = char_poly(&h, None)?;
    let (gf, gg) = (f.gram(), g.gram());
    let kron = pencil_det(&gf.kronecker(&gg), &gf.transpose().kronecker(&gg.transpose()))?;
    let exact_ok = direct == kron;
    let numeric = match factored_rhs(&gf, &gf.transpose(), &gg, &gg.transpose()) {
        Ok(rhs) => Some(relative_error(&direct, &rhs)),
        Err(Error::DegeneratePencil) => None,
        Err(e) => return Err(e),
    };
    let pass = exact_ok && numeric.is_none_or(|e| e <= tolerance);
    Ok(IdentityReport {
        identity_name: format!("χ(F⊗G) on {}⊗{}", f.algebra().dim(), g.algebra().dim()),
        instances_checked: 1,
        mode: if numeric.is_some() {
            CheckMode::Numeric { tolerance }
        } else {
            CheckMode::Exact
        },
        max_relative_error: numeric,
        pass,
        failing_instance: (!pass).then(|| {
            serde_json::json!({"f": f.to_label_map(), "g": g.to_label_map(), "exact_paths_agree": exact_ok})
        }),
        seed: None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorStabReport {
    pub checks: Vec<CheckResult>,
}

impl TensorStabReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Exact spectral values with a nonzero stabilizer; 0 and ∞ are always tried.
pub fn exact_spectral_values(f: &Functional<'_>) -> Vec<AlphaValue> {
    let mut values = vec![AlphaValue::zero(), AlphaValue::one(), AlphaValue::Infinity];
    if let Ok(r) = spectrum(f) {
        for v in r.exact_values() {
            if !values.contains(&v) {
                values.push(v);
            }
        }
    }
    values.retain(|a| !f.stab(a).is_zero());
    values
}

/// Jordan filtration, or just `V_1 = Stab` when the pencil is degenerate.
fn filtration(f: &Functional<'_>, alpha: &AlphaValue) -> Result<(JordanFiltration, bool)> {
    match jordan_spaces(f, alpha) {
        Ok(j) => Ok((j, true)),
        Err(Error::NoRegularAlpha0) => Ok((
            JordanFiltration {
                alpha: alpha.clone(),
                levels: vec![f.stab(alpha)],
                alpha0_used: Rational::zero(),
            },
            false,
        )),
        Err(e) => Err(e),
    }
}

fn tensor_inclusion(u: &Subspace, v: &Subspace, target: &Subspace) -> Option<String> {
    for x in u.basis() {
        for y in v.basis() {
            if !target.contains(&tensor_vector(x, y)) {
                return Some(format!("{:?} ⊗ {:?}", x.iter().map(ToString::to_string).collect::<Vec<_>>(), y.iter().map(ToString::to_string).collect::<Vec<_>>()));
            }
        }
    }
    None
}

/// Inclusions relating stabilizers and Jordan spaces of `F`, `G` and `F⊗G`:
/// `V_k(α)⊗V_m(β) ⊆ V_{k+m-1}(αβ)` for `k + m ≤ 4`, the two Nil inclusions
/// and the 0/∞ one-sided inclusions.
pub fn tensor_stab_suite(f: &Functional<'_>, g: &Functional<'_>) -> Result<TensorStabReport> {
    let (a, b) = (f.algebra(), g.algebra());
    let tensor = tensor_product(a, b)?;
    let h = tensor_functional(&tensor, f, g)?;
    let mut checks = Vec::new();

    let spec_f = exact_spectral_values(f);
    let spec_g = exact_spectral_values(g);
    let filt_f: Vec<_> = spec_f.iter().map(|x| filtration(f, x)).collect::<Result<_>>()?;
    let filt_g: Vec<_> = spec_g.iter().map(|x| filtration(g, x)).collect::<Result<_>>()?;
    for (alpha, (jf, _)) in spec_f.iter().zip(&filt_f) {
        for (beta, (jg, _)) in spec_g.iter().zip(&filt_g) {
            let Some(prod) = alpha.product(beta) else { continue };
            let (jh, regular) = filtration(&h, &prod)?;
            let max_sum = if regular { 4 } else { 2 };
            let mut failure = None;
            let mut tried = 0;
            for k in 1..max_sum {
                for m in 1..=(max_sum - k) {
                    tried += 1;
                    if let Some(w) = tensor_inclusion(&jf.level(k), &jg.level(m), &jh.level(k + m - 1)) {
                        failure.get_or_insert(format!("k={k}, m={m}: {w}"));
                    }
                }
            }
            checks.push(CheckResult::new(
                format!("V_k({alpha})⊗V_m({beta}) ⊆ V_(k+m-1)({prod})"),
                failure.is_none(),
                failure.unwrap_or_else(|| format!("{tried} level pairs")),
            ));
        }
    }

    let nil = h.nil();
    let pairs = [
        (f.stab(&AlphaValue::zero()), g.stab(&AlphaValue::Infinity)),
        (f.stab(&AlphaValue::Infinity), g.stab(&AlphaValue::zero())),
    ];
    let failure = pairs.iter().find_map(|(u, v)| tensor_inclusion(u, v, &nil));
    checks.push(CheckResult::new(
        "Stab_F(0)⊗Stab_G(inf) + Stab_F(inf)⊗Stab_G(0) ⊆ Nil",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("dim Nil = {}", nil.dim())),
    ));

    for alpha in [AlphaValue::zero(), AlphaValue::Infinity] {
        let target = h.stab(&alpha);
        let fa = f.stab(&alpha);
        let gb = g.stab(&alpha);
        let failure = tensor_inclusion(&fa, &Subspace::whole(b.dim()), &target)
            .or_else(|| tensor_inclusion(&Subspace::whole(a.dim()), &gb, &target));
        checks.push(CheckResult::new(
            format!("Stab_F({alpha})⊗B + A⊗Stab_G({alpha}) ⊆ Stab({alpha})"),
            failure.is_none(),
            failure.unwrap_or_else(|| format!("dim Stab({alpha}) = {}", target.dim())),
        ));
    }
    Ok(TensorStabReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mat, ut};

    #[test]
    fn functional_and_gram() {
        let (a, b) = (mat(2).unwrap(), ut(2).unwrap());
        let t = tensor_product(&a, &b).unwrap();
        let f = Functional::from_i64(&a, &[1, -2, 3, 5]).unwrap();
        let g = Functional::from_i64(&b, &[2, 7, -1]).unwrap();
        let h = tensor_functional(&t, &f, &g).unwrap();
        assert_eq!(h.gram(), f.gram().kronecker(&g.gram()));
        // unity ⊗ unity
        let one = tensor_vector(a.unity().unwrap(), b.unity().unwrap());
        assert_eq!(h.eval(&one), f.eval(a.unity().unwrap()) * g.eval(b.unity().unwrap()));
        assert!(tensor_functional(&t, &Functional::zero(&a), &g).unwrap().is_zero());
        assert!(h.stab(&AlphaValue::one()).contains(&one));
        assert_eq!(tensor_functional(&t, &g, &f).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn char_check() {
        let u = ut(2).unwrap();
        let f = Functional::from_i64(&u, &[3, 1, -2]).unwrap();
        let g = Functional::from_i64(&u, &[1, 4, 5]).unwrap();
        let r = tensor_char_check(&f, &g, 1e-6).unwrap();
        assert!(r.pass, "{r}");
        let a = mat(2).unwrap();
        let f = Functional::from_i64(&a, &[2, -1, 3, 1]).unwrap();
        assert!(tensor_char_check(&f, &g, 1e-6).unwrap().pass);
        let z = Functional::zero(&a);
        let r = tensor_char_check(&z, &g, 1e-6).unwrap();
        assert!(r.pass && r.max_relative_error.is_none());
    }

    #[test]
    fn stab_suite() {
        let (a, b) = (mat(2).unwrap(), ut(2).unwrap());
        let f = Functional::from_i64(&a, &[2, -1, 3, 1]).unwrap();
        let g = Functional::from_i64(&b, &[1, 4, 5]).unwrap();
        let r = tensor_stab_suite(&f, &g).unwrap();
        assert!(r.pass(), "{:?}", r.checks);
        let g2 = Functional::from_i64(&b, &[-3, 2, 7]).unwrap();
        let r = tensor_stab_suite(&g, &g2).unwrap();
        assert!(r.pass(), "{:?}", r.checks);
    }
}
