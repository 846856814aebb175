//! Characteristic polynomials, spectra, Jordan spaces, classification and
//! index of algebra/functional pairs.

pub mod charpoly;
pub mod classify;
pub mod jordan;
pub mod report;
pub mod sampling;

pub use charpoly::{char_poly, char_poly_symbolic, pencil_poly, restricted_gram, specialize, symbolic_vars, SYMBOLIC_ENVELOPE};
pub use classify::{
    classify, constant_spectrum, find_regular, index, quotient_by_nil, regularity_corollary_suite, CheckResult,
    ClassificationReport, CorollaryReport, RegularWitness, Verdict,
};
pub use jordan::{jordan_spaces, jordan_spaces_with_alpha0, regular_alpha0, JordanFiltration};
pub use report::{numeric_stab_dim, spectrum, SpectralValue, SpectrumEntry, SpectrumReport};
pub use sampling::{agree_on_grid, par_map, random_vector, SamplerConfig, DEFAULT_SAMPLES, IDENTITY_SAMPLES};
