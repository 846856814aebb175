//! Kronecker products, tensor products of pairs, and index experiments.

pub mod experiments;
pub mod identities;
pub mod tensor;

pub use experiments::{
    conjecture_probe, mat_tensor_index_experiment, root_multiplicity, ConjectureReport, MatTensorIndexReport,
    ResonanceTerm,
};
pub use identities::{
    det_kronecker_check, extended_cayley_check, extended_cayley_error, factored_rhs, kronecker, kronecker_swap_check,
    kronecker_swap_matrix, random_cayley_instances, random_int_matrix, CayleyInstance, CheckMode, IdentityReport,
};
pub use tensor::{
    exact_spectral_values, tensor_char_check, tensor_functional, tensor_stab_suite, tensor_vector, TensorStabReport,
};
