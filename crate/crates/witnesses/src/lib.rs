//! Correlation witnesses built from class operators.
//!
//! A bilinear witness `V = A - c P^asym` satisfies `tr((rho (x) sigma) V) <= 0`
//! whenever `rho` is a mixture of class members, whatever `sigma` is; a
//! positive value certifies that both states carry correlations outside the
//! class. The `k`-linear version replaces `c P^asym` by
//! `(k-1)(I - P^{sym,k})`. The `cones` module describes all two-copy
//! witnesses that are invariant under the class symmetry group.

pub mod cones;
mod constants;
mod ppt;
mod witness;

pub use cones::{
    basis_labels, cone_dimension, extreme_rays, gauss_inequality_matrix, inclusion_exclusion, inequality_matrix,
    invariant_basis, optimal_detect, rational_inverse, subset_sums, ConeElement,
};
pub use constants::{
    bilinear_constant, gauss_constant, gauss_constant_numeric, gauss_pair_overlap, MAX_GAUSS_CONSTANT_MODES,
};
pub use ppt::{ppt_entangled, ppt_min_eigenvalue};
pub use witness::{
    bilinear_witness, detect2, detect_k, multilinear_witness, soundness_certificate, sym_overlap, Witness,
    DENSE_WITNESS_LIMIT, DETECTION_THRESHOLD,
};
