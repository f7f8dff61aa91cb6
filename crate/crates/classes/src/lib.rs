//! Operators `A` on `k` copies of a Hilbert space whose expectation on
//! `psi^{(x)k}` vanishes exactly when `psi` belongs to a chosen class of
//! non-correlated pure states: product states, bosonic product states,
//! Slater determinants, fermionic Gaussian states, states of bounded Schmidt
//! rank and tripartite biseparable states.

mod carrier;
pub mod gaussian;
pub mod gme;
mod invariants;
mod members;
mod operators;
mod schmidt;
mod spec;

pub use carrier::ParticleCarrier;
pub use gaussian::{gauss_coefficient, gaussian_class_matrix, gaussian_null_oracle, gaussian_p0, lambda_operator};
pub use invariants::{particle_purities, physical_invariant, pure_invariant};
pub use members::{random_carrier_state, random_member};
pub use operators::{class_operator, class_operator2, class_operator_k, coherent_rank, tensor_power, ClassOperator};
pub use schmidt::{elementary_symmetric, schmidt_decompose, schmidt_operator, SchmidtDecomposition};
pub use spec::{ClassSpec, Sector};
