//! Dense complex linear algebra for small multipartite Hilbert spaces.
//!
//! Operators are stored as `nalgebra` matrices together with the list of
//! tensor-factor dimensions. Factor 0 is the most significant digit of a
//! basis index (row-major Kronecker convention).

mod dense;
mod haar;
mod json;
mod map;
mod perm;

pub use dense::{herm_eig, kron, kron_all, partial_trace, partial_transpose, DenseOperator, Eigen, StateVector};
pub use haar::{
    haar_unitary, haar_unitary_rng, random_density, random_state, seeded_rng, stream_rng, QRng,
};
pub use json::{OperatorJson, VectorJson};
pub use map::{majorana_action, LinearMap, MapKind, PermTerm};
pub use perm::{
    all_permutations, compose, invert, perm_sign, permute_vector, permuted_index, sym_basis, symmetrizer_ops,
    SymSpec,
};

pub use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64 as C64;

/// Largest dimension that may be materialized as a dense matrix.
pub const DENSE_THRESHOLD: usize = 4096;

/// Tolerance used for Hermiticity and normalization flags.
pub const FLAG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("size limit exceeded: {0}")]
    Size(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for failures of numerical contracts (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Contract(_) | Error::Numerical(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Product of a sequence of dimensions, checked against overflow.
pub fn dim_product(dims: &[usize]) -> Result<usize> {
    dims.iter().try_fold(1usize, |acc, &d| {
        if d == 0 {
            return Err(Error::Domain("factor dimension must be positive".into()));
        }
        acc.checked_mul(d)
            .ok_or_else(|| Error::Size("dimension overflows usize".into()))
    })
}
