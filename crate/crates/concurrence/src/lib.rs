//! Concurrences built from antiunitary conjugations, and the resulting
//! decision procedure for convex combinations of pure Gaussian states on
//! four fermionic modes.

mod four_mode;
mod threshold;
mod uhlmann;

pub use four_mode::{
    a8_depolarized, convex_gaussian, gauss_concurrences, gauss_fidelity, generalized_schmidt, schmidt_family,
    theta_plus, ConvexGaussianReport, FidelityReport, GeneralizedSchmidt, MAX_DECOMPOSITION_TERMS,
};
pub use threshold::{threshold_solver, BISECTION_TOL};
pub use uhlmann::{
    concurrence_from_pair, sigma_y_pair, uw_concurrence, werner, wootters_2q, ConjugationSpec, IMAG_FAILURE,
};
