//! Fraction of correlated states on manifolds of isospectral density
//! matrices: exact witness parameters, Haar averages, concentration lower
//! bounds and a sharded Monte Carlo estimator.

mod asymptotics;
mod averages;
mod estimator;
mod params;
mod spectrum;

pub use asymptotics::{asymptotics, AsymptoticRow, Regime};
pub use averages::{haar_average_bilinear, haar_average_klinear, lipschitz_bound, optimal_average};
pub use estimator::{class_witness, mc_fraction, orbit_value, thread_count, wilson_half_width, EstimatorReport, MIN_SAMPLES};
pub use params::{class_params, critical_ratio, lower_bound, pmax_critical, ClassParams, WitnessFamily};
pub use spectrum::SpectrumProfile;
