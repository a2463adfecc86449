//! The fundamental matrix of the integral system: closed-form factors,
//! overflow-safe propagation, exact polynomial and series modes, and checks
//! of the structural identities.

mod fundamental;
mod identities;
mod integrals;
mod monodromy;
mod series;
mod transfer;

pub use fundamental::{
    fundamental_matrix, fundamental_matrix_right, fundamental_matrix_scaled, FundamentalMatrix, Propagator,
    ScaledMatrix, StateVector,
};
pub use identities::{check_green, check_kernel_identity, check_wronskian, GreenReport, KernelReport, WronskianReport};
pub use integrals::{integrate_solutions, Against, Estimate};
pub use monodromy::{monodromy_polynomial, PolyMatrix};
pub use series::{series_coefficients, SeriesCoefficients};
pub use transfer::{
    atom_factor_r1, atom_factor_r2, segment_factor, segment_factor_with_root, SCALE_THRESHOLD, SMALL_ARGUMENT,
};
