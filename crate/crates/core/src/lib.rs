//! Fundamental solutions, Weyl discs and Titchmarsh–Weyl coefficients of
//! two-dimensional integral systems driven by a pair of Stieltjes measures.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod duality;
pub mod error;
pub mod field;
pub mod measure;
pub mod poly;
pub mod propagator;
pub mod quadrature;
pub mod system;
pub mod weyl;

pub use num_complex::Complex64 as C64;

pub use error::{Error, MeasureDefect, Result};
pub use field::Field;
pub use measure::{Atom, L2Integrand, L2Norm, Segment, StieltjesMeasure};
pub use poly::{PiecewisePoly, Poly};
pub use system::{Admission, Classification, EndpointType, IntegralSystem, Regularity, Step, Witnesses};
pub use weyl::{
    m_coefficient, neumann_asymptotics, neumann_m, principal_q, weyl_disc, AsymptoticProbe, BoundaryParam,
    QEnclosure, QOptions, Regime, WeylDisc,
};
pub use duality::{check_duality_identity, check_fundamental_conjugation, DualityReport};
