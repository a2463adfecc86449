//! The dual system `S[R₂, R₁]` and the identity `λ q̂(λ) = −1/q(λ)`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::propagator::{fundamental_matrix, fundamental_matrix_right, monodromy_polynomial, FundamentalMatrix};
use crate::system::IntegralSystem;
use crate::weyl::{principal_q, QEnclosure, QOptions};
use crate::C64;

/// `D(λ)⁻¹ U D(λ)` with `D(λ) = [[0, −1/λ], [1, 0]]`, i.e.
/// `[[s₂, −c₂/λ], [−λ s₁, c₁]]`.
pub fn conjugate_by_d(u: &FundamentalMatrix, lambda: C64) -> FundamentalMatrix {
    FundamentalMatrix::new(u.s2, -u.c2 / lambda, -lambda * u.s1, u.c1)
}

/// Largest entry of `Û(x, λ) − D⁻¹U(x, λ)D`, relative to the entry size,
/// where `Û` is propagated through the swapped measures.
pub fn check_fundamental_conjugation(system: &IntegralSystem, x: f64, lambda: C64) -> Result<f64> {
    if lambda.is_zero() {
        return Err(Error::ExcludedPoint(lambda));
    }
    let u = fundamental_matrix(system, x, lambda)?;
    let swapped = system.swapped();
    let hat = fundamental_matrix(&swapped, x, lambda)?;
    let expected = conjugate_by_d(&u, lambda);
    let scale = 1f64.max(expected.max_abs()).max(hat.max_abs());
    Ok((hat - expected).max_abs() / scale)
}

/// Polynomial-mode version: the largest coefficient of the difference, zero
/// exactly when the identity holds exactly.
pub fn check_fundamental_conjugation_exact<F: Field>(system: &IntegralSystem, x: f64) -> Result<f64> {
    let u = monodromy_polynomial::<F>(system, x)?;
    let hat = monodromy_polynomial::<F>(&system.swapped(), x)?;
    // −c₂/λ: drop the constant term (zero when c₂(0) = 0) and shift down
    let c2_over_lambda = Poly::from_coeffs(u.c2.coeffs().iter().skip(1).cloned().collect::<Vec<_>>());
    let lambda = Poly::linear(F::zero(), F::one());
    let diffs = [
        &hat.c1 - &u.s2,
        &hat.s1 + &c2_over_lambda,
        &hat.c2 + &(&lambda * &u.s1),
        &hat.s2 - &u.c1,
        Poly::constant(u.c2.coeff(0)),
    ];
    Ok(diffs
        .iter()
        .flat_map(|p| p.coeffs().iter().map(|c| c.to_real().abs()))
        .fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualityReport {
    pub lambda: C64,
    pub q: QEnclosure,
    pub q_dual: QEnclosure,
    /// `|q̂ + 1/(λq)|`
    pub identity_residual: f64,
    pub conjugation_residual: f64,
    /// `|q̂ + c₁(b)/(λ s₁(b))|` for regular systems.
    pub regular_branch_residual: Option<f64>,
    /// Propagated enclosure: `r̂ + r/(|λ||q|(|q| − r))`.
    pub bound: f64,
}

impl DualityReport {
    pub fn passes(&self, tol: f64) -> bool {
        let radii = 2.0 * (self.q.error_radius + self.q_dual.error_radius);
        let allowed = radii.max(self.bound) + tol;
        self.identity_residual <= allowed && self.regular_branch_residual.is_none_or(|r| r <= allowed)
    }
}

/// Computes `q` and `q̂` independently, each in its own regime, and compares.
pub fn check_duality_identity(system: &IntegralSystem, lambda: C64, opts: QOptions) -> Result<DualityReport> {
    if lambda.is_zero() {
        return Err(Error::ExcludedPoint(lambda));
    }
    let q = principal_q(system, lambda, opts)?;
    let dual = system.dual()?;
    let q_dual = principal_q(&dual, lambda, opts)?;
    let predicted = -1.0 / (lambda * q.value);
    let identity_residual = (q_dual.value - predicted).norm();

    let (r, qa) = (q.error_radius, q.value.norm());
    let bound = if r < qa {
        q_dual.error_radius + r / (lambda.norm() * qa * (qa - r))
    } else {
        f64::INFINITY
    };

    let x = if system.endpoint().is_finite() {
        system.endpoint()
    } else {
        system.b_rep() + 1.0
    };
    let conjugation_residual = check_fundamental_conjugation(system, x, lambda)?;

    let regular_branch_residual = if system.is_regular() {
        let u = fundamental_matrix_right(system, system.closing_point(), lambda)?;
        Some((q_dual.value + u.c1 / (lambda * u.s1)).norm())
    } else {
        None
    };

    Ok(DualityReport {
        lambda,
        q,
        q_dual,
        identity_residual,
        conjugation_residual,
        regular_branch_residual,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::StieltjesMeasure;
    use num_rational::BigRational;

    #[test]
    fn conjugation_on_one_atom_string() {
        let s = IntegralSystem::admit(StieltjesMeasure::lebesgue(), StieltjesMeasure::point(0.0, 1.5).unwrap())
            .unwrap();
        assert_eq!(check_fundamental_conjugation(&s, 0.0, C64::new(1.0, 0.0)), Ok(0.0));
        assert!(check_fundamental_conjugation(&s, 2.0, C64::new(1.0, 1.0)).unwrap() < 1e-12);
    }

    #[test]
    fn conjugation_is_exact_for_cells() {
        let r1 = StieltjesMeasure::from_parts(&[(0.5, 0.75), (1.5, 2.0)], &[], 0.0, None).unwrap();
        let r2 = StieltjesMeasure::from_parts(&[(0.0, 1.25), (1.0, 0.5)], &[], 0.0, None).unwrap();
        let s = IntegralSystem::validate(r1, r2).unwrap();
        assert_eq!(check_fundamental_conjugation_exact::<BigRational>(&s, 2.0), Ok(0.0));
    }

    #[test]
    fn one_atom_string_dual() {
        let m0 = 2.0;
        let s = IntegralSystem::admit(StieltjesMeasure::lebesgue(), StieltjesMeasure::point(0.0, m0).unwrap())
            .unwrap();
        for lambda in [C64::new(0.0, 1.0), C64::new(-2.0, 0.0)] {
            let r = check_duality_identity(&s, lambda, QOptions::default()).unwrap();
            assert!((r.q_dual.value - m0).norm() <= r.q_dual.error_radius + 1e-8);
            assert!(r.passes(1e-8), "{r:?}");
        }
    }

    #[test]
    fn regular_system_branch() {
        let d = StieltjesMeasure::from_parts(&[(0.25, 0.5)], &[(0.0, 1.0, 1.0)], 0.0, None).unwrap();
        let e = StieltjesMeasure::from_parts(&[(0.75, 1.0)], &[(0.0, 1.0, 2.0)], 0.0, None).unwrap();
        let s = IntegralSystem::validate(d, e).unwrap();
        let r = check_duality_identity(&s, C64::new(1.0, 1.0), QOptions::default()).unwrap();
        assert!(r.regular_branch_residual.unwrap() < 1e-12);
        assert!(r.passes(1e-8), "{r:?}");
    }
}
