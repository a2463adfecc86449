//! Iterated Stieltjes integrals behind the power series of `U(x, λ)`.
//!
//! `φ₀ = 1`, `ψₖ = ∫ φₖ₋₁ dR₂`, `φₖ = ∫ ψₖ dR₁`, so that
//! `c₁ = Σ (−λ)ᵏ φₖ` and `c₂ = Σ (−λ)ᵏ ψₖ`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::PiecewisePoly;
use crate::system::IntegralSystem;

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCoefficients<F> {
    /// `φ₀(x), …, φₙ(x)`
    pub phi: Vec<F>,
    /// `ψ₀(x), …, ψₙ(x)` with `ψ₀ = 0`.
    pub psi: Vec<F>,
    pub order: usize,
}

impl<F: Field> SeriesCoefficients<F> {
    /// Taylor coefficients of `c₁(x, ·)`: `(−1)ᵏ φₖ`.
    pub fn c1_coefficients(&self) -> Vec<F> {
        alternate(&self.phi)
    }

    /// Taylor coefficients of `c₂(x, ·)`: `(−1)ᵏ ψₖ`.
    pub fn c2_coefficients(&self) -> Vec<F> {
        alternate(&self.psi)
    }
}

fn alternate<F: Field>(v: &[F]) -> Vec<F> {
    v.iter()
        .enumerate()
        .map(|(k, a)| if k % 2 == 0 { a.clone() } else { -a.clone() })
        .collect()
}

pub fn series_coefficients<F: Field>(system: &IntegralSystem, x: f64, order: usize) -> Result<SeriesCoefficients<F>> {
    if !(x >= 0.0 && x <= system.endpoint() && x.is_finite()) {
        return Err(Error::OutOfRange {
            x,
            limit: system.endpoint(),
        });
    }
    let mut phi = vec![F::one()];
    let mut psi = vec![F::zero()];
    if x == 0.0 {
        phi.resize(order + 1, F::zero());
        psi.resize(order + 1, F::zero());
        return Ok(SeriesCoefficients { phi, psi, order });
    }
    let mut current = PiecewisePoly::constant(F::one(), x).expect("x is positive");
    for _ in 0..order {
        let next_psi = system.r2().antiderivative(&current, x);
        current = system.r1().antiderivative(&next_psi, x);
        psi.push(next_psi.eval(x));
        phi.push(current.eval(x));
    }
    Ok(SeriesCoefficients { phi, psi, order })
}
