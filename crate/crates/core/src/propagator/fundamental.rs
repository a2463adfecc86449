//! The fundamental matrix `U(x, λ)` and its propagation.

use core::ops::{Mul, Sub};

use libm::{exp, log};
use num_traits::Zero;

use super::transfer::{step_factor, step_factor_scaled};
use crate::error::{Error, Result};
use crate::system::IntegralSystem;
use crate::C64;

/// `[[c1, s1], [c2, s2]]`: the columns are the solutions started at
/// `(1, 0)ᵀ` and `(0, 1)ᵀ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalMatrix {
    pub c1: C64,
    pub s1: C64,
    pub c2: C64,
    pub s2: C64,
}

/// A solution value `(u₁, u₂)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector {
    pub u1: C64,
    pub u2: C64,
}

impl FundamentalMatrix {
    pub fn new(c1: C64, s1: C64, c2: C64, s2: C64) -> Self {
        FundamentalMatrix { c1, s1, c2, s2 }
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        FundamentalMatrix::new(one, C64::zero(), C64::zero(), one)
    }

    pub fn det(&self) -> C64 {
        self.c1 * self.s2 - self.c2 * self.s1
    }

    /// `|det − 1|` relative to the size of the two products.
    pub fn det_residual(&self) -> f64 {
        let scale = 1f64.max((self.c1 * self.s2).norm()).max((self.c2 * self.s1).norm());
        (self.det() - 1.0).norm() / scale
    }

    pub fn apply(&self, v: StateVector) -> StateVector {
        StateVector {
            u1: self.c1 * v.u1 + self.s1 * v.u2,
            u2: self.c2 * v.u1 + self.s2 * v.u2,
        }
    }

    pub fn scale(&self, k: C64) -> Self {
        FundamentalMatrix::new(self.c1 * k, self.s1 * k, self.c2 * k, self.s2 * k)
    }

    pub fn max_abs(&self) -> f64 {
        self.c1
            .norm()
            .max(self.s1.norm())
            .max(self.c2.norm())
            .max(self.s2.norm())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        FundamentalMatrix::new(self.c1.conj(), self.c2.conj(), self.s1.conj(), self.s2.conj())
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.c1, self.s1, self.c2, self.s2]
    }

    pub fn c(&self) -> StateVector {
        StateVector {
            u1: self.c1,
            u2: self.c2,
        }
    }

    pub fn s(&self) -> StateVector {
        StateVector {
            u1: self.s1,
            u2: self.s2,
        }
    }
}

impl Mul for FundamentalMatrix {
    type Output = FundamentalMatrix;
    fn mul(self, r: FundamentalMatrix) -> FundamentalMatrix {
        FundamentalMatrix::new(
            self.c1 * r.c1 + self.s1 * r.c2,
            self.c1 * r.s1 + self.s1 * r.s2,
            self.c2 * r.c1 + self.s2 * r.c2,
            self.c2 * r.s1 + self.s2 * r.s2,
        )
    }
}

impl Sub for FundamentalMatrix {
    type Output = FundamentalMatrix;
    fn sub(self, r: FundamentalMatrix) -> FundamentalMatrix {
        FundamentalMatrix::new(self.c1 - r.c1, self.s1 - r.s1, self.c2 - r.c2, self.s2 - r.s2)
    }
}

/// `e^{log_scale} · matrix`, for values that would overflow a double.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledMatrix {
    pub matrix: FundamentalMatrix,
    pub log_scale: f64,
}

impl ScaledMatrix {
    pub fn identity() -> Self {
        ScaledMatrix {
            matrix: FundamentalMatrix::identity(),
            log_scale: 0.0,
        }
    }

    /// Left-multiplies by `e^{shift} · factor` and renormalizes.
    pub fn push(&mut self, factor: &FundamentalMatrix, shift: f64) {
        self.matrix = *factor * self.matrix;
        self.log_scale += shift;
        let m = self.matrix.max_abs();
        if m > 0.0 && m.is_finite() && !(1e-8..=1e8).contains(&m) {
            self.matrix = self.matrix.scale(C64::new(1.0 / m, 0.0));
            self.log_scale += log(m);
        }
    }

    /// The unscaled matrix; may overflow.
    pub fn to_plain(&self) -> FundamentalMatrix {
        self.matrix.scale(C64::new(exp(self.log_scale), 0.0))
    }

    /// `det(U)` recovered from the stored matrix; should be 1.
    pub fn det(&self) -> C64 {
        self.matrix.det() * exp(2.0 * self.log_scale)
    }
}

fn check_range(system: &IntegralSystem, x: f64) -> Result<()> {
    if !(x >= 0.0 && x <= system.endpoint() && x.is_finite()) {
        return Err(Error::OutOfRange {
            x,
            limit: system.endpoint(),
        });
    }
    Ok(())
}

/// `U(x, λ)`: product of the factors of everything in `[0, x)`.
pub fn fundamental_matrix(system: &IntegralSystem, x: f64, lambda: C64) -> Result<FundamentalMatrix> {
    check_range(system, x)?;
    Ok(system
        .steps(0.0, x)
        .iter()
        .fold(FundamentalMatrix::identity(), |u, step| step_factor(step, lambda) * u))
}

/// `U₊(x, λ)`: also crosses an atom sitting exactly at `x`.
pub fn fundamental_matrix_right(system: &IntegralSystem, x: f64, lambda: C64) -> Result<FundamentalMatrix> {
    let u = fundamental_matrix(system, x, lambda)?;
    Ok(match system.atom_at(x) {
        Some(step) => step_factor(&step, lambda) * u,
        None => u,
    })
}

/// Overflow-safe `U(x, λ)`.
pub fn fundamental_matrix_scaled(system: &IntegralSystem, x: f64, lambda: C64) -> Result<ScaledMatrix> {
    let mut p = Propagator::new(system, lambda);
    p.advance_to(x)?;
    Ok(*p.left())
}

/// Incremental left-to-right evaluation of `U(·, λ)` along increasing points.
#[derive(Clone, Debug)]
pub struct Propagator<'a> {
    system: &'a IntegralSystem,
    lambda: C64,
    position: f64,
    state: ScaledMatrix,
}

impl<'a> Propagator<'a> {
    pub fn new(system: &'a IntegralSystem, lambda: C64) -> Self {
        Propagator {
            system,
            lambda,
            position: 0.0,
            state: ScaledMatrix::identity(),
        }
    }

    pub fn position(&self) -> f64 {
        self.position
    }

    pub fn lambda(&self) -> C64 {
        self.lambda
    }

    pub fn advance_to(&mut self, x: f64) -> Result<()> {
        check_range(self.system, x)?;
        if x < self.position {
            return Err(Error::OutOfRange {
                x,
                limit: self.position,
            });
        }
        for step in self.system.steps(self.position, x) {
            let (factor, shift) = step_factor_scaled(&step, self.lambda);
            self.state.push(&factor, shift);
        }
        self.position = x;
        Ok(())
    }

    /// `U(x)` at the current position.
    pub fn left(&self) -> &ScaledMatrix {
        &self.state
    }

    /// `U₊(x)` at the current position.
    pub fn right(&self) -> ScaledMatrix {
        let mut s = self.state;
        if let Some(step) = self.system.atom_at(self.position) {
            let (factor, shift) = step_factor_scaled(&step, self.lambda);
            s.push(&factor, shift);
        }
        s
    }
}
