//! Exact polynomial-in-`λ` fundamental matrices.
//!
//! While only one of the two measures carries density on each piece, every
//! factor is polynomial in `λ`, so `U(x, ·)` is a matrix of polynomials
//! whose coefficients can be computed exactly over a [`Field`].

use core::ops::Mul;

use super::fundamental::FundamentalMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::system::{IntegralSystem, Step};
use crate::C64;

/// `[[c1, s1], [c2, s2]]` with polynomial entries in `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F> {
    pub c1: Poly<F>,
    pub s1: Poly<F>,
    pub c2: Poly<F>,
    pub s2: Poly<F>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn identity() -> Self {
        PolyMatrix {
            c1: Poly::one(),
            s1: Poly::zero(),
            c2: Poly::zero(),
            s2: Poly::one(),
        }
    }

    /// `[[1, l], [0, 1]]`
    pub fn atom_r1(l: F) -> Self {
        PolyMatrix {
            s1: Poly::constant(l),
            ..PolyMatrix::identity()
        }
    }

    /// `[[1, 0], [−mλ, 1]]`
    pub fn atom_r2(m: F) -> Self {
        PolyMatrix {
            c2: Poly::linear(F::zero(), -m),
            ..PolyMatrix::identity()
        }
    }

    pub fn det(&self) -> Poly<F> {
        &(&self.c1 * &self.s2) - &(&self.c2 * &self.s1)
    }

    /// Entries evaluated at a complex `λ` in floating point.
    pub fn eval(&self, lambda: C64) -> FundamentalMatrix {
        let ev = |p: &Poly<F>| {
            p.coeffs()
                .iter()
                .rev()
                .fold(C64::new(0.0, 0.0), |acc, c| acc * lambda + c.to_real())
        };
        FundamentalMatrix::new(ev(&self.c1), ev(&self.s1), ev(&self.c2), ev(&self.s2))
    }
}

impl<F: Field> Mul for &PolyMatrix<F> {
    type Output = PolyMatrix<F>;
    fn mul(self, r: &PolyMatrix<F>) -> PolyMatrix<F> {
        PolyMatrix {
            c1: &(&self.c1 * &r.c1) + &(&self.s1 * &r.c2),
            s1: &(&self.c1 * &r.s1) + &(&self.s1 * &r.s2),
            c2: &(&self.c2 * &r.c1) + &(&self.s2 * &r.c2),
            s2: &(&self.c2 * &r.s1) + &(&self.s2 * &r.s2),
        }
    }
}

fn step_poly<F: Field>(step: &Step) -> Result<PolyMatrix<F>> {
    Ok(match *step {
        Step::R1Atom(m) => PolyMatrix::atom_r1(F::from_real(m)),
        Step::R2Atom(m) => PolyMatrix::atom_r2(F::from_real(m)),
        Step::Segment {
            start,
            alpha,
            beta,
            len,
        } => {
            if alpha > 0.0 && beta > 0.0 {
                return Err(Error::NonAtomicRegion {
                    start,
                    end: start + len,
                });
            }
            let length = F::from_real(len);
            if beta > 0.0 {
                PolyMatrix::atom_r2(F::from_real(beta) * length)
            } else {
                PolyMatrix::atom_r1(F::from_real(alpha) * length)
            }
        }
    })
}

/// `U(x, λ)` as polynomials in `λ`.
///
/// Fails with `NonAtomicRegion` where both measures carry density at once.
pub fn monodromy_polynomial<F: Field>(system: &IntegralSystem, x: f64) -> Result<PolyMatrix<F>> {
    if !(x >= 0.0 && x <= system.endpoint() && x.is_finite()) {
        return Err(Error::OutOfRange {
            x,
            limit: system.endpoint(),
        });
    }
    let mut u = PolyMatrix::identity();
    for step in system.steps(0.0, x) {
        u = &step_poly::<F>(&step)? * &u;
    }
    Ok(u)
}
