//! Residuals of the Wronskian, Green and kernel identities.
//!
//! Each residual is divided by `max(1, size of the terms involved)`.

use num_traits::Zero;

use super::fundamental::{fundamental_matrix, FundamentalMatrix};
use super::integrals::{integrate_solutions, Against};
use super::transfer::step_factor;
use crate::error::Result;
use crate::system::IntegralSystem;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WronskianReport {
    /// `c₁s₂ − c₂s₁ − 1`
    pub left: f64,
    /// `c₁₊s₂ − c₂s₁₊ − 1`
    pub right_first_row: f64,
    /// `c₁s₂₊ − c₂₊s₁ − 1`
    pub right_second_row: f64,
}

impl WronskianReport {
    pub fn max_residual(&self) -> f64 {
        self.left.max(self.right_first_row).max(self.right_second_row)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenReport {
    pub first: f64,
    pub second: f64,
    /// Largest `|I_{2n} − I_n|` of the integrals involved, relative.
    pub quadrature_error: f64,
}

impl GreenReport {
    pub fn max_residual(&self) -> f64 {
        self.first.max(self.second)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelReport {
    pub residual: f64,
    pub quadrature_error: f64,
}

fn relative(diff: C64, terms: &[C64]) -> f64 {
    let scale = terms.iter().map(|t| t.norm()).fold(1.0, f64::max);
    diff.norm() / scale
}

pub fn check_wronskian(system: &IntegralSystem, x: f64, lambda: C64) -> Result<WronskianReport> {
    let u = fundamental_matrix(system, x, lambda)?;
    let up = match system.atom_at(x) {
        Some(step) => step_factor(&step, lambda) * u,
        None => u,
    };
    let one = C64::new(1.0, 0.0);
    let w = |a: C64, b: C64, c: C64, d: C64| relative(a * b - c * d - one, &[a * b, c * d]);
    Ok(WronskianReport {
        left: w(u.c1, u.s2, u.c2, u.s1),
        right_first_row: w(up.c1, u.s2, u.c2, up.s1),
        right_second_row: w(u.c1, up.s2, up.c2, u.s1),
    })
}

/// Both Green identities for the pairs `(c(λ), c(μ))`, `(s(λ), s(μ))`,
/// `(c(λ), s(μ))` and `(s(λ), c(μ))`.
pub fn check_green(system: &IntegralSystem, x: f64, lambda: C64, mu: C64) -> Result<GreenReport> {
    let ul = fundamental_matrix(system, x, lambda)?;
    let um = fundamental_matrix(system, x, mu)?;
    let lambdas = [lambda, mu];
    let pairs = |u: &[FundamentalMatrix], first: bool| -> [C64; 4] {
        let (a, b) = (u[0], u[1]);
        if first {
            [a.c1 * b.c1, a.s1 * b.s1, a.c1 * b.s1, a.s1 * b.c1]
        } else {
            [a.c2 * b.c2, a.s2 * b.s2, a.c2 * b.s2, a.s2 * b.c2]
        }
    };
    let i2 = integrate_solutions(system, Against::R2, x, &lambdas, |u| pairs(u, true));
    let i1 = integrate_solutions(system, Against::R1, x, &lambdas, |u| pairs(u, false));

    let sol = |m: &FundamentalMatrix, c: bool| if c { m.c() } else { m.s() };
    let choices = [(true, true), (false, false), (true, false), (false, true)];
    let mut first: f64 = 0.0;
    let mut second: f64 = 0.0;
    let mut qerr: f64 = 0.0;
    for (k, &(cu, cv)) in choices.iter().enumerate() {
        let (ux, vx) = (sol(&ul, cu), sol(&um, cv));
        let u0 = sol(&FundamentalMatrix::identity(), cu);
        let v0 = sol(&FundamentalMatrix::identity(), cv);

        // ∫ f v₁ dR₂ = ∫ u₂ v₂ dR₁ − u₂(x)v₁(x) + u₂(0)v₁(0), f = λu₁
        let lhs = lambda * i2.value[k];
        let rhs = i1.value[k] - ux.u2 * vx.u1 + u0.u2 * v0.u1;
        first = first.max(relative(lhs - rhs, &[lhs, i1.value[k], ux.u2 * vx.u1]));

        // (λ − μ) ∫ u₁ v₁ dR₂ = [u, v](x) − [u, v](0)
        let lhs = (lambda - mu) * i2.value[k];
        let wx = ux.u1 * vx.u2 - ux.u2 * vx.u1;
        let w0 = u0.u1 * v0.u2 - u0.u2 * v0.u1;
        second = second.max(relative(lhs - (wx - w0), &[lhs, ux.u1 * vx.u2, ux.u2 * vx.u1]));

        let scale = 1f64.max(i2.value[k].norm()).max(i1.value[k].norm());
        qerr = qerr.max((i1.error + lambda.norm().max(1.0) * i2.error) / scale);
    }
    Ok(GreenReport {
        first,
        second,
        quadrature_error: qerr,
    })
}

/// `J − U(x, μ)* J U(x, λ) = −(λ − μ̄) ∫ [c₁(μ̄); s₁(μ̄)] [c₁(λ), s₁(λ)] dR₂`.
pub fn check_kernel_identity(system: &IntegralSystem, x: f64, lambda: C64, mu: C64) -> Result<KernelReport> {
    let ul = fundamental_matrix(system, x, lambda)?;
    let um = fundamental_matrix(system, x, mu)?;
    let j = FundamentalMatrix::new(C64::zero(), C64::new(-1.0, 0.0), C64::new(1.0, 0.0), C64::zero());
    let lhs = j - um.adjoint() * j * ul;

    let est = integrate_solutions(system, Against::R2, x, &[lambda, mu.conj()], |u| {
        let (a, b) = (u[0], u[1]);
        [b.c1 * a.c1, b.c1 * a.s1, b.s1 * a.c1, b.s1 * a.s1]
    });
    let k = -(lambda - mu.conj());
    let rhs = FundamentalMatrix::new(est.value[0] * k, est.value[1] * k, est.value[2] * k, est.value[3] * k);
    let scale = 1f64.max(lhs.max_abs()).max(rhs.max_abs()).max(ul.max_abs() * um.max_abs());
    Ok(KernelReport {
        residual: (lhs - rhs).max_abs() / scale,
        quadrature_error: est.error * k.norm() / scale,
    })
}
