//! Weyl discs, the principal Titchmarsh–Weyl coefficient `q(λ)` and the
//! Neumann m-function.

use alloc::vec::Vec;

use libm::{exp, fabs};

use crate::error::{Error, Result};
use crate::propagator::{integrate_solutions, Against, Propagator, ScaledMatrix};
use crate::system::{EndpointType, IntegralSystem};
use crate::C64;

/// Boundary parameter `h` of the condition `ψ₁(l) + h ψ₂(l) = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryParam {
    Finite(C64),
    Infinity,
}

/// How a [`QEnclosure`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    RegularClosedForm,
    LimitCircleClosedForm,
    LimitPointNested,
}

/// `q(λ)` lies within `error_radius` of `value`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QEnclosure {
    pub value: C64,
    pub error_radius: f64,
    pub regime: Regime,
}

impl QEnclosure {
    fn exact(value: C64, regime: Regime) -> Self {
        QEnclosure {
            value,
            error_radius: 0.0,
            regime,
        }
    }

    pub fn conj(&self) -> Self {
        QEnclosure {
            value: self.value.conj(),
            ..*self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QOptions {
    /// Target error radius in the limit-point regime.
    pub tol: f64,
    /// Number of tail doublings allowed after the breakpoints are used up.
    pub budget: usize,
}

impl Default for QOptions {
    fn default() -> Self {
        QOptions {
            tol: 1e-8,
            budget: 200,
        }
    }
}

/// The disc `D_l(λ)` of admissible values `m(λ, l, h)`, `Im h ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylDisc {
    pub center: C64,
    /// Infinite while no `dR₂` mass has been crossed (the disc is then the
    /// whole upper half-plane).
    pub radius: f64,
    pub truncation: f64,
    pub lambda: C64,
}

impl WeylDisc {
    pub fn contains(&self, omega: C64) -> bool {
        (omega - self.center).norm() <= self.radius
    }
}

fn require_nonreal(lambda: C64) -> Result<()> {
    if lambda.im == 0.0 || !lambda.im.is_finite() || !lambda.re.is_finite() {
        return Err(Error::ImaginaryPartRequired);
    }
    Ok(())
}

fn divide(num: C64, den: C64) -> Result<C64> {
    let v = num / den;
    if den.norm() == 0.0 || !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::DivisionDegenerate);
    }
    Ok(v)
}

fn left_at(system: &IntegralSystem, x: f64, lambda: C64) -> Result<ScaledMatrix> {
    let mut p = Propagator::new(system, lambda);
    p.advance_to(x)?;
    Ok(*p.left())
}

fn right_at(system: &IntegralSystem, x: f64, lambda: C64) -> Result<ScaledMatrix> {
    let mut p = Propagator::new(system, lambda);
    p.advance_to(x)?;
    Ok(p.right())
}

/// `m(λ, l, h) = (s₁ + h s₂)/(c₁ + h c₂)` at `x = l`.
pub fn m_coefficient(system: &IntegralSystem, l: f64, h: BoundaryParam, lambda: C64) -> Result<C64> {
    require_nonreal(lambda)?;
    let u = left_at(system, l, lambda)?.matrix;
    match h {
        BoundaryParam::Finite(h) => divide(u.s1 + h * u.s2, u.c1 + h * u.c2),
        BoundaryParam::Infinity => divide(u.s2, u.c2),
    }
}

fn disc_from(u: &ScaledMatrix, l: f64, lambda: C64) -> WeylDisc {
    let m = &u.matrix;
    let gram = m.c1 * m.c2.conj();
    let den = gram - gram.conj();
    if gram.im == 0.0 {
        return WeylDisc {
            center: C64::new(0.0, f64::INFINITY),
            radius: f64::INFINITY,
            truncation: l,
            lambda,
        };
    }
    let center = (m.s1 * m.c2.conj() - m.s2 * m.c1.conj()) / den;
    // |det U| = 1, and the stored matrix is U·e^{−log_scale}
    let radius = exp(-2.0 * u.log_scale) / (2.0 * fabs(gram.im));
    WeylDisc {
        center,
        radius,
        truncation: l,
        lambda,
    }
}

/// `D_l(λ)` from the circle-center formula of the Möbius map `h ↦ m(λ, l, h)`.
pub fn weyl_disc(system: &IntegralSystem, l: f64, lambda: C64) -> Result<WeylDisc> {
    if !(lambda.im > 0.0) || !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(Error::ImaginaryPartRequired);
    }
    Ok(disc_from(&left_at(system, l, lambda)?, l, lambda))
}

/// The radius from `(2 Im λ ∫_{[0,l)} |c₁|² dR₂)⁻¹` by quadrature, with the
/// relative quadrature error estimate.
pub fn disc_radius_by_integral(system: &IntegralSystem, l: f64, lambda: C64) -> Result<(f64, f64)> {
    if !(lambda.im > 0.0) {
        return Err(Error::ImaginaryPartRequired);
    }
    if !(l >= 0.0 && l <= system.endpoint()) {
        return Err(Error::OutOfRange {
            x: l,
            limit: system.endpoint(),
        });
    }
    let est = integrate_solutions(system, Against::R2, l, &[lambda], |u| {
        [C64::new(u[0].c1.norm_sqr(), 0.0)]
    });
    let integral = est.value[0].re;
    Ok((1.0 / (2.0 * lambda.im * integral), est.error / integral))
}

/// `∫_{[0,l)} |s₁ − ω c₁|² dR₂`; at most `Im ω / Im λ` exactly on the disc.
pub fn membership_integral(system: &IntegralSystem, l: f64, lambda: C64, omega: C64) -> Result<f64> {
    require_nonreal(lambda)?;
    if !(l >= 0.0 && l <= system.endpoint()) {
        return Err(Error::OutOfRange {
            x: l,
            limit: system.endpoint(),
        });
    }
    let est = integrate_solutions(system, Against::R2, l, &[lambda], |u| {
        [C64::new((u[0].s1 - omega * u[0].c1).norm_sqr(), 0.0)]
    });
    Ok(est.value[0].re)
}

fn excluded(lambda: C64) -> Result<()> {
    let finite = lambda.re.is_finite() && lambda.im.is_finite();
    if !finite || (lambda.im == 0.0 && lambda.re >= 0.0) {
        return Err(Error::ExcludedPoint(lambda));
    }
    Ok(())
}

/// Truncation points: breakpoints first, then doubling from `max(b_rep, 1)`.
/// Only the doublings count against `budget`.
fn schedule(system: &IntegralSystem, budget: usize) -> impl Iterator<Item = f64> {
    let start = system.b_rep().max(1.0);
    let breaks: Vec<f64> = system
        .breakpoints()
        .into_iter()
        .filter(|&t| t > 0.0 && t < start)
        .collect();
    let mut l = start;
    let doublings = (0..=budget).map(move |k| {
        if k > 0 {
            l *= 2.0;
        }
        l
    });
    breaks.into_iter().chain(doublings)
}

/// `q(λ)` with a rigorous enclosure radius.
///
/// Regular systems use `s₁/c₁` at the closing point, limit-circle ones
/// `s₂/c₂` past the support of `dR₂`, both with radius zero. Limit-point
/// systems shrink Weyl discs along [`schedule`] for non-real `λ`; on the
/// negative axis they shrink the bracket `s₁/c₁ < q < s₂/c₂`, whose width is
/// `1/(c₁c₂)`. `λ ∈ [0, ∞)` is excluded.
pub fn principal_q(system: &IntegralSystem, lambda: C64, opts: QOptions) -> Result<QEnclosure> {
    excluded(lambda)?;
    if system.is_regular() {
        let u = right_at(system, system.closing_point(), lambda)?.matrix;
        return Ok(QEnclosure::exact(divide(u.s1, u.c1)?, Regime::RegularClosedForm));
    }
    match system.classify().endpoint_type {
        EndpointType::LimitCircle => limit_circle_value(system, lambda),
        EndpointType::LimitPoint => limit_point_q(system, lambda, opts),
    }
}

fn limit_circle_value(system: &IntegralSystem, lambda: C64) -> Result<QEnclosure> {
    let x = system.r2().support_end()?;
    let u = right_at(system, x, lambda)?.matrix;
    Ok(QEnclosure::exact(divide(u.s2, u.c2)?, Regime::LimitCircleClosedForm))
}

fn limit_point_q(system: &IntegralSystem, lambda: C64, opts: QOptions) -> Result<QEnclosure> {
    if lambda.im < 0.0 {
        return limit_point_q(system, lambda.conj(), opts).map(|q| q.conj());
    }
    let real_axis = lambda.im == 0.0;
    let mut p = Propagator::new(system, lambda);
    let mut last_radius = f64::INFINITY;
    for l in schedule(system, opts.budget) {
        p.advance_to(l)?;
        let u = p.left();
        let (value, radius) = if real_axis {
            let m = &u.matrix;
            if m.c2.re <= 0.0 || m.c1.re <= 0.0 {
                continue;
            }
            let lo = m.s1.re / m.c1.re;
            let hi = m.s2.re / m.c2.re;
            let gap = exp(-2.0 * u.log_scale) / (m.c1.re * m.c2.re);
            (C64::new(0.5 * (lo + hi), 0.0), 0.5 * gap)
        } else {
            let d = disc_from(u, l, lambda);
            (d.center, d.radius)
        };
        last_radius = radius;
        if radius < opts.tol {
            return Ok(QEnclosure {
                value,
                error_radius: radius,
                regime: Regime::LimitPointNested,
            });
        }
    }
    Err(Error::ToleranceUnreachable {
        iterations: opts.budget,
        last_radius,
    })
}

/// The Neumann m-function `lim s₂/c₂`: `s₂/c₂` at the closing point of a
/// regular system, `q` otherwise.
pub fn neumann_m(system: &IntegralSystem, lambda: C64, opts: QOptions) -> Result<QEnclosure> {
    excluded(lambda)?;
    if system.is_regular() {
        let u = right_at(system, system.closing_point(), lambda)?.matrix;
        return Ok(QEnclosure::exact(divide(u.s2, u.c2)?, Regime::RegularClosedForm));
    }
    principal_q(system, lambda, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsymptoticProbe {
    /// `λ → −∞`
    MinusInfinity,
    /// `λ → 0−`
    ZeroMinus,
}

/// Predicted limits read off the measures: `lim_{λ→−∞} m_N = R₁₊(a)` with
/// `a = inf supp dR₂`, and `lim_{λ→0−} λ m_N = −1/R₂(b)`.
pub fn neumann_asymptotics(system: &IntegralSystem, probe: AsymptoticProbe) -> Result<f64> {
    match probe {
        AsymptoticProbe::MinusInfinity => {
            let a = system.r2().inf_support()?;
            Ok(system.r1().eval_right(a))
        }
        AsymptoticProbe::ZeroMinus => {
            if system.r2().has_tail() {
                return Err(Error::InfiniteR2Total);
            }
            let total = system.r2().total_variation();
            if total == 0.0 {
                return Err(Error::ZeroMeasure);
            }
            Ok(-1.0 / total)
        }
    }
}

/// `|ψ₁ψ₂|` along `grid` for the Weyl solution `ψ = s − q(λ) c`, `λ < 0`.
/// The grid is visited in increasing order.
pub fn slp_diagnostic(system: &IntegralSystem, lambda: f64, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if system.is_regular() {
        return Err(Error::NotSingular);
    }
    if !(lambda < 0.0) || !lambda.is_finite() {
        return Err(Error::ProbeNotApplicable("needs a negative real spectral parameter"));
    }
    let lam = C64::new(lambda, 0.0);
    let q = principal_q(
        system,
        lam,
        QOptions {
            tol: 1e-13,
            budget: 200,
        },
    )?
    .value
    .re;
    let mut points = grid.to_vec();
    points.sort_by(f64::total_cmp);
    let mut p = Propagator::new(system, lam);
    let mut out = Vec::with_capacity(points.len());
    for x in points {
        p.advance_to(x)?;
        let u = p.left();
        let m = &u.matrix;
        let psi1 = m.s1.re - q * m.c1.re;
        let psi2 = m.s2.re - q * m.c2.re;
        out.push((x, fabs(psi1 * psi2) * exp(2.0 * u.log_scale)));
    }
    Ok(out)
}

/// Residual of `s₂/c₂ − s₁/c₁ = 1/(c₁c₂)` at `x` for `λ < 0`, relative to the
/// largest term.
pub fn quotient_gap_residual(system: &IntegralSystem, x: f64, lambda: f64) -> Result<f64> {
    if !(lambda < 0.0) {
        return Err(Error::ProbeNotApplicable("needs a negative real spectral parameter"));
    }
    let u = left_at(system, x, C64::new(lambda, 0.0))?;
    let m = &u.matrix;
    let (c1, c2, s1, s2) = (m.c1.re, m.c2.re, m.s1.re, m.s2.re);
    if c1 == 0.0 || c2 == 0.0 {
        return Err(Error::DivisionDegenerate);
    }
    let lhs = s2 / c2 - s1 / c1;
    let rhs = exp(-2.0 * u.log_scale) / (c1 * c2);
    let scale = (s2 / c2).abs().max((s1 / c1).abs()).max(rhs.abs()).max(1e-300);
    Ok(fabs(lhs - rhs) / scale)
}
