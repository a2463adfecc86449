//! Stieltjes integrals of functions of the fundamental matrix.
//!
//! Atoms contribute exactly. On each density piece the integrand is smooth;
//! it is integrated with composite Gauss–Legendre on panels short enough that
//! `|z| ≤ 1` per panel, once with `n` and once with `2n` panels, and the
//! difference serves as the error estimate.

use alloc::vec;
use alloc::vec::Vec;

use libm::{ceil, sqrt};

use super::fundamental::FundamentalMatrix;
use super::transfer::{segment_factor, step_factor};
use crate::quadrature::{gauss_legendre, scaled_rule, ORDER};
use crate::system::{IntegralSystem, Step};
use crate::C64;

/// Which measure the integral is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Against {
    R1,
    R2,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<const N: usize> {
    pub value: [C64; N],
    /// `|I_{2n} − I_n|`, maximized over components.
    pub error: f64,
}

/// `∫_{[0,x)} f(U(t, λ₁), …, U(t, λ_k)) dR`.
pub fn integrate_solutions<const N: usize>(
    system: &IntegralSystem,
    against: Against,
    x: f64,
    lambdas: &[C64],
    f: impl Fn(&[FundamentalMatrix]) -> [C64; N],
) -> Estimate<N> {
    let rule = gauss_legendre::<ORDER>();
    let mut mats = vec![FundamentalMatrix::identity(); lambdas.len()];
    let mut coarse = [C64::new(0.0, 0.0); N];
    let mut fine = [C64::new(0.0, 0.0); N];
    let mut at_nodes: Vec<FundamentalMatrix> = Vec::with_capacity(lambdas.len());

    for step in system.steps(0.0, x) {
        match step {
            Step::R1Atom(m) | Step::R2Atom(m) => {
                let hit = matches!(
                    (against, step),
                    (Against::R1, Step::R1Atom(_)) | (Against::R2, Step::R2Atom(_))
                );
                if hit {
                    let v = f(&mats);
                    for k in 0..N {
                        coarse[k] += v[k] * m;
                        fine[k] += v[k] * m;
                    }
                }
            }
            Step::Segment {
                alpha, beta, len, ..
            } => {
                let density = match against {
                    Against::R1 => alpha,
                    Against::R2 => beta,
                };
                if density > 0.0 {
                    let rate = lambdas
                        .iter()
                        .map(|l| sqrt(l.norm() * alpha * beta))
                        .fold(0.0, f64::max);
                    let n = ceil(rate * len).max(1.0) as usize;
                    for (panels, acc) in [(n, &mut coarse), (2 * n, &mut fine)] {
                        let h = len / panels as f64;
                        for p in 0..panels {
                            let a = p as f64 * h;
                            for (t, w) in scaled_rule(&rule, a, a + h) {
                                at_nodes.clear();
                                at_nodes.extend(
                                    lambdas
                                        .iter()
                                        .zip(&mats)
                                        .map(|(&l, u)| segment_factor(alpha, beta, t, l) * *u),
                                );
                                let v = f(&at_nodes);
                                for k in 0..N {
                                    acc[k] += v[k] * (w * density);
                                }
                            }
                        }
                    }
                }
            }
        }
        for (u, &l) in mats.iter_mut().zip(lambdas) {
            *u = step_factor(&step, l) * *u;
        }
    }
    let error = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Estimate { value: fine, error }
}
