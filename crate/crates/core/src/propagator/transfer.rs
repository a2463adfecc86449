//! Closed-form transfer matrices of the elementary pieces.

use num_traits::Zero;

use super::fundamental::FundamentalMatrix;
use crate::system::Step;
use crate::C64;

/// Below this `|z|` the cosine and sinc are summed from their Taylor series.
pub const SMALL_ARGUMENT: f64 = 1e-4;
const TAYLOR_TERMS: usize = 8;
/// Above this `|Im z|` the scaled propagation factors out `e^{|Im z|}`.
pub const SCALE_THRESHOLD: f64 = 30.0;

/// `u₁` jumps by `mass · u₂`.
pub fn atom_factor_r1(mass: f64) -> FundamentalMatrix {
    FundamentalMatrix::new(C64::new(1.0, 0.0), C64::new(mass, 0.0), C64::zero(), C64::new(1.0, 0.0))
}

/// `u₂` jumps by `−λ · mass · u₁`.
pub fn atom_factor_r2(mass: f64, lambda: C64) -> FundamentalMatrix {
    FundamentalMatrix::new(C64::new(1.0, 0.0), C64::zero(), -lambda * mass, C64::new(1.0, 0.0))
}

/// Transfer over `Δ` with constant densities `α` (of `dR₁`) and `β` (of `dR₂`):
/// `[[cos z, αΔ sinc z], [−λβΔ sinc z, cos z]]` with `z² = λαβΔ²`.
pub fn segment_factor(alpha: f64, beta: f64, len: f64, lambda: C64) -> FundamentalMatrix {
    let z2 = lambda * (alpha * beta * len * len);
    let (c, sinc) = cos_sinc(z2, z2.sqrt());
    segment_matrix(alpha, beta, len, lambda, c, sinc)
}

/// Same matrix evaluated through a caller-chosen root `z` of `z²`; both roots
/// give the same result because cosine and sinc are even.
pub fn segment_factor_with_root(alpha: f64, beta: f64, len: f64, lambda: C64, z: C64) -> FundamentalMatrix {
    let (c, sinc) = cos_sinc(z * z, z);
    segment_matrix(alpha, beta, len, lambda, c, sinc)
}

fn segment_matrix(alpha: f64, beta: f64, len: f64, lambda: C64, c: C64, sinc: C64) -> FundamentalMatrix {
    FundamentalMatrix::new(c, sinc * (alpha * len), -lambda * sinc * (beta * len), c)
}

fn cos_sinc(z2: C64, z: C64) -> (C64, C64) {
    if z.norm() < SMALL_ARGUMENT {
        // Σ (−z²)^k/(2k)! and Σ (−z²)^k/(2k+1)!
        let mut c = C64::zero();
        let mut s = C64::zero();
        let mut term = C64::new(1.0, 0.0);
        for k in 0..TAYLOR_TERMS {
            c += term;
            let odd = term / (2 * k + 1) as f64;
            s += odd;
            term = -odd * z2 / (2 * k + 2) as f64;
        }
        (c, s)
    } else {
        (z.cos(), z.sin() / z)
    }
}

/// Segment factor divided by `e^{shift}`; `shift = |Im z|` for large
/// imaginary parts, else zero.
pub(crate) fn segment_factor_scaled(alpha: f64, beta: f64, len: f64, lambda: C64) -> (FundamentalMatrix, f64) {
    let z2 = lambda * (alpha * beta * len * len);
    let z = z2.sqrt();
    let y = z.im.abs();
    if y <= SCALE_THRESHOLD {
        let (c, sinc) = cos_sinc(z2, z);
        return (segment_matrix(alpha, beta, len, lambda, c, sinc), 0.0);
    }
    let i = C64::i();
    let plus = (i * z - y).exp();
    let minus = (-i * z - y).exp();
    let c = (plus + minus) * 0.5;
    let sinc = (plus - minus) / (2.0 * i * z);
    (segment_matrix(alpha, beta, len, lambda, c, sinc), y)
}

pub(crate) fn step_factor(step: &Step, lambda: C64) -> FundamentalMatrix {
    match *step {
        Step::R1Atom(m) => atom_factor_r1(m),
        Step::R2Atom(m) => atom_factor_r2(m, lambda),
        Step::Segment {
            alpha, beta, len, ..
        } => segment_factor(alpha, beta, len, lambda),
    }
}

pub(crate) fn step_factor_scaled(step: &Step, lambda: C64) -> (FundamentalMatrix, f64) {
    match *step {
        Step::Segment {
            alpha, beta, len, ..
        } => segment_factor_scaled(alpha, beta, len, lambda),
        _ => (step_factor(step, lambda), 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn string_cell_product() {
        let lambda = C64::new(0.3, -1.7);
        let (l, m) = (0.75, 2.5);
        let u = atom_factor_r1(l) * atom_factor_r2(m, lambda);
        assert_eq!(u.c1, 1.0 - lambda * l * m);
        assert_eq!(u.s1, C64::new(l, 0.0));
        assert_eq!(u.c2, -lambda * m);
        assert_eq!(u.s2, C64::new(1.0, 0.0));
        assert_eq!(atom_factor_r2(m, C64::zero()), FundamentalMatrix::identity());
    }

    #[test]
    fn degenerate_segments() {
        let lambda = C64::new(-2.0, 0.5);
        let a0 = segment_factor(0.0, 3.0, 0.5, lambda);
        assert_eq!(a0, FundamentalMatrix::new(1.0.into(), 0.0.into(), -lambda * 1.5, 1.0.into()));
        let b0 = segment_factor(3.0, 0.0, 0.5, lambda);
        assert_eq!(b0, FundamentalMatrix::new(1.0.into(), 1.5.into(), 0.0.into(), 1.0.into()));
    }

    #[test]
    fn negative_axis_is_hyperbolic() {
        let k: f64 = 2.0;
        let u = segment_factor(1.0, 1.0, 1.25, C64::new(-k * k, 0.0));
        let x = k * 1.25;
        assert!(close(u.c1, C64::new(x.cosh(), 0.0), 1e-12));
        assert!(close(u.s1, C64::new(x.sinh() / k, 0.0), 1e-12));
        assert!(close(u.c2, C64::new(k * x.sinh(), 0.0), 1e-12));
    }

    #[test]
    fn both_roots_agree() {
        for lambda in [C64::new(3.0, 1.0), C64::new(-1.0, -4.0), C64::new(1e-12, 1e-13)] {
            let z = (lambda * 0.7 * 1.3 * 0.9 * 0.9).sqrt();
            let a = segment_factor_with_root(0.7, 1.3, 0.9, lambda, z);
            let b = segment_factor_with_root(0.7, 1.3, 0.9, lambda, -z);
            assert!((a - b).max_abs() < 1e-15);
        }
    }

    #[test]
    fn taylor_branch_matches_closed_form_at_threshold() {
        let lambda = C64::new(0.4, 0.3);
        for scale in [0.999, 1.001] {
            let z = C64::new(0.0, SMALL_ARGUMENT * scale) * (lambda / lambda.norm()).sqrt();
            let z2 = z * z;
            let (c, s) = cos_sinc(z2, z);
            assert!(close(c, z.cos(), 1e-15));
            assert!(close(s, z.sin() / z, 1e-15));
        }
    }

    #[test]
    fn scaled_factor_matches_plain() {
        let lambda = C64::new(-1.0e4, 3.0);
        let (scaled, shift) = segment_factor_scaled(1.0, 1.0, 0.5, lambda);
        assert!(shift > SCALE_THRESHOLD);
        let plain = segment_factor(1.0, 1.0, 0.5, lambda);
        let restored = scaled.scale(C64::new(shift.exp(), 0.0));
        assert!((restored - plain).max_abs() <= 1e-12 * plain.max_abs());
    }
}
