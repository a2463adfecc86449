//! Dense polynomials and left-continuous piecewise polynomials.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

/// Polynomial with coefficients in ascending order; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c0 + c1·s`
    pub fn linear(c0: F, c1: F) -> Self {
        Poly::from_coeffs(vec![c0, c1])
    }

    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `s^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, s: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * s.clone() + c.clone())
    }

    pub fn scale(&self, factor: &F) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    /// Antiderivative vanishing at `s = 0`.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(F::zero());
        let mut k = F::zero();
        for c in &self.coeffs {
            k = k + F::one();
            out.push(c.clone() / k.clone());
        }
        Poly::from_coeffs(out)
    }

    /// `∫_0^len p(s) ds`
    pub fn integral(&self, len: &F) -> F {
        self.antiderivative().eval(len)
    }

    /// Taylor shift: returns `q` with `q(s) = p(s + by)`.
    pub fn shift(&self, by: &F) -> Self {
        if by.is_zero() {
            return self.clone();
        }
        let mut out: Vec<F> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            // out <- out·(s + by) + c
            let mut next = vec![F::zero(); out.len() + 1];
            for (k, a) in out.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + a.clone();
                next[k] = next[k].clone() + a.clone() * by.clone();
            }
            next[0] = next[0].clone() + c.clone();
            out = next;
        }
        Poly::from_coeffs(out)
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

/// Left-continuous piecewise polynomial on `[0, end]`.
///
/// Piece `i` lives on `(t_i, t_{i+1}]` (piece 0 on the closed `[0, t_1]`) and
/// is written in the local variable `s = t - t_i`. Jumps therefore happen
/// just after a breakpoint, which is exactly the shape of `x ↦ ∫_{[0,x)} f dR`.
/// The value at `t = 0` is stored separately because an atom at the origin
/// makes it differ from the right limit of piece 0.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePoly<F> {
    breaks: Vec<f64>,
    pieces: Vec<Poly<F>>,
    origin: F,
}

impl<F: Field> PiecewisePoly<F> {
    pub fn new(breaks: Vec<f64>, pieces: Vec<Poly<F>>) -> Result<Self> {
        if breaks.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(Error::InvalidPieces("need one more breakpoint than pieces"));
        }
        if breaks[0] != 0.0 {
            return Err(Error::InvalidPieces("first breakpoint must be 0"));
        }
        if breaks.iter().any(|t| !t.is_finite()) || breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPieces("breakpoints must be finite and strictly increasing"));
        }
        let origin = pieces[0].eval(&F::zero());
        Ok(PiecewisePoly {
            breaks,
            pieces,
            origin,
        })
    }

    /// Overrides the value at `t = 0`.
    pub fn with_origin(mut self, origin: F) -> Self {
        self.origin = origin;
        self
    }

    /// A single polynomial in the absolute variable `t` on `[0, end]`.
    pub fn global(p: Poly<F>, end: f64) -> Result<Self> {
        PiecewisePoly::new(vec![0.0, end], vec![p])
    }

    pub fn constant(c: F, end: f64) -> Result<Self> {
        PiecewisePoly::global(Poly::constant(c), end)
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Poly<F>] {
        &self.pieces
    }

    pub fn end(&self) -> f64 {
        self.breaks[self.breaks.len() - 1]
    }

    fn local(&self, i: usize, t: f64) -> F {
        F::from_real(t) - F::from_real(self.breaks[i])
    }

    /// Value at `t` (left-continuous). Past `end` the last piece is extended.
    pub fn eval(&self, t: f64) -> F {
        if t <= 0.0 {
            return self.origin.clone();
        }
        // first break >= t, the piece to its left owns t
        let k = self.breaks.partition_point(|&b| b < t);
        let i = k.saturating_sub(1).min(self.pieces.len() - 1);
        self.pieces[i].eval(&self.local(i, t))
    }

    /// Right limit at `t`.
    pub fn eval_right(&self, t: f64) -> F {
        if t >= self.end() {
            return self.eval(t);
        }
        let k = self.breaks.partition_point(|&b| b <= t);
        let i = k.saturating_sub(1);
        self.pieces[i].eval(&self.local(i, t))
    }

    /// Re-expresses the function on `grid`, which must contain every breakpoint
    /// and end at the same point.
    pub fn refine(&self, grid: &[f64]) -> Self {
        debug_assert_eq!(grid.first().copied(), Some(0.0));
        debug_assert_eq!(grid.last().copied(), Some(self.end()));
        let mut pieces = Vec::with_capacity(grid.len() - 1);
        let mut i = 0;
        for w in grid.windows(2) {
            while i + 1 < self.pieces.len() && self.breaks[i + 1] <= w[0] {
                i += 1;
            }
            pieces.push(self.pieces[i].shift(&self.local(i, w[0])));
        }
        PiecewisePoly {
            breaks: grid.to_vec(),
            pieces,
            origin: self.origin.clone(),
        }
    }

    /// Pointwise product on the merged grid; both operands must share `end`.
    pub fn mul(&self, other: &Self) -> Self {
        let grid = merge_grids(&self.breaks, &other.breaks);
        let a = self.refine(&grid);
        let b = other.refine(&grid);
        let pieces = a.pieces.iter().zip(&b.pieces).map(|(p, q)| p * q).collect();
        PiecewisePoly {
            breaks: grid,
            pieces,
            origin: a.origin * b.origin,
        }
    }

    /// Restriction to `[0, end]` for `end` inside the current domain.
    pub fn truncate(&self, end: f64) -> Result<Self> {
        if !(end > 0.0 && end <= self.end()) {
            return Err(Error::OutOfRange {
                x: end,
                limit: self.end(),
            });
        }
        let k = self.breaks.partition_point(|&b| b < end);
        let mut breaks = self.breaks[..k].to_vec();
        breaks.push(end);
        let pieces = self.pieces[..k].to_vec();
        Ok(PiecewisePoly {
            breaks,
            pieces,
            origin: self.origin.clone(),
        })
    }
}

/// Sorted union of two grids (exact duplicates collapsed).
pub(crate) fn merge_grids(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = a.iter().chain(b).copied().collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}
