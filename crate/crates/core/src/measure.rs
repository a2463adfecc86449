//! Lebesgue–Stieltjes measures made of atoms, piecewise-constant densities
//! and an optional constant tail.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, MeasureDefect, Result};
use crate::field::Field;
use crate::poly::{merge_grids, PiecewisePoly, Poly};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    pub position: f64,
    pub mass: f64,
}

/// Constant density on the half-open interval `[start, end)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub density: f64,
}

/// The measure `dR` of a left-continuous non-decreasing `R` with `R(0) = 0`.
///
/// Everything beyond `b_rep` is described by `tail_density`; a positive tail
/// makes the measure infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct StieltjesMeasure {
    atoms: Vec<Atom>,
    segments: Vec<Segment>,
    tail_density: f64,
    b_rep: f64,
}

/// Integrands accepted by [`StieltjesMeasure::l2_membership`].
#[derive(Clone, Copy, Debug)]
pub enum L2Integrand<'a> {
    One,
    /// The distribution function of another measure.
    Cdf(&'a StieltjesMeasure),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum L2Norm {
    /// The squared norm.
    Finite(f64),
    Infinite,
}

impl L2Norm {
    pub fn is_finite(&self) -> bool {
        matches!(self, L2Norm::Finite(_))
    }
}

impl StieltjesMeasure {
    /// Sorts and validates the parts. `b_rep` defaults to the furthest atom
    /// or segment end (0 for an empty description).
    pub fn new(
        mut atoms: Vec<Atom>,
        mut segments: Vec<Segment>,
        tail_density: f64,
        b_rep: Option<f64>,
    ) -> Result<Self> {
        for a in &atoms {
            if !a.position.is_finite() || !a.mass.is_finite() {
                return Err(MeasureDefect::NonFinite.into());
            }
            if a.position < 0.0 {
                return Err(MeasureDefect::NegativePosition(a.position).into());
            }
            if a.mass <= 0.0 {
                return Err(MeasureDefect::NonPositiveMass {
                    position: a.position,
                    mass: a.mass,
                }
                .into());
            }
        }
        for s in &segments {
            if !(s.start.is_finite() && s.end.is_finite() && s.density.is_finite()) {
                return Err(MeasureDefect::NonFinite.into());
            }
            if s.start < 0.0 {
                return Err(MeasureDefect::NegativePosition(s.start).into());
            }
            if s.end <= s.start {
                return Err(MeasureDefect::EmptySegment {
                    start: s.start,
                    end: s.end,
                }
                .into());
            }
            if s.density < 0.0 {
                return Err(MeasureDefect::NegativeDensity(s.density).into());
            }
        }
        if !tail_density.is_finite() {
            return Err(MeasureDefect::NonFinite.into());
        }
        if tail_density < 0.0 {
            return Err(MeasureDefect::NegativeTail(tail_density).into());
        }

        atoms.sort_by(|a, b| a.position.total_cmp(&b.position));
        segments.sort_by(|a, b| a.start.total_cmp(&b.start));
        if let Some(w) = atoms.windows(2).find(|w| w[0].position == w[1].position) {
            return Err(MeasureDefect::DuplicateAtom(w[0].position).into());
        }
        if let Some(w) = segments.windows(2).find(|w| w[1].start < w[0].end) {
            return Err(MeasureDefect::OverlappingSegments {
                first_end: w[0].end,
                second_start: w[1].start,
            }
            .into());
        }

        let furthest = atoms
            .iter()
            .map(|a| a.position)
            .chain(segments.iter().map(|s| s.end))
            .fold(0.0, f64::max);
        let b_rep = match b_rep {
            None => furthest,
            Some(b) if !b.is_finite() => return Err(MeasureDefect::NonFinite.into()),
            Some(b) if b < 0.0 => return Err(MeasureDefect::NegativePosition(b).into()),
            Some(b) => {
                if furthest > b {
                    return Err(MeasureDefect::OutsideRepresentation {
                        position: furthest,
                        b_rep: b,
                    }
                    .into());
                }
                b
            }
        };

        Ok(StieltjesMeasure {
            atoms,
            segments,
            tail_density,
            b_rep,
        })
    }

    /// Builds from `(position, mass)` and `(start, end, density)` tuples.
    pub fn from_parts(
        atoms: &[(f64, f64)],
        segments: &[(f64, f64, f64)],
        tail_density: f64,
        b_rep: Option<f64>,
    ) -> Result<Self> {
        StieltjesMeasure::new(
            atoms
                .iter()
                .map(|&(position, mass)| Atom { position, mass })
                .collect(),
            segments
                .iter()
                .map(|&(start, end, density)| Segment {
                    start,
                    end,
                    density,
                })
                .collect(),
            tail_density,
            b_rep,
        )
    }

    pub fn zero() -> Self {
        StieltjesMeasure {
            atoms: Vec::new(),
            segments: Vec::new(),
            tail_density: 0.0,
            b_rep: 0.0,
        }
    }

    /// `R(x) = x` on `[0, ∞)`.
    pub fn lebesgue() -> Self {
        StieltjesMeasure::tail(1.0)
    }

    /// Constant density on `[0, ∞)`.
    pub fn tail(density: f64) -> Self {
        StieltjesMeasure::new(Vec::new(), Vec::new(), density, Some(0.0))
            .expect("tail density must be finite and non-negative")
    }

    pub fn point(position: f64, mass: f64) -> Result<Self> {
        StieltjesMeasure::from_parts(&[(position, mass)], &[], 0.0, None)
    }

    pub fn uniform(start: f64, end: f64, density: f64) -> Result<Self> {
        StieltjesMeasure::from_parts(&[], &[(start, end, density)], 0.0, None)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn tail_density(&self) -> f64 {
        self.tail_density
    }

    pub fn b_rep(&self) -> f64 {
        self.b_rep
    }

    pub fn has_tail(&self) -> bool {
        self.tail_density > 0.0
    }

    pub fn is_finite(&self) -> bool {
        !self.has_tail()
    }

    /// Copy with a different tail starting at a different `b_rep`.
    pub fn with_tail(&self, tail_density: f64, b_rep: f64) -> Result<Self> {
        StieltjesMeasure::new(
            self.atoms.clone(),
            self.segments.clone(),
            tail_density,
            Some(b_rep),
        )
    }

    fn density_mass(&self, x: f64) -> f64 {
        let mut total = 0.0;
        for s in &self.segments {
            if x <= s.start {
                break;
            }
            total += s.density * (x.min(s.end) - s.start);
        }
        if self.tail_density > 0.0 && x > self.b_rep {
            total += self.tail_density * (x - self.b_rep);
        }
        total
    }

    /// `R(x) = dR([0, x))`.
    pub fn eval_left(&self, x: f64) -> f64 {
        let atoms: f64 = self
            .atoms
            .iter()
            .take_while(|a| a.position < x)
            .map(|a| a.mass)
            .sum();
        atoms + self.density_mass(x)
    }

    /// `R₊(x) = dR([0, x])`.
    pub fn eval_right(&self, x: f64) -> f64 {
        let atoms: f64 = self
            .atoms
            .iter()
            .take_while(|a| a.position <= x)
            .map(|a| a.mass)
            .sum();
        atoms + self.density_mass(x)
    }

    /// `R(b)`, infinite when a tail is present.
    pub fn total_variation(&self) -> f64 {
        if self.has_tail() {
            f64::INFINITY
        } else {
            self.eval_right(self.b_rep)
        }
    }

    pub fn atom_mass(&self, position: f64) -> Option<f64> {
        self.atoms
            .binary_search_by(|a| a.position.total_cmp(&position))
            .ok()
            .map(|i| self.atoms[i].mass)
    }

    /// Density of the absolutely continuous part on `[t, t + ε)`.
    pub fn density_at(&self, t: f64) -> f64 {
        if t >= self.b_rep {
            return self.tail_density;
        }
        let k = self.segments.partition_point(|s| s.start <= t);
        match k.checked_sub(1).map(|i| &self.segments[i]) {
            Some(s) if t < s.end => s.density,
            _ => 0.0,
        }
    }

    /// 0, `b_rep`, every atom position and every segment end, sorted.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![0.0, self.b_rep];
        pts.extend(self.atoms.iter().map(|a| a.position));
        for s in &self.segments {
            pts.push(s.start);
            pts.push(s.end);
        }
        merge_grids(&pts, &[])
    }

    /// `inf supp dR`.
    pub fn inf_support(&self) -> Result<f64> {
        let atom = self.atoms.first().map(|a| a.position);
        let seg = self
            .segments
            .iter()
            .find(|s| s.density > 0.0)
            .map(|s| s.start);
        let tail = self.has_tail().then_some(self.b_rep);
        [atom, seg, tail]
            .into_iter()
            .flatten()
            .reduce(f64::min)
            .ok_or(Error::ZeroMeasure)
    }

    /// `sup supp dR`; infinite with a tail, `ZeroMeasure` for the zero measure.
    pub fn support_end(&self) -> Result<f64> {
        if self.has_tail() {
            return Ok(f64::INFINITY);
        }
        let atom = self.atoms.last().map(|a| a.position);
        let seg = self
            .segments
            .iter()
            .rev()
            .find(|s| s.density > 0.0)
            .map(|s| s.end);
        [atom, seg]
            .into_iter()
            .flatten()
            .reduce(f64::max)
            .ok_or(Error::ZeroMeasure)
    }

    /// Intervals `[a, c)` inside `[from, to)` on which the density is a
    /// positive constant `d`.
    fn density_runs(&self, from: f64, to: f64) -> Vec<(f64, f64, f64)> {
        let mut runs = Vec::new();
        for s in &self.segments {
            let (a, c) = (s.start.max(from), s.end.min(to));
            if s.density > 0.0 && a < c {
                runs.push((a, c, s.density));
            }
        }
        let a = self.b_rep.max(from);
        if self.has_tail() && a < to {
            runs.push((a, to, self.tail_density));
        }
        runs
    }

    /// `∫_{[0,x)} f dR`, exact up to the arithmetic of `F`.
    ///
    /// Atoms see the value `f(p)`; `f` is extended past its last breakpoint
    /// by its last piece.
    pub fn integrate_poly<F: Field>(&self, f: &PiecewisePoly<F>, x: f64) -> F {
        self.integrate_poly_between(f, 0.0, x)
    }

    /// `∫_{[from,to)} f dR`.
    pub fn integrate_poly_between<F: Field>(&self, f: &PiecewisePoly<F>, from: f64, to: f64) -> F {
        let mut total = F::zero();
        for a in &self.atoms {
            if a.position >= to {
                break;
            }
            if a.position >= from {
                total = total + f.eval(a.position) * F::from_real(a.mass);
            }
        }
        let breaks = f.breaks();
        let last = f.pieces().len() - 1;
        for (a, c, d) in self.density_runs(from, to) {
            let mut cuts = vec![a];
            cuts.extend(breaks.iter().copied().filter(|&t| t > a && t < c));
            cuts.push(c);
            let d = F::from_real(d);
            for w in cuts.windows(2) {
                // piece owning (w0, w1]
                let i = breaks.partition_point(|&t| t < w[1]).saturating_sub(1).min(last);
                let anti = f.pieces()[i].antiderivative();
                let origin = F::from_real(breaks[i]);
                let hi = anti.eval(&(F::from_real(w[1]) - origin.clone()));
                let lo = anti.eval(&(F::from_real(w[0]) - origin));
                total = total + d.clone() * (hi - lo);
            }
        }
        total
    }

    /// The left-continuous function `t ↦ ∫_{[0,t)} f dR` on `[0, end]`.
    pub fn antiderivative<F: Field>(&self, f: &PiecewisePoly<F>, end: f64) -> PiecewisePoly<F> {
        let mut grid = vec![0.0];
        grid.extend(
            merge_grids(f.breaks(), &self.breakpoints())
                .into_iter()
                .filter(|&t| t > 0.0 && t < end),
        );
        grid.push(end);
        let breaks = f.breaks();
        let last = f.pieces().len() - 1;

        let mut pieces = Vec::with_capacity(grid.len() - 1);
        let mut value = F::zero();
        for w in grid.windows(2) {
            let (t0, t1) = (w[0], w[1]);
            // value just after t0 includes an atom sitting at t0
            if let Some(m) = self.atom_mass(t0) {
                value = value + f.eval(t0) * F::from_real(m);
            }
            let d = self.density_at(t0);
            let i = breaks.partition_point(|&t| t < t1).saturating_sub(1).min(last);
            let piece = f.pieces()[i].shift(&(F::from_real(t0) - F::from_real(breaks[i])));
            let growth = if d > 0.0 {
                piece.antiderivative().scale(&F::from_real(d))
            } else {
                Poly::zero()
            };
            let p = &Poly::constant(value.clone()) + &growth;
            value = p.eval(&(F::from_real(t1) - F::from_real(t0)));
            pieces.push(p);
        }
        PiecewisePoly::new(grid, pieces)
            .expect("grid is strictly increasing from 0")
            .with_origin(F::zero())
    }

    /// `R` itself as a piecewise polynomial on `[0, end]`.
    pub fn cdf_profile<F: Field>(&self, end: f64) -> PiecewisePoly<F> {
        let one = PiecewisePoly::constant(F::one(), end).expect("end must be positive");
        self.antiderivative(&one, end)
    }

    /// Decides whether `∫ |f|² dR < ∞` over the whole half-line and returns
    /// the value when it is.
    pub fn l2_membership(&self, f: L2Integrand<'_>) -> L2Norm {
        match f {
            L2Integrand::One => {
                if self.has_tail() {
                    L2Norm::Infinite
                } else {
                    L2Norm::Finite(self.total_variation())
                }
            }
            L2Integrand::Cdf(profile) => {
                if self.has_tail() {
                    // f is eventually R(∞) or unbounded
                    if profile.has_tail() || profile.total_variation() > 0.0 {
                        return L2Norm::Infinite;
                    }
                    return L2Norm::Finite(0.0);
                }
                let end = self.b_rep + 1.0;
                let r = profile.cdf_profile::<f64>(end);
                L2Norm::Finite(self.integrate_poly(&r.mul(&r), end))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_and_right_values() {
        let m = StieltjesMeasure::point(0.0, 2.5).unwrap();
        assert_eq!(m.eval_left(0.0), 0.0);
        assert_eq!(m.eval_right(0.0), 2.5);
        assert_eq!(m.eval_left(1.0), 2.5);
        assert_eq!(StieltjesMeasure::lebesgue().eval_left(3.5), 3.5);
        let d = StieltjesMeasure::uniform(0.0, 1.0, 2.0).unwrap();
        assert_eq!(d.eval_right(0.5), 1.0);
        assert_eq!(d.eval_left(0.5), 1.0);
        let a = StieltjesMeasure::point(1.0, 3.0).unwrap();
        assert_eq!(a.eval_right(1.0), 3.0);
        assert_eq!(a.eval_left(1.0), 0.0);
    }

    #[test]
    fn integrates_polynomials() {
        let sq = PiecewisePoly::global(Poly::from_coeffs(vec![0.0, 0.0, 1.0]), 3.0).unwrap();
        assert_eq!(StieltjesMeasure::point(2.0, 5.0).unwrap().integrate_poly(&sq, 3.0), 20.0);
        let one = PiecewisePoly::constant(1.0, 1.0).unwrap();
        assert_eq!(StieltjesMeasure::uniform(0.0, 1.0, 1.0).unwrap().integrate_poly(&one, 1.0), 1.0);
        let t = PiecewisePoly::global(Poly::linear(0.0, 1.0), 2.0).unwrap();
        assert_eq!(StieltjesMeasure::uniform(0.0, 2.0, 1.0).unwrap().integrate_poly(&t, 2.0), 2.0);
    }

    #[test]
    fn l2_verdicts() {
        let atom = StieltjesMeasure::point(0.0, 1.5).unwrap();
        let x = StieltjesMeasure::lebesgue();
        assert_eq!(atom.l2_membership(L2Integrand::Cdf(&x)), L2Norm::Finite(0.0));
        assert_eq!(x.l2_membership(L2Integrand::One), L2Norm::Infinite);
        let unit = StieltjesMeasure::uniform(0.0, 1.0, 1.0).unwrap();
        assert_eq!(unit.l2_membership(L2Integrand::One), L2Norm::Finite(1.0));
        // ∫_0^1 t² dt
        let v = match unit.l2_membership(L2Integrand::Cdf(&x)) {
            L2Norm::Finite(v) => v,
            L2Norm::Infinite => panic!("finite weight"),
        };
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(x.l2_membership(L2Integrand::Cdf(&StieltjesMeasure::zero())), L2Norm::Finite(0.0));
    }

    #[test]
    fn support_bounds() {
        assert_eq!(StieltjesMeasure::point(0.7, 1.0).unwrap().inf_support(), Ok(0.7));
        assert_eq!(StieltjesMeasure::uniform(0.2, 1.0, 1.0).unwrap().inf_support(), Ok(0.2));
        let mixed = StieltjesMeasure::from_parts(&[(0.5, 1.0)], &[(0.1, 0.3, 2.0)], 0.0, None).unwrap();
        assert_eq!(mixed.inf_support(), Ok(0.1));
        assert_eq!(mixed.support_end(), Ok(0.5));
        assert_eq!(StieltjesMeasure::zero().inf_support(), Err(Error::ZeroMeasure));
    }

    #[test]
    fn rejects_defects() {
        let bad = |atoms: &[(f64, f64)], segs: &[(f64, f64, f64)], tail: f64, b: Option<f64>| {
            StieltjesMeasure::from_parts(atoms, segs, tail, b).unwrap_err()
        };
        assert!(matches!(
            bad(&[(1.0, 0.0)], &[], 0.0, None),
            Error::InvalidMeasure(MeasureDefect::NonPositiveMass { .. })
        ));
        assert!(matches!(
            bad(&[(1.0, 1.0), (1.0, 2.0)], &[], 0.0, None),
            Error::InvalidMeasure(MeasureDefect::DuplicateAtom(_))
        ));
        assert!(matches!(
            bad(&[], &[(0.0, 2.0, 1.0), (1.0, 3.0, 1.0)], 0.0, None),
            Error::InvalidMeasure(MeasureDefect::OverlappingSegments { .. })
        ));
        assert!(matches!(
            bad(&[(2.0, 1.0)], &[], 1.0, Some(1.0)),
            Error::InvalidMeasure(MeasureDefect::OutsideRepresentation { .. })
        ));
        assert!(matches!(
            bad(&[], &[], -1.0, None),
            Error::InvalidMeasure(MeasureDefect::NegativeTail(_))
        ));
        assert!(matches!(
            bad(&[(f64::NAN, 1.0)], &[], 0.0, None),
            Error::InvalidMeasure(MeasureDefect::NonFinite)
        ));
    }

    #[test]
    fn antiderivative_jumps_after_atoms() {
        let m = StieltjesMeasure::from_parts(&[(0.0, 2.0), (1.0, 3.0)], &[(0.5, 1.5, 1.0)], 0.0, None)
            .unwrap();
        let r = m.cdf_profile::<f64>(2.0);
        for t in [0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0] {
            assert!((r.eval(t) - m.eval_left(t)).abs() < 1e-15, "t = {t}");
            assert!((r.eval_right(t) - m.eval_right(t)).abs() < 1e-15, "t = {t}");
        }
    }
}
