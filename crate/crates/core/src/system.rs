//! Validated pairs of measures, their classification, canonical continuation
//! and dual.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::measure::{L2Integrand, L2Norm, StieltjesMeasure};
use crate::poly::merge_grids;

/// Normalized Gram determinants at or below this are treated as zero.
pub const DEFINITENESS_THRESHOLD: f64 = 1e-12;

/// Whether construction insists on the definiteness condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admission {
    Strict,
    /// Keeps systems whose `1` and `R₁` are dependent in `L²(R₂)`. Their
    /// fundamental matrix and coefficients are still well defined, which is
    /// what the one-atom examples rely on.
    AllowIndefinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    Singular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndpointType {
    LimitPoint,
    LimitCircle,
}

/// The two `L²(R₂)` verdicts behind the limit-point/limit-circle decision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witnesses {
    pub one: L2Norm,
    pub r1: L2Norm,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub regularity: Regularity,
    pub endpoint_type: EndpointType,
    pub witnesses: Witnesses,
}

/// One elementary piece of the propagation over `[from, to)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Step {
    R1Atom(f64),
    R2Atom(f64),
    /// Constant densities `alpha` of `dR₁` and `beta` of `dR₂` on
    /// `[start, start + len)`.
    Segment {
        start: f64,
        alpha: f64,
        beta: f64,
        len: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralSystem {
    r1: StieltjesMeasure,
    r2: StieltjesMeasure,
    endpoint: f64,
    admission: Admission,
    definite: bool,
}

impl IntegralSystem {
    /// Strict validation with an inferred endpoint.
    pub fn validate(r1: StieltjesMeasure, r2: StieltjesMeasure) -> Result<Self> {
        IntegralSystem::new(r1, r2, None, Admission::Strict)
    }

    /// Like [`validate`](Self::validate) but keeps indefinite pairs.
    pub fn admit(r1: StieltjesMeasure, r2: StieltjesMeasure) -> Result<Self> {
        IntegralSystem::new(r1, r2, None, Admission::AllowIndefinite)
    }

    /// Full constructor.
    ///
    /// Without an explicit endpoint, `b` is infinite when either measure has
    /// a tail or an atom sits at the last representation point, and the
    /// furthest `b_rep` otherwise. A finite endpoint must leave every atom
    /// strictly inside `[0, b)`.
    pub fn new(
        r1: StieltjesMeasure,
        r2: StieltjesMeasure,
        endpoint: Option<f64>,
        admission: Admission,
    ) -> Result<Self> {
        if let Some(p) = r1
            .atoms()
            .iter()
            .map(|a| a.position)
            .find(|&p| r2.atom_mass(p).is_some())
        {
            return Err(Error::CommonAtom(p));
        }

        let has_tail = r1.has_tail() || r2.has_tail();
        let last_atom = r1
            .atoms()
            .iter()
            .chain(r2.atoms())
            .map(|a| a.position)
            .fold(f64::NEG_INFINITY, f64::max);
        let last_segment = r1
            .segments()
            .iter()
            .chain(r2.segments())
            .map(|s| s.end)
            .fold(f64::NEG_INFINITY, f64::max);
        let b_fin = r1.b_rep().max(r2.b_rep());

        let endpoint = match endpoint {
            Some(e) if e.is_nan() || e <= 0.0 => {
                return Err(Error::InvalidEndpoint {
                    endpoint: e,
                    reason: "endpoint must be positive",
                })
            }
            Some(e) if e.is_infinite() => e,
            Some(e) => {
                if has_tail {
                    return Err(Error::InvalidEndpoint {
                        endpoint: e,
                        reason: "a tail density needs an infinite endpoint",
                    });
                }
                if last_atom >= e {
                    return Err(Error::InvalidEndpoint {
                        endpoint: e,
                        reason: "an atom sits at or beyond the endpoint",
                    });
                }
                if last_segment > e {
                    return Err(Error::InvalidEndpoint {
                        endpoint: e,
                        reason: "a segment extends beyond the endpoint",
                    });
                }
                e
            }
            None if has_tail || last_atom >= b_fin || b_fin == 0.0 => f64::INFINITY,
            None => b_fin,
        };

        let mut system = IntegralSystem {
            r1,
            r2,
            endpoint,
            admission,
            definite: false,
        };
        system.definite = system.definiteness_margin() > DEFINITENESS_THRESHOLD;
        if admission == Admission::Strict && !system.definite {
            return Err(Error::Indefinite);
        }
        Ok(system)
    }

    pub fn r1(&self) -> &StieltjesMeasure {
        &self.r1
    }

    pub fn r2(&self) -> &StieltjesMeasure {
        &self.r2
    }

    /// The right endpoint `b`, possibly infinite.
    pub fn endpoint(&self) -> f64 {
        self.endpoint
    }

    pub fn admission(&self) -> Admission {
        self.admission
    }

    pub fn is_definite(&self) -> bool {
        self.definite
    }

    pub fn is_regular(&self) -> bool {
        self.r1.is_finite() && self.r2.is_finite()
    }

    /// Furthest representation point of the two measures; past it only the
    /// tails act.
    pub fn b_rep(&self) -> f64 {
        self.r1.b_rep().max(self.r2.b_rep())
    }

    /// The point at which the regular closed forms are evaluated (right
    /// value): the endpoint when finite, `b_rep` otherwise.
    pub fn closing_point(&self) -> f64 {
        if self.endpoint.is_finite() {
            self.endpoint
        } else {
            self.b_rep()
        }
    }

    /// Sorted union of both measures' breakpoints.
    pub fn breakpoints(&self) -> Vec<f64> {
        merge_grids(&self.r1.breakpoints(), &self.r2.breakpoints())
    }

    /// Largest normalized Gram determinant `1 − G₁₂²/(G₁₁G₂₂)` of `{1, R₁}`
    /// in `L²(R₂)` over prefixes `[0, t)` ending at breakpoints.
    pub fn definiteness_margin(&self) -> f64 {
        let mut ends: Vec<f64> = self
            .breakpoints()
            .into_iter()
            .filter(|&t| t > 0.0 && t <= self.endpoint)
            .collect();
        let last = self.b_rep();
        if self.endpoint.is_finite() {
            ends.push(self.endpoint);
        } else {
            ends.push(last + 1.0);
        }
        let end = ends.iter().copied().fold(0.0, f64::max);
        let r = self.r1.cdf_profile::<f64>(end);
        let r_sq = r.mul(&r);
        let mut best: f64 = 0.0;
        for &t in &ends {
            let g11 = self.r2.eval_left(t);
            let g12 = self.r2.integrate_poly(&r, t);
            let g22 = self.r2.integrate_poly(&r_sq, t);
            if g11 > 0.0 && g22 > 0.0 {
                best = best.max(1.0 - g12 * g12 / (g11 * g22));
            }
        }
        best
    }

    pub fn classify(&self) -> Classification {
        let witnesses = Witnesses {
            one: self.r2.l2_membership(L2Integrand::One),
            r1: self.r2.l2_membership(L2Integrand::Cdf(&self.r1)),
        };
        let regularity = if self.is_regular() {
            Regularity::Regular
        } else {
            Regularity::Singular
        };
        let endpoint_type = if witnesses.one.is_finite() && witnesses.r1.is_finite() {
            EndpointType::LimitCircle
        } else {
            EndpointType::LimitPoint
        };
        Classification {
            regularity,
            endpoint_type,
            witnesses,
        }
    }

    /// `R₁` frozen at `R₁(b)`, `R₂` continued by `R₂(b) + x − b`.
    pub fn canonical_continuation(&self) -> Result<Self> {
        if !self.is_regular() {
            return Err(Error::NotRegular);
        }
        let b = self.closing_point();
        let r2 = self.r2.with_tail(1.0, b)?;
        IntegralSystem::new(self.r1.clone(), r2, None, self.admission)
    }

    /// The system with the roles of the measures exchanged; a regular system
    /// is continued first.
    pub fn dual(&self) -> Result<Self> {
        let singular = if self.is_regular() {
            self.canonical_continuation()?
        } else {
            self.clone()
        };
        IntegralSystem::new(singular.r2, singular.r1, None, self.admission)
    }

    /// Plain swap without validation or continuation, for conjugation checks.
    pub(crate) fn swapped(&self) -> Self {
        IntegralSystem {
            r1: self.r2.clone(),
            r2: self.r1.clone(),
            endpoint: self.endpoint,
            admission: Admission::AllowIndefinite,
            definite: false,
        }
    }

    /// Elementary pieces of `[from, to)` in order. An atom at `from` comes
    /// first, an atom at `to` is left out.
    pub fn steps(&self, from: f64, to: f64) -> Vec<Step> {
        let mut out = Vec::new();
        if !(from < to) {
            return out;
        }
        let mut grid = vec![from];
        grid.extend(
            self.breakpoints()
                .into_iter()
                .filter(|&t| t > from && t < to),
        );
        grid.push(to);
        for w in grid.windows(2) {
            let (u, v) = (w[0], w[1]);
            if let Some(m) = self.r1.atom_mass(u) {
                out.push(Step::R1Atom(m));
            } else if let Some(m) = self.r2.atom_mass(u) {
                out.push(Step::R2Atom(m));
            }
            let alpha = self.r1.density_at(u);
            let beta = self.r2.density_at(u);
            if alpha > 0.0 || beta > 0.0 {
                out.push(Step::Segment {
                    start: u,
                    alpha,
                    beta,
                    len: v - u,
                });
            }
        }
        out
    }

    /// The atom sitting exactly at `x`, if any.
    pub fn atom_at(&self, x: f64) -> Option<Step> {
        self.r1
            .atom_mass(x)
            .map(Step::R1Atom)
            .or_else(|| self.r2.atom_mass(x).map(Step::R2Atom))
    }
}
