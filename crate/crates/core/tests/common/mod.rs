//! Seeded generators of random systems with dyadic data, so that sums of
//! positions, masses and densities stay exact in floating point.

#![allow(dead_code)]

use kw_core::{IntegralSystem, StieltjesMeasure};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const SPAN: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// No tails.
    Regular,
    /// Tail on `R₁` only.
    LimitCircle,
    /// Tails on both measures.
    LimitPoint,
    /// Atoms only, no densities or tails.
    Atomic,
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `k / den` with `k` uniform in `lo..=hi`.
pub fn dyadic(rng: &mut StdRng, lo: u32, hi: u32, den: f64) -> f64 {
    f64::from(rng.gen_range(lo..=hi)) / den
}

struct Parts {
    atoms: Vec<(f64, f64)>,
    segments: Vec<(f64, f64, f64)>,
}

fn draw_parts(rng: &mut StdRng, taken: &[f64], with_density: bool) -> Parts {
    let mut atoms = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let p = dyadic(rng, 0, (SPAN * 8.0) as u32, 8.0);
        if !taken.contains(&p) && !atoms.iter().any(|&(q, _)| q == p) {
            atoms.push((p, dyadic(rng, 1, 16, 8.0)));
        }
    }
    let mut segments = Vec::new();
    if with_density {
        let mut t = 0.0;
        while t < SPAN {
            let w = dyadic(rng, 1, 2, 4.0).min(SPAN - t);
            if rng.gen_bool(0.6) {
                segments.push((t, t + w, dyadic(rng, 1, 8, 8.0)));
            }
            t += w;
        }
    }
    Parts { atoms, segments }
}

fn build(parts: &Parts, tail: f64) -> StieltjesMeasure {
    let b_rep = if tail > 0.0 { Some(SPAN) } else { None };
    StieltjesMeasure::from_parts(&parts.atoms, &parts.segments, tail, b_rep).expect("generated measure is valid")
}

/// A strictly valid random system of the given kind.
pub fn random_system(rng: &mut StdRng, kind: Kind) -> IntegralSystem {
    loop {
        let dense = kind != Kind::Atomic;
        let p1 = draw_parts(rng, &[], dense);
        let taken: Vec<f64> = p1.atoms.iter().map(|a| a.0).collect();
        let p2 = draw_parts(rng, &taken, dense);
        let (t1, t2) = match kind {
            Kind::Regular | Kind::Atomic => (0.0, 0.0),
            Kind::LimitCircle => (dyadic(rng, 2, 4, 4.0), 0.0),
            Kind::LimitPoint => (dyadic(rng, 2, 4, 4.0), dyadic(rng, 2, 4, 4.0)),
        };
        let r1 = build(&p1, t1);
        let r2 = build(&p2, t2);
        if kind == Kind::LimitCircle && r2.total_variation() == 0.0 {
            continue;
        }
        if let Ok(s) = IntegralSystem::validate(r1, r2) {
            return s;
        }
    }
}

pub fn random_kind(rng: &mut StdRng) -> Kind {
    [Kind::Regular, Kind::LimitCircle, Kind::LimitPoint, Kind::Atomic][rng.gen_range(0..4)]
}

/// A random evaluation point in `[0, min(endpoint, b_rep + 1)]` on a 1/16 grid;
/// lands on atoms now and then.
pub fn sample_point(rng: &mut StdRng, system: &IntegralSystem) -> f64 {
    let top = (system.b_rep() + 1.0).min(system.endpoint());
    let n = (top * 16.0) as u32;
    f64::from(rng.gen_range(0..=n)) / 16.0
}
