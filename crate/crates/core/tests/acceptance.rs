//! Acceptance checks. Each criterion prints one PASS/FAIL line; run with
//! `cargo test -p kw-core --test acceptance -- --nocapture` to see them.

mod common;

use common::{dyadic, random_kind, random_system, rng, sample_point, Kind};
use kw_core::propagator::{
    check_green, check_kernel_identity, check_wronskian, fundamental_matrix, monodromy_polynomial, series_coefficients,
};
use kw_core::weyl::{disc_radius_by_integral, membership_integral, slp_diagnostic};
use kw_core::{
    check_duality_identity, neumann_asymptotics, neumann_m, principal_q, weyl_disc,
    AsymptoticProbe, Field, IntegralSystem, Poly, QOptions, StieltjesMeasure, C64,
};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn q(v: f64) -> BigRational {
    BigRational::from_real(v)
}

fn string_atom(m0: f64) -> IntegralSystem {
    IntegralSystem::admit(StieltjesMeasure::lebesgue(), StieltjesMeasure::point(0.0, m0).unwrap()).unwrap()
}

fn fleet(seed: u64, n: usize) -> Vec<IntegralSystem> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let k = random_kind(&mut r);
            random_system(&mut r, k)
        })
        .collect()
}

fn monodromy_cell() -> Outcome {
    let cells = [(1.0, 1.0), (0.5, 2.0), (0.1, 3.0), (1.0 / 3.0, 0.7), (2.5, 0.125)];
    for (m0, l1) in cells {
        let r1 = StieltjesMeasure::uniform(0.0, l1, 1.0).unwrap();
        let r2 = StieltjesMeasure::point(0.0, m0).unwrap();
        let s = IntegralSystem::admit(r1, r2).unwrap();
        let u = monodromy_polynomial::<BigRational>(&s, l1).map_err(|e| format!("{e}"))?;
        let lm = q(l1) * q(m0);
        let expected = [
            Poly::linear(BigRational::from_real(1.0), -lm),
            Poly::constant(q(l1)),
            Poly::linear(BigRational::zero(), -q(m0)),
            Poly::constant(q(1.0)),
        ];
        let got = [u.c1, u.s1, u.c2, u.s2];
        if got != expected {
            return Err(format!("cell m0 = {m0}, l1 = {l1}: {got:?}"));
        }
    }
    Ok(format!("{} cells reproduced exactly", cells.len()))
}

fn lambda_zero_ground_truth() -> Outcome {
    let mut r = rng(2);
    let systems = fleet(20, 50);
    let one = C64::new(1.0, 0.0);
    for s in &systems {
        for _ in 0..10 {
            let x = sample_point(&mut r, s);
            let u = fundamental_matrix(s, x, C64::zero()).map_err(|e| format!("{e}"))?;
            let r1 = s.r1().eval_left(x);
            if u.c1 != one || u.c2 != C64::zero() || u.s1 != C64::new(r1, 0.0) || u.s2 != one {
                return Err(format!("x = {x}: {u:?} against R1 = {r1}"));
            }
        }
    }
    Ok("50 systems x 10 points exact".into())
}

fn random_lambda(r: &mut rand::rngs::StdRng) -> C64 {
    C64::new(r.gen_range(-10.0..10.0), r.gen_range(-10.0..10.0))
}

fn wronskian_suite() -> Outcome {
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    for s in fleet(30, 50) {
        for _ in 0..20 {
            let x = sample_point(&mut r, &s);
            let l = random_lambda(&mut r);
            worst = worst.max(check_wronskian(&s, x, l).map_err(|e| format!("{e}"))?.max_residual());
        }
    }
    ensure(worst <= 1e-10, format!("max residual {worst:.3e} over 1000 samples"))
}

fn green_suite() -> Outcome {
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    for s in fleet(30, 50) {
        for _ in 0..20 {
            let x = sample_point(&mut r, &s);
            let (l, m) = (random_lambda(&mut r), random_lambda(&mut r));
            let g = check_green(&s, x, l, m).map_err(|e| format!("{e}"))?;
            let k = check_kernel_identity(&s, x, l, m).map_err(|e| format!("{e}"))?;
            worst = worst.max(g.max_residual()).max(k.residual);
        }
    }
    ensure(worst <= 1e-9, format!("max residual {worst:.3e} over 1000 samples"))
}

fn weyl_disc_law() -> Outcome {
    let mut r = rng(5);
    let lambdas = [C64::new(0.0, 1.0), C64::new(1.0, 2.0), C64::new(-1.0, 0.5)];
    let (mut radius_err, mut nest_err, mut member_err): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut count = 0;
    for i in 0..12 {
        let kind = [Kind::Regular, Kind::LimitCircle, Kind::LimitPoint][i % 3];
        let s = random_system(&mut r, kind);
        let a = s.r2().inf_support().unwrap();
        let top = s.endpoint().min(s.b_rep() + 1.0);
        if top <= a {
            continue;
        }
        let cuts: Vec<f64> = (1..=5).map(|k| a + (top - a) * f64::from(k) / 5.0).collect();
        for &lambda in &lambdas {
            let mut previous: Option<(C64, f64)> = None;
            for &l in &cuts {
                let d = weyl_disc(&s, l, lambda).map_err(|e| format!("{e}"))?;
                if !d.radius.is_finite() {
                    return Err(format!("no mass crossed at l = {l}"));
                }
                let (ri, _) = disc_radius_by_integral(&s, l, lambda).map_err(|e| format!("{e}"))?;
                radius_err = radius_err.max((ri - d.radius).abs() / d.radius);
                if let Some((c, rp)) = previous {
                    let gap: f64 = (d.center - c).norm() + d.radius - rp;
                    nest_err = nest_err.max(gap);
                }
                previous = Some((d.center, d.radius));
                for k in 0..6 {
                    let theta = std::f64::consts::TAU * f64::from(k) / 6.0 + 0.3;
                    let omega = d.center + C64::from_polar(d.radius, theta);
                    let target = omega.im / lambda.im;
                    let m = membership_integral(&s, l, lambda, omega).map_err(|e| format!("{e}"))?;
                    member_err = member_err.max((m - target).abs() / target.abs().max(1.0));
                }
                count += 1;
            }
        }
    }
    ensure(
        radius_err <= 1e-8 && nest_err <= 1e-9 && member_err <= 1e-7 && count > 0,
        format!(
            "{count} discs: radius rel err {radius_err:.2e}, nesting excess {nest_err:.2e}, membership residual {member_err:.2e}"
        ),
    )
}

fn closed_form_q() -> Outcome {
    let mut worst: f64 = 0.0;
    let lambdas = [C64::new(0.0, 1.0), C64::new(1.0, 1.0), C64::new(-2.0, 0.0), C64::new(-0.3, 2.0), C64::new(5.0, -1.0)];
    for m0 in [0.5, 1.0, 2.0, 3.7] {
        let s = string_atom(m0);
        for &l in &lambdas {
            let e = principal_q(&s, l, QOptions::default()).map_err(|e| format!("{e}"))?;
            worst = worst.max((e.value + 1.0 / (l * m0)).norm());
        }
    }
    if worst > 1e-10 {
        return Err(format!("one-atom string residual {worst:.2e}"));
    }
    let lebesgue = IntegralSystem::validate(StieltjesMeasure::lebesgue(), StieltjesMeasure::lebesgue()).unwrap();
    let opts = QOptions {
        tol: 1e-6,
        budget: 200,
    };
    let mut detail = format!("one-atom string residual {worst:.2e}");
    for t in [0.5, 1.0, 4.0] {
        let e = principal_q(&lebesgue, C64::new(-t, 0.0), opts).map_err(|e| format!("t = {t}: {e}"))?;
        let miss = (e.value - 1.0 / t.sqrt()).norm();
        if e.error_radius > 1e-6 || miss > e.error_radius + 4.0 * f64::EPSILON {
            return Err(format!("t = {t}: value {} radius {:.2e} miss {miss:.2e}", e.value, e.error_radius));
        }
        detail += &format!("; t = {t}: miss {miss:.1e} <= radius {:.1e}", e.error_radius);
    }
    Ok(detail)
}

fn duality_fleet() -> Vec<IntegralSystem> {
    let mut out = vec![string_atom(2.0)];
    let atoms = StieltjesMeasure::from_parts(&[(0.0, 1.0), (1.0, 0.5), (2.0, 2.0)], &[], 0.0, None).unwrap();
    out.push(IntegralSystem::validate(StieltjesMeasure::lebesgue(), atoms).unwrap());
    out.push(IntegralSystem::validate(StieltjesMeasure::lebesgue(), StieltjesMeasure::lebesgue()).unwrap());
    let mut r = rng(7);
    for kind in [Kind::Regular, Kind::LimitCircle, Kind::LimitPoint] {
        let mut added = 0;
        while added < 3 {
            let s = random_system(&mut r, kind);
            if s.dual().is_ok() {
                out.push(s);
                added += 1;
            }
        }
    }
    out
}

fn duality_identity() -> Outcome {
    let opts = QOptions {
        tol: 1e-10,
        budget: 200,
    };
    let systems = duality_fleet();
    let (mut excess, mut conj, mut branch): (f64, f64, f64) = (f64::NEG_INFINITY, 0.0, 0.0);
    for s in &systems {
        for lambda in [C64::new(0.0, 1.0), C64::new(1.0, 1.0), C64::new(-2.0, 0.0)] {
            let rep = check_duality_identity(s, lambda, opts).map_err(|e| format!("{e} at {lambda}"))?;
            let allowed = 2.0 * (rep.q.error_radius + rep.q_dual.error_radius) + 1e-8;
            excess = excess.max(rep.identity_residual - allowed);
            conj = conj.max(rep.conjugation_residual);
            if let Some(b) = rep.regular_branch_residual {
                branch = branch.max(b);
            }
        }
    }
    ensure(
        excess <= 0.0 && conj <= 1e-10 && branch <= 1e-8,
        format!(
            "{} systems: identity margin {:.2e}, conjugation {conj:.2e}, regular branch {branch:.2e}",
            systems.len(),
            -excess
        ),
    )
}

fn continuation_invariance() -> Outcome {
    let mut r = rng(8);
    let opts = QOptions {
        tol: 1e-10,
        budget: 200,
    };
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..10 {
        let s = random_system(&mut r, Kind::Regular);
        let cont = s.canonical_continuation().map_err(|e| format!("{e}"))?;
        for lambda in [C64::new(0.0, 1.0), C64::new(1.0, 1.0), C64::new(-2.0, 0.0), C64::new(-0.5, -3.0)] {
            let a = principal_q(&s, lambda, opts).map_err(|e| format!("{e}"))?;
            let b = principal_q(&cont, lambda, opts).map_err(|e| format!("{e}"))?;
            worst = worst.max((a.value - b.value).norm() - (a.error_radius + b.error_radius));
        }
    }
    ensure(worst <= 1e-9, format!("10 systems: largest excess over enclosure {worst:.2e}"))
}

fn asymptotics() -> Outcome {
    let mut r = rng(9);
    let opts = QOptions::default();
    let (mut far, mut near): (f64, f64) = (0.0, 0.0);
    let mut near_count = 0;
    for i in 0..15 {
        let kind = [Kind::Regular, Kind::LimitCircle, Kind::LimitPoint][i % 3];
        let s = random_system(&mut r, kind);
        let a = neumann_asymptotics(&s, AsymptoticProbe::MinusInfinity).map_err(|e| format!("{e}"))?;
        let m = neumann_m(&s, C64::new(-1e8, 0.0), opts).map_err(|e| format!("{e}"))?;
        far = far.max((m.value.re - a).abs() / (1.0 + a));
        if let Ok(limit) = neumann_asymptotics(&s, AsymptoticProbe::ZeroMinus) {
            let lambda = C64::new(-1e-8, 0.0);
            let m = neumann_m(&s, lambda, opts).map_err(|e| format!("{e}"))?;
            near = near.max(((lambda * m.value).re - limit).abs() / limit.abs());
            near_count += 1;
        }
    }
    ensure(
        far <= 1e-2 && near <= 1e-2 && near_count > 0,
        format!("lambda = -1e8: {far:.2e}; lambda = -1e-8 ({near_count} systems): {near:.2e}"),
    )
}

/// Iterated sums over atoms, straight from the definition.
fn iterated_atom_sums(s: &IntegralSystem, x: f64, order: usize) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut phi = Vec::new();
    let mut psi = Vec::new();
    for k in 0..=order {
        let (a, b) = iterated(s, x, k);
        phi.push(a);
        psi.push(b);
    }
    (phi, psi)
}

/// `(φₖ(x), ψₖ(x))` for a purely atomic system.
fn iterated(s: &IntegralSystem, x: f64, k: usize) -> (BigRational, BigRational) {
    if k == 0 {
        return (q(1.0), BigRational::zero());
    }
    let psi: BigRational = s
        .r2()
        .atoms()
        .iter()
        .filter(|a| a.position < x)
        .map(|a| q(a.mass) * iterated(s, a.position, k - 1).0)
        .fold(BigRational::zero(), |acc, v| acc + v);
    let phi: BigRational = s
        .r1()
        .atoms()
        .iter()
        .filter(|a| a.position < x)
        .map(|a| q(a.mass) * iterated(s, a.position, k).1)
        .fold(BigRational::zero(), |acc, v| acc + v);
    (phi, psi)
}

fn series_oracle() -> Outcome {
    let mut r = rng(10);
    let order = 6;
    let mut checked = 0;
    for _ in 0..20 {
        let s = random_system(&mut r, Kind::Atomic);
        for _ in 0..3 {
            let x = dyadic(&mut r, 0, 24, 8.0);
            let u = monodromy_polynomial::<BigRational>(&s, x).map_err(|e| format!("{e}"))?;
            let c = series_coefficients::<BigRational>(&s, x, order).map_err(|e| format!("{e}"))?;
            let (phi, psi) = iterated_atom_sums(&s, x, order);
            if c.phi != phi || c.psi != psi {
                return Err(format!("iterated integrals disagree with direct sums at x = {x}"));
            }
            let (c1, c2) = (c.c1_coefficients(), c.c2_coefficients());
            for k in 0..=order {
                if u.c1.coeff(k) != c1[k] || u.c2.coeff(k) != c2[k] {
                    return Err(format!("coefficient {k} differs at x = {x}"));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} atomic cases to order {order}"))
}

fn strong_limit_point() -> Outcome {
    let mut r = rng(11);
    let mut worst: f64 = 0.0;
    for _ in 0..8 {
        let s = random_system(&mut r, Kind::LimitPoint);
        let b = s.b_rep();
        let kappa = (s.r1().tail_density() * s.r2().tail_density()).sqrt();
        let reach = 10.0 / kappa;
        let grid: Vec<f64> = (0..=40).map(|k| b + reach * f64::from(k) / 40.0).collect();
        let trace = slp_diagnostic(&s, -1.0, &grid).map_err(|e| format!("{e}"))?;
        let start = trace[0].1;
        let end = trace.last().unwrap().1;
        if start <= 0.0 {
            return Err(format!("vanishing trace at b_rep = {b}"));
        }
        worst = worst.max(end / start);
    }
    ensure(worst <= 1e-6, format!("8 systems: largest end/start ratio {worst:.2e}"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("monodromy factor of a string cell", monodromy_cell),
        ("ground truth at zero spectral parameter", lambda_zero_ground_truth),
        ("Wronskian identities", wronskian_suite),
        ("Green identities", green_suite),
        ("Weyl disc radius, nesting and membership", weyl_disc_law),
        ("closed-form coefficients", closed_form_q),
        ("duality identity and conjugation", duality_identity),
        ("continuation invariance", continuation_invariance),
        ("Neumann asymptotics", asymptotics),
        ("series coefficients", series_oracle),
        ("strong limit point trace", strong_limit_point),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                println!("FAIL {:>2} {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
