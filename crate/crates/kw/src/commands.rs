//! The subcommands. Each writes its report to `out` and returns the process
//! exit code; hard failures come back as [`CliError`].

use std::fs;
use std::io::Write;
use std::path::Path;

use kw_core::duality::check_fundamental_conjugation_exact;
use kw_core::propagator::{check_green, check_kernel_identity, check_wronskian, monodromy_polynomial};
use kw_core::{
    check_duality_identity, principal_q, weyl_disc, IntegralSystem, L2Norm, Poly, QEnclosure, QOptions, Regime, C64,
};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::CliError;
use crate::spec_file::SystemSpec;

pub const WRONSKIAN_TOL: f64 = 1e-10;
pub const GREEN_TOL: f64 = 1e-9;
pub const NESTING_TOL: f64 = 1e-9;
pub const CONJUGATION_TOL: f64 = 1e-10;

pub const Q_HEADER: [&str; 6] = ["lambda_re", "lambda_im", "q_re", "q_im", "err_radius", "regime"];

pub fn load(path: &Path) -> Result<(SystemSpec, IntegralSystem), CliError> {
    let text = fs::read_to_string(path)?;
    let spec = SystemSpec::parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let system = spec.to_system()?;
    Ok((spec, system))
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::RegularClosedForm => "regular",
        Regime::LimitCircleClosedForm => "limit-circle",
        Regime::LimitPointNested => "limit-point",
    }
}

fn norm_text(n: L2Norm) -> String {
    match n {
        L2Norm::Finite(v) => format!("finite ({v:.6e})"),
        L2Norm::Infinite => "infinite".into(),
    }
}

pub fn validate(path: &Path, canonical: bool, out: &mut dyn Write) -> Result<u8, CliError> {
    let (spec, system) = load(path)?;
    if canonical {
        let c = SystemSpec::canonical(&system, spec.name, spec.notes);
        writeln!(out, "{}", c.to_json())?;
        return Ok(0);
    }
    writeln!(out, "ok: {}", spec.name.as_deref().unwrap_or("unnamed system"))?;
    writeln!(out, "endpoint: {}", system.endpoint())?;
    if !system.is_definite() {
        writeln!(
            out,
            "warning: indefinite (1 and R1 are not independent in L2(R2) on any initial interval)"
        )?;
    }
    Ok(0)
}

pub fn classify(path: &Path, out: &mut dyn Write) -> Result<u8, CliError> {
    let (_, system) = load(path)?;
    let c = system.classify();
    writeln!(out, "{:?}, {:?}", c.regularity, c.endpoint_type)?;
    writeln!(out, "witness 1 in L2(R2): {}", norm_text(c.witnesses.one))?;
    writeln!(out, "witness R1 in L2(R2): {}", norm_text(c.witnesses.r1))?;
    Ok(0)
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("KW_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        b = b.num_threads(n.max(1));
    }
    b.build().map_err(|e| CliError::Io(std::io::Error::other(e)))
}

/// `q` at every point, in parallel; results stay in input order.
pub fn evaluate_q(system: &IntegralSystem, lambdas: &[C64], opts: QOptions) -> Result<Vec<kw_core::Result<QEnclosure>>, CliError> {
    let pool = thread_pool()?;
    Ok(pool.install(|| lambdas.par_iter().map(|&l| principal_q(system, l, opts)).collect()))
}

fn q_record(lambda: C64, row: &kw_core::Result<QEnclosure>) -> Vec<String> {
    let mut rec = vec![num(lambda.re), num(lambda.im)];
    match row {
        Ok(q) => rec.extend([
            num(q.value.re),
            num(q.value.im),
            num(q.error_radius),
            regime_name(q.regime).to_string(),
        ]),
        Err(_) => rec.extend([String::new(), String::new(), String::new(), "error".to_string()]),
    }
    rec
}

/// One row per `λ` with an extra `error` column; exit 1 only when every row
/// fails.
pub fn q_table(path: &Path, lambdas: &[C64], opts: QOptions, out: &mut dyn Write) -> Result<u8, CliError> {
    let (_, system) = load(path)?;
    let rows = evaluate_q(&system, lambdas, opts)?;
    let mut w = csv::Writer::from_writer(out);
    let mut header = Q_HEADER.to_vec();
    header.push("error");
    w.write_record(&header)?;
    for (&l, row) in lambdas.iter().zip(&rows) {
        let mut rec = q_record(l, row);
        rec.push(row.as_ref().err().map(|e| e.to_string()).unwrap_or_default());
        w.write_record(&rec)?;
    }
    w.flush()?;
    let all_failed = !rows.is_empty() && rows.iter().all(|r| r.is_err());
    Ok(u8::from(all_failed))
}

/// Writes the fixed-header CSV; failed points keep their row with empty
/// values and regime `error`.
pub fn sweep(path: &Path, lambdas: &[C64], opts: QOptions, out: &mut dyn Write) -> Result<u8, CliError> {
    let (_, system) = load(path)?;
    let rows = evaluate_q(&system, lambdas, opts)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(Q_HEADER)?;
    for (&l, row) in lambdas.iter().zip(&rows) {
        w.write_record(q_record(l, row))?;
    }
    w.flush()?;
    Ok(0)
}

pub fn dual_check(path: &Path, lambdas: &[C64], opts: QOptions, out: &mut dyn Write) -> Result<u8, CliError> {
    let (_, system) = load(path)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "lambda_re",
        "lambda_im",
        "q_re",
        "q_im",
        "q_err",
        "q_dual_re",
        "q_dual_im",
        "q_dual_err",
        "identity_residual",
        "bound",
        "conjugation_residual",
        "regular_branch_residual",
        "status",
        "error",
    ])?;
    let mut failed = false;
    for &l in lambdas {
        let mut rec = vec![num(l.re), num(l.im)];
        match check_duality_identity(&system, l, opts) {
            Ok(r) => {
                let pass = r.passes(opts.tol) && r.conjugation_residual <= CONJUGATION_TOL;
                failed |= !pass;
                rec.extend([
                    num(r.q.value.re),
                    num(r.q.value.im),
                    num(r.q.error_radius),
                    num(r.q_dual.value.re),
                    num(r.q_dual.value.im),
                    num(r.q_dual.error_radius),
                    num(r.identity_residual),
                    num(r.bound),
                    num(r.conjugation_residual),
                    r.regular_branch_residual.map(num).unwrap_or_default(),
                    if pass { "PASS" } else { "FAIL" }.to_string(),
                    String::new(),
                ]);
            }
            Err(e) => {
                failed = true;
                rec.extend(vec![String::new(); 10]);
                rec.extend(["FAIL".to_string(), e.to_string()]);
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(u8::from(failed))
}

pub const SUITE_LAMBDAS: [(f64, f64); 6] = [(0.0, 1.0), (1.0, 1.0), (-2.0, 0.0), (-0.5, 3.0), (4.0, -2.0), (-10.0, 0.0)];

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn sample_points(system: &IntegralSystem) -> Vec<f64> {
    let top = system.endpoint().min(system.b_rep() + 1.0);
    let mut xs: Vec<f64> = (0..=8).map(|k| top * f64::from(k) / 8.0).collect();
    xs.extend(system.breakpoints().into_iter().filter(|&t| t <= top));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

fn identity_checks(system: &IntegralSystem, lambdas: &[C64]) -> Vec<Check> {
    let xs = sample_points(system);
    let (mut wr, mut gr, mut kr) = (0f64, 0f64, 0f64);
    let mut err = None;
    for (i, &l) in lambdas.iter().enumerate() {
        let m = lambdas[(i + 1) % lambdas.len()];
        for &x in &xs {
            let r = (|| -> kw_core::Result<()> {
                wr = wr.max(check_wronskian(system, x, l)?.max_residual());
                gr = gr.max(check_green(system, x, l, m)?.max_residual());
                kr = kr.max(check_kernel_identity(system, x, l, m)?.residual);
                Ok(())
            })();
            if let Err(e) = r {
                err.get_or_insert(e);
            }
        }
    }
    let fmt = |v: f64| match &err {
        Some(e) => format!("error: {e}"),
        None => format!("max residual {v:.3e}"),
    };
    vec![
        Check {
            name: "wronskian",
            pass: err.is_none() && wr <= WRONSKIAN_TOL,
            detail: fmt(wr),
        },
        Check {
            name: "green",
            pass: err.is_none() && gr <= GREEN_TOL,
            detail: fmt(gr),
        },
        Check {
            name: "kernel",
            pass: err.is_none() && kr <= GREEN_TOL,
            detail: fmt(kr),
        },
    ]
}

fn nesting_check(system: &IntegralSystem, lambdas: &[C64]) -> Check {
    let name = "nesting";
    let Ok(a) = system.r2().inf_support() else {
        return Check {
            name,
            pass: false,
            detail: "R2 carries no mass".into(),
        };
    };
    let top = system.endpoint().min(system.b_rep() + 1.0);
    if top <= a {
        return Check {
            name,
            pass: true,
            detail: "skipped: no room past the first R2 mass".into(),
        };
    }
    let mut excess = f64::NEG_INFINITY;
    for &l in lambdas.iter().filter(|l| l.im > 0.0) {
        let mut last: Option<(C64, f64)> = None;
        for k in 1..=6 {
            let cut = a + (top - a) * f64::from(k) / 6.0;
            match weyl_disc(system, cut, l) {
                Ok(d) => {
                    if let Some((c, r)) = last {
                        excess = excess.max((d.center - c).norm() + d.radius - r);
                    }
                    last = Some((d.center, d.radius));
                }
                Err(e) => {
                    return Check {
                        name,
                        pass: false,
                        detail: format!("error: {e}"),
                    }
                }
            }
        }
    }
    Check {
        name,
        pass: excess <= NESTING_TOL,
        detail: format!("largest excess {excess:.3e}"),
    }
}

fn stieltjes_check(system: &IntegralSystem, lambdas: &[C64], opts: QOptions) -> Check {
    let name = "stieltjes";
    let mut worst = f64::NEG_INFINITY;
    let mut samples: Vec<C64> = lambdas.to_vec();
    samples.extend([-0.01, -1.0, -100.0].map(|t| C64::new(t, 0.0)));
    for l in samples {
        let q = match principal_q(system, l, opts) {
            Ok(q) => q,
            Err(e) => {
                return Check {
                    name,
                    pass: false,
                    detail: format!("error at {l}: {e}"),
                }
            }
        };
        // Im q has the sign of Im λ; q is real and positive on the negative axis
        let violation = if l.im == 0.0 {
            (-q.value.re - q.error_radius).max(q.value.im.abs())
        } else {
            -(q.value.im * l.im.signum()) - q.error_radius
        };
        worst = worst.max(violation);
        if l.im != 0.0 {
            if let Ok(c) = principal_q(system, l.conj(), opts) {
                let gap = (c.value - q.value.conj()).norm() - q.error_radius - c.error_radius;
                worst = worst.max(gap - 1e-12);
            }
        }
    }
    Check {
        name,
        pass: worst <= 0.0,
        detail: format!("largest violation {worst:.3e}"),
    }
}

fn exact_check(system: &IntegralSystem) -> Check {
    let name = "polynomial-mode";
    let x = if system.endpoint().is_finite() {
        system.endpoint()
    } else {
        system.b_rep() + 1.0
    };
    match monodromy_polynomial::<BigRational>(system, x) {
        Ok(u) => {
            let det_one = u.det() == Poly::constant(BigRational::from_integer(1.into()));
            let conj = check_fundamental_conjugation_exact::<BigRational>(system, x);
            let pass = det_one && conj == Ok(0.0);
            Check {
                name,
                pass,
                detail: format!("det exactly 1: {det_one}, exact conjugation residual: {conj:?}"),
            }
        }
        Err(e) => Check {
            name,
            pass: true,
            detail: format!("skipped: {e}"),
        },
    }
}

pub fn suite(path: &Path, opts: QOptions, out: &mut dyn Write) -> Result<u8, CliError> {
    let (_, system) = load(path)?;
    let lambdas: Vec<C64> = SUITE_LAMBDAS.iter().map(|&(a, b)| C64::new(a, b)).collect();
    let mut checks = identity_checks(&system, &lambdas);
    checks.push(nesting_check(&system, &lambdas));
    checks.push(stieltjes_check(&system, &lambdas, opts));
    checks.push(exact_check(&system));
    let mut failed = false;
    for c in &checks {
        failed |= !c.pass;
        writeln!(out, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail)?;
    }
    Ok(u8::from(failed))
}
