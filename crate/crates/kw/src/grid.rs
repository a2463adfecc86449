//! Spectral-parameter lists and grids.

use std::str::FromStr;

use kw_core::C64;

use crate::error::CliError;

/// Accepts `a+bi`, `a-bi`, `bi`, `a` and the bare unit `i`.
pub fn parse_lambda(text: &str) -> Result<C64, CliError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let t = match t.as_str() {
        "i" | "+i" => "1i".to_string(),
        "-i" => "-1i".to_string(),
        _ if t.ends_with("+i") || t.ends_with("-i") => format!("{}1i", &t[..t.len() - 1]),
        _ => t,
    };
    C64::from_str(&t).map_err(|_| CliError::Parse(format!("cannot read spectral parameter {text:?}")))
}

/// `linear:re_min,re_max,n,im` puts `n` points on a horizontal line;
/// `neglog:t_min,t_max,n` puts `λ = −t` at `n` log-spaced `t`.
pub fn parse_grid(text: &str) -> Result<Vec<C64>, CliError> {
    let bad = || CliError::Parse(format!("cannot read grid {text:?}"));
    let (kind, rest) = text.split_once(':').ok_or_else(bad)?;
    let fields: Vec<&str> = rest.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
    let count = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match (kind, fields.as_slice()) {
        ("linear", [lo, hi, n, im]) => {
            let (lo, hi, n, im) = (num(lo)?, num(hi)?, count(n)?, num(im)?);
            Ok(spaced(lo, hi, n).map(|re| C64::new(re, im)).collect())
        }
        ("neglog", [lo, hi, n]) => {
            let (lo, hi, n) = (num(lo)?, num(hi)?, count(n)?);
            if !(lo > 0.0 && hi > 0.0) {
                return Err(bad());
            }
            let ratio = hi / lo;
            Ok((0..n)
                .map(|k| match k {
                    0 => lo,
                    _ if k == n - 1 => hi,
                    _ => lo * ratio.powf(k as f64 / (n - 1) as f64),
                })
                .map(|t| C64::new(-t, 0.0))
                .collect())
        }
        _ => Err(bad()),
    }
}

fn spaced(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    })
}
