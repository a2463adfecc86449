//! Gauss–Legendre rules.

use core::f64::consts::PI;

use libm::cos;

/// Order of the rule used for all smooth-part integrals.
pub const ORDER: usize = 16;

/// Nodes and weights of the `N`-point Gauss–Legendre rule on `[-1, 1]`,
/// from Newton iteration on `P_N`.
pub fn gauss_legendre<const N: usize>() -> ([f64; N], [f64; N]) {
    let mut nodes = [0.0; N];
    let mut weights = [0.0; N];
    let n = N as f64;
    for i in 0..N.div_ceil(2) {
        let mut x = cos(PI * (i as f64 + 0.75) / (n + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(N, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(N, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[N - 1 - i] = x;
        weights[i] = w;
        weights[N - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Maps the rule onto `[a, b]`.
pub fn scaled_rule<const N: usize>(rule: &([f64; N], [f64; N]), a: f64, b: f64) -> [(f64, f64); N] {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut out = [(0.0, 0.0); N];
    for (o, (x, w)) in out.iter_mut().zip(rule.0.iter().zip(&rule.1)) {
        *o = (mid + half * x, half * w);
    }
    out
}
