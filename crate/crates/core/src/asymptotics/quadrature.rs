//! Composite Gauss–Legendre quadrature with panel doubling.

use crate::error::{Error, Result};
use std::sync::OnceLock;

pub const NODES_PER_PANEL: usize = 32;
const START_PANELS: usize = 4;
const MAX_PANELS: usize = 1 << 14;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// found by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(NODES_PER_PANEL))
}

/// One composite pass with `panels` equal panels.
pub fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let (nodes, weights) = rule();
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * width;
        let mut panel = 0.0;
        for (x, w) in nodes.iter().zip(weights) {
            panel += w * f(mid + half * x);
        }
        total += panel * half;
    }
    total
}

/// Integrates `f` over `[a, b]`, doubling the panel count until two successive
/// estimates differ by less than `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let mut panels = START_PANELS;
    let mut prev = composite(&f, a, b, panels);
    let mut delta = f64::INFINITY;
    while panels < MAX_PANELS {
        panels *= 2;
        let next = composite(&f, a, b, panels);
        delta = (next - prev).abs();
        if !next.is_finite() {
            break;
        }
        if delta < tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureNoConvergence { last_delta: delta })
}
