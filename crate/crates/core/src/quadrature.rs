//! Composite Gauss-Legendre quadrature on a mesh graded geometrically toward
//! the lower limit, for integrands with an integrable singularity there.

use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const NODES: usize = 16;
/// Panels `[a + w 2^-(j+1), a + w 2^-j]` for `j < GRADED_PANELS`, plus the
/// innermost `[a, a + w 2^-GRADED_PANELS]`.
pub const GRADED_PANELS: usize = 40;
const MAX_DEPTH: u32 = 48;
const MAX_SPLITS: usize = 20_000;

/// Nodes and weights of the 16-point rule on `[-1, 1]`.
fn rule() -> &'static ([f64; NODES], [f64; NODES]) {
    static RULE: OnceLock<([f64; NODES], [f64; NODES])> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut x = [0.0; NODES];
        let mut w = [0.0; NODES];
        let n = NODES as f64;
        for i in 0..NODES {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=NODES {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        (x, w)
    })
}

/// Rule value and `sum |w f|` on `[a, b]`.
fn gauss_abs<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let (x, w) = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let (mut sum, mut abs) = (0.0, 0.0);
    for (xi, wi) in x.iter().zip(w) {
        let t = wi * f(mid + half * xi);
        sum += t;
        abs += t.abs();
    }
    (sum * half, abs * half.abs())
}

fn gauss<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> f64 {
    gauss_abs(f, a, b).0
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    /// Error estimate with rounding noise treated as zero.
    err: f64,
    depth: u32,
}

impl Panel {
    fn new<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, whole: f64, depth: u32) -> Self {
        let mid = 0.5 * (a + b);
        let (left, left_abs) = gauss_abs(f, a, mid);
        let (right, right_abs) = gauss_abs(f, mid, b);
        let raw = (left + right - whole).abs();
        // Below this the difference is rounding noise.
        let floor = 64.0 * f64::EPSILON * (left_abs + right_abs);
        let err = if raw.is_nan() {
            f64::INFINITY
        } else if raw <= floor {
            0.0
        } else {
            raw
        };
        Self {
            a,
            b,
            left,
            right,
            err,
            depth,
        }
    }

    fn value(&self) -> f64 {
        self.left + self.right
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Bisect the worst panel until the summed error estimate is below `tol`.
fn refine<F: FnMut(f64) -> f64>(f: &mut F, panels: Vec<Panel>, tol: f64) -> (f64, f64) {
    let mut heap: BinaryHeap<Panel> = panels.into_iter().collect();
    let mut done = Vec::new();
    let mut splits = 0;
    loop {
        let total: f64 = heap.iter().map(|p| p.err).sum();
        if total <= tol || splits >= MAX_SPLITS {
            break;
        }
        // Each round halves the worst tenth of the error budget.
        let mut budget = 0.0;
        while budget < 0.1 * total {
            let Some(p) = heap.pop() else { break };
            if p.err == 0.0 {
                heap.push(p);
                break;
            }
            budget += p.err;
            if p.depth >= MAX_DEPTH || !p.err.is_finite() {
                done.push(p);
                continue;
            }
            let mid = 0.5 * (p.a + p.b);
            heap.push(Panel::new(f, p.a, mid, p.left, p.depth + 1));
            heap.push(Panel::new(f, mid, p.b, p.right, p.depth + 1));
            splits += 1;
        }
        if heap.is_empty() {
            break;
        }
    }
    let all = heap.into_iter().chain(done);
    let (mut value, mut error) = (0.0, 0.0);
    for p in all {
        value += p.value();
        error += p.err;
    }
    (value, error)
}

/// Quadrature result with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Integrate `f` over `[a, b]` with panels graded toward `a`, bisecting the
/// panel with the largest error estimate until the total is below `tol`.
///
/// The innermost panel is not refined: `f` may be singular at `a`.
pub fn integrate_graded<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Integral {
    let width = b - a;
    let panels: Vec<Panel> = (0..GRADED_PANELS)
        .map(|j| {
            let hi = a + width * 0.5f64.powi(j as i32);
            let lo = a + width * 0.5f64.powi(j as i32 + 1);
            let whole = gauss(&mut f, lo, hi);
            Panel::new(&mut f, lo, hi, whole, 0)
        })
        .collect();
    let (mut value, error) = refine(&mut f, panels, tol);
    let inner = a + width * 0.5f64.powi(GRADED_PANELS as i32);
    value += gauss(&mut f, a, inner);
    Integral { value, error }
}

/// Integrate with panels graded toward both limits, for integrands that may
/// be singular at either end.
pub fn integrate_two_sided<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Integral {
    let mid = 0.5 * (a + b);
    let lower = integrate_graded(&mut f, a, mid, 0.5 * tol);
    // Graded toward `b`: integrate from `b` down to `mid` and flip the sign.
    let upper = integrate_graded(&mut f, b, mid, 0.5 * tol);
    Integral {
        value: lower.value - upper.value,
        error: lower.error + upper.error,
    }
}

/// [`integrate_two_sided`] that fails when the error estimate exceeds `limit`.
pub fn integrate_checked<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    limit: f64,
) -> Result<f64> {
    let r = integrate_two_sided(f, a, b, tol);
    if !r.value.is_finite() || r.error > limit {
        return Err(Error::Accuracy { achieved: r.error });
    }
    Ok(r.value)
}
