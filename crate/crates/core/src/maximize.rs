//! One-dimensional maximization: uniform seed grid followed by golden-section
//! refinement of the best bracket.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::overlap::AnsatzAngle;
use crate::signed_log::SignedLog;

/// Seed points for the overlap search on `[0, pi]`.
pub const SEED_POINTS: usize = 257;

/// Bracket width at which the golden-section search stops.
pub const XI_TOLERANCE: f64 = 1e-12;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Stops once the bracket is narrower than `tol` or after `max_iter`
/// iterations. Returns the best point seen and its value.
pub fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_iter: usize,
) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Result of maximizing `|<Phi(xi)|Psi>|` over the ansatz angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapMaximum {
    pub xi: f64,
    /// `ln Lambda_max`.
    pub ln_lambda: f64,
    /// Central-difference `d ln|overlap| / d xi` at `xi`.
    pub slope: f64,
    pub on_boundary: bool,
}

impl OverlapMaximum {
    pub fn lambda(&self) -> f64 {
        self.ln_lambda.exp()
    }
}

/// Maximize `|evaluator(xi)|` for `xi` in `[0, pi]`.
///
/// Zero overlaps never count as candidates. Fails with
/// [`Error::DegenerateOverlap`] when the evaluator vanishes on every seed.
pub fn maximize_lambda(evaluator: impl Fn(AnsatzAngle) -> SignedLog) -> Result<OverlapMaximum> {
    let f = |xi: f64| evaluator(AnsatzAngle::new(xi)).ln_abs();
    let step = PI / (SEED_POINTS - 1) as f64;
    let seeds: Vec<f64> = (0..SEED_POINTS).map(|i| i as f64 * step).collect();
    let values: Vec<f64> = seeds.iter().map(|&x| f(x)).collect();
    let best = values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .ok_or(Error::DegenerateOverlap)?;

    let lo = seeds[best.saturating_sub(1)];
    let hi = seeds[(best + 1).min(SEED_POINTS - 1)];
    let (mut xi, mut value) = golden_section_max(f, lo, hi, XI_TOLERANCE, 200);
    if values[best] > value {
        xi = seeds[best];
        value = values[best];
    }
    // The golden section stalls once value differences reach roundoff; a few
    // Newton steps on finite-difference derivatives sharpen the stationary point.
    let delta = 1e-4;
    for _ in 0..3 {
        if xi - delta < 0.0 || xi + delta > PI {
            break;
        }
        let (fm, fp) = (f(xi - delta), f(xi + delta));
        let d1 = (fp - fm) / (2.0 * delta);
        let d2 = (fp - 2.0 * value + fm) / (delta * delta);
        if !(d2 < 0.0) {
            break;
        }
        let trial = (xi - d1 / d2).clamp(lo.max(0.0), hi.min(PI));
        let ft = f(trial);
        if ft >= value {
            xi = trial;
            value = ft;
        } else {
            break;
        }
    }
    let mut on_boundary = false;
    for edge in [0.0, PI] {
        if (xi - edge).abs() < 1e-9 {
            let fe = f(edge);
            if fe >= value {
                xi = edge;
                value = fe;
                on_boundary = true;
            }
        }
    }
    let h = 1e-6;
    let slope = if on_boundary {
        0.0
    } else {
        (f((xi + h).min(PI)) - f((xi - h).max(0.0))) / (2.0 * h)
    };
    Ok(OverlapMaximum {
        xi,
        ln_lambda: value,
        slope,
        on_boundary,
    })
}
