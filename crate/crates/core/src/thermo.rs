//! Entanglement density in the limit of an infinite ring.
//!
//! With `mu = k / 2pi`, the log-overlap per spin becomes
//! `F(xi) = int_0^1/2 ln[cos th c^2 + sin th s^2 cot(pi mu)] dmu`
//! and the density is `-(2/ln 2) max_xi F(xi)`.

use std::cell::Cell;
use std::f64::consts::{LN_2, PI};

use crate::entangle::derivative_step;
use crate::error::{Error, Result};
use crate::maximize::{golden_section_max, maximize_lambda};
use crate::model::ModelPoint;
use crate::overlap::AnsatzAngle;
use crate::quadrature::{integrate_checked, integrate_graded};
use crate::scalefit::least_squares;
use crate::signed_log::SignedLog;

/// Requested absolute quadrature error.
pub const QUADRATURE_TOL: f64 = 1e-12;
/// Quadratures whose error estimate exceeds this fail with [`Error::Accuracy`].
pub const QUADRATURE_LIMIT: f64 = 1e-10;
/// `dE/dh` is refused this close to the critical field.
pub const CRITICAL_EXCLUSION: f64 = 1e-8;

/// `theta(mu)` on the same branch as the finite-ring angle.
pub fn continuum_angle(p: &ModelPoint, mu: f64) -> f64 {
    let k = 2.0 * PI * mu;
    0.5 * (p.r() * k.sin()).atan2(p.h() - k.cos())
}

fn weights(xi: f64) -> (f64, f64) {
    let (s, c) = (0.5 * xi).sin_cos();
    (c * c, s * s)
}

fn log_argument(p: &ModelPoint, mu: f64, c2: f64, s2: f64) -> f64 {
    let (st, ct) = continuum_angle(p, mu).sin_cos();
    ct * c2 + st * s2 / (PI * mu).tan()
}

/// `ln[cos th c^2 + sin th s^2 cot(pi mu)]` for `mu` in `(0, 1/2)`.
pub fn density_integrand(mu: f64, p: &ModelPoint, xi: AnsatzAngle) -> Result<f64> {
    if !(mu > 0.0 && mu < 0.5) {
        return Err(Error::Domain("continuum momentum must lie in (0, 1/2)"));
    }
    let (c2, s2) = weights(xi.value());
    let g = log_argument(p, mu, c2, s2);
    if !(g > 0.0) {
        return Err(Error::Domain("non-positive logarithm argument"));
    }
    Ok(g.ln())
}

/// `F(xi)` by graded quadrature.
pub fn log_overlap_per_spin(p: &ModelPoint, xi: AnsatzAngle) -> Result<f64> {
    let (c2, s2) = weights(xi.value());
    let bad = Cell::new(false);
    let v = integrate_checked(
        |mu| {
            let g = log_argument(p, mu, c2, s2);
            if g > 0.0 {
                g.ln()
            } else {
                bad.set(true);
                0.0
            }
        },
        0.0,
        0.5,
        QUADRATURE_TOL,
        QUADRATURE_LIMIT,
    )?;
    if bad.get() {
        return Err(Error::Domain("non-positive logarithm argument"));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumDensity {
    pub xi_star: f64,
    /// Bits per spin.
    pub density: f64,
    /// `dF/dxi` at `xi_star`; zero when the optimum sits on an edge.
    pub stationarity: f64,
}

/// Entanglement density of the infinite ring.
pub fn density_infinite(p: &ModelPoint) -> Result<ContinuumDensity> {
    if p.r() == 0.0 {
        let g = xx_geometry(p.h());
        return Ok(ContinuumDensity {
            xi_star: g.map_or(0.0, |g| g.xi),
            density: xx_density(p.h()),
            stationarity: 0.0,
        });
    }
    let failure: Cell<Option<Error>> = Cell::new(None);
    let max = maximize_lambda(|xi| match log_overlap_per_spin(p, xi) {
        Ok(f) => SignedLog::from_parts(1, f),
        Err(e) => {
            failure.set(Some(e));
            SignedLog::ZERO
        }
    });
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let max = max?;
    Ok(ContinuumDensity {
        xi_star: max.xi,
        density: -2.0 / LN_2 * max.ln_lambda,
        stationarity: max.slope,
    })
}

/// XX-chain quantities for `h` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XXGeometry {
    /// `arccos(h) / 2pi`, the Fermi point as a momentum fraction.
    pub mu0: f64,
    /// Optimal ansatz angle, `cos xi = 1 - 4 mu0`.
    pub xi: f64,
}

/// `None` above the saturation field.
pub fn xx_geometry(h: f64) -> Option<XXGeometry> {
    if !(0.0..=1.0).contains(&h) {
        return None;
    }
    let mu0 = h.acos() / (2.0 * PI);
    Some(XXGeometry {
        mu0,
        xi: (1.0 - 4.0 * mu0).clamp(-1.0, 1.0).acos(),
    })
}

fn ln_cot_integral(upper: f64) -> f64 {
    integrate_graded(|mu| (1.0 / (PI * mu).tan()).ln(), 0.0, upper, QUADRATURE_TOL).value
}

/// Closed-form XX density; zero for `h >= 1`.
pub fn xx_density(h: f64) -> f64 {
    let Some(g) = xx_geometry(h) else {
        return 0.0;
    };
    let mu0 = g.mu0;
    if mu0 == 0.0 {
        return 0.0;
    }
    let bracket = mu0 * (2.0 * mu0 / (1.0 - 2.0 * mu0)).ln()
        + 0.5 * (1.0 - 2.0 * mu0).ln()
        + ln_cot_integral(mu0);
    -2.0 / LN_2 * bracket
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldDerivative {
    pub value: f64,
    /// Set when `h > 1`, where the density vanishes identically.
    pub beyond_critical: bool,
}

/// `d xx_density / dh`.
pub fn xx_density_derivative(h: f64) -> Result<FieldDerivative> {
    if !(h >= 0.0) || !h.is_finite() {
        return Err(Error::InvalidParameter {
            name: "h",
            value: h,
            reason: "must be finite and non-negative",
        });
    }
    if h == 1.0 {
        return Err(Error::Domain("XX derivative diverges at h = 1"));
    }
    if h > 1.0 {
        return Ok(FieldDerivative {
            value: 0.0,
            beyond_critical: true,
        });
    }
    let a = h.acos();
    let arg = a / (PI - a) * ((1.0 + h) / (1.0 - h)).sqrt();
    Ok(FieldDerivative {
        value: arg.ln() / (PI * LN_2 * (1.0 - h * h).sqrt()),
        beyond_critical: false,
    })
}

/// Leading XX behaviour `-log2(pi/2) / (sqrt(2) pi sqrt(1-h))` below `h = 1`.
pub fn xx_derivative_asymptote(h: f64) -> f64 {
    -(PI / 2.0).log2() / (2f64.sqrt() * PI) / (1.0 - h).sqrt()
}

/// `d density_infinite / dh` from the envelope theorem.
pub fn de_dh_infinite(p: &ModelPoint) -> Result<f64> {
    let (r, h) = (p.r(), p.h());
    if (h - 1.0).abs() < CRITICAL_EXCLUSION {
        return Err(Error::Domain("too close to the critical field"));
    }
    if r == 0.0 {
        return xx_density_derivative(h).map(|d| d.value);
    }
    let xi = density_infinite(p)?.xi_star;
    let (c2, s2) = weights(xi);
    let bad = Cell::new(false);
    let df = integrate_checked(
        |mu| {
            let k = 2.0 * PI * mu;
            let (sk, ck) = k.sin_cos();
            let x = h - ck;
            let y = r * sk;
            let (st, ct) = (0.5 * y.atan2(x)).sin_cos();
            let cot = 1.0 / (PI * mu).tan();
            let g = ct * c2 + st * s2 * cot;
            if !(g > 0.0) {
                bad.set(true);
                return 0.0;
            }
            let dtheta = -0.5 * y / (x * x + y * y);
            (-st * c2 + ct * s2 * cot) / g * dtheta
        },
        0.0,
        0.5,
        QUADRATURE_TOL,
        QUADRATURE_LIMIT,
    )?;
    if bad.get() {
        return Err(Error::Domain("non-positive logarithm argument"));
    }
    Ok(-2.0 / LN_2 * df)
}

/// Central-difference cross-check of [`de_dh_infinite`].
pub fn de_dh_finite_difference(p: &ModelPoint) -> Result<f64> {
    let s = derivative_step(p.h()).max(1e-4);
    if p.h() - s < 0.0 {
        return Err(Error::Domain("difference stencil leaves h >= 0"));
    }
    let at = |h: f64| -> Result<f64> { Ok(density_infinite(&p.with_h(h)?)?.density) };
    Ok((at(p.h() + s)? - at(p.h() - s)?) / (2.0 * s))
}

/// Scaled distances `u = |h - 1| / r^2` used in the divergence fit.
pub fn divergence_offsets() -> Vec<f64> {
    (0..7).map(|i| 10f64.powf(-2.0 - 0.5 * i as f64)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceFit {
    pub below: f64,
    pub above: f64,
    pub amplitude: f64,
}

/// Amplitudes of `-ln|h-1|` in `dE/dh`, fitted separately on each side.
///
/// The crossover scale is `|h - 1| ~ r^2`, so samples sit at `r^2 u` and the
/// model carries the leading corrections: basis `{-ln|h-1|, 1, sqrt u, sqrt u ln u}`.
pub fn divergence_fit(r: f64) -> Result<DivergenceFit> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "must lie in (0, 1]",
        });
    }
    let side = |sign: f64| -> Result<f64> {
        let mut design = Vec::new();
        let mut y = Vec::new();
        for u in divergence_offsets() {
            let d = (u * r * r).max(10.0 * CRITICAL_EXCLUSION);
            let p = ModelPoint::new(r, 1.0 + sign * d)?;
            design.push(vec![-d.ln(), 1.0, u.sqrt(), u.sqrt() * u.ln()]);
            y.push(de_dh_infinite(&p)?);
        }
        Ok(least_squares(&design, &y)?.0[0])
    };
    let (below, above) = (side(-1.0)?, side(1.0)?);
    let amplitude = 0.5 * (below + above);
    if (below - above).abs() > 0.05 * amplitude.abs() {
        return Err(Error::Asymmetry { below, above });
    }
    Ok(DivergenceFit {
        below,
        above,
        amplitude,
    })
}

/// Fitted coefficient `A` in `dE/dh ~ -A ln|h-1|`.
pub fn divergence_coefficient(r: f64) -> Result<f64> {
    divergence_fit(r).map(|f| f.amplitude)
}

/// The Ising-class amplitude `1 / (2 pi r ln 2)`.
pub fn ising_divergence_amplitude(r: f64) -> f64 {
    1.0 / (2.0 * PI * r * LN_2)
}

/// Catalan's constant, `pi int_0^1/4 ln cot(pi mu) dmu`.
pub fn catalan_constant() -> f64 {
    PI * ln_cot_integral(0.25)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMaximum {
    pub h: f64,
    pub density: f64,
}

/// Field of largest infinite-ring density in `[lo, hi]`.
pub fn density_maximum(r: f64, lo: f64, hi: f64) -> Result<DensityMaximum> {
    const SCAN: usize = 25;
    let at = |h: f64| -> Result<f64> { Ok(density_infinite(&ModelPoint::new(r, h)?)?.density) };
    let grid: Vec<f64> = (0..SCAN)
        .map(|i| lo + (hi - lo) * i as f64 / (SCAN - 1) as f64)
        .collect();
    let values = grid.iter().map(|&h| at(h)).collect::<Result<Vec<_>>>()?;
    let best = (0..SCAN)
        .max_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(SCAN - 1)];
    let failure: Cell<Option<Error>> = Cell::new(None);
    let (h, density) = golden_section_max(
        |h| match at(h) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                f64::NEG_INFINITY
            }
        },
        a,
        b,
        1e-7,
        200,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(DensityMaximum { h, density })
}
