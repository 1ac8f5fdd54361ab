//! Geometric entanglement of the lowest ring states.

use crate::error::{Error, Result};
use crate::maximize::{golden_section_max, maximize_lambda, OverlapMaximum};
use crate::model::{check_size, ModelPoint, Sector};
use crate::spectrum::ground_energy;
use crate::states::{SectorState, StateSelector, TargetState};

/// Entanglement of one state at one `(r, h, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementRecord {
    pub state: StateSelector,
    pub n: usize,
    pub xi_star: f64,
    /// `Lambda_max`, the largest overlap with a product state.
    pub lambda_max: f64,
    /// `-log2 Lambda_max^2`, in bits.
    pub e_log2: f64,
    /// `e_log2 / n`, bits per spin.
    pub density: f64,
    /// `d ln|overlap| / d xi` at `xi_star`.
    pub stationarity: f64,
}

impl EntanglementRecord {
    fn from_maximum(state: StateSelector, n: usize, m: OverlapMaximum) -> Self {
        // Adding zero turns the -0 of an exact product state into +0.
        let e_log2 = -2.0 * m.ln_lambda / std::f64::consts::LN_2 + 0.0;
        Self {
            state,
            n,
            xi_star: m.xi,
            lambda_max: m.lambda(),
            e_log2,
            density: e_log2 / n as f64,
            stationarity: m.slope,
        }
    }
}

/// Geometric entanglement of a concrete state.
pub fn entanglement_of(
    p: &ModelPoint,
    n: usize,
    state: StateSelector,
) -> Result<EntanglementRecord> {
    let evaluator = state.evaluator(p, n)?;
    let max = maximize_lambda(|xi| evaluator.eval(xi))?;
    Ok(EntanglementRecord::from_maximum(state, n, max))
}

/// Geometric entanglement of a registered target state.
pub fn entanglement(
    p: &ModelPoint,
    n: usize,
    state: &dyn TargetState,
) -> Result<EntanglementRecord> {
    entanglement_of(p, n, state.resolve(p, n)?)
}

/// Which sector holds the ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroundSector {
    pub sector: Sector,
    /// The two sector energies agree to within roundoff.
    pub degenerate: bool,
}

/// Sector of the lower of the two lowest levels; ties go to `Half`.
///
/// A tie is `|E_0 - E_1/2| < 1e-12 max(1, |E|)`, the relative form keeping the
/// test meaningful for long chains whose energies carry `O(n eps)` roundoff.
pub fn ground_sector(p: &ModelPoint, n: usize) -> Result<GroundSector> {
    let e_zero = ground_energy(p, n, Sector::Zero)?;
    let e_half = ground_energy(p, n, Sector::Half)?;
    let tol = 1e-12 * e_half.abs().max(1.0);
    let degenerate = (e_zero - e_half).abs() < tol;
    let sector = if !degenerate && e_zero < e_half {
        Sector::Zero
    } else {
        Sector::Half
    };
    Ok(GroundSector { sector, degenerate })
}

/// Finite-difference step used by [`field_derivative`] at field `h`.
pub fn derivative_step(h: f64) -> f64 {
    (1e-3 * (h - 1.0).abs()).max(1e-5)
}

/// `d(density)/dh` by a central difference, Richardson-extrapolated once.
///
/// The state is resolved separately at every field value, so `ground` follows
/// sector switches.
pub fn field_derivative(p: &ModelPoint, n: usize, state: &dyn TargetState) -> Result<f64> {
    field_derivative_with_step(p, n, state, derivative_step(p.h()))
}

pub fn field_derivative_with_step(
    p: &ModelPoint,
    n: usize,
    state: &dyn TargetState,
    step: f64,
) -> Result<f64> {
    if p.h() - step < 0.0 {
        return Err(Error::InvalidParameter {
            name: "h",
            value: p.h(),
            reason: "finite-difference stencil leaves h >= 0",
        });
    }
    let density = |h: f64| -> Result<f64> { Ok(entanglement(&p.with_h(h)?, n, state)?.density) };
    let central =
        |s: f64| -> Result<f64> { Ok((density(p.h() + s)? - density(p.h() - s)?) / (2.0 * s)) };
    let coarse = central(step)?;
    let fine = central(0.5 * step)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Location and height of the maximum of `d(density)/dh` near the critical field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativePeak {
    pub h_max: f64,
    pub slope_max: f64,
}

const PEAK_BRACKET: (f64, f64) = (0.8, 1.2);
const PEAK_SCAN_POINTS: usize = 41;
const PEAK_STEP_FRACTION: f64 = 0.05;

/// Maximum of the field derivative of the `Psi_1/2` density over `h` in `(0.8, 1.2)`.
///
/// `Psi_1/2` is the ground state throughout `h >= 1` and keeps the curve free
/// of the sector switches the finite-chain ground state shows at lower fields.
/// A coarse scan locates the peak; golden-section search refines it. If the
/// scan maximum sits on the bracket edge the bracket is widened once. Away
/// from the peak the curve may turn again (the density has its own maximum
/// above `h = 1`), so unimodality is only demanded in the peak's upper half.
/// The peak narrows like `r / n`, so the difference stencil shrinks with it.
pub fn derivative_peak(r: f64, n: usize) -> Result<DerivativePeak> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "derivative peak needs 0 < r <= 1",
        });
    }
    check_size(n)?;
    if n < 100 {
        return Err(Error::InvalidSize { n, min: 100 });
    }
    let state = SectorState(Sector::Half);
    let slope = |h: f64| -> Result<f64> {
        let step = derivative_step(h).min(PEAK_STEP_FRACTION * r / n as f64);
        field_derivative_with_step(&ModelPoint::new(r, h)?, n, &state, step)
    };

    let (mut lo, mut hi) = PEAK_BRACKET;
    for attempt in 0..2 {
        let grid: Vec<f64> = (0..PEAK_SCAN_POINTS)
            .map(|i| lo + (hi - lo) * i as f64 / (PEAK_SCAN_POINTS - 1) as f64)
            .collect();
        let values = grid.iter().map(|&h| slope(h)).collect::<Result<Vec<_>>>()?;
        let best = values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("non-empty scan");
        if best == 0 || best == PEAK_SCAN_POINTS - 1 {
            if attempt == 0 {
                let w = hi - lo;
                (lo, hi) = ((lo - 0.5 * w).max(0.0), hi + 0.5 * w);
                continue;
            }
            return Err(Error::NonUnimodal { lo, hi });
        }
        // Unimodal around the peak: the points in the upper half of the
        // scanned range form one run that rises to `best` and then falls.
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let floor = min + 0.5 * (values[best] - min);
        let start = (0..=best).rev().take_while(|&i| values[i] >= floor).last().unwrap_or(best);
        let end = (best..values.len()).take_while(|&i| values[i] >= floor).last().unwrap_or(best);
        let isolated = values
            .iter()
            .enumerate()
            .all(|(i, &v)| (start..=end).contains(&i) || v < floor);
        let rising = values[start..=best].windows(2).all(|w| w[1] >= w[0]);
        let falling = values[best..=end].windows(2).all(|w| w[1] <= w[0]);
        if !(isolated && rising && falling) {
            return Err(Error::NonUnimodal { lo, hi });
        }
        let f = |h: f64| slope(h).unwrap_or(f64::NEG_INFINITY);
        let (h_max, slope_max) = golden_section_max(f, grid[best - 1], grid[best + 1], 1e-10, 200);
        return Ok(DerivativePeak { h_max, slope_max });
    }
    unreachable!("the scan loop returns on its second pass")
}

/// A spin direction shared by every site of a product state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizedState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FactorizedState {
    /// Energy per spin `-( (1+r)/2 x^2 + (1-r)/2 y^2 + h z )` of the uniform product state.
    pub fn energy_per_spin(&self, p: &ModelPoint) -> f64 {
        let r = p.r();
        -(0.5 * (1.0 + r) * self.x * self.x + 0.5 * (1.0 - r) * self.y * self.y + p.h() * self.z)
    }

    /// Single-site spinor `(cos(xi/2), sin(xi/2))` in the `sigma^z` basis
    /// (`y = 0`, so the state lies in the x-z plane).
    pub fn spinor(&self) -> (f64, f64) {
        let xi = self.x.atan2(self.z);
        let (s, c) = (0.5 * xi).sin_cos();
        (c, s)
    }
}

/// The two product ground states on the disorder line `r^2 + h^2 = 1`.
pub fn disorder_factorized_state(r: f64) -> Result<[FactorizedState; 2]> {
    if r == 0.0 {
        return Err(Error::DegenerateLine);
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "anisotropy must lie in (0, 1]",
        });
    }
    let x = (2.0 * r / (1.0 + r)).sqrt();
    let z = ((1.0 - r) / (1.0 + r)).sqrt();
    let states = [
        FactorizedState { x, y: 0.0, z },
        FactorizedState { x: -x, y: 0.0, z },
    ];
    let p = ModelPoint::on_disorder_line(r)?;
    for s in &states {
        debug_assert!((s.energy_per_spin(&p) + 1.0).abs() < 1e-12);
    }
    Ok(states)
}
