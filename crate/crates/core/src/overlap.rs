//! Exact overlaps of the two lowest ring states with the rotated product state
//! `Phi(xi) = exp(-i xi/2 sum_j sigma^y_j) |up ... up>`.
//!
//! For sector `b` the overlap is a prefactor `f_N^(b)(xi)` times a product over
//! the independent momentum pairs `m = 1 - 2b, ..., m < (N - 2b)/2` of
//! `cos theta_m cos^2(xi/2) + sin theta_m sin^2(xi/2) cot(k_m / 2)`.
//! With the angle branch of [`crate::spectrum::bogoliubov_angle`] every factor
//! is non-negative for `xi` in `[0, pi]`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::model::{check_size, ModelPoint, Sector};
use crate::signed_log::SignedLog;
use crate::spectrum::bogoliubov_angle;

/// Polar angle `xi` of the product ansatz, clamped to `[0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AnsatzAngle(f64);

impl AnsatzAngle {
    pub fn new(xi: f64) -> Self {
        Self(xi.clamp(0.0, PI))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Weight angle of `cos(theta) |Psi_1/2> + sin(theta) |Psi_0>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixAngle(f64);

/// Angles this far above `pi/2` are clamped to it, so rounded decimals such
/// as `1.5708` still name the pure `Psi_0` state.
pub const MIX_ANGLE_SLACK: f64 = 1e-4;

impl MixAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2 + MIX_ANGLE_SLACK).contains(&theta) {
            return Err(Error::InvalidParameter {
                name: "theta_mix",
                value: theta,
                reason: "mixing angle must lie in [0, pi/2]",
            });
        }
        Ok(Self(theta.min(FRAC_PI_2)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `f_N^(b)(xi)`.
pub fn prefactor(sector: Sector, n: usize, xi: AnsatzAngle) -> Result<SignedLog> {
    check_size(n)?;
    let (s, c) = (0.5 * xi.value()).sin_cos();
    let root_n = (n as f64).sqrt();
    let even = n % 2 == 0;
    let value = match (sector, even) {
        (Sector::Half, true) => 1.0,
        (Sector::Zero, true) => root_n * s * c,
        (Sector::Half, false) => c,
        (Sector::Zero, false) => root_n * s,
    };
    Ok(SignedLog::from_value(value))
}

/// Pair coefficients of one sector, precomputed so that repeated evaluation at
/// many `xi` costs one multiply-add per pair.
#[derive(Debug, Clone)]
pub struct OverlapKernel {
    n: usize,
    sector: Sector,
    /// `cos theta_m`
    cos_weights: Vec<f64>,
    /// `sin theta_m cot(k_m / 2)`
    sin_weights: Vec<f64>,
}

impl OverlapKernel {
    pub fn new(p: &ModelPoint, n: usize, sector: Sector) -> Result<Self> {
        check_size(n)?;
        let b = sector.offset();
        let first = match sector {
            Sector::Zero => 1,
            Sector::Half => 0,
        };
        // Independent pairs: m < partner(m) = n - m - 2b.
        let pairs = (first..n).take_while(|&m| 2.0 * (m as f64 + b) < n as f64);
        let (mut cos_weights, mut sin_weights) = (Vec::new(), Vec::new());
        for m in pairs {
            debug_assert!(m >= first, "cot(k/2) pole at k = 0");
            let k = 2.0 * PI * (m as f64 + b) / n as f64;
            let (st, ct) = bogoliubov_angle(p, k).sin_cos();
            cos_weights.push(ct);
            sin_weights.push(st / (0.5 * k).tan());
        }
        Ok(Self {
            n,
            sector,
            cos_weights,
            sin_weights,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    /// Number of momentum pairs in the product.
    pub fn pairs(&self) -> usize {
        self.cos_weights.len()
    }

    /// `<Psi_b | Phi(xi)>` in log form.
    pub fn eval(&self, xi: AnsatzAngle) -> SignedLog {
        let pre = prefactor(self.sector, self.n, xi).expect("size checked at construction");
        if pre.is_zero() {
            return SignedLog::ZERO;
        }
        let (s, c) = (0.5 * xi.value()).sin_cos();
        let (c2, s2) = (c * c, s * s);
        // Running product, folded into the log sum before it can leave the
        // normal range. Factors are bounded by cot(pi / 2n) < n.
        const LOW: f64 = 1e-250;
        const HIGH: f64 = 1e250;
        let mut ln_sum = 0.0;
        let mut acc = 1.0f64;
        for (a, b) in self.cos_weights.iter().zip(&self.sin_weights) {
            let f = a * c2 + b * s2;
            if f == 0.0 {
                return SignedLog::ZERO;
            }
            acc *= f;
            let mag = acc.abs();
            if !(LOW..=HIGH).contains(&mag) {
                ln_sum += mag.ln();
                acc = acc.signum();
            }
        }
        ln_sum += acc.abs().ln();
        let sign = if acc < 0.0 { -1 } else { 1 };
        pre * SignedLog::from_parts(sign, ln_sum)
    }

    /// Same product evaluated with plain floating-point multiplication.
    /// Only meaningful for small rings where nothing underflows.
    pub fn eval_direct(&self, xi: AnsatzAngle) -> f64 {
        let pre = prefactor(self.sector, self.n, xi)
            .expect("size checked at construction")
            .value();
        let (s, c) = (0.5 * xi.value()).sin_cos();
        self.cos_weights
            .iter()
            .zip(&self.sin_weights)
            .fold(pre, |acc, (a, b)| acc * (a * c * c + b * s * s))
    }
}

/// `<Psi_b(r, h) | Phi(xi)>` for a ring of `n` spins.
pub fn overlap_value(
    p: &ModelPoint,
    n: usize,
    sector: Sector,
    xi: AnsatzAngle,
) -> Result<SignedLog> {
    Ok(OverlapKernel::new(p, n, sector)?.eval(xi))
}

/// Both sector kernels, for evaluating superpositions of the two lowest states.
#[derive(Debug, Clone)]
pub struct SuperpositionKernel {
    half: OverlapKernel,
    zero: OverlapKernel,
    mix: MixAngle,
}

impl SuperpositionKernel {
    pub fn new(p: &ModelPoint, n: usize, mix: MixAngle) -> Result<Self> {
        Ok(Self {
            half: OverlapKernel::new(p, n, Sector::Half)?,
            zero: OverlapKernel::new(p, n, Sector::Zero)?,
            mix,
        })
    }

    pub fn eval(&self, xi: AnsatzAngle) -> SignedLog {
        let (s, c) = self.mix.value().sin_cos();
        let half = self.half.eval(xi).scale(c);
        let zero = self.zero.eval(xi).scale(s);
        half.add(zero)
    }
}

/// `cos(theta) <Psi_1/2|Phi(xi)> + sin(theta) <Psi_0|Phi(xi)>`.
pub fn superposition_overlap(
    p: &ModelPoint,
    n: usize,
    mix: MixAngle,
    xi: AnsatzAngle,
) -> Result<SignedLog> {
    Ok(SuperpositionKernel::new(p, n, mix)?.eval(xi))
}
