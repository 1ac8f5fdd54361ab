//! Product states and the unrestricted overlap maximization.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{OracleError, Result};

pub const DEFAULT_RESTARTS: usize = 64;
pub const MIN_RESTARTS: usize = 32;
const CONVERGENCE: f64 = 1e-12;
const MAX_SWEEPS: usize = 20_000;

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// A normalized real state on `n` sites.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amplitudes: Vec<f64>,
}

impl DenseState {
    /// Normalizes `amplitudes`, whose length must be `2^n`.
    pub fn new(n: usize, mut amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.len() != 1 << n {
            return Err(OracleError::Dimension {
                got: amplitudes.len(),
                expected: 1 << n,
            });
        }
        let s = norm(&amplitudes);
        if !(s > 0.0) || !s.is_finite() {
            return Err(OracleError::InvalidParameter { name: "norm", value: s });
        }
        amplitudes.iter_mut().for_each(|a| *a /= s);
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// `prod_i (c_i |up> + s_i |down>)` from per-site real spinors.
    pub fn product(spinors: &[(f64, f64)]) -> Result<Self> {
        let n = spinors.len();
        let amplitudes = (0..1usize << n)
            .map(|s| {
                spinors
                    .iter()
                    .enumerate()
                    .map(|(i, &(c, d))| if (s >> i) & 1 == 0 { c } else { d })
                    .product()
            })
            .collect();
        Self::new(n, amplitudes)
    }

    /// The same spinor `(cos(xi/2), sin(xi/2))` on every site.
    pub fn uniform_product(n: usize, xi: f64) -> Result<Self> {
        let (s, c) = (0.5 * xi).sin_cos();
        Self::product(&vec![(c, s); n])
    }

    /// `cos(t) a + sin(t) b`, renormalized.
    pub fn superpose(a: &Self, b: &Self, t: f64) -> Result<Self> {
        let (s, c) = t.sin_cos();
        let v = a
            .amplitudes
            .iter()
            .zip(&b.amplitudes)
            .map(|(x, y)| c * x + s * y)
            .collect();
        Self::new(a.n, v)
    }

    /// `<Phi(xi)|self>` with `Phi(xi)` the uniform real product state.
    pub fn uniform_overlap(&self, xi: f64) -> f64 {
        let (s, c) = (0.5 * xi).sin_cos();
        let n = self.n as i32;
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let d = i.count_ones() as i32;
                a * c.powi(n - d) * s.powi(d)
            })
            .sum()
    }
}

/// Per-site Bloch angles of `cos(xi/2)|up> + e^{i phi} sin(xi/2)|down>`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductAnsatzFull {
    pub xi: Vec<f64>,
    pub phi: Vec<f64>,
}

impl ProductAnsatzFull {
    fn spinors(&self) -> Vec<[Complex64; 2]> {
        self.xi
            .iter()
            .zip(&self.phi)
            .map(|(&x, &p)| {
                let (s, c) = (0.5 * x).sin_cos();
                [Complex64::new(c, 0.0), Complex64::from_polar(s, p)]
            })
            .collect()
    }

    fn from_spinors(sp: &[[Complex64; 2]]) -> Self {
        let mut xi = Vec::with_capacity(sp.len());
        let mut phi = Vec::with_capacity(sp.len());
        for [a, b] in sp {
            xi.push(2.0 * b.norm().atan2(a.norm()));
            let mut p = b.arg() - a.arg();
            if p >= PI {
                p -= 2.0 * PI;
            } else if p < -PI {
                p += 2.0 * PI;
            }
            phi.push(p);
        }
        Self { xi, phi }
    }

    /// `<Phi|psi>`.
    pub fn overlap(&self, state: &DenseState) -> Complex64 {
        let sp = self.spinors();
        let mut v: Vec<Complex64> = state.amplitudes.iter().map(|&a| a.into()).collect();
        for site in (0..sp.len()).rev() {
            contract_top(&mut v, &sp[site]);
        }
        v[0]
    }
}

/// Contract the highest remaining site with `<spinor|`.
fn contract_top(v: &mut Vec<Complex64>, spinor: &[Complex64; 2]) {
    let half = v.len() / 2;
    let (a, b) = (spinor[0].conj(), spinor[1].conj());
    for k in 0..half {
        v[k] = a * v[k] + b * v[k + half];
    }
    v.truncate(half);
}

/// Contract the lowest remaining site with `<spinor|`.
fn contract_bottom(v: &mut Vec<Complex64>, spinor: &[Complex64; 2]) {
    let half = v.len() / 2;
    let (a, b) = (spinor[0].conj(), spinor[1].conj());
    for k in 0..half {
        v[k] = a * v[2 * k] + b * v[2 * k + 1];
    }
    v.truncate(half);
}

/// Partial overlap with every site except `j` contracted.
fn environment(psi: &[Complex64], sp: &[[Complex64; 2]], j: usize, buf: &mut Vec<Complex64>) -> [Complex64; 2] {
    buf.clear();
    buf.extend_from_slice(psi);
    for site in (j + 1..sp.len()).rev() {
        contract_top(buf, &sp[site]);
    }
    for site in 0..j {
        contract_bottom(buf, &sp[site]);
    }
    [buf[0], buf[1]]
}

/// Alternating single-site ascent from `sp`; returns the final `|<Phi|psi>|`
/// and the sequence of per-sweep values.
fn ascend(psi: &[Complex64], sp: &mut [[Complex64; 2]]) -> (f64, Vec<f64>) {
    let mut buf = Vec::with_capacity(psi.len());
    let mut history = Vec::new();
    let mut last = -1.0;
    for _ in 0..MAX_SWEEPS {
        let mut value = 0.0;
        for j in 0..sp.len() {
            let [a, b] = environment(psi, sp, j, &mut buf);
            let m = (a.norm_sqr() + b.norm_sqr()).sqrt();
            if m > 0.0 {
                sp[j] = [a / m, b / m];
            }
            value = m;
        }
        history.push(value);
        if (value - last).abs() < CONVERGENCE {
            break;
        }
        last = value;
    }
    (history.last().copied().unwrap_or(0.0), history)
}

fn random_spinor(rng: &mut ChaCha8Rng) -> [Complex64; 2] {
    let cos_xi: f64 = rng.gen_range(-1.0..=1.0);
    let xi = cos_xi.acos();
    let phi = rng.gen_range(-PI..PI);
    let (s, c) = (0.5 * xi).sin_cos();
    [Complex64::new(c, 0.0), Complex64::from_polar(s, phi)]
}

/// `max |<Phi|psi>|` over all product states, by alternating single-site
/// optimization from `restarts` random starting points.
///
/// One extra start is the best uniform real product state on a 64-point grid.
pub fn lambda_max_unrestricted(
    state: &DenseState,
    restarts: usize,
    seed: u64,
) -> Result<(ProductAnsatzFull, f64)> {
    if restarts < MIN_RESTARTS {
        return Err(OracleError::InvalidParameter {
            name: "restarts",
            value: restarts as f64,
        });
    }
    let n = state.n;
    let psi: Vec<Complex64> = state.amplitudes.iter().map(|&a| a.into()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let grid_xi = (0..64)
        .map(|i| PI * i as f64 / 63.0)
        .max_by(|&a, &b| {
            state
                .uniform_overlap(a)
                .abs()
                .total_cmp(&state.uniform_overlap(b).abs())
        })
        .unwrap_or(0.0);
    let grid_start = ProductAnsatzFull {
        xi: vec![grid_xi; n],
        phi: vec![0.0; n],
    }
    .spinors();

    let mut best: Option<(Vec<[Complex64; 2]>, f64)> = None;
    for attempt in 0..=restarts {
        let mut sp = if attempt == 0 {
            grid_start.clone()
        } else {
            (0..n).map(|_| random_spinor(&mut rng)).collect()
        };
        let (value, _) = ascend(&psi, &mut sp);
        if best.as_ref().map_or(true, |b| value > b.1) {
            best = Some((sp, value));
        }
    }
    let (sp, value) = best.expect("at least one start");
    Ok((ProductAnsatzFull::from_spinors(&sp), value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_state_has_unit_lambda() {
        let st = DenseState::product(&[(0.6, 0.8), (1.0, 0.0), (0.0, 1.0), (0.28, 0.96)]).unwrap();
        let (ans, l) = lambda_max_unrestricted(&st, 32, 1).unwrap();
        assert!((l - 1.0).abs() < 1e-12);
        assert!((ans.overlap(&st).norm() - l).abs() < 1e-12);
    }

    #[test]
    fn ghz_lambda() {
        let n = 6;
        let mut v = vec![0.0; 1 << n];
        v[0] = 1.0;
        v[(1 << n) - 1] = 1.0;
        let st = DenseState::new(n, v).unwrap();
        let (_, l) = lambda_max_unrestricted(&st, 32, 7).unwrap();
        assert!((l - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn w_state_lambda() {
        // |W_n>: Lambda_max = ((n-1)/n)^((n-1)/2).
        let n = 5;
        let mut v = vec![0.0; 1 << n];
        for i in 0..n {
            v[1 << i] = 1.0;
        }
        let st = DenseState::new(n, v).unwrap();
        let (_, l) = lambda_max_unrestricted(&st, 32, 3).unwrap();
        let want = (4.0f64 / 5.0).powf(2.0);
        assert!((l - want).abs() < 1e-9, "{l} vs {want}");
    }

    #[test]
    fn ascent_is_monotone() {
        let n = 5;
        let v: Vec<f64> = (0..1 << n).map(|i| (i * 37 % 17) as f64 - 8.0).collect();
        let st = DenseState::new(n, v).unwrap();
        let psi: Vec<Complex64> = st.amplitudes().iter().map(|&a| a.into()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..8 {
            let mut sp: Vec<_> = (0..n).map(|_| random_spinor(&mut rng)).collect();
            let (_, hist) = ascend(&psi, &mut sp);
            assert!(hist.windows(2).all(|w| w[1] >= w[0] - 1e-14));
        }
    }

    #[test]
    fn uniform_overlap_matches_ansatz() {
        let n = 4;
        let v: Vec<f64> = (0..1 << n).map(|i| (i as f64).sin()).collect();
        let st = DenseState::new(n, v).unwrap();
        let ans = ProductAnsatzFull {
            xi: vec![1.1; n],
            phi: vec![0.0; n],
        };
        assert!((ans.overlap(&st).re - st.uniform_overlap(1.1)).abs() < 1e-14);
    }

    #[test]
    fn restart_floor() {
        let st = DenseState::uniform_product(3, 0.4).unwrap();
        assert!(lambda_max_unrestricted(&st, 8, 0).is_err());
    }

    #[test]
    fn wrong_dimension() {
        assert!(DenseState::new(3, vec![1.0; 7]).is_err());
    }
}
