#![allow(dead_code)]

use std::f64::consts::PI;

use xychain::maximize::golden_section_max;
use xychain::model::{ModelPoint, Sector};
use xychain::overlap::{overlap_value, AnsatzAngle};
use xychain_oracle::{lowest_in_parity, DenseState};

pub fn pt(r: f64, h: f64) -> ModelPoint {
    ModelPoint::new(r, h).unwrap()
}

pub fn xi_grid(points: usize) -> Vec<f64> {
    (0..points).map(|i| PI * i as f64 / (points - 1) as f64).collect()
}

/// Lowest eigenvector of the sector's parity block, signed so that its
/// overlap with the `xi = pi/2` product state is non-negative.
pub fn oracle_state(r: f64, h: f64, n: usize, sector: Sector) -> (f64, DenseState) {
    let pair = lowest_in_parity(r, h, n, sector.parity()).unwrap();
    let mut st = DenseState::new(n, pair.vector).unwrap();
    if st.uniform_overlap(PI / 2.0) < 0.0 {
        st = DenseState::new(n, st.amplitudes().iter().map(|a| -a).collect()).unwrap();
    }
    (pair.energy, st)
}

/// Largest deviation between the closed-form overlaps and the oracle's,
/// allowing one global sign.
pub fn overlap_deviation(r: f64, h: f64, n: usize, sector: Sector, xis: &[f64]) -> f64 {
    let (_, st) = oracle_state(r, h, n, sector);
    let p = pt(r, h);
    let exact: Vec<f64> = xis.iter().map(|&x| st.uniform_overlap(x)).collect();
    let formula: Vec<f64> = xis
        .iter()
        .map(|&x| overlap_value(&p, n, sector, AnsatzAngle::new(x)).unwrap().value())
        .collect();
    [1.0, -1.0]
        .iter()
        .map(|s| {
            exact
                .iter()
                .zip(&formula)
                .map(|(e, f)| (s * e - f).abs())
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

/// `max_xi |<Phi(xi)|psi>|` for a dense state, by grid plus golden section.
pub fn oracle_uniform_lambda(st: &DenseState) -> f64 {
    let f = |x: f64| st.uniform_overlap(x).abs();
    let grid = xi_grid(513);
    let best = (0..grid.len())
        .max_by(|&a, &b| f(grid[a]).total_cmp(&f(grid[b])))
        .unwrap();
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    golden_section_max(f, lo, hi, 1e-12, 200).1.max(f(grid[best]))
}
