//! Exact eigenpairs: dense parity blocks for small rings, restarted Lanczos
//! with full reorthogonalization beyond.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{OracleError, Result};
use crate::hamiltonian::{RingHamiltonian, MAX_DENSE_SITES};

/// Largest ring whose full spectrum is computed.
pub const MAX_SPECTRUM_SITES: usize = 10;
/// Required `||H v - E v||`.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Lowest levels closer than this are flagged degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

const KRYLOV_DIM: usize = 60;
const MAX_RESTARTS: usize = 200;

/// All `2^n` eigenvalues with their parities, ascending.
pub fn full_spectrum(r: f64, h: f64, n: usize) -> Result<Vec<(f64, i8)>> {
    if n > MAX_SPECTRUM_SITES {
        return Err(OracleError::SizeLimit {
            n,
            limit: MAX_SPECTRUM_SITES,
        });
    }
    let ham = RingHamiltonian::new(r, h, n)?;
    let mut levels = Vec::with_capacity(ham.dim());
    for parity in [1i8, -1] {
        let (_, block) = ham.parity_block(parity)?;
        levels.extend(block.symmetric_eigenvalues().iter().map(|&e| (e, parity)));
    }
    levels.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(levels)
}

/// A normalized real eigenvector over the full `2^n` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub energy: f64,
    pub parity: i8,
    pub vector: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowestPair {
    /// Lowest state of each parity, ascending in energy.
    pub states: [Eigenpair; 2],
    pub degenerate: bool,
}

/// Make the first non-negligible amplitude positive.
fn fix_sign(v: &mut [f64]) {
    if let Some(&x) = v.iter().find(|x| x.abs() > 1e-8) {
        if x < 0.0 {
            v.iter_mut().for_each(|a| *a = -*a);
        }
    }
}

fn residual(ham: &RingHamiltonian, v: &[f64], e: f64) -> f64 {
    let mut hv = vec![0.0; v.len()];
    ham.apply(v, &mut hv);
    hv.iter()
        .zip(v)
        .map(|(a, b)| (a - e * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn dense_lowest(ham: &RingHamiltonian, parity: i8) -> Result<(f64, Vec<f64>)> {
    let (basis, block) = ham.parity_block(parity)?;
    let eig = SymmetricEigen::new(block);
    let i = eig.eigenvalues.imin();
    let mut v = vec![0.0; ham.dim()];
    for (j, &s) in basis.iter().enumerate() {
        v[s] = eig.eigenvectors[(j, i)];
    }
    Ok((eig.eigenvalues[i], v))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    norm
}

fn lanczos_lowest(ham: &RingHamiltonian, parity: i8) -> Result<(f64, Vec<f64>)> {
    let basis = ham.parity_basis(parity);
    let dim = ham.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (ham.n() as u64) ^ ((parity as u64) << 8));
    let mut x = vec![0.0; dim];
    for &s in &basis {
        x[s] = rng.gen::<f64>() - 0.5;
    }
    normalize(&mut x);
    let project = |v: &mut [f64]| {
        for (s, a) in v.iter_mut().enumerate() {
            if crate::hamiltonian::parity_of(s) != parity {
                *a = 0.0;
            }
        }
    };
    let m = KRYLOV_DIM.min(basis.len());
    let mut last = f64::INFINITY;
    for _ in 0..MAX_RESTARTS {
        let mut q: Vec<Vec<f64>> = vec![x.clone()];
        let mut alpha = Vec::with_capacity(m);
        let mut beta: Vec<f64> = Vec::with_capacity(m);
        let mut w = vec![0.0; dim];
        for j in 0..m {
            ham.apply(&q[j], &mut w);
            project(&mut w);
            alpha.push(dot(&w, &q[j]));
            for _ in 0..2 {
                for qi in &q {
                    let c = dot(&w, qi);
                    w.iter_mut().zip(qi).for_each(|(a, b)| *a -= c * b);
                }
            }
            if j + 1 == m {
                break;
            }
            let b = normalize(&mut w);
            if b < 1e-12 {
                break;
            }
            beta.push(b);
            q.push(w.clone());
        }
        let k = alpha.len();
        let t = DMatrix::from_fn(k, k, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j {
                beta[i]
            } else if j + 1 == i {
                beta[j]
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(t);
        let i = eig.eigenvalues.imin();
        let y: DVector<f64> = eig.eigenvectors.column(i).into_owned();
        x.iter_mut().for_each(|a| *a = 0.0);
        for (c, qi) in y.iter().zip(&q) {
            x.iter_mut().zip(qi).for_each(|(a, b)| *a += c * b);
        }
        normalize(&mut x);
        let e = ham.expectation(&x);
        last = residual(ham, &x, e);
        if last < RESIDUAL_TOL {
            return Ok((e, x));
        }
    }
    Err(OracleError::NoConvergence { residual: last })
}

/// Lowest eigenpair within one parity block (`+1` or `-1`).
pub fn lowest_in_parity(r: f64, h: f64, n: usize, parity: i8) -> Result<Eigenpair> {
    let ham = RingHamiltonian::new(r, h, n)?;
    let (energy, mut vector) = if n <= MAX_DENSE_SITES.min(MAX_SPECTRUM_SITES) {
        dense_lowest(&ham, parity)?
    } else {
        lanczos_lowest(&ham, parity)?
    };
    fix_sign(&mut vector);
    let res = residual(&ham, &vector, energy);
    if res > RESIDUAL_TOL {
        return Err(OracleError::NoConvergence { residual: res });
    }
    Ok(Eigenpair {
        energy,
        parity,
        vector,
        residual: res,
    })
}

/// The lowest state of each parity.
pub fn lowest_two(r: f64, h: f64, n: usize) -> Result<LowestPair> {
    let even = lowest_in_parity(r, h, n, 1)?;
    let odd = lowest_in_parity(r, h, n, -1)?;
    let degenerate = (even.energy - odd.energy).abs() < DEGENERACY_TOL * even.energy.abs().max(1.0);
    let states = if odd.energy < even.energy {
        [odd, even]
    } else {
        [even, odd]
    };
    Ok(LowestPair { states, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_size_and_order() {
        let s = full_spectrum(0.4, 0.9, 6).unwrap();
        assert_eq!(s.len(), 64);
        assert!(s.windows(2).all(|w| w[0].0 <= w[1].0));
        assert_eq!(s.iter().filter(|l| l.1 == 1).count(), 32);
        assert!(full_spectrum(1.0, 1.0, 11).is_err());
    }

    #[test]
    fn trace_is_zero() {
        let s = full_spectrum(0.7, 1.4, 7).unwrap();
        assert!(s.iter().map(|l| l.0).sum::<f64>().abs() < 1e-9);
    }

    #[test]
    fn lowest_states_match_full_spectrum() {
        let s = full_spectrum(1.0, 0.5, 8).unwrap();
        let pair = lowest_two(1.0, 0.5, 8).unwrap();
        assert!((pair.states[0].energy - s[0].0).abs() < 1e-10);
        for st in &pair.states {
            let min = s.iter().filter(|l| l.1 == st.parity).map(|l| l.0).fold(f64::INFINITY, f64::min);
            assert!((st.energy - min).abs() < 1e-10);
        }
    }

    #[test]
    fn lanczos_agrees_with_dense() {
        let ham = RingHamiltonian::new(0.6, 0.8, 10).unwrap();
        for parity in [1, -1] {
            let (ed, _) = dense_lowest(&ham, parity).unwrap();
            let (el, v) = lanczos_lowest(&ham, parity).unwrap();
            assert!((ed - el).abs() < 1e-10);
            assert!(residual(&ham, &v, el) < RESIDUAL_TOL);
        }
    }

    #[test]
    fn disorder_line_degeneracy() {
        let r: f64 = 0.6;
        let pair = lowest_two(r, (1.0 - r * r).sqrt(), 8).unwrap();
        assert!(pair.degenerate);
        for st in &pair.states {
            assert!((st.energy + 8.0).abs() < 1e-10);
        }
    }

    #[test]
    fn strong_field_gap() {
        let pair = lowest_two(1.0, 5.0, 6).unwrap();
        assert_eq!(pair.states[0].parity, 1);
        let gap = pair.states[1].energy - pair.states[0].energy;
        assert!((gap - 8.0).abs() < 0.05, "{gap}");
    }

    #[test]
    fn large_ring_residual() {
        let st = lowest_in_parity(1.0, 1.0, 13, -1).unwrap();
        assert!(st.residual < RESIDUAL_TOL);
        assert!((crate::product::norm(&st.vector) - 1.0).abs() < 1e-12);
    }
}
