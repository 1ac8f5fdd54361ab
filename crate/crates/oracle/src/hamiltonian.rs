use nalgebra::DMatrix;

use crate::error::{OracleError, Result};

/// Largest ring the oracle accepts.
pub const MAX_SITES: usize = 14;
/// Largest ring for which a dense matrix is materialized.
pub const MAX_DENSE_SITES: usize = 12;

/// `H = -sum_j [(1+r)/2 X_j X_j+1 + (1-r)/2 Y_j Y_j+1 + h Z_j]` on a ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingHamiltonian {
    n: usize,
    r: f64,
    h: f64,
}

/// `prod_j Z_j` on a basis state.
pub fn parity_of(state: usize) -> i8 {
    if state.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

impl RingHamiltonian {
    pub fn new(r: f64, h: f64, n: usize) -> Result<Self> {
        if !(2..=MAX_SITES).contains(&n) {
            return Err(OracleError::SizeLimit {
                n,
                limit: MAX_SITES,
            });
        }
        if !r.is_finite() {
            return Err(OracleError::InvalidParameter { name: "r", value: r });
        }
        if !h.is_finite() {
            return Err(OracleError::InvalidParameter { name: "h", value: h });
        }
        Ok(Self { n, r, h })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn diagonal(&self, state: usize) -> f64 {
        -self.h * (self.n as f64 - 2.0 * state.count_ones() as f64)
    }

    /// Off-diagonal entries `(target, value)` reached from `state`.
    ///
    /// Both bonds of a two-site ring act on the same pair.
    pub fn hops(&self, state: usize, mut emit: impl FnMut(usize, f64)) {
        let n = self.n;
        for j in 0..n {
            let k = (j + 1) % n;
            let (bj, bk) = ((state >> j) & 1, (state >> k) & 1);
            let v = if bj == bk { -self.r } else { -1.0 };
            if v != 0.0 {
                emit(state ^ (1 << j) ^ (1 << k), v);
            }
        }
    }

    /// `out = H v`.
    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        for (s, o) in out.iter_mut().enumerate() {
            let mut acc = self.diagonal(s) * v[s];
            self.hops(s, |t, x| acc += x * v[t]);
            *o = acc;
        }
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        if self.n > MAX_DENSE_SITES {
            return Err(OracleError::SizeLimit {
                n: self.n,
                limit: MAX_DENSE_SITES,
            });
        }
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for s in 0..d {
            m[(s, s)] += self.diagonal(s);
            self.hops(s, |t, x| m[(t, s)] += x);
        }
        Ok(m)
    }

    /// Basis states of one parity, in increasing order.
    pub fn parity_basis(&self, parity: i8) -> Vec<usize> {
        (0..self.dim()).filter(|&s| parity_of(s) == parity).collect()
    }

    /// The Hamiltonian restricted to one parity block.
    pub fn parity_block(&self, parity: i8) -> Result<(Vec<usize>, DMatrix<f64>)> {
        if self.n > MAX_DENSE_SITES {
            return Err(OracleError::SizeLimit {
                n: self.n,
                limit: MAX_DENSE_SITES,
            });
        }
        let basis = self.parity_basis(parity);
        let mut index = vec![usize::MAX; self.dim()];
        for (i, &s) in basis.iter().enumerate() {
            index[s] = i;
        }
        let d = basis.len();
        let mut m = DMatrix::zeros(d, d);
        for (i, &s) in basis.iter().enumerate() {
            m[(i, i)] += self.diagonal(s);
            self.hops(s, |t, x| m[(index[t], i)] += x);
        }
        Ok((basis, m))
    }

    /// `<v|H|v>` for a real vector.
    pub fn expectation(&self, v: &[f64]) -> f64 {
        let mut hv = vec![0.0; v.len()];
        self.apply(v, &mut hv);
        v.iter().zip(&hv).map(|(a, b)| a * b).sum()
    }
}
