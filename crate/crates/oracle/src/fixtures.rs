//! CSV regression baselines.

use std::io::Write;

use crate::eigen::{full_spectrum, lowest_in_parity};
use crate::error::Result;
use crate::product::DenseState;

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Rows `r,h,n,index,energy,parity` for every level.
pub fn write_spectrum<W: Write>(out: W, points: &[(f64, f64)], n: usize) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["r", "h", "n", "index", "energy", "parity"])?;
    for &(r, h) in points {
        for (i, (e, p)) in full_spectrum(r, h, n)?.into_iter().enumerate() {
            w.write_record([sci(r), sci(h), n.to_string(), i.to_string(), sci(e), p.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Rows `r,h,n,parity,energy,xi,overlap` for the lowest state of each parity.
///
/// Eigenvector signs follow the oracle's convention (first non-negligible
/// amplitude positive).
pub fn write_overlaps<W: Write>(out: W, r: f64, h: f64, sizes: &[usize], xis: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["r", "h", "n", "parity", "energy", "xi", "overlap"])?;
    for &n in sizes {
        for parity in [1i8, -1] {
            let st = lowest_in_parity(r, h, n, parity)?;
            let dense = DenseState::new(n, st.vector)?;
            for &xi in xis {
                w.write_record([
                    sci(r),
                    sci(h),
                    n.to_string(),
                    parity.to_string(),
                    sci(st.energy),
                    sci(xi),
                    sci(dense.uniform_overlap(xi)),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// `n` points `xi_i = pi i / (n - 1)`.
pub fn xi_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| std::f64::consts::PI * i as f64 / (n.max(2) - 1) as f64)
        .collect()
}
