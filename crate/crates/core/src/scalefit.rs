//! Finite-size scaling fits: `E_N = E_inf + b/N + c/N^2` for densities and
//! `slope_max(N) = a ln N + const` for the derivative peak.
//!
//! Barber's algebraic case, `P_L ~ l^(rho/nu)`, needs no separate model: a
//! log-log series fed to [`fit_log_n`] returns `rho/nu` as its slope.

use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entangle::{derivative_peak, entanglement_of};
use crate::error::{Error, Result};
use crate::model::{ModelPoint, Sector};
use crate::states::StateSelector;
use crate::thermo::divergence_coefficient;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub n: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FitModel {
    /// Basis `{1, 1/n, 1/n^2}`; coefficients `(E_inf, b, c)`.
    InverseN,
    /// Basis `{ln n, 1}`; coefficients `(slope, intercept)`.
    LogN,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: FitModel,
    pub coefficients: Vec<f64>,
    pub rms_residual: f64,
    /// `sigma^2 (A^T A)^-1`, zero when the fit has no residual degrees of freedom.
    pub covariance: Vec<Vec<f64>>,
}

/// Ordinary least squares for `y ~ design * coefficients`.
///
/// Each row of `design` holds the basis functions at one sample.
pub fn least_squares(design: &[Vec<f64>], y: &[f64]) -> Result<(Vec<f64>, f64, Vec<Vec<f64>>)> {
    let rows = design.len();
    if rows == 0 || rows != y.len() {
        return Err(Error::Fit("design and data lengths differ"));
    }
    let cols = design[0].len();
    if rows < cols {
        return Err(Error::Fit("fewer samples than coefficients"));
    }
    let a = DMatrix::from_fn(rows, cols, |i, j| design[i][j]);
    let b = DVector::from_column_slice(y);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    if svd.singular_values.min() <= 1e-13 * smax {
        return Err(Error::Fit("rank-deficient design"));
    }
    let coef = svd
        .solve(&b, 0.0)
        .map_err(|_| Error::Fit("singular value decomposition failed"))?;
    let resid = &b - &a * &coef;
    let ssr = resid.norm_squared();
    let rms = (ssr / rows as f64).sqrt();
    let dof = rows - cols;
    let sigma2 = if dof > 0 { ssr / dof as f64 } else { 0.0 };
    let ata_inv = (a.transpose() * &a)
        .try_inverse()
        .ok_or(Error::Fit("normal matrix is singular"))?;
    let cov = (0..cols)
        .map(|i| (0..cols).map(|j| sigma2 * ata_inv[(i, j)]).collect())
        .collect();
    Ok((coef.iter().copied().collect(), rms, cov))
}

fn check_series(series: &[SeriesPoint]) -> Result<()> {
    if series.len() < 4 {
        return Err(Error::Fit("need at least four points"));
    }
    if series.windows(2).any(|w| w[1].n <= w[0].n) {
        return Err(Error::Fit("chain lengths must be strictly increasing"));
    }
    if series[0].n == 0 {
        return Err(Error::Fit("chain length must be positive"));
    }
    Ok(())
}

/// Fit `value = E_inf + b/n + c/n^2`.
pub fn fit_inverse_n(series: &[SeriesPoint]) -> Result<FitResult> {
    check_series(series)?;
    let (first, last) = (series[0].n, series[series.len() - 1].n);
    if last < 10 * first {
        return Err(Error::Fit("chain lengths must span at least one decade"));
    }
    let design: Vec<Vec<f64>> = series
        .iter()
        .map(|p| {
            let x = 1.0 / p.n as f64;
            vec![1.0, x, x * x]
        })
        .collect();
    let y: Vec<f64> = series.iter().map(|p| p.value).collect();
    let (coefficients, rms_residual, covariance) = least_squares(&design, &y)?;
    Ok(FitResult {
        model: FitModel::InverseN,
        coefficients,
        rms_residual,
        covariance,
    })
}

/// Fit `value = slope ln n + intercept`.
pub fn fit_log_n(series: &[SeriesPoint]) -> Result<FitResult> {
    check_series(series)?;
    let design: Vec<Vec<f64>> = series
        .iter()
        .map(|p| vec![(p.n as f64).ln(), 1.0])
        .collect();
    let y: Vec<f64> = series.iter().map(|p| p.value).collect();
    let (coefficients, rms_residual, covariance) = least_squares(&design, &y)?;
    Ok(FitResult {
        model: FitModel::LogN,
        coefficients,
        rms_residual,
        covariance,
    })
}

/// Chain lengths used for the `1/N` expansion: 100, 200, ..., 1000.
pub fn default_density_sizes() -> Vec<usize> {
    (1..=10).map(|i| 100 * i).collect()
}

/// Chain lengths used for the derivative-peak logarithmic fit.
pub const PEAK_SIZES: [usize; 5] = [10_000, 30_000, 50_000, 80_000, 100_000];

/// Entanglement densities of one state over a list of chain lengths.
pub fn density_series(
    p: &ModelPoint,
    state: StateSelector,
    sizes: &[usize],
) -> Result<Vec<SeriesPoint>> {
    sizes
        .par_iter()
        .map(|&n| {
            Ok(SeriesPoint {
                n,
                value: entanglement_of(p, n, state)?.density,
            })
        })
        .collect()
}

/// `1/N` fit of one sector's density at `(r, h)` over the default sizes.
pub fn inverse_n_row(r: f64, h: f64, sector: Sector) -> Result<FitResult> {
    let p = ModelPoint::new(r, h)?;
    let series = density_series(&p, StateSelector::Sector(sector), &default_density_sizes())?;
    fit_inverse_n(&series)
}

/// Peak heights of `d(density)/dh` over chain lengths.
pub fn peak_slope_series(r: f64, sizes: &[usize]) -> Result<Vec<SeriesPoint>> {
    sizes
        .par_iter()
        .map(|&n| {
            Ok(SeriesPoint {
                n,
                value: derivative_peak(r, n)?.slope_max,
            })
        })
        .collect()
}

/// `nu` as the ratio of the bulk divergence amplitude to the peak-growth slope.
pub fn nu_ratio(divergence_amplitude: f64, log_slope: f64) -> f64 {
    divergence_amplitude / log_slope
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NuEstimate {
    pub r: f64,
    pub divergence_amplitude: f64,
    pub peak_fit: FitResult,
    pub nu: f64,
}

/// Correlation-length exponent from entanglement alone.
pub fn extract_nu(r: f64) -> Result<NuEstimate> {
    extract_nu_with_sizes(r, &PEAK_SIZES)
}

pub fn extract_nu_with_sizes(r: f64, sizes: &[usize]) -> Result<NuEstimate> {
    let (amp, series) = rayon::join(
        || divergence_coefficient(r),
        || peak_slope_series(r, sizes),
    );
    let divergence_amplitude = amp?;
    let peak_fit = fit_log_n(&series?)?;
    Ok(NuEstimate {
        r,
        divergence_amplitude,
        nu: nu_ratio(divergence_amplitude, peak_fit.coefficients[0]),
        peak_fit,
    })
}

/// Header comment written in front of series CSV files.
pub const SERIES_HEADER: &str = "# xychain series v1: n = spins, value = bits per spin (or per spin per unit field)";

/// Write a series as `n,value` CSV preceded by [`SERIES_HEADER`].
pub fn write_series<W: Write>(mut out: W, series: &[SeriesPoint]) -> std::io::Result<()> {
    writeln!(out, "{SERIES_HEADER}")?;
    let mut w = csv::WriterBuilder::new().from_writer(out);
    w.write_record(["n", "value"])?;
    for p in series {
        w.write_record([p.n.to_string(), format!("{:.16e}", p.value)])?;
    }
    w.flush()
}

/// Read an `n,value` CSV; `#` lines are comments.
pub fn read_series<R: Read>(input: R) -> std::result::Result<Vec<SeriesPoint>, csv::Error> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input);
    r.deserialize().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(f: impl Fn(f64) -> f64, sizes: &[usize]) -> Vec<SeriesPoint> {
        sizes
            .iter()
            .map(|&n| SeriesPoint {
                n,
                value: f(n as f64),
            })
            .collect()
    }

    #[test]
    fn inverse_n_recovers_model() {
        let s = synthetic(|n| 0.1 + 2.0 / n - 3.0 / (n * n), &default_density_sizes());
        let fit = fit_inverse_n(&s).unwrap();
        for (got, want) in fit.coefficients.iter().zip([0.1, 2.0, -3.0]) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        assert!(fit.rms_residual < 1e-14);
    }

    #[test]
    fn log_n_recovers_model() {
        let s = synthetic(|n| 4.0 * n.ln() + 1.0, &[10, 30, 100, 300, 1000]);
        let fit = fit_log_n(&s).unwrap();
        assert!((fit.coefficients[0] - 4.0).abs() < 1e-12);
        assert!((fit.coefficients[1] - 1.0).abs() < 1e-11);
    }

    #[test]
    fn algebraic_divergence_via_log_log() {
        // P_L = C l^(rho/nu) with rho/nu = 0.75.
        let s = synthetic(|n| (2.5 * n.powf(0.75)).ln(), &[16, 32, 64, 128, 256]);
        let fit = fit_log_n(&s).unwrap();
        assert!((fit.coefficients[0] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn nu_ratio_arithmetic() {
        assert_eq!(nu_ratio(1.5, 3.0), 0.5);
    }

    #[test]
    fn covariance_is_positive_semidefinite() {
        let s = synthetic(
            |n| 0.03 + 1.0 / n + 0.3 * ((n * 7.0).sin()) / (n * n),
            &default_density_sizes(),
        );
        let fit = fit_inverse_n(&s).unwrap();
        let cov = DMatrix::from_fn(3, 3, |i, j| fit.covariance[i][j]);
        let eig = cov.symmetric_eigen();
        assert!(eig.eigenvalues.iter().all(|&l| l >= -1e-20));
    }

    #[test]
    fn invalid_series() {
        let short = synthetic(|n| n, &[100, 1000, 2000]);
        assert!(fit_inverse_n(&short).is_err());
        let narrow = synthetic(|n| 1.0 / n, &[100, 200, 300, 400, 500]);
        assert!(fit_inverse_n(&narrow).is_err());
        let unordered = synthetic(|n| n, &[100, 300, 200, 1000]);
        assert!(fit_log_n(&unordered).is_err());
        let design = vec![vec![1.0, 2.0]; 5];
        assert_eq!(
            least_squares(&design, &[1.0; 5]).unwrap_err(),
            Error::Fit("rank-deficient design")
        );
    }

    #[test]
    fn series_csv_round_trip() {
        let s = synthetic(|n| 1.0 / n + 0.01, &[100, 200, 300]);
        let mut buf = Vec::new();
        write_series(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# xychain series v1"));
        assert_eq!(read_series(buf.as_slice()).unwrap(), s);
    }
}
