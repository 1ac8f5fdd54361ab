//! One function per subcommand, each returning the rows to write.

use std::f64::consts::PI;
use std::fs::File;

use rayon::prelude::*;
use xychain::entangle::{field_derivative, ground_sector};
use xychain::scalefit::{
    extract_nu_with_sizes, fit_inverse_n, fit_log_n, inverse_n_row, read_series, PEAK_SIZES,
};
use xychain::spectrum::{enumerate_levels, gap};
use xychain::thermo::{
    de_dh_infinite, density_infinite, divergence_fit, ising_divergence_amplitude,
    CRITICAL_EXCLUSION,
};
use xychain::{entanglement, ModelPoint, Sector, StateRegistry, TargetState};
use xychain_oracle::eigen::{full_spectrum, lowest_in_parity};
use xychain_oracle::fixtures::xi_grid;
use xychain_oracle::product::{lambda_max_unrestricted, DenseState, DEFAULT_RESTARTS};

use crate::error::{CliError, Result};
use crate::table::{Cell, Row, Table};
use crate::{EntangleArgs, FitArgs, Fixture, OracleArgs, SeriesModel, SpectrumArgs, ThermoArgs};

const ENERGY_UNITS: &str = "h in units of the coupling J, energies in units of J";
const ENTANGLEMENT_UNITS: &str =
    "h in units of J, xi in radians, e_log2 in bits, density in bits per spin, de_dh in bits per spin per unit field";
const FIT_UNITS: &str = "densities in bits per spin, n in spins";

/// Row-parallel map; rows come back in input order whatever the completion order.
fn par_rows<T, F>(items: &[T], f: F) -> Result<Vec<Row>>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<Row>> + Sync + Send,
{
    let blocks = items.par_iter().map(f).collect::<Result<Vec<_>>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

fn points(r: &[f64], h: &[f64], n: &[usize]) -> Vec<(f64, f64, usize)> {
    let mut out = Vec::with_capacity(r.len() * h.len() * n.len());
    for &r in r {
        for &n in n {
            for &h in h {
                out.push((r, h, n));
            }
        }
    }
    out
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Table> {
    let sizes = a.n.sizes()?;
    let grid = points(&a.r.0, &a.h.0, &sizes);
    if a.gap {
        let mut t = Table::new("gap", ENERGY_UNITS, &["r", "h", "n", "gap", "ground"]);
        t.rows = par_rows(&grid, |&(r, h, n)| {
            let p = ModelPoint::new(r, h)?;
            let g = ground_sector(&p, n)?;
            Ok(vec![vec![
                r.into(),
                h.into(),
                n.into(),
                gap(&p, n)?.into(),
                g.sector.label().into(),
            ]])
        })?;
        return Ok(t);
    }
    if a.wide {
        let [n] = sizes[..] else {
            return Err(CliError::Validation("--wide takes a single chain length".into()));
        };
        let count = 1usize.checked_shl(n as u32).unwrap_or(usize::MAX);
        let mut columns = vec!["r".to_string(), "h".to_string(), "n".to_string()];
        // Size errors surface from the solver; avoid building a huge header first.
        if n <= xychain::spectrum::MAX_ENUMERATION_SIZE {
            columns.extend((0..count).map(|i| format!("e{i}")));
        }
        let mut t = Table::new("levels-wide", ENERGY_UNITS, &[]);
        t.columns = columns;
        t.rows = par_rows(&grid, |&(r, h, n)| {
            let levels = enumerate_levels(&ModelPoint::new(r, h)?, n)?;
            let mut row: Row = vec![r.into(), h.into(), n.into()];
            row.extend(levels.iter().map(|l| Cell::from(l.energy)));
            Ok(vec![row])
        })?;
        return Ok(t);
    }
    let mut t = Table::new("levels", ENERGY_UNITS, &["r", "h", "n", "index", "energy", "parity"]);
    t.rows = par_rows(&grid, |&(r, h, n)| {
        let levels = enumerate_levels(&ModelPoint::new(r, h)?, n)?;
        Ok(levels
            .iter()
            .enumerate()
            .map(|(i, l)| vec![r.into(), h.into(), n.into(), i.into(), l.energy.into(), l.parity.into()])
            .collect())
    })?;
    Ok(t)
}

pub fn entangle(a: &EntangleArgs) -> Result<Table> {
    let registry = StateRegistry::with_builtins();
    let mut names = a.state.clone();
    names.extend(a.superposition.iter().map(|t| format!("superposition:{t}")));
    if names.is_empty() {
        names.push("ground".into());
    }
    let states = names
        .iter()
        .map(|s| registry.create(s))
        .collect::<std::result::Result<Vec<Box<dyn TargetState>>, _>>()?;
    let sizes = a.n.sizes()?;
    let mut tasks = Vec::new();
    for (r, h, n) in points(&a.r.0, &a.h.0, &sizes) {
        for i in 0..states.len() {
            tasks.push((r, h, n, i));
        }
    }
    let mut columns = vec!["r", "h", "n", "state", "resolved", "xi_star", "lambda_max", "e_log2", "density"];
    if a.derivative {
        columns.push("de_dh");
    }
    let mut t = Table::new("entanglement", ENTANGLEMENT_UNITS, &columns);
    t.rows = par_rows(&tasks, |&(r, h, n, i)| {
        let p = ModelPoint::new(r, h)?;
        let state = states[i].as_ref();
        let rec = entanglement(&p, n, state)?;
        let mut row: Row = vec![
            r.into(),
            h.into(),
            n.into(),
            state.name().into(),
            rec.state.to_string().into(),
            rec.xi_star.into(),
            rec.lambda_max.into(),
            rec.e_log2.into(),
            rec.density.into(),
        ];
        if a.derivative {
            row.push(field_derivative(&p, n, state)?.into());
        }
        Ok(vec![row])
    })?;
    Ok(t)
}

pub fn thermo(a: &ThermoArgs) -> Result<Table> {
    if a.divergence {
        let mut t = Table::new(
            "divergence",
            "amplitudes A of de_dh ~ -A ln|h - 1| in bits per spin per unit field",
            &["r", "below", "above", "amplitude", "expected"],
        );
        t.rows = par_rows(&a.r.0, |&r| {
            let fit = divergence_fit(r)?;
            Ok(vec![vec![
                r.into(),
                fit.below.into(),
                fit.above.into(),
                fit.amplitude.into(),
                ising_divergence_amplitude(r).into(),
            ]])
        })?;
        return Ok(t);
    }
    let mut t = Table::new(
        "thermodynamic",
        "h in units of J, xi in radians, density in bits per spin, de_dh in bits per spin per unit field (NaN at the critical field)",
        &["r", "h", "xi_star", "density", "de_dh"],
    );
    t.rows = par_rows(&points(&a.r.0, &a.h.0, &[0]), |&(r, h, _)| {
        let p = ModelPoint::new(r, h)?;
        let d = density_infinite(&p)?;
        let slope = if (h - 1.0).abs() < CRITICAL_EXCLUSION {
            f64::NAN
        } else {
            de_dh_infinite(&p)?
        };
        Ok(vec![vec![r.into(), h.into(), d.xi_star.into(), d.density.into(), slope.into()]])
    })?;
    Ok(t)
}

pub fn fit(a: &FitArgs) -> Result<Table> {
    if let Some(path) = &a.series {
        let series = read_series(File::open(path)?)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        return Ok(match a.model {
            SeriesModel::InverseN => {
                let f = fit_inverse_n(&series)?;
                let mut t = Table::new("fit-inverse-n", FIT_UNITS, &["e_inf", "b", "c", "rms_residual"]);
                let c = &f.coefficients;
                t.rows.push(vec![c[0].into(), c[1].into(), c[2].into(), f.rms_residual.into()]);
                t
            }
            SeriesModel::LogN => {
                let f = fit_log_n(&series)?;
                let mut t = Table::new("fit-log-n", FIT_UNITS, &["slope", "intercept", "rms_residual"]);
                let c = &f.coefficients;
                t.rows.push(vec![c[0].into(), c[1].into(), f.rms_residual.into()]);
                t
            }
        });
    }
    if a.nu {
        let r = a.r.as_ref().ok_or_else(|| CliError::Validation("--nu needs --r".into()))?;
        let sizes = match &a.sizes {
            Some(g) => g.sizes()?,
            None => PEAK_SIZES.to_vec(),
        };
        let mut t = Table::new(
            "nu",
            "peak slopes in bits per spin per unit field, fitted against ln n",
            &["r", "divergence_amplitude", "slope", "intercept", "rms_residual", "nu"],
        );
        t.rows = par_rows(&r.0, |&r| {
            let e = extract_nu_with_sizes(r, &sizes)?;
            let c = &e.peak_fit.coefficients;
            Ok(vec![vec![
                r.into(),
                e.divergence_amplitude.into(),
                c[0].into(),
                c[1].into(),
                e.peak_fit.rms_residual.into(),
                e.nu.into(),
            ]])
        })?;
        return Ok(t);
    }
    let rs = match &a.r {
        Some(g) => g.0.clone(),
        None => (1..=10).map(|i| i as f64 / 10.0).collect(),
    };
    let mut tasks = Vec::new();
    for &r in &rs {
        tasks.push((r, Sector::Half));
        tasks.push((r, Sector::Zero));
    }
    let mut t = Table::new(
        "inverse-n-table",
        "density = e_inf + b/n + c/n^2 in bits per spin, n = 100..1000",
        &["r", "h", "state", "e_inf", "b", "c", "rms_residual"],
    );
    t.rows = par_rows(&tasks, |&(r, sector)| {
        let f = inverse_n_row(r, a.h, sector)?;
        let c = &f.coefficients;
        Ok(vec![vec![
            r.into(),
            a.h.into(),
            sector.label().into(),
            c[0].into(),
            c[1].into(),
            c[2].into(),
            f.rms_residual.into(),
        ]])
    })?;
    Ok(t)
}

pub fn oracle(a: &OracleArgs) -> Result<Table> {
    let grid = points(&a.r.0, &a.h.0, &a.n.sizes()?);
    match a.fixture {
        Fixture::Spectrum => {
            let mut t = Table::new("oracle-levels", ENERGY_UNITS, &["r", "h", "n", "index", "energy", "parity"]);
            t.rows = par_rows(&grid, |&(r, h, n)| {
                Ok(full_spectrum(r, h, n)?
                    .into_iter()
                    .enumerate()
                    .map(|(i, (e, p))| vec![r.into(), h.into(), n.into(), i.into(), e.into(), p.into()])
                    .collect())
            })?;
            Ok(t)
        }
        Fixture::Overlaps => {
            if a.xi_points < 2 {
                return Err(CliError::Validation("--xi-points must be at least 2".into()));
            }
            let xis = xi_grid(a.xi_points);
            let mut t = Table::new(
                "oracle-overlaps",
                "energies in units of J, xi in radians; first non-negligible amplitude positive",
                &["r", "h", "n", "parity", "energy", "xi", "overlap"],
            );
            t.rows = par_rows(&grid, |&(r, h, n)| {
                let mut rows = Vec::new();
                for parity in [1i8, -1] {
                    let st = lowest_in_parity(r, h, n, parity)?;
                    let energy = st.energy;
                    let dense = DenseState::new(n, st.vector)?;
                    for &xi in &xis {
                        rows.push(vec![
                            r.into(),
                            h.into(),
                            n.into(),
                            parity.into(),
                            energy.into(),
                            xi.into(),
                            dense.uniform_overlap(xi).into(),
                        ]);
                    }
                }
                Ok(rows)
            })?;
            Ok(t)
        }
        Fixture::Lambda => {
            let mut t = Table::new(
                "oracle-lambda",
                "largest overlap with uniform real and with unrestricted product states",
                &["r", "h", "n", "parity", "energy", "lambda_uniform", "lambda_unrestricted"],
            );
            t.rows = par_rows(&grid, |&(r, h, n)| {
                let mut rows = Vec::new();
                for parity in [1i8, -1] {
                    let st = lowest_in_parity(r, h, n, parity)?;
                    let energy = st.energy;
                    let dense = DenseState::new(n, st.vector)?;
                    let uniform = (0..=2000)
                        .map(|i| dense.uniform_overlap(PI * i as f64 / 2000.0).abs())
                        .fold(0.0, f64::max);
                    let (_, full) = lambda_max_unrestricted(&dense, DEFAULT_RESTARTS, 0)?;
                    rows.push(vec![
                        r.into(),
                        h.into(),
                        n.into(),
                        parity.into(),
                        energy.into(),
                        uniform.into(),
                        full.into(),
                    ]);
                }
                Ok(rows)
            })?;
            Ok(t)
        }
    }
}
