mod common;

use common::*;
use xychain::entangle::{derivative_step, disorder_factorized_state, entanglement, field_derivative, ground_sector};
use xychain::model::Sector;
use xychain::overlap::{superposition_overlap, AnsatzAngle, MixAngle};
use xychain::spectrum::{enumerate_levels, ground_energy};
use xychain::states::GroundState;
use xychain_oracle::{full_spectrum, lowest_two, DenseState, RingHamiltonian};

const R_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const H_GRID: [f64; 5] = [0.0, 0.4, 0.9, 1.0, 1.7];

#[test]
fn spectra_match_dense_diagonalization() {
    for n in 2..=8 {
        for r in R_GRID {
            for h in H_GRID {
                let exact = full_spectrum(r, h, n).unwrap();
                let levels = enumerate_levels(&pt(r, h), n).unwrap();
                assert_eq!(levels.len(), exact.len());
                for (l, (e, _)) in levels.iter().zip(&exact) {
                    assert!((l.energy - e).abs() < 1e-9, "n={n} r={r} h={h}");
                }
                for parity in [1i8, -1] {
                    let a = levels.iter().filter(|l| l.parity == parity).count();
                    let b = exact.iter().filter(|l| l.1 == parity).count();
                    assert_eq!(a, b);
                }
            }
        }
    }
}

#[test]
fn two_site_ising_levels() {
    let levels = enumerate_levels(&pt(1.0, 0.0), 2).unwrap();
    let e: Vec<f64> = levels.iter().map(|l| l.energy).collect();
    for (got, want) in e.iter().zip([-2.0, -2.0, 2.0, 2.0]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn sector_ground_energies_match_parity_blocks() {
    for (r, h) in [(1.0, 0.5), (0.3, 1.2), (0.7, 0.2)] {
        for n in [4, 7, 8, 11] {
            let pair = lowest_two(r, h, n).unwrap();
            for st in &pair.states {
                let sector = Sector::from_parity(st.parity);
                let e = ground_energy(&pt(r, h), n, sector).unwrap();
                assert!((e - st.energy).abs() < 1e-10, "r={r} h={h} n={n} {sector:?}");
            }
        }
    }
}

#[test]
fn overlaps_match_eigenvectors() {
    let xis = xi_grid(64);
    for (r, h) in [(1.0, 0.8), (0.5, 1.3), (0.8, 0.3)] {
        for n in 4..=13 {
            for sector in Sector::ALL {
                let dev = overlap_deviation(r, h, n, sector, &xis);
                assert!(dev < 1e-8, "r={r} h={h} n={n} {sector:?}: {dev:e}");
            }
        }
    }
}

#[test]
fn superposition_overlaps_match_oracle() {
    let n = 10;
    let xis = xi_grid(33);
    for h in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let (_, half) = oracle_state(1.0, h, n, Sector::Half);
        let (_, zero) = oracle_state(1.0, h, n, Sector::Zero);
        for t in [0.0, std::f64::consts::PI / 8.0, std::f64::consts::PI / 4.0, std::f64::consts::FRAC_PI_2] {
            let mix = DenseState::superpose(&half, &zero, t).unwrap();
            for &xi in &xis {
                let want = mix.uniform_overlap(xi);
                let got = superposition_overlap(&pt(1.0, h), n, MixAngle::new(t).unwrap(), AnsatzAngle::new(xi))
                    .unwrap()
                    .value();
                assert!((got - want).abs() < 1e-8, "h={h} t={t} xi={xi}");
            }
        }
    }
}

#[test]
fn ground_sector_agrees_with_oracle() {
    for (r, h) in [(1.0, 1.5), (0.2, 0.9), (0.5, 0.5), (0.2, 0.3)] {
        for n in [6, 8, 9] {
            let pair = lowest_two(r, h, n).unwrap();
            let g = ground_sector(&pt(r, h), n).unwrap();
            if !pair.degenerate && !g.degenerate {
                assert_eq!(g.sector.parity(), pair.states[0].parity, "r={r} h={h} n={n}");
            }
        }
    }
}

#[test]
fn disorder_line_product_energy() {
    for r in [0.2f64, 0.6, 0.9] {
        let h = (1.0 - r * r).sqrt();
        let ham = RingHamiltonian::new(r, h, 8).unwrap();
        for s in disorder_factorized_state(r).unwrap() {
            let (c, d) = s.spinor();
            let st = DenseState::product(&[(c, d); 8]).unwrap();
            assert!((ham.expectation(st.amplitudes()) + 8.0).abs() < 1e-10);
        }
    }
}

#[test]
fn derivative_matches_oracle_density() {
    let (r, h, n) = (1.0, 0.5, 12);
    let density = |h: f64| {
        let pair = lowest_two(r, h, n).unwrap();
        let st = DenseState::new(n, pair.states[0].vector.clone()).unwrap();
        -2.0 * oracle_uniform_lambda(&st).log2() / n as f64
    };
    let s = derivative_step(h);
    let central = |s: f64| (density(h + s) - density(h - s)) / (2.0 * s);
    let oracle = (4.0 * central(0.5 * s) - central(s)) / 3.0;
    let formula = field_derivative(&pt(r, h), n, &GroundState).unwrap();
    assert!((oracle - formula).abs() < 1e-4, "{oracle} vs {formula}");
    let rec = entanglement(&pt(r, h), n, &GroundState).unwrap();
    assert!((rec.density - density(h)).abs() < 1e-10);
}
