//! Jordan-Wigner / Bogoliubov diagonalization of the periodic XY ring.
//!
//! Each parity sector maps to free fermions with momenta
//! `k_m = 2 pi (m + b) / N`. Mode `m` is paired with `N - m - 2b`; the pair is
//! rotated by the Bogoliubov angle `theta_m` with
//! `tan 2 theta = r sin k / (h - cos k)`, giving quasiparticle energies
//! `eps = 2 sqrt((h - cos k)^2 + r^2 sin^2 k)`. In the periodic sector the
//! unpaired `k = 0` mode keeps the signed energy `2 (h - 1)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{check_size, ModelPoint, Sector};

/// Largest chain for which [`enumerate_levels`] will walk all `2^n` occupations.
pub const MAX_ENUMERATION_SIZE: usize = 20;

/// Momenta `k_m = 2 pi (m + b) / n` for `m = 0..n`.
pub fn momenta(n: usize, sector: Sector) -> Result<Vec<f64>> {
    check_size(n)?;
    let b = sector.offset();
    Ok((0..n)
        .map(|m| 2.0 * PI * (m as f64 + b) / n as f64)
        .collect())
}

/// Bogoliubov angle `theta = atan2(r sin k, h - cos k) / 2`.
///
/// The branch keeps `2 theta` in `(-pi, pi]`, so `theta` lies in `[0, pi/2]`
/// for `k` in `[0, pi]`. At the isolated point `r sin k = 0, h = cos k` the
/// angle is undefined and `0` is returned; see [`is_degenerate_angle`].
pub fn bogoliubov_angle(p: &ModelPoint, k: f64) -> f64 {
    if is_degenerate_angle(p, k) {
        return 0.0;
    }
    0.5 * (p.r() * k.sin()).atan2(p.h() - k.cos())
}

/// True where `bogoliubov_angle` falls back to its convention value.
pub fn is_degenerate_angle(p: &ModelPoint, k: f64) -> bool {
    const TOL: f64 = 1e-14;
    (p.r() * k.sin()).abs() <= TOL && (p.h() - k.cos()).abs() <= TOL
}

/// Quasiparticle energy `2 sqrt((h - cos k)^2 + r^2 sin^2 k)`.
///
/// This is the unsigned value; the periodic sector's `k = 0` mode is handled by
/// [`SectorSpectrum`].
pub fn quasiparticle_energy(p: &ModelPoint, k: f64) -> f64 {
    2.0 * (p.h() - k.cos()).hypot(p.r() * k.sin())
}

/// Lowest admissible energy of a sector.
///
/// `Half`: `-sum_m sqrt((h - cos k_m)^2 + r^2 sin^2 k_m)`.
/// `Zero`: `(h - 1) - sum_{m >= 1} sqrt(...)`, one quasiparticle in the `k = 0` mode.
pub fn ground_energy(p: &ModelPoint, n: usize, sector: Sector) -> Result<f64> {
    let ks = momenta(n, sector)?;
    let start = match sector {
        Sector::Zero => 1,
        Sector::Half => 0,
    };
    // Summing in increasing magnitude keeps the n = 10^5 sums accurate.
    let mut terms: Vec<f64> = ks[start..]
        .iter()
        .map(|&k| 0.5 * quasiparticle_energy(p, k))
        .collect();
    terms.sort_by(f64::total_cmp);
    let sum: f64 = terms.iter().sum();
    Ok(match sector {
        Sector::Zero => (p.h() - 1.0) - sum,
        Sector::Half => -sum,
    })
}

/// `E_0^(0) - E_0^(1/2)`; negative where the odd sector holds the ground state.
pub fn gap(p: &ModelPoint, n: usize) -> Result<f64> {
    Ok(ground_energy(p, n, Sector::Zero)? - ground_energy(p, n, Sector::Half)?)
}

/// Full single-particle description of one parity sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorSpectrum {
    pub n: usize,
    pub sector: Sector,
    pub momenta: Vec<f64>,
    pub angles: Vec<f64>,
    /// `eps_m`; entry 0 of the `Zero` sector is the signed `2 (h - 1)`.
    pub energies: Vec<f64>,
    pub ground_energy: f64,
    /// Modes whose angle hit the `atan2(0, 0)` convention.
    pub degenerate_modes: Vec<usize>,
}

impl SectorSpectrum {
    pub fn new(p: &ModelPoint, n: usize, sector: Sector) -> Result<Self> {
        let momenta = momenta(n, sector)?;
        let angles = momenta.iter().map(|&k| bogoliubov_angle(p, k)).collect();
        let mut energies: Vec<f64> = momenta
            .iter()
            .map(|&k| quasiparticle_energy(p, k))
            .collect();
        if sector == Sector::Zero {
            energies[0] = 2.0 * (p.h() - 1.0);
        }
        let degenerate_modes = momenta
            .iter()
            .enumerate()
            .filter(|(_, &k)| is_degenerate_angle(p, k))
            .map(|(m, _)| m)
            .collect();
        Ok(Self {
            n,
            sector,
            momenta,
            angles,
            energies,
            ground_energy: ground_energy(p, n, sector)?,
            degenerate_modes,
        })
    }

    /// Index of the mode paired with `m` by the Bogoliubov rotation.
    pub fn partner(&self, m: usize) -> usize {
        match self.sector {
            Sector::Zero => (self.n - m) % self.n,
            Sector::Half => self.n - m - 1,
        }
    }
}

/// One many-body level of the ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub energy: f64,
    /// Eigenvalue of `prod sigma^z`.
    pub parity: i8,
}

/// All `2^n` levels, built from the quasiparticle energies of both sectors
/// with each sector restricted to its admissible fermion parity.
///
/// Levels are returned in ascending energy order.
pub fn enumerate_levels(p: &ModelPoint, n: usize) -> Result<Vec<Level>> {
    check_size(n)?;
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::SizeLimit {
            n,
            limit: MAX_ENUMERATION_SIZE,
        });
    }
    let mut levels = Vec::with_capacity(1 << n);
    for sector in Sector::ALL {
        let spec = SectorSpectrum::new(p, n, sector)?;
        let vacuum = -0.5 * spec.energies.iter().sum::<f64>();
        let want_odd = sector == Sector::Zero;
        // energy[mask] = vacuum + sum of occupied eps, filled from the lowest set bit.
        let mut energy = vec![0.0; 1 << n];
        energy[0] = vacuum;
        for mask in 1usize..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            energy[mask] = energy[mask & (mask - 1)] + spec.energies[low];
        }
        levels.extend(
            energy
                .iter()
                .enumerate()
                .filter(|(mask, _)| (mask.count_ones() % 2 == 1) == want_odd)
                .map(|(_, &e)| Level {
                    energy: e,
                    parity: sector.parity(),
                }),
        );
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pt(r: f64, h: f64) -> ModelPoint {
        ModelPoint::new(r, h).unwrap()
    }

    #[test]
    fn momenta_examples() {
        let k = momenta(4, Sector::Zero).unwrap();
        for (a, b) in k.iter().zip([0.0, PI / 2.0, PI, 1.5 * PI]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        let k = momenta(4, Sector::Half).unwrap();
        for (a, b) in k.iter().zip([PI / 4.0, 0.75 * PI, 1.25 * PI, 1.75 * PI]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        let k = momenta(3, Sector::Half).unwrap();
        for (a, b) in k.iter().zip([PI / 3.0, PI, 5.0 * PI / 3.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        assert_eq!(
            momenta(1, Sector::Zero),
            Err(Error::InvalidSize { n: 1, min: 2 })
        );
    }

    #[test]
    fn angle_examples() {
        assert_abs_diff_eq!(
            bogoliubov_angle(&pt(1.0, 0.0), PI / 4.0),
            3.0 * PI / 8.0,
            epsilon = 1e-15
        );
        let k: f64 = 1.1;
        assert_abs_diff_eq!(
            bogoliubov_angle(&pt(0.3, k.cos()), k),
            PI / 4.0,
            epsilon = 1e-15
        );
        // Frozen from a 50-digit evaluation of atan2(0.5 sin(0.6 pi), 0.7 - cos(0.6 pi)) / 2.
        assert_abs_diff_eq!(
            bogoliubov_angle(&pt(0.5, 0.7), 2.0 * PI * 0.3),
            0.22020387339016309,
            epsilon = 1e-15
        );
    }

    #[test]
    fn degenerate_angle_is_flagged() {
        let p = pt(0.0, 0.0);
        assert!(is_degenerate_angle(&p, PI / 2.0));
        assert_eq!(bogoliubov_angle(&p, PI / 2.0), 0.0);
        let spec = SectorSpectrum::new(&p, 8, Sector::Zero).unwrap();
        assert_eq!(spec.degenerate_modes, vec![2, 6]);
        assert!(SectorSpectrum::new(&pt(0.5, 0.3), 8, Sector::Zero)
            .unwrap()
            .degenerate_modes
            .is_empty());
    }

    #[test]
    fn energy_examples() {
        for k in [0.0, 0.4, 2.0, 5.0] {
            assert_abs_diff_eq!(quasiparticle_energy(&pt(1.0, 0.0), k), 2.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(quasiparticle_energy(&pt(1.0, 1.0), 0.0), 0.0);
    }

    #[test]
    fn ground_energy_limits() {
        for n in [2, 5, 12, 101] {
            assert_abs_diff_eq!(
                ground_energy(&pt(1.0, 0.0), n, Sector::Half).unwrap(),
                -(n as f64),
                epsilon = 1e-12
            );
        }
        let h = 1e4;
        let e = ground_energy(&pt(0.7, h), 16, Sector::Half).unwrap();
        assert!((e / (-16.0 * h) - 1.0).abs() < 1.0 / (h * h));
    }

    #[test]
    fn ising_odd_sector_lies_above() {
        for n in [2, 3, 4, 7, 10, 31] {
            for i in 0..=40 {
                let p = pt(1.0, i as f64 * 0.05);
                assert!(gap(&p, n).unwrap() >= -1e-12, "n={n} h={}", p.h());
            }
        }
    }

    #[test]
    fn disorder_line_energies_are_minus_n() {
        for r in [0.1, 0.45, 0.8, 1.0] {
            let p = ModelPoint::on_disorder_line(r).unwrap();
            for n in [4, 9, 60] {
                for s in Sector::ALL {
                    assert_abs_diff_eq!(
                        ground_energy(&p, n, s).unwrap(),
                        -(n as f64),
                        epsilon = 1e-10
                    );
                }
            }
        }
    }

    #[test]
    fn gap_converges_in_paramagnet() {
        let p = pt(1.0, 2.0);
        let errs: Vec<f64> = [4, 8, 100, 10_000]
            .iter()
            .map(|&n| (gap(&p, n).unwrap() - 2.0).abs())
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > 1e-6);
        assert!(errs[2] < 1e-9 && errs[3] < 1e-9);
    }

    #[test]
    fn critical_gap_scales_with_anisotropy() {
        let n = 1000;
        let d = gap(&pt(0.5, 1.0), n).unwrap();
        let expect = PI * 0.5 / (2.0 * n as f64);
        assert!((d / expect - 1.0).abs() < 0.05, "{d} vs {expect}");
    }

    #[test]
    fn xy_sectors_switch() {
        let signs: Vec<bool> = (1..100)
            .map(|i| gap(&pt(0.2, i as f64 * 0.01), 8).unwrap() < 0.0)
            .collect();
        assert!(signs.iter().any(|&s| s));
        assert!(signs.iter().any(|&s| !s));
    }

    #[test]
    fn partners_share_energy_and_flip_angle() {
        let p = pt(0.6, 0.4);
        for n in [6, 7] {
            for sector in Sector::ALL {
                let spec = SectorSpectrum::new(&p, n, sector).unwrap();
                for m in 1..n {
                    let q = spec.partner(m);
                    if q == m {
                        continue;
                    }
                    assert_abs_diff_eq!(spec.energies[m], spec.energies[q], epsilon = 1e-12);
                    assert_abs_diff_eq!(spec.angles[m], -spec.angles[q], epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn level_count_and_ising_ground_degeneracy() {
        let levels = enumerate_levels(&pt(1.0, 0.0), 4).unwrap();
        assert_eq!(levels.len(), 16);
        assert_abs_diff_eq!(levels[0].energy, -4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(levels[1].energy, -4.0, epsilon = 1e-12);
        assert_ne!(levels[0].parity, levels[1].parity);
        assert!(levels[2].energy > -4.0 + 1.0);
        assert_eq!(
            enumerate_levels(&pt(1.0, 0.0), 21).unwrap_err(),
            Error::SizeLimit { n: 21, limit: 20 }
        );
    }

    #[test]
    fn sector_minimum_matches_ground_energy() {
        let p = pt(0.3, 0.6);
        let levels = enumerate_levels(&p, 7).unwrap();
        for s in Sector::ALL {
            let lowest = levels
                .iter()
                .find(|l| l.parity == s.parity())
                .unwrap()
                .energy;
            assert_abs_diff_eq!(lowest, ground_energy(&p, 7, s).unwrap(), epsilon = 1e-12);
        }
    }
}
