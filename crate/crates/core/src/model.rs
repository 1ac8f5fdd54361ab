use crate::error::{Error, Result};

/// A point `(r, h)` of the XY phase diagram: anisotropy `r` and transverse field `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    r: f64,
    h: f64,
}

impl ModelPoint {
    pub fn new(r: f64, h: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidParameter {
                name: "r",
                value: r,
                reason: "anisotropy must lie in [0, 1]",
            });
        }
        if !(h >= 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "h",
                value: h,
                reason: "field must be finite and non-negative",
            });
        }
        Ok(Self { r, h })
    }

    /// Ising limit `r = 1`.
    pub fn ising(h: f64) -> Result<Self> {
        Self::new(1.0, h)
    }

    /// Point on the disorder line `r^2 + h^2 = 1`.
    pub fn on_disorder_line(r: f64) -> Result<Self> {
        Self::new(r, (1.0 - r * r).max(0.0).sqrt())
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn with_h(&self, h: f64) -> Result<Self> {
        Self::new(self.r, h)
    }
}

/// Fermion boundary-condition sector.
///
/// `Zero` is periodic fermions with odd fermion parity (state `Psi_0`), `Half`
/// is antiperiodic fermions with even parity (state `Psi_1/2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    Zero,
    Half,
}

impl Sector {
    pub const ALL: [Sector; 2] = [Sector::Half, Sector::Zero];

    /// Momentum offset `b`.
    pub fn offset(self) -> f64 {
        match self {
            Sector::Zero => 0.0,
            Sector::Half => 0.5,
        }
    }

    /// Spin-flip parity `prod sigma^z` of the admissible levels: `+1` even, `-1` odd.
    pub fn parity(self) -> i8 {
        match self {
            Sector::Zero => -1,
            Sector::Half => 1,
        }
    }

    pub fn from_parity(parity: i8) -> Self {
        if parity < 0 {
            Sector::Zero
        } else {
            Sector::Half
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Sector::Zero => "zero",
            Sector::Half => "half",
        }
    }
}

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidSize { n, min: 2 })
    } else {
        Ok(())
    }
}
