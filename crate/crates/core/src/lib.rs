//! Global geometric entanglement of the periodic transverse-field XY chain.
//!
//! The lowest states of each fermion-parity sector have closed-form overlaps
//! with a one-parameter family of translation-invariant product states, so
//! entanglement is available for any ring length and in the infinite limit.

pub mod entangle;
pub mod error;
pub mod maximize;
pub mod model;
pub mod overlap;
pub mod quadrature;
pub mod scalefit;
pub mod signed_log;
pub mod spectrum;
pub mod states;
pub mod thermo;

pub use entangle::{entanglement, entanglement_of, EntanglementRecord};
pub use error::{Error, Result};
pub use model::{ModelPoint, Sector};
pub use overlap::{AnsatzAngle, MixAngle};
pub use signed_log::SignedLog;
pub use states::{StateRegistry, StateSelector, TargetState};
