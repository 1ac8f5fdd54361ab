//! Brute-force reference for small periodic XY rings.
//!
//! Basis states are bit strings with bit `i` set when site `i` points down
//! (`sigma^z = -1`). Nothing here uses the free-fermion solution.

pub mod eigen;
pub mod error;
pub mod fixtures;
pub mod hamiltonian;
pub mod product;

pub use eigen::{full_spectrum, lowest_in_parity, lowest_two, Eigenpair, LowestPair};
pub use error::{OracleError, Result};
pub use hamiltonian::{parity_of, RingHamiltonian, MAX_SITES};
pub use product::{lambda_max_unrestricted, DenseState, ProductAnsatzFull};
