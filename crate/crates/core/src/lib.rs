//! Exact density-matrix simulation of the Mermin–Peres magic square game
//! when the shared four-qubit state passes through single-qubit noise
//! before the players act.
//!
//! The pipeline is
//!
//! 1. [`channels`]: Kraus operators of six noise families, extended to the
//!    four-qubit register as a uniform product channel;
//! 2. [`game`]: the entangled strategy and the exact success probability
//!    `tr(ρ_f Π)` for each referee input;
//! 3. [`fidelity`]: channel fidelity via the normalised Jamiołkowski state;
//! 4. [`experiments`]: sweeps, polynomial reconstruction, threshold search
//!    and CSV output.

pub mod channels;
pub mod error;
pub mod experiments;
pub mod fidelity;
pub mod game;
pub mod linalg;

pub use channels::{ChannelKind, ChannelSpec, KrausSet};
pub use error::{Error, Result};
pub use game::{GameInput, CLASSICAL_LIMIT};
pub use linalg::{Complex, ComplexMatrix, DensityMatrix, StateVector};
