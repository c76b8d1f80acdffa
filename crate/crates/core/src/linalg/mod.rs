//! Dense complex linear algebra for the 2-, 4-, 16- and 256-dimensional
//! matrices used by the simulator.
//!
//! Basis states of a multi-qubit register are indexed big-endian: the first
//! qubit is the most significant bit, so `|q1 q2 q3 q4⟩` sits at index
//! `8·q1 + 4·q2 + 2·q3 + q4`. `a.tensor(&b)` therefore places `a` on the
//! leading qubits.

mod density;
mod eigen;
mod matrix;
mod state;

pub use density::{DensityMatrix, HERMITICITY_TOLERANCE, PSD_TOLERANCE, TRACE_TOLERANCE};
pub use eigen::{HermitianEigen, HERMITIAN_TOLERANCE, JACOBI_MAX_SWEEPS, JACOBI_TOLERANCE};
pub use matrix::{pauli, ComplexMatrix};
pub use state::{StateVector, NORM_TOLERANCE};

/// Complex scalar used for every matrix entry.
pub use num_complex::Complex64 as Complex;
