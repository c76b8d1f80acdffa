use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{contract, Result};

/// Normalisation slack for [`StateVector`].
pub const NORM_TOLERANCE: f64 = 1e-12;

/// A normalised pure state on `log2(dim)` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 || !dim.is_power_of_two() {
            return contract(format!("state dimension {dim} is not a power of two"));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return contract("state amplitudes must be finite");
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return contract(format!("state is not normalised (squared norm {norm})"));
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return contract(format!("basis index {index} out of range for dim {dim}"));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(amps)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &StateVector) -> ComplexMatrix {
        let data = self
            .amplitudes
            .iter()
            .flat_map(|&v| other.amplitudes.iter().map(move |&w| v * w.conj()))
            .collect();
        ComplexMatrix::new(self.dim(), other.dim(), data).expect("outer product shape")
    }

    /// `U|self⟩`. Fails if `u` is not square of matching size; unitarity is
    /// the caller's concern, so the result is renormalised only in the sense
    /// that it is re-validated.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<StateVector> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return contract("operator and state dimensions differ");
        }
        let amps = (0..u.rows())
            .map(|r| {
                u.row(r)
                    .iter()
                    .zip(&self.amplitudes)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect();
        StateVector::new(amps)
    }
}
