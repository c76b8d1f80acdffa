use num_complex::Complex64;

use super::{ComplexMatrix, StateVector};
use crate::error::{contract, Result};

pub const TRACE_TOLERANCE: f64 = 1e-10;
pub const HERMITICITY_TOLERANCE: f64 = 1e-10;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_TOLERANCE: f64 = 1e-9;

/// Unit-trace Hermitian positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates every density-matrix invariant, including positivity via a
    /// full Jacobi diagonalisation.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dm = Self { matrix };
        dm.validate()?;
        Ok(dm)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(state: &StateVector) -> Self {
        Self {
            matrix: state.outer(state),
        }
    }

    /// Maximally mixed state `I/dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)),
        }
    }

    /// Wraps a matrix that is a density matrix by construction, such as the
    /// image of a valid state under a Kraus map.
    pub(crate) fn from_valid_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.is_square());
        Self { matrix }
    }

    /// Re-checks trace, Hermiticity and positivity.
    pub fn validate(&self) -> Result<()> {
        let m = &self.matrix;
        if !m.is_square() || !m.rows().is_power_of_two() {
            return contract(format!(
                "density matrix must be square with power-of-two dimension, got {}x{}",
                m.rows(),
                m.cols()
            ));
        }
        let tr = m.trace()?;
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOLERANCE {
            return contract(format!("density matrix trace is {tr}, expected 1"));
        }
        let defect = m.hermitian_defect()?;
        if defect > HERMITICITY_TOLERANCE {
            return contract(format!("density matrix is not Hermitian (defect {defect:e})"));
        }
        let lowest = self.min_eigenvalue()?;
        if lowest < -PSD_TOLERANCE {
            return contract(format!("density matrix has negative eigenvalue {lowest:e}"));
        }
        Ok(())
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let ev = self.matrix.hermitian_eigenvalues()?;
        Ok(ev[0])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        // tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `U ρ U†`. Unitarity of `u` is assumed; pass only unitaries.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return contract("unitary and state dimensions differ");
        }
        Ok(Self::from_valid_unchecked(u.sandwich(&self.matrix)?))
    }

    /// Real part of the diagonal: outcome probabilities of a computational
    /// basis measurement.
    pub fn diagonal_probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix.get(i, i).re).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid() {
        let not_unit = ComplexMatrix::identity(2);
        assert!(DensityMatrix::new(not_unit).is_err());
        let negative = ComplexMatrix::from_real_rows([[1.5, 0.0], [0.0, -0.5]]);
        assert!(DensityMatrix::new(negative).is_err());
        let skew = ComplexMatrix::from_real_rows([[0.5, 0.3], [0.0, 0.5]]);
        assert!(DensityMatrix::new(skew).is_err());
    }

    #[test]
    fn pure_and_mixed() {
        let rho = DensityMatrix::from_pure(&StateVector::basis(4, 2).unwrap());
        rho.validate().unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-15);
        let mixed = DensityMatrix::maximally_mixed(4);
        mixed.validate().unwrap();
        assert!((mixed.purity() - 0.25).abs() < 1e-15);
    }
}
