//! Cyclic Jacobi diagonalisation of Hermitian matrices.
//!
//! Each step picks an off-diagonal pair `(p, q)`, first rotates the phase of
//! column `q` so that `a[p][q]` becomes real, then applies the usual real
//! symmetric plane rotation. The combined 2x2 unitary is
//!
//! ```text
//! G = [[ c,          s          ],
//!      [ -s·e^{-iφ}, c·e^{-iφ}  ]]     with a[p][q] = r·e^{iφ}
//! ```
//!
//! and the update is `A ← G† A G`, `V ← V G`. Sweeps repeat until the
//! off-diagonal Frobenius norm drops below the tolerance.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{contract, Error, Result};

/// Off-diagonal Frobenius norm at which iteration stops.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
/// Sweep cap.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Hermiticity slack accepted on input.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Eigenvalues in ascending order with matching unit eigenvectors (columns of
/// `vectors`), so that `a = V·diag(values)·V†`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V·diag(values)·V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let diag: Vec<Complex64> = self.values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.vectors
            .sandwich(&ComplexMatrix::diagonal(&diag))
            .expect("eigenvector matrix is square")
    }
}

impl ComplexMatrix {
    /// Real eigenvalues of a Hermitian matrix in ascending order.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.hermitian_eigen()?.values)
    }

    /// Full Hermitian eigendecomposition by cyclic Jacobi sweeps.
    pub fn hermitian_eigen(&self) -> Result<HermitianEigen> {
        let defect = self.hermitian_defect()?;
        if defect > HERMITIAN_TOLERANCE {
            return contract(format!(
                "eigensolver input is not Hermitian (defect {defect:e})"
            ));
        }
        let n = self.rows();
        let mut a = self.clone();
        let mut v = ComplexMatrix::identity(n);
        let stop = JACOBI_TOLERANCE * self.frobenius_norm().max(1.0);

        let mut converged = off_diagonal_norm(&a) <= stop;
        let mut sweeps = 0;
        while !converged {
            if sweeps == JACOBI_MAX_SWEEPS {
                return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
            sweeps += 1;
            converged = off_diagonal_norm(&a) <= stop;
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
        let values = order.iter().map(|&i| a.get(i, i).re).collect();
        let mut vectors = ComplexMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            for r in 0..n {
                vectors.set(r, dst, v.get(r, src));
            }
        }
        Ok(HermitianEigen { values, vectors })
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a.get(r, c).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r < f64::MIN_POSITIVE {
        return;
    }
    let phase = apq / r; // e^{iφ}
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;

    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let conj_phase = phase.conj();
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = conj_phase * (-s);
    let g_qq = conj_phase * c;

    let n = a.rows();
    // A ← A G
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * g_pp + akq * g_qp);
        a.set(k, q, akp * g_pq + akq * g_qq);
    }
    // A ← G† A
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, g_pp.conj() * apk + g_qp.conj() * aqk);
        a.set(q, k, g_pq.conj() * apk + g_qq.conj() * aqk);
    }
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    a.set(p, p, Complex64::new(app - t * r, 0.0));
    a.set(q, q, Complex64::new(aqq + t * r, 0.0));
    // V ← V G
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * g_pp + vkq * g_qp);
        v.set(k, q, vkp * g_pq + vkq * g_qq);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;

    #[test]
    fn diagonal_input_is_sorted() {
        let d = ComplexMatrix::from_real_rows([[3.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 2.0]]);
        assert_eq!(d.hermitian_eigenvalues().unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_spectra() {
        for p in [pauli::x(), pauli::y(), pauli::z()] {
            let ev = p.hermitian_eigenvalues().unwrap();
            assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14, "{ev:?}");
        }
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, 1-i], [1+i, 3]]: λ = (5 ± √(1 + 8)) / 2 = 1, 4
        let m = ComplexMatrix::from_rows([
            [Complex64::new(2.0, 0.0), Complex64::new(1.0, -1.0)],
            [Complex64::new(1.0, 1.0), Complex64::new(3.0, 0.0)],
        ]);
        let eig = m.hermitian_eigen().unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-13);
        assert!((eig.values[1] - 4.0).abs() < 1e-13);
        assert!(eig.reconstruct().max_abs_diff(&m).unwrap() < 1e-13);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows([[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(m.hermitian_eigenvalues(), Err(Error::Contract(_))));
    }
}
