use std::fmt;

use num_complex::Complex64;

use crate::error::{contract, Result};

/// Dense row-major complex matrix.
///
/// Sized for the small registers in this crate (2, 4, 16 and 256). Products
/// are the naive triple loop.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return contract("matrix dimensions must be positive");
        }
        if data.len() != rows * cols {
            return contract(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            ));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return contract("matrix entries must be finite");
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a square matrix from nested rows. Panics on ragged input, so
    /// reserve it for literals.
    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(N, N, data).expect("literal matrix must be finite")
    }

    /// Same as [`from_rows`](Self::from_rows) for real literals.
    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::new(N, N, data).expect("literal matrix must be finite")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m.data[i * n + i] = z;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    #[inline]
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize, z: Complex64) {
        self.data[r * self.cols + c] = z;
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return contract(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.data[r * self.cols + c].conj());
            }
        }
        ComplexMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Kronecker product `self ⊗ other`; `self` indexes the outer blocks.
    pub fn tensor(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self.data[ar * self.cols + ac];
                for br in 0..other.rows {
                    let base = (ar * other.rows + br) * cols + ac * other.cols;
                    let b_row = other.row(br);
                    for (bc, &b) in b_row.iter().enumerate() {
                        data[base + bc] = a * b;
                    }
                }
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return contract(format!(
                "trace of non-square {}x{} matrix",
                self.rows, self.cols
            ));
        }
        Ok((0..self.rows).map(|i| self.data[i * self.cols + i]).sum())
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_same_shape(other)?;
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub(crate) fn add_assign(&mut self, other: &ComplexMatrix) {
        debug_assert!(self.rows == other.rows && self.cols == other.cols);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermitian_defect(&self) -> Result<f64> {
        if !self.is_square() {
            return contract("hermiticity is only defined for square matrices");
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        Ok(worst)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect().map_or(false, |d| d <= tol)
    }

    /// `self · m · self†` without materialising the adjoint.
    pub fn sandwich(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        let left = self.matmul(m)?;
        if left.cols != self.cols {
            return contract("sandwich requires a square middle factor");
        }
        let n = self.rows;
        let k = self.cols;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            let l_row = left.row(i);
            for j in 0..n {
                let e_row = self.row(j);
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..k {
                    acc += l_row[t] * e_row[t].conj();
                }
                out.data[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_same_shape(&self, other: &ComplexMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return contract(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The Pauli matrices and the 2x2 identity.
pub mod pauli {
    use super::ComplexMatrix;
    use num_complex::Complex64;

    const O: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    const I: Complex64 = Complex64::new(0.0, 1.0);

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_rows([[O, ONE], [ONE, O]])
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_rows([[O, -I], [I, O]])
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_rows([[ONE, O], [O, -ONE]])
    }
}
