use crate::error::{contract, Result};

/// Real polynomial with ascending coefficients (constant term first).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coefficients: Vec<f64>,
}

impl Polynomial {
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return contract("a polynomial needs at least one coefficient");
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return contract("polynomial coefficients must be finite");
        }
        Ok(Self { coefficients })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Largest coefficient-wise difference, padding the shorter side with zeros.
    pub fn max_coeff_deviation(&self, other: &Polynomial) -> f64 {
        let n = self.coefficients.len().max(other.coefficients.len());
        (0..n)
            .map(|k| {
                let a = self.coefficients.get(k).copied().unwrap_or(0.0);
                let b = other.coefficients.get(k).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Zeroes coefficients with magnitude below `threshold`.
    pub fn snapped(mut self, threshold: f64) -> Self {
        for c in &mut self.coefficients {
            if c.abs() < threshold {
                *c = 0.0;
            }
        }
        self
    }
}

/// Interpolating polynomial of degree `< nodes.len()` through `(nodes, values)`,
/// found by solving the Vandermonde system with partial pivoting.
pub fn interpolate(nodes: &[f64], values: &[f64]) -> Result<Polynomial> {
    let n = nodes.len();
    if n == 0 || values.len() != n {
        return contract("interpolation needs matching, non-empty nodes and values");
    }
    // augmented rows [1, x, x², ..., x^{n-1} | y]
    let mut m: Vec<Vec<f64>> = nodes
        .iter()
        .zip(values)
        .map(|(&x, &y)| {
            let mut row: Vec<f64> = std::iter::successors(Some(1.0), |p| Some(p * x))
                .take(n)
                .collect();
            row.push(y);
            row
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty range");
        if m[pivot][col].abs() < 1e-300 {
            return contract("interpolation nodes must be distinct");
        }
        m.swap(col, pivot);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..=n {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    let mut coeffs = vec![0.0; n];
    for r in (0..n).rev() {
        let tail: f64 = (r + 1..n).map(|c| m[r][c] * coeffs[c]).sum();
        coeffs[r] = (m[r][n] - tail) / m[r][r];
    }
    Polynomial::new(coeffs)
}
