//! Channel fidelity through the normalised Jamiołkowski state.
//!
//! `J(Φ) = (Φ ⊗ Id)(|Ω⟩⟨Ω|)` with `|Ω⟩ = d^{-1/2} Σ_m |m⟩|m⟩`, the channel
//! acting on the first factor. Because `J(Id) = |Ω⟩⟨Ω|` is pure, the fidelity
//! `F(J(Φ), J(Id))` reduces to the overlap `⟨Ω|J(Φ)|Ω⟩`.

use num_complex::Complex64;

use crate::channels::{ChannelSpec, KrausSet, COMPLETENESS_TOLERANCE};
use crate::error::{contract, domain, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, StateVector};

/// `d^{-1/2} Σ_m |m⟩|m⟩` on a `d²`-dimensional space.
#[derive(Debug, Clone)]
pub struct MaxEntangledState {
    vector: StateVector,
    source_dim: usize,
}

impl MaxEntangledState {
    pub fn new(source_dim: usize) -> Result<Self> {
        if source_dim == 0 {
            return contract("source dimension must be positive");
        }
        let d = source_dim;
        let w = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
        for m in 0..d {
            amps[m * d + m] = w;
        }
        Ok(Self {
            vector: StateVector::new(amps)?,
            source_dim,
        })
    }

    pub fn vector(&self) -> &StateVector {
        &self.vector
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }
}

/// Normalised Choi–Jamiołkowski state of a channel.
#[derive(Debug, Clone)]
pub struct ChoiState {
    matrix: DensityMatrix,
    source_dim: usize,
}

impl ChoiState {
    pub fn matrix(&self) -> &DensityMatrix {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }
}

/// `Σ_k (E_k ⊗ I)|Ω⟩⟨Ω|(E_k ⊗ I)†`.
///
/// `(E ⊗ I)|Ω⟩` has amplitude `E[a][b]/√d` at index `a·d + b`, so each term
/// is the outer product of a flattened Kraus operator with itself.
pub fn jamiolkowski(kraus: &KrausSet) -> Result<ChoiState> {
    let residual = kraus.completeness_residual();
    if residual > COMPLETENESS_TOLERANCE {
        return contract(format!("channel is not trace preserving (residual {residual:e})"));
    }
    let d = kraus.dim();
    let n = d * d;
    let inv_d = 1.0 / d as f64;
    let mut acc = vec![Complex64::new(0.0, 0.0); n * n];
    for e in kraus.operators() {
        let v = e.as_slice();
        for (r, &vr) in v.iter().enumerate() {
            if vr.norm_sqr() == 0.0 {
                continue;
            }
            let row = &mut acc[r * n..(r + 1) * n];
            for (slot, &vc) in row.iter_mut().zip(v) {
                *slot += vr * vc.conj() * inv_d;
            }
        }
    }
    let matrix = ComplexMatrix::new(n, n, acc)?;
    Ok(ChoiState {
        matrix: DensityMatrix::from_valid_unchecked(matrix),
        source_dim: d,
    })
}

/// `⟨ψ|ρ|ψ⟩`, which equals `F(|ψ⟩⟨ψ|, ρ)` when one argument is pure.
pub fn fidelity_with_pure(pure: &StateVector, rho: &DensityMatrix) -> Result<f64> {
    if pure.dim() != rho.dim() {
        return contract(format!(
            "state of dim {} compared with density matrix of dim {}",
            pure.dim(),
            rho.dim()
        ));
    }
    let psi = pure.amplitudes();
    let m = rho.matrix();
    let mut acc = Complex64::new(0.0, 0.0);
    for (r, &pr) in psi.iter().enumerate() {
        if pr.norm_sqr() == 0.0 {
            continue;
        }
        let row = m.row(r);
        let inner: Complex64 = row.iter().zip(psi).map(|(&x, &p)| x * p).sum();
        acc += pr.conj() * inner;
    }
    Ok(acc.re.clamp(0.0, 1.0))
}

/// `Δ(Φ)` for the single-qubit channel (`qubits = 1`) or its uniform
/// four-qubit extension (`qubits = 4`, a 256-dimensional Choi state).
pub fn channel_fidelity(spec: ChannelSpec, qubits: usize) -> Result<f64> {
    let kraus = match qubits {
        1 => spec.single_qubit_kraus(),
        4 => spec.four_qubit_kraus(),
        _ => return domain(format!("channel fidelity supports 1 or 4 qubits, got {qubits}")),
    };
    let choi = jamiolkowski(&kraus)?;
    let omega = MaxEntangledState::new(kraus.dim())?;
    fidelity_with_pure(omega.vector(), choi.matrix())
}

/// Factorisation tolerance for [`product_factorization_check`].
pub const FACTORIZATION_TOLERANCE: f64 = 1e-9;

/// Whether the four-qubit fidelity equals the fourth power of the
/// single-qubit one.
pub fn product_factorization_check(spec: ChannelSpec) -> bool {
    match (channel_fidelity(spec, 4), channel_fidelity(spec, 1)) {
        (Ok(four), Ok(one)) => (four - one.powi(4)).abs() <= FACTORIZATION_TOLERANCE,
        _ => false,
    }
}
