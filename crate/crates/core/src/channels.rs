//! Single-qubit noise families, their Kraus operators, and the uniform
//! product extension to the four-qubit game register.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{contract, domain, Error, Result};
use crate::linalg::{pauli, ComplexMatrix, DensityMatrix};

/// Slack on `Σ E†E = I`.
pub const COMPLETENESS_TOLERANCE: f64 = 1e-10;

/// Number of qubits in the shared game state.
pub const GAME_QUBITS: usize = 4;

/// The six noise families, in registry order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelKind {
    Depolarizing,
    AmplitudeDamping,
    PhaseDamping,
    PhaseFlip,
    BitFlip,
    BitPhaseFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 6] = [
        ChannelKind::Depolarizing,
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseDamping,
        ChannelKind::PhaseFlip,
        ChannelKind::BitFlip,
        ChannelKind::BitPhaseFlip,
    ];

    /// The three Pauli flip channels.
    pub const FLIPS: [ChannelKind; 3] = [
        ChannelKind::PhaseFlip,
        ChannelKind::BitFlip,
        ChannelKind::BitPhaseFlip,
    ];

    /// Kebab-case name used on the command line and in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::Depolarizing => "depolarizing",
            ChannelKind::AmplitudeDamping => "amplitude-damping",
            ChannelKind::PhaseDamping => "phase-damping",
            ChannelKind::PhaseFlip => "phase-flip",
            ChannelKind::BitFlip => "bit-flip",
            ChannelKind::BitPhaseFlip => "bit-phase-flip",
        }
    }

    pub fn is_flip(self) -> bool {
        Self::FLIPS.contains(&self)
    }

    pub fn at(self, alpha: f64) -> Result<ChannelSpec> {
        ChannelSpec::new(self, alpha)
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown channel `{s}`")))
    }
}

/// A noise family at a fixed noise level `alpha ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    kind: ChannelKind,
    alpha: f64,
}

impl ChannelSpec {
    /// Rejects `alpha` outside `[0, 1]` (including NaN); nothing is clamped.
    pub fn new(kind: ChannelKind, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return domain(format!("noise level {alpha} outside [0, 1]"));
        }
        Ok(Self { kind, alpha })
    }

    #[inline]
    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Kraus set acting on one qubit.
    pub fn single_qubit_kraus(&self) -> KrausSet {
        single_qubit_kraus(*self)
    }

    /// Kraus set acting identically on each of the four game qubits.
    pub fn four_qubit_kraus(&self) -> KrausSet {
        single_qubit_kraus(*self)
            .extend_to_four_qubits()
            .expect("single-qubit set has dimension 2")
    }
}

/// A complete set of Kraus operators on a `dim`-dimensional space.
#[derive(Debug, Clone)]
pub struct KrausSet {
    dim: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    /// Validates shapes and completeness `Σ E†E = I`.
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = operators.first() else {
            return contract("a Kraus set needs at least one operator");
        };
        let dim = first.rows();
        if operators.iter().any(|e| e.rows() != dim || e.cols() != dim) {
            return contract("Kraus operators must all be square of the same dimension");
        }
        let set = Self { dim, operators };
        let residual = set.completeness_residual();
        if residual > COMPLETENESS_TOLERANCE {
            return contract(format!(
                "Kraus operators are not complete (residual {residual:e})"
            ));
        }
        Ok(set)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            operators: vec![ComplexMatrix::identity(dim)],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// Largest entry of `|Σ E†E − I|`.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.operators {
            sum.add_assign(&e.adjoint().matmul(e).expect("square operators"));
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim))
            .expect("same shape")
    }

    /// All `n⁴` ordered four-fold tensor products `e_a ⊗ e_b ⊗ e_c ⊗ e_d`,
    /// enumerated with the first factor varying slowest.
    pub fn extend_to_four_qubits(&self) -> Result<KrausSet> {
        if self.dim != 2 {
            return contract(format!(
                "four-qubit extension needs a single-qubit set, got dim {}",
                self.dim
            ));
        }
        let mut ops = vec![ComplexMatrix::identity(1)];
        for _ in 0..GAME_QUBITS {
            ops = ops
                .iter()
                .flat_map(|prefix| self.operators.iter().map(move |e| prefix.tensor(e)))
                .collect();
        }
        KrausSet::new(ops)
    }

    /// `Φ(ρ) = Σ E ρ E†`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return contract(format!(
                "channel of dim {} applied to state of dim {}",
                self.dim,
                rho.dim()
            ));
        }
        Ok(DensityMatrix::from_valid_unchecked(self.apply_to_matrix(rho.matrix())?))
    }

    /// Superoperator action on an arbitrary square matrix.
    pub fn apply_to_matrix(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return contract("channel and matrix dimensions differ");
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.operators {
            if e.as_slice().iter().all(|z| z.norm_sqr() == 0.0) {
                continue;
            }
            out.add_assign(&e.sandwich(m)?);
        }
        Ok(out)
    }
}

/// The Kraus operators of each family at noise level `alpha`. Zero operators
/// (for instance `√α·σz` at `α = 0`) are kept so the count depends only on
/// the family.
pub fn single_qubit_kraus(spec: ChannelSpec) -> KrausSet {
    let a = spec.alpha;
    let r = |x: f64| Complex64::new(x, 0.0);
    let scaled = |m: ComplexMatrix, w: f64| m.scale(r(w.max(0.0).sqrt()));
    let ops = match spec.kind {
        ChannelKind::Depolarizing => vec![
            scaled(pauli::identity(), 1.0 - 0.75 * a),
            scaled(pauli::x(), a / 4.0),
            scaled(pauli::y(), a / 4.0),
            scaled(pauli::z(), a / 4.0),
        ],
        ChannelKind::AmplitudeDamping => vec![
            ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, (1.0 - a).sqrt()]]),
            ComplexMatrix::from_real_rows([[0.0, a.sqrt()], [0.0, 0.0]]),
        ],
        ChannelKind::PhaseDamping => vec![
            ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, (1.0 - a).sqrt()]]),
            ComplexMatrix::from_real_rows([[0.0, 0.0], [0.0, a.sqrt()]]),
        ],
        ChannelKind::PhaseFlip => vec![scaled(pauli::identity(), 1.0 - a), scaled(pauli::z(), a)],
        ChannelKind::BitFlip => vec![scaled(pauli::identity(), 1.0 - a), scaled(pauli::x(), a)],
        ChannelKind::BitPhaseFlip => {
            vec![scaled(pauli::identity(), 1.0 - a), scaled(pauli::y(), a)]
        }
    };
    KrausSet::new(ops).expect("standard Kraus sets are complete")
}

/// True iff both channels map every matrix unit `|r⟩⟨c|` to the same image
/// within `tol` entrywise.
pub fn channels_equal(a: &KrausSet, b: &KrausSet, tol: f64) -> Result<bool> {
    if a.dim() != b.dim() {
        return contract(format!(
            "cannot compare channels of dim {} and {}",
            a.dim(),
            b.dim()
        ));
    }
    let d = a.dim();
    for r in 0..d {
        for c in 0..d {
            let mut unit = ComplexMatrix::zeros(d, d);
            unit.set(r, c, Complex64::new(1.0, 0.0));
            let diff = a
                .apply_to_matrix(&unit)?
                .max_abs_diff(&b.apply_to_matrix(&unit)?)?;
            if diff > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Flip probability at which phase flip reproduces phase damping at `alpha`.
pub fn phase_flip_equivalent(alpha: f64) -> f64 {
    (1.0 - (1.0 - alpha).sqrt()) / 2.0
}
