//! The Mermin–Peres magic square game: shared state, strategy unitaries,
//! winning outcomes, and exact success probabilities under noise.
//!
//! Alice holds qubits 1–2 and Bob qubits 3–4. A measurement in the
//! computational basis yields four bits `(a1, a2, b1, b2)`, read from basis
//! index `8·a1 + 4·a2 + 2·b1 + b2`. Each player's two bits fix the first two
//! entries of their answer and parity fixes the third.
//!
//! With the strategy matrices below, a plain parity completion is not enough
//! to make every noiseless round a win: for rows 1–3 Alice must also XOR her
//! completed row with a fixed even-parity mask. The masks are not tabulated;
//! [`AnswerDecoding::derive`] recovers them from the strategy by exhaustive
//! search, and they are unique once Bob's completion is fixed.

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::channels::ChannelSpec;
use crate::error::{contract, Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, StateVector};

/// Best winning probability available without entanglement.
pub const CLASSICAL_LIMIT: f64 = 8.0 / 9.0;

/// Slack used when checking unitarity of strategy operators.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// A referee question: Alice's row and Bob's column, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameInput {
    row: u8,
    col: u8,
}

impl GameInput {
    pub fn new(row: u8, col: u8) -> Result<Self> {
        if !(1..=3).contains(&row) || !(1..=3).contains(&col) {
            return Err(Error::Domain(format!(
                "game input ({row}, {col}) outside {{1,2,3}}²"
            )));
        }
        Ok(Self { row, col })
    }

    #[inline]
    pub fn row(&self) -> u8 {
        self.row
    }

    #[inline]
    pub fn col(&self) -> u8 {
        self.col
    }

    /// All nine inputs in row-major order.
    pub fn all() -> impl Iterator<Item = GameInput> {
        (1..=3).flat_map(|row| (1..=3).map(move |col| GameInput { row, col }))
    }

    fn row_index(&self) -> usize {
        usize::from(self.row - 1)
    }

    fn col_index(&self) -> usize {
        usize::from(self.col - 1)
    }
}

/// Measured bits `(a1, a2, b1, b2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome {
    pub alice: [u8; 2],
    pub bob: [u8; 2],
}

impl Outcome {
    /// Decodes a four-qubit basis index.
    pub fn from_index(index: usize) -> Self {
        assert!(index < 16, "outcome index {index} out of range");
        let bit = |k: usize| ((index >> k) & 1) as u8;
        Self {
            alice: [bit(3), bit(2)],
            bob: [bit(1), bit(0)],
        }
    }

    pub fn index(&self) -> usize {
        usize::from(self.alice[0]) * 8
            + usize::from(self.alice[1]) * 4
            + usize::from(self.bob[0]) * 2
            + usize::from(self.bob[1])
    }

    pub fn all() -> impl Iterator<Item = Outcome> {
        (0..16).map(Outcome::from_index)
    }
}

/// Parity completion: Alice's row `(a1, a2, a1⊕a2)` has even sum and Bob's
/// column `(b1, b2, b1⊕b2⊕1)` has odd sum.
pub fn complete_answers(outcome: Outcome) -> ([u8; 3], [u8; 3]) {
    let [a1, a2] = outcome.alice;
    let [b1, b2] = outcome.bob;
    ([a1, a2, a1 ^ a2], [b1, b2, b1 ^ b2 ^ 1])
}

/// The entangled strategy: Alice's `A_i`, Bob's `B_j`, and the shared state.
#[derive(Debug, Clone)]
pub struct Strategy {
    alice: [ComplexMatrix; 3],
    bob: [ComplexMatrix; 3],
    shared: StateVector,
}

impl Strategy {
    /// `A_row`, 1-based.
    pub fn alice(&self, row: u8) -> &ComplexMatrix {
        &self.alice[usize::from(row - 1)]
    }

    /// `B_col`, 1-based.
    pub fn bob(&self, col: u8) -> &ComplexMatrix {
        &self.bob[usize::from(col - 1)]
    }

    pub fn shared_state(&self) -> &StateVector {
        &self.shared
    }

    /// `A_row ⊗ B_col`.
    pub fn joint_unitary(&self, input: GameInput) -> ComplexMatrix {
        self.alice[input.row_index()].tensor(&self.bob[input.col_index()])
    }

    /// Largest `|U†U − I|` entry over all six operators.
    pub fn unitarity_defect(&self) -> f64 {
        self.alice
            .iter()
            .chain(&self.bob)
            .map(|u| {
                u.adjoint()
                    .matmul(u)
                    .and_then(|p| p.max_abs_diff(&ComplexMatrix::identity(4)))
                    .unwrap_or(f64::INFINITY)
            })
            .fold(0.0, f64::max)
    }
}

/// Builds the winning strategy.
pub fn build_strategy() -> Strategy {
    let z = |re: f64, im: f64| Complex64::new(re, im);
    let o = z(0.0, 0.0);
    let p = z(1.0, 0.0);
    let m = z(-1.0, 0.0);
    let i = z(0.0, 1.0);
    let n = z(0.0, -1.0);
    let root = z(FRAC_1_SQRT_2, 0.0);
    let half = z(0.5, 0.0);

    let a1 = ComplexMatrix::from_rows([
        [i, o, o, p],
        [o, n, p, o],
        [o, i, p, o],
        [p, o, o, i],
    ])
    .scale(root);
    let a2 = ComplexMatrix::from_rows([
        [i, p, p, i],
        [n, p, m, i],
        [i, p, m, n],
        [n, p, p, n],
    ])
    .scale(half);
    let a3 = ComplexMatrix::from_rows([
        [m, m, m, p],
        [p, p, m, p],
        [p, m, p, p],
        [p, m, m, m],
    ])
    .scale(half);
    let b1 = ComplexMatrix::from_rows([
        [i, n, p, p],
        [n, n, p, m],
        [p, p, n, i],
        [n, i, p, p],
    ])
    .scale(half);
    let b2 = ComplexMatrix::from_rows([
        [m, i, p, i],
        [p, i, p, n],
        [p, n, p, i],
        [m, n, p, n],
    ])
    .scale(half);
    let b3 = ComplexMatrix::from_rows([
        [p, o, o, p],
        [m, o, o, p],
        [o, p, p, o],
        [o, p, m, o],
    ])
    .scale(root);

    // ½(|0011⟩ − |1100⟩ − |0110⟩ + |1001⟩)
    let mut amps = vec![o; 16];
    amps[0b0011] = half;
    amps[0b1100] = -half;
    amps[0b0110] = -half;
    amps[0b1001] = half;
    let shared = StateVector::new(amps).expect("shared state is normalised");

    Strategy {
        alice: [a1, a2, a3],
        bob: [b1, b2, b3],
        shared,
    }
}

/// Process-wide copy of [`build_strategy`].
pub fn strategy() -> &'static Strategy {
    static STRATEGY: OnceLock<Strategy> = OnceLock::new();
    STRATEGY.get_or_init(build_strategy)
}

/// Per-row masks XORed into Alice's parity-completed row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnswerDecoding {
    alice_masks: [[u8; 3]; 3],
}

const EVEN_MASKS: [[u8; 3]; 4] = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]];

impl AnswerDecoding {
    /// Finds, for each row, the unique even-parity mask under which every
    /// noiseless round of `strategy` is won. Fails if a row admits zero or
    /// several masks.
    pub fn derive(strategy: &Strategy) -> Result<Self> {
        let mut alice_masks = [[0u8; 3]; 3];
        for (r, slot) in alice_masks.iter_mut().enumerate() {
            let candidates: Vec<[u8; 3]> = EVEN_MASKS
                .into_iter()
                .filter(|&mask| {
                    (1..=3).all(|col| {
                        let input = GameInput { row: r as u8 + 1, col };
                        noiseless_support(strategy, input)
                            .all(|o| wins(input, answers_with_mask(o, mask)))
                    })
                })
                .collect();
            match candidates.as_slice() {
                [mask] => *slot = *mask,
                _ => {
                    return contract(format!(
                        "row {} admits {} answer masks, expected exactly one",
                        r + 1,
                        candidates.len()
                    ))
                }
            }
        }
        Ok(Self { alice_masks })
    }

    pub fn alice_mask(&self, row: u8) -> [u8; 3] {
        self.alice_masks[usize::from(row - 1)]
    }

    /// Answers the players submit for `input` after observing `outcome`.
    pub fn answers(&self, input: GameInput, outcome: Outcome) -> ([u8; 3], [u8; 3]) {
        answers_with_mask(outcome, self.alice_masks[input.row_index()])
    }
}

/// Decoding derived from the standard strategy.
pub fn answer_decoding() -> &'static AnswerDecoding {
    static DECODING: OnceLock<AnswerDecoding> = OnceLock::new();
    DECODING.get_or_init(|| {
        AnswerDecoding::derive(strategy()).expect("standard strategy has a unique decoding")
    })
}

fn answers_with_mask(outcome: Outcome, mask: [u8; 3]) -> ([u8; 3], [u8; 3]) {
    let (mut row, col) = complete_answers(outcome);
    for (entry, m) in row.iter_mut().zip(mask) {
        *entry ^= m;
    }
    (row, col)
}

/// Row and column agree at their intersection.
fn wins(input: GameInput, (row, col): ([u8; 3], [u8; 3])) -> bool {
    row[input.col_index()] == col[input.row_index()]
}

fn noiseless_support(strategy: &Strategy, input: GameInput) -> impl Iterator<Item = Outcome> {
    let out = strategy
        .shared_state()
        .evolve(&strategy.joint_unitary(input))
        .expect("strategy unitaries preserve the norm");
    let amps = out.amplitudes().to_vec();
    (0..16)
        .filter(move |&k| amps[k].norm_sqr() > 1e-12)
        .map(Outcome::from_index)
}

/// Measurement outcomes on which the players win a given input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessSet {
    input: GameInput,
    outcomes: Vec<Outcome>,
}

impl SuccessSet {
    pub fn input(&self) -> GameInput {
        self.input
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn contains(&self, outcome: Outcome) -> bool {
        self.outcomes.contains(&outcome)
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// `Σ |ξ⟩⟨ξ|` over the winning basis states.
    pub fn projector(&self) -> ComplexMatrix {
        let mut diag = vec![Complex64::new(0.0, 0.0); 16];
        for o in &self.outcomes {
            diag[o.index()] = Complex64::new(1.0, 0.0);
        }
        ComplexMatrix::diagonal(&diag)
    }

    /// `tr(ρ Π)` for a diagonal projector `Π`.
    pub fn probability(&self, rho: &DensityMatrix) -> f64 {
        let p: f64 = self
            .outcomes
            .iter()
            .map(|o| rho.matrix().get(o.index(), o.index()).re)
            .sum();
        p.clamp(0.0, 1.0)
    }
}

/// Winning outcomes for `input` under the standard decoding.
pub fn derive_success_set(input: GameInput) -> SuccessSet {
    derive_success_set_with(input, answer_decoding())
}

pub fn derive_success_set_with(input: GameInput, decoding: &AnswerDecoding) -> SuccessSet {
    let outcomes = Outcome::all()
        .filter(|&o| wins(input, decoding.answers(input, o)))
        .collect();
    SuccessSet { input, outcomes }
}

/// `Φ_α(|Ψ⟩⟨Ψ|)`: the shared state after noise, before the game gates.
pub fn noisy_shared_state(spec: ChannelSpec) -> Result<DensityMatrix> {
    let rho = DensityMatrix::from_pure(strategy().shared_state());
    spec.four_qubit_kraus().apply(&rho)
}

/// `(A_i ⊗ B_j) Φ_α(|Ψ⟩⟨Ψ|) (A_i ⊗ B_j)†`.
pub fn final_state(input: GameInput, spec: ChannelSpec) -> Result<DensityMatrix> {
    noisy_shared_state(spec)?.conjugate_by(&strategy().joint_unitary(input))
}

pub fn success_probability(input: GameInput, spec: ChannelSpec) -> Result<f64> {
    Ok(derive_success_set(input).probability(&final_state(input, spec)?))
}

/// Success probabilities for all nine inputs, indexed `[row-1][col-1]`. The
/// noise is applied once and shared across inputs.
pub fn success_probabilities(spec: ChannelSpec) -> Result<[[f64; 3]; 3]> {
    let noisy = noisy_shared_state(spec)?;
    let mut out = [[0.0; 3]; 3];
    for input in GameInput::all() {
        let rho = noisy.conjugate_by(&strategy().joint_unitary(input))?;
        out[input.row_index()][input.col_index()] = derive_success_set(input).probability(&rho);
    }
    Ok(out)
}

/// Success probability averaged over the nine equally likely inputs.
pub fn mean_success(spec: ChannelSpec) -> Result<f64> {
    Ok(mean_of(&success_probabilities(spec)?))
}

pub(crate) fn mean_of(p: &[[f64; 3]; 3]) -> f64 {
    p.iter().flatten().sum::<f64>() / 9.0
}
