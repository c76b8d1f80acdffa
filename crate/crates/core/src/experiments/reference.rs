//! Closed-form success probabilities for every channel and input, stored as
//! exact dyadic coefficients.

use std::collections::BTreeMap;

use super::Polynomial;
use crate::channels::ChannelKind;
use crate::game::GameInput;

/// ½α⁴ − 2α³ + 3α² − 2α + 1
const DEPOLARIZING: [f64; 5] = [1.0, -2.0, 3.0, -2.0, 0.5];
/// ½α² − α + 1
const HALF_QUADRATIC: [f64; 5] = [1.0, -1.0, 0.5, 0.0, 0.0];
/// 2α² − 2α + 1
const FLIP_QUADRATIC: [f64; 5] = [1.0, -2.0, 2.0, 0.0, 0.0];
/// α² − 3/2 α + 1
const DAMPING_QUADRATIC: [f64; 5] = [1.0, -1.5, 1.0, 0.0, 0.0];
/// −½α + 1
const DAMPING_LINEAR: [f64; 5] = [1.0, -0.5, 0.0, 0.0, 0.0];
/// 8α⁴ − 16α³ + 12α² − 4α + 1
const FLIP_QUARTIC: [f64; 5] = [1.0, -4.0, 12.0, -16.0, 8.0];
const ONE: [f64; 5] = [1.0, 0.0, 0.0, 0.0, 0.0];

type Group = (&'static [(u8, u8)], [f64; 5]);

fn groups(kind: ChannelKind) -> Vec<Group> {
    const ALL: &[(u8, u8)] = &[
        (1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3),
    ];
    const DAMPED_A: &[(u8, u8)] = &[(1, 1), (1, 2), (2, 3), (3, 3)];
    const DAMPED_B: &[(u8, u8)] = &[(2, 1), (2, 2), (3, 1), (3, 2)];
    match kind {
        ChannelKind::Depolarizing => vec![(ALL, DEPOLARIZING)],
        ChannelKind::AmplitudeDamping => vec![
            (DAMPED_A, HALF_QUADRATIC),
            (&[(1, 3)], FLIP_QUADRATIC),
            (DAMPED_B, DAMPING_QUADRATIC),
        ],
        ChannelKind::PhaseDamping => vec![
            (DAMPED_A, HALF_QUADRATIC),
            (&[(1, 3)], ONE),
            (DAMPED_B, DAMPING_LINEAR),
        ],
        ChannelKind::PhaseFlip => vec![
            (DAMPED_A, FLIP_QUARTIC),
            (&[(1, 3)], ONE),
            (DAMPED_B, FLIP_QUADRATIC),
        ],
        ChannelKind::BitFlip => vec![
            (&[(1, 1), (1, 2), (3, 1), (3, 2)], FLIP_QUADRATIC),
            (&[(2, 3)], ONE),
            (&[(1, 3), (2, 1), (2, 2), (3, 3)], FLIP_QUARTIC),
        ],
        ChannelKind::BitPhaseFlip => vec![
            (&[(1, 1), (1, 2), (2, 1), (2, 2)], FLIP_QUADRATIC),
            (&[(3, 3)], ONE),
            (&[(1, 3), (2, 3), (3, 1), (3, 2)], FLIP_QUARTIC),
        ],
    }
}

/// Expected success polynomial for each `(channel, input)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    entries: BTreeMap<(ChannelKind, GameInput), Polynomial>,
}

impl ReferenceTable {
    /// The published table: all 54 entries.
    pub fn published() -> Self {
        let mut entries = BTreeMap::new();
        for kind in ChannelKind::ALL {
            for (inputs, coeffs) in groups(kind) {
                for &(r, c) in inputs {
                    let input = GameInput::new(r, c).expect("literal input");
                    let poly = Polynomial::new(coeffs.to_vec()).expect("finite literal");
                    entries.insert((kind, input), poly);
                }
            }
        }
        Self { entries }
    }

    pub fn get(&self, kind: ChannelKind, input: GameInput) -> Option<&Polynomial> {
        self.entries.get(&(kind, input))
    }

    pub fn insert(&mut self, kind: ChannelKind, input: GameInput, poly: Polynomial) {
        self.entries.insert((kind, input), poly);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Mean-success polynomial `(1/9) Σ_inputs P_ij` for a channel.
    pub fn mean_polynomial(&self, kind: ChannelKind) -> Polynomial {
        let mut sum = vec![0.0; 5];
        for input in GameInput::all() {
            if let Some(p) = self.get(kind, input) {
                for (s, c) in sum.iter_mut().zip(p.coefficients()) {
                    *s += c / 9.0;
                }
            }
        }
        Polynomial::new(sum).expect("finite sums")
    }
}
