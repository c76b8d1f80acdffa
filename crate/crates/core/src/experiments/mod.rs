//! Parameter sweeps, polynomial reconstruction of the per-input success
//! curves, threshold search against the classical limit, and the
//! fidelity/success parametric dataset.

mod csv;
mod polynomial;
mod reference;

pub use csv::{
    format_value, write_fidelity_csv, write_parametric_csv, write_report_csv, write_sweep_csv,
    FIDELITY_HEADER, PARAMETRIC_HEADER, REPORT_HEADER, SWEEP_HEADER,
};
pub use polynomial::{interpolate, Polynomial};
pub use reference::ReferenceTable;

use rayon::prelude::*;

use crate::channels::{ChannelKind, ChannelSpec};
use crate::error::{domain, Result};
use crate::fidelity::channel_fidelity;
use crate::game::{mean_of, success_probabilities, success_probability, GameInput};

/// Interpolation nodes. Five nodes pin any polynomial of degree ≤ 4.
pub const INTERPOLATION_NODES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
/// Coefficients smaller than this are floating-point residue.
pub const COEFFICIENT_SNAP: f64 = 1e-8;
/// Default coefficient tolerance for verification.
pub const DEFAULT_VERIFY_TOLERANCE: f64 = 1e-7;
/// Bisection stops once the bracket is this narrow.
pub const BISECTION_WIDTH: f64 = 1e-10;
/// Grid used to locate the minimum before bisecting.
pub const THRESHOLD_GRID_POINTS: usize = 101;

/// Degree-≤4 polynomial through the simulated success probability at
/// [`INTERPOLATION_NODES`].
pub fn reconstruct_polynomial(kind: ChannelKind, input: GameInput) -> Result<Polynomial> {
    let values = INTERPOLATION_NODES
        .iter()
        .map(|&a| success_probability(input, kind.at(a)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(interpolate(&INTERPOLATION_NODES, &values)?.snapped(COEFFICIENT_SNAP))
}

/// Reconstructs all nine polynomials of one channel, applying the noise once
/// per node.
pub fn reconstruct_channel(kind: ChannelKind) -> Result<Vec<(GameInput, Polynomial)>> {
    let per_node = INTERPOLATION_NODES
        .iter()
        .map(|&a| success_probabilities(kind.at(a)?))
        .collect::<Result<Vec<_>>>()?;
    GameInput::all()
        .map(|input| {
            let (r, c) = (usize::from(input.row() - 1), usize::from(input.col() - 1));
            let values: Vec<f64> = per_node.iter().map(|p| p[r][c]).collect();
            Ok((input, interpolate(&INTERPOLATION_NODES, &values)?.snapped(COEFFICIENT_SNAP)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationEntry {
    pub channel: ChannelKind,
    pub input: GameInput,
    pub max_coeff_dev: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub tolerance: f64,
    pub entries: Vec<VerificationEntry>,
}

impl VerificationReport {
    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.pass).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Compares every reconstructed polynomial against the published table.
pub fn verify_against_reference(tolerance: f64) -> Result<VerificationReport> {
    verify_against_table(&ReferenceTable::published(), tolerance)
}

/// Compares every reconstructed polynomial against `table`. Mismatches and
/// missing entries are recorded as failures, not errors.
pub fn verify_against_table(table: &ReferenceTable, tolerance: f64) -> Result<VerificationReport> {
    if !(tolerance > 0.0) {
        return domain(format!("verification tolerance must be positive, got {tolerance}"));
    }
    let per_channel = ChannelKind::ALL
        .par_iter()
        .map(|&kind| reconstruct_channel(kind).map(|polys| (kind, polys)))
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(54);
    for (channel, polys) in per_channel {
        for (input, poly) in polys {
            let max_coeff_dev = table
                .get(channel, input)
                .map_or(f64::INFINITY, |expected| poly.max_coeff_deviation(expected));
            entries.push(VerificationEntry {
                channel,
                input,
                max_coeff_dev,
                pass: max_coeff_dev <= tolerance,
            });
        }
    }
    Ok(VerificationReport { tolerance, entries })
}

/// `points` evenly spaced noise levels from 0 to 1 inclusive.
pub fn alpha_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return domain(format!("a sweep needs at least 2 points, got {points}"));
    }
    let last = (points - 1) as f64;
    Ok((0..points).map(|k| k as f64 / last).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    /// Indexed `[row-1][col-1]`.
    pub probabilities: [[f64; 3]; 3],
    pub mean: f64,
    /// Four-qubit channel fidelity.
    pub delta4: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub channel: ChannelKind,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Row with the smallest mean (first one on ties).
    pub fn argmin_mean(&self) -> &SweepRow {
        self.rows
            .iter()
            .reduce(|best, r| if r.mean < best.mean { r } else { best })
            .expect("sweeps have at least two rows")
    }
}

fn sweep_row(spec: ChannelSpec) -> Result<SweepRow> {
    let probabilities = success_probabilities(spec)?;
    Ok(SweepRow {
        alpha: spec.alpha(),
        probabilities,
        mean: mean_of(&probabilities),
        delta4: channel_fidelity(spec, 4)?,
    })
}

/// Success probabilities, mean and fidelity over a uniform noise grid. Rows
/// are computed in parallel; each row is independent, so the result does
/// not depend on scheduling.
pub fn sweep(kind: ChannelKind, points: usize) -> Result<SweepTable> {
    let rows = alpha_grid(points)?
        .into_par_iter()
        .map(|a| sweep_row(kind.at(a)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { channel: kind, rows })
}

/// Mean success over a grid, without fidelities.
pub fn mean_curve(kind: ChannelKind, points: usize) -> Result<Vec<(f64, f64)>> {
    alpha_grid(points)?
        .into_par_iter()
        .map(|a| Ok((a, mean_of(&success_probabilities(kind.at(a)?)?))))
        .collect()
}

/// Single- and four-qubit channel fidelity at one noise level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityPoint {
    pub alpha: f64,
    pub delta1: f64,
    pub delta4: f64,
}

pub fn fidelity_point(spec: ChannelSpec) -> Result<FidelityPoint> {
    Ok(FidelityPoint {
        alpha: spec.alpha(),
        delta1: channel_fidelity(spec, 1)?,
        delta4: channel_fidelity(spec, 4)?,
    })
}

pub fn fidelity_curve(kind: ChannelKind, points: usize) -> Result<Vec<FidelityPoint>> {
    alpha_grid(points)?
        .into_par_iter()
        .map(|a| fidelity_point(kind.at(a)?))
        .collect()
}

/// Smallest noise level at which the mean success falls to `target`.
///
/// The minimum of the mean is located on a [`THRESHOLD_GRID_POINTS`] grid and
/// the crossing is bisected on `[0, argmin]`, where the curve is monotone for
/// every channel here. Returns `None` if the mean never drops below `target`.
pub fn threshold_crossing(kind: ChannelKind, target: f64) -> Result<Option<f64>> {
    if !(target > 0.0 && target < 1.0) {
        return domain(format!("threshold target must lie in (0, 1), got {target}"));
    }
    let curve = mean_curve(kind, THRESHOLD_GRID_POINTS)?;
    let &(argmin, min) = curve
        .iter()
        .reduce(|best, p| if p.1 < best.1 { p } else { best })
        .expect("grid is non-empty");
    if min >= target {
        return Ok(None);
    }
    let mean_at = |a: f64| -> Result<f64> { crate::game::mean_success(kind.at(a)?) };
    let (mut lo, mut hi) = (0.0_f64, argmin);
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mean_at(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// One point of the `(Δ, P̄)` curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParametricPoint {
    pub alpha: f64,
    pub delta4: f64,
    pub mean: f64,
}

/// `(Δ(Φ_α), P̄(α))` over a uniform noise grid, ordered by `α`.
pub fn parametric_dataset(kind: ChannelKind, points: usize) -> Result<Vec<ParametricPoint>> {
    Ok(sweep(kind, points)?
        .rows
        .into_iter()
        .map(|r| ParametricPoint {
            alpha: r.alpha,
            delta4: r.delta4,
            mean: r.mean,
        })
        .collect())
}

/// Largest `|P̄ − chord|` over the points with `Δ ≥ min_delta`, where the
/// chord joins the first and last such points (in `α` order). `None` if
/// fewer than two points qualify.
pub fn max_chord_deviation(points: &[ParametricPoint], min_delta: f64) -> Option<f64> {
    let kept: Vec<&ParametricPoint> = points.iter().filter(|p| p.delta4 >= min_delta).collect();
    let (first, last) = (kept.first()?, kept.last()?);
    if kept.len() < 2 || first.delta4 == last.delta4 {
        return None;
    }
    let slope = (last.mean - first.mean) / (last.delta4 - first.delta4);
    kept.iter()
        .map(|p| (p.mean - (first.mean + slope * (p.delta4 - first.delta4))).abs())
        .reduce(f64::max)
}
