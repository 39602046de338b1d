//! Entanglement classification for two-qudit pure states.
//!
//! The state is reshaped into its r x r coefficient matrix; the singular
//! values of that matrix certify factorability. Rank 1 means a product
//! state. All r values equal to 1/sqrt(r) means maximal entanglement: every
//! outcome of one qudit pins the other. Rank strictly between 1 and r with
//! a mixed correlation structure, where some outcomes of one qudit pin the
//! partner to a basis state and others leave a superposition, is partial
//! entanglement. Anything else is non-maximal entanglement with imbalanced
//! amplitudes.

use crate::error::{Error, Result};
use crate::json;
use crate::state::{QuditState, Tolerance};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

/// Singular values this far above zero count toward the Schmidt rank.
/// Distinct from comparison tolerance: genuine values here are either 0
/// or at least 1/r.
pub const RANK_TOL: f64 = 1e-7;

/// The r x r matrix M with `state = sum M[i][j] |i j>`.
#[derive(Debug, Clone)]
pub struct CoefficientMatrix {
    radix: usize,
    entries: Vec<Complex64>,
}

impl CoefficientMatrix {
    pub fn from_state(state: &QuditState) -> Result<Self> {
        if state.wires() != 2 {
            return Err(Error::WrongWireCount {
                expected: 2,
                found: state.wires(),
            });
        }
        Ok(Self {
            radix: state.radix(),
            entries: state.amplitudes().to_vec(),
        })
    }

    pub fn radix(&self) -> usize {
        self.radix
    }

    /// `M[i][j]` = amplitude of `|i j>`.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.radix + j]
    }
}

/// Singular values of the coefficient matrix, non-increasing, with the
/// count of values above [`RANK_TOL`].
#[derive(Debug, Clone, Serialize)]
pub struct SchmidtData {
    singular_values: Vec<f64>,
    rank: usize,
}

impl SchmidtData {
    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Degree of entanglement of a two-qudit pure state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EntanglementClass {
    ProductState,
    PartiallyEntangled,
    MaximallyEntangled,
    NonMaximallyEntangled,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub class: EntanglementClass,
    pub schmidt: SchmidtData,
}

/// One measurement branch of the observed wire: its probability, the
/// partner's conditional state, and whether that state is a basis state.
#[derive(Debug, Clone, Serialize)]
pub struct OutcomeCorrelation {
    pub outcome: usize,
    pub prob: f64,
    pub conditional: QuditState,
    pub pinned: bool,
}

/// Per-outcome correlation table for one measured wire.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationReport {
    pub measured_wire: usize,
    pub outcomes: Vec<OutcomeCorrelation>,
    pub pinned_count: usize,
    pub unpinned_count: usize,
}

pub fn coefficient_matrix(state: &QuditState) -> Result<CoefficientMatrix> {
    CoefficientMatrix::from_state(state)
}

/// Schmidt spectrum of a two-qudit state, from the eigenvalues of M M^dag.
pub fn schmidt_data(state: &QuditState) -> Result<SchmidtData> {
    let cm = CoefficientMatrix::from_state(state)?;
    let r = cm.radix();
    let m = DMatrix::from_fn(r, r, |i, j| cm.entry(i, j));
    let gram = &m * m.adjoint();
    let eigen = SymmetricEigen::new(gram);
    let mut singular_values: Vec<f64> = eigen
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    singular_values.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    let rank = singular_values.iter().filter(|&&s| s > RANK_TOL).count();
    Ok(SchmidtData {
        singular_values,
        rank,
    })
}

pub fn classify(state: &QuditState, tol: Tolerance) -> Result<Classification> {
    let schmidt = schmidt_data(state)?;
    let r = state.radix();
    let values = schmidt.singular_values();
    let uniform = (r as f64).sqrt().recip();
    let class = if schmidt.rank() == 1 {
        EntanglementClass::ProductState
    } else if values.iter().all(|&s| (s - uniform).abs() <= tol.eps()) {
        EntanglementClass::MaximallyEntangled
    } else if schmidt.rank() < r && has_mixed_pinning(state, tol)? {
        EntanglementClass::PartiallyEntangled
    } else {
        EntanglementClass::NonMaximallyEntangled
    };
    Ok(Classification { class, schmidt })
}

/// Partial-entanglement witness: on at least one wire, some
/// positive-probability outcome pins the partner to a basis state while
/// another outcome leaves it in a superposition.
fn has_mixed_pinning(state: &QuditState, tol: Tolerance) -> Result<bool> {
    for wire in 0..2 {
        let report = correlation_report_on(state, wire, tol)?;
        if report.pinned_count > 0 && report.unpinned_count > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Partial trace over the other wire: an r x r Hermitian, trace-1,
/// positive semidefinite matrix. Maximal entanglement is witnessed by this
/// equaling I/r on both wires.
pub fn reduced_density(state: &QuditState, wire: usize) -> Result<Vec<Vec<Complex64>>> {
    let cm = CoefficientMatrix::from_state(state)?;
    if wire > 1 {
        return Err(Error::WireOutOfRange { wire, wires: 2 });
    }
    let r = cm.radix();
    let rho = (0..r)
        .map(|a| {
            (0..r)
                .map(|b| {
                    (0..r)
                        .map(|t| {
                            if wire == 0 {
                                cm.entry(a, t) * cm.entry(b, t).conj()
                            } else {
                                cm.entry(t, a) * cm.entry(t, b).conj()
                            }
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    Ok(rho)
}

/// Correlation table for measurements of wire 1, matching the convention
/// of the generator circuits where wire 0 carries the superposed control.
pub fn correlation_report(state: &QuditState, tol: Tolerance) -> Result<CorrelationReport> {
    correlation_report_on(state, 1, tol)
}

/// Correlation table for measurements of the given wire. An outcome is
/// "pinned" when it forces the other qudit into a single basis state.
pub fn correlation_report_on(
    state: &QuditState,
    wire: usize,
    tol: Tolerance,
) -> Result<CorrelationReport> {
    if state.wires() != 2 {
        return Err(Error::WrongWireCount {
            expected: 2,
            found: state.wires(),
        });
    }
    if wire > 1 {
        return Err(Error::WireOutOfRange { wire, wires: 2 });
    }
    let r = state.radix();
    let probs = state.probabilities();
    let mut outcomes = Vec::new();
    for outcome in 0..r {
        let prob: f64 = (0..r)
            .map(|other| {
                let idx = if wire == 0 {
                    outcome * r + other
                } else {
                    other * r + outcome
                };
                probs[idx]
            })
            .sum();
        if prob <= tol.eps() {
            continue;
        }
        let conditional = state.conditional(wire, outcome, tol)?;
        let pinned = conditional
            .probabilities()
            .iter()
            .any(|&p| (p - 1.0).abs() <= tol.eps());
        outcomes.push(OutcomeCorrelation {
            outcome,
            prob,
            conditional,
            pinned,
        });
    }
    let pinned_count = outcomes.iter().filter(|o| o.pinned).count();
    let unpinned_count = outcomes.len() - pinned_count;
    Ok(CorrelationReport {
        measured_wire: wire,
        outcomes,
        pinned_count,
        unpinned_count,
    })
}

/// True when every basis outcome of a single qudit has probability 1/r
/// within tolerance.
pub fn is_maximally_superposed(state: &QuditState, tol: Tolerance) -> Result<bool> {
    if state.wires() != 1 {
        return Err(Error::WrongWireCount {
            expected: 1,
            found: state.wires(),
        });
    }
    let uniform = (state.radix() as f64).recip();
    Ok(state
        .probabilities()
        .iter()
        .all(|&p| (p - uniform).abs() <= tol.eps()))
}

/// Full analysis of a two-qudit state, serialized as the report JSON.
#[derive(Debug, Clone, Serialize)]
pub struct EntanglementReport {
    pub classification: EntanglementClass,
    pub schmidt_values: Vec<f64>,
    pub schmidt_rank: usize,
    pub pinned: Vec<OutcomeCorrelation>,
    #[serde(serialize_with = "json::serialize_density")]
    pub reduced_density_wire0: Vec<Vec<Complex64>>,
}

pub fn analyze(state: &QuditState, tol: Tolerance) -> Result<EntanglementReport> {
    let classification = classify(state, tol)?;
    let correlation = correlation_report(state, tol)?;
    let reduced_density_wire0 = reduced_density(state, 0)?;
    Ok(EntanglementReport {
        classification: classification.class,
        schmidt_values: classification.schmidt.singular_values.clone(),
        schmidt_rank: classification.schmidt.rank,
        pinned: correlation.outcomes,
        reduced_density_wire0,
    })
}
