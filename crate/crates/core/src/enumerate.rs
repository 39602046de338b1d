//! Exhaustive enumeration of full entanglement generators, brute-force
//! deduplication of their transfer matrices, and verification of the
//! closed-form counts.
//!
//! For radix r there are `prod_{i=2..r} (i^2 - i)` distinct circuit forms
//! (r choices of which control value to omit, (r-1)! addend assignments,
//! (r-1)! gate orders) and exactly r! unique transfer functions, since the
//! controlled modulo-add gates commute.

use crate::circuit::{entanglement_generator, Circuit, GeneratorSpec};
use crate::entangle::{classify, EntanglementClass};
use crate::error::{Error, Result};
use crate::operator::{GateParams, OperatorMatrix};
use crate::state::Tolerance;
use itertools::Itertools;
use serde::Serialize;
use std::collections::HashMap;

/// Entrywise tolerance for transfer-matrix deduplication. No phase quotient
/// is applied: equal transfer functions here are entrywise equal.
pub const DEDUP_EPS: f64 = 1e-12;

/// Quantization grid for the dedup hash buckets; exact comparison happens
/// within (and, for boundary safety, across) buckets.
const QUANT_GRID: f64 = 1e-10;

/// Brute force is skipped above this radix unless explicitly raised.
pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 6;

/// `prod_{i=2..r} (i^2 - i)`: the number of distinct full-generator
/// circuit forms.
pub fn formula_circuit_count(radix: usize) -> Result<u128> {
    if radix < 2 {
        return Err(Error::RadixTooSmall(radix));
    }
    let mut acc: u128 = 1;
    for i in 2..=radix as u128 {
        acc = acc
            .checked_mul(i * i - i)
            .ok_or(Error::CountOverflow(radix))?;
    }
    Ok(acc)
}

/// `r!`: the number of unique full-generator transfer functions.
pub fn formula_unique_count(radix: usize) -> Result<u128> {
    if radix < 2 {
        return Err(Error::RadixTooSmall(radix));
    }
    let mut acc: u128 = 1;
    for i in 2..=radix as u128 {
        acc = acc.checked_mul(i).ok_or(Error::CountOverflow(radix))?;
    }
    Ok(acc)
}

/// All unordered full-generator specs in canonical order: r-1 distinct
/// control values (every (r-1)-subset of 0..r), each paired bijectively
/// with the addends 1..r, pairs sorted by control value. Length is r!.
pub fn enumerate_generator_sets(radix: usize) -> Result<Vec<GeneratorSpec>> {
    if radix < 2 {
        return Err(Error::RadixTooSmall(radix));
    }
    let mut sets = Vec::new();
    for omitted in (0..radix).rev() {
        let controls: Vec<usize> = (0..radix).filter(|&h| h != omitted).collect();
        for addends in (1..radix).permutations(radix - 1) {
            let pairs = controls
                .iter()
                .zip(&addends)
                .map(|(&h, &k)| GateParams::new(h, k))
                .collect();
            sets.push(GeneratorSpec::new(pairs).expect("distinct by construction"));
        }
    }
    Ok(sets)
}

/// Every gate ordering of every generator set, as circuits; length is
/// `prod_{i=2..r} (i^2 - i)`.
pub fn enumerate_circuit_forms(radix: usize) -> Result<Vec<Circuit>> {
    let sets = enumerate_generator_sets(radix)?;
    let mut forms = Vec::new();
    for set in &sets {
        let n = set.len();
        for order in set.pairs().iter().copied().permutations(n) {
            let spec = GeneratorSpec::new(order).expect("permutation keeps distinctness");
            forms.push(entanglement_generator(radix, &spec)?);
        }
    }
    Ok(forms)
}

fn quantized_key(m: &OperatorMatrix) -> Vec<(i64, i64)> {
    m.entries()
        .iter()
        .map(|z| {
            (
                (z.re / QUANT_GRID).round() as i64,
                (z.im / QUANT_GRID).round() as i64,
            )
        })
        .collect()
}

/// Groups matrices into classes of entrywise-equal transfers within
/// [`DEDUP_EPS`]. Returns, for each input index, its class index, plus the
/// class count; classes are numbered in first-occurrence order.
fn dedup_classes(matrices: &[OperatorMatrix]) -> (Vec<usize>, usize) {
    let mut buckets: HashMap<Vec<(i64, i64)>, Vec<usize>> = HashMap::new();
    let mut class_of = vec![usize::MAX; matrices.len()];
    let mut representatives: Vec<usize> = Vec::new();
    for (idx, m) in matrices.iter().enumerate() {
        let key = quantized_key(m);
        let candidates = buckets.entry(key).or_default();
        let mut found = None;
        for &rep_idx in candidates.iter() {
            if matrices[rep_idx].approx_eq(m, DEDUP_EPS) {
                found = Some(class_of[rep_idx]);
                break;
            }
        }
        // Boundary fallback: a value near a grid edge can quantize into a
        // neighboring bucket, so scan class representatives before minting
        // a new class.
        if found.is_none() {
            for (class, &rep_idx) in representatives.iter().enumerate() {
                if matrices[rep_idx].approx_eq(m, DEDUP_EPS) {
                    found = Some(class);
                    break;
                }
            }
        }
        match found {
            Some(class) => class_of[idx] = class,
            None => {
                class_of[idx] = representatives.len();
                representatives.push(idx);
                candidates.push(idx);
            }
        }
    }
    (class_of, representatives.len())
}

/// Sizes of the transfer-function equivalence classes over all circuit
/// forms, in first-occurrence order.
pub fn transfer_class_sizes(radix: usize) -> Result<Vec<usize>> {
    let forms = enumerate_circuit_forms(radix)?;
    let transfers: Vec<OperatorMatrix> = forms.iter().map(|c| c.transfer_matrix()).collect();
    let (class_of, count) = dedup_classes(&transfers);
    let mut sizes = vec![0usize; count];
    for class in class_of {
        sizes[class] += 1;
    }
    Ok(sizes)
}

/// A verification mismatch, carrying enough context to reproduce it.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyFailure {
    CircuitCountMismatch {
        expected: u128,
        found: u64,
    },
    UniqueCountMismatch {
        expected: u128,
        found: u64,
    },
    NonMaximalOutput {
        pairs: Vec<GateParams>,
        input: String,
        classification: EntanglementClass,
    },
    Noncommutative {
        first: GateParams,
        second: GateParams,
    },
}

/// Result of counting and checking all full-generator circuit forms.
#[derive(Debug, Clone, Serialize)]
pub struct EnumerationReport {
    pub radix: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circuit_forms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unique_transfers: Option<u64>,
    pub formula_circuit_count: u128,
    pub formula_unique_count: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_maximal: Option<bool>,
    pub brute_force: bool,
    pub failures: Vec<VerifyFailure>,
}

impl EnumerationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && (!self.brute_force || self.all_maximal == Some(true))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Highest radix brute-forced; beyond it only the formulas are
    /// evaluated and the report's `brute_force` flag is false.
    pub brute_force_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            brute_force_limit: DEFAULT_BRUTE_FORCE_LIMIT,
        }
    }
}

/// Enumerates every circuit form, deduplicates transfer matrices, checks
/// both closed-form counts, and verifies that every form sends every basis
/// input to a maximally entangled state.
pub fn verify_counts(radix: usize, tol: Tolerance) -> Result<EnumerationReport> {
    verify_counts_with(radix, tol, VerifyOptions::default())
}

pub fn verify_counts_with(
    radix: usize,
    tol: Tolerance,
    options: VerifyOptions,
) -> Result<EnumerationReport> {
    let formula_circuits = formula_circuit_count(radix)?;
    let formula_unique = formula_unique_count(radix)?;
    if radix > options.brute_force_limit {
        return Ok(EnumerationReport {
            radix,
            circuit_forms: None,
            unique_transfers: None,
            formula_circuit_count: formula_circuits,
            formula_unique_count: formula_unique,
            all_maximal: None,
            brute_force: false,
            failures: Vec::new(),
        });
    }

    let forms = enumerate_circuit_forms(radix)?;
    let mut failures = Vec::new();

    let circuit_forms = forms.len() as u64;
    if u128::from(circuit_forms) != formula_circuits {
        failures.push(VerifyFailure::CircuitCountMismatch {
            expected: formula_circuits,
            found: circuit_forms,
        });
    }

    let transfers: Vec<OperatorMatrix> = forms.iter().map(|c| c.transfer_matrix()).collect();
    let (_, unique) = dedup_classes(&transfers);
    let unique_transfers = unique as u64;
    if u128::from(unique_transfers) != formula_unique {
        failures.push(VerifyFailure::UniqueCountMismatch {
            expected: formula_unique,
            found: unique_transfers,
        });
    }

    let mut all_maximal = true;
    for circuit in &forms {
        for (label, output) in circuit.table_outputs() {
            let class = classify(&output, tol)?.class;
            if class != EntanglementClass::MaximallyEntangled {
                all_maximal = false;
                failures.push(VerifyFailure::NonMaximalOutput {
                    pairs: circuit
                        .gates()
                        .iter()
                        .filter_map(|g| match *g {
                            crate::circuit::GateSpec::ControlledModAdd { h, k } => {
                                Some(GateParams::new(h, k))
                            }
                            _ => None,
                        })
                        .collect(),
                    input: label.to_string(),
                    classification: class,
                });
            }
        }
    }

    Ok(EnumerationReport {
        radix,
        circuit_forms: Some(circuit_forms),
        unique_transfers: Some(unique_transfers),
        formula_circuit_count: formula_circuits,
        formula_unique_count: formula_unique,
        all_maximal: Some(all_maximal),
        brute_force: true,
        failures,
    })
}

/// The first pair of controlled modulo-add gates with distinct controls
/// whose products differ, if any. Products of these permutation matrices
/// have exact 0/1 entries, so the comparison is exact.
pub fn commutativity_witness(radix: usize) -> Result<Option<(GateParams, GateParams)>> {
    if radix < 2 {
        return Err(Error::RadixTooSmall(radix));
    }
    for h1 in 0..radix {
        for h2 in 0..radix {
            if h1 == h2 {
                continue;
            }
            for k1 in 1..radix {
                for k2 in 1..radix {
                    let p1 = GateParams::new(h1, k1);
                    let p2 = GateParams::new(h2, k2);
                    let a = OperatorMatrix::controlled_mod_add(radix, p1)?;
                    let b = OperatorMatrix::controlled_mod_add(radix, p2)?;
                    let ab = a.compose(&b)?;
                    let ba = b.compose(&a)?;
                    if !ab.approx_eq(&ba, 0.0) {
                        return Ok(Some((p1, p2)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// True when all controlled modulo-add gates with distinct controls
/// commute exactly.
pub fn verify_commutativity(radix: usize) -> Result<bool> {
    Ok(commutativity_witness(radix)?.is_none())
}
