//! Radix-r qudit state-vector simulation built around the entanglement
//! generator family: Chrestenson transforms for maximal superposition,
//! controlled modulo-add gates for entangling, Schmidt-based classification
//! of the results, and exhaustive enumeration of the full generators.
//!
//! The crate is organized as:
//!
//! - [`state`]: normalized amplitude vectors, basis construction, tensor
//!   products, probabilities, and measurement conditioning.
//! - [`operator`]: the unitary factory (Chrestenson `C_r`, modulo-add
//!   `M_k`, controlled modulo-add `A_{h,k}`) plus composition, Kronecker
//!   products, and application.
//! - [`circuit`]: ordered two-wire gate lists, transfer matrices, and the
//!   partial/full entanglement generator constructors.
//! - [`entangle`]: Schmidt data, product/partial/maximal/non-maximal
//!   classification, reduced densities, and per-outcome correlation reports.
//! - [`enumerate`]: exhaustive generator enumeration, transfer-function
//!   deduplication, and verification of the counting formulas.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here can be shared freely across threads.

pub mod circuit;
pub mod entangle;
pub mod enumerate;
pub mod error;
mod json;
pub mod operator;
pub mod render;
pub mod state;

pub use circuit::{entanglement_generator, Circuit, GateSpec, GeneratorSpec};
pub use entangle::{
    analyze, classify, coefficient_matrix, correlation_report, correlation_report_on,
    is_maximally_superposed, reduced_density, schmidt_data, Classification, CoefficientMatrix,
    CorrelationReport, EntanglementClass, EntanglementReport, OutcomeCorrelation, SchmidtData,
};
pub use enumerate::{
    commutativity_witness, enumerate_circuit_forms, enumerate_generator_sets,
    formula_circuit_count, formula_unique_count, transfer_class_sizes, verify_commutativity,
    verify_counts, verify_counts_with, EnumerationReport, VerifyFailure, VerifyOptions,
};
pub use error::{Error, Result};
pub use operator::{GateParams, OperatorMatrix, RootsOfUnity, UNITARY_EPS};
pub use state::{DigitString, QuditState, Tolerance};
