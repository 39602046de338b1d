use thiserror::Error;

/// Error type shared by all modules of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("radix must be at least 2, got {0}")]
    RadixTooSmall(usize),
    #[error("state must have at least one wire")]
    NoWires,
    #[error("wire index {wire} out of range for a {wires}-wire state")]
    WireOutOfRange { wire: usize, wires: usize },
    #[error("expected {expected} digits, got {found}")]
    DigitCount { expected: usize, found: usize },
    #[error("digit {digit} out of range for radix {radix}")]
    DigitOutOfRange { digit: usize, radix: usize },
    #[error("character {0:?} is not a base-36 digit")]
    InvalidDigitChar(char),
    #[error("radix mismatch: {0} vs {1}")]
    RadixMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("operation requires a {expected}-wire state, got {found} wires")]
    WrongWireCount { expected: usize, found: usize },
    #[error("amplitude {0} is not finite")]
    NonFiniteAmplitude(usize),
    #[error("matrix entry ({0}, {1}) is not finite")]
    NonFiniteEntry(usize, usize),
    #[error("state is not normalized: |sum of squared magnitudes - 1| = {0:.3e}")]
    NotNormalized(f64),
    #[error("matrix is not unitary: max entry of |U^dag U - I| = {0:.3e}")]
    NotUnitary(f64),
    #[error("tolerance must be finite and positive, got {0}")]
    InvalidTolerance(f64),
    #[error("outcome {outcome} on wire {wire} has probability below tolerance")]
    ZeroProbability { wire: usize, outcome: usize },
    #[error("control value h={h} out of range for radix {radix}")]
    ControlOutOfRange { h: usize, radix: usize },
    #[error("addend k={k} out of range for radix {radix}")]
    AddendOutOfRange { k: usize, radix: usize },
    #[error("generator spec must contain at least one gate")]
    EmptyGeneratorSpec,
    #[error("duplicate control value h={0} in generator spec")]
    DuplicateControl(usize),
    #[error("duplicate addend k={0} in generator spec")]
    DuplicateAddend(usize),
    #[error("addend k=0 is the identity and cannot entangle")]
    ZeroAddend,
    #[error("generator spec has {len} gates; radix {radix} allows at most {max}")]
    GeneratorTooLong {
        len: usize,
        radix: usize,
        max: usize,
    },
    #[error("invalid circuit JSON: {0}")]
    CircuitJson(String),
    #[error("gate {index}: {message}")]
    GateJson { index: usize, message: String },
    #[error("count overflows 128 bits for radix {0}")]
    CountOverflow(usize),
    #[error("state dimension {radix}^{wires} overflows")]
    DimensionOverflow { radix: usize, wires: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
