use thiserror::Error;

/// Errors from the Pauli and stabilizer algebra.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {left} qubits vs {right} qubits")]
    Dimension { left: usize, right: usize },
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("operator {0} has imaginary phase and cannot be a stabilizer")]
    ImaginaryPhase(String),
    #[error("generators {0} and {1} anticommute")]
    Anticommuting(usize, usize),
    #[error("generator {0} is dependent on earlier generators")]
    Dependent(usize),
    #[error("reset gates are not unitary and cannot conjugate a Pauli")]
    NonUnitaryGate,
    #[error("`{0}` is not a Pauli string")]
    Syntax(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("distance must be at least 2, got {0}")]
    Distance(usize),
    #[error("distance-{d} code at offset ({row},{col}) does not fit in a {grid}x{grid} grid")]
    OutOfBounds {
        d: usize,
        grid: usize,
        row: usize,
        col: usize,
    },
}

/// Structural problems with a circuit value.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("layer {layer}: qubit {qubit} is touched by more than one gate")]
    LayerConflict { layer: usize, qubit: usize },
    #[error("layer {layer}: CX control equals target (qubit {qubit})")]
    SelfCx { layer: usize, qubit: usize },
    #[error("qubit {qubit} has no coordinate ({n} declared)")]
    MissingCoordinate { qubit: usize, n: usize },
    #[error("circuits are defined over different qubit layouts")]
    QubitSetMismatch,
    #[error("input qubit {0} is reset")]
    InputReset(usize),
}

/// Parse failure with the byte offset of the offending statement.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("malformed statement `{0}`")]
    Malformed(String),
    #[error("qubit {0} used before declaration")]
    Undeclared(usize),
    #[error("qubit {0} declared twice")]
    Redeclared(usize),
    #[error("qubit {0} appears twice in one layer")]
    DuplicateInLayer(usize),
    #[error("CX with control == target ({0})")]
    SelfCx(usize),
    #[error("CX needs an even number of qubit arguments")]
    OddCxArgs,
    #[error("qubit indices are not contiguous: missing {0}")]
    Gap(usize),
    #[error("bad percent-encoding in payload")]
    Encoding,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error("no base encoder for distance {0} (only 2 and 3)")]
    NoBase(usize),
    #[error("distance must be at least 2, got {0}")]
    Distance(usize),
    #[error("pattern extraction needs at least two stages of one parity at different sizes")]
    Underdetermined,
    #[error("stages mix parities or have unusable sizes: {0}")]
    Inconsistent(String),
    #[error("no period-2 tiling reproduces the instances; first mismatch at {site}")]
    NoTiling { site: String },
    #[error("period-2 tiling is ambiguous: cut choices disagree at size {size}")]
    Ambiguous { size: usize },
    #[error("pattern with reference size {reference} cannot be instantiated at size {size}")]
    Size { reference: usize, size: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("reset of qubit {qubit} in layer {layer} hits the support of a tracked operator")]
    NonUnitarity { layer: usize, qubit: usize },
    #[error("circuit has {circuit} qubits but the code has {code}")]
    Dimension { circuit: usize, code: usize },
    #[error("circuit has no input qubit")]
    NoInput,
    #[error("layer {layer}: invariant broken: {what}")]
    Invariant { layer: usize, what: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Synth(#[from] SynthError),
}
