//! Error types shared across the crate.

use num_bigint::BigInt;
use thiserror::Error;

/// Failures of the exact lattice operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("eigenvector must be nonzero")]
    ZeroEigenvector,
    #[error("eigenvector {vector} is not primitive")]
    NonPrimitiveEigenvector { vector: String },
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("matrix has determinant {det}, expected +-1")]
    NotUnimodular { det: BigInt },
    #[error("identity is not a single-node monodromy")]
    IdentityNotNode,
    #[error("matrix has determinant -1; nodal monodromy preserves orientation")]
    OrientationReversing,
    #[error("matrix {matrix} is not a nodal monodromy")]
    NotParabolic { matrix: String },
    #[error("recovered multiplicity {value} does not fit in u64")]
    MultiplicityOverflow { value: String },
}

/// A single violated invariant found while validating a base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Edge or corner index the violation is anchored to, when there is one.
    pub index: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.index {
            Some(i) => write!(f, "index {}: {}", i, self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

/// Outcome of validating a base: empty means every invariant holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, index: Option<usize>, message: impl Into<String>) {
        self.violations.push(Violation { index, message: message.into() });
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            write!(f, "ok")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Failures of base queries that require a valid base.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("base does not validate:\n{report}")]
    Invalid { report: ValidationReport },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Failures of the surgery operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("index {index} is out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("corner {index} is a vertex; a node is required")]
    CornerNotNode { index: usize },
    #[error("corner {index} is a node; a vertex is required")]
    CornerNotVertex { index: usize },
    #[error("corner {index} has n = {n}, expected {expected}")]
    WrongN { index: usize, n: BigInt, expected: BigInt },
    #[error("corner {index} has multiplicity {multiplicity}, expected 1")]
    MultiplicityNotOne { index: usize, multiplicity: u64 },
    #[error("edge {index} does not satisfy the blowdown criterion u[i-1] + u[i+1] = u[i]")]
    NotBlowdownRay { index: usize },
    #[error("slide parameter {value} is outside (0, 1]")]
    SlideOutOfRange { value: String },
    #[error("blowup parameter {value} is outside (0, 1)")]
    BlowupParamOutOfRange { value: String },
    #[error("move would produce an invalid base:\n{report}")]
    ResultInvalid { report: ValidationReport },
    #[error("base does not validate:\n{report}")]
    Invalid { report: ValidationReport },
    #[error("hash mismatch on replay: expected {expected:016x}, found {found:016x}")]
    HashMismatch { expected: u64, found: u64 },
    #[error("move {kind} does not apply to a {target}")]
    WrongTarget { kind: String, target: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Failures of normalization and the toric pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("base has vertex corners; trade them to nodes first")]
    VerticesPresent,
    #[error("move cap of {cap} exceeded; n values so far: {ns:?}")]
    MoveCapExceeded { cap: usize, ns: Vec<BigInt> },
    #[error("no reducing branch move found for n = {n}; base: {dump}")]
    NoReduction { n: BigInt, dump: String },
    #[error("n multiset failed to decrease: {before:?} -> {after:?}")]
    NoProgress { before: Vec<BigInt>, after: Vec<BigInt> },
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("base does not validate:\n{report}")]
    Invalid { report: ValidationReport },
}

/// Failures of classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("base does not validate:\n{report}")]
    Invalid { report: ValidationReport },
    #[error("not a minimal four-edge Delzant fan")]
    NotHirzebruch,
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

/// Failures of the turning-angle computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TurningError {
    #[error("turning angle is undefined for the zero vector")]
    ZeroVector,
}

/// A position-annotated syntax error in the text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Failures of SVG rendering.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("base does not validate:\n{report}")]
    Invalid { report: ValidationReport },
    #[error("base diagram is not embeddable: {detail}")]
    NonEmbeddable { detail: String },
}
