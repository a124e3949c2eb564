//! Error type shared by every module of the engine.
//!
//! All fallible operations return [`Result`]. Variants are grouped roughly by
//! the layer that raises them; the payload strings carry enough context to
//! locate the failing object without a debugger.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    // -- scalars -----------------------------------------------------------
    #[error("division by a non-unit: {0}")]
    DivisionByNonUnit(String),
    #[error("root is not simple: derivative vanishes at seed {0}")]
    NonsimpleRoot(String),
    #[error("no root congruent to seed {0}")]
    NoRoot(String),
    #[error("3-adic precision mismatch: {0} vs {1}")]
    PrecisionMismatch(u32, u32),

    // -- polynomial rings --------------------------------------------------
    #[error("leading coefficient is not a unit: {0}")]
    NonUnitLeadingCoefficient(String),
    #[error("division by zero polynomial")]
    ZeroDivision,
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("denominator is not invertible in the current ring: {0}")]
    NonInvertibleDenominator(String),

    // -- series ------------------------------------------------------------
    #[error("recursion did not contract: order {order} not stabilized after {iterations} passes")]
    NoContraction { order: u32, iterations: u32 },
    #[error("inner series has a nonzero constant term: {0}")]
    NonzeroConstantTerm(String),
    #[error("top coefficient is not a unit: {0}")]
    NonUnitLeading(String),
    #[error("series order {available} too small, need {needed}")]
    TruncationInsufficient { needed: u32, available: u32 },

    // -- curve / isogeny ---------------------------------------------------
    #[error("expected factorization does not hold: {0}")]
    FactorizationMismatch(String),
    #[error("u-coordinates coincide; chord slope undefined (route doublings through xy coordinates)")]
    EqualUCoordinates,
    #[error("point at infinity has no affine coordinates")]
    PointAtInfinity,
    #[error("residue is nonzero: {0}")]
    ResidueNonzero(String),
    #[error("curve fit failed: {0}")]
    FitFailed(String),
    #[error("series disagree starting at order {order}: {detail}")]
    MismatchAtOrder { order: u32, detail: String },

    // -- power operations --------------------------------------------------
    #[error("reduction mismatch: {0}")]
    ReductionMismatch(String),
    #[error("coefficient mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("linear system has no solution: {0}")]
    UnsolvableSystem(String),

    // -- operator algebra --------------------------------------------------
    #[error("degree {requested} exceeds configured bound {bound}")]
    BoundExceeded { requested: u32, bound: u32 },
    #[error("inadmissible operator word: {0}")]
    InadmissibleWord(String),

    // -- K(1)-local --------------------------------------------------------
    #[error("iteration did not converge within {0} passes")]
    NoConvergence(u32),
    #[error("insufficient precision: {0}")]
    PrecisionInsufficient(String),

    // -- text io -----------------------------------------------------------
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown identifier {0}")]
    UnknownIdentifier(String),
    #[error("unknown golden record id {0}")]
    UnknownRecord(String),
    #[error("malformed golden record: {0}")]
    GoldenFormat(String),
    #[error("unknown verification scope {0}")]
    UnknownScope(String),
}

pub type Result<T> = std::result::Result<T, Error>;
