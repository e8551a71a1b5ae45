use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {input:?} as an extended rational: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("dimension mismatch in {op}: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("ragged matrix rows: row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, found: usize, expected: usize },

    #[error("closure input contains +inf at row {row}, column {col}")]
    PosInfInput { row: usize, col: usize },

    #[error("node {node} out of range 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("arc shift {shift} not in {{-1, 0, +1}}")]
    ShiftOutOfRange { shift: i64 },

    #[error("arc weight must be finite")]
    NonFiniteArcWeight,

    #[error("broken path chaining at arc {position}: arc starts at {found}, previous ends at {expected}")]
    BrokenPath { position: usize, found: usize, expected: usize },

    #[error("shift level {level} outside slice range")]
    LevelOutOfRange { level: i64 },

    #[error("slice parameter must be at least 1")]
    EmptySlice,

    #[error("transition {name:?} not declared")]
    UnknownTransition { name: String },

    #[error("duplicate transition name {name:?}")]
    DuplicateTransition { name: String },

    #[error("place {place} has lower bound {lower} greater than upper bound {upper}")]
    InvalidInterval { place: usize, lower: String, upper: String },

    #[error("place {place} has negative lower bound {lower}")]
    NegativeLowerBound { place: usize, lower: String },

    #[error("places {first} and {second} are structurally infeasible together: merged window [{lower}, {upper}] is empty")]
    InfeasiblePlacePair { first: usize, second: usize, lower: String, upper: String },

    #[error("place {place} has marking {marking}; expected 0 or 1 after normalization")]
    MarkingNotNormalized { place: usize, marking: usize },

    #[error("trajectory has dimension {found}, net has {expected} transitions")]
    TrajectoryDimension { found: usize, expected: usize },

    #[error("horizon must be at least 1")]
    EmptyHorizon,

    #[error("witness construction failed to validate at depth {depth} after {attempts} attempts")]
    WitnessConstruction { depth: usize, attempts: usize },

    #[error("no witness exists: the instance is inconsistent")]
    Inconsistent,

    #[error("certificate does not match the graph: {reason}")]
    InvalidCertificate { reason: String },

    #[error("instance too large for exhaustive search: {what} {found} exceeds limit {limit}")]
    SizeGuard { what: &'static str, found: usize, limit: usize },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("malformed input: {0}")]
    MalformedInput(String),
}
