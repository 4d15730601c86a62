use thiserror::Error;

#[derive(Debug, Error)]
pub enum SurgeryError {
    #[error("unknown entry `{0}`")]
    UnknownEntry(String),
    #[error("parameter {name} = {value} out of range: {reason}")]
    ParameterOutOfRange { name: String, value: String, reason: String },
    #[error("pattern mismatch for {op} at event {pos}: {reason}")]
    PatternMismatch { op: &'static str, pos: usize, reason: String },
    #[error("window mismatch: {0}")]
    WindowMismatch(String),
    #[error("potential mismatch at event {pos}, slot {slot}: {upper} vs {lower}")]
    PotentialMismatch { pos: usize, slot: usize, upper: i64, lower: i64 },
    #[error("strands at event {pos}, slot {slot} belong to the same component")]
    SameComponent { pos: usize, slot: usize },
    #[error("component {0} has no base point of its own")]
    MissingBasePoint(usize),
    #[error(transparent)]
    Core(#[from] frontdga::Error),
}

pub type Result<T> = std::result::Result<T, SurgeryError>;
