use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("{} slot {slot} out of range (strand count {count})", location(*.event, *.line))]
    SlotOutOfRange {
        event: usize,
        line: Option<usize>,
        slot: usize,
        count: usize,
    },

    #[error("strand count at the end of the front is {0}, expected 0")]
    NonzeroFinalCount(usize),

    #[error("component {component} carries {count} base points")]
    MultipleBasePoints { component: usize, count: usize },

    #[error("generator name `{0}` is used twice or is reserved")]
    DuplicateName(String),

    #[error("no Maslov potential: component {component} has rotation number {rotation}")]
    NoPotential { component: usize, rotation: i64 },

    #[error("differential of generator {0} is missing from the table")]
    MissingDifferential(usize),

    #[error("disk sweep from `{generator}` exceeded the multiplicity cap {cap}")]
    CapExceeded { generator: String, cap: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("augmentation assigns {value} to `{name}` of grading {grading}")]
    NonzeroOffDegree {
        name: String,
        grading: i64,
        value: String,
    },

    #[error("augmentation file line {line}: {msg}")]
    AugmentationFormat { line: usize, msg: String },

    #[error("search over {count} grading-0 generators exceeds the limit {limit}")]
    SearchTooLarge { count: usize, limit: usize },

    #[error("no extension of the augmentation within box {bound}")]
    NoExtension { bound: i64 },

    #[error("not a complex: the composite through degree {degree} is nonzero")]
    NotAComplex { degree: i64 },
}

fn location(event: usize, line: Option<usize>) -> String {
    match line {
        Some(l) => format!("line {}:", l),
        None => format!("event {}:", event + 1),
    }
}
