use std::fmt;
use std::path::PathBuf;

use surgery::SurgeryError;

/// Anything a subcommand can fail with. Usage and I/O problems exit with 2,
/// errors of the computation itself with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// A file that parses but does not satisfy ε∘∂ = 0.
    NotAugmentation(PathBuf),
    Io { path: PathBuf, source: std::io::Error },
    Core(frontdga::Error),
    Surgery(SurgeryError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Surgery(SurgeryError::UnknownEntry(_) | SurgeryError::ParameterOutOfRange { .. }) => 2,
            _ => 1,
        }
    }

    /// `module::Variant` of the wrapped error.
    pub fn kind(&self) -> String {
        match self {
            CliError::Usage(_) => "cli::Usage".into(),
            CliError::NotAugmentation(_) => "augment::NotAnAugmentation".into(),
            CliError::Io { .. } => "cli::Io".into(),
            CliError::Core(e) => format!("{}::{}", core_module(e), variant(e)),
            CliError::Surgery(SurgeryError::Core(e)) => format!("{}::{}", core_module(e), variant(e)),
            CliError::Surgery(e) => format!("surgery::{}", variant(e)),
        }
    }
}

fn variant(e: &impl fmt::Debug) -> String {
    let s = format!("{:?}", e);
    s.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("").to_string()
}

fn core_module(e: &frontdga::Error) -> &'static str {
    use frontdga::Error::*;
    match e {
        Syntax { .. } | SlotOutOfRange { .. } | NonzeroFinalCount(_) | MultipleBasePoints { .. } | DuplicateName(_) | NoPotential { .. } => {
            "diagram"
        }
        MissingDifferential(_) => "algebra",
        CapExceeded { .. } => "disks",
        UnknownGenerator(_) | NonzeroOffDegree { .. } | AugmentationFormat { .. } | SearchTooLarge { .. } | NoExtension { .. } => {
            "augment"
        }
        NotAComplex { .. } => "homology",
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::NotAugmentation(p) => write!(f, "{} does not satisfy eps(d a) = 0 on this front", p.display()),
            CliError::Io { path, source } => write!(f, "{}: {}", path.display(), source),
            CliError::Core(e) => write!(f, "{}", e),
            CliError::Surgery(e) => write!(f, "{}", e),
        }
    }
}

impl From<frontdga::Error> for CliError {
    fn from(e: frontdga::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<SurgeryError> for CliError {
    fn from(e: SurgeryError) -> Self {
        CliError::Surgery(e)
    }
}
