mod commands;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use frontdga::augment::DEFAULT_SEARCH_LIMIT;

use report::Format;

macro_rules! front_format {
    () => {
        "FRONT FILE: one event per line, left to right; `#` starts a comment.
  lc <slot>             left cusp opening two strands at slot, slot+1
  rc <slot> [name]      right cusp closing the strands at slot, slot+1
  x <slot> [name]       crossing of the strands at slot and slot+1
  bp <slot> <+|->       base point on the strand at slot
Slots count from 1 at the top. A line `# shifts s1 s2 ...` gives the
Maslov potential of each component's base-point strand, in component order."
    };
}

const FRONT_FORMAT: &str = front_format!();
const BOTH_FORMATS: &str = concat!(
    front_format!(),
    "\n\nAUGMENTATION FILE: lines `name value` with integer values; `#` starts a
comment. Grading-0 generators left out are 0; a nonzero value on a
generator of nonzero grading is an error."
);

#[derive(Parser)]
#[command(name = "frontdga", version, about = "Legendrian contact homology over Z from fronts")]
struct Cli {
    /// Report format: prose or one JSON record per line.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Multiplicity cap for the disk sweep.
    #[arg(long, global = true, env = "FRONTDGA_DISK_CAP")]
    disk_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Front {
    /// Front file.
    front: PathBuf,
}

#[derive(Args)]
struct Pair {
    #[command(flatten)]
    front: Front,
    /// Augmentation file for ε1.
    #[arg(long)]
    aug1: PathBuf,
    /// Augmentation file for ε2.
    #[arg(long)]
    aug2: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a front.
    #[command(after_help = FRONT_FORMAT)]
    Validate(Front),
    /// Thurston-Bennequin and rotation numbers, gradings.
    #[command(after_help = FRONT_FORMAT)]
    Invariants(Front),
    /// The differential of every generator.
    #[command(after_help = FRONT_FORMAT)]
    Dga {
        #[command(flatten)]
        front: Front,
        /// Also check that the differential squares to zero.
        #[arg(long)]
        check: bool,
    },
    /// Search for augmentations over a box of integers or over Z/m.
    #[command(after_help = BOTH_FORMATS)]
    Augs {
        #[command(flatten)]
        front: Front,
        /// Values in [-B, B] (the default, with B = 1).
        #[arg(long = "box", value_name = "B", conflicts_with = "modulus")]
        bound: Option<i64>,
        /// Values in Z/m.
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<i64>,
        /// Largest number of grading-0 generators to search over.
        #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
        limit: usize,
        /// Write each augmentation found to DIR/aug<i>.aug.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Decide whether two augmentations are dga-homotopic.
    #[command(after_help = BOTH_FORMATS)]
    Homotopic(Pair),
    /// Linearized contact homology.
    #[command(after_help = BOTH_FORMATS)]
    Lch {
        #[command(flatten)]
        front: Front,
        /// Augmentation file.
        #[arg(long)]
        aug: PathBuf,
        /// Also print the linearized complex.
        #[arg(long)]
        complex: bool,
    },
    /// Bilinearized contact homology.
    #[command(after_help = BOTH_FORMATS)]
    Bilch {
        #[command(flatten)]
        pair: Pair,
        /// Also print the bilinearized complex.
        #[arg(long)]
        complex: bool,
    },
    /// The checks of the duality sequence for a pair of augmentations.
    #[command(after_help = BOTH_FORMATS)]
    Duality(Pair),
    /// Build a catalog entry; writes a front file and augmentation files.
    #[command(after_help = BOTH_FORMATS)]
    Construct {
        /// Catalog entry.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// Parameter `name=value` or `name=v1,v2`.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// Write NAME.front and NAME.<label>.aug into this directory.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        /// List the catalog entries and their parameters.
        #[arg(long, conflicts_with_all = ["name", "params", "out"])]
        list: bool,
    },
    /// Apply one surgery move to a front and write the new front.
    #[command(after_help = BOTH_FORMATS)]
    Surgery {
        /// Move name.
        #[arg(required_unless_present = "list")]
        op: Option<String>,
        /// Front file.
        #[arg(required_unless_present = "list")]
        front: Option<PathBuf>,
        /// Parameter `name=value`.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// Augmentations to carry across the move; re-extended and checked.
        #[arg(long = "aug")]
        augs: Vec<PathBuf>,
        /// Write the new front here instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// List the moves and their parameters.
        #[arg(long, conflicts_with_all = ["op", "front", "params", "augs", "out"])]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context { cap: cli.disk_cap, format: cli.format };
    match commands::run(&ctx, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error [{}]: {}", e.kind(), e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
