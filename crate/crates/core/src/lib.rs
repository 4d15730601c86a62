//! Combinatorial Legendrian contact homology over the integers.
//!
//! A Legendrian link is given by a front in event-list form ([`diagram`]).
//! From it we build the Chekanov-Eliashberg algebra ([`algebra`]), count
//! the admissible disks of the front ([`disks`]), look for integral
//! augmentations ([`augment`]) and compute linearized and bilinearized
//! homology with torsion ([`linearized`], [`homology`]).

pub mod algebra;
pub mod augment;
pub mod diagram;
pub mod disks;
pub mod error;
pub mod homology;
pub mod linearized;
pub mod matrix;

pub use algebra::{AlgebraElement, Dga, Letter, Word};
pub use augment::Augmentation;
pub use diagram::{Event, EventKind, FrontDiagram, Generator, GeneratorKind, PotentialAssignment};
pub use disks::{CornerKind, CornerLabel, Disk, DiskConfig};
pub use error::{Error, Result};
pub use homology::GradedModule;
pub use linearized::GradedComplex;
pub use matrix::Matrix;
