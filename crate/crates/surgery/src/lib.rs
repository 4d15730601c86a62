//! Surgery on Legendrian fronts and a catalog of constructed examples.

pub mod catalog;
pub mod error;
pub mod legendrian;
pub mod ops;
pub mod pipeline;
pub mod registry;

pub use error::{Result, SurgeryError};
pub use legendrian::Legendrian;
pub use ops::{Hint, KinkSide, Passing, Rewrite};
pub use pipeline::{NamedAugmentation, Pipeline};
pub use registry::{Catalog, CatalogEntry, OpRegistry, ParamSpec, SurgeryOp};
