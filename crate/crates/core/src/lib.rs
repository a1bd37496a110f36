//! Quadratic normalisation maps on finite alphabets: classification,
//! local factorability, rewriting systems and the associated monoids.

pub mod catalog;
pub mod classifier;
pub mod error;
pub mod factorability;
pub mod format;
pub mod monoid;
pub mod quadmap;
pub mod report;
pub mod rewriting;
pub mod sampling;
pub mod words;

pub use classifier::{ClassReport, ClassValue, Strategy};
pub use error::{Error, Result};
pub use monoid::{MonoidElement, MonoidModel, MonoidOracle};
pub use quadmap::QuadMap;
pub use report::CheckReport;
pub use rewriting::{Mode, RewriteStrategy, RewriteSystem};
pub use words::{Alphabet, Letter, PositionSeq, Word};
