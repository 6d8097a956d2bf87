//! Matched pairs of finite groupoids, the twisted weak Hopf algebras they
//! carry, and computational certificates comparing the associated fusion
//! categories.

pub mod coeff;
pub mod cohomology;
pub mod cyclotomic;
pub mod error;
pub mod fixtures;
pub mod groupoid;
pub mod groups;
pub mod io;
pub mod linalg;
pub mod matched_pair;
pub mod phase;
pub mod report;
pub mod sweep;
pub mod tensor_cats;
pub mod twisted;
pub mod weak_hopf;

pub use error::{Error, ParseError, Result};
pub use groupoid::{FiniteGroupoid, Subgroupoid, Transversal, TransversalRule};
pub use phase::Phase;
pub use report::ValidationReport;
