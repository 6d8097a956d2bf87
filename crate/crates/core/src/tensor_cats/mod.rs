//! The three fusion categories attached to a matched pair with an Opext
//! pair, their tensor products and Grothendieck rings, and the functors
//! relating them.

pub mod bimodule;
pub mod functors;
pub mod fusion;
pub mod reduction;
pub mod rep;

pub use bimodule::BimoduleCategory;
pub use fusion::{fusion_ring_isomorphic, FusionRing};
pub use reduction::{certify_equivalence, group_theoretical_data, EquivalenceCertificate, GroupTheoreticalData, ReductionChoices};
pub use rep::{ModuleSide, RepCategory};
