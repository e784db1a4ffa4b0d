//! Exact-arithmetic classification of equivariant maximal Cohen-Macaulay
//! sheaves on minimal nilpotent orbit closures.
//!
//! The pipeline: [`rootsys`] builds exact rational realizations of the simple
//! root systems together with the Levi subsystem orthogonal to the highest
//! root; [`bwb`] decides, for a parabolic weight, whether cohomology vanishes
//! entirely (singular case) or concentrates in a single degree; [`families`]
//! produces, for each stabilizer weight, the family of parabolic weights whose
//! cohomology controls the Cohen-Macaulay property; [`criteria`] transcribes
//! the closed-form per-type tests; [`engine`] combines everything into a
//! uniform decision oracle, a closed-form cross-checker, and the bounded
//! enumeration that emits the exceptional classification tables.
//!
//! All arithmetic is exact: coordinates are arbitrary-precision rationals and
//! there is no floating point anywhere in the crate.

pub mod bwb;
pub mod criteria;
pub mod engine;
pub mod families;
pub mod ratvec;
pub mod rootsys;

pub use bwb::CohomologyProfile;
pub use engine::{CrosscheckReport, McmTable, McmVerdict, TableFormat};
pub use families::{FamilyContext, StabilizerWeight, WeightFamily};
pub use ratvec::{rat, ratio, RatVec};
pub use rootsys::{Family, LeviData, RootSystem, SimpleType};

/// Exact scalar used for every coordinate and pairing in the crate.
pub type Rat = num_rational::BigRational;
