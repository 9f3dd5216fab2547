//! Exact computations on cubic surfaces with an order-3 automorphism group:
//! the Picard lattice and its 27 lines, the Weyl group W(E6), equivariant
//! minimality and rationality verdicts, K² bookkeeping for quotients,
//! arithmetic in Q(ω) and explicit surfaces in normal form.

#![allow(clippy::needless_range_loop)]

pub mod field;
pub mod lattice;
pub mod minimality;
pub mod quotient;
pub mod surface;
pub mod tables;
pub mod verify;
pub mod weyl;

pub use field::{BinaryCubic, CubicPoly, FieldElement, FieldError, GaloisClass};
pub use lattice::{ContractionState, DivisorClass, LineLabel, LineSet};
pub use minimality::{analyze, GaloisScenario, MinimalityError, Rationality, Verdict};
pub use quotient::{QuotientError, QuotientScenario};
pub use surface::{classify, GaloisProfile, SurfaceError, SurfaceSpec, SurfaceVerdict};
pub use verify::{Module, Report};
pub use weyl::{Isometry, SpecError, Subgroup, SubgroupRecord, WeylError};
