//! The Weyl group W(E6) acting on the Picard lattice and on the 27 lines.

use std::sync::OnceLock;

use thiserror::Error;

use crate::lattice::DivisorClass;

mod group;
mod isometry;
pub mod named;
pub mod spec;
pub mod subgroups;

pub use group::{
    are_conjugate, centralizer, conjugacy_classes, generate, normalizer, pointwise_line_fixator,
    Subgroup,
};
pub use isometry::{Isometry, IsometryRecord, LinePerm, Matrix};
pub use named::{named_element, s6_embed, s6_from_cycles, simple_reflections, simple_roots};
pub use spec::{
    parse_spec, subgroup_from_spec, GeneratorSpec, SpecError, SubgroupRecord, SubgroupSpec,
};
pub use subgroups::{all_subgroups, normal_subgroup_witness, subgroups_up_to_conjugacy};

/// Order of W(E6).
pub const WEYL_E6_ORDER: usize = 51840;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("matrix is not an isometry: basis pairing ({left},{right}) should be {expected}, found {found}")]
    NotIsometry {
        left: usize,
        right: usize,
        expected: i64,
        found: i64,
    },
    #[error("matrix does not fix the canonical class")]
    CanonicalNotFixed,
    #[error("line images do not form a permutation")]
    NotAPermutation,
    #[error("line permutation is not induced by a lattice isometry")]
    PermNotInduced,
    #[error("{0} is not a root (self-intersection must be -2)")]
    NotARoot(DivisorClass),
    #[error("invalid permutation of 1..6: {0}")]
    InvalidPermutation(String),
    #[error("unknown element name {0:?}")]
    UnknownName(String),
    #[error("group closure exceeded {limit} elements")]
    BudgetExceeded { limit: usize },
}

/// W(E6), generated by the six simple reflections.
pub fn weyl_group() -> &'static Subgroup {
    static W: OnceLock<Subgroup> = OnceLock::new();
    W.get_or_init(|| Subgroup::generate(&simple_reflections()).expect("W(E6) has 51840 elements"))
}

/// The copy of S6 permuting the indices of `E_i, L_ij, Q_i`.
pub fn s6_image() -> &'static Subgroup {
    static S6: OnceLock<Subgroup> = OnceLock::new();
    S6.get_or_init(|| {
        let t = s6_embed(&[2, 1, 3, 4, 5, 6]).expect("valid");
        let c = s6_embed(&[2, 3, 4, 5, 6, 1]).expect("valid");
        Subgroup::generate(&[t, c]).expect("S6 has 720 elements")
    })
}
