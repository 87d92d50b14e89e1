//! Labeled posets, their (P,ω)-partition enumerators in the fundamental and
//! monomial quasisymmetric bases, and tools for deciding when one labeled
//! poset's enumerator dominates another's.

pub mod comparison;
pub mod enumerator;
pub mod error;
pub mod families;
pub mod generate;
pub mod invariants;
pub mod poset;
pub mod qsym;
pub mod text;
pub mod transforms;
pub mod verify;

pub use comparison::{
    compare, compare_profiles, compare_with, necessary_battery, BatteryMode, ComparisonReport, ConditionOutcome,
    Profile, Relation, Status,
};
pub use enumerator::{
    count_linear_extensions, enumerator_f, enumerator_f_with, enumerator_m, enumerator_m_with, linear_extensions,
    EnumConfig, LinearExtensions,
};
pub use error::{Error, Result};
pub use families::{
    check_thm_caterpillar, check_thm_k1, decode_caterpillar, decode_greene_k1, encode_greene_k1, f_positivity_poset,
    CaterpillarReport, FPositivityPoset, Family, FamilyKind, IntervalEncoding, K1Report,
};
pub use generate::{all_posets, dedupe_isomorphic, natural_posets, random_poset, random_rbd_descendant};
pub use invariants::{
    bar, conjugate, greene_shapes, jump_sequence, max_strict_convex_union, max_weak_convex_union, star, GreeneShapes,
    JumpSequence,
};
pub use poset::{has_bad_cycle, is_isomorphic, ChainStats, Cover, EdgeDiagram, EdgeKind, LabeledPoset, LessThanSet};
pub use qsym::{composition_of, descent_composition, dominance_leq, subset_of, Basis, Composition, QSymExpr};
pub use text::{parse_poset, parse_posets, write_poset, NamedPoset};
pub use transforms::{
    assemble, delete_cover, is_grbd_reachable, is_rbd_reachable, rbd_certificate, split_on_incomparable,
    AssembledPoset, AssemblyInput, RbdCertificate, Split, SplitBranch,
};
pub use verify::{Counterexample, Theorem, VerifyOptions, VerifySummary};
