//! Finite descriptive proximity spaces with approximately algebraic
//! structure: nearness and upper approximations induced by probe features,
//! ring-like axiom analysis over operation tables, ideal classification
//! (prime, primary, semi-primary, 1-absorbing primary, radicals, colon
//! ideals, quotients), and a claim-checking harness that hunts for
//! counterexamples over enumerated and sampled instances.

pub mod error;
pub mod format;
pub mod harness;
pub mod ideals;
pub mod quotient;
pub mod space;
pub mod structures;

pub use error::{AlgebraError, OpKind, Result};
pub use ideals::{
    classify_ideal, colon, enumerate_ideals, intersect_ideals, is_approx_ideal,
    is_one_absorbing_primary, is_p_primary, is_primary, is_prime, is_semi_primary,
    product_instance, product_set, radical, ClassificationReport, IdealRef, Verdict,
};
pub use quotient::{quotient, QuotientStructure, ZeroTestMode};
pub use space::{
    check_dp_axioms, DescriptiveSpace, DpAxiom, DpCheckMode, DpCheckOptions, DpReport,
    FeatureVector, PointSet, ProximityRelation, RelationOrigin, MAX_POINTS,
};
pub use structures::{
    analyze_structure, locate_identities, AlgebraInstance, Checked, IdentityInfo, OpTable,
    StructureFlag, StructureFlags, Witness,
};
