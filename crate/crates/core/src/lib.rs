//! Multiplicative invariants of root lattices under their Weyl groups, computed exactly.
//!
//! The invariant algebra `Z[L]^W` is the monoid algebra of `L ∩ Λ₊`; everything here
//! works at the monoid level first and expands orbit sums only on request.

pub mod classgroup;
pub mod error;
pub mod invariants;
pub mod laurent;
pub mod linalg;
pub mod monoid;
pub mod relations;
pub mod roots;
pub mod selfcheck;
pub mod weyl;

pub use classgroup::{class_group, class_group_cross_check, AbelianGroupStructure, ClassGroup};
pub use error::{Error, Result};
pub use invariants::{report, report_b_sym, veronese_structure, InvariantReport, VeroneseStructure};
pub use laurent::{orbit_sum, LaurentPoly};
pub use linalg::{smith_normal_form, IntMatrix, RatVector};
pub use monoid::{hilbert_basis_kernel, parse_instance, weight_monoid, CongruenceMonoid, HilbertBasis, MonoidInstance};
pub use relations::{relations_bounded, relations_equivalent, verify_relation, Binomial};
pub use roots::{Family, RootSystem, RootSystemType};
pub use weyl::{enumerate_group, WeylElement, DEFAULT_GROUP_CAP, DEFAULT_ORBIT_CAP};
