//! Variety catalog, autotopism machinery and theorem checks.

pub mod autotopism;
pub mod catalog;
pub mod profile;
pub mod theorems;

pub use autotopism::{
    g_loop_routes, is_autotopism, is_g_loop, is_g_loop_with_budget, is_left_pseudoautomorphism,
    is_right_pseudoautomorphism, nucleus_membership_from_autotopism, osborn_alpha_audit, Autotopism, NucleusKind,
};
pub use catalog::{catalog, check_variety, identities_for, lookup, VarietyCatalogEntry};
pub use profile::{order16_profile, Order16Profile};
pub use theorems::{verify_theorems, CheckResult, Outcome, TheoremReport};
