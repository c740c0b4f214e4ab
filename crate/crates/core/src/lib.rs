//! Finite loops: Cayley tables, permutation groups, nuclei and normality,
//! an identity catalog with theorem checks, exhaustive search, and an exact
//! infinite construction on `Z x Z`.

pub mod bk;
pub mod error;
pub mod iso;
pub mod mult;
pub mod perm;
pub mod search;
pub mod structure;
pub mod table;
pub mod term;
pub mod varieties;

pub use error::{Error, Result};
pub use perm::{Perm, PermGroup};
pub use structure::SubloopSet;
pub use table::LoopTable;
