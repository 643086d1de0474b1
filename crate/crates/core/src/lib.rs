//! Permutation binomials `f(x) = x^r (x^{q-1} + a)` over `F_{q^e}`.
//!
//! - [`field`]: table-driven arithmetic in `F_{p^{me}}`.
//! - [`binomcrit`]: the power-sum criterion and a brute-force oracle.
//! - [`theory`]: the construction family, residue filters and known
//!   characterizations.
//! - [`search`]: per-field classification and the resumable search.
//! - [`battery`]: executable checks of the published claims.

pub mod arith;
pub mod battery;
pub mod binomcrit;
pub mod error;
pub mod field;
pub mod search;
pub mod theory;

pub use binomcrit::{brute_force_is_permutation, ell, mpw_is_permutation, BinomialSpec};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldParams, FieldShape};
pub use search::{classify_field, enumerate_tasks, FieldReport, FieldTask};
