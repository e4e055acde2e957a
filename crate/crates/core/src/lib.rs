//! Exact finite-field and p-adic hypergeometric functions.
//!
//! Greene's `_{n+1}F_n`, McCarthy's `F*` and McCarthy's p-adic `_nG_n` are
//! evaluated exactly (cyclotomic integers, or residues mod `p^N`), and a
//! harness in [`theorems`] checks the transformation and special-value
//! identities relating them over sweeps of finite fields.

pub mod arith;
pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod greene;
pub mod gseries;
pub mod lemmas;
pub mod oracle;
pub mod padic;
pub mod theorems;

pub use error::{Error, Result};
pub use field::{FieldCtx, FqElem};
