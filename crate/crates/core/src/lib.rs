//! Polybox codes over a finite alphabet with complementation.
//!
//! Words encode boxes; a set of pairwise dichotomous words (a polybox code)
//! encodes a family of pairwise disjoint boxes. The crate provides the
//! covering calculus, a cell-level geometric oracle with an exact-cover
//! engine, code isomorphism and canonical forms, the completion search for
//! twelve-word twin-pair-free codes, and Keller-graph utilities.

pub mod code;
pub mod cover;
pub mod error;
pub mod keller;
pub mod oracle;
pub mod search;
pub mod structure;
pub mod text;
pub mod word;

pub use code::{is_polybox_code, Code};
pub use error::{Error, Result};
pub use word::{are_dichotomous, complement, is_i_siblings, is_twin_pair, Letter, Word};
