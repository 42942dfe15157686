//! Workbench for the semantics of Goedel's higher-order system P over finite
//! interpretations: typed syntax, Goedel numbering, satisfaction in the P and
//! P0 readings of the type-1 variables, bounded model search, a Hilbert-style
//! proof checker, and the diagonal-sentence report built on top of them.

pub mod cli;
pub mod diagonal;
pub mod numbering;
pub mod proofsys;
pub mod semantics;
pub mod syntax;

pub use syntax::{numeral, parse, print, Formula, Term1, Variable};
