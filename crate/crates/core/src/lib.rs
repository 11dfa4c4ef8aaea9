//! Exact calculus of reductive prehomogeneous modules.
//!
//! A module is a reductive group `GL_1^k × S_1 × ... × S_r` acting on a
//! direct sum of irreducible representations, each given by highest weights.
//! This crate computes dimensions exactly, applies castling transforms,
//! enumerates bounded castling orbits, carries the classification tables of
//! étale modules, and checks the gcd and equal-factor constraints that
//! castling imposes.
//!
//! ```
//! use phv::{parse_module, castling};
//!
//! let m = parse_module("GL1 x SL2 : 3w1").unwrap();
//! assert!(m.is_etale_candidate());
//! let moves = castling::castling_moves(&m, castling::SubsetPolicy::SingletonsAndFull);
//! let promoted = castling::castle(&m, &moves[0]).unwrap();
//! assert_eq!(promoted.module_dim(), 12u32.into());
//! assert!(promoted.is_etale_candidate());
//! ```

pub mod canon;
pub mod castling;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod expr;
pub mod lie;
pub mod module;
pub mod verify;

pub use canon::{canonical_form, equivalent};
pub use error::{Error, Result};
pub use expr::{format_module, parse_module};
pub use lie::{irrep_dim, Family, HighestWeight, SimpleFactor};
pub use module::{GroupShape, Module, ModuleBuilder, Summand};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/dimensions.md")]
    mod dimensions {}
    #[doc = include_str!("../../../book/src/equivalence.md")]
    mod equivalence {}
    #[doc = include_str!("../../../book/src/castling.md")]
    mod castling {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
