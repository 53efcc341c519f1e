//! Words, presentations, string rewriting, rational-subset automata and
//! HNN normal forms for finitely presented monoids, groups and inverse
//! monoids.
//!
//! Everything here is pure and allocation-only, so the crate builds without
//! `std`. File formats and the command-line front end live in the `monrel`
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod automata;
pub mod encoder;
pub mod families;
pub mod hnn;
pub mod overlap;
pub mod presentation;
pub mod report;
pub mod rewrite;
pub mod transform;
pub mod word;

pub use presentation::{Kind, Presentation, PresentationError, Relation};
pub use word::{Alphabet, Symbol, Word, WordError};
