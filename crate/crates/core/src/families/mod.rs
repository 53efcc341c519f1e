//! The parametric presentations, their embedding witnesses, trace normal
//! forms and the bounded-ball checks built on them.

mod presentations;
mod trace;
mod witnesses;

pub use presentations::*;
pub use trace::{foata_normal_form, TraceGraph};
pub use witnesses::*;
