//! Finite higher-dimensional transition systems.
//!
//! A system is a set of states, a set of labelled actions and a set of
//! multi-action transitions.  This crate decides which axioms a finite
//! system satisfies, saturates transition sets under the closure rules,
//! computes colimits, reflections and coreflections between the weak,
//! cubical and regular classes, builds cylinder and cocylinder objects, and
//! decides weak equivalence and fibrancy in the four associated model
//! structures.  A line-oriented text format and a CLI expose everything;
//! see the `examples/` directory for one runnable walkthrough per
//! capability.

pub mod axioms;
pub mod builders;
pub mod cats;
pub mod cli;
pub mod closure;
pub mod error;
pub mod hom;
pub mod homotopy;
pub mod reflect;
pub mod system;
pub mod textio;
mod util;

pub use error::{Error, Result};
pub use hom::Budget;
pub use system::{Label, SetProfile, Transition, TsMap, Tsys};
