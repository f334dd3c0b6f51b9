//! Exact computations for row-finite infinite-rank graphs (`N`-graphs) and
//! their Kumjian-Pask algebras.
//!
//! * [`multidegree`]: finitely supported multi-indices.
//! * [`graph`]: finite presentations (skeleton, commuting squares, trivial
//!   tail), validation, and the path calculus.
//! * [`ideal`]: hereditary and saturated vertex sets, the ideal lattice,
//!   quotients, and the regular-ideal formulas.
//! * [`aperiodic`]: bounded witness search for aperiodicity.
//! * [`kp`]: Kumjian-Pask algebra elements, multiplication, normal forms.
//! * [`pathrep`]: finite-window path representation used as an oracle.
//! * [`cli`]: the batch command interface.

pub mod aperiodic;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod graph;
pub mod ideal;
pub mod kp;
pub mod multidegree;
pub mod pathrep;
pub mod ring;

pub use error::{Error, Result};
pub use graph::{NGraph, Path};
pub use multidegree::{GradedDegree, MultiIndex};
