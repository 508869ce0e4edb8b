//! Max-flow on regular spaces.
//!
//! A regular space is the kernel or the row space of a totally unimodular
//! matrix. Flows on a digraph (kernel of the incidence matrix) and coflows
//! (its row space) are the two classical instances. The solver runs
//! Ford-Fulkerson with shortest augmenting paths, where "paths" are the
//! primitive vectors of the space that take the value +1 on a distinguished
//! element `r`.
//!
//! All arithmetic is exact.

pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod paths;
pub mod solver;
pub mod space;

pub use error::{Error, Result};
pub use linalg::{Rational, RationalMatrix};
pub use paths::{PathPair, RPath};
pub use solver::{Instance, MaxFlowOutcome, OracleKind};
pub use space::{RegularSpace, SignedVector, SpaceMode, TuMatrix};
