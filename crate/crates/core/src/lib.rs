//! Exact combinatorics for the Tamari-like order on Motzkin and Schröder
//! paths.
//!
//! The crate is organised bottom-up:
//!
//! * [`path`]: path words, the path families and their statistics.
//! * [`bijection`]: the bijection `φ` between `NNN`-avoiding Dyck paths
//!   and Motzkin paths, tree encodings and type reversal.
//! * [`poset`]: cover relations, Hasse diagrams, closures, components and
//!   brute-force interval counts.
//! * [`poly`] and [`series`]: exact polynomials in `u` (and `x`) and
//!   truncated power series in `t` over them.
//! * [`gf`]: the functional-equation and algebraic pipelines for the interval
//!   generating functions.
//! * [`verify`]: the cross-verification suite behind the `verify` command.

pub mod bijection;
pub mod gf;
pub mod path;
pub mod poly;
pub mod poset;
pub mod series;
pub mod verify;

pub use bijection::{phi, phi_inv, BinaryTree};
pub use path::{parse_path, ClassSignature, PathWord, Step, TypeWord};
