//! Lexicographic optimization over bounded integer sets.
//!
//! Everything in this crate revolves around the family of lexicographic total
//! orders on `Z^n`: for a permutation `σ`, points are compared coordinate by
//! coordinate starting from position `σ(n)` (most significant) down to `σ(1)`.
//! The crate computes the lex-greatest and lex-least feasible points of a
//! bounded integer set under any such order, and uses them to build
//!
//! * **primal bounds** — the best objective value among lex optima over a
//!   family of permutations (always attained by a feasible point), and
//! * **dual bounds** — the optimum over the intersection of lex-interval
//!   relaxations, one per permutation.
//!
//! Both bounds come with structural tightness tests for 0/1 and monotone
//! sets, closed forms for sign-separated systems and polymatroids, an
//! oracle-driven bisection algorithm, strengthened cutting-plane and extended
//! formulations for independence systems, and a deliberately naive
//! enumeration referee ([`bruteforce`]) that cross-checks every algorithm at
//! desk scale.
//!
//! All arithmetic that could overflow or round is exact: big-integer
//! scalarization weights, big-rational objectives and constraint rows, and an
//! exact rational feasibility solver for convex-hull queries.
//!
//! The `examples/` directory is the guided tour; each example is a runnable
//! walkthrough of one capability. The `lexbound` binary exposes the same
//! operations as JSON-emitting subcommands.

pub mod bounds;
pub mod bruteforce;
pub mod cli;
pub mod error;
pub mod fm;
pub mod formulation;
pub mod instance;
pub mod lex;
pub mod lexopt;
pub mod ratio;
pub mod simplex;
pub mod structure;
pub mod testgen;

pub use error::{Error, Result};
pub use lex::{IntBox, IntPoint, Permutation};
