//! Exact-integer engine for complementary integer sequences.
//!
//! Given a predicate P on the positive integers with a computable
//! counting function, the n-th member of P is the least fixed point of
//! x -> n + C_notP(x). This crate provides that fixed-point machinery
//! (iteration, bisection and a hybrid, plus one- and two-evaluation
//! shortcuts for fast-growing complements), closed-form rules for the
//! classic figurate families, a catalog of counting functions, and a
//! brute-force oracle used by the verification suites.
//!
//! ```
//! use num_bigint::BigUint;
//! use nthterm_core::{counting, solver};
//!
//! // The 4th prime, found as a fixed point.
//! let problem = solver::FixedPointProblem::new(
//!     BigUint::from(4u32),
//!     counting::primes().complement(),
//! )
//! .unwrap();
//! let report = solver::solve_bisection(&problem).unwrap();
//! assert_eq!(report.value, BigUint::from(7u32));
//! ```

pub mod counting;
mod error;
pub mod families;
pub mod intmath;
pub mod oracle;
pub mod solver;

pub use error::{Error, Result};

pub use counting::{CostHint, CountingFunction, SequenceMap};
pub use families::{Family, FamilyFormula};
pub use solver::{
    FixedPointProblem, GapClass, InterleaveBranch, InterleaveSpec, Method, SolverReport,
};
