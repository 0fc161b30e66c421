//! Exact arithmetic for the generalized sequence `U(a, b, r)` defined by
//! `U(n+2) = r·U(n+1) + U(n)`, `U(0) = b − r·a`, `U(1) = a`, together with a
//! registry of weighted-sum identities that are verified by evaluating both
//! sides independently over exact rationals.
//!
//! Fibonacci, Lucas, Pell and Pell-Lucas numbers are the members
//! `(1, 1, 1)`, `(1, 3, 1)`, `(1, 2, 2)` and `(2, 6, 2)`.
//!
//! ```
//! use genseq_core::{term_fast, SequenceFamily};
//!
//! let pell = SequenceFamily::Pell.resolve();
//! assert_eq!(term_fast(&pell, 8).to_string(), "408");
//! ```

pub mod expr;
pub mod identities;
pub mod rational;
pub mod sequence;

pub use identities::{
    evaluate, Bindings, IdentityError, IdentityId, IdentityInstance, IdentityReport, Param, Sides, SweepConfig,
    SweepSummary,
};
pub use rational::{Rational, RationalError};
pub use sequence::{resolve, term, term_fast, term_range, SequenceError, SequenceFamily, SequenceParams};
