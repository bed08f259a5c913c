//! High-precision evaluation and cross-verification of the arctan-logarithm
//! integral family
//!
//! ```text
//! I(a,p,q,r) = integral_0^1 x^(a-p) ln^q(x) arctan^p(x) / (1+x^2)^r dx
//! ```
//!
//! Three independent evaluation routes are provided - closed forms and
//! recurrences, series expansions in odd harmonic numbers and Milgram
//! constants, and arbitrary-precision tanh-sinh quadrature - together with a
//! verification harness that cross-checks every identity and emits a
//! machine-readable report.

pub mod constexpr;
pub mod closedform;
pub mod error;
pub mod exec;
pub mod numerics;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod verify;

pub use error::Error;
pub use numerics::{BigFloat, PrecisionContext, Rational};
