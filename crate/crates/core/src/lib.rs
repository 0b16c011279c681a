//! Exact verification of log-behavior properties of combinatorial sequences.
//!
//! The crate is organized bottom-up:
//!
//! * [`exact`]: rationals, integer polynomials, rational functions in the
//!   index `n`, Sturm chains, and a complete prover for polynomial positivity
//!   over integer half-lines.
//! * [`sequences`]: recurrence, Gamma-quotient and explicit sequence
//!   definitions, exact term generation and the built-in catalog.
//! * [`logbehavior`]: finite-prefix checks of log-convexity, ratio
//!   log-convexity/concavity and log-monotonicity of order `k`.
//! * [`certify`]: machine checks of the two certificate theorems that prove
//!   ratio log-convexity for all indices from some `N` on.
//! * [`gamma`]: eligibility of Gamma-quotient families for infinite
//!   log-monotonicity, derangement experiments and the `h(t,u)` kernel.
//! * [`io`]: b-file parsing, cross-validation, term caching and documents.

pub mod certify;
pub mod exact;
pub mod gamma;
pub mod io;
pub mod logbehavior;
pub mod sequences;

pub use exact::{BigRat, IntPoly, PositivityStatus, PositivityVerdict, RatFunc};
pub use logbehavior::CheckOutcome;
pub use sequences::{GammaQuotientDef, RecurrenceDef, SequenceDef, SequenceKind};
