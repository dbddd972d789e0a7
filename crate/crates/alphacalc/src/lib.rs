//! A computer-algebra kernel for the Leibniz-compatible fractional
//! "alpha-derivative" on generalized Puiseux series.
//!
//! The kernel keeps every symbolic computation in exact rational
//! arithmetic: series coefficients, exponents and the derivative basis
//! `alpha = m/n` are all [`Rat`] values, floating point appears only in
//! numeric evaluation and in the Gamma-based Riemann-Liouville contrast
//! values. On top of the series ring it provides
//!
//! * the alpha-derivative, alpha-integral and their iterates
//!   ([`calculus`]),
//! * linear constant-coefficient alpha-differential equations solved by
//!   indicial recurrence, with the co-joint ordinary-equation coefficient
//!   mapping ([`ode`]),
//! * the alpha-exponential and alpha-trigonometric functions ([`special`]),
//! * alpha-differential geometry over multivariate Puiseux coefficients:
//!   commutators, covariant derivatives, torsion, curvature and
//!   autoparallel residuals ([`geometry`]),
//! * a fractional-power expression parser and canonical JSON/text/CSV
//!   emitters used by the `alphacalc` command-line tool.

pub mod alpha;
pub mod calculus;
pub mod error;
pub mod expr;
pub mod floatseries;
pub mod geometry;
pub mod jsonio;
pub mod multi;
pub mod ode;
pub mod poly;
pub mod puiseux;
pub mod rat;
pub mod special;
pub mod textfmt;

pub use alpha::AlphaBasis;
pub use error::{CalcError, Result};
pub use floatseries::FloatPuiseux;
pub use multi::MultiPuiseux;
pub use poly::Poly;
pub use puiseux::{EvalPoint, PuiseuxSeries};
pub use rat::Rat;
