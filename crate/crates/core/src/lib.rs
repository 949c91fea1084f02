//! Exact Hankel determinants of convolution powers of the Motzkin numbers.
//!
//! The determinants `H_n(M(x)^r)` are evaluated by iterating a quadratic
//! continued-fraction transformation on the functional equation of
//! `M(x)^r` ([`tau`]), and independently by fraction-free elimination
//! ([`oracle`]). The [`analyzer`] fits quasi-polynomial closed forms to the
//! resulting sequences and checks the known closed forms and the
//! conjectured patterns; [`cli`] drives everything from the command line.

pub mod analyzer;
pub mod cli;
pub mod exact;
pub mod motzkin;
pub mod oracle;
pub mod tau;

pub use exact::{DensePoly, ExactInt, ExactRat, RatFunc, SeriesError, SeriesRing, TruncatedSeries};
pub use motzkin::{conv_power, derive_qfe, motzkin_coeffs, MotzkinPowerSpec};
pub use oracle::{hankel_det, hankel_table, HankelSpec};
pub use tau::{hankel_via_tau, tau_step, Qfe, TauChain, TauError};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
