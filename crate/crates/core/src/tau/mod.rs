//! The quadratic continued-fraction transformation on functional equations
//! `F = x^d / (u + x^k v F)`, chains of its iterates, and Hankel determinant
//! evaluation by walking a chain.

mod chain;
pub mod factor;
mod hankel;
mod qfe;
mod step;

pub use chain::{detect_chain_period, ChainEnd, ChainPeriod, NodeShape, TauChain};
pub use hankel::{
    hankel_sequence, hankel_via_tau, hankel_via_tau_with, walk, Backend, ChainEvaluator, HankelRun,
    PowerTable, Walk, WalkEnd,
};
pub use qfe::Qfe;
pub use step::{classify, shift_sign, tau_step, FactorKind, TauCase, TauRelation};

use crate::exact::SeriesError;
use crate::oracle::OracleError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TauError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid functional equation: {0}")]
    InvalidQfe(String),
    #[error("the transformed series is identically zero")]
    ZeroSolution,
    #[error("precision exhausted at n = {n} (working precision {precision}, {retries} retries)")]
    PrecisionExhausted {
        n: usize,
        precision: usize,
        retries: usize,
    },
    #[error("chain walk for n = {n} needs more nodes than were built")]
    ChainTooShort { n: usize },
    #[error("H_{n} = {value} is not an integer")]
    NonIntegral { n: usize, value: String },
    #[error(transparent)]
    Motzkin(#[from] crate::motzkin::MotzkinError),
}
