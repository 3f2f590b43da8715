//! The free extension `SC^{h∞}` of the degree ≤ 1 swiss-cheese operad, words
//! in `ι`, `p`, `h_t` and `E_d` actions, the operad `End(SC^{h∞})`, and the
//! semidirect product `SC^{h∞} ⋊_ρ O`.
//!
//! `p` and `h_t` (for `0 < t < ∞`) have no formula, so they stay symbolic:
//! words are compared through their normal forms, and an End element is
//! evaluated on a generator only when the relations `pι = id`, `h_0 = id` and
//! `h_∞ = ιp` pin down the result.

mod element;
mod end;
mod semidirect;
mod word;

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::operad_core::OperadError;
use crate::trees::TreeError;

pub use element::{
    act_end, act_schinf, compose_schinf, embed_leq1, iota, normalize_sch, random_generator, random_schinf,
    SCh1Element, SChInfElement, SchLabel, SchOp,
};
pub use end::{end_act, end_compose, normalize_end, rho_e, EndTree};
pub use semidirect::{unit_rho, SemiElem, Semidirect, SemidirectSampler, UnitOperad};
pub use word::{
    chain_from_le, clamp, word_normalize, word_normalize_random, FormalWord, Obj, Side, Token,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchError {
    #[error("ill-typed word: {0}")]
    Word(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("a generator-sized piece has degree {0}, above 1")]
    Degree(usize),
    #[error("malformed element: {0}")]
    Shape(String),
    #[error("the element carries symbolic End decorations and has no W-tree image")]
    Symbolic,
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
