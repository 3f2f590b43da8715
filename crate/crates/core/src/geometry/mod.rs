//! Little full discs and half discs with exact rational data.
//!
//! A point of `E_d(n)` is a [`Configuration`] whose target is [`Color::Full`];
//! a point of `SC_d^h(n, m)` has target [`Color::Half`]. All predicates are
//! decided exactly, comparing squared distances so no square roots appear.

mod config;
pub mod sample;
pub mod scalar;
pub mod svg;

pub use config::{
    compose, compose_full, compose_mixed, identify_half_lower, identity_config, permute_full,
    pi0_invariant_d1, project_forget_full, sigma_act, unidentify_half_lower, validate_config, Color,
    Configuration, DiscLabel, LittleDisc, ValidationReport, Violation,
};
pub use scalar::{format_scalar, int, parse_scalar, ratio, ExtScalar, Scalar, ScalarParseError};
pub use svg::{render_config_svg, SvgError};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("arity mismatch: expected {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("color mismatch at slot {slot}: slot is {expected}, input has target {got}")]
    ColorMismatch { slot: usize, expected: Color, got: Color },
    #[error("permutation sizes do not match {full} full and {half} half discs")]
    PermutationSize { full: usize, half: usize },
    #[error("{0} full discs present where none are allowed")]
    FullDiscsPresent(usize),
    #[error("expected exactly one full disc, found {0}")]
    FullDiscCount(usize),
}
