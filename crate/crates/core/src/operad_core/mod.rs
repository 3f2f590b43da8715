//! Colored operads, collections, and an axiom-checking harness.
//!
//! Every operad here uses the colors of [`Color`]: `Full` (f) and `Half` (h).
//! One-colored operads use `Full` throughout. Inputs of an element are listed
//! full slots first, then half slots; composites list the inputs coming from
//! each slot in slot order, separately per color.

mod axioms;
mod collection;
mod forget;
mod instances;
mod multi;

use std::fmt::Debug;

use thiserror::Error;

pub use crate::geometry::Color;
use crate::geometry::GeometryError;
use crate::perm::ColoredPerm;

pub use axioms::{associativity_relabeling, check_instance, check_operad_axioms, AxiomReport, Sampler};
pub use collection::{
    braid_leq1, braid_tensor, check_action, tensor_assoc, tensor_coll, tensor_coll_leq1, unit_collection,
    unit_leq1, CollLeq1, Collection, LeqTensor, SymElem, TensorElem, UnitPoint,
};
pub use forget::{forget_h, truncate_leq1, ForgetH, TruncLeq1};
pub use instances::{CorruptedOperad, DiscOperad, DiscSampler};
pub use multi::{decompose_hom, enumerate_multi, recompose_hom, Decomposed, MultiHom, Part};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error("arity mismatch: expected {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("color mismatch at slot {slot}")]
    ColorMismatch { slot: usize },
    #[error("composition leaves degree {0}, above the truncation bound 1")]
    DegreeOverflow(usize),
    #[error("permutation does not match the inputs")]
    BadPermutation,
    #[error("malformed multi-output element: {0}")]
    MalformedMultiHom(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<GeometryError> for OperadError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::ArityMismatch { expected, got } => OperadError::ArityMismatch { expected, got },
            GeometryError::ColorMismatch { slot, .. } => OperadError::ColorMismatch { slot },
            GeometryError::PermutationSize { .. } => OperadError::BadPermutation,
            other => OperadError::Invalid(other.to_string()),
        }
    }
}

/// A (colored, symmetric) operad presented by its elements and structure maps.
pub trait Operad {
    type Elem: Clone + Debug;

    /// Colors of the inputs, full slots first.
    fn input_colors(&self, x: &Self::Elem) -> Vec<Color>;

    fn output_color(&self, x: &Self::Elem) -> Color;

    fn identity(&self, color: Color) -> Self::Elem;

    /// Substitutes `inputs[i]` into slot `i` of `outer`.
    fn compose(&self, outer: &Self::Elem, inputs: &[Self::Elem]) -> Result<Self::Elem, OperadError>;

    /// Right action of the symmetric groups on full and half inputs.
    fn act(&self, x: &Self::Elem, perm: &ColoredPerm) -> Result<Self::Elem, OperadError>;

    /// Equality of the underlying points (normal forms are compared here).
    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn counts(&self, x: &Self::Elem) -> (usize, usize) {
        let colors = self.input_colors(x);
        let n = colors.iter().filter(|c| **c == Color::Full).count();
        (n, colors.len() - n)
    }
}
