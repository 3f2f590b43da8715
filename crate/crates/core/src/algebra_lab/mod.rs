//! Desk-scale models over prime fields: the discrete (π₀) swiss-cheese operad
//! in dimension 1, O-A modules and the free module monad, `A^{sc}`, the
//! Hochschild object, and brute-force checks of the universal property.
//!
//! Everything is finite. Operads are finite tables cut off at a maximal total
//! arity, algebras and modules are structure tensors over `F_p`, and the
//! comparison theorems are verified by enumerating both sides.
//!
//! One convention comes from the geometry: in `π₀SC₁` the word `[h1 f2 f1]`
//! applies `f2` first, so `B` acts on `A` from the right and the induced
//! product on `hom(A, A)` is `f·g = g∘f`.

mod algebra;
mod asc;
mod discrete;
mod field;
mod linalg;
mod oa;
mod tensor;
mod universal;

use thiserror::Error;

use crate::operad_core::OperadError;

pub use algebra::{
    end_algebra, enumerate_linear_maps, module_map_bijection, AlgebraJson, AssocAlgebra, ModuleMapBijection,
    ModuleStructure,
};
pub use asc::{a_sc_discrete, hochschild_d1, mod_sc_leq1_bijection, ASc, Hochschild, ModScBijection};
pub use discrete::{
    check_action_diagrams, check_discrete_axioms, partial_sources, Action, ActionChecker, ActionFailure, Entry,
    Component, DiscreteOperad, FailureKind, OperadJson, OrderingModel, ScActionData,
};
pub use field::{FieldScalar, Fp};
pub use linalg::{Echelon, Mat, Quotient, Sparse};
pub use oa::{free_oa_module, hom_oa, is_module_map, FreeModule, MonadReport, OAModule, OAlgebra};
pub use tensor::{Src, Tensor};
pub use universal::{
    check_naturality, h_structure, universal_cheese_discrete, OKind, UniversalData,
    UniversalReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 65536")]
    NotPrime(u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("multiplication is not associative")]
    NotAssociative,
    #[error("no two-sided unit")]
    NotUnital,
    #[error("enumeration of {count} candidates exceeds the bound {bound}")]
    EnumerationBound { count: u128, bound: u128 },
    #[error("arity cutoff reached at arity {reached} while computing {what}")]
    Cutoff { reached: usize, what: String },
    #[error("dimension {0} is too large")]
    Dimension(usize),
    #[error("structure maps violate the algebra axioms: {0}")]
    NotAnAlgebra(String),
    #[error("malformed operad table: {0}")]
    Table(String),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error("json: {0}")]
    Json(String),
}

/// Checks `count ≤ bound` before an enumeration.
pub(crate) fn within_bound(p: u32, exponent: usize, bound: u128) -> Result<u128, AlgebraError> {
    let count = (p as u128).checked_pow(exponent as u32).unwrap_or(u128::MAX);
    if count > bound {
        Err(AlgebraError::EnumerationBound { count, bound })
    } else {
        Ok(count)
    }
}
