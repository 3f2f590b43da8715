//! Trees with operad-labelled vertices and lengths in `[0, ∞]`.
//!
//! [`DecoratedTree`] is a point of a W-operad and is rewritten by contracting
//! length-0 edges and deleting unary identities. [`LevelSequence`] is a
//! morphism of the level category `LE_d`, and [`ETree`] is an element of the
//! operad `E` generated by level trees with one output. Every normal form
//! here is a structural value, so equality of points is `==`.

mod etree;
mod level;
mod svg;
mod wtree;

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::operad_core::OperadError;
use crate::perm::{ColoredPerm, Perm};

pub use etree::{
    collapse_lengths, e_act, e_compose, e_graft, embed_config, max_stratum, normalize_e, random_etree,
    staged_collapse, ETree, EOperad,
};
pub use level::{
    collapse_le, compose_le, compose_levels, contract_at, delete_identity_at, identity_level, is_relabeling,
    level_arity, normalize_le, normalize_le_random, random_level_sequence, Level, LevelSequence,
};
pub(crate) use level::sort_part;
pub use svg::render_tree_svg;
pub use wtree::{
    act_w, canonical_w, check_tree, evaluate_w, graft, leaf_counts, normalize_w, normalize_w_random,
    number_leaves, random_length, random_wtree, relabel_leaves, tree_input_colors, visit_leaves, Child,
    DecoratedTree, Node, WOperad,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("arity mismatch: expected {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("color mismatch at slot {slot}")]
    ColorMismatch { slot: usize },
    #[error("permutation does not match the leaves")]
    BadPermutation,
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl TreeError {
    pub fn into_operad(self) -> OperadError {
        match self {
            TreeError::ArityMismatch { expected, got } => OperadError::ArityMismatch { expected, got },
            TreeError::ColorMismatch { slot } => OperadError::ColorMismatch { slot },
            TreeError::BadPermutation => OperadError::BadPermutation,
            TreeError::Operad(e) => e,
            other => OperadError::Invalid(other.to_string()),
        }
    }
}

/// Above this many arrangements of tied siblings only the first is tried.
const TIE_LIMIT: usize = 5040;

/// Calls `f` with every colored permutation that only reorders runs of equal
/// consecutive keys (`keys` are already sorted within each color).
pub(crate) fn for_each_tie_arrangement<K: PartialEq>(full: &[K], half: &[K], f: &mut dyn FnMut(&ColoredPerm)) {
    let groups = |keys: &[K]| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=keys.len() {
            if i == keys.len() || keys[i] != keys[start] {
                if i - start > 1 {
                    out.push((start, i - start));
                }
                start = i;
            }
        }
        out
    };
    let gf = groups(full);
    let gh = groups(half);
    let total: usize = gf.iter().chain(&gh).map(|&(_, n)| (1..=n).product::<usize>()).product();
    let identity = ColoredPerm::identity(full.len(), half.len());
    if total <= 1 || total > TIE_LIMIT {
        f(&identity);
        return;
    }
    let choices: Vec<(bool, usize, Vec<Perm>)> = gf
        .iter()
        .map(|&(s, n)| (true, s, Perm::all(n)))
        .chain(gh.iter().map(|&(s, n)| (false, s, Perm::all(n))))
        .collect();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let mut p = identity.clone();
        for ((is_full, start, perms), &i) in choices.iter().zip(&idx) {
            let target = if *is_full { &mut p.full } else { &mut p.half };
            for (k, &j) in perms[i].0.iter().enumerate() {
                target.0[start + k] = start + j;
            }
        }
        f(&p);
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < choices[k].2.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return;
        }
    }
}
