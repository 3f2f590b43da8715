use serde::{Deserialize, Serialize};

use super::{Operad, OperadError};
use crate::perm::{ColoredPerm, Perm};

/// One output of a multi-output element: a single-output element together
/// with the global input labels feeding its slots, in slot order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Part<E> {
    pub inputs: Vec<usize>,
    pub elem: E,
}

/// An element of `O(I; J)` given output by output; `parts[j]` is output `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiHom<E> {
    pub parts: Vec<Part<E>>,
}

/// The data `(f: I → J, (x_j ∈ O(f⁻¹(j)))_j)`; each fiber is ordered increasingly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decomposed<E> {
    pub assignment: Vec<usize>,
    pub fibers: Vec<E>,
}

impl<E> MultiHom<E> {
    pub fn n_inputs(&self) -> usize {
        self.parts.iter().map(|p| p.inputs.len()).sum()
    }

    pub fn n_outputs(&self) -> usize {
        self.parts.len()
    }
}

/// Splits a multi-output element into its function and fiberwise elements,
/// sorting each fiber's labels and acting on the element to match.
pub fn decompose_hom<O: Operad>(op: &O, x: &MultiHom<O::Elem>) -> Result<Decomposed<O::Elem>, OperadError> {
    let total = x.n_inputs();
    let mut assignment = vec![usize::MAX; total];
    let mut fibers = Vec::with_capacity(x.parts.len());
    for (j, part) in x.parts.iter().enumerate() {
        let colors = op.input_colors(&part.elem);
        if colors.len() != part.inputs.len() {
            return Err(OperadError::MalformedMultiHom(format!(
                "output {j} has {} labels for {} slots",
                part.inputs.len(),
                colors.len()
            )));
        }
        for &label in &part.inputs {
            if label >= total || assignment[label] != usize::MAX {
                return Err(OperadError::MalformedMultiHom(format!("label {label} repeated or out of range")));
            }
            assignment[label] = j;
        }
        let sort = Perm::sorting(&part.inputs);
        fibers.push(op.act(&part.elem, &ColoredPerm::full_only(sort))?);
    }
    Ok(Decomposed { assignment, fibers })
}

/// Inverse of [`decompose_hom`]: the canonical multi-output element.
pub fn recompose_hom<E: Clone>(d: &Decomposed<E>) -> MultiHom<E> {
    let parts = d
        .fibers
        .iter()
        .enumerate()
        .map(|(j, e)| Part {
            inputs: d.assignment.iter().enumerate().filter(|(_, &t)| t == j).map(|(i, _)| i).collect(),
            elem: e.clone(),
        })
        .collect();
    MultiHom { parts }
}

/// All of `O(n_in; n_out)` via the decomposition formula, given the elements
/// of each single-output component.
pub fn enumerate_multi<E: Clone>(elements: impl Fn(usize) -> Vec<E>, n_in: usize, n_out: usize) -> Vec<Decomposed<E>> {
    let mut out = Vec::new();
    if n_out == 0 {
        if n_in == 0 {
            out.push(Decomposed { assignment: vec![], fibers: vec![] });
        }
        return out;
    }
    let mut assignment = vec![0usize; n_in];
    loop {
        let sizes: Vec<usize> = (0..n_out).map(|j| assignment.iter().filter(|&&t| t == j).count()).collect();
        let choices: Vec<Vec<E>> = sizes.iter().map(|&s| elements(s)).collect();
        let mut idx = vec![0usize; n_out];
        if choices.iter().all(|c| !c.is_empty()) {
            loop {
                out.push(Decomposed {
                    assignment: assignment.clone(),
                    fibers: idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect(),
                });
                let mut k = 0;
                while k < n_out {
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == n_out {
                    break;
                }
            }
        }
        let mut k = 0;
        while k < n_in {
            assignment[k] += 1;
            if assignment[k] < n_out {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
        if k == n_in {
            break;
        }
    }
    out
}
