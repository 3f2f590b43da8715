use rand::Rng;
use serde::{Deserialize, Serialize};

use super::level::{
    collapse_le, compose_levels, normalize_le_free_source, random_level_sequence, Level, LevelSequence,
};
use super::TreeError;
use crate::geometry::{compose, identity_config, sigma_act, Color, Configuration, ExtScalar, Scalar};
use crate::operad_core::{MultiHom, Operad, OperadError, Part};
use crate::perm::{ColoredPerm, Perm};

/// A point of the operad `E`: a tree whose vertices are level sequences with
/// one output, joined by edges of length `∞`.
///
/// `children[i]` hangs below source object `i` of `seq`. In normal form no
/// sequence has an internal `∞`, no vertex is the identity, and source
/// objects are named canonically, so two points agree exactly when the
/// values are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ETree {
    Leaf(usize),
    Node { seq: LevelSequence, children: Vec<ETree> },
}

impl ETree {
    pub fn unit() -> Self {
        ETree::Leaf(0)
    }

    pub fn arity(&self) -> usize {
        match self {
            ETree::Leaf(_) => 1,
            ETree::Node { children, .. } => children.iter().map(ETree::arity).sum(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            ETree::Leaf(_) => 0,
            ETree::Node { children, .. } => 1 + children.iter().map(ETree::vertex_count).sum::<usize>(),
        }
    }

    /// Leaf labels from left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.visit_leaves(&mut |l| out.push(l));
        out
    }

    fn visit_leaves(&self, f: &mut dyn FnMut(usize)) {
        match self {
            ETree::Leaf(l) => f(*l),
            ETree::Node { children, .. } => children.iter().for_each(|c| c.visit_leaves(f)),
        }
    }

    fn map_leaves(&self, f: &dyn Fn(usize) -> usize) -> ETree {
        match self {
            ETree::Leaf(l) => ETree::Leaf(f(*l)),
            ETree::Node { seq, children } => {
                ETree::Node { seq: seq.clone(), children: children.iter().map(|c| c.map_leaves(f)).collect() }
            }
        }
    }

    /// Checks shapes, dimensions and that the leaves are `0..n` once each.
    pub fn check(&self, d: usize) -> Result<(), TreeError> {
        fn walk(t: &ETree, d: usize) -> Result<(), TreeError> {
            if let ETree::Node { seq, children } = t {
                seq.check()?;
                if seq.d != d || seq.target != 1 {
                    return Err(TreeError::Malformed("vertices are sequences with one output".into()));
                }
                if children.len() != seq.source {
                    return Err(TreeError::ArityMismatch { expected: seq.source, got: children.len() });
                }
                children.iter().try_for_each(|c| walk(c, d))?;
            }
            Ok(())
        }
        walk(self, d)?;
        let mut leaves = self.leaves();
        leaves.sort_unstable();
        if leaves.iter().enumerate().any(|(i, &l)| i != l) {
            return Err(TreeError::BadPermutation);
        }
        Ok(())
    }

    /// True if no vertex sequence has an internal `∞` length; edges between
    /// vertices are the only infinite ones, so every finite part is level.
    pub fn finite_parts_are_level(&self) -> bool {
        match self {
            ETree::Leaf(_) => true,
            ETree::Node { seq, children } => {
                seq.lengths.iter().all(ExtScalar::is_finite) && children.iter().all(ETree::finite_parts_are_level)
            }
        }
    }
}

/// Splits `bottom` (a sequence with `m` outputs) into its `m` one-output
/// components, each with its source objects renamed in increasing order.
/// Returns, per component, the sequence and the original source labels.
fn components(bottom: &LevelSequence) -> Vec<(LevelSequence, Vec<usize>)> {
    (0..bottom.target)
        .map(|o| {
            let mut labels: Vec<Level> = Vec::with_capacity(bottom.labels.len());
            let mut reached = vec![o];
            for level in &bottom.labels {
                let mut next: Vec<usize> = reached.iter().flat_map(|&m| level.parts[m].inputs.clone()).collect();
                next.sort_unstable();
                let rename = |x: usize| next.binary_search(&x).expect("reached object");
                let parts = reached
                    .iter()
                    .map(|&m| {
                        let p = &level.parts[m];
                        Part { inputs: p.inputs.iter().map(|&x| rename(x)).collect(), elem: p.elem.clone() }
                    })
                    .collect();
                labels.push(MultiHom { parts });
                reached = next;
            }
            let seq = LevelSequence {
                d: bottom.d,
                source: reached.len(),
                target: 1,
                labels,
                lengths: bottom.lengths.clone(),
            };
            (seq, reached)
        })
        .collect()
}

fn normalize_vertex(seq: &LevelSequence, children: Vec<ETree>) -> Result<ETree, TreeError> {
    let (seq, pi) = normalize_le_free_source(seq)?;
    // old source i is now pi(i)
    let mut reordered = vec![ETree::Leaf(0); children.len()];
    for (i, c) in children.into_iter().enumerate() {
        reordered[pi.apply(i)] = c;
    }
    let children = reordered;
    if seq.labels.is_empty() {
        return Ok(children.into_iter().next().expect("identity vertex has one child"));
    }
    let Some(cut) = seq.lengths.iter().position(ExtScalar::is_inf) else {
        return Ok(ETree::Node { seq, children });
    };
    let top = LevelSequence {
        d: seq.d,
        source: seq.labels[cut].n_inputs(),
        target: 1,
        labels: seq.labels[..=cut].to_vec(),
        lengths: seq.lengths[..cut].to_vec(),
    };
    let bottom = LevelSequence {
        d: seq.d,
        source: seq.source,
        target: top.source,
        labels: seq.labels[cut + 1..].to_vec(),
        lengths: seq.lengths[cut + 1..].to_vec(),
    };
    let below = components(&bottom)
        .into_iter()
        .map(|(c, sources)| {
            let kids = sources.iter().map(|&i| children[i].clone()).collect();
            normalize_vertex(&c, kids)
        })
        .collect::<Result<Vec<_>, _>>()?;
    normalize_vertex(&top, below)
}

/// Normal form of a point of `E`.
pub fn normalize_e(t: &ETree) -> Result<ETree, TreeError> {
    match t {
        ETree::Leaf(l) => Ok(ETree::Leaf(*l)),
        ETree::Node { seq, children } => {
            if seq.target != 1 || children.len() != seq.source {
                return Err(TreeError::ArityMismatch { expected: seq.source, got: children.len() });
            }
            let kids = children.iter().map(normalize_e).collect::<Result<Vec<_>, _>>()?;
            normalize_vertex(seq, kids)
        }
    }
}

/// Attaches `inputs[i]` at leaf `i` of `outer`; leaves of `inputs[i]` are
/// shifted past those of `inputs[..i]`. No normalization.
pub fn e_graft(outer: &ETree, inputs: &[ETree]) -> Result<ETree, TreeError> {
    let n = outer.arity();
    if inputs.len() != n {
        return Err(TreeError::ArityMismatch { expected: n, got: inputs.len() });
    }
    let mut offsets = Vec::with_capacity(n);
    let mut acc = 0;
    for t in inputs {
        offsets.push(acc);
        acc += t.arity();
    }
    fn walk(t: &ETree, inputs: &[ETree], offsets: &[usize]) -> ETree {
        match t {
            ETree::Leaf(l) => {
                let off = offsets[*l];
                inputs[*l].map_leaves(&|x| x + off)
            }
            ETree::Node { seq, children } => ETree::Node {
                seq: seq.clone(),
                children: children.iter().map(|c| walk(c, inputs, offsets)).collect(),
            },
        }
    }
    Ok(walk(outer, inputs, &offsets))
}

/// Operad composition in `E`: graft, then normalize.
pub fn e_compose(outer: &ETree, inputs: &[ETree]) -> Result<ETree, TreeError> {
    normalize_e(&e_graft(outer, inputs)?)
}

/// Right action: input `i` of `x·σ` is input `σ(i)` of `x`.
pub fn e_act(x: &ETree, sigma: &Perm) -> Result<ETree, TreeError> {
    if sigma.len() != x.arity() || !sigma.is_valid() {
        return Err(TreeError::BadPermutation);
    }
    let inv = sigma.inverse();
    Ok(x.map_leaves(&|l| inv.apply(l)))
}

fn collapse_with_leaves(t: &ETree, d: usize) -> Result<(Configuration, Vec<usize>), TreeError> {
    match t {
        ETree::Leaf(l) => Ok((identity_config(d, Color::Full), vec![*l])),
        ETree::Node { seq, children } => {
            let level = collapse_le(seq)?;
            let part = &level.parts[0];
            let mut fillers = Vec::with_capacity(part.inputs.len());
            let mut leaves = Vec::new();
            for &i in &part.inputs {
                let (c, ls) = collapse_with_leaves(&children[i], d)?;
                fillers.push(c);
                leaves.extend(ls);
            }
            Ok((compose(&part.elem, &fillers)?, leaves))
        }
    }
}

/// The operad map `E → E_d`: every length becomes 0 and everything composes.
pub fn collapse_lengths(t: &ETree, d: usize) -> Result<Configuration, TreeError> {
    let (cfg, leaves) = collapse_with_leaves(t, d)?;
    let sigma = Perm::sorting(&leaves);
    Ok(sigma_act(&cfg, &ColoredPerm::full_only(sigma))?)
}

/// `E_d → E`: a configuration as a one-level vertex over its inputs.
pub fn embed_config(x: &Configuration) -> Result<ETree, TreeError> {
    let n = x.n_full();
    let t = ETree::Node { seq: LevelSequence::single(x.clone()), children: (0..n).map(ETree::Leaf).collect() };
    normalize_e(&t)
}

/// Largest stratum in use: `lengths[j]` of a vertex at base `b` sits at
/// stratum `b + j + 1`, and the edges below that vertex at `b + k + 1`.
/// Leaves do not count.
pub fn max_stratum(t: &ETree) -> usize {
    fn walk(t: &ETree, base: usize) -> usize {
        match t {
            ETree::Leaf(_) => 0,
            ETree::Node { seq, children } => {
                let below = base + seq.lengths.len() + 1;
                let own = if seq.lengths.is_empty() { 0 } else { base + seq.lengths.len() };
                let edges = if children.iter().any(|c| matches!(c, ETree::Node { .. })) { below } else { 0 };
                children.iter().map(|c| walk(c, below)).fold(own.max(edges), usize::max)
            }
        }
    }
    walk(t, 0)
}

/// Merges a childless-below, single-level child into the bottom level of its
/// parent. Returns `None` when the child is not of that shape.
fn absorb_child(seq: &LevelSequence, children: &[ETree], q: usize) -> Option<(LevelSequence, Vec<ETree>)> {
    let ETree::Node { seq: cseq, children: grand } = &children[q] else {
        return None;
    };
    if cseq.labels.len() != 1 || grand.iter().any(|g| matches!(g, ETree::Node { .. })) {
        return None;
    }
    let m = cseq.source;
    let cpart = &cseq.labels[0].parts[0];
    let rename = |o: usize| if o < q { o } else { o + m - 1 };
    let parts = (0..seq.source)
        .map(|o| {
            if o == q {
                Part { inputs: cpart.inputs.iter().map(|&x| q + x).collect(), elem: cpart.elem.clone() }
            } else {
                Part { inputs: vec![rename(o)], elem: identity_config(seq.d, Color::Full) }
            }
        })
        .collect();
    let block = MultiHom { parts };
    let mut out = seq.clone();
    let last = out.labels.len() - 1;
    out.labels[last] = compose_levels(&seq.labels[last], &block).ok()?;
    out.source = seq.source + m - 1;
    let mut kids = children[..q].to_vec();
    kids.extend(grand.iter().cloned());
    kids.extend(children[q + 1..].iter().cloned());
    Some((out, kids))
}

/// One stage of the contraction `E ≃ E_d`: the lengths at stratum `depth`
/// are scaled by `1 − s`. At `s = 1` they vanish, and edges at that stratum
/// are contracted when the vertex below has one level and only leaves
/// beneath it. Collapsing from the deepest stratum up to 1 reaches the
/// embedding of [`collapse_lengths`].
pub fn staged_collapse(t: &ETree, depth: usize, s: &Scalar) -> Result<ETree, TreeError> {
    use num_traits::{One, Zero};
    if s.is_zero() {
        return Ok(t.clone());
    }
    if *s < Scalar::zero() || *s > Scalar::one() {
        return Err(TreeError::Malformed("the stage parameter lies in [0, 1]".into()));
    }
    let factor = Scalar::one() - s;
    fn walk(t: &ETree, base: usize, depth: usize, factor: &Scalar) -> Result<ETree, TreeError> {
        let ETree::Node { seq, children } = t else {
            return Ok(t.clone());
        };
        let below = base + seq.lengths.len() + 1;
        let mut seq = seq.clone();
        for (j, len) in seq.lengths.iter_mut().enumerate() {
            if base + j + 1 == depth {
                *len = len.scale(factor);
            }
        }
        let mut children =
            children.iter().map(|c| walk(c, below, depth, factor)).collect::<Result<Vec<_>, _>>()?;
        if below == depth && factor.is_zero() {
            for q in (0..children.len()).rev() {
                if let Some((s2, k2)) = absorb_child(&seq, &children, q) {
                    seq = s2;
                    children = k2;
                }
            }
        }
        Ok(ETree::Node { seq, children })
    }
    normalize_e(&walk(t, 0, depth, &factor)?)
}

/// Random normalized point of `E` with `levels ≤ 3` per vertex and nesting
/// at most `depth`.
pub fn random_etree<R: Rng + ?Sized>(rng: &mut R, d: usize, depth: usize) -> ETree {
    fn build<R: Rng + ?Sized>(rng: &mut R, d: usize, depth: usize) -> ETree {
        let levels = rng.gen_range(1..=3);
        let seq = random_level_sequence(rng, d, 1, levels);
        let children = (0..seq.source)
            .map(|_| if depth > 0 && rng.gen_bool(0.35) { build(rng, d, depth - 1) } else { ETree::Leaf(0) })
            .collect();
        ETree::Node { seq, children }
    }
    let raw = build(rng, d, depth);
    let sigma = Perm::random(raw.arity(), rng);
    let mut next = 0;
    let numbered = number(&raw, &mut next, &sigma);
    normalize_e(&numbered).expect("generated trees are well formed")
}

fn number(t: &ETree, next: &mut usize, sigma: &Perm) -> ETree {
    match t {
        ETree::Leaf(_) => {
            let l = sigma.apply(*next);
            *next += 1;
            ETree::Leaf(l)
        }
        ETree::Node { seq, children } => {
            ETree::Node { seq: seq.clone(), children: children.iter().map(|c| number(c, next, sigma)).collect() }
        }
    }
}

/// The operad `E` in dimension `d`, one-colored (inputs are full).
#[derive(Clone, Copy, Debug)]
pub struct EOperad {
    pub d: usize,
}

impl Operad for EOperad {
    type Elem = ETree;

    fn input_colors(&self, x: &ETree) -> Vec<Color> {
        vec![Color::Full; x.arity()]
    }

    fn output_color(&self, _: &ETree) -> Color {
        Color::Full
    }

    fn identity(&self, _: Color) -> ETree {
        ETree::unit()
    }

    fn compose(&self, outer: &ETree, inputs: &[ETree]) -> Result<ETree, OperadError> {
        e_compose(outer, inputs).map_err(TreeError::into_operad)
    }

    fn act(&self, x: &ETree, perm: &ColoredPerm) -> Result<ETree, OperadError> {
        if !perm.half.is_empty() {
            return Err(OperadError::BadPermutation);
        }
        e_act(x, &perm.full).map_err(TreeError::into_operad)
    }

    fn same(&self, a: &ETree, b: &ETree) -> bool {
        a == b
    }
}
