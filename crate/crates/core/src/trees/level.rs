use rand::Rng;
use serde::{Deserialize, Serialize};

use super::wtree::random_length;
use super::TreeError;
use crate::geometry::{compose, identity_config, sample::random_config, sigma_act, Color, Configuration, ExtScalar, LittleDisc};
use crate::operad_core::{MultiHom, Part};
use crate::perm::{ColoredPerm, Perm};

/// A multi-output element of `E_d`: one configuration per output, with the
/// global labels of its inputs.
pub type Level = MultiHom<Configuration>;

/// A morphism `source → target` of `LE_d`: levels `α₁, …, α_{k+1}` separated
/// by lengths `t₁, …, t_k`.
///
/// `labels[0]` is `α₁`, whose outputs are the `target` objects; the last
/// level's inputs are the `source` objects; `lengths[i]` sits between
/// `labels[i]` and `labels[i + 1]`. No levels at all is the identity of
/// `source = target`. The boundary lengths `t₀` and `t_{k+1}` count as `∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LevelSequence {
    pub d: usize,
    pub source: usize,
    pub target: usize,
    pub labels: Vec<Level>,
    pub lengths: Vec<ExtScalar>,
}

/// Number of inputs and outputs of a level.
pub fn level_arity(level: &Level) -> (usize, usize) {
    (level.n_inputs(), level.n_outputs())
}

/// The identity level on `n` objects.
pub fn identity_level(d: usize, n: usize) -> Level {
    MultiHom { parts: (0..n).map(|j| Part { inputs: vec![j], elem: identity_config(d, Color::Full) }).collect() }
}

/// True if every output has a single input through the identity disc; such a
/// level only renames objects.
pub fn is_relabeling(level: &Level) -> bool {
    level.parts.iter().all(|p| p.inputs.len() == 1 && p.elem.is_identity())
}

fn check_level(d: usize, level: &Level) -> Result<(), TreeError> {
    let n = level.n_inputs();
    let mut seen = vec![false; n];
    for p in &level.parts {
        if p.elem.d != d || p.elem.target != Color::Full || p.elem.n_half() > 0 {
            return Err(TreeError::Malformed("levels hold full configurations of the right dimension".into()));
        }
        if p.elem.n_full() != p.inputs.len() {
            return Err(TreeError::ArityMismatch { expected: p.elem.n_full(), got: p.inputs.len() });
        }
        for &i in &p.inputs {
            if i >= n || seen[i] {
                return Err(TreeError::Malformed(format!("input {i} used twice or out of range")));
            }
            seen[i] = true;
        }
    }
    Ok(())
}

/// `upper ∘ lower`: output `j` of the result is output `j` of `upper` with
/// each disc filled by the `lower` part producing that object.
pub fn compose_levels(upper: &Level, lower: &Level) -> Result<Level, TreeError> {
    if upper.n_inputs() != lower.n_outputs() {
        return Err(TreeError::ArityMismatch { expected: upper.n_inputs(), got: lower.n_outputs() });
    }
    let parts = upper
        .parts
        .iter()
        .map(|p| {
            let fillers: Vec<Configuration> = p.inputs.iter().map(|&m| lower.parts[m].elem.clone()).collect();
            let inputs = p.inputs.iter().flat_map(|&m| lower.parts[m].inputs.iter().copied()).collect();
            Ok(Part { inputs, elem: compose(&p.elem, &fillers)? })
        })
        .collect::<Result<Vec<_>, TreeError>>()?;
    Ok(MultiHom { parts })
}

impl LevelSequence {
    pub fn identity(d: usize, n: usize) -> Self {
        LevelSequence { d, source: n, target: n, labels: Vec::new(), lengths: Vec::new() }
    }

    /// The one-level sequence `(x)` in `LE_d(n, 1)`.
    pub fn single(x: Configuration) -> Self {
        let n = x.n_full();
        LevelSequence {
            d: x.d,
            source: n,
            target: 1,
            labels: vec![MultiHom { parts: vec![Part { inputs: (0..n).collect(), elem: x }] }],
            lengths: Vec::new(),
        }
    }

    /// Builds and checks a sequence from its levels and lengths.
    pub fn new(d: usize, labels: Vec<Level>, lengths: Vec<ExtScalar>) -> Result<Self, TreeError> {
        if labels.is_empty() {
            return Err(TreeError::Malformed("use LevelSequence::identity for the empty sequence".into()));
        }
        let s = LevelSequence {
            d,
            source: labels.last().unwrap().n_inputs(),
            target: labels[0].n_outputs(),
            labels,
            lengths,
        };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<(), TreeError> {
        if self.labels.is_empty() {
            return if self.source == self.target && self.lengths.is_empty() {
                Ok(())
            } else {
                Err(TreeError::Malformed("empty sequence must be an identity".into()))
            };
        }
        if self.lengths.len() + 1 != self.labels.len() {
            return Err(TreeError::Malformed("need one length between consecutive levels".into()));
        }
        for l in &self.labels {
            check_level(self.d, l)?;
        }
        for w in self.labels.windows(2) {
            if w[0].n_inputs() != w[1].n_outputs() {
                return Err(TreeError::ArityMismatch { expected: w[0].n_inputs(), got: w[1].n_outputs() });
            }
        }
        if self.labels[0].n_outputs() != self.target || self.labels.last().unwrap().n_inputs() != self.source {
            return Err(TreeError::Malformed("boundary arities disagree with the levels".into()));
        }
        Ok(())
    }

    /// Number of internal lengths (`k`); `None` for the identity.
    pub fn k(&self) -> Option<usize> {
        self.labels.len().checked_sub(1)
    }

    /// Length above level `i`, counting the boundary as `∞`.
    fn above(&self, i: usize) -> ExtScalar {
        if i == 0 {
            ExtScalar::Inf
        } else {
            self.lengths[i - 1].clone()
        }
    }

    fn below(&self, i: usize) -> ExtScalar {
        self.lengths.get(i).cloned().unwrap_or(ExtScalar::Inf)
    }
}

/// Replaces `(…, αᵢ, 0, αᵢ₊₁, …)` by `(…, αᵢ∘αᵢ₊₁, …)` where `lengths[i] = 0`.
pub fn contract_at(s: &LevelSequence, i: usize) -> Result<LevelSequence, TreeError> {
    if !s.lengths.get(i).is_some_and(ExtScalar::is_zero) {
        return Err(TreeError::Malformed(format!("length {i} is not 0")));
    }
    let mut out = s.clone();
    let merged = compose_levels(&s.labels[i], &s.labels[i + 1])?;
    out.labels.splice(i..=i + 1, [merged]);
    out.lengths.remove(i);
    Ok(out)
}

/// Deletes a renaming level flanked by `∞` on both sides, folding the renaming
/// into a neighbouring level. A lone level can only be deleted when it is the
/// identity itself.
pub fn delete_identity_at(s: &LevelSequence, i: usize) -> Result<LevelSequence, TreeError> {
    let level = &s.labels[i];
    if !is_relabeling(level) || !s.above(i).is_inf() || !s.below(i).is_inf() {
        return Err(TreeError::Malformed(format!("level {i} cannot be deleted")));
    }
    let mut out = s.clone();
    if s.labels.len() == 1 {
        if level.parts.iter().enumerate().any(|(j, p)| p.inputs != [j]) {
            return Err(TreeError::Malformed("a lone renaming level is not the identity".into()));
        }
        out.labels.clear();
        return Ok(out);
    }
    if i + 1 < s.labels.len() {
        out.labels[i + 1] = compose_levels(level, &s.labels[i + 1])?;
        out.labels.remove(i);
        out.lengths.remove(i);
    } else {
        out.labels[i - 1] = compose_levels(&s.labels[i - 1], level)?;
        out.labels.remove(i);
        out.lengths.remove(i - 1);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
enum LeRedex {
    Contract(usize),
    Delete(usize),
}

fn le_redexes(s: &LevelSequence) -> Vec<LeRedex> {
    let mut out = Vec::new();
    for (i, t) in s.lengths.iter().enumerate() {
        if t.is_zero() {
            out.push(LeRedex::Contract(i));
        }
    }
    for i in 0..s.labels.len() {
        if is_relabeling(&s.labels[i]) && s.above(i).is_inf() && s.below(i).is_inf() {
            let lone_non_identity =
                s.labels.len() == 1 && s.labels[i].parts.iter().enumerate().any(|(j, p)| p.inputs != [j]);
            if !lone_non_identity {
                out.push(LeRedex::Delete(i));
            }
        }
    }
    out
}

fn rewrite_le(
    s: &LevelSequence,
    free_source: bool,
    pick: &mut dyn FnMut(usize) -> usize,
) -> Result<(LevelSequence, Perm), TreeError> {
    s.check()?;
    let mut cur = s.clone();
    let mut renaming = Perm::identity(s.source);
    loop {
        let redexes = le_redexes(&cur);
        if redexes.is_empty() {
            let (next, p) = canonical_le(&cur, free_source);
            renaming = p.compose(&renaming);
            if le_redexes(&next).is_empty() {
                return Ok((next, renaming));
            }
            cur = next;
            continue;
        }
        cur = match redexes[pick(redexes.len())] {
            LeRedex::Contract(i) => contract_at(&cur, i)?,
            LeRedex::Delete(i) => delete_identity_at(&cur, i)?,
        };
    }
}

/// Normal form under the two relations of `LE_d`: a length 0 is removed by
/// composing the levels around it, and an identity level with `∞` on both
/// sides is deleted. Intermediate objects are then renamed canonically.
pub fn normalize_le(s: &LevelSequence) -> Result<LevelSequence, TreeError> {
    Ok(rewrite_le(s, false, &mut |_| 0)?.0)
}

/// [`normalize_le`] with the redex chosen at random at each step.
pub fn normalize_le_random<R: Rng + ?Sized>(s: &LevelSequence, rng: &mut R) -> Result<LevelSequence, TreeError> {
    Ok(rewrite_le(s, false, &mut |n| rng.gen_range(0..n))?.0)
}

/// Normal form where the source objects may be renamed as well; returns the
/// renaming `π` (old source label `i` becomes `π(i)`).
pub(crate) fn normalize_le_free_source(s: &LevelSequence) -> Result<(LevelSequence, Perm), TreeError> {
    rewrite_le(s, true, &mut |_| 0)
}

/// Sorts the inputs of a part increasingly, acting on its configuration to match.
pub(crate) fn sort_part(p: &Part<Configuration>) -> Part<Configuration> {
    let sigma = Perm::sorting(&p.inputs);
    Part {
        inputs: sigma.permute(&p.inputs),
        elem: sigma_act(&p.elem, &ColoredPerm::full_only(sigma)).expect("part arity matches its inputs"),
    }
}

/// Renames the objects between levels (and the source objects when
/// `free_source`) top-down: an object is ranked by the output it feeds and
/// then by the disc it fills there. Returns the source renaming.
fn canonical_le(s: &LevelSequence, free_source: bool) -> (LevelSequence, Perm) {
    let mut out = s.clone();
    let mut source_renaming = Perm::identity(s.source);
    let depth = out.labels.len();
    for i in 1..=depth {
        let is_source = i == depth;
        if is_source && !free_source {
            break;
        }
        let upper = &out.labels[i - 1];
        let n = upper.n_inputs();
        let mut keys: Vec<(usize, LittleDisc, usize)> = Vec::with_capacity(n);
        for (j, p) in upper.parts.iter().enumerate() {
            for (pos, &m) in p.inputs.iter().enumerate() {
                keys.push((j, p.elem.discs[pos].clone(), m));
            }
        }
        keys.sort();
        // rank[m] = new name of object m
        let mut rank = vec![0usize; n];
        for (r, (_, _, m)) in keys.iter().enumerate() {
            rank[*m] = r;
        }
        for p in &mut out.labels[i - 1].parts {
            for m in &mut p.inputs {
                *m = rank[*m];
            }
        }
        if is_source {
            source_renaming = Perm(rank);
        } else {
            let lower = &out.labels[i];
            let mut parts = lower.parts.clone();
            for (m, p) in lower.parts.iter().enumerate() {
                parts[rank[m]] = p.clone();
            }
            out.labels[i].parts = parts;
        }
    }
    for level in &mut out.labels {
        for p in &mut level.parts {
            *p = sort_part(p);
        }
    }
    (out, source_renaming)
}

/// Composition in `LE_d`: `s1 ∈ LE_d(n″, n′)` after `s2 ∈ LE_d(n, n″)`, joined
/// by a new length `∞`, then normalized.
pub fn compose_le(s1: &LevelSequence, s2: &LevelSequence) -> Result<LevelSequence, TreeError> {
    if s1.source != s2.target || s1.d != s2.d {
        return Err(TreeError::ArityMismatch { expected: s1.source, got: s2.target });
    }
    let joined = if s1.labels.is_empty() {
        s2.clone()
    } else if s2.labels.is_empty() {
        s1.clone()
    } else {
        let mut labels = s1.labels.clone();
        labels.extend(s2.labels.iter().cloned());
        let mut lengths = s1.lengths.clone();
        lengths.push(ExtScalar::Inf);
        lengths.extend(s2.lengths.iter().cloned());
        LevelSequence { d: s1.d, source: s2.source, target: s1.target, labels, lengths }
    };
    normalize_le(&joined)
}

/// Sets every length to 0 and composes: the image in `E_d(source; target)`,
/// with each part's inputs listed increasingly.
pub fn collapse_le(s: &LevelSequence) -> Result<Level, TreeError> {
    let mut acc = identity_level(s.d, s.target);
    for l in &s.labels {
        acc = compose_levels(&acc, l)?;
    }
    Ok(MultiHom { parts: acc.parts.iter().map(sort_part).collect() })
}

/// Random level of the given output count; arities are 0, 1 or 2, kept small
/// once `budget` objects exist. With probability 1/6 the level only renames.
fn random_level<R: Rng + ?Sized>(rng: &mut R, d: usize, outputs: usize, budget: usize) -> Level {
    if outputs > 0 && rng.gen_bool(1.0 / 6.0) {
        let sigma = Perm::random(outputs, rng);
        return MultiHom {
            parts: (0..outputs)
                .map(|j| Part { inputs: vec![sigma.apply(j)], elem: identity_config(d, Color::Full) })
                .collect(),
        };
    }
    let max = if outputs >= budget { 1 } else { 2 };
    let arities: Vec<usize> =
        (0..outputs).map(|_| if rng.gen_bool(0.08) { 0 } else { rng.gen_range(1..=max) }).collect();
    let total: usize = arities.iter().sum();
    let names = Perm::random(total, rng);
    let mut next = 0;
    let parts = arities
        .iter()
        .map(|&a| {
            let inputs = names.0[next..next + a].to_vec();
            next += a;
            Part { inputs, elem: random_config(rng, d, Color::Full, a, 0) }
        })
        .collect();
    MultiHom { parts }
}

/// Random sequence with `target` outputs and `levels` levels (at least one).
pub fn random_level_sequence<R: Rng + ?Sized>(rng: &mut R, d: usize, target: usize, levels: usize) -> LevelSequence {
    let mut labels = Vec::new();
    let mut outputs = target;
    for _ in 0..levels.max(1) {
        let l = random_level(rng, d, outputs, 4);
        outputs = l.n_inputs();
        labels.push(l);
    }
    let lengths = (1..labels.len()).map(|_| random_length(rng)).collect();
    LevelSequence { d, source: outputs, target, labels, lengths }
}
