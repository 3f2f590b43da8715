use serde::{Deserialize, Serialize};

use super::word::{chain_from_le, word_components, word_normalize_free_end, FormalWord, Obj, Side, Token};
use super::SchError;
use crate::perm::Perm;
use crate::trees::ETree;

/// An element of `End(SC^{h∞})(n)`, kept as a tree of words.
///
/// A vertex word runs from `S_1` to `S_r` and its `r` children act on the
/// resulting full inputs; `Pos(i)` is input `i` of the whole element. In
/// normal form no word contains `p·ι` (those are split into vertices), no
/// vertex word is empty, and the end objects are named canonically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndTree {
    Pos(usize),
    Node { word: FormalWord, children: Vec<EndTree> },
}

impl EndTree {
    pub fn identity() -> Self {
        EndTree::Pos(0)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, EndTree::Pos(_))
    }

    pub fn arity(&self) -> usize {
        match self {
            EndTree::Pos(_) => 1,
            EndTree::Node { children, .. } => children.iter().map(EndTree::arity).sum(),
        }
    }

    /// The single word `w: S_1 → S_r` over the positions `0..r`.
    pub fn from_word(word: FormalWord) -> Result<Self, SchError> {
        if word.dom != Obj::s(1) || word.cod.side != Side::S {
            return Err(SchError::Word(format!("End words run from S1 to some S_r, not {} to {}", word.dom, word.cod)));
        }
        let r = word.cod.n;
        normalize_end(&EndTree::Node { word, children: (0..r).map(EndTree::Pos).collect() })
    }

    pub fn positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.visit(&mut |i| out.push(i));
        out
    }

    fn visit(&self, f: &mut dyn FnMut(usize)) {
        match self {
            EndTree::Pos(i) => f(*i),
            EndTree::Node { children, .. } => children.iter().for_each(|c| c.visit(f)),
        }
    }

    pub(crate) fn map_positions(&self, f: &dyn Fn(usize) -> usize) -> EndTree {
        match self {
            EndTree::Pos(i) => EndTree::Pos(f(*i)),
            EndTree::Node { word, children } => EndTree::Node {
                word: word.clone(),
                children: children.iter().map(|c| c.map_positions(f)).collect(),
            },
        }
    }

    pub fn check(&self) -> Result<(), SchError> {
        fn walk(t: &EndTree) -> Result<(), SchError> {
            if let EndTree::Node { word, children } = t {
                word.check()?;
                if word.dom != Obj::s(1) || word.cod != Obj::s(children.len()) {
                    return Err(SchError::Word("vertex word does not match its children".into()));
                }
                children.iter().try_for_each(walk)?;
            }
            Ok(())
        }
        walk(self)?;
        let mut p = self.positions();
        p.sort_unstable();
        if p.iter().enumerate().any(|(i, &x)| i != x) {
            return Err(SchError::Word("positions are not 0..n".into()));
        }
        Ok(())
    }
}

fn split_point(word: &FormalWord) -> Option<usize> {
    word.tokens.windows(2).position(|w| matches!(w, [Token::P, Token::Iota]))
}

fn normalize_vertex(word: &FormalWord, children: Vec<EndTree>) -> Result<EndTree, SchError> {
    let (word, pi) = word_normalize_free_end(word)?;
    let mut reordered = vec![EndTree::Pos(0); children.len()];
    for (i, c) in children.into_iter().enumerate() {
        reordered[pi.apply(i)] = c;
    }
    let children = reordered;
    if word.tokens.is_empty() {
        return Ok(children.into_iter().next().expect("an empty word has one child"));
    }
    let Some(cut) = split_point(&word) else {
        return Ok(EndTree::Node { word, children });
    };
    let top = FormalWord::new(word.dom, word.tokens[..=cut].to_vec())?;
    let bottom = FormalWord::new(top.cod, word.tokens[cut + 1..].to_vec())?;
    let below = word_components(&bottom)
        .into_iter()
        .map(|(w, reached)| normalize_vertex(&w, reached.iter().map(|&i| children[i].clone()).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    normalize_vertex(&top, below)
}

/// Normal form of an End element.
pub fn normalize_end(t: &EndTree) -> Result<EndTree, SchError> {
    match t {
        EndTree::Pos(i) => Ok(EndTree::Pos(*i)),
        EndTree::Node { word, children } => {
            if word.dom != Obj::s(1) || word.cod != Obj::s(children.len()) {
                return Err(SchError::Word("vertex word does not match its children".into()));
            }
            let kids = children.iter().map(normalize_end).collect::<Result<Vec<_>, _>>()?;
            normalize_vertex(word, kids)
        }
    }
}

/// `f ∘ (g₁, …, g_n)`: first `f`, then `gᵢ` on its `i`-th full input.
pub fn end_compose(f: &EndTree, gs: &[EndTree]) -> Result<EndTree, SchError> {
    let n = f.arity();
    if gs.len() != n {
        return Err(SchError::Arity { expected: n, got: gs.len() });
    }
    let mut offsets = Vec::with_capacity(n);
    let mut acc = 0;
    for g in gs {
        offsets.push(acc);
        acc += g.arity();
    }
    fn walk(t: &EndTree, gs: &[EndTree], offsets: &[usize]) -> EndTree {
        match t {
            EndTree::Pos(i) => {
                let off = offsets[*i];
                gs[*i].map_positions(&|x| x + off)
            }
            EndTree::Node { word, children } => EndTree::Node {
                word: word.clone(),
                children: children.iter().map(|c| walk(c, gs, offsets)).collect(),
            },
        }
    }
    normalize_end(&walk(f, gs, &offsets))
}

/// Right action on positions: input `i` of `f·σ` is input `σ(i)` of `f`.
pub fn end_act(f: &EndTree, sigma: &Perm) -> Result<EndTree, SchError> {
    if sigma.len() != f.arity() || !sigma.is_valid() {
        return Err(SchError::Arity { expected: f.arity(), got: sigma.len() });
    }
    let inv = sigma.inverse();
    Ok(f.map_positions(&|i| inv.apply(i)))
}

/// The operad map `E → End(SC^{h∞})` sending each vertex to its chain of
/// maps.
pub fn rho_e(x: &ETree) -> EndTree {
    fn walk(x: &ETree) -> EndTree {
        match x {
            ETree::Leaf(l) => EndTree::Pos(*l),
            ETree::Node { seq, children } => {
                EndTree::Node { word: chain_from_le(seq), children: children.iter().map(walk).collect() }
            }
        }
    }
    normalize_end(&walk(x)).expect("chains of level trees are typed")
}
