use std::cell::Cell;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::end::{end_act, end_compose, EndTree};
use super::word::Token;
use super::SchError;
use crate::geometry::{
    compose, identify_half_lower, identity_config, sample::random_config, sigma_act, unidentify_half_lower, Color,
    Configuration, ExtScalar,
};
use crate::operad_core::{Operad, OperadError};
use crate::perm::ColoredPerm;
use crate::trees::{
    graft, leaf_counts, normalize_w, random_length, relabel_leaves, Child, DecoratedTree, Node, TreeError,
};

/// A vertex of an element of `SC^{h∞}`: a swiss-cheese configuration with a
/// half target, or an End element decorating a full input.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchLabel {
    Disc(Configuration),
    End(EndTree),
}

/// The two kinds of vertices as one operad, so that the W-tree normal form
/// applies: configurations compose along half slots, End elements along
/// full slots, and nothing composes across.
#[derive(Clone, Copy, Debug)]
pub struct SchOp {
    pub d: usize,
}

impl Operad for SchOp {
    type Elem = SchLabel;

    fn input_colors(&self, x: &SchLabel) -> Vec<Color> {
        match x {
            SchLabel::Disc(c) => c.input_colors(),
            SchLabel::End(f) => vec![Color::Full; f.arity()],
        }
    }

    fn output_color(&self, x: &SchLabel) -> Color {
        match x {
            SchLabel::Disc(c) => c.target,
            SchLabel::End(_) => Color::Full,
        }
    }

    fn identity(&self, color: Color) -> SchLabel {
        match color {
            Color::Half => SchLabel::Disc(identity_config(self.d, Color::Half)),
            Color::Full => SchLabel::End(EndTree::identity()),
        }
    }

    fn compose(&self, outer: &SchLabel, inputs: &[SchLabel]) -> Result<SchLabel, OperadError> {
        match outer {
            SchLabel::Disc(c) => {
                let colors = c.input_colors();
                if colors.len() != inputs.len() {
                    return Err(OperadError::ArityMismatch { expected: colors.len(), got: inputs.len() });
                }
                let fillers = colors
                    .iter()
                    .zip(inputs)
                    .enumerate()
                    .map(|(slot, (color, x))| match (color, x) {
                        (Color::Half, SchLabel::Disc(y)) => Ok(y.clone()),
                        (Color::Full, SchLabel::End(f)) if f.is_identity() => Ok(identity_config(self.d, Color::Full)),
                        _ => Err(OperadError::ColorMismatch { slot }),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(SchLabel::Disc(compose(c, &fillers)?))
            }
            SchLabel::End(f) => {
                let gs = inputs
                    .iter()
                    .enumerate()
                    .map(|(slot, x)| match x {
                        SchLabel::End(g) => Ok(g.clone()),
                        SchLabel::Disc(_) => Err(OperadError::ColorMismatch { slot }),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                end_compose(f, &gs).map(SchLabel::End).map_err(|e| OperadError::Invalid(e.to_string()))
            }
        }
    }

    fn act(&self, x: &SchLabel, perm: &ColoredPerm) -> Result<SchLabel, OperadError> {
        match x {
            SchLabel::Disc(c) => Ok(SchLabel::Disc(sigma_act(c, perm)?)),
            SchLabel::End(f) => {
                if !perm.half.is_empty() {
                    return Err(OperadError::BadPermutation);
                }
                end_act(f, &perm.full).map(SchLabel::End).map_err(|_| OperadError::BadPermutation)
            }
        }
    }

    fn same(&self, a: &SchLabel, b: &SchLabel) -> bool {
        a == b
    }
}

/// A point of `SC^{h∞}(n, m)`.
///
/// The tree is a W-tree over `SC^h_d` whose internal edges are all half
/// colored; a full input of a configuration is either an input of the element
/// or decorated by an End element (the symbolic action of
/// `End(SC^{h∞})`). Every maximal subtree joined by finite edges holds at
/// most one full slot, since such subtrees come from single generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SChInfElement {
    pub d: usize,
    pub tree: DecoratedTree<SchLabel>,
}

/// A generator of degree 0 or 1: a W-tree over `SC^h_d` with at most one
/// full input.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SCh1Element {
    pub d: usize,
    pub tree: DecoratedTree<Configuration>,
}

fn map_labels<A: Clone, B>(c: &Child<A>, f: &dyn Fn(&A) -> Result<B, SchError>) -> Result<Child<B>, SchError> {
    Ok(match c {
        Child::Leaf(l) => Child::Leaf(*l),
        Child::Edge { len, node } => Child::edge(
            len.clone(),
            Node {
                label: f(&node.label)?,
                children: node.children.iter().map(|ch| map_labels(ch, f)).collect::<Result<_, _>>()?,
            },
        ),
    })
}

impl SCh1Element {
    pub fn new(d: usize, tree: DecoratedTree<Configuration>) -> Result<Self, SchError> {
        if tree.color != Color::Half {
            return Err(SchError::Shape("generators have a half output".into()));
        }
        let mut bad = false;
        visit_nodes(&tree.root, &mut |n: &Node<Configuration>| {
            bad |= n.label.target != Color::Half || n.label.d != d;
        });
        if bad {
            return Err(SchError::Shape("every vertex is a half-target configuration".into()));
        }
        let op = crate::operad_core::DiscOperad { d };
        let (n, _) = leaf_counts(&op, &tree);
        if n > 1 {
            return Err(SchError::Degree(n));
        }
        Ok(SCh1Element { d, tree: normalize_w(&op, &tree)? })
    }

    pub fn degree(&self) -> usize {
        leaf_counts(&crate::operad_core::DiscOperad { d: self.d }, &self.tree).0
    }

    /// A degree-0 generator from a W-tree over `E_{d−1}`.
    pub fn from_lower(d: usize, tree: &DecoratedTree<Configuration>) -> Result<Self, SchError> {
        let root = map_labels(&tree.root, &|c: &Configuration| Ok(unidentify_half_lower(c)?))?;
        SCh1Element::new(d, DecoratedTree { color: Color::Half, root })
    }

    /// The W-tree over `E_{d−1}` of a degree-0 generator.
    pub fn to_lower(&self) -> Result<DecoratedTree<Configuration>, SchError> {
        if self.degree() != 0 {
            return Err(SchError::Degree(self.degree()));
        }
        let root = map_labels(&self.tree.root, &|c: &Configuration| Ok(identify_half_lower(c)?))?;
        Ok(DecoratedTree { color: Color::Full, root })
    }
}

fn visit_nodes<E>(c: &Child<E>, f: &mut dyn FnMut(&Node<E>)) {
    if let Child::Edge { node, .. } = c {
        f(node);
        for ch in &node.children {
            visit_nodes(ch, f);
        }
    }
}

/// A generator as a one-generator element of `SC^{h∞}`.
pub fn embed_leq1(x: &SCh1Element) -> SChInfElement {
    let root = map_labels(&x.tree.root, &|c: &Configuration| Ok(SchLabel::Disc(c.clone())))
        .expect("relabelling cannot fail");
    SChInfElement { d: x.d, tree: DecoratedTree { color: Color::Half, root } }
}

/// The inclusion `SC^{h∞} → WSC^h`; defined when no full input is decorated.
pub fn iota(x: &SChInfElement) -> Result<DecoratedTree<Configuration>, SchError> {
    let root = map_labels(&x.tree.root, &|l: &SchLabel| match l {
        SchLabel::Disc(c) => Ok(c.clone()),
        SchLabel::End(_) => Err(SchError::Symbolic),
    })?;
    Ok(DecoratedTree { color: Color::Half, root })
}

impl SChInfElement {
    pub fn identity(d: usize) -> Self {
        SChInfElement { d, tree: DecoratedTree::unit(Color::Half) }
    }

    /// Full and half inputs.
    pub fn arity(&self) -> (usize, usize) {
        leaf_counts(&SchOp { d: self.d }, &self.tree)
    }

    /// Number of full inputs: the degree in `Coll`.
    pub fn degree(&self) -> usize {
        self.arity().0
    }

    /// Number of full slots of configurations, decorated or not.
    pub fn generator_degree(&self) -> usize {
        let mut n = 0;
        visit_nodes(&self.tree.root, &mut |node: &Node<SchLabel>| {
            if let SchLabel::Disc(c) = &node.label {
                n += c.n_full();
            }
        });
        n
    }

    pub fn is_decorated(&self) -> bool {
        let mut found = false;
        visit_nodes(&self.tree.root, &mut |node: &Node<SchLabel>| {
            found |= matches!(node.label, SchLabel::End(_));
        });
        found
    }

    /// Checks the shape invariants: configurations have half targets, End
    /// vertices hang only from full slots, and every finite-edge component
    /// has at most one full slot.
    pub fn check(&self) -> Result<(), SchError> {
        if self.tree.color != Color::Half {
            return Err(SchError::Shape("the output is half colored".into()));
        }
        fn walk(c: &Child<SchLabel>, d: usize, component: &mut usize, parent_disc: bool) -> Result<(), SchError> {
            let Child::Edge { len, node } = c else { return Ok(()) };
            match &node.label {
                SchLabel::Disc(cfg) => {
                    if cfg.target != Color::Half || cfg.d != d {
                        return Err(SchError::Shape("configuration vertices have half targets".into()));
                    }
                    *component += cfg.n_full();
                    if *component > 1 {
                        return Err(SchError::Degree(*component));
                    }
                    for ch in &node.children {
                        match ch {
                            Child::Edge { len, .. } if len.is_inf() => {
                                let mut fresh = 0;
                                walk(ch, d, &mut fresh, true)?;
                            }
                            _ => walk(ch, d, component, true)?,
                        }
                    }
                }
                SchLabel::End(f) => {
                    if !parent_disc || !len.is_inf() {
                        return Err(SchError::Shape("End vertices decorate full slots".into()));
                    }
                    f.check()?;
                    if node.children.iter().any(|c| matches!(c, Child::Edge { .. })) {
                        return Err(SchError::Shape("End vertices are followed by inputs".into()));
                    }
                }
            }
            Ok(())
        }
        let mut root = 0;
        walk(&self.tree.root, self.d, &mut root, true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.tree.to_json();
        if let serde_json::Value::Object(m) = &mut v {
            m.insert("degree".into(), self.degree().into());
            m.insert("d".into(), self.d.into());
        }
        v
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, SchError> {
        let d = v.get("d").and_then(serde_json::Value::as_u64).ok_or(SchError::Shape("missing d".into()))? as usize;
        let tree = DecoratedTree::from_json(v)?;
        let x = SChInfElement { d, tree };
        x.check()?;
        Ok(x)
    }
}

/// Edges into End vertices: `∞` below a configuration, `0` below another End
/// vertex (so the two End elements compose).
fn fix_lengths(c: &mut Child<SchLabel>) {
    if let Child::Edge { node, .. } = c {
        let parent_end = matches!(node.label, SchLabel::End(_));
        for ch in &mut node.children {
            if let Child::Edge { len, node: sub } = ch {
                if matches!(sub.label, SchLabel::End(_)) {
                    *len = if parent_end { ExtScalar::zero() } else { ExtScalar::Inf };
                }
            }
            fix_lengths(ch);
        }
    }
}

/// The configuration of an End root word `ι·act(α)·p` with `α` of arity at
/// most one; such a word is evaluated, since `ι(y)·α = ι(y·α)` lies in the
/// image of `ι` and `pι = id`.
fn evaluable(f: &EndTree) -> Option<(Configuration, Option<EndTree>)> {
    let EndTree::Node { word, children } = f else { return None };
    let [Token::Iota, Token::Act { level }, Token::P] = word.tokens.as_slice() else { return None };
    if level.parts.len() != 1 || level.parts[0].inputs.len() > 1 {
        return None;
    }
    Some((level.parts[0].elem.clone(), children.first().cloned()))
}

/// Evaluates one decoration whose root word is determined; returns whether
/// anything changed.
fn absorb_once(d: usize, c: &mut Child<SchLabel>) -> bool {
    let Child::Edge { node, .. } = c else { return false };
    if let SchLabel::Disc(cfg) = &node.label {
        let colors = cfg.input_colors();
        for slot in 0..node.children.len() {
            if colors[slot] != Color::Full {
                continue;
            }
            let Child::Edge { node: dec, .. } = &node.children[slot] else { continue };
            let SchLabel::End(f) = &dec.label else { continue };
            let Some((alpha, rest)) = evaluable(f) else { continue };
            let fillers: Vec<Configuration> = colors
                .iter()
                .enumerate()
                .map(|(s, col)| if s == slot { alpha.clone() } else { identity_config(d, *col) })
                .collect();
            let new_cfg = compose(cfg, &fillers).expect("a full configuration fills a full slot");
            let replacement = match rest {
                None => None,
                Some(EndTree::Pos(_)) => Some(dec.children[0].clone()),
                Some(g) => Some(Child::edge(
                    ExtScalar::Inf,
                    Node { label: SchLabel::End(g), children: dec.children.clone() },
                )),
            };
            node.label = SchLabel::Disc(new_cfg);
            match replacement {
                Some(r) => node.children[slot] = r,
                None => {
                    node.children.remove(slot);
                }
            }
            return true;
        }
    }
    node.children.iter_mut().any(|ch| absorb_once(d, ch))
}

/// Normal form: W-tree rewriting, End decorations composed, and determined
/// decorations evaluated.
pub fn normalize_sch(x: &SChInfElement) -> Result<SChInfElement, SchError> {
    let op = SchOp { d: x.d };
    let mut tree = x.tree.clone();
    loop {
        fix_lengths(&mut tree.root);
        tree = normalize_w(&op, &tree)?;
        if !absorb_once(x.d, &mut tree.root) {
            return Ok(SChInfElement { d: x.d, tree });
        }
    }
}

/// Composition along half inputs: `inputs[j]` goes into half input `j`.
/// New edges have length `∞`, so no two generators merge.
pub fn compose_schinf(outer: &SChInfElement, inputs: &[SChInfElement]) -> Result<SChInfElement, SchError> {
    let op = SchOp { d: outer.d };
    let (n, m) = outer.arity();
    if inputs.len() != m {
        return Err(SchError::Arity { expected: m, got: inputs.len() });
    }
    let mut all: Vec<DecoratedTree<SchLabel>> = (0..n).map(|_| DecoratedTree::unit(Color::Full)).collect();
    all.extend(inputs.iter().map(|y| y.tree.clone()));
    let tree = graft(&op, &outer.tree, &all)?;
    normalize_sch(&SChInfElement { d: outer.d, tree })
}

/// `x·(g₀, …, g_{n−1})`: End element `gᵢ` acts on full input `i`.
pub fn act_end(x: &SChInfElement, gs: &[EndTree]) -> Result<SChInfElement, SchError> {
    let op = SchOp { d: x.d };
    let (n, m) = x.arity();
    if gs.len() != n {
        return Err(SchError::Arity { expected: n, got: gs.len() });
    }
    let mut all: Vec<DecoratedTree<SchLabel>> =
        gs.iter().map(|g| DecoratedTree::corolla(&op, SchLabel::End(g.clone()))).collect();
    all.extend((0..m).map(|_| DecoratedTree::unit(Color::Half)));
    let tree = graft(&op, &x.tree, &all)?;
    normalize_sch(&SChInfElement { d: x.d, tree })
}

/// Symmetric group action on both kinds of inputs.
pub fn act_schinf(x: &SChInfElement, perm: &ColoredPerm) -> Result<SChInfElement, SchError> {
    let op = SchOp { d: x.d };
    let (a, b) = x.arity();
    if perm.full.len() != a || perm.half.len() != b || !perm.full.is_valid() || !perm.half.is_valid() {
        return Err(SchError::Tree(TreeError::BadPermutation));
    }
    let inv = perm.inverse();
    let tree = relabel_leaves(&op, &x.tree, &|c, l| match c {
        Color::Full => inv.full.apply(l),
        Color::Half => inv.half.apply(l),
    });
    normalize_sch(&SChInfElement { d: x.d, tree })
}

/// Random generator of the requested degree (0 or 1) with up to `depth`
/// levels of vertices joined by random lengths.
pub fn random_generator<R: Rng + ?Sized>(rng: &mut R, d: usize, degree: usize, depth: usize) -> SCh1Element {
    assert!(degree <= 1, "generators have degree 0 or 1");
    let max_half = if d == 1 { 1 } else { 2 };
    loop {
        let placed = Cell::new(0usize);
        let root = random_node(rng, d, depth, max_half, degree, &placed);
        if placed.get() == degree {
            let mut t = DecoratedTree::from_node(Color::Half, root);
            crate::trees::number_leaves(&crate::operad_core::DiscOperad { d }, &mut t);
            return SCh1Element::new(d, t).expect("generated generator is valid");
        }
    }
}

fn random_node<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    depth: usize,
    max_half: usize,
    degree: usize,
    placed: &Cell<usize>,
) -> Node<Configuration> {
    let full = usize::from(placed.get() < degree && rng.gen_bool(0.5));
    placed.set(placed.get() + full);
    let m = rng.gen_range(0..=max_half);
    let label = random_config(rng, d, Color::Half, full, m);
    let children = label
        .input_colors()
        .iter()
        .map(|c| {
            if *c == Color::Half && depth > 0 && rng.gen_bool(0.4) {
                let mut len = random_length(rng);
                if len.is_inf() {
                    len = ExtScalar::zero();
                }
                Child::edge(len, random_node(rng, d, depth - 1, max_half, degree, placed))
            } else {
                Child::Leaf(0)
            }
        })
        .collect();
    Node { label, children }
}

/// Random element built by composing `generators` random generators along
/// half inputs.
pub fn random_schinf<R: Rng + ?Sized>(rng: &mut R, d: usize, generators: usize) -> SChInfElement {
    let first_degree = usize::from(rng.gen_bool(0.6));
    let mut x = embed_leq1(&random_generator(rng, d, first_degree, 1));
    for _ in 1..generators {
        let (_, m) = x.arity();
        if m == 0 {
            break;
        }
        let deg = usize::from(rng.gen_bool(0.5));
        let g = embed_leq1(&random_generator(rng, d, deg, 1));
        let j = rng.gen_range(0..m);
        let inputs: Vec<SChInfElement> =
            (0..m).map(|k| if k == j { g.clone() } else { SChInfElement::identity(d) }).collect();
        x = compose_schinf(&x, &inputs).expect("arity matches");
    }
    let (a, b) = x.arity();
    let sigma = ColoredPerm::random(a, b, rng);
    act_schinf(&x, &sigma).expect("permutation matches")
}
