use rand::Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{for_each_tie_arrangement, TreeError};
use crate::geometry::{Color, ExtScalar};
use crate::operad_core::Operad;
use crate::perm::{ColoredPerm, Perm};

/// What sits in a slot of a vertex: an input leaf (labelled within its color)
/// or an internal edge of some length leading to another vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Child<E> {
    Leaf(usize),
    Edge { len: ExtScalar, node: Box<Node<E>> },
}

/// A vertex: an operad element and one child per input slot, in slot order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node<E> {
    pub label: E,
    pub children: Vec<Child<E>>,
}

/// A point of a W-operad: a rooted tree with operad-labelled vertices and
/// lengths in `[0, ∞]` on internal edges.
///
/// The root is stored as a [`Child`]; a bare leaf is the unit tree, and the
/// length on the root edge is always `∞` and carries no meaning.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedTree<E> {
    pub color: Color,
    pub root: Child<E>,
}

impl<E> Child<E> {
    pub fn edge(len: ExtScalar, node: Node<E>) -> Self {
        Child::Edge { len, node: Box::new(node) }
    }

    pub fn node(&self) -> Option<&Node<E>> {
        match self {
            Child::Leaf(_) => None,
            Child::Edge { node, .. } => Some(node),
        }
    }
}

impl<E> Node<E> {
    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().filter_map(Child::node).map(Node::vertex_count).sum::<usize>()
    }

    /// Longest chain of vertices from this one down to a leaf.
    pub fn height(&self) -> usize {
        1 + self.children.iter().filter_map(Child::node).map(Node::height).max().unwrap_or(0)
    }

    fn collect_lengths(&self, out: &mut Vec<ExtScalar>)
    where
        E: Clone,
    {
        for c in &self.children {
            if let Child::Edge { len, node } = c {
                out.push(len.clone());
                node.collect_lengths(out);
            }
        }
    }
}

impl<E: Clone> DecoratedTree<E> {
    pub fn unit(color: Color) -> Self {
        DecoratedTree { color, root: Child::Leaf(0) }
    }

    pub fn from_node(color: Color, node: Node<E>) -> Self {
        DecoratedTree { color, root: Child::edge(ExtScalar::Inf, node) }
    }

    /// A single vertex labelled `x` whose leaves are numbered in slot order.
    pub fn corolla<O: Operad<Elem = E>>(op: &O, x: E) -> Self {
        let colors = op.input_colors(&x);
        let mut counters = [0usize; 2];
        let children = colors
            .iter()
            .map(|c| {
                let k = &mut counters[color_index(*c)];
                *k += 1;
                Child::Leaf(*k - 1)
            })
            .collect();
        DecoratedTree::from_node(op.output_color(&x), Node { label: x, children })
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.root, Child::Leaf(_))
    }

    pub fn root_node(&self) -> Option<&Node<E>> {
        self.root.node()
    }

    pub fn vertex_count(&self) -> usize {
        self.root_node().map_or(0, Node::vertex_count)
    }

    /// Internal edge lengths in depth-first order.
    pub fn lengths(&self) -> Vec<ExtScalar> {
        let mut out = Vec::new();
        if let Some(r) = self.root_node() {
            r.collect_lengths(&mut out);
        }
        out
    }
}

pub(crate) fn color_index(c: Color) -> usize {
    match c {
        Color::Full => 0,
        Color::Half => 1,
    }
}

/// Visits every leaf with its color, left to right.
pub fn visit_leaves<O: Operad>(op: &O, color: Color, child: &Child<O::Elem>, f: &mut dyn FnMut(Color, usize)) {
    match child {
        Child::Leaf(l) => f(color, *l),
        Child::Edge { node, .. } => {
            let colors = op.input_colors(&node.label);
            for (c, ch) in colors.iter().zip(&node.children) {
                visit_leaves(op, *c, ch, f);
            }
        }
    }
}

/// Number of full and half leaves.
pub fn leaf_counts<O: Operad>(op: &O, t: &DecoratedTree<O::Elem>) -> (usize, usize) {
    let mut counts = [0usize; 2];
    visit_leaves(op, t.color, &t.root, &mut |c, _| counts[color_index(c)] += 1);
    (counts[0], counts[1])
}

/// Input colors of a tree, full inputs first.
pub fn tree_input_colors<O: Operad>(op: &O, t: &DecoratedTree<O::Elem>) -> Vec<Color> {
    let (a, b) = leaf_counts(op, t);
    let mut v = vec![Color::Full; a];
    v.extend(std::iter::repeat(Color::Half).take(b));
    v
}

/// Checks vertex arities, edge colors and that the leaf labels of each color
/// are exactly `0..k`.
pub fn check_tree<O: Operad>(op: &O, t: &DecoratedTree<O::Elem>) -> Result<(), TreeError> {
    if let Child::Edge { node, .. } = &t.root {
        if op.output_color(&node.label) != t.color {
            return Err(TreeError::ColorMismatch { slot: 0 });
        }
        check_node(op, node)?;
    }
    let mut seen: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    visit_leaves(op, t.color, &t.root, &mut |c, l| seen[color_index(c)].push(l));
    for labels in &mut seen {
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(i, &l)| i != l) {
            return Err(TreeError::Malformed("leaf labels of a color are not 0..k".into()));
        }
    }
    Ok(())
}

fn check_node<O: Operad>(op: &O, node: &Node<O::Elem>) -> Result<(), TreeError> {
    let colors = op.input_colors(&node.label);
    if colors.len() != node.children.len() {
        return Err(TreeError::ArityMismatch { expected: colors.len(), got: node.children.len() });
    }
    for (slot, (c, child)) in colors.iter().zip(&node.children).enumerate() {
        if let Child::Edge { node, .. } = child {
            if op.output_color(&node.label) != *c {
                return Err(TreeError::ColorMismatch { slot });
            }
            check_node(op, node)?;
        }
    }
    Ok(())
}

/// Renames every leaf `l` of color `c` to `f(c, l)`.
pub fn relabel_leaves<O: Operad>(
    op: &O,
    t: &DecoratedTree<O::Elem>,
    f: &dyn Fn(Color, usize) -> usize,
) -> DecoratedTree<O::Elem> {
    fn go<O: Operad>(op: &O, color: Color, child: &Child<O::Elem>, f: &dyn Fn(Color, usize) -> usize) -> Child<O::Elem> {
        match child {
            Child::Leaf(l) => Child::Leaf(f(color, *l)),
            Child::Edge { len, node } => {
                let colors = op.input_colors(&node.label);
                let children = colors.iter().zip(&node.children).map(|(c, ch)| go(op, *c, ch, f)).collect();
                Child::edge(len.clone(), Node { label: node.label.clone(), children })
            }
        }
    }
    DecoratedTree { color: t.color, root: go(op, t.color, &t.root, f) }
}

/// Attaches `inputs[i]` at the `i`-th input of `outer` (full leaves first,
/// then half leaves, each in label order). New edges get length `∞` and
/// existing lengths are untouched. Leaves of the result are numbered per
/// color by (slot, inner label).
pub fn graft<O: Operad>(
    op: &O,
    outer: &DecoratedTree<O::Elem>,
    inputs: &[DecoratedTree<O::Elem>],
) -> Result<DecoratedTree<O::Elem>, TreeError> {
    let (nf, nh) = leaf_counts(op, outer);
    if inputs.len() != nf + nh {
        return Err(TreeError::ArityMismatch { expected: nf + nh, got: inputs.len() });
    }
    let mut offsets = vec![[0usize; 2]; inputs.len() + 1];
    for (j, t) in inputs.iter().enumerate() {
        let slot_color = if j < nf { Color::Full } else { Color::Half };
        if t.color != slot_color {
            return Err(TreeError::ColorMismatch { slot: j });
        }
        let (a, b) = leaf_counts(op, t);
        offsets[j + 1] = [offsets[j][0] + a, offsets[j][1] + b];
    }
    let shifted: Vec<Child<O::Elem>> = inputs
        .iter()
        .enumerate()
        .map(|(j, t)| relabel_leaves(op, t, &|c, l| l + offsets[j][color_index(c)]).root)
        .collect();
    let slot_of = |c: Color, l: usize| if c == Color::Full { l } else { nf + l };
    fn go<O: Operad>(
        op: &O,
        color: Color,
        child: &Child<O::Elem>,
        inputs: &[Child<O::Elem>],
        slot_of: &dyn Fn(Color, usize) -> usize,
    ) -> Child<O::Elem> {
        match child {
            Child::Leaf(l) => inputs[slot_of(color, *l)].clone(),
            Child::Edge { len, node } => {
                let colors = op.input_colors(&node.label);
                let children =
                    colors.iter().zip(&node.children).map(|(c, ch)| go(op, *c, ch, inputs, slot_of)).collect();
                Child::edge(len.clone(), Node { label: node.label.clone(), children })
            }
        }
    }
    Ok(DecoratedTree { color: outer.color, root: go(op, outer.color, &outer.root, &shifted, &slot_of) })
}

/// A place where one of the two rewrite rules applies.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Redex {
    /// The edge into child `slot` of the vertex at `path` has length 0.
    Contract { path: Vec<usize>, slot: usize },
    /// The vertex at `path` is a unary identity.
    DropIdentity { path: Vec<usize> },
}

fn is_unary_identity<O: Operad>(op: &O, node: &Node<O::Elem>) -> bool {
    node.children.len() == 1 && op.same(&node.label, &op.identity(op.output_color(&node.label)))
}

fn find_redexes<O: Operad>(op: &O, node: &Node<O::Elem>, path: &mut Vec<usize>, out: &mut Vec<Redex>) {
    for (i, c) in node.children.iter().enumerate() {
        if let Child::Edge { len, node: sub } = c {
            path.push(i);
            find_redexes(op, sub, path, out);
            path.pop();
            if len.is_zero() {
                out.push(Redex::Contract { path: path.clone(), slot: i });
            }
        }
    }
    if is_unary_identity(op, node) {
        out.push(Redex::DropIdentity { path: path.clone() });
    }
}

fn child_at<'a, E>(root: &'a mut Child<E>, path: &[usize]) -> &'a mut Child<E> {
    let mut cur = root;
    for &i in path {
        cur = match cur {
            Child::Edge { node, .. } => &mut node.children[i],
            Child::Leaf(_) => unreachable!("redex paths point at vertices"),
        };
    }
    cur
}

/// `x ∘_i y` together with the children list in the slot order of the composite.
fn contract<O: Operad>(op: &O, x: &Node<O::Elem>, i: usize, y: Node<O::Elem>) -> Result<Node<O::Elem>, TreeError> {
    let colors = op.input_colors(&x.label);
    let inputs: Vec<O::Elem> =
        colors.iter().enumerate().map(|(s, c)| if s == i { y.label.clone() } else { op.identity(*c) }).collect();
    let label = op.compose(&x.label, &inputs)?;
    let y_colors = op.input_colors(&y.label);
    let mut by_color: [Vec<Child<O::Elem>>; 2] = [Vec::new(), Vec::new()];
    let mut y_children: Vec<Option<Child<O::Elem>>> = y.children.into_iter().map(Some).collect();
    for (s, c) in colors.iter().enumerate() {
        if s == i {
            for want in [Color::Full, Color::Half] {
                for (k, yc) in y_colors.iter().enumerate() {
                    if *yc == want {
                        by_color[color_index(want)].push(y_children[k].take().expect("each child moved once"));
                    }
                }
            }
        } else {
            by_color[color_index(*c)].push(x.children[s].clone());
        }
    }
    let [mut children, half] = by_color;
    children.extend(half);
    Ok(Node { label, children })
}

fn apply_redex<O: Operad>(op: &O, t: &mut DecoratedTree<O::Elem>, redex: &Redex) -> Result<(), TreeError> {
    match redex {
        Redex::Contract { path, slot } => {
            let place = child_at(&mut t.root, path);
            let Child::Edge { len, node } = place else { unreachable!() };
            let Child::Edge { node: y, .. } = node.children[*slot].clone() else { unreachable!() };
            let merged = contract(op, node, *slot, *y)?;
            *place = Child::Edge { len: len.clone(), node: Box::new(merged) };
        }
        Redex::DropIdentity { path } => {
            let at_root = path.is_empty();
            let place = child_at(&mut t.root, path);
            let Child::Edge { len: above, node } = place else { unreachable!() };
            let replacement = match node.children[0].clone() {
                Child::Leaf(l) => Child::Leaf(l),
                Child::Edge { len: below, node: w } => {
                    let len = if at_root { ExtScalar::Inf } else { above as &ExtScalar + &below };
                    Child::Edge { len, node: w }
                }
            };
            *place = replacement;
        }
    }
    Ok(())
}

fn rewrite<O: Operad>(
    op: &O,
    t: &DecoratedTree<O::Elem>,
    pick: &mut dyn FnMut(usize) -> usize,
) -> Result<DecoratedTree<O::Elem>, TreeError>
where
    O::Elem: Ord,
{
    let mut t = t.clone();
    loop {
        let mut redexes = Vec::new();
        if let Child::Edge { node, .. } = &t.root {
            find_redexes(op, node, &mut Vec::new(), &mut redexes);
        }
        if redexes.is_empty() {
            break;
        }
        let k = pick(redexes.len());
        apply_redex(op, &mut t, &redexes[k])?;
    }
    Ok(canonical_w(op, &t))
}

/// Normal form: contracts every length-0 edge by composing its endpoint labels
/// and deletes every unary identity vertex, adding the two lengths around it,
/// then orders children canonically.
pub fn normalize_w<O: Operad>(op: &O, t: &DecoratedTree<O::Elem>) -> Result<DecoratedTree<O::Elem>, TreeError>
where
    O::Elem: Ord,
{
    rewrite(op, t, &mut |_| 0)
}

/// The same rewriting system, firing a uniformly random redex at each step.
pub fn normalize_w_random<O: Operad, R: Rng + ?Sized>(
    op: &O,
    t: &DecoratedTree<O::Elem>,
    rng: &mut R,
) -> Result<DecoratedTree<O::Elem>, TreeError>
where
    O::Elem: Ord,
{
    rewrite(op, t, &mut |n| rng.gen_range(0..n))
}

/// Sort key of a subtree: smallest full leaf, smallest half leaf, then the subtree itself.
type ChildKey<E> = (usize, usize, Child<E>);

fn min_leaves<O: Operad>(op: &O, color: Color, child: &Child<O::Elem>) -> (usize, usize) {
    let mut m = [usize::MAX; 2];
    visit_leaves(op, color, child, &mut |c, l| {
        let k = color_index(c);
        m[k] = m[k].min(l);
    });
    (m[0], m[1])
}

/// Rearranges every vertex's slots so children appear ordered by their
/// smallest leaf labels, acting on the vertex label to compensate. Identical
/// leafless siblings are arranged to make the label smallest.
pub fn canonical_w<O: Operad>(op: &O, t: &DecoratedTree<O::Elem>) -> DecoratedTree<O::Elem>
where
    O::Elem: Ord,
{
    fn go<O: Operad>(op: &O, child: &Child<O::Elem>) -> Child<O::Elem>
    where
        O::Elem: Ord,
    {
        let Child::Edge { len, node } = child else { return child.clone() };
        let colors = op.input_colors(&node.label);
        let children: Vec<Child<O::Elem>> =
            node.children.iter().map(|ch| go(op, ch)).collect();
        let n_full = colors.iter().filter(|c| **c == Color::Full).count();
        let keys: Vec<ChildKey<O::Elem>> = colors
            .iter()
            .zip(&children)
            .map(|(c, ch)| {
                let (a, b) = min_leaves(op, *c, ch);
                (a, b, ch.clone())
            })
            .collect();
        let full = Perm::sorting(&keys[..n_full]);
        let half = Perm::sorting(&keys[n_full..]);
        let base = ColoredPerm::new(full, half);
        let full_keys = base.full.permute(&keys[..n_full]);
        let half_keys = base.half.permute(&keys[n_full..]);
        let mut best: Option<(O::Elem, ColoredPerm)> = None;
        for_each_tie_arrangement(&full_keys, &half_keys, &mut |extra: &ColoredPerm| {
            let sigma = base.compose(extra);
            if let Ok(label) = op.act(&node.label, &sigma) {
                if best.as_ref().is_none_or(|(b, _)| label < *b) {
                    best = Some((label, sigma));
                }
            }
        });
        let (label, sigma) = best.expect("the sorting arrangement always applies");
        let mut new_children = sigma.full.permute(&children[..n_full]);
        new_children.extend(sigma.half.permute(&children[n_full..]));
        Child::edge(len.clone(), Node { label, children: new_children })
    }
    let mut root = go(op, &t.root);
    if let Child::Edge { len, .. } = &mut root {
        *len = ExtScalar::Inf;
    }
    DecoratedTree { color: t.color, root }
}

/// Right action on leaf labels: input `i` of `t·σ` is input `σ(i)` of `t`.
pub fn act_w<O: Operad>(
    op: &O,
    t: &DecoratedTree<O::Elem>,
    perm: &ColoredPerm,
) -> Result<DecoratedTree<O::Elem>, TreeError>
where
    O::Elem: Ord,
{
    let (a, b) = leaf_counts(op, t);
    if perm.full.len() != a || perm.half.len() != b || !perm.full.is_valid() || !perm.half.is_valid() {
        return Err(TreeError::BadPermutation);
    }
    let inv = perm.inverse();
    let moved = relabel_leaves(op, t, &|c, l| match c {
        Color::Full => inv.full.apply(l),
        Color::Half => inv.half.apply(l),
    });
    Ok(canonical_w(op, &moved))
}

/// Composes every vertex label into one element (all lengths set to 0),
/// with input `i` of each color being leaf `i`.
pub fn evaluate_w<O: Operad>(op: &O, t: &DecoratedTree<O::Elem>) -> Result<O::Elem, TreeError> {
    fn go<O: Operad>(
        op: &O,
        color: Color,
        child: &Child<O::Elem>,
    ) -> Result<(O::Elem, Vec<usize>, Vec<usize>), TreeError> {
        match child {
            Child::Leaf(l) => {
                let id = op.identity(color);
                Ok(match color {
                    Color::Full => (id, vec![*l], vec![]),
                    Color::Half => (id, vec![], vec![*l]),
                })
            }
            Child::Edge { node, .. } => {
                let colors = op.input_colors(&node.label);
                let mut inputs = Vec::new();
                let (mut fl, mut hl) = (Vec::new(), Vec::new());
                for (c, ch) in colors.iter().zip(&node.children) {
                    let (x, f, h) = go(op, *c, ch)?;
                    inputs.push(x);
                    fl.extend(f);
                    hl.extend(h);
                }
                Ok((op.compose(&node.label, &inputs)?, fl, hl))
            }
        }
    }
    let (x, fl, hl) = go(op, t.color, &t.root)?;
    let sigma = ColoredPerm::new(Perm(fl).inverse(), Perm(hl).inverse());
    Ok(op.act(&x, &sigma)?)
}

/// The W-operad of an operad, with composition = graft then normalize.
#[derive(Clone, Debug)]
pub struct WOperad<O> {
    pub inner: O,
}

impl<O: Operad> Operad for WOperad<O>
where
    O::Elem: Ord,
{
    type Elem = DecoratedTree<O::Elem>;

    fn input_colors(&self, x: &Self::Elem) -> Vec<Color> {
        tree_input_colors(&self.inner, x)
    }

    fn output_color(&self, x: &Self::Elem) -> Color {
        x.color
    }

    fn identity(&self, color: Color) -> Self::Elem {
        DecoratedTree::unit(color)
    }

    fn compose(&self, outer: &Self::Elem, inputs: &[Self::Elem]) -> Result<Self::Elem, crate::operad_core::OperadError> {
        let g = graft(&self.inner, outer, inputs).map_err(TreeError::into_operad)?;
        normalize_w(&self.inner, &g).map_err(TreeError::into_operad)
    }

    fn act(&self, x: &Self::Elem, perm: &ColoredPerm) -> Result<Self::Elem, crate::operad_core::OperadError> {
        act_w(&self.inner, x, perm).map_err(TreeError::into_operad)
    }

    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }
}

/// Random tree built from sampled vertices: every slot becomes a leaf or,
/// with probability `branch`, an edge to a fresh subtree, down to `depth`.
/// Lengths come from `{0, 1/2, 1, 2, ∞}`, and some edges get a unary identity
/// vertex spliced in so both rewrite rules are exercised.
pub fn random_wtree<O: Operad, R: Rng + ?Sized>(
    op: &O,
    rng: &mut R,
    color: Color,
    depth: usize,
    branch: f64,
    sample: &mut dyn FnMut(&mut R, Color) -> O::Elem,
) -> DecoratedTree<O::Elem> {
    fn node<O: Operad, R: Rng + ?Sized>(
        op: &O,
        rng: &mut R,
        color: Color,
        depth: usize,
        branch: f64,
        sample: &mut dyn FnMut(&mut R, Color) -> O::Elem,
    ) -> Node<O::Elem> {
        let label = sample(rng, color);
        let colors = op.input_colors(&label);
        let children = colors
            .iter()
            .map(|c| {
                if depth > 0 && rng.gen_bool(branch) {
                    let mut sub = node(op, rng, *c, depth - 1, branch, sample);
                    if rng.gen_bool(0.2) {
                        let len = random_length(rng);
                        sub = Node { label: op.identity(*c), children: vec![Child::edge(len, sub)] };
                    }
                    Child::edge(random_length(rng), sub)
                } else {
                    Child::Leaf(0)
                }
            })
            .collect();
        Node { label, children }
    }
    let root = node(op, rng, color, depth, branch, sample);
    let mut t = DecoratedTree::from_node(color, root);
    number_leaves(op, &mut t);
    t
}

/// Numbers the leaves of each color `0, 1, …` from left to right.
pub fn number_leaves<O: Operad>(op: &O, t: &mut DecoratedTree<O::Elem>) {
    fn go<O: Operad>(op: &O, color: Color, child: &mut Child<O::Elem>, next: &mut [usize; 2]) {
        match child {
            Child::Leaf(l) => {
                *l = next[color_index(color)];
                next[color_index(color)] += 1;
            }
            Child::Edge { node, .. } => {
                let colors = op.input_colors(&node.label);
                for (c, ch) in colors.iter().zip(node.children.iter_mut()) {
                    go(op, *c, ch, next);
                }
            }
        }
    }
    let color = t.color;
    go(op, color, &mut t.root, &mut [0, 0]);
}

pub fn random_length<R: Rng + ?Sized>(rng: &mut R) -> ExtScalar {
    use crate::geometry::ratio;
    match rng.gen_range(0..6) {
        0 | 1 => ExtScalar::zero(),
        2 => ExtScalar::Fin(ratio(1, 2)),
        3 => ExtScalar::Fin(ratio(1, 1)),
        4 => ExtScalar::Fin(ratio(2, 1)),
        _ => ExtScalar::Inf,
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawChild<E> {
    Leaf { leaf: usize },
    Node { vertex: E, edges: Vec<RawEdge<E>> },
}

#[derive(Serialize, Deserialize)]
struct RawEdge<E> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    len: Option<ExtScalar>,
    child: RawChild<E>,
}

#[derive(Serialize, Deserialize)]
struct RawTree<E> {
    color: Color,
    #[serde(flatten)]
    root: RawChild<E>,
}

fn to_raw<E: Clone>(child: &Child<E>) -> RawChild<E> {
    match child {
        Child::Leaf(l) => RawChild::Leaf { leaf: *l },
        Child::Edge { node, .. } => RawChild::Node {
            vertex: node.label.clone(),
            edges: node
                .children
                .iter()
                .map(|c| RawEdge {
                    len: match c {
                        Child::Leaf(_) => None,
                        Child::Edge { len, .. } => Some(len.clone()),
                    },
                    child: to_raw(c),
                })
                .collect(),
        },
    }
}

fn from_raw<E>(raw: RawChild<E>, len: Option<ExtScalar>) -> Result<Child<E>, TreeError> {
    match raw {
        RawChild::Leaf { leaf } => Ok(Child::Leaf(leaf)),
        RawChild::Node { vertex, edges } => {
            let children =
                edges.into_iter().map(|e| from_raw(e.child, e.len)).collect::<Result<Vec<_>, _>>()?;
            let len = len.ok_or_else(|| TreeError::Malformed("internal edge without a length".into()))?;
            Ok(Child::edge(len, Node { label: vertex, children }))
        }
    }
}

impl<E: Clone + Serialize> DecoratedTree<E> {
    /// `{"color": .., "vertex": .., "edges": [{"len": "p/q"|"inf", "child": ..}]}`; leaves are `{"leaf": k}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RawTree { color: self.color, root: to_raw(&self.root) }).expect("trees serialize")
    }
}

impl<E: DeserializeOwned> DecoratedTree<E> {
    pub fn from_json(v: &serde_json::Value) -> Result<Self, TreeError> {
        let raw: RawTree<E> =
            serde_json::from_value(v.clone()).map_err(|e| TreeError::Malformed(e.to_string()))?;
        Ok(DecoratedTree { color: raw.color, root: from_raw(raw.root, Some(ExtScalar::Inf))? })
    }
}
