use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::perm::Perm;

/// An element of a collection: it lives in some degree `n` and carries a
/// right action of `S_n`.
pub trait SymElem: Clone + Ord + Debug {
    fn degree(&self) -> usize;
    fn act(&self, p: &Perm) -> Self;
}

/// A degreewise-finite collection, listing the elements of each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collection<T> {
    pub components: BTreeMap<usize, Vec<T>>,
}

impl<T: SymElem> Collection<T> {
    pub fn new() -> Self {
        Collection { components: BTreeMap::new() }
    }

    pub fn from_elements(elems: impl IntoIterator<Item = T>) -> Self {
        let mut c = Collection::new();
        for e in elems {
            c.components.entry(e.degree()).or_insert_with(Vec::new).push(e);
        }
        for v in c.components.values_mut() {
            v.sort();
            v.dedup();
        }
        c
    }

    pub fn component(&self, n: usize) -> &[T] {
        self.components.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn cardinality(&self, n: usize) -> usize {
        self.component(n).len()
    }

    pub fn max_degree(&self) -> usize {
        self.components.keys().next_back().copied().unwrap_or(0)
    }
}

impl<T: SymElem> Default for Collection<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Checks that the identity acts trivially, that the action is a right
/// action, and that each component is closed under it. Returns violations.
pub fn check_action<T: SymElem>(c: &Collection<T>) -> Vec<String> {
    let mut out = Vec::new();
    for (&n, elems) in &c.components {
        let perms = Perm::all(n);
        for x in elems {
            if x.act(&Perm::identity(n)) != *x {
                out.push(format!("identity moves {x:?}"));
            }
            for s in &perms {
                let xs = x.act(s);
                if elems.binary_search(&xs).is_err() {
                    out.push(format!("{x:?}·{s:?} leaves degree {n}"));
                }
                for t in perms.iter().take(6) {
                    if xs.act(t) != x.act(&s.compose(t)) {
                        out.push(format!("action law fails at {x:?}"));
                    }
                }
            }
        }
    }
    out
}

/// `Ind_{S_a × S_b}^{S_{a+b}}(x, y)` with the coset chosen as a shuffle:
/// `left` lists, increasingly, the positions occupied by the inputs of `x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorElem<A, B> {
    pub left: Vec<usize>,
    pub x: A,
    pub y: B,
}

impl<A: SymElem, B: SymElem> TensorElem<A, B> {
    fn right_positions(&self) -> Vec<usize> {
        let n = self.degree();
        (0..n).filter(|i| self.left.binary_search(i).is_err()).collect()
    }

    /// Builds the canonical representative of the class of the labelling
    /// sending input `i` of `x` to `pos_x[i]` and input `j` of `y` to `pos_y[j]`.
    fn canonical(x: &A, pos_x: &[usize], y: &B, pos_y: &[usize]) -> Self {
        let sx = Perm::sorting(pos_x);
        let sy = Perm::sorting(pos_y);
        TensorElem { left: sx.permute(pos_x), x: x.act(&sx), y: y.act(&sy) }
    }
}

impl<A: SymElem, B: SymElem> SymElem for TensorElem<A, B> {
    fn degree(&self) -> usize {
        self.x.degree() + self.y.degree()
    }

    fn act(&self, p: &Perm) -> Self {
        // new position of the old input at position q is p⁻¹(q)
        let inv = p.inverse();
        let pos_x: Vec<usize> = self.left.iter().map(|&q| inv.apply(q)).collect();
        let pos_y: Vec<usize> = self.right_positions().iter().map(|&q| inv.apply(q)).collect();
        TensorElem::canonical(&self.x, &pos_x, &self.y, &pos_y)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `(X ⊗ Y)(n) = ∐_{a+b=n} Ind(X(a) × Y(b))`, realized with shuffle representatives.
pub fn tensor_coll<A: SymElem, B: SymElem>(x: &Collection<A>, y: &Collection<B>) -> Collection<TensorElem<A, B>> {
    let mut out = Vec::new();
    for (&a, xs) in &x.components {
        for (&b, ys) in &y.components {
            for left in subsets(a + b, a) {
                for xe in xs {
                    for ye in ys {
                        out.push(TensorElem { left: left.clone(), x: xe.clone(), y: ye.clone() });
                    }
                }
            }
        }
    }
    Collection::from_elements(out)
}

/// The braiding `X ⊗ Y → Y ⊗ X`.
pub fn braid_tensor<A: SymElem, B: SymElem>(t: &TensorElem<A, B>) -> TensorElem<B, A> {
    TensorElem { left: t.right_positions(), x: t.y.clone(), y: t.x.clone() }
}

/// The associator `(X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z)`, an explicit bijection.
pub fn tensor_assoc<A: SymElem, B: SymElem, C: SymElem>(
    t: &TensorElem<TensorElem<A, B>, C>,
) -> TensorElem<A, TensorElem<B, C>> {
    let xy = &t.x;
    // global positions of x, y, z
    let pos_x: Vec<usize> = xy.left.iter().map(|&i| t.left[i]).collect();
    let pos_y: Vec<usize> = xy.right_positions().iter().map(|&i| t.left[i]).collect();
    let pos_z = t.right_positions();
    let mut yz_positions: Vec<usize> = pos_y.iter().chain(&pos_z).copied().collect();
    yz_positions.sort();
    let local = |g: usize| yz_positions.binary_search(&g).unwrap();
    let inner_y: Vec<usize> = pos_y.iter().map(|&g| local(g)).collect();
    TensorElem { left: pos_x, x: xy.x.clone(), y: TensorElem { left: inner_y, x: xy.y.clone(), y: t.y.clone() } }
}

/// The unit collection: one element in degree 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitPoint;

impl SymElem for UnitPoint {
    fn degree(&self) -> usize {
        0
    }
    fn act(&self, _p: &Perm) -> Self {
        UnitPoint
    }
}

pub fn unit_collection() -> Collection<UnitPoint> {
    Collection::from_elements([UnitPoint])
}

/// A degree 0-1 collection: a pair of finite families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollLeq1<T> {
    pub c0: Vec<T>,
    pub c1: Vec<T>,
}

/// Elements of `(C₀ ⊗ D₀, C₀ ⊗ D₁ ∐ C₁ ⊗ D₀)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeqTensor<A, B> {
    /// degree 0: `C₀ ⊗ D₀`
    Both0(A, B),
    /// degree 1 from the right factor: `C₀ ⊗ D₁`
    Right1(A, B),
    /// degree 1 from the left factor: `C₁ ⊗ D₀`
    Left1(A, B),
}

pub fn tensor_coll_leq1<A: Clone, B: Clone>(c: &CollLeq1<A>, d: &CollLeq1<B>) -> CollLeq1<LeqTensor<A, B>> {
    let mut c0 = Vec::new();
    let mut c1 = Vec::new();
    for a in &c.c0 {
        for b in &d.c0 {
            c0.push(LeqTensor::Both0(a.clone(), b.clone()));
        }
        for b in &d.c1 {
            c1.push(LeqTensor::Right1(a.clone(), b.clone()));
        }
    }
    for a in &c.c1 {
        for b in &d.c0 {
            c1.push(LeqTensor::Left1(a.clone(), b.clone()));
        }
    }
    CollLeq1 { c0, c1 }
}

pub fn braid_leq1<A: Clone, B: Clone>(t: &LeqTensor<A, B>) -> LeqTensor<B, A> {
    match t {
        LeqTensor::Both0(a, b) => LeqTensor::Both0(b.clone(), a.clone()),
        LeqTensor::Right1(a, b) => LeqTensor::Left1(b.clone(), a.clone()),
        LeqTensor::Left1(a, b) => LeqTensor::Right1(b.clone(), a.clone()),
    }
}

/// The unit `(pt, ∅)`.
pub fn unit_leq1() -> CollLeq1<UnitPoint> {
    CollLeq1 { c0: vec![UnitPoint], c1: vec![] }
}
