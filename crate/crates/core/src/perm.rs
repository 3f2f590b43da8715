//! Finite permutations in one-line notation.
//!
//! A permutation `σ` of `{0..n}` is stored as the vector `[σ(0), .., σ(n-1)]`.
//! Right actions throughout the crate use the convention that input `i` of
//! `x·σ` is input `σ(i)` of `x`, so `(x·σ)·τ = x·(σ∘τ)`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Checks that the vector is a bijection of `{0..n}`.
    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &j in &self.0 {
            if j >= seen.len() || seen[j] {
                return false;
            }
            seen[j] = true;
        }
        true
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "permutation sizes differ");
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Rearranges `items` so that position `i` holds `items[σ(i)]`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(self.len(), items.len(), "permutation size does not match list");
        self.0.iter().map(|&i| items[i].clone()).collect()
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Perm {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Perm(v)
    }

    /// Block sum `σ₁ ⊕ σ₂ ⊕ ⋯`, acting on consecutive blocks.
    pub fn block_sum(parts: &[Perm]) -> Perm {
        let mut out = Vec::new();
        let mut offset = 0;
        for p in parts {
            out.extend(p.0.iter().map(|&i| i + offset));
            offset += p.len();
        }
        Perm(out)
    }

    /// The block permutation induced by `σ` on blocks of the given sizes:
    /// block `i` of the result is block `σ(i)` of the source.
    pub fn block_permutation(&self, sizes: &[usize]) -> Perm {
        assert_eq!(self.len(), sizes.len());
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for &s in sizes {
            offsets.push(acc);
            acc += s;
        }
        let mut out = Vec::with_capacity(acc);
        for &src in &self.0 {
            out.extend(offsets[src]..offsets[src] + sizes[src]);
        }
        Perm(out)
    }

    /// The permutation that sorts `keys` ascending (stable): position `i`
    /// of the sorted order holds `keys[σ(i)]`.
    pub fn sorting<K: Ord>(keys: &[K]) -> Perm {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        Perm(idx)
    }

    /// All permutations of `{0..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// A pair of permutations acting separately on full and half inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredPerm {
    pub full: Perm,
    pub half: Perm,
}

impl ColoredPerm {
    pub fn new(full: Perm, half: Perm) -> Self {
        ColoredPerm { full, half }
    }

    pub fn identity(n_full: usize, n_half: usize) -> Self {
        ColoredPerm { full: Perm::identity(n_full), half: Perm::identity(n_half) }
    }

    pub fn full_only(full: Perm) -> Self {
        ColoredPerm { full, half: Perm::identity(0) }
    }

    pub fn compose(&self, other: &ColoredPerm) -> ColoredPerm {
        ColoredPerm { full: self.full.compose(&other.full), half: self.half.compose(&other.half) }
    }

    pub fn inverse(&self) -> ColoredPerm {
        ColoredPerm { full: self.full.inverse(), half: self.half.inverse() }
    }

    pub fn random<R: Rng + ?Sized>(n_full: usize, n_half: usize, rng: &mut R) -> Self {
        ColoredPerm { full: Perm::random(n_full, rng), half: Perm::random(n_half, rng) }
    }

    pub fn is_identity(&self) -> bool {
        self.full.is_identity() && self.half.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_perms_counts() {
        assert_eq!(Perm::all(0).len(), 1);
        assert_eq!(Perm::all(3).len(), 6);
        assert_eq!(Perm::all(4).len(), 24);
    }

    #[test]
    fn right_action_law() {
        let items = vec!['a', 'b', 'c', 'd'];
        let s = Perm(vec![2, 0, 3, 1]);
        let t = Perm(vec![1, 3, 0, 2]);
        let lhs = t.permute(&s.permute(&items));
        let rhs = s.compose(&t).permute(&items);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn block_permutation_moves_blocks() {
        let s = Perm(vec![1, 0]);
        assert_eq!(s.block_permutation(&[2, 1]), Perm(vec![2, 0, 1]));
    }

    #[test]
    fn sorting_perm_sorts() {
        let keys = [3, 1, 2];
        let s = Perm::sorting(&keys);
        assert_eq!(s.permute(&keys), vec![1, 2, 3]);
    }
}
