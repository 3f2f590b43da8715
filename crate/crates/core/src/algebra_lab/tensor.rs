use serde::{Deserialize, Serialize};

use super::field::Fp;

/// Where an input of a composite comes from: input `i` of the outer map or
/// input `j` of the map plugged into it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Src {
    X(usize),
    Y(usize),
}

/// A multilinear map `V₀ ⊗ ⋯ ⊗ V_{k−1} → W` stored by its values on basis
/// tuples. Tuples are flattened in mixed radix with input 0 most significant;
/// `data[flat·out + o]` is coordinate `o` of the value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tensor {
    pub inputs: Vec<usize>,
    pub out: usize,
    pub data: Vec<u32>,
}

impl Tensor {
    pub fn zeros(inputs: Vec<usize>, out: usize) -> Self {
        let n: usize = inputs.iter().product();
        Tensor { inputs, out, data: vec![0; n * out] }
    }

    /// The arity-0 map picking out a vector.
    pub fn constant(v: Vec<u32>) -> Self {
        Tensor { inputs: vec![], out: v.len(), data: v }
    }

    pub fn identity(dim: usize) -> Self {
        let mut t = Tensor::zeros(vec![dim], dim);
        for i in 0..dim {
            t.data[i * dim + i] = 1;
        }
        t
    }

    pub fn from_fn(inputs: Vec<usize>, out: usize, mut f: impl FnMut(&[usize]) -> Vec<u32>) -> Self {
        let mut t = Tensor::zeros(inputs, out);
        for flat in 0..t.tuples() {
            let v = f(&t.tuple(flat));
            t.data[flat * out..(flat + 1) * out].copy_from_slice(&v);
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    /// Number of basis tuples.
    pub fn tuples(&self) -> usize {
        self.inputs.iter().product()
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.inputs).fold(0, |acc, (&t, &d)| acc * d + t)
    }

    pub fn tuple(&self, mut flat: usize) -> Vec<usize> {
        let mut t = vec![0; self.inputs.len()];
        for (slot, &d) in t.iter_mut().zip(&self.inputs).rev() {
            *slot = flat % d;
            flat /= d;
        }
        t
    }

    pub fn get(&self, tuple: &[usize]) -> &[u32] {
        let i = self.index(tuple);
        &self.data[i * self.out..(i + 1) * self.out]
    }

    pub fn set(&mut self, tuple: &[usize], v: &[u32]) {
        let i = self.index(tuple);
        self.data[i * self.out..(i + 1) * self.out].copy_from_slice(v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Evaluates on arbitrary vectors by multilinearity.
    pub fn apply(&self, f: Fp, vectors: &[Vec<u32>]) -> Vec<u32> {
        assert_eq!(vectors.len(), self.arity(), "tensor arity");
        let mut out = vec![0; self.out];
        let mut acc = vec![(Vec::with_capacity(self.arity()), 1u32)];
        for v in vectors {
            let mut next = Vec::new();
            for (prefix, c) in &acc {
                for (i, &x) in v.iter().enumerate() {
                    if x != 0 {
                        let mut p = prefix.clone();
                        p.push(i);
                        next.push((p, f.mul(*c, x)));
                    }
                }
            }
            acc = next;
        }
        for (t, c) in acc {
            for (o, &y) in out.iter_mut().zip(self.get(&t)) {
                *o = f.mul_add(*o, c, y);
            }
        }
        out
    }

    /// Plugs `inner` into input `pos`; the inputs of the result are listed
    /// by `sources`.
    pub fn compose_at(&self, f: Fp, pos: usize, inner: &Tensor, sources: &[Src]) -> Tensor {
        assert_eq!(inner.out, self.inputs[pos], "composed dimensions differ");
        let dims: Vec<usize> = sources
            .iter()
            .map(|s| match *s {
                Src::X(i) => self.inputs[i],
                Src::Y(j) => inner.inputs[j],
            })
            .collect();
        let mut out = Tensor::zeros(dims, self.out);
        let mut xt = vec![0; self.arity()];
        let mut yt = vec![0; inner.arity()];
        for flat in 0..out.tuples() {
            let t = out.tuple(flat);
            for (s, &v) in sources.iter().zip(&t) {
                match *s {
                    Src::X(i) => xt[i] = v,
                    Src::Y(j) => yt[j] = v,
                }
            }
            let yv = inner.get(&yt).to_vec();
            let dst = flat * out.out;
            for (o, &c) in yv.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                xt[pos] = o;
                let xv = self.get(&xt);
                for (k, &x) in xv.iter().enumerate() {
                    out.data[dst + k] = f.mul_add(out.data[dst + k], c, x);
                }
            }
        }
        out
    }

    /// The map whose input `i` is input `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let dims: Vec<usize> = perm.iter().map(|&i| self.inputs[i]).collect();
        let mut xt = vec![0; self.arity()];
        Tensor::from_fn(dims, self.out, |t| {
            for (i, &v) in t.iter().enumerate() {
                xt[perm[i]] = v;
            }
            self.get(&xt).to_vec()
        })
    }
}
