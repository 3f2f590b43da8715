use super::{Color, Operad, OperadError};

/// The operad in collections obtained from a two-colored operad by keeping
/// half-disc outputs: the arity is the number of half inputs and the degree
/// is the number of full inputs. Full slots are never composed into.
#[derive(Clone, Debug)]
pub struct ForgetH<O> {
    pub inner: O,
}

pub fn forget_h<O: Operad>(op: O) -> ForgetH<O> {
    ForgetH { inner: op }
}

impl<O: Operad> ForgetH<O> {
    pub fn degree(&self, x: &O::Elem) -> usize {
        self.inner.counts(x).0
    }

    pub fn arity(&self, x: &O::Elem) -> usize {
        self.inner.counts(x).1
    }

    pub fn identity(&self) -> O::Elem {
        self.inner.identity(Color::Half)
    }

    /// Fills the half slots of `x` with `ys`; full slots receive identities, so
    /// degrees add and the composite's full inputs come first from `x`, then
    /// from each `y` in order.
    pub fn compose(&self, x: &O::Elem, ys: &[O::Elem]) -> Result<O::Elem, OperadError> {
        if self.inner.output_color(x) != Color::Half {
            return Err(OperadError::ColorMismatch { slot: 0 });
        }
        let (n, m) = self.inner.counts(x);
        if ys.len() != m {
            return Err(OperadError::ArityMismatch { expected: m, got: ys.len() });
        }
        let mut inputs: Vec<O::Elem> = (0..n).map(|_| self.inner.identity(Color::Full)).collect();
        inputs.extend_from_slice(ys);
        self.inner.compose(x, &inputs)
    }
}

/// Restriction of [`ForgetH`] to degrees 0 and 1.
#[derive(Clone, Debug)]
pub struct TruncLeq1<O> {
    pub coll: ForgetH<O>,
}

pub fn truncate_leq1<O: Operad>(coll: ForgetH<O>) -> TruncLeq1<O> {
    TruncLeq1 { coll }
}

impl<O: Operad> TruncLeq1<O> {
    pub fn contains(&self, x: &O::Elem) -> bool {
        self.coll.inner.output_color(x) == Color::Half && self.coll.degree(x) <= 1
    }

    /// One of the three structure maps `(0; 0…0) → 0`, `(0; 0…1…0) → 1`,
    /// `(1; 0…0) → 1`. Anything of total degree 2 or more is rejected.
    pub fn compose(&self, x: &O::Elem, ys: &[O::Elem]) -> Result<O::Elem, OperadError> {
        for e in std::iter::once(x).chain(ys) {
            if !self.contains(e) {
                return Err(OperadError::DegreeOverflow(self.coll.degree(e)));
            }
        }
        let total: usize = std::iter::once(x).chain(ys).map(|e| self.coll.degree(e)).sum();
        if total > 1 {
            return Err(OperadError::DegreeOverflow(total));
        }
        self.coll.compose(x, ys)
    }
}
