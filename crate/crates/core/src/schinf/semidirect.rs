use rand::RngCore;

use super::element::{act_end, act_schinf, compose_schinf, SChInfElement, SchOp};
use super::end::EndTree;
use crate::geometry::Color;
use crate::operad_core::{Operad, OperadError, Sampler};
use crate::perm::{ColoredPerm, Perm};
use crate::trees::tree_input_colors;

/// A point of `SC^{h∞} ⋊_ρ O`: a full-output element of `O(n)` (only with no
/// half inputs) or a half-output element of `SC^{h∞}(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemiElem<E> {
    F(E),
    H(SChInfElement),
}

/// `SC^{h∞} ⋊_ρ O` for a one-colored operad `O` and `ρ: O → End(SC^{h∞})`.
pub struct Semidirect<O, R> {
    pub d: usize,
    pub o: O,
    pub rho: R,
}

impl<O: Operad, R: Fn(&O::Elem) -> EndTree> Operad for Semidirect<O, R> {
    type Elem = SemiElem<O::Elem>;

    fn input_colors(&self, x: &Self::Elem) -> Vec<Color> {
        match x {
            SemiElem::F(o) => self.o.input_colors(o),
            SemiElem::H(y) => tree_input_colors(&SchOp { d: self.d }, &y.tree),
        }
    }

    fn output_color(&self, x: &Self::Elem) -> Color {
        match x {
            SemiElem::F(_) => Color::Full,
            SemiElem::H(_) => Color::Half,
        }
    }

    fn identity(&self, color: Color) -> Self::Elem {
        match color {
            Color::Full => SemiElem::F(self.o.identity(Color::Full)),
            Color::Half => SemiElem::H(SChInfElement::identity(self.d)),
        }
    }

    fn compose(&self, outer: &Self::Elem, inputs: &[Self::Elem]) -> Result<Self::Elem, OperadError> {
        let colors = self.input_colors(outer);
        if colors.len() != inputs.len() {
            return Err(OperadError::ArityMismatch { expected: colors.len(), got: inputs.len() });
        }
        match outer {
            SemiElem::F(o) => {
                let os = inputs
                    .iter()
                    .enumerate()
                    .map(|(slot, x)| match x {
                        SemiElem::F(y) => Ok(y.clone()),
                        SemiElem::H(_) => Err(OperadError::ColorMismatch { slot }),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(SemiElem::F(self.o.compose(o, &os)?))
            }
            SemiElem::H(x) => {
                let mut gs = Vec::new();
                let mut ys = Vec::new();
                for (slot, (c, y)) in colors.iter().zip(inputs).enumerate() {
                    match (c, y) {
                        (Color::Full, SemiElem::F(o)) => gs.push((self.rho)(o)),
                        (Color::Half, SemiElem::H(z)) => ys.push(z.clone()),
                        _ => return Err(OperadError::ColorMismatch { slot }),
                    }
                }
                let acted = act_end(x, &gs).map_err(|e| OperadError::Invalid(e.to_string()))?;
                let out = compose_schinf(&acted, &ys).map_err(|e| OperadError::Invalid(e.to_string()))?;
                Ok(SemiElem::H(out))
            }
        }
    }

    fn act(&self, x: &Self::Elem, perm: &ColoredPerm) -> Result<Self::Elem, OperadError> {
        match x {
            SemiElem::F(o) => Ok(SemiElem::F(self.o.act(o, perm)?)),
            SemiElem::H(y) => act_schinf(y, perm).map(SemiElem::H).map_err(|_| OperadError::BadPermutation),
        }
    }

    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        match (a, b) {
            (SemiElem::F(x), SemiElem::F(y)) => self.o.same(x, y),
            (SemiElem::H(x), SemiElem::H(y)) => x == y,
            _ => false,
        }
    }
}

/// The unit operad: one operation, of arity 1. With `ρ` sending it to the
/// identity, the semidirect product is `SC^{h∞}` with its full inputs
/// treated as slots.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitOperad;

impl Operad for UnitOperad {
    type Elem = ();

    fn input_colors(&self, _: &()) -> Vec<Color> {
        vec![Color::Full]
    }

    fn output_color(&self, _: &()) -> Color {
        Color::Full
    }

    fn identity(&self, _: Color) {}

    fn compose(&self, _: &(), inputs: &[()]) -> Result<(), OperadError> {
        if inputs.len() != 1 {
            return Err(OperadError::ArityMismatch { expected: 1, got: inputs.len() });
        }
        Ok(())
    }

    fn act(&self, _: &(), perm: &ColoredPerm) -> Result<(), OperadError> {
        if perm.full != Perm::identity(1) || !perm.half.is_empty() {
            return Err(OperadError::BadPermutation);
        }
        Ok(())
    }

    fn same(&self, _: &(), _: &()) -> bool {
        true
    }
}

/// `ρ` for the unit operad.
pub fn unit_rho(_: &()) -> EndTree {
    EndTree::identity()
}

/// Samples semidirect elements from an `O` sampler and an `SC^{h∞}` sampler.
pub struct SemidirectSampler<FS, HS> {
    pub full: FS,
    pub half: HS,
}

impl<O, R, FS, HS> Sampler<Semidirect<O, R>> for SemidirectSampler<FS, HS>
where
    O: Operad,
    R: Fn(&O::Elem) -> EndTree,
    FS: Fn(&mut dyn RngCore) -> O::Elem,
    HS: Fn(&mut dyn RngCore) -> SChInfElement,
{
    fn sample(&self, rng: &mut dyn RngCore, color: Color) -> SemiElem<O::Elem> {
        match color {
            Color::Full => SemiElem::F((self.full)(rng)),
            Color::Half => SemiElem::H((self.half)(rng)),
        }
    }

    fn root_color(&self, rng: &mut dyn RngCore) -> Color {
        if rng.next_u32() % 4 == 0 {
            Color::Full
        } else {
            Color::Half
        }
    }
}
