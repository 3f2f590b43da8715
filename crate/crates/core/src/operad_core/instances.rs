use rand::{Rng, RngCore};

use super::{Color, Operad, OperadError, Sampler};
use crate::geometry::{compose, identity_config, sample::random_config, sigma_act, Configuration};
use crate::perm::{ColoredPerm, Perm};

/// `E_d` and `SC_d` as operads on exact configurations.
#[derive(Clone, Copy, Debug)]
pub struct DiscOperad {
    pub d: usize,
}

impl Operad for DiscOperad {
    type Elem = Configuration;

    fn input_colors(&self, x: &Configuration) -> Vec<Color> {
        x.input_colors()
    }

    fn output_color(&self, x: &Configuration) -> Color {
        x.target
    }

    fn identity(&self, color: Color) -> Configuration {
        identity_config(self.d, color)
    }

    fn compose(&self, outer: &Configuration, inputs: &[Configuration]) -> Result<Configuration, OperadError> {
        Ok(compose(outer, inputs)?)
    }

    fn act(&self, x: &Configuration, perm: &ColoredPerm) -> Result<Configuration, OperadError> {
        Ok(sigma_act(x, perm)?)
    }

    fn same(&self, a: &Configuration, b: &Configuration) -> bool {
        a == b
    }
}

/// Random configurations for the axiom harness. With `swiss_cheese` unset
/// only full targets are produced (the operad `E_d`).
#[derive(Clone, Copy, Debug)]
pub struct DiscSampler {
    pub d: usize,
    pub swiss_cheese: bool,
    pub max_full: usize,
    pub max_half: usize,
}

impl DiscSampler {
    pub fn little_discs(d: usize) -> Self {
        DiscSampler { d, swiss_cheese: false, max_full: 3, max_half: 0 }
    }

    pub fn swiss_cheese(d: usize) -> Self {
        DiscSampler { d, swiss_cheese: true, max_full: 2, max_half: if d == 1 { 1 } else { 2 } }
    }
}

impl Sampler<DiscOperad> for DiscSampler {
    fn sample(&self, rng: &mut dyn RngCore, color: Color) -> Configuration {
        // small arities keep the two-level composites cheap
        let n = rng.gen_range(0..=self.max_full);
        let m = if color == Color::Half { rng.gen_range(0..=self.max_half) } else { 0 };
        random_config(rng, self.d, color, n, m)
    }

    fn root_color(&self, rng: &mut dyn RngCore) -> Color {
        if self.swiss_cheese && rng.gen_bool(0.5) {
            Color::Half
        } else {
            Color::Full
        }
    }
}

/// Wraps an operad and swaps the first two full inputs of every composite;
/// used to confirm the harness notices broken compositions.
#[derive(Clone, Debug)]
pub struct CorruptedOperad<O> {
    pub inner: O,
}

impl<O: Operad> Operad for CorruptedOperad<O> {
    type Elem = O::Elem;

    fn input_colors(&self, x: &O::Elem) -> Vec<Color> {
        self.inner.input_colors(x)
    }

    fn output_color(&self, x: &O::Elem) -> Color {
        self.inner.output_color(x)
    }

    fn identity(&self, color: Color) -> O::Elem {
        self.inner.identity(color)
    }

    fn compose(&self, outer: &O::Elem, inputs: &[O::Elem]) -> Result<O::Elem, OperadError> {
        let out = self.inner.compose(outer, inputs)?;
        let (n, m) = self.inner.counts(&out);
        if n < 2 {
            return Ok(out);
        }
        let mut swap = Perm::identity(n);
        swap.0.swap(0, 1);
        self.inner.act(&out, &ColoredPerm::new(swap, Perm::identity(m)))
    }

    fn act(&self, x: &O::Elem, perm: &ColoredPerm) -> Result<O::Elem, OperadError> {
        self.inner.act(x, perm)
    }

    fn same(&self, a: &O::Elem, b: &O::Elem) -> bool {
        self.inner.same(a, b)
    }
}

impl<S> Sampler<CorruptedOperad<DiscOperad>> for S
where
    S: Sampler<DiscOperad>,
{
    fn sample(&self, rng: &mut dyn RngCore, color: Color) -> Configuration {
        Sampler::<DiscOperad>::sample(self, rng, color)
    }

    fn root_color(&self, rng: &mut dyn RngCore) -> Color {
        Sampler::<DiscOperad>::root_color(self, rng)
    }
}
