use std::fmt::Write;

use rand::RngCore;
use serde::Serialize;

use super::{Color, Operad};
use crate::perm::{ColoredPerm, Perm};

/// Source of random elements for the axiom harness.
pub trait Sampler<O: Operad> {
    /// A random element with the given output color.
    fn sample(&self, rng: &mut dyn RngCore, color: Color) -> O::Elem;

    /// Output color of the outermost element of a test case.
    fn root_color(&self, _rng: &mut dyn RngCore) -> Color {
        Color::Full
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub cases: usize,
    pub associativity_failures: usize,
    pub unit_failures: usize,
    pub equivariance_failures: usize,
    /// Cases where the generator produced inputs that did not compose.
    pub composition_errors: usize,
    /// First few failing cases, described.
    pub witnesses: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.associativity_failures == 0
            && self.unit_failures == 0
            && self.equivariance_failures == 0
            && self.composition_errors == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "{} cases: associativity {} failed, unit {} failed, equivariance {} failed, {} composition errors",
            self.cases, self.associativity_failures, self.unit_failures, self.equivariance_failures, self.composition_errors
        )
    }

    fn witness(&mut self, text: String) {
        if self.witnesses.len() < 5 {
            self.witnesses.push(text);
        }
    }
}

/// Inputs grouped in the order composites list them: per color, slot by slot.
fn flatten_by_color<T: Clone>(groups: &[(Vec<T>, Vec<T>)]) -> Vec<T> {
    let mut out: Vec<T> = groups.iter().flat_map(|(f, _)| f.iter().cloned()).collect();
    out.extend(groups.iter().flat_map(|(_, h)| h.iter().cloned()));
    out
}

/// Full-label reordering relating the two bracketings of a triple composite.
///
/// `groups[i]` lists, for the `i`-th input `y_i`, the number of full inputs of
/// each element plugged into its full slots and into its half slots. With
/// labels ordered by (slot, inner label) per color, `(x∘y)∘z` lists the full
/// inputs coming through full slots of every `y_i` before those coming through
/// half slots, while `x∘(y∘z)` keeps each `y_i` together. The returned `π`
/// satisfies `x∘(y∘z) = ((x∘y)∘z)·π`; it is the identity for one-colored operads.
pub fn associativity_relabeling(groups: &[(Vec<usize>, Vec<usize>)]) -> Perm {
    let k = groups.len();
    let mut sizes: Vec<usize> = groups.iter().map(|(f, _)| f.iter().sum()).collect();
    sizes.extend(groups.iter().map(|(_, h)| h.iter().sum::<usize>()));
    let order: Vec<usize> = (0..k).flat_map(|i| [i, k + i]).collect();
    Perm(order).block_permutation(&sizes)
}

/// Runs `count` random instances of associativity, both unit laws and both
/// equivariance laws, comparing with [`Operad::same`].
pub fn check_operad_axioms<O: Operad, S: Sampler<O>>(
    op: &O,
    sampler: &S,
    count: usize,
    rng: &mut dyn RngCore,
) -> AxiomReport {
    let mut report = AxiomReport::default();
    for case in 0..count {
        report.cases += 1;
        let root = sampler.root_color(rng);
        let x = sampler.sample(rng, root);
        if let Err(msg) = check_case(op, sampler, &x, rng, &mut report) {
            report.composition_errors += 1;
            report.witness(format!("case {case}: {msg}"));
        }
    }
    report
}

fn check_case<O: Operad, S: Sampler<O>>(
    op: &O,
    sampler: &S,
    x: &O::Elem,
    rng: &mut dyn RngCore,
    report: &mut AxiomReport,
) -> Result<(), String> {
    let colors = op.input_colors(x);
    let ys: Vec<O::Elem> = colors.iter().map(|c| sampler.sample(rng, *c)).collect();
    let zs: Vec<Vec<O::Elem>> =
        ys.iter().map(|y| op.input_colors(y).iter().map(|c| sampler.sample(rng, *c)).collect()).collect();
    let (n, m) = op.counts(x);
    let sigma = ColoredPerm::random(n, m, rng);
    let taus: Vec<ColoredPerm> = ys
        .iter()
        .map(|y| {
            let (a, b) = op.counts(y);
            ColoredPerm::random(a, b, rng)
        })
        .collect();
    check_instance(op, x, &ys, &zs, &sigma, &taus, report)
}

/// Checks one fully specified instance of the axioms: associativity of
/// `x ∘ (yᵢ ∘ zᵢ)`, both unit laws for `x`, equivariance in `x` under `sigma`
/// and in the inputs under `taus`. Failures are tallied in `report`; an `Err`
/// means some composite could not be formed.
pub fn check_instance<O: Operad>(
    op: &O,
    x: &O::Elem,
    ys: &[O::Elem],
    zs: &[Vec<O::Elem>],
    sigma: &ColoredPerm,
    taus: &[ColoredPerm],
    report: &mut AxiomReport,
) -> Result<(), String> {
    let err = |e: super::OperadError| e.to_string();
    let colors = op.input_colors(x);
    // associativity
    let xy = op.compose(x, &ys).map_err(err)?;
    let groups: Vec<(Vec<O::Elem>, Vec<O::Elem>)> = ys
        .iter()
        .zip(zs)
        .map(|(y, z)| {
            let (n, _) = op.counts(y);
            (z[..n].to_vec(), z[n..].to_vec())
        })
        .collect();
    let lhs = op.compose(&xy, &flatten_by_color(&groups)).map_err(err)?;
    let inner: Vec<O::Elem> = ys.iter().zip(zs).map(|(y, z)| op.compose(y, z)).collect::<Result<_, _>>().map_err(err)?;
    let rhs = op.compose(x, &inner).map_err(err)?;
    let fz = |z: &[O::Elem]| z.iter().map(|e| op.counts(e).0).collect::<Vec<_>>();
    let count_groups: Vec<(Vec<usize>, Vec<usize>)> = groups.iter().map(|(f, h)| (fz(f), fz(h))).collect();
    let relabel = ColoredPerm::new(associativity_relabeling(&count_groups), Perm::identity(op.counts(&lhs).1));
    let lhs = op.act(&lhs, &relabel).map_err(err)?;
    if !op.same(&lhs, &rhs) {
        report.associativity_failures += 1;
        report.witness(format!("associativity: {lhs:?} vs {rhs:?}"));
    }

    // units
    let left = op.compose(&op.identity(op.output_color(x)), std::slice::from_ref(x)).map_err(err)?;
    let ids: Vec<O::Elem> = colors.iter().map(|c| op.identity(*c)).collect();
    let right = op.compose(x, &ids).map_err(err)?;
    if !op.same(&left, x) || !op.same(&right, x) {
        report.unit_failures += 1;
        report.witness(format!("unit: {x:?}"));
    }

    // equivariance in the outer element
    let slot_perm = Perm::block_sum(&[sigma.full.clone(), sigma.half.clone()]);
    let x_sigma = op.act(x, sigma).map_err(err)?;
    let ys_sigma = slot_perm.permute(ys);
    let lhs = op.compose(&x_sigma, &ys_sigma).map_err(err)?;
    let full_sizes: Vec<usize> = ys.iter().map(|y| op.counts(y).0).collect();
    let half_sizes: Vec<usize> = ys.iter().map(|y| op.counts(y).1).collect();
    let block = ColoredPerm::new(slot_perm.block_permutation(&full_sizes), slot_perm.block_permutation(&half_sizes));
    let rhs = op.act(&xy, &block).map_err(err)?;
    let mut ok = op.same(&lhs, &rhs);

    // equivariance in the inputs
    let ys_tau: Vec<O::Elem> = ys.iter().zip(taus).map(|(y, t)| op.act(y, t)).collect::<Result<_, _>>().map_err(err)?;
    let lhs = op.compose(x, &ys_tau).map_err(err)?;
    let fulls: Vec<Perm> = taus.iter().map(|t| t.full.clone()).collect();
    let halves: Vec<Perm> = taus.iter().map(|t| t.half.clone()).collect();
    let rhs = op.act(&xy, &ColoredPerm::new(Perm::block_sum(&fulls), Perm::block_sum(&halves))).map_err(err)?;
    ok &= op.same(&lhs, &rhs);
    if !ok {
        let mut text = String::new();
        let _ = write!(text, "equivariance: outer {x:?}");
        report.equivariance_failures += 1;
        report.witness(text);
    }
    Ok(())
}
