use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::algebra::AssocAlgebra;
use super::field::Fp;
use super::tensor::{Src, Tensor};
use super::AlgebraError;
use crate::geometry::{Color, DiscLabel};
use crate::operad_core::{check_instance, AxiomReport, Operad, OperadError};
use crate::perm::{ColoredPerm, Perm};

/// Names of the generating components of `π₀SC₁`.
pub(crate) const MULT: &str = "f[f1 f2]";
pub(crate) const FULL_UNIT: &str = "f[]";
pub(crate) const POINT: &str = "h[]";
pub(crate) const RHO: &str = "h[h1 f1]";
pub(crate) const PHI: &str = "h[f1]";

/// One element of a finite colored operad: its name, output color and the
/// numbers of full and half inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub out: Color,
    pub full: usize,
    pub half: usize,
}

impl Component {
    pub fn arity(&self) -> usize {
        self.full + self.half
    }

    pub fn slot_color(&self, pos: usize) -> Color {
        if pos < self.full {
            Color::Full
        } else {
            Color::Half
        }
    }
}

/// Inputs of `x ∘_pos y` for counts `x = (n, m)` and `y = (k, l)`: per
/// color, ordered by (slot, inner label), full inputs first.
pub fn partial_sources(x: (usize, usize), pos: usize, y: (usize, usize)) -> Vec<Src> {
    let (n, m) = x;
    let (k, l) = y;
    let mut full = Vec::new();
    let mut half = Vec::new();
    for s in 0..n + m {
        if s == pos {
            full.extend((0..k).map(Src::Y));
            half.extend((k..k + l).map(Src::Y));
        } else if s < n {
            full.push(Src::X(s));
        } else {
            half.push(Src::X(s));
        }
    }
    full.extend(half);
    full
}

/// `perm` as a permutation of all inputs, full block first.
fn flat_perm(perm: &ColoredPerm) -> Vec<usize> {
    Perm::block_sum(&[perm.full.clone(), perm.half.clone()]).0
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Word {
    out: Color,
    labels: Vec<DiscLabel>,
}

impl Word {
    fn counts(&self) -> (usize, usize) {
        let n = self.labels.iter().filter(|l| l.color == Color::Full).count();
        (n, self.labels.len() - n)
    }

    fn name(&self) -> String {
        let body: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        let prefix = match self.out {
            Color::Full => "f",
            Color::Half => "h",
        };
        format!("{prefix}[{}]", body.join(" "))
    }

    fn input_label(&self, i: usize) -> DiscLabel {
        let (n, _) = self.counts();
        if i < n {
            DiscLabel { color: Color::Full, index: i }
        } else {
            DiscLabel { color: Color::Half, index: i - n }
        }
    }

    fn input_of(&self, label: DiscLabel) -> usize {
        match label.color {
            Color::Full => label.index,
            Color::Half => self.counts().0 + label.index,
        }
    }

    /// Substitutes `y` for the disc at input `pos`.
    fn substitute(&self, pos: usize, y: &Word) -> Option<Word> {
        let slot = self.input_label(pos);
        if slot.color != y.out {
            return None;
        }
        let sources = partial_sources(self.counts(), pos, y.counts());
        let (yk, _) = y.counts();
        let (n, _) = self.counts();
        let nz_full = n - usize::from(slot.color == Color::Full) + yk;
        let mut to_z: HashMap<Src, DiscLabel> = HashMap::new();
        for (q, s) in sources.iter().enumerate() {
            let label = if q < nz_full {
                DiscLabel { color: Color::Full, index: q }
            } else {
                DiscLabel { color: Color::Half, index: q - nz_full }
            };
            to_z.insert(*s, label);
        }
        let mut labels = Vec::new();
        for &l in &self.labels {
            if l == slot {
                labels.extend(y.labels.iter().map(|&yl| to_z[&Src::Y(y.input_of(yl))]));
            } else {
                labels.push(to_z[&Src::X(self.input_of(l))]);
            }
        }
        Some(Word { out: self.out, labels })
    }

    /// The word of `x·σ`: input `i` of the result is input `σ(i)` of `x`.
    fn act(&self, perm: &ColoredPerm) -> Word {
        let fi = perm.full.inverse();
        let hi = perm.half.inverse();
        let labels = self
            .labels
            .iter()
            .map(|l| match l.color {
                Color::Full => DiscLabel { color: Color::Full, index: fi.apply(l.index) },
                Color::Half => DiscLabel { color: Color::Half, index: hi.apply(l.index) },
            })
            .collect();
        Word { out: self.out, labels }
    }
}

/// Components given as left-to-right orderings of labelled intervals.
///
/// Full-output components of arity `k` are the `k!` orderings of `f1..fk`.
/// Half-output components have `n` full inputs and at most one half input;
/// the half input sits at the anchored end, so it comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingModel {
    pub name: String,
    pub cutoff: usize,
    pub full_out: Vec<usize>,
    pub half_degrees: Vec<usize>,
}

impl OrderingModel {
    fn words(&self) -> Vec<Word> {
        let mut out = Vec::new();
        let fulls = |k: usize| -> Vec<Vec<DiscLabel>> {
            Perm::all(k)
                .into_iter()
                .map(|p| p.0.into_iter().map(|i| DiscLabel { color: Color::Full, index: i }).collect())
                .collect()
        };
        let mut full_out = self.full_out.clone();
        full_out.sort_unstable();
        full_out.dedup();
        for &k in full_out.iter().filter(|&&k| k <= self.cutoff) {
            out.extend(fulls(k).into_iter().map(|labels| Word { out: Color::Full, labels }));
        }
        let mut degrees = self.half_degrees.clone();
        degrees.sort_unstable();
        degrees.dedup();
        for &n in &degrees {
            for m in 0..2 {
                if n + m > self.cutoff {
                    continue;
                }
                for body in fulls(n) {
                    let mut labels = Vec::with_capacity(n + m);
                    if m == 1 {
                        labels.push(DiscLabel { color: Color::Half, index: 0 });
                    }
                    labels.extend(body);
                    out.push(Word { out: Color::Half, labels });
                }
            }
        }
        out
    }

    pub fn build(&self) -> DiscreteOperad {
        let words = self.words();
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let components: Vec<Component> = words
            .iter()
            .map(|w| {
                let (full, half) = w.counts();
                Component { name: w.name(), out: w.out, full, half }
            })
            .collect();
        let mut entries = Vec::new();
        for (x, wx) in words.iter().enumerate() {
            for pos in 0..wx.labels.len() {
                for (y, wy) in words.iter().enumerate() {
                    if let Some(z) = wx.substitute(pos, wy).and_then(|wz| index.get(&wz).copied()) {
                        entries.push((x, pos, y, z));
                    }
                }
            }
        }
        let mut actions = Vec::new();
        for (x, wx) in words.iter().enumerate() {
            let (n, m) = wx.counts();
            for pf in Perm::all(n) {
                for ph in Perm::all(m) {
                    let perm = ColoredPerm::new(pf.clone(), ph);
                    if let Some(&z) = index.get(&wx.act(&perm)) {
                        actions.push((x, perm, z));
                    }
                }
            }
        }
        let find = |w: Word| index.get(&w).copied();
        let identity_full = find(Word { out: Color::Full, labels: vec![DiscLabel { color: Color::Full, index: 0 }] });
        let identity_half = find(Word { out: Color::Half, labels: vec![DiscLabel { color: Color::Half, index: 0 }] });
        DiscreteOperad::assemble(self.name.clone(), self.cutoff, components, [identity_full, identity_half], entries, actions)
    }
}

/// A finite colored operad given by tables, cut off at a maximal total arity.
/// Partial compositions `x ∘_pos y` are recorded whenever the result lies
/// within the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteOperad {
    name: String,
    cutoff: usize,
    components: Vec<Component>,
    by_name: HashMap<String, usize>,
    identities: [Option<usize>; 2],
    entries: Vec<(usize, usize, usize, usize)>,
    partial: HashMap<(usize, usize, usize), usize>,
    actions: Vec<(usize, ColoredPerm, usize)>,
    action: HashMap<(usize, ColoredPerm), usize>,
}

fn color_index(c: Color) -> usize {
    match c {
        Color::Full => 0,
        Color::Half => 1,
    }
}

impl DiscreteOperad {
    fn assemble(
        name: String,
        cutoff: usize,
        components: Vec<Component>,
        identities: [Option<usize>; 2],
        mut entries: Vec<(usize, usize, usize, usize)>,
        actions: Vec<(usize, ColoredPerm, usize)>,
    ) -> Self {
        entries.sort_unstable();
        let by_name = components.iter().enumerate().map(|(i, c)| (c.name.clone(), i)).collect();
        let partial = entries.iter().map(|&(x, p, y, z)| ((x, p, y), z)).collect();
        let action = actions.iter().map(|(x, p, z)| ((*x, p.clone()), *z)).collect();
        DiscreteOperad { name, cutoff, components, by_name, identities, entries, partial, actions, action }
    }

    /// `π₀SC₁`: full-output orderings and half-output orderings with at
    /// most one (anchored) half input, up to total arity `cutoff`.
    pub fn pi0_sc1(cutoff: usize) -> Self {
        OrderingModel {
            name: "pi0-sc1".into(),
            cutoff,
            full_out: (0..=cutoff).collect(),
            half_degrees: (0..=cutoff).collect(),
        }
        .build()
    }

    /// The degree ≤ 1 part of `π₀SC₁` over the operad with only an identity:
    /// half-output components have at most one full input.
    pub fn sc1_leq1() -> Self {
        OrderingModel { name: "sc1-leq1".into(), cutoff: 2, full_out: vec![1], half_degrees: vec![0, 1] }.build()
    }

    /// The associative operad `π₀E₁`.
    pub fn assoc(cutoff: usize) -> Self {
        OrderingModel { name: "assoc".into(), cutoff, full_out: (0..=cutoff).collect(), half_degrees: vec![] }.build()
    }

    /// `π₀E₀` in the half color: a point and the identity.
    pub fn e0() -> Self {
        OrderingModel { name: "e0".into(), cutoff: 1, full_out: vec![], half_degrees: vec![0] }.build()
    }

    /// The operad with only an identity, in the full color.
    pub fn trivial() -> Self {
        OrderingModel { name: "trivial".into(), cutoff: 1, full_out: vec![1], half_degrees: vec![] }.build()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, id: usize) -> &Component {
        &self.components[id]
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize, AlgebraError> {
        self.id(name).ok_or_else(|| AlgebraError::Table(format!("{} has no component {name}", self.name)))
    }

    pub fn identity_of(&self, color: Color) -> Option<usize> {
        self.identities[color_index(color)]
    }

    pub fn partial(&self, x: usize, pos: usize, y: usize) -> Option<usize> {
        self.partial.get(&(x, pos, y)).copied()
    }

    pub fn act_on(&self, x: usize, perm: &ColoredPerm) -> Option<usize> {
        if perm.is_identity() && (perm.full.len(), perm.half.len()) == self.counts_of(x) {
            return Some(x);
        }
        self.action.get(&(x, perm.clone())).copied()
    }

    /// `(x, pos, y, z)` with `z = x ∘_pos y`, sorted.
    pub fn entries(&self) -> &[(usize, usize, usize, usize)] {
        &self.entries
    }

    pub fn action_entries(&self) -> &[(usize, ColoredPerm, usize)] {
        &self.actions
    }

    pub fn counts_of(&self, id: usize) -> (usize, usize) {
        let c = &self.components[id];
        (c.full, c.half)
    }

    pub fn sources(&self, x: usize, pos: usize, y: usize) -> Vec<Src> {
        partial_sources(self.counts_of(x), pos, self.counts_of(y))
    }

    /// The components satisfying `keep`, with the table entries among them.
    pub fn suboperad(&self, name: &str, keep: impl Fn(&Component) -> bool) -> DiscreteOperad {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| keep(&self.components[i])).collect();
        let new_id: HashMap<usize, usize> = kept.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let components = kept.iter().map(|&i| self.components[i].clone()).collect();
        let entries = self
            .entries
            .iter()
            .filter_map(|&(x, p, y, z)| Some((new_id.get(&x)?.to_owned(), p, *new_id.get(&y)?, *new_id.get(&z)?)))
            .collect();
        let actions = self
            .actions
            .iter()
            .filter_map(|(x, p, z)| Some((*new_id.get(x)?, p.clone(), *new_id.get(z)?)))
            .collect();
        let identities = self.identities.map(|i| i.and_then(|i| new_id.get(&i).copied()));
        DiscreteOperad::assemble(name.into(), self.cutoff, components, identities, entries, actions)
    }

    /// The half-color operad: half-output components without full inputs.
    pub fn h_color(&self) -> DiscreteOperad {
        self.suboperad(&format!("{}-h", self.name), |c| c.out == Color::Half && c.full == 0)
    }

    pub fn to_json(&self) -> OperadJson {
        let mut arity_components: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for c in &self.components {
            arity_components.entry(arity_key(c.out, c.full, c.half)).or_default().push(c.name.clone());
        }
        let name = |i: usize| self.components[i].name.clone();
        OperadJson {
            name: self.name.clone(),
            cutoff: self.cutoff,
            arity_components,
            identities: self.identities.map(|i| i.map(name)),
            composition: self.entries.iter().map(|&(x, p, y, z)| (name(x), p, name(y), name(z))).collect(),
            action: self
                .actions
                .iter()
                .map(|(x, p, z)| (name(*x), p.full.0.clone(), p.half.0.clone(), name(*z)))
                .collect(),
        }
    }

    /// Loads a table, checking names, counts and colors of every entry.
    pub fn from_json(json: &OperadJson) -> Result<Self, AlgebraError> {
        let mut components = Vec::new();
        for (key, names) in &json.arity_components {
            let (out, full, half) = parse_arity_key(key)?;
            for n in names {
                components.push(Component { name: n.clone(), out, full, half });
            }
        }
        let by_name: HashMap<&str, usize> = components.iter().enumerate().map(|(i, c)| (c.name.as_str(), i)).collect();
        if by_name.len() != components.len() {
            return Err(AlgebraError::Table("duplicate component name".into()));
        }
        let look = |n: &str| by_name.get(n).copied().ok_or_else(|| AlgebraError::Table(format!("unknown component {n}")));
        let mut identities = [None, None];
        for (k, id) in json.identities.iter().enumerate() {
            if let Some(n) = id {
                let i = look(n)?;
                let c = &components[i];
                let color = if k == 0 { Color::Full } else { Color::Half };
                if c.out != color || c.arity() != 1 || c.slot_color(0) != color {
                    return Err(AlgebraError::Table(format!("{n} cannot be an identity")));
                }
                identities[k] = Some(i);
            }
        }
        let mut entries = Vec::new();
        for (x, pos, y, z) in &json.composition {
            let (x, y, z) = (look(x)?, look(y)?, look(z)?);
            let (cx, cy, cz) = (&components[x], &components[y], &components[z]);
            let ok = *pos < cx.arity()
                && cx.slot_color(*pos) == cy.out
                && cz.out == cx.out
                && cz.full + usize::from(cx.slot_color(*pos) == Color::Full) == cx.full + cy.full
                && cz.half + usize::from(cx.slot_color(*pos) == Color::Half) == cx.half + cy.half;
            if !ok {
                return Err(AlgebraError::Table(format!("ill-typed composition {} ∘_{pos} {}", cx.name, cy.name)));
            }
            entries.push((x, *pos, y, z));
        }
        let mut actions = Vec::new();
        for (x, pf, ph, z) in &json.action {
            let (x, z) = (look(x)?, look(z)?);
            let perm = ColoredPerm::new(Perm(pf.clone()), Perm(ph.clone()));
            let (cx, cz) = (&components[x], &components[z]);
            let ok = perm.full.is_valid()
                && perm.half.is_valid()
                && perm.full.len() == cx.full
                && perm.half.len() == cx.half
                && (cz.out, cz.full, cz.half) == (cx.out, cx.full, cx.half);
            if !ok {
                return Err(AlgebraError::Table(format!("ill-typed action on {}", cx.name)));
            }
            actions.push((x, perm, z));
        }
        Ok(DiscreteOperad::assemble(json.name.clone(), json.cutoff, components, identities, entries, actions))
    }
}

fn arity_key(out: Color, full: usize, half: usize) -> String {
    let c = match out {
        Color::Full => 'f',
        Color::Half => 'h',
    };
    format!("{c}({full},{half})")
}

fn parse_arity_key(key: &str) -> Result<(Color, usize, usize), AlgebraError> {
    let bad = || AlgebraError::Table(format!("bad arity key {key}"));
    let out = match key.chars().next() {
        Some('f') => Color::Full,
        Some('h') => Color::Half,
        _ => return Err(bad()),
    };
    let inner = key[1..].strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    Ok((out, a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Serialized table. `arity_components` is keyed by `"f(n,m)"` or `"h(n,m)"`
/// (output color, full and half input counts); `identities` lists the full
/// and half identities; compositions are `[x, slot, y, x ∘_slot y]` and
/// actions `[x, full perm, half perm, x·σ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperadJson {
    pub name: String,
    pub cutoff: usize,
    pub arity_components: BTreeMap<String, Vec<String>>,
    pub identities: [Option<String>; 2],
    pub composition: Vec<(String, usize, String, String)>,
    pub action: Vec<(String, Vec<usize>, Vec<usize>, String)>,
}

impl Operad for DiscreteOperad {
    type Elem = usize;

    fn input_colors(&self, x: &usize) -> Vec<Color> {
        let (n, m) = self.counts_of(*x);
        let mut v = vec![Color::Full; n];
        v.extend(std::iter::repeat_n(Color::Half, m));
        v
    }

    fn output_color(&self, x: &usize) -> Color {
        self.components[*x].out
    }

    fn identity(&self, color: Color) -> usize {
        self.identity_of(color).unwrap_or_else(|| panic!("{} has no identity in color {color:?}", self.name))
    }

    /// Arity-0 inputs are plugged in first (last slot to first), then the
    /// rest in slot order, so every intermediate result has arity at most
    /// that of the final composite.
    fn compose(&self, outer: &usize, inputs: &[usize]) -> Result<usize, OperadError> {
        let arity = self.components[*outer].arity();
        if inputs.len() != arity {
            return Err(OperadError::ArityMismatch { expected: arity, got: inputs.len() });
        }
        for (slot, &y) in inputs.iter().enumerate() {
            if self.components[*outer].slot_color(slot) != self.components[y].out {
                return Err(OperadError::ColorMismatch { slot });
            }
        }
        let beyond = || OperadError::Invalid(format!("composite lies beyond the cutoff of {}", self.name));
        let mut cur = *outer;
        for slot in (0..arity).rev() {
            if self.components[inputs[slot]].arity() == 0 {
                cur = self.partial(cur, slot, inputs[slot]).ok_or_else(beyond)?;
            }
        }
        let rest: Vec<usize> = inputs.iter().copied().filter(|&y| self.components[y].arity() > 0).collect();
        let n_full = self.components[cur].full;
        let (mut full_done, mut half_done) = (0, 0);
        for (slot, &y) in rest.iter().enumerate() {
            let pos = if slot < n_full { full_done } else { full_done + half_done };
            cur = self.partial(cur, pos, y).ok_or_else(beyond)?;
            let (k, l) = self.counts_of(y);
            full_done += k;
            half_done += l;
        }
        Ok(cur)
    }

    fn act(&self, x: &usize, perm: &ColoredPerm) -> Result<usize, OperadError> {
        if (perm.full.len(), perm.half.len()) != self.counts_of(*x) {
            return Err(OperadError::BadPermutation);
        }
        self.act_on(*x, perm).ok_or_else(|| OperadError::Invalid(format!("no action entry in {}", self.name)))
    }

    fn same(&self, a: &usize, b: &usize) -> bool {
        a == b
    }
}

/// All tuples of components filling slots of the given colors with total
/// arity at most `budget`.
fn fillings(op: &DiscreteOperad, colors: &[Color], budget: usize) -> Vec<Vec<usize>> {
    let Some((&first, rest)) = colors.split_first() else { return vec![vec![]] };
    let mut out = Vec::new();
    for (i, c) in op.components.iter().enumerate() {
        if c.out != first || c.arity() > budget {
            continue;
        }
        for mut tail in fillings(op, rest, budget - c.arity()) {
            tail.insert(0, i);
            out.push(tail);
        }
    }
    out
}

fn colored_perms(n: usize, m: usize) -> Vec<ColoredPerm> {
    let halves = Perm::all(m);
    Perm::all(n)
        .into_iter()
        .flat_map(|f| halves.iter().map(move |h| ColoredPerm::new(f.clone(), h.clone())))
        .collect()
}

/// Checks associativity, units and equivariance on every instance whose
/// composites all lie in the table. Truncated tables such as `sc1_leq1` leave
/// some composites undefined; those instances are skipped.
pub fn check_discrete_axioms(op: &DiscreteOperad) -> AxiomReport {
    let mut report = AxiomReport::default();
    let k = op.cutoff;
    for x in 0..op.len() {
        let colors = op.input_colors(&x);
        let (n, m) = op.counts_of(x);
        for ys in fillings(op, &colors, k) {
            let inner_colors: Vec<Color> = ys.iter().flat_map(|y| op.input_colors(y)).collect();
            let ids: Vec<Vec<usize>> = ys.iter().map(|y| op.input_colors(y).iter().map(|c| op.identity(*c)).collect()).collect();
            let id_taus: Vec<ColoredPerm> = ys.iter().map(|y| ColoredPerm::identity(op.counts_of(*y).0, op.counts_of(*y).1)).collect();
            let run = |zs: &[Vec<usize>], sigma: &ColoredPerm, taus: &[ColoredPerm], report: &mut AxiomReport| {
                report.cases += 1;
                if check_instance(op, &x, &ys, zs, sigma, taus, report).is_err() {
                    report.cases -= 1;
                }
            };
            for flat in fillings(op, &inner_colors, k) {
                let mut zs = Vec::new();
                let mut it = flat.into_iter();
                for y in &ys {
                    zs.push(it.by_ref().take(op.components[*y].arity()).collect());
                }
                run(&zs, &ColoredPerm::identity(n, m), &id_taus, &mut report);
            }
            for sigma in colored_perms(n, m) {
                run(&ids, &sigma, &id_taus, &mut report);
            }
            for (i, y) in ys.iter().enumerate() {
                let (a, b) = op.counts_of(*y);
                for tau in colored_perms(a, b) {
                    let mut taus = id_taus.clone();
                    taus[i] = tau;
                    run(&ids, &ColoredPerm::identity(n, m), &taus, &mut report);
                }
            }
        }
    }
    report
}

/// Structure maps of an algebra over a discrete operad: one tensor per
/// component, on `dims[0]`-dimensional full and `dims[1]`-dimensional half
/// inputs. `None` marks a component not yet computed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Action {
    pub f: Fp,
    pub dims: [usize; 2],
    pub maps: Vec<Option<Tensor>>,
}

impl Action {
    /// An action with only the identities filled in.
    pub fn new(op: &DiscreteOperad, f: Fp, dims: [usize; 2]) -> Self {
        let mut maps = vec![None; op.len()];
        for (k, id) in op.identities.iter().enumerate() {
            if let Some(i) = id {
                maps[*i] = Some(Tensor::identity(dims[k]));
            }
        }
        Action { f, dims, maps }
    }

    pub fn input_dims(&self, op: &DiscreteOperad, c: usize) -> Vec<usize> {
        let (n, m) = op.counts_of(c);
        let mut v = vec![self.dims[0]; n];
        v.extend(std::iter::repeat_n(self.dims[1], m));
        v
    }

    pub fn out_dim(&self, op: &DiscreteOperad, c: usize) -> usize {
        self.dims[color_index(op.component(c).out)]
    }

    pub fn get(&self, c: usize) -> Option<&Tensor> {
        self.maps[c].as_ref()
    }

    /// Sets the map of `c`, checking its shape.
    pub fn set(&mut self, op: &DiscreteOperad, c: usize, t: Tensor) -> Result<(), AlgebraError> {
        if t.inputs != self.input_dims(op, c) || t.out != self.out_dim(op, c) {
            return Err(AlgebraError::Shape(format!("tensor for {}", op.component(c).name)));
        }
        self.maps[c] = Some(t);
        Ok(())
    }

    fn eval(&self, op: &DiscreteOperad, entry: &Entry) -> Option<Tensor> {
        match entry {
            Entry::Partial { x, pos, y, .. } => {
                let tx = self.maps[*x].as_ref()?;
                let ty = self.maps[*y].as_ref()?;
                Some(tx.compose_at(self.f, *pos, ty, &op.sources(*x, *pos, *y)))
            }
            Entry::Act { x, perm, .. } => Some(self.maps[*x].as_ref()?.permute(&flat_perm(perm))),
        }
    }
}

/// One equation of the algebra axioms: a partial composition or a
/// symmetric-group relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Partial { x: usize, pos: usize, y: usize, z: usize },
    Act { x: usize, perm: ColoredPerm, z: usize },
}

impl Entry {
    pub(crate) fn target(&self) -> usize {
        match self {
            Entry::Partial { z, .. } | Entry::Act { z, .. } => *z,
        }
    }

    fn sources(&self) -> Vec<usize> {
        match self {
            Entry::Partial { x, y, .. } => vec![*x, *y],
            Entry::Act { x, .. } => vec![*x],
        }
    }

    fn size(&self, op: &DiscreteOperad) -> usize {
        let mut ids = self.sources();
        ids.push(self.target());
        ids.iter().map(|&i| op.component(i).arity()).max().unwrap_or(0)
    }

    fn kind(&self, op: &DiscreteOperad) -> FailureKind {
        match self {
            Entry::Act { .. } => FailureKind::Symmetry,
            Entry::Partial { x, pos, y, .. } => {
                if op.component(*y).arity() == 0 || Some(*y) == op.identity_of(op.component(*y).out) {
                    FailureKind::Unit
                } else if op.component(*x).slot_color(*pos) == Color::Full {
                    FailureKind::FullSlot
                } else {
                    FailureKind::HalfSlot
                }
            }
        }
    }

    fn describe(&self, op: &DiscreteOperad) -> String {
        let n = |i: &usize| op.component(*i).name.clone();
        match self {
            Entry::Partial { x, pos, y, z } => format!("{} ∘_{pos} {} = {}", n(x), n(y), n(z)),
            Entry::Act { x, perm, z } => format!("{}·({:?}|{:?}) = {}", n(x), perm.full.0, perm.half.0, n(z)),
        }
    }

    pub(crate) fn all(op: &DiscreteOperad) -> Vec<Entry> {
        let mut v: Vec<Entry> = op.entries.iter().map(|&(x, pos, y, z)| Entry::Partial { x, pos, y, z }).collect();
        v.extend(op.actions.iter().map(|(x, perm, z)| Entry::Act { x: *x, perm: perm.clone(), z: *z }));
        v
    }
}

/// Which diagram an equation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FailureKind {
    /// Composition into a full input.
    FullSlot,
    /// Composition into a half input.
    HalfSlot,
    /// Relabeling of inputs.
    Symmetry,
    /// Composition with an identity or an arity-0 operation.
    Unit,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActionFailure {
    pub kind: FailureKind,
    pub equation: String,
}

impl fmt::Display for ActionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.equation)
    }
}

/// A derivation plan for actions generated by given components, plus the
/// remaining equations to check. Built once per operad and generator set.
#[derive(Clone, Debug)]
pub struct ActionChecker {
    given: Vec<usize>,
    plan: Vec<Entry>,
    quick: Vec<Entry>,
    rest: Vec<Entry>,
    underived: Vec<usize>,
}

impl ActionChecker {
    /// Derives every component reachable from `given` (and the identities)
    /// through entries accepted by `usable`.
    pub fn new(op: &DiscreteOperad, given: &[usize], usable: impl Fn(&Entry) -> bool) -> Self {
        let mut known = vec![false; op.len()];
        for &g in given.iter().chain(op.identities.iter().flatten()) {
            known[g] = true;
        }
        let base = known.clone();
        let mut all = Entry::all(op);
        all.sort_by_key(|e| e.size(op));
        let mut plan = Vec::new();
        let mut used = HashSet::new();
        loop {
            let mut progress = false;
            for (i, e) in all.iter().enumerate() {
                if !known[e.target()] && e.sources().iter().all(|&s| known[s]) && usable(e) {
                    known[e.target()] = true;
                    plan.push(e.clone());
                    used.insert(i);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        let underived = (0..op.len()).filter(|&i| !known[i]).collect();
        let (quick, rest): (Vec<Entry>, Vec<Entry>) = all
            .into_iter()
            .enumerate()
            .filter(|(i, e)| !used.contains(i) && e.sources().iter().chain([e.target()].iter()).all(|&s| known[s]))
            .map(|(_, e)| e)
            .partition(|e| e.sources().iter().chain([e.target()].iter()).all(|&s| base[s]));
        ActionChecker { given: given.to_vec(), plan, quick, rest, underived }
    }

    /// Derives through every entry.
    pub fn full(op: &DiscreteOperad, given: &[usize]) -> Self {
        ActionChecker::new(op, given, |_| true)
    }

    pub fn given(&self) -> &[usize] {
        &self.given
    }

    /// Components that the generators do not reach.
    pub fn underived(&self) -> &[usize] {
        &self.underived
    }

    pub fn derive(&self, op: &DiscreteOperad, action: &mut Action) {
        for e in &self.plan {
            if let Some(t) = action.eval(op, e) {
                action.maps[e.target()] = Some(t);
            }
        }
    }

    /// Derives the remaining maps and checks every equation, cheap ones
    /// among the generators first. Stops after `limit` failures.
    pub fn check(&self, op: &DiscreteOperad, action: &mut Action, limit: usize) -> Vec<ActionFailure> {
        let mut failures = Vec::new();
        let test = |e: &Entry, action: &Action, failures: &mut Vec<ActionFailure>| {
            if let (Some(lhs), Some(rhs)) = (action.eval(op, e), action.maps[e.target()].as_ref()) {
                if &lhs != rhs {
                    failures.push(ActionFailure { kind: e.kind(op), equation: e.describe(op) });
                }
            }
        };
        for e in &self.quick {
            test(e, action, &mut failures);
            if failures.len() >= limit {
                return failures;
            }
        }
        self.derive(op, action);
        for e in &self.rest {
            test(e, action, &mut failures);
            if failures.len() >= limit {
                return failures;
            }
        }
        failures
    }
}

/// Data of a `π₀SC₁`-action on `(B, A)` beyond the algebra `B`: the point
/// `a₀` of `A`, `ρ: B ⊗ A → A` and `φ: B → A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScActionData {
    pub a0: Vec<u32>,
    pub rho: Tensor,
    pub phi: Tensor,
}

impl ScActionData {
    /// `φ(b) = ρ(b, a₀)`, the value forced by the unit insertion.
    pub fn from_rho(f: Fp, rho: Tensor, a0: Vec<u32>) -> Self {
        let dim_b = rho.inputs[0];
        let phi = Tensor::from_fn(vec![dim_b], a0.len(), |t| {
            let mut e = vec![0; dim_b];
            e[t[0]] = 1;
            rho.apply(f, &[e, a0.clone()])
        });
        ScActionData { a0, rho, phi }
    }

    /// The generator tensors as an action of `op` on `(B, A)`; components
    /// the operad lacks (the product and unit over the trivial operad) are
    /// skipped.
    pub fn action(&self, op: &DiscreteOperad, b: &AssocAlgebra) -> Result<Action, AlgebraError> {
        let mut act = Action::new(op, b.field(), [b.dim(), self.a0.len()]);
        let gens = [
            (MULT, b.mul_tensor().clone()),
            (FULL_UNIT, Tensor::constant(b.unit().to_vec())),
            (POINT, Tensor::constant(self.a0.clone())),
            (RHO, self.rho.clone()),
            (PHI, self.phi.clone()),
        ];
        for (name, t) in gens {
            if let Some(id) = op.id(name) {
                act.set(op, id, t)?;
            }
        }
        Ok(act)
    }
}

/// Generator ids of an SC-type operad among the names above.
pub(crate) fn sc_given(op: &DiscreteOperad) -> Vec<usize> {
    [MULT, FULL_UNIT, POINT, RHO, PHI].iter().filter_map(|n| op.id(n)).collect()
}

/// Instantiates every equation of the action axioms of `op` on `(B, A)`
/// and reports all that fail.
pub fn check_action_diagrams(
    op: &DiscreteOperad,
    b: &AssocAlgebra,
    data: &ScActionData,
) -> Result<Vec<ActionFailure>, AlgebraError> {
    let mut act = data.action(op, b)?;
    let checker = ActionChecker::full(op, &sc_given(op));
    Ok(checker.check(op, &mut act, usize::MAX))
}
