use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{int, serde_scalar, serde_scalar_vec, Scalar};
use super::GeometryError;
use crate::perm::{ColoredPerm, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Full,
    Half,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Full => "full",
            Color::Half => "half",
        })
    }
}

/// A little disc `x ↦ r·x + c`. Half discs store only the first `d-1`
/// center coordinates; the last one is implicitly 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LittleDisc {
    pub color: Color,
    #[serde(with = "serde_scalar")]
    pub r: Scalar,
    #[serde(with = "serde_scalar_vec")]
    pub c: Vec<Scalar>,
}

impl LittleDisc {
    pub fn full(r: Scalar, c: Vec<Scalar>) -> Self {
        LittleDisc { color: Color::Full, r, c }
    }

    pub fn half(r: Scalar, c: Vec<Scalar>) -> Self {
        LittleDisc { color: Color::Half, r, c }
    }

    /// Center as a point of `ℝ^d`; `None` when the stored coordinates do not fit `d`.
    pub fn center_in(&self, d: usize) -> Option<Vec<Scalar>> {
        match self.color {
            Color::Full if self.c.len() == d => Some(self.c.clone()),
            Color::Half if d >= 1 && self.c.len() == d - 1 => {
                let mut v = self.c.clone();
                v.push(Scalar::zero());
                Some(v)
            }
            _ => None,
        }
    }

    /// Applies the affine map of `outer` (in dimension `d`) to this disc.
    fn pushed_through(&self, outer: &LittleDisc, d: usize) -> LittleDisc {
        let oc = outer.center_in(d).expect("outer disc dimension checked");
        let ic = self.center_in(d).expect("inner disc dimension checked");
        let mut c: Vec<Scalar> = ic.iter().zip(&oc).map(|(x, o)| &outer.r * x + o).collect();
        if self.color == Color::Half {
            c.pop();
        }
        LittleDisc { color: self.color, r: &outer.r * &self.r, c }
    }
}

/// A point of `E_d(n)` (target full) or `SC_d^h(n, m)` (target half).
///
/// Discs are kept with all full discs first, then all half discs; the label of
/// a disc is its index within its color.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Configuration {
    pub d: usize,
    pub target: Color,
    pub discs: Vec<LittleDisc>,
}

#[derive(Deserialize)]
struct RawConfiguration {
    d: usize,
    target: Color,
    discs: Vec<LittleDisc>,
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut raw = RawConfiguration::deserialize(d)?;
        // A half disc written with all d coordinates and last one 0 is stored
        // in the short form; a nonzero last coordinate is left for validation.
        for disc in &mut raw.discs {
            if disc.color == Color::Half && raw.d >= 1 && disc.c.len() == raw.d && disc.c[raw.d - 1].is_zero() {
                disc.c.pop();
            }
        }
        Ok(Configuration::new(raw.d, raw.target, raw.discs))
    }
}

/// One failed invariant found by [`validate_config`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DimensionMismatch { disc: usize, expected: usize, got: usize },
    RadiusOutOfRange { disc: usize },
    NotContained { disc: usize },
    Overlap { a: usize, b: usize },
    Tangent { a: usize, b: usize },
    HalfNotAnchored { disc: usize },
    HalfInFullTarget { disc: usize },
    TooManyDiscsInDimensionZero,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionMismatch { disc, expected, got } => {
                write!(f, "disc {disc}: center has {got} coordinates, expected {expected}")
            }
            Violation::RadiusOutOfRange { disc } => write!(f, "disc {disc}: radius outside (0, 1]"),
            Violation::NotContained { disc } => write!(f, "disc {disc}: image not contained in the target"),
            Violation::Overlap { a, b } => write!(f, "discs {a} and {b}: images overlap"),
            Violation::Tangent { a, b } => write!(f, "discs {a} and {b}: tangent images overlap at a point"),
            Violation::HalfNotAnchored { disc } => write!(f, "disc {disc}: half-disc not anchored"),
            Violation::HalfInFullTarget { disc } => write!(f, "disc {disc}: half-disc inside a full target"),
            Violation::TooManyDiscsInDimensionZero => f.write_str("dimension 0 admits at most one disc"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn norm_sq(v: &[Scalar]) -> Scalar {
    v.iter().fold(Scalar::zero(), |acc, x| acc + x * x)
}

fn dist_sq(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| {
        let t = x - y;
        acc + &t * &t
    })
}

impl Configuration {
    /// Builds a configuration, moving full discs in front of half discs
    /// while keeping the relative order within each color.
    pub fn new(d: usize, target: Color, discs: Vec<LittleDisc>) -> Self {
        let (mut full, half): (Vec<_>, Vec<_>) = discs.into_iter().partition(|x| x.color == Color::Full);
        full.extend(half);
        Configuration { d, target, discs: full }
    }

    pub fn empty(d: usize, target: Color) -> Self {
        Configuration { d, target, discs: Vec::new() }
    }

    pub fn n_full(&self) -> usize {
        self.discs.iter().filter(|x| x.color == Color::Full).count()
    }

    pub fn n_half(&self) -> usize {
        self.discs.len() - self.n_full()
    }

    pub fn full_discs(&self) -> &[LittleDisc] {
        &self.discs[..self.n_full()]
    }

    pub fn half_discs(&self) -> &[LittleDisc] {
        &self.discs[self.n_full()..]
    }

    /// Colors of the inputs in slot order.
    pub fn input_colors(&self) -> Vec<Color> {
        self.discs.iter().map(|x| x.color).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.discs.len() == 1
            && self.discs[0].color == self.target
            && self.discs[0].r.is_one()
            && self.discs[0].c.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("configuration serializes")
    }
}

/// Checks containment, disjointness, anchoring and color invariants exactly.
pub fn validate_config(cfg: &Configuration) -> ValidationReport {
    let d = cfg.d;
    let mut violations = Vec::new();
    let mut centers: Vec<Option<Vec<Scalar>>> = Vec::with_capacity(cfg.discs.len());

    for (i, disc) in cfg.discs.iter().enumerate() {
        if disc.color == Color::Half && cfg.target == Color::Full {
            violations.push(Violation::HalfInFullTarget { disc: i });
        }
        if !disc.r.is_positive() || disc.r > int(1) {
            violations.push(Violation::RadiusOutOfRange { disc: i });
        }
        let center = match disc.color {
            Color::Half if d >= 1 && disc.c.len() == d => {
                if !disc.c[d - 1].is_zero() {
                    violations.push(Violation::HalfNotAnchored { disc: i });
                    None
                } else {
                    Some(disc.c.clone())
                }
            }
            _ => disc.center_in(d),
        };
        if center.is_none() && !violations.contains(&Violation::HalfNotAnchored { disc: i }) {
            let expected = if disc.color == Color::Half { d.saturating_sub(1) } else { d };
            violations.push(Violation::DimensionMismatch { disc: i, expected, got: disc.c.len() });
        }
        if let Some(c) = &center {
            let slack = int(1) - &disc.r;
            let mut inside = !slack.is_negative() && norm_sq(c) <= &slack * &slack;
            if cfg.target == Color::Half && disc.color == Color::Full && d >= 1 {
                inside &= c[d - 1] >= disc.r;
            }
            if !inside {
                violations.push(Violation::NotContained { disc: i });
            }
        }
        centers.push(center);
    }

    if d == 0 && cfg.discs.len() > 1 {
        violations.push(Violation::TooManyDiscsInDimensionZero);
    }

    for a in 0..cfg.discs.len() {
        for b in a + 1..cfg.discs.len() {
            if let (Some(ca), Some(cb)) = (&centers[a], &centers[b]) {
                let rs = &cfg.discs[a].r + &cfg.discs[b].r;
                let lhs = dist_sq(ca, cb);
                let rhs = &rs * &rs;
                if lhs == rhs {
                    violations.push(Violation::Tangent { a, b });
                } else if lhs < rhs {
                    violations.push(Violation::Overlap { a, b });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// The single disc `r = 1`, `c = 0` of the target color.
pub fn identity_config(d: usize, target: Color) -> Configuration {
    let coords = match target {
        Color::Full => d,
        Color::Half => d.saturating_sub(1),
    };
    Configuration {
        d,
        target,
        discs: vec![LittleDisc { color: target, r: int(1), c: vec![Scalar::zero(); coords] }],
    }
}

/// Operad composition: slot `i` of `outer` (full slots first, then half slots)
/// is filled with `inputs[i]`.
///
/// Output full discs are ordered by (slot, inner label) over all slots; output
/// half discs by (half slot, inner label).
pub fn compose(outer: &Configuration, inputs: &[Configuration]) -> Result<Configuration, GeometryError> {
    if inputs.len() != outer.discs.len() {
        return Err(GeometryError::ArityMismatch { expected: outer.discs.len(), got: inputs.len() });
    }
    let d = outer.d;
    let mut full = Vec::new();
    let mut half = Vec::new();
    for (slot, (disc, input)) in outer.discs.iter().zip(inputs).enumerate() {
        if input.d != d {
            return Err(GeometryError::DimensionMismatch { expected: d, got: input.d });
        }
        if input.target != disc.color {
            return Err(GeometryError::ColorMismatch { slot, expected: disc.color, got: input.target });
        }
        if disc.center_in(d).is_none() {
            return Err(GeometryError::DimensionMismatch { expected: d, got: disc.c.len() });
        }
        for inner in &input.discs {
            if inner.center_in(d).is_none() {
                return Err(GeometryError::DimensionMismatch { expected: d, got: inner.c.len() });
            }
            let moved = inner.pushed_through(disc, d);
            match moved.color {
                Color::Full => full.push(moved),
                Color::Half => half.push(moved),
            }
        }
    }
    full.extend(half);
    Ok(Configuration { d, target: outer.target, discs: full })
}

/// Composition in `E_d`: every slot and input is full.
pub fn compose_full(outer: &Configuration, inputs: &[Configuration]) -> Result<Configuration, GeometryError> {
    if outer.target != Color::Full {
        return Err(GeometryError::ColorMismatch { slot: 0, expected: Color::Full, got: outer.target });
    }
    compose(outer, inputs)
}

/// Composition in `SC_d`: full slots take `E_d` points, half slots take `SC_d^h` points.
pub fn compose_mixed(
    outer: &Configuration,
    full_inputs: &[Configuration],
    half_inputs: &[Configuration],
) -> Result<Configuration, GeometryError> {
    let (n, m) = (outer.n_full(), outer.n_half());
    if full_inputs.len() != n || half_inputs.len() != m {
        return Err(GeometryError::ArityMismatch { expected: n + m, got: full_inputs.len() + half_inputs.len() });
    }
    let mut all = full_inputs.to_vec();
    all.extend_from_slice(half_inputs);
    compose(outer, &all)
}

/// Right action: full disc `i` of the result is full disc `perm.full(i)` of `cfg`,
/// and likewise for half discs.
pub fn sigma_act(cfg: &Configuration, perm: &ColoredPerm) -> Result<Configuration, GeometryError> {
    let (n, m) = (cfg.n_full(), cfg.n_half());
    if perm.full.len() != n || perm.half.len() != m || !perm.full.is_valid() || !perm.half.is_valid() {
        return Err(GeometryError::PermutationSize { full: n, half: m });
    }
    let mut discs = perm.full.permute(cfg.full_discs());
    discs.extend(perm.half.permute(cfg.half_discs()));
    Ok(Configuration { d: cfg.d, target: cfg.target, discs })
}

/// `SC_d^h(0, m) → E_{d-1}(m)`: each half disc becomes the full `(d-1)`-disc with the same data.
pub fn identify_half_lower(cfg: &Configuration) -> Result<Configuration, GeometryError> {
    if cfg.target != Color::Half {
        return Err(GeometryError::ColorMismatch { slot: 0, expected: Color::Half, got: cfg.target });
    }
    if cfg.n_full() > 0 {
        return Err(GeometryError::FullDiscsPresent(cfg.n_full()));
    }
    if cfg.d == 0 {
        return Err(GeometryError::DimensionMismatch { expected: 1, got: 0 });
    }
    let discs = cfg.discs.iter().map(|x| LittleDisc::full(x.r.clone(), x.c.clone())).collect();
    Ok(Configuration { d: cfg.d - 1, target: Color::Full, discs })
}

/// Inverse of [`identify_half_lower`].
pub fn unidentify_half_lower(cfg: &Configuration) -> Result<Configuration, GeometryError> {
    if cfg.target != Color::Full {
        return Err(GeometryError::ColorMismatch { slot: 0, expected: Color::Full, got: cfg.target });
    }
    let discs = cfg.discs.iter().map(|x| LittleDisc::half(x.r.clone(), x.c.clone())).collect();
    Ok(Configuration { d: cfg.d + 1, target: Color::Half, discs })
}

/// `SC_d^h(1, m) → E_{d-1}(m)`: drop the full disc, then identify.
pub fn project_forget_full(cfg: &Configuration) -> Result<Configuration, GeometryError> {
    if cfg.n_full() != 1 {
        return Err(GeometryError::FullDiscCount(cfg.n_full()));
    }
    let rest = Configuration { d: cfg.d, target: cfg.target, discs: cfg.half_discs().to_vec() };
    identify_half_lower(&rest)
}

/// A disc label: its color and index within the color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiscLabel {
    pub color: Color,
    pub index: usize,
}

impl fmt::Display for DiscLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.color {
            Color::Full => write!(f, "f{}", self.index + 1),
            Color::Half => write!(f, "h{}", self.index + 1),
        }
    }
}

/// Left-to-right order of the labels of a 1-dimensional configuration;
/// this is a complete invariant of its connected component.
pub fn pi0_invariant_d1(cfg: &Configuration) -> Result<Vec<DiscLabel>, GeometryError> {
    if cfg.d != 1 {
        return Err(GeometryError::DimensionMismatch { expected: 1, got: cfg.d });
    }
    let n = cfg.n_full();
    let mut keyed: Vec<(Scalar, DiscLabel)> = cfg
        .discs
        .iter()
        .enumerate()
        .map(|(i, disc)| {
            let label = if i < n {
                DiscLabel { color: Color::Full, index: i }
            } else {
                DiscLabel { color: Color::Half, index: i - n }
            };
            let x = disc.center_in(1).map(|c| c[0].clone()).unwrap_or_else(Scalar::zero);
            (x, label)
        })
        .collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, l)| l).collect())
}

/// Convenience: `Perm` acting on the full discs of an `E_d` configuration.
pub fn permute_full(cfg: &Configuration, perm: &Perm) -> Result<Configuration, GeometryError> {
    sigma_act(cfg, &ColoredPerm::new(perm.clone(), Perm::identity(cfg.n_half())))
}
