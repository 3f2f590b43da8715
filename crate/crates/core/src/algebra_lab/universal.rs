use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::algebra::{map_to_rho, rho_to_map, AssocAlgebra};
use super::discrete::{sc_given, Action, ActionChecker, DiscreteOperad, Entry, ScActionData, POINT, RHO};
use super::field::Fp;
use super::linalg::Mat;
use super::tensor::Tensor;
use super::{within_bound, AlgebraError};
use crate::geometry::Color;

/// The operad acting on the full color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OKind {
    /// Only an identity: actions are the degree ≤ 1 data `(ρ, φ)`.
    Trivial,
    /// The associative operad: actions are `π₀SC₁`-actions.
    Assoc,
}

impl OKind {
    /// The two-colored operad whose actions on `(B, A)` are enumerated.
    pub fn sc_operad(self, cutoff: usize) -> DiscreteOperad {
        match self {
            OKind::Trivial => DiscreteOperad::sc1_leq1(),
            OKind::Assoc => DiscreteOperad::pi0_sc1(cutoff),
        }
    }

    /// The full-color operad `O`.
    pub fn o_operad(self, cutoff: usize) -> DiscreteOperad {
        match self {
            OKind::Trivial => DiscreteOperad::trivial(),
            OKind::Assoc => DiscreteOperad::assoc(cutoff),
        }
    }
}

fn basis(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// The tautological action of `H = hom(A, A)` on `A`: `ρ(h, a) = h(a)`,
/// with `E_{ij}` at index `i·dim + j`.
fn evaluation(dim_a: usize) -> Tensor {
    Tensor::from_fn(vec![dim_a * dim_a, dim_a], dim_a, |t| {
        let (i, j) = (t[0] / dim_a, t[0] % dim_a);
        if j == t[1] {
            basis(dim_a, i)
        } else {
            vec![0; dim_a]
        }
    })
}

/// The O-algebra structure of `H = hom(A, A)` induced by the tautological
/// action: `μ_o(h₁, …, h_k)` is `a ↦ θ_{ρ ∘₀ o}(h₁, …, h_k; a)`, where the
/// components `ρ ∘₀ o` are reached from `ρ` through half-slot compositions
/// and relabelings only. Returned as an action of `O` on `dims = [dim A², 0]`;
/// `O` is cut off one below `cutoff` so that every `ρ ∘₀ o` is in the table.
pub fn h_structure(kind: OKind, f: Fp, a0: &[u32], cutoff: usize) -> Result<(DiscreteOperad, Action), AlgebraError> {
    let dim_a = a0.len();
    let dim_h = dim_a * dim_a;
    let o = kind.o_operad(cutoff.saturating_sub(1));
    let mut h = Action::new(&o, f, [dim_h, 0]);
    if kind == OKind::Trivial {
        return Ok((o, h));
    }
    let sc = kind.sc_operad(cutoff);
    let rho = sc.require(RHO)?;
    let point = sc.require(POINT)?;
    let mut taut = Action::new(&sc, f, [dim_h, dim_a]);
    taut.set(&sc, rho, evaluation(dim_a))?;
    taut.set(&sc, point, Tensor::constant(a0.to_vec()))?;
    let half_only = |e: &Entry| match e {
        Entry::Partial { x, pos, .. } => sc.component(*x).slot_color(*pos) == Color::Half,
        Entry::Act { .. } => true,
    };
    ActionChecker::new(&sc, &[rho, point], half_only).derive(&sc, &mut taut);
    for (c, comp) in o.components().iter().enumerate() {
        let z = sc.require(&comp.name).ok().and_then(|oc| sc.partial(rho, 0, oc)).ok_or_else(|| AlgebraError::Cutoff {
            reached: comp.arity() + 1,
            what: "H structure".into(),
        })?;
        let theta = taut.get(z).ok_or_else(|| AlgebraError::NotAnAlgebra(format!("{} is not reached", sc.component(z).name)))?;
        let mu = Tensor::from_fn(vec![dim_h; comp.arity()], dim_h, |t| {
            let mut v = vec![0; dim_h];
            for j in 0..dim_a {
                let mut tt = t.to_vec();
                tt.push(j);
                for (i, &c) in theta.get(&tt).iter().enumerate() {
                    v[i * dim_a + j] = c;
                }
            }
            v
        });
        h.set(&o, c, mu)?;
    }
    let all: Vec<usize> = (0..o.len()).collect();
    if let Some(fail) = ActionChecker::full(&o, &all).check(&o, &mut h, 1).first() {
        return Err(AlgebraError::NotAnAlgebra(format!("H: {fail}")));
    }
    Ok((o, h))
}

/// `B` as an O-algebra (only the identity for the trivial operad).
fn b_action(o: &DiscreteOperad, b: &AssocAlgebra) -> Result<Action, AlgebraError> {
    let mut act = Action::new(o, b.field(), [b.dim(), 0]);
    let given: Vec<usize> = [super::discrete::MULT, super::discrete::FULL_UNIT].iter().filter_map(|n| o.id(n)).collect();
    if let Some(m) = o.id(super::discrete::MULT) {
        act.set(o, m, b.mul_tensor().clone())?;
    }
    if let Some(u) = o.id(super::discrete::FULL_UNIT) {
        act.set(o, u, Tensor::constant(b.unit().to_vec()))?;
    }
    let checker = ActionChecker::full(o, &given);
    if let Some(fail) = checker.check(o, &mut act, 1).first() {
        return Err(AlgebraError::NotAnAlgebra(fail.to_string()));
    }
    Ok(act)
}

/// Whether the linear map `m` intertwines two one-colored O-actions.
fn is_o_map(o: &DiscreteOperad, src: &Action, dst: &Action, m: &Mat) -> bool {
    let f = src.f;
    (0..o.len()).all(|c| {
        let (Some(ts), Some(td)) = (src.get(c), dst.get(c)) else { return false };
        (0..ts.tuples()).all(|flat| {
            let t = ts.tuple(flat);
            let args: Vec<Vec<u32>> = t.iter().map(|&i| m.column(i)).collect();
            m.apply(f, ts.get(&t)) == td.apply(f, &args)
        })
    })
}

/// Both sides of the universal property for one `(B, A)`.
#[derive(Clone, Debug)]
pub struct UniversalData {
    pub kind: OKind,
    pub b: AssocAlgebra,
    pub a0: Vec<u32>,
    /// Actions on `(B, A)` extending `B` and the point of `A`.
    pub actions: Vec<ScActionData>,
    /// O-algebra maps `B → H`.
    pub maps: Vec<Mat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalReport {
    pub kind: OKind,
    pub p: u32,
    pub dim_b: usize,
    pub dim_a: usize,
    pub actions: usize,
    pub maps: usize,
    /// `Φ(ρ, φ) = (b ↦ ρ(b, −))` lands in the enumerated maps.
    pub phi_lands: bool,
    /// `Ψ(F) = (F(b)(a), F(b)(a₀))` lands in the enumerated actions.
    pub psi_lands: bool,
    /// `Ψ∘Φ` and `Φ∘Ψ` are identities.
    pub mutually_inverse: bool,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.actions == self.maps && self.phi_lands && self.psi_lands && self.mutually_inverse
    }
}

impl UniversalData {
    pub fn phi(&self, act: &ScActionData) -> Mat {
        rho_to_map(self.b.dim(), self.a0.len(), &act.rho)
    }

    pub fn psi(&self, m: &Mat) -> ScActionData {
        ScActionData::from_rho(self.b.field(), map_to_rho(self.b.dim(), self.a0.len(), m), self.a0.clone())
    }

    pub fn report(&self) -> UniversalReport {
        let actions: HashSet<&ScActionData> = self.actions.iter().collect();
        let maps: HashSet<&Mat> = self.maps.iter().collect();
        let phi_lands = self.actions.iter().all(|a| maps.contains(&self.phi(a)));
        let psi_lands = self.maps.iter().all(|m| actions.contains(&self.psi(m)));
        let mutually_inverse = self.actions.iter().all(|a| &self.psi(&self.phi(a)) == a)
            && self.maps.iter().all(|m| &self.phi(&self.psi(m)) == m);
        UniversalReport {
            kind: self.kind,
            p: self.b.field().p(),
            dim_b: self.b.dim(),
            dim_a: self.a0.len(),
            actions: self.actions.len(),
            maps: self.maps.len(),
            phi_lands,
            psi_lands,
            mutually_inverse,
        }
    }
}

/// Enumerates actions on `(B, A)` (all `ρ: B⊗A → A` and `φ: B → A`, checked
/// against every equation of the table) and O-algebra maps `B → H` (all
/// linear maps, checked against every component), independently.
pub fn universal_cheese_discrete(
    kind: OKind,
    b: &AssocAlgebra,
    a0: &[u32],
    cutoff: usize,
    bound: u128,
) -> Result<UniversalData, AlgebraError> {
    let f = b.field();
    let (db, da) = (b.dim(), a0.len());
    within_bound(f.p(), db * da * da + db * da, bound)?;
    let sc = kind.sc_operad(cutoff);
    let checker = ActionChecker::full(&sc, &sc_given(&sc));
    let n_rho = f.count(db * da * da).ok_or(AlgebraError::Dimension(db))?;
    let n_phi = f.count(db * da).ok_or(AlgebraError::Dimension(db))?;
    let actions: Vec<ScActionData> = (0..n_rho)
        .into_par_iter()
        .map(|i| -> Result<Vec<ScActionData>, AlgebraError> {
            let rho = Tensor { inputs: vec![db, da], out: da, data: f.vector(db * da * da, i) };
            let mut found = Vec::new();
            for j in 0..n_phi {
                let phi = Tensor { inputs: vec![db], out: da, data: f.vector(db * da, j) };
                let data = ScActionData { a0: a0.to_vec(), rho: rho.clone(), phi };
                let mut act = data.action(&sc, b)?;
                if checker.check(&sc, &mut act, 1).is_empty() {
                    found.push(data);
                }
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();

    let (o, h) = h_structure(kind, f, a0, cutoff)?;
    let bo = b_action(&o, b)?;
    let n_maps = f.count(da * da * db).ok_or(AlgebraError::Dimension(db))?;
    let maps: Vec<Mat> = (0..n_maps)
        .into_par_iter()
        .map(|i| Mat { rows: da * da, cols: db, data: f.vector(da * da * db, i) })
        .filter(|m| is_o_map(&o, &bo, &h, m))
        .collect();
    Ok(UniversalData { kind, b: b.clone(), a0: a0.to_vec(), actions, maps })
}

/// Naturality in `B` along an algebra map `g: B → B'`: pulling an action
/// back along `g` corresponds to precomposing its map `B' → H` with `g`.
pub fn check_naturality(
    kind: OKind,
    g: &Mat,
    b: &AssocAlgebra,
    b2: &AssocAlgebra,
    a0: &[u32],
    cutoff: usize,
    bound: u128,
) -> Result<bool, AlgebraError> {
    let f = b.field();
    if !b.is_algebra_map(b2, g) {
        return Err(AlgebraError::NotAnAlgebra("g is not an algebra map".into()));
    }
    let src = universal_cheese_discrete(kind, b, a0, cutoff, bound)?;
    let dst = universal_cheese_discrete(kind, b2, a0, cutoff, bound)?;
    let actions: HashSet<&ScActionData> = src.actions.iter().collect();
    let maps: HashSet<&Mat> = src.maps.iter().collect();
    let da = a0.len();
    let pull = |act: &ScActionData| {
        let rho = Tensor::from_fn(vec![b.dim(), da], da, |t| act.rho.apply(f, &[g.column(t[0]), basis(da, t[1])]));
        let phi = Tensor::from_fn(vec![b.dim()], da, |t| act.phi.apply(f, &[g.column(t[0])]));
        ScActionData { a0: a0.to_vec(), rho, phi }
    };
    Ok(dst.actions.iter().all(|act| {
        let pulled = pull(act);
        actions.contains(&pulled) && src.phi(&pulled) == dst.phi(act).mul(f, g)
    }) && dst.maps.iter().all(|m| maps.contains(&m.mul(f, g))))
}
