use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::algebra::AssocAlgebra;
use super::discrete::{Action, ActionChecker, DiscreteOperad, Entry, FULL_UNIT, MULT, POINT};
use super::field::Fp;
use super::linalg::{axpy, sparse_from, Echelon, Mat, Quotient, Sparse};
use super::tensor::{Src, Tensor};
use super::AlgebraError;
use crate::geometry::Color;
use crate::perm::{ColoredPerm, Perm};

/// How module structure maps are generated and which equations they obey,
/// for a one-colored discrete operad.
#[derive(Clone, Debug)]
struct ModuleScheme {
    generators: Vec<usize>,
    plan: Vec<Entry>,
    checks: Vec<Entry>,
}

fn color_perm(color: Color, perm: &ColoredPerm) -> &Perm {
    match color {
        Color::Full => &perm.full,
        Color::Half => &perm.half,
    }
}

/// Whether an operad entry is an equation between module structure maps
/// (the module sits in input 0, which relabelings must fix).
fn module_entry(op: &DiscreteOperad, color: Color, e: &Entry) -> bool {
    match e {
        Entry::Partial { x, pos, y, z } => {
            op.component(*x).arity() >= 1
                && op.component(*z).arity() >= 1
                && (*pos > 0 || op.component(*y).arity() >= 1)
        }
        Entry::Act { x, perm, .. } => op.component(*x).arity() >= 1 && color_perm(color, perm).apply(0) == 0,
    }
}

impl ModuleScheme {
    fn new(op: &DiscreteOperad, color: Color) -> Self {
        let entries: Vec<Entry> = Entry::all(op).into_iter().filter(|e| module_entry(op, color, e)).collect();
        let mut known = vec![false; op.len()];
        if let Some(i) = op.identity_of(color) {
            known[i] = true;
        }
        for (i, c) in op.components().iter().enumerate() {
            if c.arity() == 0 {
                known[i] = true;
            }
        }
        let sources = |e: &Entry| match e {
            Entry::Partial { x, pos, y, .. } if *pos == 0 => vec![*x, *y],
            Entry::Partial { x, .. } | Entry::Act { x, .. } => vec![*x],
        };
        let mut order: Vec<usize> = (0..op.len()).collect();
        order.sort_by_key(|&i| (op.component(i).arity(), i));
        let mut generators = Vec::new();
        let mut plan = Vec::new();
        let mut used = vec![false; entries.len()];
        loop {
            loop {
                let mut progress = false;
                for (i, e) in entries.iter().enumerate() {
                    if !used[i] && !known[e.target()] && sources(e).iter().all(|&s| known[s]) {
                        known[e.target()] = true;
                        used[i] = true;
                        plan.push(e.clone());
                        progress = true;
                    }
                }
                if !progress {
                    break;
                }
            }
            match order.iter().find(|&&i| !known[i]) {
                Some(&g) => {
                    known[g] = true;
                    generators.push(g);
                }
                None => break,
            }
        }
        let checks = entries.into_iter().zip(used).filter(|(_, u)| !u).map(|(e, _)| e).collect();
        ModuleScheme { generators, plan, checks }
    }
}

/// An algebra over a one-colored discrete operad.
#[derive(Clone, Debug)]
pub struct OAlgebra {
    op: Arc<DiscreteOperad>,
    color: Color,
    action: Action,
    scheme: Arc<ModuleScheme>,
}

impl OAlgebra {
    /// Builds the algebra generated by the given structure maps and checks
    /// every equation of the table.
    pub fn new(op: Arc<DiscreteOperad>, f: Fp, dim: usize, given: Vec<(usize, Tensor)>) -> Result<Self, AlgebraError> {
        let color = op.components().first().map(|c| c.out).unwrap_or(Color::Full);
        if op.components().iter().any(|c| c.out != color || (0..c.arity()).any(|p| c.slot_color(p) != color)) {
            return Err(AlgebraError::Table(format!("{} is not one-colored", op.name())));
        }
        let dims = match color {
            Color::Full => [dim, 0],
            Color::Half => [0, dim],
        };
        let mut action = Action::new(&op, f, dims);
        let ids: Vec<usize> = given.iter().map(|(i, _)| *i).collect();
        for (i, t) in given {
            action.set(&op, i, t)?;
        }
        let checker = ActionChecker::full(&op, &ids);
        if let Some(&c) = checker.underived().first() {
            return Err(AlgebraError::NotAnAlgebra(format!("{} is not generated", op.component(c).name)));
        }
        if let Some(fail) = checker.check(&op, &mut action, 1).first() {
            return Err(AlgebraError::NotAnAlgebra(fail.to_string()));
        }
        let scheme = Arc::new(ModuleScheme::new(&op, color));
        Ok(OAlgebra { op, color, action, scheme })
    }

    /// An associative algebra over the associative operad.
    pub fn assoc(op: Arc<DiscreteOperad>, b: &AssocAlgebra) -> Result<Self, AlgebraError> {
        let given = vec![
            (op.require(MULT)?, b.mul_tensor().clone()),
            (op.require(FULL_UNIT)?, Tensor::constant(b.unit().to_vec())),
        ];
        OAlgebra::new(op, b.field(), b.dim(), given)
    }

    /// A pointed space over `π₀E₀`.
    pub fn pointed(op: Arc<DiscreteOperad>, f: Fp, a0: Vec<u32>) -> Result<Self, AlgebraError> {
        let dim = a0.len();
        OAlgebra::new(op.clone(), f, dim, vec![(op.require(POINT)?, Tensor::constant(a0))])
    }

    pub fn operad(&self) -> &DiscreteOperad {
        &self.op
    }

    pub fn field(&self) -> Fp {
        self.action.f
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn dim(&self) -> usize {
        match self.color {
            Color::Full => self.action.dims[0],
            Color::Half => self.action.dims[1],
        }
    }

    pub fn alpha(&self, c: usize) -> &Tensor {
        self.action.get(c).expect("every component of a checked algebra has a map")
    }

    /// Components acting on modules without being composites of others.
    pub fn module_generators(&self) -> &[usize] {
        &self.scheme.generators
    }

    fn same_algebra(&self, other: &OAlgebra) -> bool {
        Arc::ptr_eq(&self.op, &other.op) || (*self.op == *other.op && self.action == other.action)
    }
}

/// An O-A module: maps `β_c: M ⊗ A^{⊗k−1} → M` for each component `c` of
/// arity `k ≥ 1`, with `M` in input 0.
#[derive(Clone, Debug)]
pub struct OAModule {
    alg: OAlgebra,
    dim: usize,
    beta: Vec<Option<Tensor>>,
}

impl OAModule {
    /// Derives all structure maps from those of the module generators and
    /// checks every module equation.
    pub fn new(alg: &OAlgebra, dim: usize, given: Vec<(usize, Tensor)>) -> Result<Self, AlgebraError> {
        let mut m = OAModule { alg: alg.clone(), dim, beta: vec![None; alg.op.len()] };
        if let Some(i) = alg.op.identity_of(alg.color) {
            m.beta[i] = Some(Tensor::identity(dim));
        }
        for (c, t) in given {
            if t.inputs != m.input_dims(c) || t.out != dim {
                return Err(AlgebraError::Shape(format!("module map for {}", alg.op.component(c).name)));
            }
            m.beta[c] = Some(t);
        }
        for e in &alg.scheme.plan {
            if m.beta[e.target()].is_none() {
                m.beta[e.target()] = m.eval(e);
            }
        }
        if let Some(c) = (0..alg.op.len()).find(|&c| alg.op.component(c).arity() >= 1 && m.beta[c].is_none()) {
            return Err(AlgebraError::NotAnAlgebra(format!("no module map for {}", alg.op.component(c).name)));
        }
        if let Some(e) = m.failures().first() {
            return Err(AlgebraError::NotAnAlgebra(format!("module equation fails: {e}")));
        }
        Ok(m)
    }

    /// `A` as a module over itself.
    pub fn regular(alg: &OAlgebra) -> Result<Self, AlgebraError> {
        let given = alg.scheme.generators.iter().map(|&g| (g, alg.alpha(g).clone())).collect();
        OAModule::new(alg, alg.dim(), given)
    }

    pub fn algebra(&self) -> &OAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn beta(&self, c: usize) -> &Tensor {
        self.beta[c].as_ref().expect("module maps exist for every component of positive arity")
    }

    fn input_dims(&self, c: usize) -> Vec<usize> {
        let k = self.alg.op.component(c).arity();
        let mut v = vec![self.alg.dim(); k];
        if k > 0 {
            v[0] = self.dim;
        }
        v
    }

    fn eval(&self, e: &Entry) -> Option<Tensor> {
        let f = self.alg.field();
        let op = &self.alg.op;
        match e {
            Entry::Partial { x, pos, y, .. } => {
                let tx = self.beta[*x].as_ref()?;
                let ty = if *pos == 0 { self.beta[*y].as_ref()? } else { self.alg.alpha(*y) };
                Some(tx.compose_at(f, *pos, ty, &op.sources(*x, *pos, *y)))
            }
            Entry::Act { x, perm, .. } => Some(self.beta[*x].as_ref()?.permute(&color_perm(self.alg.color, perm).0)),
        }
    }

    /// Module equations that fail, described.
    pub fn failures(&self) -> Vec<String> {
        self.alg
            .scheme
            .checks
            .iter()
            .filter(|e| match (self.eval(e), self.beta[e.target()].as_ref()) {
                (Some(lhs), Some(rhs)) => &lhs != rhs,
                _ => true,
            })
            .map(|e| format!("{e:?}"))
            .collect()
    }
}

/// Whether `f: M' → M` commutes with every structure map.
pub fn is_module_map(source: &OAModule, target: &OAModule, f: &Mat) -> bool {
    let fp = source.alg.field();
    if f.rows != target.dim || f.cols != source.dim {
        return false;
    }
    (0..source.alg.op.len()).filter(|&c| source.alg.op.component(c).arity() >= 1).all(|c| {
        let bs = source.beta(c);
        let bt = target.beta(c);
        (0..bs.tuples()).all(|flat| {
            let t = bs.tuple(flat);
            let lhs = f.apply(fp, bs.get(&t));
            let mut args: Vec<Vec<u32>> = t.iter().skip(1).map(|&a| unit_vec(source.alg.dim(), a)).collect();
            args.insert(0, f.column(t[0]));
            lhs == bt.apply(fp, &args)
        })
    })
}

fn unit_vec(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// A basis of O-A module maps `M' → M`: the solutions `f` of
/// `f(β'_c(x, a)) = β_c(f(x), a)` on all generators of `F¹(A, M')`.
pub fn hom_oa(source: &OAModule, target: &OAModule) -> Result<Vec<Mat>, AlgebraError> {
    if !source.alg.same_algebra(&target.alg) {
        return Err(AlgebraError::Shape("modules over different algebras".into()));
    }
    let f = source.alg.field();
    let (dm, ds) = (target.dim, source.dim);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for c in (0..source.alg.op.len()).filter(|&c| source.alg.op.component(c).arity() >= 1) {
        let bs = source.beta(c);
        let bt = target.beta(c);
        for flat in 0..bs.tuples() {
            let t = bs.tuple(flat);
            let image = bs.get(&t);
            for i in 0..dm {
                let mut row = vec![0; dm * ds];
                for (j, &v) in image.iter().enumerate() {
                    row[i * ds + j] = f.add(row[i * ds + j], v);
                }
                for y in 0..dm {
                    let mut ty = t.clone();
                    ty[0] = y;
                    let v = bt.get(&ty)[i];
                    row[y * ds + t[0]] = f.sub(row[y * ds + t[0]], v);
                }
                if row.iter().any(|&v| v != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Mat { rows: rows.len(), cols: dm * ds, data: rows.concat() };
    Ok(system.nullspace(f).into_iter().map(|data| Mat { rows: dm, cols: ds, data }).collect())
}

/// The free O-A module `F^A_O(M)` on a space `M`, computed as the quotient
/// of `F¹(A, M)` (operations with `M` in input 0, modulo relabelings fixing
/// input 0) by the evaluation relations `[c ∘_i d; x, a] = [c; x, α_d(a)]`.
#[derive(Clone, Debug)]
pub struct FreeModule {
    module: OAModule,
    source_dim: usize,
    columns: Vec<(usize, Vec<usize>)>,
    index: HashMap<(usize, Vec<usize>), usize>,
    orbit: Vec<Option<(usize, Perm)>>,
    relations: Vec<Sparse>,
    quotient: Quotient,
}

struct Presentation {
    columns: Vec<(usize, Vec<usize>)>,
    index: HashMap<(usize, Vec<usize>), usize>,
    relations: Vec<Sparse>,
    quotient: Quotient,
}

fn tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let t = Tensor::zeros(dims.to_vec(), 0);
    (0..t.tuples()).map(|i| t.tuple(i)).collect()
}

fn orbits(alg: &OAlgebra) -> (Vec<Option<(usize, Perm)>>, Vec<Vec<Perm>>) {
    let op = &alg.op;
    let mut orbit: Vec<Option<(usize, Perm)>> = vec![None; op.len()];
    let mut stab = vec![Vec::new(); op.len()];
    for c in 0..op.len() {
        let k = op.component(c).arity();
        if k == 0 || orbit[c].is_some() {
            continue;
        }
        for sigma in Perm::all(k).into_iter().filter(|s| s.apply(0) == 0) {
            let perm = match alg.color {
                Color::Full => ColoredPerm::new(sigma.clone(), Perm::identity(0)),
                Color::Half => ColoredPerm::new(Perm::identity(0), sigma.clone()),
            };
            let Some(e) = op.act_on(c, &perm) else { continue };
            if e == c && !sigma.is_identity() {
                stab[c].push(sigma.clone());
            }
            if orbit[e].is_none() {
                orbit[e] = Some((c, sigma));
            }
        }
    }
    (orbit, stab)
}

/// `[rep·σ; v] = [rep; w]` with `w_{σ(i)} = v_i`.
fn to_rep(orbit: &[Option<(usize, Perm)>], c: usize, v: &[usize]) -> (usize, Vec<usize>) {
    let (rep, sigma) = orbit[c].as_ref().expect("orbit of a positive-arity component");
    let mut w = vec![0; v.len()];
    for (i, &x) in v.iter().enumerate() {
        w[sigma.apply(i)] = x;
    }
    (*rep, w)
}

fn present(
    alg: &OAlgebra,
    dim_m: usize,
    limit: usize,
    orbit: &[Option<(usize, Perm)>],
    stab: &[Vec<Perm>],
) -> Presentation {
    let op = &alg.op;
    let f = alg.field();
    let dim_a = alg.dim();
    let mut reps: Vec<usize> = (0..op.len())
        .filter(|&c| {
            let k = op.component(c).arity();
            k >= 1 && k <= limit && orbit[c].as_ref().is_some_and(|(r, _)| *r == c)
        })
        .collect();
    reps.sort_by_key(|&c| (std::cmp::Reverse(op.component(c).arity()), c));
    let mut columns = Vec::new();
    for &c in &reps {
        let k = op.component(c).arity();
        let mut dims = vec![dim_a; k];
        dims[0] = dim_m;
        for t in tuples(&dims) {
            columns.push((c, t));
        }
    }
    let index: HashMap<(usize, Vec<usize>), usize> = columns.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let col = |c: usize, v: &[usize]| index[&to_rep(orbit, c, v)];
    let mut relations = Vec::new();
    for &c in &reps {
        for sigma in &stab[c] {
            let k = op.component(c).arity();
            let mut dims = vec![dim_a; k];
            dims[0] = dim_m;
            for t in tuples(&dims) {
                let mut w = vec![0; k];
                for (i, &x) in t.iter().enumerate() {
                    w[sigma.apply(i)] = x;
                }
                let mut acc = BTreeMap::new();
                axpy(f, &mut acc, 1, &[(col(c, &t), 1)]);
                axpy(f, &mut acc, f.neg(1), &[(col(c, &w), 1)]);
                relations.push(sparse_from(acc));
            }
        }
    }
    for &(c, pos, d, z) in op.entries() {
        let (kc, kz) = (op.component(c).arity(), op.component(z).arity());
        if pos == 0 || kc > limit || kz > limit || kz == 0 {
            continue;
        }
        let sources = op.sources(c, pos, d);
        let alpha = alg.alpha(d);
        let mut dims = vec![dim_a; kz];
        dims[0] = dim_m;
        for t in tuples(&dims) {
            let mut ct = vec![0; kc];
            let mut dt = vec![0; op.component(d).arity()];
            for (s, &v) in sources.iter().zip(&t) {
                match *s {
                    Src::X(i) => ct[i] = v,
                    Src::Y(j) => dt[j] = v,
                }
            }
            let mut acc = BTreeMap::new();
            axpy(f, &mut acc, 1, &[(col(z, &t), 1)]);
            for (o, &a) in alpha.get(&dt).iter().enumerate() {
                if a != 0 {
                    ct[pos] = o;
                    axpy(f, &mut acc, f.neg(a), &[(col(c, &ct), 1)]);
                }
            }
            let row = sparse_from(acc);
            if !row.is_empty() {
                relations.push(row);
            }
        }
    }
    let mut ech = Echelon::new(f, columns.len());
    for r in &relations {
        ech.insert(r);
    }
    Presentation { columns, index, relations, quotient: Quotient::new(ech) }
}

/// Builds `F^A_O(M)` for `dim M = dim_m` with its canonical module structure.
///
/// The table is cut off at the operad's maximal arity; the quotient must
/// already be stable one arity lower, otherwise the cutoff is reported.
pub fn free_oa_module(alg: &OAlgebra, dim_m: usize) -> Result<FreeModule, AlgebraError> {
    let k = alg.op.cutoff();
    let (orbit, stab) = orbits(alg);
    let full = present(alg, dim_m, k, &orbit, &stab);
    let has_top = alg.op.components().iter().any(|c| c.arity() == k);
    if k >= 2 && has_top {
        let lower = present(alg, dim_m, k - 1, &orbit, &stab);
        if lower.quotient.dim() != full.quotient.dim() {
            return Err(AlgebraError::Cutoff { reached: k, what: "free module dimension".into() });
        }
    }
    let Presentation { columns, index, relations, quotient } = full;
    let mut free = FreeModule {
        module: OAModule { alg: alg.clone(), dim: quotient.dim(), beta: vec![] },
        source_dim: dim_m,
        columns,
        index,
        orbit,
        relations,
        quotient,
    };
    let mut given = Vec::new();
    for &g in alg.module_generators() {
        given.push((g, free.generator_action(g)?));
    }
    free.module = OAModule::new(alg, free.quotient.dim(), given)?;
    Ok(free)
}

impl FreeModule {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn module(&self) -> &OAModule {
        &self.module
    }

    /// Number of generators of `F¹(A, M)` and of relations imposed.
    pub fn presentation_size(&self) -> (usize, usize) {
        (self.columns.len(), self.relations.len())
    }

    fn column(&self, c: usize, v: &[usize]) -> Result<usize, AlgebraError> {
        let key = to_rep(&self.orbit, c, v);
        self.index.get(&key).copied().ok_or_else(|| AlgebraError::Cutoff {
            reached: self.module.alg.op.component(c).arity(),
            what: "free module generator".into(),
        })
    }

    /// The class of `[c; x, a₁, …]` in the quotient.
    pub fn class_of(&self, c: usize, v: &[usize]) -> Result<Vec<u32>, AlgebraError> {
        Ok(self.quotient.project(&[(self.column(c, v)?, 1)]))
    }

    /// `β_g` on the quotient basis: `[g ∘₀ c; x, a, b]`.
    fn generator_action(&self, g: usize) -> Result<Tensor, AlgebraError> {
        let alg = &self.module.alg;
        let op = &alg.op;
        let k = op.component(g).arity();
        let mut dims = vec![alg.dim(); k];
        dims[0] = self.dim();
        let mut out = Tensor::zeros(dims, self.dim());
        for flat in 0..out.tuples() {
            let t = out.tuple(flat);
            let (c, v) = &self.columns[self.quotient.basis_column(t[0])];
            let z = op.partial(g, 0, *c).ok_or_else(|| AlgebraError::Cutoff {
                reached: op.component(*c).arity() + k - 1,
                what: "free module action".into(),
            })?;
            let mut w = v.clone();
            w.extend_from_slice(&t[1..]);
            let value = self.class_of(z, &w)?;
            out.set(&t, &value);
        }
        Ok(out)
    }

    /// `η: M → F(M)`, `x ↦ [id; x]`.
    pub fn eta(&self) -> Result<Mat, AlgebraError> {
        let id = self.module.alg.op.identity_of(self.module.alg.color).ok_or_else(|| AlgebraError::Table("no identity".into()))?;
        let cols = (0..self.source_dim).map(|x| self.class_of(id, &[x])).collect::<Result<Vec<_>, _>>()?;
        Ok(Mat::from_columns(self.dim(), &cols))
    }

    /// `[c; x, a] ↦ β^N_c(x, a)` on a generator column.
    fn evaluate(&self, n: &OAModule, col: usize) -> Vec<u32> {
        let (c, v) = &self.columns[col];
        n.beta(*c).get(v).to_vec()
    }

    /// The canonical map `F(N) → N` of a module `N` on the same space.
    pub fn canonical(&self, n: &OAModule) -> Result<Mat, AlgebraError> {
        if n.dim != self.source_dim || !n.alg.same_algebra(&self.module.alg) {
            return Err(AlgebraError::Shape("canonical map needs a module on the generating space".into()));
        }
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|j| self.evaluate(n, self.quotient.basis_column(j))).collect();
        Ok(Mat::from_columns(n.dim, &cols))
    }

    /// Whether `[c; x, a] ↦ β^N_c(x, a)` vanishes on every relation, so
    /// that the canonical map is well defined.
    pub fn relations_killed_by(&self, n: &OAModule) -> bool {
        let f = self.module.alg.field();
        self.relations.iter().all(|row| {
            let mut acc = vec![0; n.dim];
            for &(col, c) in row {
                for (a, &v) in acc.iter_mut().zip(&self.evaluate(n, col)) {
                    *a = f.mul_add(*a, c, v);
                }
            }
            acc.iter().all(|&v| v == 0)
        })
    }

    /// `F(g): F(M) → F(M')` for a linear `g: M → M'`.
    pub fn map(&self, g: &Mat, target: &FreeModule) -> Result<Mat, AlgebraError> {
        let f = self.module.alg.field();
        if g.cols != self.source_dim || g.rows != target.source_dim {
            return Err(AlgebraError::Shape("linear map between generating spaces".into()));
        }
        let mut cols = Vec::with_capacity(self.dim());
        for j in 0..self.dim() {
            let (c, v) = &self.columns[self.quotient.basis_column(j)];
            let mut image = BTreeMap::new();
            for y in 0..g.rows {
                let coeff = g.get(y, v[0]);
                if coeff != 0 {
                    let mut w = v.clone();
                    w[0] = y;
                    axpy(f, &mut image, coeff, &[(target.column(*c, &w)?, 1)]);
                }
            }
            cols.push(target.quotient.project(&sparse_from(image)));
        }
        Ok(Mat::from_columns(target.dim(), &cols))
    }
}

/// Outcome of the monad-law checks for `F^A_O` on one space `M`.
#[derive(Clone, Debug, Serialize)]
pub struct MonadReport {
    pub dim_m: usize,
    pub dim_fm: usize,
    pub dim_ffm: usize,
    /// `μ ∘ η_F = id`.
    pub left_unit: bool,
    /// `μ ∘ F(η) = id`.
    pub right_unit: bool,
    /// `μ ∘ F(μ) = μ ∘ μ_F` on generators of `F¹(A, FFM)`.
    pub associativity: bool,
    /// The canonical maps of `F(M)` and `F(F(M))` vanish on relations.
    pub well_defined: bool,
}

impl MonadReport {
    pub fn passed(&self) -> bool {
        self.left_unit && self.right_unit && self.associativity && self.well_defined
    }
}

impl OAlgebra {
    /// Checks the monad laws of `F^A_O` at `M = F_p^dim_m`.
    pub fn check_monad_laws(&self, dim_m: usize) -> Result<MonadReport, AlgebraError> {
        let f = self.field();
        let fm = free_oa_module(self, dim_m)?;
        let ffm = free_oa_module(self, fm.dim())?;
        let mu = ffm.canonical(fm.module())?;
        let id = Mat::identity(fm.dim());
        let left_unit = mu.mul(f, &ffm.eta()?) == id;
        let eta_m = fm.eta()?;
        let right_unit = mu.mul(f, &fm.map(&eta_m, &ffm)?) == id;
        // On a generator [c; z, a] of F¹(A, FFM), μ∘F(μ) gives β^{FM}_c(μ z, a)
        // and μ∘μ_F gives μ(β^{FFM}_c(z, a)): μ must be a module map.
        let associativity = is_module_map(ffm.module(), fm.module(), &mu);
        let well_defined = ffm.relations_killed_by(fm.module());
        Ok(MonadReport { dim_m, dim_fm: fm.dim(), dim_ffm: ffm.dim(), left_unit, right_unit, associativity, well_defined })
    }
}
