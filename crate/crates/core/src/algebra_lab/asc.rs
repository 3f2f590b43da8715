use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::discrete::{DiscreteOperad, FULL_UNIT, RHO};
use super::linalg::{axpy, sparse_from, Echelon, Mat, Quotient, Sparse};
use super::oa::{hom_oa, is_module_map, OAModule, OAlgebra};
use super::tensor::{Src, Tensor};
use super::{within_bound, AlgebraError};
use crate::geometry::Color;
use crate::perm::{ColoredPerm, Perm};

/// `A^{sc}` for an algebra `A` over the half-color operad `E` of a discrete
/// swiss-cheese operad: the quotient of `Ā^{sc} = ∐_m P(1,m) ⊗_{S_m} A^{⊗m}`
/// (half-output components with one full input) by the relations
/// `[x ∘_i e; a] = [x; α_e(a)]` for `e ∈ E`, as an E-A module, with the
/// projection `p_A` and the inclusion `ι_A: a ↦ [ρ; a]`.
#[derive(Clone, Debug)]
pub struct ASc {
    sc: Arc<DiscreteOperad>,
    alg: OAlgebra,
    module: OAModule,
    columns: Vec<(usize, Vec<usize>)>,
    index: HashMap<(usize, Vec<usize>), usize>,
    orbit: Vec<Option<(usize, Perm)>>,
    relations: Vec<Sparse>,
    quotient: Quotient,
    p_a: Mat,
    iota: Mat,
}

fn tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let t = Tensor::zeros(dims.to_vec(), 0);
    (0..t.tuples()).map(|i| t.tuple(i)).collect()
}

fn degree_one(sc: &DiscreteOperad, c: usize) -> bool {
    let comp = sc.component(c);
    comp.out == Color::Half && comp.full == 1
}

/// Builds `A^{sc}`. `alg` must be an algebra over `sc.h_color()`.
pub fn a_sc_discrete(sc: Arc<DiscreteOperad>, alg: &OAlgebra) -> Result<ASc, AlgebraError> {
    let e_op = alg.operad();
    let to_sc = |e: usize| sc.require(&e_op.component(e).name);
    let to_e = |s: usize| e_op.require(&sc.component(s).name);
    let f = alg.field();
    let dim_a = alg.dim();

    let mut orbit: Vec<Option<(usize, Perm)>> = vec![None; sc.len()];
    for x in (0..sc.len()).filter(|&x| degree_one(&sc, x)) {
        if orbit[x].is_some() {
            continue;
        }
        for tau in Perm::all(sc.component(x).half) {
            if let Some(e) = sc.act_on(x, &ColoredPerm::new(Perm::identity(1), tau.clone())) {
                if orbit[e].is_none() {
                    orbit[e] = Some((x, tau));
                }
            }
        }
    }
    let reps: Vec<usize> = (0..sc.len()).filter(|&x| orbit[x].as_ref().is_some_and(|(r, _)| *r == x)).collect();
    let mut columns = Vec::new();
    for &x in &reps {
        for t in tuples(&vec![dim_a; sc.component(x).half]) {
            columns.push((x, t));
        }
    }
    let index: HashMap<(usize, Vec<usize>), usize> = columns.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let col = |x: usize, v: &[usize]| -> usize {
        let (rep, tau) = orbit[x].as_ref().expect("degree-one component");
        let mut w = vec![0; v.len()];
        for (i, &a) in v.iter().enumerate() {
            w[tau.apply(i)] = a;
        }
        index[&(*rep, w)]
    };

    let mut relations = Vec::new();
    for &x in &reps {
        for stab in Perm::all(sc.component(x).half).into_iter().filter(|s| !s.is_identity()) {
            if sc.act_on(x, &ColoredPerm::new(Perm::identity(1), stab.clone())) != Some(x) {
                continue;
            }
            for v in tuples(&vec![dim_a; sc.component(x).half]) {
                let mut w = vec![0; v.len()];
                for (i, &a) in v.iter().enumerate() {
                    w[stab.apply(i)] = a;
                }
                let mut acc = BTreeMap::new();
                axpy(f, &mut acc, 1, &[(col(x, &v), 1)]);
                axpy(f, &mut acc, f.neg(1), &[(col(x, &w), 1)]);
                let row = sparse_from(acc);
                if !row.is_empty() {
                    relations.push(row);
                }
            }
        }
    }
    for &(x, pos, e, z) in sc.entries() {
        let ec = sc.component(e);
        if !degree_one(&sc, x) || pos == 0 || ec.out != Color::Half || ec.full != 0 {
            continue;
        }
        let alpha = alg.alpha(to_e(e)?);
        let sources = sc.sources(x, pos, e);
        for t in tuples(&vec![dim_a; sc.component(z).half]) {
            let mut xt = vec![0; sc.component(x).arity()];
            let mut et = vec![0; ec.arity()];
            // input 0 of z is the full input; half inputs follow
            for (s, &v) in sources.iter().skip(1).zip(&t) {
                match *s {
                    Src::X(i) => xt[i] = v,
                    Src::Y(j) => et[j] = v,
                }
            }
            let mut acc = BTreeMap::new();
            axpy(f, &mut acc, 1, &[(col(z, &t), 1)]);
            for (o, &c) in alpha.get(&et).iter().enumerate() {
                if c != 0 {
                    xt[pos] = o;
                    axpy(f, &mut acc, f.neg(c), &[(col(x, &xt[1..]), 1)]);
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
    let quotient = Quotient::new(ech);
    let dim = quotient.dim();

    // E-A module maps: β_c([x; v], b) = [c ∘₀ x; v, b].
    let mut given = Vec::new();
    for &g in alg.module_generators() {
        let gs = to_sc(g)?;
        let k = e_op.component(g).arity();
        let mut dims = vec![dim_a; k];
        dims[0] = dim;
        let mut t_out = Tensor::zeros(dims, dim);
        for flat in 0..t_out.tuples() {
            let t = t_out.tuple(flat);
            let (x, v) = &columns[quotient.basis_column(t[0])];
            let z = sc.partial(gs, 0, *x).ok_or_else(|| AlgebraError::Cutoff {
                reached: sc.component(*x).arity() + k - 1,
                what: "A^sc module action".into(),
            })?;
            let mut w = v.clone();
            w.extend_from_slice(&t[1..]);
            t_out.set(&t, &quotient.project(&[(col(z, &w), 1)]));
        }
        given.push((g, t_out));
    }
    let module = OAModule::new(alg, dim, given)?;

    let unit = sc.require(FULL_UNIT)?;
    let forget = |x: usize| -> Result<usize, AlgebraError> {
        let y = sc.partial(x, 0, unit).ok_or_else(|| AlgebraError::Table("cannot forget the full input".into()))?;
        to_e(y)
    };
    let p_cols = (0..dim)
        .map(|j| {
            let (x, v) = &columns[quotient.basis_column(j)];
            Ok(alg.alpha(forget(*x)?).get(v).to_vec())
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    let p_a = Mat::from_columns(dim_a, &p_cols);
    let rho = sc.require(RHO)?;
    let iota_cols: Vec<Vec<u32>> = (0..dim_a).map(|a| quotient.project(&[(col(rho, &[a]), 1)])).collect();
    let iota = Mat::from_columns(dim, &iota_cols);
    Ok(ASc { sc, alg: alg.clone(), module, columns, index, orbit, relations, quotient, p_a, iota })
}

impl ASc {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Number of generators of `Ā^{sc}`.
    pub fn bar_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn module(&self) -> &OAModule {
        &self.module
    }

    pub fn algebra(&self) -> &OAlgebra {
        &self.alg
    }

    pub fn p_a(&self) -> &Mat {
        &self.p_a
    }

    pub fn iota(&self) -> &Mat {
        &self.iota
    }

    /// The projection `Ā^{sc} → A^{sc}` as a matrix.
    pub fn quotient_map(&self) -> Mat {
        let cols: Vec<Vec<u32>> = (0..self.columns.len()).map(|c| self.quotient.project(&[(c, 1)])).collect();
        Mat::from_columns(self.dim(), &cols)
    }

    /// `p_A` on generators: `[x; a] ↦ α_{x∘₀1}(a)`; checks it vanishes on relations.
    pub fn p_a_well_defined(&self) -> Result<bool, AlgebraError> {
        let f = self.alg.field();
        let unit = self.sc.require(FULL_UNIT)?;
        let e_op = self.alg.operad();
        let mut values = Vec::with_capacity(self.columns.len());
        for (x, v) in &self.columns {
            let y = self.sc.partial(*x, 0, unit).ok_or_else(|| AlgebraError::Table("forget".into()))?;
            let e = e_op.require(&self.sc.component(y).name)?;
            values.push(self.alg.alpha(e).get(v).to_vec());
        }
        Ok(self.relations.iter().all(|row| {
            let mut acc = vec![0; self.alg.dim()];
            for &(c, k) in row {
                for (a, &v) in acc.iter_mut().zip(&values[c]) {
                    *a = f.mul_add(*a, k, v);
                }
            }
            acc.iter().all(|&v| v == 0)
        }))
    }

    /// `A^{sc}(g): A^{sc} → B^{sc}` for an algebra map `g: A → B`.
    pub fn functor_map(&self, target: &ASc, g: &Mat) -> Result<Mat, AlgebraError> {
        let f = self.alg.field();
        let mut cols = Vec::new();
        for j in 0..self.dim() {
            let (x, v) = &self.columns[self.quotient.basis_column(j)];
            let mut terms: Vec<(Vec<usize>, u32)> = vec![(vec![], 1)];
            for &a in v {
                let mut next = Vec::new();
                for (prefix, c) in &terms {
                    for b in 0..g.rows {
                        let k = g.get(b, a);
                        if k != 0 {
                            let mut p = prefix.clone();
                            p.push(b);
                            next.push((p, f.mul(*c, k)));
                        }
                    }
                }
                terms = next;
            }
            let name = &self.sc.component(*x).name;
            let tx = target.sc.require(name)?;
            let mut acc = BTreeMap::new();
            for (w, c) in terms {
                let key = target.rep_column(tx, &w)?;
                axpy(f, &mut acc, c, &[(key, 1)]);
            }
            cols.push(target.quotient.project(&sparse_from(acc)));
        }
        Ok(Mat::from_columns(target.dim(), &cols))
    }

    fn rep_column(&self, x: usize, v: &[usize]) -> Result<usize, AlgebraError> {
        let (rep, tau) = self.orbit[x].as_ref().ok_or_else(|| AlgebraError::Table("not a degree-one component".into()))?;
        let mut w = vec![0; v.len()];
        for (i, &a) in v.iter().enumerate() {
            w[tau.apply(i)] = a;
        }
        self.index.get(&(*rep, w)).copied().ok_or_else(|| AlgebraError::Table("missing generator".into()))
    }
}

/// `Hoch(A) = hom_{E-A}(A^{sc}, A)` with the comparison `Φ(f) = f ∘ ι_A`
/// to `hom(A, A)`.
#[derive(Clone, Debug)]
pub struct Hochschild {
    pub asc: ASc,
    pub regular: OAModule,
    /// A basis of `hom_{E-A}(A^{sc}, A)`.
    pub basis: Vec<Mat>,
    /// `Φ` in coordinates: column `i` is `basis[i] ∘ ι_A`, flattened row by row.
    pub phi: Mat,
}

impl Hochschild {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Φ` is an isomorphism onto `hom(A, A)`.
    pub fn is_isomorphism(&self) -> bool {
        let f = self.regular.algebra().field();
        let n = self.regular.dim();
        self.phi.rows == n * n && self.phi.cols == n * n && self.phi.rank(f) == n * n
    }

    /// `p_A` is a module map and `Φ(p_A) = id_A`.
    pub fn sends_p_a_to_identity(&self) -> bool {
        let f = self.regular.algebra().field();
        is_module_map(self.asc.module(), &self.regular, self.asc.p_a())
            && self.asc.p_a().mul(f, self.asc.iota()) == Mat::identity(self.regular.dim())
    }
}

/// The Hochschild object of a pointed space `A` (an algebra over `π₀E₀`)
/// through the `A^{sc}` route; `alg` is an algebra over `sc.h_color()`.
pub fn hochschild_d1(sc: Arc<DiscreteOperad>, alg: &OAlgebra) -> Result<Hochschild, AlgebraError> {
    let f = alg.field();
    let asc = a_sc_discrete(sc, alg)?;
    let regular = OAModule::regular(alg)?;
    let basis = hom_oa(asc.module(), &regular)?;
    let cols: Vec<Vec<u32>> = basis.iter().map(|b| b.mul(f, asc.iota()).data).collect();
    let n = alg.dim();
    let phi = Mat::from_columns(n * n, &cols);
    Ok(Hochschild { asc, regular, basis, phi })
}

/// Both sides of "degree ≤ 1 extension data on `(A, M)` are module maps
/// `A^{sc} → M`", counted.
#[derive(Clone, Debug, Serialize)]
pub struct ModScBijection {
    /// Maps `ψ: Ā^{sc} → M` satisfying the relations and the module equations.
    pub extensions: usize,
    /// `|hom_{E-A}(A^{sc}, M)|`.
    pub module_maps: usize,
    /// Every extension factors as `ψ̄ ∘ q` with `ψ̄` a module map, and every
    /// module map precomposed with `q` is an extension.
    pub mutually_inverse: bool,
}

impl ModScBijection {
    pub fn is_bijection(&self) -> bool {
        self.extensions == self.module_maps && self.mutually_inverse
    }
}

/// Enumerates all `ψ: Ā^{sc} → M` by brute force and compares with
/// `hom_{E-A}(A^{sc}, M)`.
pub fn mod_sc_leq1_bijection(asc: &ASc, m: &OAModule, bound: u128) -> Result<ModScBijection, AlgebraError> {
    let f = asc.alg.field();
    let bar = asc.columns.len();
    let count = within_bound(f.p(), bar * m.dim(), bound)?;
    let e_op = asc.alg.operad();
    // generator-level module equations: ψ[c ∘₀ x; v, b] = β_c(ψ[x; v], b)
    let mut module_eqs: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
    for c in (0..e_op.len()).filter(|&c| e_op.component(c).arity() >= 1) {
        let cs = asc.sc.require(&e_op.component(c).name)?;
        for (j, (x, v)) in asc.columns.iter().enumerate() {
            let Some(z) = asc.sc.partial(cs, 0, *x) else { continue };
            for b in tuples(&vec![asc.alg.dim(); e_op.component(c).arity() - 1]) {
                let mut w = v.clone();
                w.extend_from_slice(&b);
                module_eqs.push((c, j, b, asc.rep_column(z, &w)?));
            }
        }
    }
    let satisfies = |psi: &Mat| -> bool {
        let rel_ok = asc.relations.iter().all(|row| {
            let mut acc = vec![0; m.dim()];
            for &(col, k) in row {
                for (i, a) in acc.iter_mut().enumerate() {
                    *a = f.mul_add(*a, k, psi.get(i, col));
                }
            }
            acc.iter().all(|&v| v == 0)
        });
        rel_ok
            && module_eqs.iter().all(|(c, j, b, zcol)| {
                let mut args = vec![psi.column(*j)];
                args.extend(b.iter().map(|&a| {
                    let mut e = vec![0; asc.alg.dim()];
                    e[a] = 1;
                    e
                }));
                m.beta(*c).apply(f, &args) == psi.column(*zcol)
            })
    };
    let q = asc.quotient_map();
    let extensions: Vec<Mat> = (0..count as u64)
        .into_par_iter()
        .map(|i| Mat { rows: m.dim(), cols: bar, data: f.vector(bar * m.dim(), i) })
        .filter(|psi| satisfies(psi))
        .collect();
    let hom = hom_oa(asc.module(), m)?;
    let module_maps = within_bound(f.p(), hom.len(), bound)? as usize;
    let descend = extensions.iter().all(|psi| {
        let cols: Vec<Vec<u32>> = (0..asc.dim()).map(|j| psi.column(asc.quotient.basis_column(j))).collect();
        let bar_psi = Mat::from_columns(m.dim(), &cols);
        is_module_map(asc.module(), m, &bar_psi) && bar_psi.mul(f, &q) == *psi
    });
    let lift = (0..module_maps as u64).all(|i| {
        let coeffs = f.vector(hom.len(), i);
        let mut g = Mat::zeros(m.dim(), asc.dim());
        for (b, &c) in hom.iter().zip(&coeffs) {
            for (d, &v) in g.data.iter_mut().zip(&b.data) {
                *d = f.mul_add(*d, c, v);
            }
        }
        satisfies(&g.mul(f, &q))
    });
    Ok(ModScBijection { extensions: extensions.len(), module_maps, mutually_inverse: descend && lift })
}
