use std::sync::Arc;

use operad_forge::algebra_lab::*;
use operad_forge::geometry::*;
use operad_forge::perm::{ColoredPerm, Perm};
use proptest::prelude::*;

const BOUND: u128 = 1 << 24;

fn f2() -> Fp {
    Fp::new(2).unwrap()
}

fn f3() -> Fp {
    Fp::new(3).unwrap()
}

fn e(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Structure constants given as a function of basis indices.
fn algebra(f: Fp, dim: usize, unit: Vec<u32>, table: impl Fn(usize, usize) -> Vec<u32>) -> AssocAlgebra {
    let mul = Tensor::from_fn(vec![dim, dim], dim, |t| table(t[0], t[1]));
    AssocAlgebra::new(f, mul, unit).unwrap()
}

/// `F₂[x]/x²` on the basis `1, x`.
fn dual_numbers() -> AssocAlgebra {
    algebra(f2(), 2, vec![1, 0], |i, j| match (i, j) {
        (0, k) | (k, 0) => e(2, k),
        _ => vec![0, 0],
    })
}

/// `F₂ × F₂` on its two idempotents.
fn split() -> AssocAlgebra {
    algebra(f2(), 2, vec![1, 1], |i, j| if i == j { e(2, i) } else { vec![0, 0] })
}

/// Upper triangular 2×2 matrices on `E11, E12, E22`; not commutative.
fn upper_triangular() -> AssocAlgebra {
    algebra(f2(), 3, vec![1, 0, 1], |i, j| match (i, j) {
        (0, 0) => e(3, 0),
        (0, 1) | (1, 2) => e(3, 1),
        (2, 2) => e(3, 2),
        _ => vec![0; 3],
    })
}

fn all_vectors(f: Fp, n: usize) -> Vec<Vec<u32>> {
    (0..f.count(n).unwrap()).map(|i| f.vector(n, i)).collect()
}

fn all_matrices(f: Fp, rows: usize, cols: usize) -> Vec<Mat> {
    (0..f.count(rows * cols).unwrap())
        .map(|i| Mat { rows, cols, data: f.vector(rows * cols, i) })
        .collect()
}

// ---------- fields and linear algebra ----------

#[test]
fn field_rejects_composites_and_inverts() {
    assert_eq!(Fp::new(4), Err(AlgebraError::NotPrime(4)));
    assert!(Fp::new(1).is_err());
    for p in [2, 3, 5, 7, 65521] {
        let f = Fp::new(p).unwrap();
        for a in (1..p.min(200)).chain([p - 1]) {
            assert_eq!(f.mul(a, f.inv(a)), 1, "p={p} a={a}");
        }
    }
    let f = Fp::new(7).unwrap();
    let x = f.scalar(3);
    assert_eq!((x * x.inv()).value(), 1);
    assert_eq!((-x).value(), 4);
    assert_eq!(f.scalar(-1).value(), 6);
    assert_eq!(x.to_string(), "3 mod 7");
    assert_eq!(f.count(3), Some(343));
}

#[test]
fn vectors_enumerate_without_repeats() {
    let f = f3();
    let mut seen = all_vectors(f, 3);
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 27);
}

fn arb_mat(p: u32) -> impl Strategy<Value = Mat> {
    (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(0..p, r * c).prop_map(move |data| Mat { rows: r, cols: c, data })
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in arb_mat(3)) {
        let f = f3();
        let null = m.nullspace(f);
        prop_assert_eq!(m.rank(f) + null.len(), m.cols);
        for v in &null {
            prop_assert!(m.apply(f, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_is_two_sided(m in arb_mat(5)) {
        let f = Fp::new(5).unwrap();
        if let Some(inv) = m.inverse(f) {
            prop_assert_eq!(m.rows, m.cols);
            prop_assert_eq!(m.mul(f, &inv), Mat::identity(m.rows));
            prop_assert_eq!(inv.mul(f, &m), Mat::identity(m.rows));
        } else {
            prop_assert!(m.rows != m.cols || m.rank(f) < m.rows);
        }
    }

    #[test]
    fn tensor_permute_round_trips(data in proptest::collection::vec(0u32..2, 2 * 3 * 2 * 2)) {
        let t = Tensor { inputs: vec![2, 3, 2], out: 2, data };
        let sigma = Perm(vec![2, 0, 1]);
        let back = t.permute(&sigma.0).permute(&sigma.inverse().0);
        prop_assert_eq!(back, t);
    }
}

#[test]
fn nullspace_matches_brute_force() {
    let f = f2();
    for m in all_matrices(f, 2, 3) {
        let kernel = all_vectors(f, 3).into_iter().filter(|v| m.apply(f, v).iter().all(|&x| x == 0)).count();
        assert_eq!(kernel, 1 << m.nullspace(f).len());
    }
}

#[test]
fn quotient_projects_onto_complement() {
    let f = f3();
    let mut ech = Echelon::new(f, 3);
    ech.insert(&[(0, 1), (1, 2)]);
    let q = Quotient::new(ech);
    assert_eq!(q.dim(), 2);
    assert!(q.is_zero(&[(0, 1), (1, 2)]));
    assert!(q.is_zero(&[(0, 2), (1, 1)]));
    assert!(!q.is_zero(&[(2, 1)]));
}

// ---------- algebras ----------

#[test]
fn end_algebra_small_cases() {
    let f = f2();
    let one = end_algebra(f, 1);
    assert_eq!(one.dim(), 1);
    assert_eq!(one.mul(&[1], &[1]), vec![1]);
    assert_eq!(one.unit(), &[1]);
    assert_eq!(f.count(end_algebra(f, 2).dim()), Some(16));
    for p in [2, 3] {
        let f = Fp::new(p).unwrap();
        for d in 0..=2 {
            let end = end_algebra(f, d);
            let again = AssocAlgebra::new(f, end.mul_tensor().clone(), end.unit().to_vec());
            assert!(again.is_ok(), "p={p} d={d}");
        }
    }
}

#[test]
fn end_algebra_multiplies_as_composition() {
    let f = f3();
    let end = end_algebra(f, 2);
    let as_mat = |v: &[u32]| Mat { rows: 2, cols: 2, data: v.to_vec() };
    for a in all_vectors(f, 4).iter().step_by(7) {
        for b in all_vectors(f, 4).iter().step_by(5) {
            assert_eq!(as_mat(&end.mul(a, b)), as_mat(a).mul(f, &as_mat(b)));
        }
    }
}

#[test]
fn rejects_non_algebras() {
    let f = f2();
    // x·y = y on F₂²: associative, left unit only
    let right = Tensor::from_fn(vec![2, 2], 2, |t| e(2, t[1]));
    assert_eq!(AssocAlgebra::new(f, right, vec![1, 0]).unwrap_err(), AlgebraError::NotUnital);
    // unital on 1, x, y with x·y = y and all other products of x, y zero
    let bad = Tensor::from_fn(vec![3, 3], 3, |t| match (t[0], t[1]) {
        (0, k) | (k, 0) => e(3, k),
        (1, 2) => e(3, 2),
        _ => vec![0; 3],
    });
    assert_eq!(AssocAlgebra::new(f, bad, vec![1, 0, 0]).unwrap_err(), AlgebraError::NotAssociative);
}

#[test]
fn unital_algebra_counts() {
    // Orbit counts under GL_d: dim 1 over F_p has |GL_1| = p - 1 structures
    // all isomorphic to F_p (trivial automorphisms); dim 2 over F₂ has the
    // classes F₂×F₂, F₄, F₂[x]/x² with automorphism groups of order 2, 2, 1
    // in GL_2(F₂) of order 6, giving 3 + 3 + 6.
    assert_eq!(AssocAlgebra::enumerate_unital(f2(), 1, BOUND).unwrap().len(), 1);
    assert_eq!(AssocAlgebra::enumerate_unital(f3(), 1, BOUND).unwrap().len(), 2);
    assert_eq!(AssocAlgebra::enumerate_unital(f2(), 2, BOUND).unwrap().len(), 12);
    assert_eq!(AssocAlgebra::enumerate_unital(f2(), 0, BOUND).unwrap().len(), 1);
    assert!(matches!(
        AssocAlgebra::enumerate_unital(f3(), 3, 1000),
        Err(AlgebraError::EnumerationBound { .. })
    ));
}

#[test]
fn algebra_json_round_trip() {
    for a in [dual_numbers(), split(), upper_triangular(), end_algebra(f3(), 2)] {
        let json = a.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back: AlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(AssocAlgebra::from_json(&back).unwrap(), a);
    }
    let text = r#"{"p":2,"dim":1,"mul":[[[0,1]]],"unit":[1]}"#;
    let json: AlgebraJson = serde_json::from_str(text).unwrap();
    assert_eq!(AssocAlgebra::from_json(&json).unwrap(), AssocAlgebra::ground(f2()));
    let broken: AlgebraJson = serde_json::from_str(r#"{"p":2,"dim":1,"mul":[[]],"unit":[1]}"#).unwrap();
    assert!(AssocAlgebra::from_json(&broken).is_err());
    let composite: AlgebraJson = serde_json::from_str(r#"{"p":6,"dim":1,"mul":[[[0,1]]],"unit":[1]}"#).unwrap();
    assert!(AssocAlgebra::from_json(&composite).is_err());
}

#[test]
fn opposite_and_algebra_maps() {
    let u = upper_triangular();
    let op = u.opposite();
    let (a, b) = (e(3, 0), e(3, 1));
    assert_eq!(u.mul(&a, &b), op.mul(&b, &a));
    assert_ne!(u.mul(&a, &b), u.mul(&b, &a));
    assert!(u.is_algebra_map(&u, &Mat::identity(3)));
    // augmentation x ↦ 0 of the dual numbers
    let eps = Mat { rows: 1, cols: 2, data: vec![1, 0] };
    assert!(dual_numbers().is_algebra_map(&AssocAlgebra::ground(f2()), &eps));
    // projection onto a factor of F₂ × F₂
    let proj = Mat { rows: 1, cols: 2, data: vec![1, 0] };
    assert!(split().is_algebra_map(&AssocAlgebra::ground(f2()), &proj));
    assert!(!dual_numbers().is_algebra_map(&AssocAlgebra::ground(f2()), &Mat { rows: 1, cols: 2, data: vec![1, 1] }));
}

#[test]
fn module_map_bijection_examples() {
    for (b, expected) in [(AssocAlgebra::ground(f2()), 1), (dual_numbers(), 1), (split(), 2)] {
        let res = module_map_bijection(&b, 1, BOUND).unwrap();
        assert_eq!(res.modules.len(), expected);
        assert_eq!(res.maps.len(), expected);
        assert!(res.is_bijection());
    }
}

/// Unital algebra maps `B → M_n(F)`, counted straight from the matrices.
fn count_algebra_maps_to_matrices(b: &AssocAlgebra, n: usize) -> usize {
    let f = b.field();
    let end = end_algebra(f, n);
    all_matrices(f, n * n, b.dim()).iter().filter(|m| b.is_algebra_map(&end, m)).count()
}

#[test]
fn module_counts_on_two_dimensional_modules() {
    // x ↦ N with N² = 0 in M₂(F₂): zero and three rank-one nilpotents.
    assert_eq!(module_map_bijection(&dual_numbers(), 2, BOUND).unwrap().modules.len(), 4);
    // idempotents of M₂(F₂): 0, 1 and six rank-one projections.
    assert_eq!(module_map_bijection(&split(), 2, BOUND).unwrap().modules.len(), 8);
    for b in AssocAlgebra::enumerate_unital(f2(), 2, BOUND).unwrap() {
        let res = module_map_bijection(&b, 2, BOUND).unwrap();
        assert!(res.is_bijection());
        assert_eq!(res.maps.len(), count_algebra_maps_to_matrices(&b, 2));
    }
}

#[test]
fn linear_maps_are_all_enumerated() {
    let maps = enumerate_linear_maps(f3(), 2, 1, BOUND).unwrap();
    assert_eq!(maps.len(), 9);
    assert!(enumerate_linear_maps(f3(), 4, 4, 1000).is_err());
}

// ---------- discrete operads ----------

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn pi0_sc1_component_counts() {
    for k in 1..=4 {
        let op = DiscreteOperad::pi0_sc1(k);
        let full = (0..=k).map(factorial).sum::<usize>();
        let half = (0..=k).map(factorial).sum::<usize>() + (0..k).map(factorial).sum::<usize>();
        assert_eq!(op.len(), full + half, "cutoff {k}");
        assert!(op.components().iter().all(|c| c.half <= 1 && (c.out == Color::Half || c.half == 0)));
    }
    let assoc = DiscreteOperad::assoc(3);
    assert_eq!(assoc.len(), 1 + 1 + 2 + 6);
    assert_eq!(DiscreteOperad::trivial().len(), 1);
    assert_eq!(DiscreteOperad::e0().len(), 2);
    assert_eq!(DiscreteOperad::pi0_sc1(3).h_color().len(), 2);
}

/// Parses a component name like `h[h1 f2 f1]` into its output color and
/// labels, left to right.
fn parse_word(name: &str) -> (Color, Vec<(Color, usize)>) {
    let out = if name.starts_with('f') { Color::Full } else { Color::Half };
    let inner = &name[2..name.len() - 1];
    let labels = inner
        .split_whitespace()
        .map(|l| {
            let color = if l.starts_with('f') { Color::Full } else { Color::Half };
            (color, l[1..].parse::<usize>().unwrap() - 1)
        })
        .collect();
    (out, labels)
}

/// A 1-dimensional configuration whose discs appear in the order of the word.
fn realize(name: &str) -> Configuration {
    let (out, labels) = parse_word(name);
    let len = labels.len().max(1) as i64;
    let n_full = labels.iter().filter(|l| l.0 == Color::Full).count();
    let mut discs = vec![None; labels.len()];
    for (k, &(color, idx)) in labels.iter().enumerate() {
        let k = k as i64;
        let slot = if color == Color::Full { idx } else { n_full + idx };
        discs[slot] = Some(match (out, color) {
            (Color::Full, _) => LittleDisc::full(ratio(1, 2 * len), vec![ratio(2 * k + 1 - len, len)]),
            (Color::Half, Color::Half) => LittleDisc::half(ratio(1, 2 * len), vec![]),
            (Color::Half, Color::Full) => LittleDisc::full(ratio(1, 4 * len), vec![ratio(2 * k + 1, 2 * len)]),
        });
    }
    let cfg = Configuration::new(1, out, discs.into_iter().map(Option::unwrap).collect());
    assert!(validate_config(&cfg).is_ok(), "{name}");
    cfg
}

fn read_word(cfg: &Configuration) -> String {
    let prefix = if cfg.target == Color::Full { "f" } else { "h" };
    let labels: Vec<String> = pi0_invariant_d1(cfg).unwrap().iter().map(|l| l.to_string()).collect();
    format!("{prefix}[{}]", labels.join(" "))
}

#[test]
fn pi0_sc1_table_agrees_with_geometry() {
    for op in [DiscreteOperad::pi0_sc1(4), DiscreteOperad::assoc(4), DiscreteOperad::sc1_leq1()] {
        table_agrees_with_geometry(&op);
    }
}

fn table_agrees_with_geometry(op: &DiscreteOperad) {
    for c in op.components() {
        assert_eq!(read_word(&realize(&c.name)), c.name);
    }
    for &(x, pos, y, z) in op.entries() {
        let outer = realize(&op.component(x).name);
        let mut inputs: Vec<Configuration> = outer.input_colors().into_iter().map(|c| identity_config(1, c)).collect();
        inputs[pos] = realize(&op.component(y).name);
        let composed = compose(&outer, &inputs).unwrap();
        assert_eq!(read_word(&composed), op.component(z).name, "{} ∘_{pos} {}", op.component(x).name, op.component(y).name);
    }
    for (x, perm, z) in op.action_entries() {
        let moved = sigma_act(&realize(&op.component(*x).name), perm).unwrap();
        assert_eq!(read_word(&moved), op.component(*z).name);
    }
}

#[test]
fn pi0_sc1_is_total_below_the_cutoff() {
    let op = DiscreteOperad::pi0_sc1(3);
    for x in 0..op.len() {
        let cx = op.component(x);
        for pos in 0..cx.arity() {
            for y in 0..op.len() {
                let cy = op.component(y);
                if cy.out == cx.slot_color(pos) && cx.arity() - 1 + cy.arity() <= 3 {
                    assert!(op.partial(x, pos, y).is_some(), "{} ∘_{pos} {}", cx.name, cy.name);
                }
            }
        }
    }
}

#[test]
fn discrete_operads_satisfy_the_axioms() {
    for op in [
        DiscreteOperad::pi0_sc1(3),
        DiscreteOperad::assoc(3),
        DiscreteOperad::sc1_leq1(),
        DiscreteOperad::e0(),
        DiscreteOperad::trivial(),
    ] {
        let report = check_discrete_axioms(&op);
        assert!(report.passed(), "{}: {:?}", op.name(), report.witnesses);
        assert!(report.cases > 0 || op.len() == 1);
    }
}

#[test]
fn ordering_models_rebuild_the_named_operads() {
    let model = OrderingModel { name: "sc".into(), cutoff: 3, full_out: vec![0, 1, 2, 3], half_degrees: vec![0, 1, 2, 3] };
    assert_eq!(model.build().to_json().arity_components, DiscreteOperad::pi0_sc1(3).to_json().arity_components);
}

#[test]
fn operad_json_round_trip_and_validation() {
    for op in [DiscreteOperad::pi0_sc1(3), DiscreteOperad::sc1_leq1(), DiscreteOperad::assoc(3)] {
        let json = op.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back = DiscreteOperad::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.to_json(), json);
    }
    let mut json = DiscreteOperad::assoc(2).to_json();
    let k = json.composition.iter().position(|c| c.3 != "f[]").unwrap();
    json.composition[k].3 = "f[]".into();
    assert!(DiscreteOperad::from_json(&json).is_err());
}

// ---------- actions and the swiss-cheese check ----------

/// `ρ(b, a) = a·b`: `A = B` as a right module over itself.
fn right_regular(b: &AssocAlgebra) -> Tensor {
    let d = b.dim();
    Tensor::from_fn(vec![d, d], d, |t| b.mul(&e(d, t[1]), &e(d, t[0])))
}

fn left_regular(b: &AssocAlgebra) -> Tensor {
    let d = b.dim();
    Tensor::from_fn(vec![d, d], d, |t| b.mul(&e(d, t[0]), &e(d, t[1])))
}

#[test]
fn right_regular_action_passes() {
    let op = DiscreteOperad::pi0_sc1(3);
    for b in [dual_numbers(), split(), upper_triangular()] {
        let a0 = b.unit().to_vec();
        let data = ScActionData::from_rho(b.field(), right_regular(&b), a0);
        let failures = check_action_diagrams(&op, &b, &data).unwrap();
        assert!(failures.is_empty(), "{:?}", failures.first().map(|f| f.to_string()));
    }
    // on a non-commutative algebra the left action is the wrong handedness
    let u = upper_triangular();
    let data = ScActionData::from_rho(u.field(), left_regular(&u), u.unit().to_vec());
    assert!(!check_action_diagrams(&op, &u, &data).unwrap().is_empty());
}

#[test]
fn mutated_actions_fail() {
    let op = DiscreteOperad::pi0_sc1(3);
    let b = dual_numbers();
    let base = ScActionData::from_rho(f2(), right_regular(&b), b.unit().to_vec());
    for k in 0..base.rho.data.len() {
        let mut rho = base.rho.clone();
        rho.data[k] ^= 1;
        let data = ScActionData { rho, ..base.clone() };
        assert!(!check_action_diagrams(&op, &b, &data).unwrap().is_empty(), "flip {k}");
    }
    for k in 0..base.phi.data.len() {
        let mut phi = base.phi.clone();
        phi.data[k] ^= 1;
        let data = ScActionData { phi, ..base.clone() };
        assert!(!check_action_diagrams(&op, &b, &data).unwrap().is_empty(), "flip {k}");
    }
}

#[test]
fn zero_module_passes_vacuously() {
    let op = DiscreteOperad::pi0_sc1(3);
    for b in [dual_numbers(), upper_triangular()] {
        let d = b.dim();
        let data = ScActionData { a0: vec![], rho: Tensor::zeros(vec![d, 0], 0), phi: Tensor::zeros(vec![d], 0) };
        assert!(check_action_diagrams(&op, &b, &data).unwrap().is_empty());
    }
}

#[test]
fn checker_derives_every_component_from_the_generators() {
    for op in [DiscreteOperad::pi0_sc1(4), DiscreteOperad::sc1_leq1()] {
        let given: Vec<usize> =
            ["f[f1 f2]", "f[]", "h[]", "h[h1 f1]", "h[f1]"].iter().filter_map(|n| op.id(n)).collect();
        let checker = ActionChecker::full(&op, &given);
        assert!(checker.underived().is_empty(), "{}", op.name());
    }
}

// ---------- O-algebras and modules ----------

fn assoc_algebra(k: usize, b: &AssocAlgebra) -> OAlgebra {
    OAlgebra::assoc(Arc::new(DiscreteOperad::assoc(k)), b).unwrap()
}

fn trivial_algebra(f: Fp, dim: usize) -> OAlgebra {
    OAlgebra::new(Arc::new(DiscreteOperad::trivial()), f, dim, vec![]).unwrap()
}

#[test]
fn free_module_over_the_identity_operad_is_m() {
    for dim in 0..=3 {
        let free = free_oa_module(&trivial_algebra(f3(), 2), dim).unwrap();
        assert_eq!(free.dim(), dim);
        assert_eq!(free.eta().unwrap(), Mat::identity(dim));
    }
}

#[test]
fn free_assoc_module_dimension() {
    // Assoc-A modules are A-bimodules; the free one on M is A ⊗ M ⊗ A.
    assert_eq!(free_oa_module(&assoc_algebra(4, &AssocAlgebra::ground(f2())), 1).unwrap().dim(), 1);
    for b in [dual_numbers(), split(), upper_triangular()] {
        for dm in 1..=2 {
            let free = free_oa_module(&assoc_algebra(4, &b), dm).unwrap();
            assert_eq!(free.dim(), dm * b.dim() * b.dim(), "dim A = {}", b.dim());
            assert!(free.module().failures().is_empty());
        }
    }
}

#[test]
fn free_module_reports_an_insufficient_cutoff() {
    let res = free_oa_module(&assoc_algebra(2, &dual_numbers()), 1);
    assert!(matches!(res, Err(AlgebraError::Cutoff { .. })), "{res:?}");
}

#[test]
fn monad_laws_exhaustive_small() {
    let mut algebras = AssocAlgebra::enumerate_unital(f2(), 1, BOUND).unwrap();
    algebras.extend(AssocAlgebra::enumerate_unital(f2(), 2, BOUND).unwrap());
    for b in &algebras {
        let alg = assoc_algebra(4, b);
        for dm in 0..=2 {
            let report = alg.check_monad_laws(dm).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.dim_fm, dm * b.dim() * b.dim());
            assert_eq!(report.dim_ffm, dm * b.dim().pow(4));
        }
    }
    let report = trivial_algebra(f2(), 2).check_monad_laws(2).unwrap();
    assert!(report.passed() && report.dim_fm == 2 && report.dim_ffm == 2);
}

#[test]
fn canonical_map_is_a_module_map_and_splits_eta() {
    let alg = assoc_algebra(4, &dual_numbers());
    let regular = OAModule::regular(&alg).unwrap();
    let free = free_oa_module(&alg, regular.dim()).unwrap();
    let eps = free.canonical(&regular).unwrap();
    assert!(is_module_map(free.module(), &regular, &eps));
    assert_eq!(eps.mul(f2(), &free.eta().unwrap()), Mat::identity(regular.dim()));
    assert!(free.relations_killed_by(&regular));
}

#[test]
fn hom_contains_identity_and_matches_brute_force() {
    let f = f2();
    let mut algebras = vec![AssocAlgebra::ground(f)];
    algebras.extend(AssocAlgebra::enumerate_unital(f, 2, BOUND).unwrap());
    for b in &algebras {
        let alg = assoc_algebra(4, b);
        let regular = OAModule::regular(&alg).unwrap();
        let free = free_oa_module(&alg, 1).unwrap();
        for (src, tgt) in [(&regular, &regular), (free.module(), &regular), (&regular, free.module())] {
            let basis = hom_oa(src, tgt).unwrap();
            if src.dim() == tgt.dim() && std::ptr::eq(src, tgt) {
                assert!(is_module_map(src, tgt, &Mat::identity(src.dim())));
            }
            let brute = all_matrices(f, tgt.dim(), src.dim()).iter().filter(|m| is_module_map(src, tgt, m)).count();
            assert_eq!(brute, 1 << basis.len());
        }
    }
}

#[test]
fn hom_over_the_identity_operad_is_everything() {
    let alg = trivial_algebra(f3(), 1);
    let m = OAModule::new(&alg, 2, vec![]).unwrap();
    let n = OAModule::new(&alg, 3, vec![]).unwrap();
    assert_eq!(hom_oa(&m, &n).unwrap().len(), 6);
}

#[test]
fn bimodule_homs_of_the_regular_module_are_the_center() {
    // hom_{A-A}(A, A) ≅ Z(A): for upper triangular matrices the center is
    // the scalars.
    let alg = assoc_algebra(4, &upper_triangular());
    let regular = OAModule::regular(&alg).unwrap();
    assert_eq!(hom_oa(&regular, &regular).unwrap().len(), 1);
    let alg = assoc_algebra(4, &split());
    let regular = OAModule::regular(&alg).unwrap();
    assert_eq!(hom_oa(&regular, &regular).unwrap().len(), 2);
}

#[test]
fn free_module_maps_are_functorial() {
    let f = f2();
    let alg = assoc_algebra(4, &split());
    let f1 = free_oa_module(&alg, 1).unwrap();
    let f2m = free_oa_module(&alg, 2).unwrap();
    let g = Mat { rows: 2, cols: 1, data: vec![1, 1] };
    let h = Mat { rows: 1, cols: 2, data: vec![0, 1] };
    let fg = f1.map(&g, &f2m).unwrap();
    assert!(is_module_map(f1.module(), f2m.module(), &fg));
    let fh = f2m.map(&h, &f1).unwrap();
    assert_eq!(fh.mul(f, &fg), f1.map(&h.mul(f, &g), &f1).unwrap());
    assert_eq!(f1.map(&Mat::identity(1), &f1).unwrap(), Mat::identity(f1.dim()));
}

// ---------- A^{sc} and the Hochschild object ----------

fn pointed(sc: &Arc<DiscreteOperad>, f: Fp, a0: Vec<u32>) -> OAlgebra {
    OAlgebra::pointed(Arc::new(sc.h_color()), f, a0).unwrap()
}

#[test]
fn a_sc_recovers_a() {
    let sc = Arc::new(DiscreteOperad::pi0_sc1(4));
    for f in [f2(), f3()] {
        for dim in 0..=2 {
            for a0 in all_vectors(f, dim) {
                let alg = pointed(&sc, f, a0.clone());
                let asc = a_sc_discrete(sc.clone(), &alg).unwrap();
                assert_eq!(asc.dim(), dim);
                assert_eq!(asc.p_a().rank(f), dim);
                assert!(asc.p_a_well_defined().unwrap());
                let regular = OAModule::regular(&alg).unwrap();
                assert!(is_module_map(asc.module(), &regular, asc.p_a()));
                assert_eq!(asc.p_a().mul(f, asc.iota()), Mat::identity(dim));
            }
        }
    }
}

#[test]
fn a_sc_is_natural() {
    let f = f3();
    let sc = Arc::new(DiscreteOperad::pi0_sc1(4));
    let a = pointed(&sc, f, vec![1, 0]);
    let b = pointed(&sc, f, vec![2, 1, 0]);
    // a pointed map: e0 ↦ (2, 1, 0), e1 ↦ (0, 0, 1)
    let g = Mat::from_columns(3, &[vec![2, 1, 0], vec![0, 0, 1]]);
    let asc_a = a_sc_discrete(sc.clone(), &a).unwrap();
    let asc_b = a_sc_discrete(sc.clone(), &b).unwrap();
    let lifted = asc_a.functor_map(&asc_b, &g).unwrap();
    assert_eq!(asc_b.p_a().mul(f, &lifted), g.mul(f, asc_a.p_a()));
    assert!(is_module_map(asc_a.module(), asc_b.module(), &lifted));
}

#[test]
fn hochschild_is_endomorphisms() {
    let sc = Arc::new(DiscreteOperad::pi0_sc1(4));
    for (f, dim, expected) in [(f2(), 1, 1), (f2(), 2, 4), (f3(), 2, 4), (f2(), 3, 9)] {
        let mut a0 = vec![0; dim];
        a0[0] = 1;
        let hoch = hochschild_d1(sc.clone(), &pointed(&sc, f, a0)).unwrap();
        assert_eq!(hoch.dim(), expected);
        assert!(hoch.is_isomorphism());
        assert!(hoch.sends_p_a_to_identity());
    }
}

#[test]
fn mod_sc_counting_bijection() {
    let f = f2();
    let sc = Arc::new(DiscreteOperad::pi0_sc1(4));
    for dim in 0..=2 {
        for a0 in all_vectors(f, dim) {
            let alg = pointed(&sc, f, a0);
            let asc = a_sc_discrete(sc.clone(), &alg).unwrap();
            for dm in 0..=2 {
                let m = OAModule::new(&alg, dm, vec![]).unwrap();
                let res = mod_sc_leq1_bijection(&asc, &m, BOUND).unwrap();
                assert!(res.is_bijection(), "{res:?}");
                assert_eq!(res.module_maps, 1 << (dim * dm));
            }
        }
    }
}

// ---------- the universal property ----------

#[test]
fn h_is_the_opposite_endomorphism_algebra() {
    for (f, dim) in [(f2(), 1), (f2(), 2), (f3(), 2)] {
        let a0 = e(dim, 0);
        let (o, h) = h_structure(OKind::Assoc, f, &a0, 3).unwrap();
        let mult = o.id("f[f1 f2]").unwrap();
        let unit = o.id("f[]").unwrap();
        let expected = end_algebra(f, dim).opposite();
        assert_eq!(h.get(mult).unwrap(), expected.mul_tensor());
        assert_eq!(h.get(unit).unwrap().data, expected.unit());
    }
}

#[test]
fn universal_trivial_reduces_to_linear_maps() {
    let f = f2();
    for b in [AssocAlgebra::ground(f), dual_numbers(), split()] {
        for dim_a in 0..=2 {
            for a0 in all_vectors(f, dim_a) {
                let data = universal_cheese_discrete(OKind::Trivial, &b, &a0, 3, BOUND).unwrap();
                let report = data.report();
                assert!(report.passed(), "{report:?}");
                assert_eq!(report.actions, 1 << (b.dim() * dim_a * dim_a));
            }
        }
    }
}

#[test]
fn universal_assoc_matches_module_counts() {
    let f = f2();
    for (b, counts) in [(AssocAlgebra::ground(f), [1, 1, 1]), (dual_numbers(), [1, 1, 4]), (split(), [1, 2, 8])] {
        for dim_a in 0..=2 {
            let a0 = if dim_a == 0 { vec![] } else { e(dim_a, 0) };
            let data = universal_cheese_discrete(OKind::Assoc, &b, &a0, 3, BOUND).unwrap();
            let report = data.report();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.actions, counts[dim_a]);
            let modules = module_map_bijection(&b.opposite(), dim_a, BOUND).unwrap();
            assert_eq!(report.maps, modules.maps.len());
        }
    }
}

#[test]
fn universal_assoc_non_commutative() {
    let u = upper_triangular();
    let a0 = vec![1, 0];
    let data = universal_cheese_discrete(OKind::Assoc, &u, &a0, 3, BOUND).unwrap();
    let report = data.report();
    assert!(report.passed());
    assert_eq!(report.maps, count_algebra_maps_to_matrices(&u.opposite(), 2));
    for act in &data.actions {
        assert_eq!(&data.psi(&data.phi(act)), act);
        assert!(check_action_diagrams(&DiscreteOperad::pi0_sc1(3), &u, act).unwrap().is_empty());
    }
}

#[test]
fn naturality_along_a_surjection() {
    let eps = Mat { rows: 1, cols: 2, data: vec![1, 0] };
    let ground = AssocAlgebra::ground(f2());
    for kind in [OKind::Trivial, OKind::Assoc] {
        for a0 in [vec![1], vec![1, 0], vec![0, 0]] {
            assert!(check_naturality(kind, &eps, &dual_numbers(), &ground, &a0, 3, BOUND).unwrap());
            assert!(check_naturality(kind, &eps, &split(), &ground, &a0, 3, BOUND).unwrap());
        }
    }
    let not_a_map = Mat { rows: 1, cols: 2, data: vec![0, 1] };
    assert!(check_naturality(OKind::Assoc, &not_a_map, &dual_numbers(), &ground, &[1], 3, BOUND).is_err());
}

#[test]
fn universal_enumeration_is_bounded() {
    let res = universal_cheese_discrete(OKind::Assoc, &upper_triangular(), &[1, 0, 0], 3, 1000);
    assert!(matches!(res, Err(AlgebraError::EnumerationBound { .. })));
}

#[test]
fn color_perm_sanity() {
    // the relabeling that swaps the two full inputs of ρ ∘ ... is an action entry
    let op = DiscreteOperad::pi0_sc1(3);
    let x = op.id("h[h1 f1 f2]").unwrap();
    let z = op.act_on(x, &ColoredPerm::new(Perm(vec![1, 0]), Perm::identity(1))).unwrap();
    assert_eq!(op.component(z).name, "h[h1 f2 f1]");
}
