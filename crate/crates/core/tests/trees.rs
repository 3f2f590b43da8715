use operad_forge::geometry::{
    compose, identity_config, ratio, sample::random_any, sample::random_config, Color, Configuration, ExtScalar,
    Scalar,
};
use operad_forge::operad_core::{check_operad_axioms, DiscOperad, MultiHom, Part, Sampler};
use operad_forge::perm::{ColoredPerm, Perm};
use operad_forge::trees::*;
use proptest::prelude::*;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fin(p: i64, q: i64) -> ExtScalar {
    ExtScalar::Fin(ratio(p, q))
}

fn corolla_node(x: &Configuration) -> Node<Configuration> {
    let children = (0..x.discs.len()).map(|_| Child::Leaf(0)).collect();
    Node { label: x.clone(), children }
}

fn numbered(op: &DiscOperad, root: Node<Configuration>, color: Color) -> DecoratedTree<Configuration> {
    let mut t = DecoratedTree::from_node(color, root);
    number_leaves(op, &mut t);
    t
}

fn sc_tree(rng: &mut ChaCha8Rng, d: usize) -> DecoratedTree<Configuration> {
    let op = DiscOperad { d };
    let color = if rng.gen_bool(0.5) { Color::Half } else { Color::Full };
    let max_half = if d == 1 { 1 } else { 2 };
    let t = random_wtree(&op, rng, color, 3, 0.45, &mut |r: &mut ChaCha8Rng, c| random_any(r, d, c, 2, max_half));
    let (a, b) = leaf_counts(&op, &t);
    let sigma = ColoredPerm::random(a, b, rng);
    relabel_leaves(&op, &t, &|c, l| if c == Color::Full { sigma.full.apply(l) } else { sigma.half.apply(l) })
}

#[test]
fn zero_edge_contracts_to_composite() {
    let op = DiscOperad { d: 2 };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = random_config(&mut rng, 2, Color::Full, 2, 0);
    let y = random_config(&mut rng, 2, Color::Full, 2, 0);
    let mut root = corolla_node(&x);
    root.children[1] = Child::edge(ExtScalar::zero(), corolla_node(&y));
    let t = numbered(&op, root, Color::Full);
    let n = normalize_w(&op, &t).unwrap();
    assert_eq!(n.vertex_count(), 1);
    let expected = compose(&x, &[identity_config(2, Color::Full), y]).unwrap();
    assert_eq!(evaluate_w(&op, &n).unwrap(), expected);
    assert_eq!(evaluate_w(&op, &t).unwrap(), expected);
}

#[test]
fn identity_vertex_sums_lengths() {
    let op = DiscOperad { d: 2 };
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = random_config(&mut rng, 2, Color::Full, 1, 0);
    let y = random_config(&mut rng, 2, Color::Full, 2, 0);
    let id = Node { label: identity_config(2, Color::Full), children: vec![Child::edge(fin(2, 1), corolla_node(&y))] };
    let root = Node { label: x.clone(), children: vec![Child::edge(fin(1, 1), id)] };
    let n = normalize_w(&op, &numbered(&op, root, Color::Full)).unwrap();
    assert_eq!(n.vertex_count(), 2);
    assert_eq!(n.lengths(), vec![fin(3, 1)]);
}

#[test]
fn infinite_plus_finite_is_infinite() {
    let op = DiscOperad { d: 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = random_config(&mut rng, 1, Color::Full, 1, 0);
    let y = random_config(&mut rng, 1, Color::Full, 2, 0);
    let id = Node { label: identity_config(1, Color::Full), children: vec![Child::edge(fin(1, 2), corolla_node(&y))] };
    let root = Node { label: x, children: vec![Child::edge(ExtScalar::Inf, id)] };
    let n = normalize_w(&op, &numbered(&op, root, Color::Full)).unwrap();
    assert_eq!(n.lengths(), vec![ExtScalar::Inf]);
}

#[test]
fn graft_keeps_lengths_and_unit() {
    let op = DiscOperad { d: 2 };
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let t = sc_tree(&mut rng, 2);
        let n = normalize_w(&op, &t).unwrap();
        let unit = DecoratedTree::unit(t.color);
        assert_eq!(normalize_w(&op, &graft(&op, &unit, &[n.clone()]).unwrap()).unwrap(), n);
        let (a, b) = leaf_counts(&op, &n);
        let units: Vec<_> = (0..a).map(|_| DecoratedTree::unit(Color::Full))
            .chain((0..b).map(|_| DecoratedTree::unit(Color::Half)))
            .collect();
        let g = graft(&op, &n, &units).unwrap();
        assert_eq!(g.lengths(), n.lengths());
        assert_eq!(normalize_w(&op, &g).unwrap(), n);
    }
}

#[test]
fn graft_rejects_color_mismatch() {
    let op = DiscOperad { d: 2 };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = random_config(&mut rng, 2, Color::Half, 1, 1);
    let t = DecoratedTree::corolla(&op, x);
    let err = graft(&op, &t, &[DecoratedTree::unit(Color::Half), DecoratedTree::unit(Color::Half)]);
    assert!(matches!(err, Err(TreeError::ColorMismatch { slot: 0 })));
    assert!(matches!(graft(&op, &t, &[]), Err(TreeError::ArityMismatch { .. })));
}

#[test]
fn w_rewriting_is_confluent() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..500 {
        let d = 1 + case % 2;
        let op = DiscOperad { d };
        let t = sc_tree(&mut rng, d);
        check_tree(&op, &t).unwrap();
        let a = normalize_w_random(&op, &t, &mut rng).unwrap();
        let b = normalize_w_random(&op, &t, &mut rng).unwrap();
        assert_eq!(a, b, "case {case}");
        assert_eq!(normalize_w(&op, &a).unwrap(), a, "idempotence, case {case}");
        assert_eq!(evaluate_w(&op, &a).unwrap(), evaluate_w(&op, &t).unwrap(), "case {case}");
    }
}

struct WSampler {
    d: usize,
}

impl Sampler<WOperad<DiscOperad>> for WSampler {
    fn sample(&self, rng: &mut dyn RngCore, color: Color) -> DecoratedTree<Configuration> {
        let op = DiscOperad { d: self.d };
        let d = self.d;
        let mut r = ChaCha8Rng::seed_from_u64(rng.next_u64());
        let t = random_wtree(&op, &mut r, color, 1, 0.3, &mut |r: &mut ChaCha8Rng, c| random_any(r, d, c, 2, 1));
        normalize_w(&op, &t).unwrap()
    }

    fn root_color(&self, rng: &mut dyn RngCore) -> Color {
        if rng.gen_bool(0.5) {
            Color::Half
        } else {
            Color::Full
        }
    }
}

#[test]
fn w_operad_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in [1, 2] {
        let op = WOperad { inner: DiscOperad { d } };
        let report = check_operad_axioms(&op, &WSampler { d }, 60, &mut rng);
        assert!(report.passed(), "d = {d}: {} {:?}", report.summary(), report.witnesses);
    }
}

#[test]
fn evaluation_is_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let op = DiscOperad { d: 2 };
    for _ in 0..100 {
        let t = normalize_w(&op, &sc_tree(&mut rng, 2)).unwrap();
        let (a, b) = leaf_counts(&op, &t);
        let sigma = ColoredPerm::random(a, b, &mut rng);
        let lhs = evaluate_w(&op, &act_w(&op, &t, &sigma).unwrap()).unwrap();
        let rhs = operad_forge::geometry::sigma_act(&evaluate_w(&op, &t).unwrap(), &sigma).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn tree_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let t = sc_tree(&mut rng, 2);
        let v = t.to_json();
        assert_eq!(DecoratedTree::<Configuration>::from_json(&v).unwrap(), t);
    }
    let leaf = DecoratedTree::<Configuration>::unit(Color::Half);
    assert_eq!(DecoratedTree::<Configuration>::from_json(&leaf.to_json()).unwrap(), leaf);
}

#[test]
fn tree_svg_is_deterministic() {
    let op = DiscOperad { d: 2 };
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let t = normalize_w(&op, &sc_tree(&mut rng, 2)).unwrap();
    let label = |x: &Configuration| format!("{}", x.discs.len());
    let a = render_tree_svg(&op, &t, &label);
    let b = render_tree_svg(&op, &t, &label);
    assert_eq!(a, b);
    assert!(a.starts_with("<svg"));
    assert!(a.trim_end().ends_with("</svg>"));
}

fn one_part(x: Configuration, inputs: Vec<usize>) -> Level {
    MultiHom { parts: vec![Part { inputs, elem: x }] }
}

#[test]
fn zero_length_composes_levels() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = random_config(&mut rng, 2, Color::Full, 2, 0);
    let b1 = random_config(&mut rng, 2, Color::Full, 1, 0);
    let b2 = random_config(&mut rng, 2, Color::Full, 2, 0);
    let beta = MultiHom {
        parts: vec![Part { inputs: vec![2], elem: b1.clone() }, Part { inputs: vec![0, 1], elem: b2.clone() }],
    };
    let s = LevelSequence::new(2, vec![one_part(a.clone(), vec![0, 1]), beta], vec![ExtScalar::zero()]).unwrap();
    let n = normalize_le(&s).unwrap();
    assert_eq!(n.labels.len(), 1);
    assert!(n.lengths.is_empty());
    let part = &n.labels[0].parts[0];
    assert_eq!(part.inputs, vec![0, 1, 2]);
    // the composite lists disc for object 2 first; sorting moves it last
    let direct = compose(&a, &[b1, b2]).unwrap();
    let sorted = operad_forge::geometry::sigma_act(&direct, &ColoredPerm::full_only(Perm(vec![1, 2, 0]))).unwrap();
    assert_eq!(part.elem, sorted);
}

#[test]
fn lone_identity_level_is_the_identity() {
    let s = LevelSequence::new(2, vec![identity_level(2, 1)], vec![]).unwrap();
    assert_eq!(normalize_le(&s).unwrap(), LevelSequence::identity(2, 1));
    let swap = MultiHom {
        parts: vec![
            Part { inputs: vec![1], elem: identity_config(2, Color::Full) },
            Part { inputs: vec![0], elem: identity_config(2, Color::Full) },
        ],
    };
    let s = LevelSequence::new(2, vec![swap], vec![]).unwrap();
    assert_eq!(normalize_le(&s).unwrap(), s);
}

#[test]
fn identity_next_to_finite_length_stays() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let a = random_config(&mut rng, 2, Color::Full, 1, 0);
    let s = LevelSequence::new(2, vec![one_part(a, vec![0]), identity_level(2, 1)], vec![fin(1, 2)]).unwrap();
    assert_eq!(normalize_le(&s).unwrap(), s);
    assert!(delete_identity_at(&s, 1).is_err());
}

#[test]
fn identity_between_infinities_is_deleted() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let a = random_config(&mut rng, 2, Color::Full, 1, 0);
    let b = random_config(&mut rng, 2, Color::Full, 2, 0);
    let s = LevelSequence::new(
        2,
        vec![one_part(a.clone(), vec![0]), identity_level(2, 1), one_part(b.clone(), vec![0, 1])],
        vec![ExtScalar::Inf, ExtScalar::Inf],
    )
    .unwrap();
    let n = normalize_le(&s).unwrap();
    let expected =
        LevelSequence::new(2, vec![one_part(a, vec![0]), one_part(b, vec![0, 1])], vec![ExtScalar::Inf]).unwrap();
    assert_eq!(n, expected);
}

#[test]
fn compose_le_base_case_and_unit() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let a = random_config(&mut rng, 2, Color::Full, 1, 0);
    let b = random_config(&mut rng, 2, Color::Full, 2, 0);
    let sa = LevelSequence::single(a.clone());
    let sb = LevelSequence::single(b.clone());
    let c = compose_le(&sa, &sb).unwrap();
    assert_eq!(c.labels, vec![one_part(a, vec![0]), one_part(b, vec![0, 1])]);
    assert_eq!(c.lengths, vec![ExtScalar::Inf]);
    for _ in 0..50 {
        let s = normalize_le(&random_level_sequence(&mut rng, 2, 2, 3)).unwrap();
        assert_eq!(compose_le(&s, &LevelSequence::identity(2, s.source)).unwrap(), s);
        assert_eq!(compose_le(&LevelSequence::identity(2, s.target), &s).unwrap(), s);
    }
}

/// A sequence whose top level outputs `n` objects and whose source is fixed.
fn sequence_into(rng: &mut ChaCha8Rng, d: usize, n: usize) -> LevelSequence {
    let levels = rng.gen_range(1..=3);
    random_level_sequence(rng, d, n, levels)
}

#[test]
fn compose_le_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for case in 0..200 {
        let d = 1 + case % 3;
        let outputs = rng.gen_range(1..=2);
        let s1 = sequence_into(&mut rng, d, outputs);
        let s2 = sequence_into(&mut rng, d, s1.source);
        let s3 = sequence_into(&mut rng, d, s2.source);
        let lhs = compose_le(&compose_le(&s1, &s2).unwrap(), &s3).unwrap();
        let rhs = compose_le(&s1, &compose_le(&s2, &s3).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "case {case}");
    }
}

#[test]
fn le_rewriting_is_confluent() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for case in 0..500 {
        let d = 1 + case % 3;
        let target = rng.gen_range(1..=3);
        let levels = rng.gen_range(1..=5);
        let s = random_level_sequence(&mut rng, d, target, levels);
        s.check().unwrap();
        let a = normalize_le_random(&s, &mut rng).unwrap();
        let b = normalize_le_random(&s, &mut rng).unwrap();
        assert_eq!(a, b, "case {case}");
        assert_eq!(normalize_le(&a).unwrap(), a);
        assert_eq!(collapse_le(&a).unwrap(), collapse_le(&s).unwrap());
    }
}

#[test]
fn malformed_sequences_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let a = random_config(&mut rng, 2, Color::Full, 2, 0);
    assert!(LevelSequence::new(2, vec![one_part(a.clone(), vec![0, 0])], vec![]).is_err());
    assert!(LevelSequence::new(2, vec![one_part(a.clone(), vec![0])], vec![]).is_err());
    assert!(LevelSequence::new(2, vec![one_part(a.clone(), vec![0, 1]), identity_level(2, 2)], vec![]).is_err());
    let s1 = LevelSequence::single(a.clone());
    assert!(compose_le(&s1, &LevelSequence::single(a)).is_err());
}

/// One vertex `s` over `source` leaves.
fn vertex(s: LevelSequence) -> ETree {
    let children = (0..s.source).map(ETree::Leaf).collect();
    ETree::Node { seq: s, children }
}

/// Stacks one-output sequences side by side; they share the number of levels
/// and the lengths, so the result is again a sequence.
fn juxtapose(parts: &[LevelSequence]) -> LevelSequence {
    let d = parts[0].d;
    let depth = parts[0].labels.len();
    let mut labels = vec![MultiHom { parts: vec![] }; depth];
    let mut offsets = vec![0usize; depth];
    for p in parts {
        for (i, level) in p.labels.iter().enumerate() {
            let off = offsets[i];
            for part in &level.parts {
                labels[i].parts.push(Part {
                    inputs: part.inputs.iter().map(|&x| x + off).collect(),
                    elem: part.elem.clone(),
                });
            }
            offsets[i] += level.n_inputs();
        }
    }
    LevelSequence { d, source: offsets[depth - 1], target: parts.len(), labels, lengths: parts[0].lengths.clone() }
}

fn random_level(rng: &mut ChaCha8Rng, d: usize) -> Level {
    let n = rng.gen_range(0..=2);
    one_part(random_config(rng, d, Color::Full, n, 0), (0..n).collect())
}

/// A one-output sequence with the given lengths and unrelated levels below
/// the first.
fn fixed_shape(rng: &mut ChaCha8Rng, d: usize, lengths: &[ExtScalar]) -> LevelSequence {
    let mut labels = vec![random_level(rng, d)];
    for _ in lengths {
        let outputs = labels.last().unwrap().n_inputs();
        let parts = (0..outputs)
            .map(|_| {
                let n = rng.gen_range(1..=2);
                Part { inputs: vec![], elem: random_config(rng, d, Color::Full, n, 0) }
            })
            .collect::<Vec<_>>();
        let mut next = 0;
        let parts = parts
            .into_iter()
            .map(|p| {
                let n = p.elem.n_full();
                let inputs = (next..next + n).collect();
                next += n;
                Part { inputs, elem: p.elem }
            })
            .collect();
        labels.push(MultiHom { parts });
    }
    LevelSequence { d, source: labels.last().unwrap().n_inputs(), target: 1, labels, lengths: lengths.to_vec() }
}

#[test]
fn tree_of_vertices_equals_composite_vertex() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let mut checked = 0;
    for case in 0..200 {
        let d = 1 + case % 2;
        let top = fixed_shape(&mut rng, d, &[fin(1, 2)]);
        let k = rng.gen_range(0..=2);
        let lengths: Vec<ExtScalar> = (0..k).map(|_| fin(rng.gen_range(1..=3), 2)).collect();
        let lower: Vec<LevelSequence> = (0..top.source).map(|_| fixed_shape(&mut rng, d, &lengths)).collect();
        if lower.is_empty() {
            continue;
        }
        let joined = compose_le(&top, &juxtapose(&lower)).unwrap();
        let single = normalize_e(&vertex(joined)).unwrap();
        let grafted = e_compose(&vertex(top.clone()), &lower.iter().cloned().map(vertex).collect::<Vec<_>>()).unwrap();
        assert_eq!(single, grafted, "case {case}");
        assert!(single.finite_parts_are_level());
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn e_unit_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..100 {
        let x = random_etree(&mut rng, 2, 2);
        let n = x.arity();
        assert_eq!(e_compose(&ETree::unit(), &[x.clone()]).unwrap(), x);
        assert_eq!(e_compose(&x, &vec![ETree::unit(); n]).unwrap(), x);
        assert_eq!(normalize_e(&x).unwrap(), x);
        x.check(2).unwrap();
    }
}

struct ESampler {
    d: usize,
}

impl Sampler<EOperad> for ESampler {
    fn sample(&self, rng: &mut dyn RngCore, _color: Color) -> ETree {
        let mut r = ChaCha8Rng::seed_from_u64(rng.next_u64());
        random_etree(&mut r, self.d, 1)
    }
}

#[test]
fn e_operad_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for d in [1, 2] {
        let report = check_operad_axioms(&EOperad { d }, &ESampler { d }, 80, &mut rng);
        assert!(report.passed(), "d = {d}: {} {:?}", report.summary(), report.witnesses);
    }
}

#[test]
fn collapse_is_an_operad_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for case in 0..200 {
        let d = 1 + case % 3;
        let x = random_etree(&mut rng, d, 1);
        let ys: Vec<ETree> = (0..x.arity()).map(|_| random_etree(&mut rng, d, 1)).collect();
        let xy = e_compose(&x, &ys).unwrap();
        assert!(xy.finite_parts_are_level());
        let lhs = collapse_lengths(&xy, d).unwrap();
        let collapsed: Vec<Configuration> = ys.iter().map(|y| collapse_lengths(y, d).unwrap()).collect();
        let rhs = compose(&collapse_lengths(&x, d).unwrap(), &collapsed).unwrap();
        assert_eq!(lhs, rhs, "case {case}");
    }
}

#[test]
fn collapse_base_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let a = random_config(&mut rng, 2, Color::Full, 3, 0);
    assert_eq!(collapse_lengths(&embed_config(&a).unwrap(), 2).unwrap(), a);
    assert_eq!(collapse_lengths(&ETree::unit(), 2).unwrap(), identity_config(2, Color::Full));
    assert_eq!(embed_config(&identity_config(2, Color::Full)).unwrap(), ETree::unit());
}

#[test]
fn staged_collapse_reaches_the_collapse() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let one = Scalar::from_integer(1.into());
    let half = ratio(1, 2);
    for case in 0..100 {
        let d = 1 + case % 2;
        let x = random_etree(&mut rng, d, 2);
        let target = embed_config(&collapse_lengths(&x, d).unwrap()).unwrap();
        for depth in 0..=max_stratum(&x) {
            assert_eq!(staged_collapse(&x, depth, &Scalar::from_integer(0.into())).unwrap(), x);
            let partial = staged_collapse(&x, depth, &half).unwrap();
            assert!(partial.finite_parts_are_level());
            assert_eq!(collapse_lengths(&partial, d).unwrap(), collapse_lengths(&x, d).unwrap());
        }
        let mut cur = x.clone();
        for depth in (1..=max_stratum(&x)).rev() {
            cur = staged_collapse(&cur, depth, &one).unwrap();
            assert!(cur.finite_parts_are_level());
            assert!(max_stratum(&cur) < depth, "case {case}, depth {depth}");
        }
        assert_eq!(cur, target, "case {case}");
    }
}

#[test]
fn etree_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..20 {
        let x = random_etree(&mut rng, 2, 2);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<ETree>(&text).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn level_normalization_is_idempotent(seed in any::<u64>(), d in 1usize..=3, levels in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_level_sequence(&mut rng, d, 2, levels);
        let n = normalize_le(&s).unwrap();
        prop_assert_eq!(normalize_le(&n).unwrap(), n.clone());
        prop_assert!(n.check().is_ok());
        prop_assert_eq!(n.source, s.source);
        prop_assert_eq!(n.target, s.target);
    }

    #[test]
    fn etree_action_is_a_right_action(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_etree(&mut rng, 2, 1);
        let n = x.arity();
        let s = Perm::random(n, &mut rng);
        let t = Perm::random(n, &mut rng);
        let lhs = e_act(&e_act(&x, &s).unwrap(), &t).unwrap();
        prop_assert_eq!(lhs, e_act(&x, &s.compose(&t)).unwrap());
        let cs = collapse_lengths(&e_act(&x, &s).unwrap(), 2).unwrap();
        let sc = operad_forge::geometry::sigma_act(&collapse_lengths(&x, 2).unwrap(), &ColoredPerm::full_only(s)).unwrap();
        prop_assert_eq!(cs, sc);
    }
}
