use operad_forge::geometry::{
    compose, identify_half_lower, identity_config, sample::random_config, validate_config, Color, Configuration,
};
use operad_forge::operad_core::*;
use operad_forge::perm::{ColoredPerm, Perm};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The associative operad: an element of arity `n` is a left-to-right order of its inputs.
#[derive(Clone, Debug)]
struct Orders;

impl Operad for Orders {
    type Elem = Vec<usize>;

    fn input_colors(&self, x: &Vec<usize>) -> Vec<Color> {
        vec![Color::Full; x.len()]
    }

    fn output_color(&self, _x: &Vec<usize>) -> Color {
        Color::Full
    }

    fn identity(&self, _color: Color) -> Vec<usize> {
        vec![0]
    }

    fn compose(&self, outer: &Vec<usize>, inputs: &[Vec<usize>]) -> Result<Vec<usize>, OperadError> {
        if inputs.len() != outer.len() {
            return Err(OperadError::ArityMismatch { expected: outer.len(), got: inputs.len() });
        }
        let mut offsets = vec![0];
        for y in inputs {
            offsets.push(offsets.last().unwrap() + y.len());
        }
        let offsets = &offsets;
        Ok(outer.iter().flat_map(|&s| inputs[s].iter().map(move |&j| offsets[s] + j)).collect())
    }

    fn act(&self, x: &Vec<usize>, perm: &ColoredPerm) -> Result<Vec<usize>, OperadError> {
        let inv = perm.full.inverse();
        Ok(x.iter().map(|&s| inv.apply(s)).collect())
    }

    fn same(&self, a: &Vec<usize>, b: &Vec<usize>) -> bool {
        a == b
    }
}

struct OrderSampler;

impl Sampler<Orders> for OrderSampler {
    fn sample(&self, rng: &mut dyn rand::RngCore, _color: Color) -> Vec<usize> {
        let n = rng.gen_range(0..4);
        Perm::random(n, rng).0
    }
}

#[test]
fn little_discs_axioms_hold_in_low_dimensions() {
    for d in 1..=3 {
        let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
        let report = check_operad_axioms(&DiscOperad { d }, &DiscSampler::little_discs(d), 150, &mut rng);
        assert!(report.passed(), "d={d}: {}", report.summary());
    }
}

#[test]
fn swiss_cheese_axioms_hold() {
    for d in 1..=2 {
        let mut rng = ChaCha8Rng::seed_from_u64(10 + d as u64);
        let report = check_operad_axioms(&DiscOperad { d }, &DiscSampler::swiss_cheese(d), 150, &mut rng);
        assert!(report.passed(), "d={d}: {}", report.summary());
    }
}

#[test]
fn corrupted_composition_is_caught() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let op = CorruptedOperad { inner: DiscOperad { d: 2 } };
    let report = check_operad_axioms(&op, &DiscSampler::little_discs(2), 200, &mut rng);
    assert!(report.associativity_failures > 0, "{}", report.summary());
    assert!(!report.witnesses.is_empty());
}

#[test]
fn identity_only_samples_pass() {
    struct Ids;
    impl Sampler<DiscOperad> for Ids {
        fn sample(&self, _rng: &mut dyn rand::RngCore, color: Color) -> Configuration {
            identity_config(2, color)
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert!(check_operad_axioms(&DiscOperad { d: 2 }, &Ids, 20, &mut rng).passed());
}

#[test]
fn associative_operad_passes_harness() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let report = check_operad_axioms(&Orders, &OrderSampler, 300, &mut rng);
    assert!(report.passed(), "{}", report.summary());
}

fn all_orders(n: usize) -> Vec<Vec<usize>> {
    Perm::all(n).into_iter().map(|p| p.0).collect()
}

#[test]
fn assoc_two_to_two_has_six_elements() {
    assert_eq!(enumerate_multi(all_orders, 2, 2).len(), 6);
    // Σ over functions 3 → 2 of |Assoc(a)|·|Assoc(b)|
    let expected: usize = (0..=3usize)
        .map(|a| {
            let choose = [1, 3, 3, 1][a];
            choose * (1..=a).product::<usize>() * (1..=3 - a).product::<usize>()
        })
        .sum();
    assert_eq!(enumerate_multi(all_orders, 3, 2).len(), expected);
    assert_eq!(enumerate_multi(all_orders, 0, 1).len(), 1);
}

#[test]
fn single_output_decomposes_to_itself() {
    let x = MultiHom { parts: vec![Part { inputs: vec![0, 1, 2], elem: vec![2, 0, 1] }] };
    let d = decompose_hom(&Orders, &x).unwrap();
    assert_eq!(d.assignment, vec![0, 0, 0]);
    assert_eq!(d.fibers, vec![vec![2, 0, 1]]);
}

#[test]
fn malformed_multi_output_is_rejected() {
    let x = MultiHom {
        parts: vec![Part { inputs: vec![0, 0], elem: vec![0, 1] }, Part { inputs: vec![], elem: vec![] }],
    };
    assert!(matches!(decompose_hom(&Orders, &x), Err(OperadError::MalformedMultiHom(_))));
}

#[test]
fn decompose_recompose_round_trip() {
    for d in enumerate_multi(all_orders, 3, 2) {
        let m = recompose_hom(&d);
        assert_eq!(decompose_hom(&Orders, &m).unwrap(), d);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Tag(usize, u8);

impl SymElem for Tag {
    fn degree(&self) -> usize {
        self.0
    }
    fn act(&self, _p: &Perm) -> Self {
        self.clone()
    }
}

/// Orders of `n` points, acted on by relabelling.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Word(Vec<usize>);

impl SymElem for Word {
    fn degree(&self) -> usize {
        self.0.len()
    }
    fn act(&self, p: &Perm) -> Self {
        let inv = p.inverse();
        Word(self.0.iter().map(|&s| inv.apply(s)).collect())
    }
}

fn words(max: usize) -> Collection<Word> {
    Collection::from_elements((0..=max).flat_map(|n| Perm::all(n).into_iter().map(|p| Word(p.0))))
}

#[test]
fn tensor_counts_follow_shuffles() {
    let x = Collection::from_elements([Tag(1, 0), Tag(1, 1)]);
    let y = Collection::from_elements([Tag(1, 0), Tag(1, 1), Tag(1, 2)]);
    let xy = tensor_coll(&x, &y);
    assert_eq!(xy.cardinality(2), 12);
    assert_eq!(tensor_coll(&y, &x).cardinality(2), 12);
}

#[test]
fn tensor_unit_and_action() {
    let w = words(3);
    let left = tensor_coll(&unit_collection(), &w);
    let right = tensor_coll(&w, &unit_collection());
    for n in 0..=3 {
        assert_eq!(left.cardinality(n), w.cardinality(n));
        assert_eq!(right.cardinality(n), w.cardinality(n));
    }
    assert!(check_action(&left).is_empty());
    let ww = tensor_coll(&words(2), &words(1));
    assert!(check_action(&ww).is_empty());
}

#[test]
fn braiding_is_an_involution() {
    let ww = tensor_coll(&words(2), &words(2));
    for n in 0..=4 {
        for t in ww.component(n) {
            assert_eq!(&braid_tensor(&braid_tensor(t)), t);
        }
    }
}

#[test]
fn associator_is_an_equivariant_bijection() {
    let (a, b, c) = (words(1), words(2), words(1));
    let left = tensor_coll(&tensor_coll(&a, &b), &c);
    let right = tensor_coll(&a, &tensor_coll(&b, &c));
    for n in 0..=4 {
        let mut image: Vec<_> = left.component(n).iter().map(tensor_assoc).collect();
        image.sort();
        assert_eq!(image, right.component(n), "degree {n}");
        for t in left.component(n).iter().take(10) {
            for p in Perm::all(n) {
                assert_eq!(tensor_assoc(&t.act(&p)), tensor_assoc(t).act(&p));
            }
        }
    }
}

#[test]
fn leq1_tensor_counts_and_unit() {
    let c = CollLeq1 { c0: vec![0, 1], c1: vec![2] };
    let d = CollLeq1 { c0: vec![10, 11, 12], c1: vec![13, 14] };
    let t = tensor_coll_leq1(&c, &d);
    assert_eq!((t.c0.len(), t.c1.len()), (6, 7));
    let u = tensor_coll_leq1(&unit_leq1(), &d);
    assert_eq!((u.c0.len(), u.c1.len()), (3, 2));
    for e in t.c0.iter().chain(&t.c1) {
        assert_eq!(&braid_leq1(&braid_leq1(e)), e);
    }
}

fn half_only(rng: &mut ChaCha8Rng, d: usize, m: usize) -> Configuration {
    random_config(rng, d, Color::Half, 0, m)
}

#[test]
fn degree_zero_part_is_lower_little_discs() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let coll = forget_h(DiscOperad { d: 2 });
    for _ in 0..50 {
        let m = rng.gen_range(0..3);
        let x = half_only(&mut rng, 2, m);
        let ys: Vec<Configuration> = (0..m)
            .map(|_| {
                let k = rng.gen_range(0..3);
                half_only(&mut rng, 2, k)
            })
            .collect();
        let xy = coll.compose(&x, &ys).unwrap();
        assert_eq!(coll.degree(&xy), 0);
        let lowered: Vec<Configuration> = ys.iter().map(|y| identify_half_lower(y).unwrap()).collect();
        assert_eq!(
            identify_half_lower(&xy).unwrap(),
            compose(&identify_half_lower(&x).unwrap(), &lowered).unwrap()
        );
    }
}

#[test]
fn truncation_rejects_degree_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let t = truncate_leq1(forget_h(DiscOperad { d: 2 }));
    let x = random_config(&mut rng, 2, Color::Half, 1, 1);
    let y = random_config(&mut rng, 2, Color::Half, 1, 0);
    assert!(matches!(t.compose(&x, &[y.clone()]), Err(OperadError::DegreeOverflow(2))));
    let two = random_config(&mut rng, 2, Color::Half, 2, 0);
    assert!(!t.contains(&two));
}

#[test]
fn truncation_agrees_with_full_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let coll = forget_h(DiscOperad { d: 2 });
    let t = truncate_leq1(coll.clone());
    for case in 0..60 {
        let outer_degree = case % 2;
        let m = rng.gen_range(1..3);
        let x = random_config(&mut rng, 2, Color::Half, outer_degree, m);
        let lucky = if outer_degree == 0 { Some(rng.gen_range(0..m)) } else { None };
        let ys: Vec<Configuration> = (0..m)
            .map(|i| {
                let k = rng.gen_range(0..2);
                random_config(&mut rng, 2, Color::Half, usize::from(lucky == Some(i)), k)
            })
            .collect();
        let lhs = t.compose(&x, &ys).unwrap();
        assert_eq!(lhs, coll.compose(&x, &ys).unwrap());
        assert_eq!(coll.degree(&lhs), 1);
        assert!(validate_config(&lhs).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degrees_add_under_forget(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coll = forget_h(DiscOperad { d: 2 });
        let m = rng.gen_range(0..3);
        let n = rng.gen_range(0..2);
        let x = random_config(&mut rng, 2, Color::Half, n, m);
        let ys: Vec<Configuration> = (0..m)
            .map(|_| {
                let (a, b) = (rng.gen_range(0..2), rng.gen_range(0..2));
                random_config(&mut rng, 2, Color::Half, a, b)
            })
            .collect();
        let xy = coll.compose(&x, &ys).unwrap();
        let total: usize = coll.degree(&x) + ys.iter().map(|y| coll.degree(y)).sum::<usize>();
        prop_assert_eq!(coll.degree(&xy), total);
        prop_assert_eq!(coll.arity(&xy), ys.iter().map(|y| coll.arity(y)).sum::<usize>());
    }

    #[test]
    fn tensor_action_is_a_right_action(a in 0usize..3, b in 0usize..3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ww = tensor_coll(&words(a), &words(b));
        let n = rng.gen_range(0..=a + b);
        if let Some(t) = ww.component(n).first() {
            let s = Perm::random(n, &mut rng);
            let u = Perm::random(n, &mut rng);
            prop_assert_eq!(t.act(&s).act(&u), t.act(&s.compose(&u)));
        }
    }
}
