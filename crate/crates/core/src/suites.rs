//! Seeded property suites over every module, shared by the command line and
//! the acceptance tests.
//!
//! Random cases run in parallel. Case `i` draws from its own ChaCha stream
//! `(seed, i)`, so a report is reproducible from its seed alone and does not
//! depend on scheduling; failures are listed by case id.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra_lab::{
    check_naturality, free_oa_module, hochschild_d1, mod_sc_leq1_bijection, module_map_bijection,
    universal_cheese_discrete, a_sc_discrete, AlgebraError, AssocAlgebra, DiscreteOperad, Fp, Mat, OAModule,
    OAlgebra, OKind, Tensor,
};
use crate::geometry::sample::{random_any, random_config};
use crate::geometry::{
    compose, compose_full, compose_mixed, identify_half_lower, identity_config, validate_config, Color,
    Configuration, ExtScalar,
};
use crate::operad_core::{check_operad_axioms, DiscOperad, DiscSampler, MultiHom, Part};
use crate::perm::{ColoredPerm, Perm};
use crate::schinf::{chain_from_le, word_normalize};
use crate::trees::{
    check_tree, collapse_lengths, collapse_le, compose_le, contract_at, delete_identity_at, e_compose,
    evaluate_w, leaf_counts, normalize_le, normalize_le_random, normalize_w, normalize_w_random,
    random_etree, random_level_sequence, random_wtree, relabel_leaves, DecoratedTree, ETree, LevelSequence,
};

const MAX_COUNTEREXAMPLES: usize = 5;
/// Largest enumeration any exhaustive check may attempt.
pub const ENUMERATION_BOUND: u128 = 1 << 24;

/// One failing case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: usize,
    pub detail: String,
}

/// Outcome of one property over many cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
    /// The first few failures, by case id.
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn from_results(name: String, seed: u64, results: Vec<Result<(), String>>) -> Self {
        let cases = results.len();
        let failed: Vec<Counterexample> = results
            .into_iter()
            .enumerate()
            .filter_map(|(case, r)| r.err().map(|detail| Counterexample { case, detail }))
            .collect();
        CheckReport {
            name,
            seed,
            cases,
            failures: failed.len(),
            counterexamples: failed.into_iter().take(MAX_COUNTEREXAMPLES).collect(),
        }
    }
}

/// The random stream of one case.
pub fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

fn run_cases<F>(name: impl Into<String>, seed: u64, cases: usize, check: F) -> CheckReport
where
    F: Fn(usize, &mut ChaCha8Rng) -> Result<(), String> + Sync,
{
    let results: Vec<Result<(), String>> =
        (0..cases).into_par_iter().map(|case| check(case, &mut case_rng(seed, case))).collect();
    CheckReport::from_results(name.into(), seed, results)
}

fn run_items<T: Sync, F>(name: impl Into<String>, items: &[T], check: F) -> CheckReport
where
    F: Fn(&T) -> Result<(), String> + Sync + Send,
{
    let results: Vec<Result<(), String>> = items.par_iter().map(check).collect();
    CheckReport::from_results(name.into(), 0, results)
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn err_text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------- geometry and operads ----------

/// Associativity, units and equivariance of `E_d` on random configurations.
pub fn ed_axioms(d: usize, cases: usize, seed: u64) -> CheckReport {
    let op = DiscOperad { d };
    let sampler = DiscSampler::little_discs(d);
    run_cases(format!("E{d} axioms"), seed, cases, |_, rng| {
        let report = check_operad_axioms(&op, &sampler, 1, rng);
        ensure(report.passed(), || report.witnesses.join("; "))
    })
}

/// The same axioms for the two-colored `SC_d`.
pub fn sc_axioms(d: usize, cases: usize, seed: u64) -> CheckReport {
    let op = DiscOperad { d };
    let sampler = DiscSampler::swiss_cheese(d);
    run_cases(format!("SC{d} axioms"), seed, cases, |_, rng| {
        let report = check_operad_axioms(&op, &sampler, 1, rng);
        ensure(report.passed(), || report.witnesses.join("; "))
    })
}

/// Mixed composition in `SC_d`, `d = 1 + case mod 3`: the composite
/// validates, its disc counts are the sums over the inputs, and on half-only
/// configurations identifying the lower boundary turns composition into
/// `E_{d-1}` composition.
pub fn sc_mixed(cases: usize, seed: u64) -> CheckReport {
    run_cases("SC mixed composition", seed, cases, |case, rng| {
        let d = 1 + case % 3;
        let max_half = if d == 1 { 1 } else { 2 };
        let n = rng.gen_range(0..=2);
        let m = rng.gen_range(0..=max_half);
        let x = random_config(rng, d, Color::Half, n, m);
        let fulls: Vec<Configuration> = (0..n).map(|_| random_any(rng, d, Color::Full, 2, 0)).collect();
        let halves: Vec<Configuration> = (0..m).map(|_| random_any(rng, d, Color::Half, 2, max_half)).collect();
        let out = compose_mixed(&x, &fulls, &halves).map_err(err_text)?;
        let report = validate_config(&out);
        ensure(report.is_ok(), || format!("d={d}: composite does not validate: {report:?}"))?;
        let k: usize = fulls.iter().map(Configuration::n_full).sum::<usize>()
            + halves.iter().map(Configuration::n_full).sum::<usize>();
        let l: usize = halves.iter().map(Configuration::n_half).sum();
        ensure(out.n_full() == k && out.n_half() == l, || {
            format!("d={d}: counts ({}, {}) instead of ({k}, {l})", out.n_full(), out.n_half())
        })?;

        let top_m = rng.gen_range(0..=if d == 1 { 1 } else { 3 });
        let x = random_config(rng, d, Color::Half, 0, top_m);
        let mut ys = Vec::with_capacity(top_m);
        for _ in 0..top_m {
            let k = rng.gen_range(0..=max_half);
            ys.push(random_config(rng, d, Color::Half, 0, k));
        }
        let top = compose_mixed(&x, &[], &ys).map_err(err_text)?;
        let lowered: Vec<Configuration> = ys.iter().map(identify_half_lower).collect::<Result<_, _>>().map_err(err_text)?;
        let below = compose_full(&identify_half_lower(&x).map_err(err_text)?, &lowered).map_err(err_text)?;
        ensure(identify_half_lower(&top).map_err(err_text)? == below, || {
            format!("d={d}: identify_half_lower does not intertwine")
        })
    })
}

/// `collapse_lengths: E → E_d` commutes with composition and relabeling.
pub fn collapse_morphism(cases: usize, seed: u64) -> CheckReport {
    run_cases("collapse_lengths is an operad map", seed, cases, |case, rng| {
        let d = 1 + case % 3;
        let x = random_etree(rng, d, 1);
        let ys: Vec<ETree> = (0..x.arity()).map(|_| random_etree(rng, d, 1)).collect();
        let xy = e_compose(&x, &ys).map_err(err_text)?;
        let lhs = collapse_lengths(&xy, d).map_err(err_text)?;
        let collapsed: Vec<Configuration> =
            ys.iter().map(|y| collapse_lengths(y, d)).collect::<Result<_, _>>().map_err(err_text)?;
        let rhs = compose(&collapse_lengths(&x, d).map_err(err_text)?, &collapsed).map_err(err_text)?;
        ensure(lhs == rhs, || format!("d={d}: collapse of the composite differs"))
    })
}

// ---------- rewriting ----------

/// A random W-tree over `SC_d` with shuffled leaf labels.
pub fn random_sc_wtree(rng: &mut ChaCha8Rng, d: usize) -> DecoratedTree<Configuration> {
    let op = DiscOperad { d };
    let color = if rng.gen_bool(0.5) { Color::Half } else { Color::Full };
    let max_half = if d == 1 { 1 } else { 2 };
    let t = random_wtree(&op, rng, color, 3, 0.45, &mut |r: &mut ChaCha8Rng, c| random_any(r, d, c, 2, max_half));
    let (a, b) = leaf_counts(&op, &t);
    let sigma = ColoredPerm::random(a, b, rng);
    relabel_leaves(&op, &t, &|c, l| if c == Color::Full { sigma.full.apply(l) } else { sigma.half.apply(l) })
}

/// Two random rule orders give the same W-tree normal form, which is a fixed
/// point and evaluates like the input.
pub fn w_confluence(cases: usize, seed: u64) -> CheckReport {
    run_cases("W-tree confluence", seed, cases, |case, rng| {
        let d = 1 + case % 3;
        let op = DiscOperad { d };
        let t = random_sc_wtree(rng, d);
        check_tree(&op, &t).map_err(err_text)?;
        let a = normalize_w_random(&op, &t, rng).map_err(err_text)?;
        let b = normalize_w_random(&op, &t, rng).map_err(err_text)?;
        ensure(a == b, || format!("d={d}: two rule orders disagree"))?;
        ensure(normalize_w(&op, &a).map_err(err_text)? == a, || format!("d={d}: normal form is not idempotent"))?;
        ensure(evaluate_w(&op, &a).map_err(err_text)? == evaluate_w(&op, &t).map_err(err_text)?, || {
            format!("d={d}: normal form evaluates differently")
        })
    })
}

/// The same for level sequences.
pub fn le_confluence(cases: usize, seed: u64) -> CheckReport {
    run_cases("level sequence confluence", seed, cases, |case, rng| {
        let d = 1 + case % 3;
        let target = rng.gen_range(1..=3);
        let levels = rng.gen_range(1..=5);
        let s = random_level_sequence(rng, d, target, levels);
        s.check().map_err(err_text)?;
        let a = normalize_le_random(&s, rng).map_err(err_text)?;
        let b = normalize_le_random(&s, rng).map_err(err_text)?;
        ensure(a == b, || format!("d={d}: two rule orders disagree"))?;
        ensure(normalize_le(&a).map_err(err_text)? == a, || format!("d={d}: normal form is not idempotent"))?;
        ensure(collapse_le(&a).map_err(err_text)? == collapse_le(&s).map_err(err_text)?, || {
            format!("d={d}: normal form collapses differently")
        })
    })
}

/// `(…, β, 0, γ, …) ~ (…, β∘γ, …)`: a random sequence with one length set to
/// zero, and its contraction.
pub fn zero_length_instance(rng: &mut ChaCha8Rng, d: usize) -> (LevelSequence, LevelSequence) {
    loop {
        let levels = rng.gen_range(2..=4);
        let target = rng.gen_range(1..=2);
        let mut s = random_level_sequence(rng, d, target, levels);
        let i = rng.gen_range(0..s.lengths.len());
        s.lengths[i] = ExtScalar::zero();
        if let Ok(t) = contract_at(&s, i) {
            return (s, t);
        }
    }
}

fn relabeling_level(d: usize, sigma: &Perm) -> MultiHom<Configuration> {
    MultiHom {
        parts: (0..sigma.len())
            .map(|j| Part { inputs: vec![sigma.apply(j)], elem: identity_config(d, Color::Full) })
            .collect(),
    }
}

/// A random sequence with a relabeling level inserted between two `∞`
/// lengths, and the sequence with that level deleted.
pub fn identity_instance(rng: &mut ChaCha8Rng, d: usize) -> (LevelSequence, LevelSequence) {
    loop {
        let levels = rng.gen_range(1..=3);
        let target = rng.gen_range(1..=2);
        let s = random_level_sequence(rng, d, target, levels);
        let i = rng.gen_range(0..=s.labels.len());
        let n = if i == 0 { s.target } else { s.labels[i - 1].n_inputs() };
        let sigma = if i == 0 || i == s.labels.len() || rng.gen_bool(0.5) {
            Perm::identity(n)
        } else {
            Perm::random(n, rng)
        };
        let mut labels = s.labels.clone();
        labels.insert(i, relabeling_level(d, &sigma));
        let k = s.labels.len();
        let mut lengths = Vec::with_capacity(k);
        if i > 0 {
            lengths.extend(s.lengths[..i - 1].iter().cloned());
            lengths.push(ExtScalar::Inf);
        }
        if i < k {
            lengths.push(ExtScalar::Inf);
            lengths.extend(s.lengths[i..].iter().cloned());
        }
        let Ok(with) = LevelSequence::new(d, labels, lengths) else { continue };
        if let Ok(without) = delete_identity_at(&with, i) {
            return (with, without);
        }
    }
}

fn same_words(s: &LevelSequence, t: &LevelSequence) -> Result<bool, String> {
    Ok(word_normalize(&chain_from_le(s)).map_err(err_text)? == word_normalize(&chain_from_le(t)).map_err(err_text)?)
}

/// Related level sequences have chain words with equal normal forms, and the
/// chain of a composite is the spliced chain.
pub fn le_relations(cases: usize, seed: u64) -> Vec<CheckReport> {
    vec![
        run_cases("zero-length relation", seed, cases, |case, rng| {
            let d = 1 + case % 3;
            let (s, t) = zero_length_instance(rng, d);
            ensure(same_words(&s, &t)?, || format!("d={d}: words differ"))
        }),
        run_cases("identity relation", seed, cases, |case, rng| {
            let d = 1 + case % 3;
            let (s, t) = identity_instance(rng, d);
            ensure(same_words(&s, &t)?, || format!("d={d}: words differ"))
        }),
        run_cases("chain of a composite", seed, cases, |case, rng| {
            let d = 1 + case % 3;
            let target = rng.gen_range(1..=2);
            let l1 = rng.gen_range(1..=3);
            let s1 = random_level_sequence(rng, d, target, l1);
            let l2 = rng.gen_range(1..=3);
            let s2 = random_level_sequence(rng, d, s1.source, l2);
            let lhs = word_normalize(&chain_from_le(&compose_le(&s1, &s2).map_err(err_text)?)).map_err(err_text)?;
            let spliced = chain_from_le(&s1).then(&chain_from_le(&s2)).map_err(err_text)?;
            ensure(lhs == word_normalize(&spliced).map_err(err_text)?, || format!("d={d}: chains differ"))
        }),
    ]
}

// ---------- algebra ----------

fn alg_err(e: AlgebraError) -> String {
    e.to_string()
}

/// Every unital associative algebra over `f` of dimension `1..=max_dim`.
pub fn small_algebras(f: Fp, max_dim: usize) -> Result<Vec<AssocAlgebra>, AlgebraError> {
    let mut out = Vec::new();
    for d in 1..=max_dim {
        out.extend(AssocAlgebra::enumerate_unital(f, d, ENUMERATION_BOUND)?);
    }
    Ok(out)
}

fn points(f: Fp, max_dim: usize) -> Vec<Vec<u32>> {
    (0..=max_dim)
        .flat_map(|n| (0..f.count(n).unwrap_or(0)).map(move |i| f.vector(n, i)))
        .collect()
}

/// `F_p[x]/x²` and its augmentation `x ↦ 0`.
pub fn dual_numbers(f: Fp) -> (AssocAlgebra, Mat) {
    let mul = Tensor::from_fn(vec![2, 2], 2, |t| match (t[0], t[1]) {
        (0, 0) => vec![1, 0],
        (0, 1) | (1, 0) => vec![0, 1],
        _ => vec![0, 0],
    });
    let b = AssocAlgebra::new(f, mul, vec![1, 0]).expect("the dual numbers are an algebra");
    (b, Mat { rows: 1, cols: 2, data: vec![1, 0] })
}

/// The universal property at `d = 1`: for every `B` of dimension at most
/// `max_dim` and every pointed `A` of dimension at most `max_dim`, actions of
/// `π₀SC₁` on `(B, A)` and unital algebra maps `B → End(A)^op` are put in
/// bijection, and their number agrees with an independent count of right
/// `B`-module structures on `A`. Also checks naturality along the
/// augmentation of the dual numbers.
pub fn d1_universal(p: u32, max_dim: usize, cutoff: usize) -> Vec<CheckReport> {
    let f = match Fp::new(p) {
        Ok(f) => f,
        Err(e) => return vec![CheckReport::from_results("d=1 universal property".into(), 0, vec![Err(e.to_string())])],
    };
    let algebras = match small_algebras(f, max_dim) {
        Ok(a) => a,
        Err(e) => return vec![CheckReport::from_results("d=1 universal property".into(), 0, vec![Err(e.to_string())])],
    };
    let pairs: Vec<(AssocAlgebra, Vec<u32>)> =
        algebras.iter().flat_map(|b| points(f, max_dim).into_iter().map(move |a0| (b.clone(), a0))).collect();
    let universal = run_items("d=1 universal property", &pairs, |(b, a0)| {
        let data = universal_cheese_discrete(OKind::Assoc, b, a0, cutoff, ENUMERATION_BOUND).map_err(alg_err)?;
        let report = data.report();
        ensure(report.passed(), || format!("{report:?}"))?;
        let modules = module_map_bijection(&b.opposite(), a0.len(), ENUMERATION_BOUND).map_err(alg_err)?;
        ensure(report.maps == modules.maps.len(), || {
            format!("dim B={} dim A={}: {} maps, {} module structures", b.dim(), a0.len(), report.maps, modules.maps.len())
        })
    });
    let trivial = run_items("degree <= 1 data without O", &pairs, |(b, a0)| {
        let report = universal_cheese_discrete(OKind::Trivial, b, a0, cutoff, ENUMERATION_BOUND).map_err(alg_err)?.report();
        let expected = f.count(b.dim() * a0.len() * a0.len()).unwrap_or(0) as usize;
        ensure(report.passed() && report.maps == expected, || format!("{report:?}"))
    });
    let (dual, eps) = dual_numbers(f);
    let ground = AssocAlgebra::ground(f);
    let naturality = run_items("naturality along F[x]/x² → F", &points(f, max_dim), |a0| {
        let ok = check_naturality(OKind::Assoc, &eps, &dual, &ground, a0, cutoff, ENUMERATION_BOUND).map_err(alg_err)?;
        ensure(ok, || format!("dim A={}", a0.len()))
    });
    vec![universal, trivial, naturality]
}

/// `Hoch(A) ≅ hom(A, A)` through `A^{sc}`, with `p_A ↦ id`, for pointed `A`
/// of dimension at most `max_dim` over each prime.
pub fn hochschild(primes: &[u32], max_dim: usize, cutoff: usize) -> CheckReport {
    let sc = Arc::new(DiscreteOperad::pi0_sc1(cutoff));
    let e = Arc::new(sc.h_color());
    let mut items = Vec::new();
    for &p in primes {
        for n in 0..=max_dim {
            let mut a0 = vec![0; n];
            if n > 0 {
                a0[0] = 1;
            }
            items.push((p, a0.clone()));
            if n > 0 {
                items.push((p, vec![0; n]));
            }
        }
    }
    run_items("Hochschild object via A^sc", &items, |(p, a0)| {
        let f = Fp::new(*p).map_err(alg_err)?;
        let alg = OAlgebra::pointed(e.clone(), f, a0.clone()).map_err(alg_err)?;
        let hoch = hochschild_d1(sc.clone(), &alg).map_err(alg_err)?;
        let n = a0.len();
        ensure(hoch.dim() == n * n && hoch.is_isomorphism() && hoch.sends_p_a_to_identity(), || {
            format!("p={p} dim={n}: dim Hoch = {}, iso {}, p_A ↦ id {}", hoch.dim(), hoch.is_isomorphism(), hoch.sends_p_a_to_identity())
        })
    })
}

/// Monad laws of the free O-A module for `O = Assoc` cut off at `cutoff`,
/// every `A` of dimension at most `max_dim` and `M` of dimension at most
/// `max_dim`; `F(M)` must be `A ⊗ M ⊗ A`.
pub fn monad_laws(p: u32, max_dim: usize, cutoff: usize) -> CheckReport {
    let name = "free module monad laws";
    let algebras = match Fp::new(p).and_then(|f| small_algebras(f, max_dim)) {
        Ok(a) => a,
        Err(e) => return CheckReport::from_results(name.into(), 0, vec![Err(e.to_string())]),
    };
    let op = Arc::new(DiscreteOperad::assoc(cutoff));
    let items: Vec<(AssocAlgebra, usize)> =
        algebras.iter().flat_map(|b| (0..=max_dim).map(move |m| (b.clone(), m))).collect();
    run_items(name, &items, |(b, dm)| {
        let alg = OAlgebra::assoc(op.clone(), b).map_err(alg_err)?;
        let report = alg.check_monad_laws(*dm).map_err(alg_err)?;
        ensure(report.passed() && report.dim_fm == dm * b.dim() * b.dim(), || format!("dim A={}: {report:?}", b.dim()))
    })
}

/// Degree ≤ 1 extension data on `(A, M)` against module maps `A^{sc} → M`,
/// counted by brute force for pointed `A` and `M` of dimension at most
/// `max_dim`.
pub fn mod_sc_bijection(p: u32, max_dim: usize, cutoff: usize) -> CheckReport {
    let name = "extensions = module maps out of A^sc";
    let f = match Fp::new(p) {
        Ok(f) => f,
        Err(e) => return CheckReport::from_results(name.into(), 0, vec![Err(e.to_string())]),
    };
    let sc = Arc::new(DiscreteOperad::pi0_sc1(cutoff));
    let e = Arc::new(sc.h_color());
    let items: Vec<(Vec<u32>, usize)> =
        points(f, max_dim).into_iter().flat_map(|a0| (0..=max_dim).map(move |m| (a0.clone(), m))).collect();
    run_items(name, &items, |(a0, dm)| {
        let alg = OAlgebra::pointed(e.clone(), f, a0.clone()).map_err(alg_err)?;
        let asc = a_sc_discrete(sc.clone(), &alg).map_err(alg_err)?;
        let m = OAModule::new(&alg, *dm, vec![]).map_err(alg_err)?;
        let res = mod_sc_leq1_bijection(&asc, &m, ENUMERATION_BOUND).map_err(alg_err)?;
        ensure(res.is_bijection(), || format!("dim A={} dim M={dm}: {res:?}", a0.len()))
    })
}

/// The free module over the identity-only operad is `M` itself.
pub fn trivial_free_module(p: u32, max_dim: usize) -> CheckReport {
    let items: Vec<(usize, usize)> = (0..=max_dim).flat_map(|a| (0..=max_dim).map(move |m| (a, m))).collect();
    run_items("free module over the identity operad", &items, |&(da, dm)| {
        let f = Fp::new(p).map_err(alg_err)?;
        let alg = OAlgebra::new(Arc::new(DiscreteOperad::trivial()), f, da, vec![]).map_err(alg_err)?;
        let free = free_oa_module(&alg, dm).map_err(alg_err)?;
        ensure(free.dim() == dm, || format!("dim A={da}: dim F(M) = {}", free.dim()))
    })
}

// ---------- suites ----------

/// The named suites of `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    Confluence,
    Relations,
    D1Universal,
    Monad,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Axioms, Suite::Confluence, Suite::Relations, Suite::D1Universal, Suite::Monad];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Confluence => "confluence",
            Suite::Relations => "relations",
            Suite::D1Universal => "d1-universal",
            Suite::Monad => "monad",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Bounds for a suite run. `dim` is the geometric dimension for the axioms
/// suite and the maximal algebra dimension for the algebraic suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    pub seed: u64,
    pub cases: usize,
    pub dim: Option<usize>,
    pub prime: u32,
    pub max_arity: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { seed: 0, cases: 200, dim: None, prime: 2, max_arity: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub params: SuiteParams,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> SuiteReport {
    let SuiteParams { seed, cases, dim, prime, max_arity } = *params;
    let checks = match suite {
        Suite::Axioms => {
            let dims: Vec<usize> = dim.map(|d| vec![d]).unwrap_or_else(|| vec![1, 2, 3]);
            let mut out: Vec<CheckReport> = dims.iter().map(|&d| ed_axioms(d, cases, seed)).collect();
            out.extend(dims.iter().filter(|&&d| d >= 1).map(|&d| sc_axioms(d, cases, seed)));
            out.push(sc_mixed(cases, seed));
            out.push(collapse_morphism(cases, seed));
            out
        }
        Suite::Confluence => vec![w_confluence(cases, seed), le_confluence(cases, seed)],
        Suite::Relations => le_relations(cases, seed),
        Suite::D1Universal => {
            let max_dim = dim.unwrap_or(2);
            let mut out = d1_universal(prime, max_dim, max_arity);
            out.push(hochschild(&[prime], max_dim + 1, max_arity));
            out
        }
        Suite::Monad => {
            let max_dim = dim.unwrap_or(2);
            vec![
                monad_laws(prime, max_dim, max_arity),
                mod_sc_bijection(prime, max_dim, max_arity),
                trivial_free_module(prime, max_dim),
            ]
        }
    };
    SuiteReport { suite, params: *params, passed: checks.iter().all(CheckReport::passed), checks }
}
