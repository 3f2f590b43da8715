//! Seeded inputs for the benchmarks in `benches/`, so every run times the
//! same work.

use operad_forge::geometry::sample::{random_any, random_config};
use operad_forge::geometry::{Color, Configuration};
use operad_forge::suites::{case_rng, random_sc_wtree};
use operad_forge::trees::{random_level_sequence, DecoratedTree, LevelSequence};

/// An outer `SC_d` configuration with a half target and fitting inputs.
pub fn mixed_instances(seed: u64, count: usize, d: usize) -> Vec<(Configuration, Vec<Configuration>)> {
    (0..count)
        .map(|case| {
            let rng = &mut case_rng(seed, case);
            let max_half = if d == 1 { 1 } else { 2 };
            let x = random_config(rng, d, Color::Half, 2, max_half);
            let mut inputs: Vec<Configuration> =
                (0..x.n_full()).map(|_| random_any(rng, d, Color::Full, 3, 0)).collect();
            inputs.extend((0..x.n_half()).map(|_| random_any(rng, d, Color::Half, 2, max_half)));
            (x, inputs)
        })
        .collect()
}

pub fn wtrees(seed: u64, count: usize, d: usize) -> Vec<DecoratedTree<Configuration>> {
    (0..count).map(|case| random_sc_wtree(&mut case_rng(seed, case), d)).collect()
}

pub fn level_sequences(seed: u64, count: usize, d: usize, levels: usize) -> Vec<LevelSequence> {
    (0..count).map(|case| random_level_sequence(&mut case_rng(seed, case), d, 2, levels)).collect()
}
