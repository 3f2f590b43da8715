//! Seeded random generation of valid configurations.

use rand::Rng;

use super::config::{validate_config, Color, Configuration, LittleDisc};
use super::scalar::{ratio, Scalar};

const RADII: [(i64, i64); 5] = [(1, 4), (1, 6), (1, 8), (3, 20), (1, 10)];

fn random_coord<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> Scalar {
    ratio(rng.gen_range(lo..=hi), 32)
}

/// Random valid configuration with the requested disc counts.
///
/// Panics if the counts are impossible (more than one half disc for `d = 1`,
/// half discs in a full target, or more than one disc for `d = 0`).
pub fn random_config<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    target: Color,
    n_full: usize,
    n_half: usize,
) -> Configuration {
    assert!(target == Color::Half || n_half == 0, "full targets hold no half discs");
    assert!(d != 1 || n_half <= 1, "a 1-dimensional half target holds at most one half disc");
    assert!(d != 0 || n_full + n_half <= 1, "dimension 0 holds at most one disc");
    let mut shrink = 1i64;
    loop {
        if let Some(cfg) = try_place(rng, d, target, n_full, n_half, shrink) {
            return cfg;
        }
        shrink *= 2;
    }
}

fn try_place<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    target: Color,
    n_full: usize,
    n_half: usize,
    shrink: i64,
) -> Option<Configuration> {
    let mut discs: Vec<LittleDisc> = Vec::new();
    let wanted: Vec<Color> = std::iter::repeat(Color::Full)
        .take(n_full)
        .chain(std::iter::repeat(Color::Half).take(n_half))
        .collect();
    for color in wanted {
        let mut placed = false;
        for _ in 0..200 {
            let (p, q) = RADII[rng.gen_range(0..RADII.len())];
            let r = ratio(p, q * shrink);
            let c: Vec<Scalar> = match (color, target) {
                (Color::Half, _) => (0..d.saturating_sub(1)).map(|_| random_coord(rng, -24, 24)).collect(),
                (Color::Full, Color::Full) => (0..d).map(|_| random_coord(rng, -24, 24)).collect(),
                (Color::Full, Color::Half) => {
                    let mut v: Vec<Scalar> = (0..d - 1).map(|_| random_coord(rng, -20, 20)).collect();
                    v.push(random_coord(rng, 8, 26));
                    v
                }
            };
            let disc = LittleDisc { color, r, c };
            let mut trial = discs.clone();
            trial.push(disc);
            let cfg = Configuration::new(d, target, trial.clone());
            if validate_config(&cfg).is_ok() {
                discs = trial;
                placed = true;
                break;
            }
        }
        if !placed {
            return None;
        }
    }
    Some(Configuration::new(d, target, discs))
}

/// Random configuration whose disc counts are drawn from `0..=max_full` and
/// `0..=max_half` (the latter capped by what the dimension allows).
pub fn random_any<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    target: Color,
    max_full: usize,
    max_half: usize,
) -> Configuration {
    let n = rng.gen_range(0..=max_full);
    let m = match target {
        Color::Full => 0,
        Color::Half if d == 1 => rng.gen_range(0..=max_half.min(1)),
        Color::Half => rng.gen_range(0..=max_half),
    };
    random_config(rng, d, target, n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=3 {
            for _ in 0..30 {
                let cfg = random_any(&mut rng, d, Color::Half, 3, 2);
                assert!(validate_config(&cfg).is_ok(), "{cfg:?}");
                let cfg = random_any(&mut rng, d, Color::Full, 4, 0);
                assert!(validate_config(&cfg).is_ok());
            }
        }
    }
}
