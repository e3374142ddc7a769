//! Seeded random streams.
//!
//! Every random suite is driven by ChaCha8 seeded with `seed_from_u64(seed)`
//! and switched to stream `trial`, so trial `t` of seed `s` is reproducible on
//! its own, independently of how many trials run before it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::{One, Zero};

use crate::banach::VectorSequence;
use crate::pointset::{GroundSet, PointSet};
use crate::rational::Rational;
use crate::submeasure::{sup_of_measures, Measure, Submeasure};

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Subset of `0..n` where each point is kept with probability `keep`.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize, keep: f64) -> PointSet {
    let mut s = PointSet::empty(n);
    for p in 0..n {
        if rng.gen_bool(keep) {
            s.insert(p);
        }
    }
    s
}

/// Random rational in `[0, 1]` with denominator `den`.
pub fn random_unit_rational<R: Rng>(rng: &mut R, den: i64) -> Rational {
    Rational::new(rng.gen_range(0..=den).into(), den.into())
}

/// Measure with weights drawn from `{0, 1/den, …, 1}`; never all zero.
pub fn random_measure<R: Rng>(rng: &mut R, n: usize, den: i64) -> Measure {
    let mut w: Vec<Rational> = (0..n).map(|_| random_unit_rational(rng, den)).collect();
    if w.iter().all(Zero::is_zero) {
        w[rng.gen_range(0..n)] = Rational::one();
    }
    Measure::new(w).expect("nonnegative weights")
}

/// `count` random sets (density 1/2) jointly covering `0..n`.
pub fn random_covering_family<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<PointSet> {
    let mut fam: Vec<PointSet> = (0..count).map(|_| random_subset(rng, n, 0.5)).collect();
    for x in 0..n {
        if !fam.iter().any(|s| s.contains(x)) {
            let i = rng.gen_range(0..count);
            fam[i].insert(x);
        }
    }
    fam
}

/// Either a supremum of one to three random measures or the cover number
/// of two to five random covering sets, with equal probability.
pub fn random_submeasure<R: Rng>(rng: &mut R, n: usize) -> Submeasure {
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=3);
        sup_of_measures((0..k).map(|_| random_measure(rng, n, 4)).collect()).expect("same ground")
    } else {
        let count = rng.gen_range(2..=5);
        Submeasure::min_cover(GroundSet::new(n).expect("n > 0"), random_covering_family(rng, n, count)).expect("in range")
    }
}

/// Nonnegative matrix with `1..=max_rows` rows, `2..=max_cols` columns and
/// entries in `[0, 1]`; a quarter of the entries are zero.
pub fn random_unit_matrix<R: Rng>(rng: &mut R, max_rows: usize, max_cols: usize) -> VectorSequence {
    let rows = rng.gen_range(1..=max_rows);
    let cols = rng.gen_range(2..=max_cols);
    let den = [4i64, 8, 16, 64][rng.gen_range(0..4)];
    let entries = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.gen_bool(0.25) { Rational::zero() } else { random_unit_rational(rng, den) })
                .collect()
        })
        .collect();
    VectorSequence::new(entries, false).expect("nonnegative")
}

/// Probability measure with weights proportional to integers in `0..=den`.
pub fn random_probability<R: Rng>(rng: &mut R, n: usize, den: i64) -> Measure {
    let mu = random_measure(rng, n, den);
    let total = mu.total();
    Measure::new(mu.weights().iter().map(|w| w / &total).collect()).expect("nonnegative")
}
