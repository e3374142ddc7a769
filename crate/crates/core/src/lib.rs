//! Exact finite calculus of lower semicontinuous submeasures.
//!
//! Everything is computed in exact rational arithmetic on finite grounds:
//! maximal dominated measures and pathology degrees by linear programming,
//! Kelley covering numbers, the classical example families, pair and
//! barrier colorings, Rudin–Keisler pushforwards, and the `ℓ∞` vector
//! sequence representation. Statements about infinite objects are never
//! asserted; finite reports that touch them carry a truncation label.

pub mod axioms;
pub mod banach;
pub mod colorings;
pub mod error;
pub mod io;
pub mod lp;
pub mod pathology;
pub mod pointset;
pub mod rational;
pub mod reductions;
pub mod rng;
pub mod setcover;
pub mod submeasure;
pub mod zoo;

pub use error::{Error, Result};
pub use pointset::{GroundSet, PointSet};
pub use rational::{Rational, RationalX};
pub use submeasure::{AritySchedule, Measure, Repr, Submeasure};

/// Label carried by every report that stands in for an infinite statement.
pub const TRUNCATION_LABEL: &str = "truncation diagnostic: finite-scale evidence only, no infinite-limit claim";

/// Environment variable overriding the subset-exhaustive ground limit.
pub const MAX_GROUND_ENV: &str = "SUBMEASURE_LAB_MAX_GROUND";

/// Resource guards for exhaustive operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest ground on which all subsets are enumerated.
    pub max_ground: usize,
    /// Largest set `A` for which `φ̂(A)` uses one constraint per subset.
    pub max_hat_set: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ground: 16,
            max_hat_set: 14,
        }
    }
}

impl Limits {
    /// Defaults, with `max_ground` taken from the environment when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(v) = std::env::var(MAX_GROUND_ENV) {
            limits.max_ground = v
                .trim()
                .parse()
                .map_err(|_| Error::parse(MAX_GROUND_ENV, format!("not a nonnegative integer: {v:?}")))?;
        }
        Ok(limits)
    }

    pub fn guard_ground(&self, size: usize) -> Result<()> {
        if size > self.max_ground || size > submeasure::SUBSET_TABLE_MAX {
            return Err(Error::SizeGuard {
                what: "ground size for subset enumeration",
                size,
                limit: self.max_ground.min(submeasure::SUBSET_TABLE_MAX),
            });
        }
        Ok(())
    }
}
