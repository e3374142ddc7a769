//! Checking `φ(∅) = 0`, monotonicity and subadditivity.
//!
//! Exhaustive mode checks `φ(A) ≤ φ(A ∪ {x})` for every set and point and
//! `φ(A ∪ B) ≤ φ(A) + φ(B)` for every disjoint pair. Those two families imply
//! the general statements: for arbitrary `A, B`,
//! `φ(A ∪ B) ≤ φ(A) + φ(B ∖ A) ≤ φ(A) + φ(B)`, the last step by chaining
//! single-point monotonicity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::error::Result;
use crate::pointset::PointSet;
use crate::rational::RationalX;
use crate::rng::{random_subset, trial_rng};
use crate::submeasure::Submeasure;
use crate::Limits;

/// Number of random pairs drawn in sampled mode.
pub const SAMPLED_TRIALS: u64 = 10_000;

/// At most this many violations are listed; all are counted.
pub const MAX_LISTED: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptySet { value: RationalX },
    Monotonicity { subset: Vec<usize>, superset: Vec<usize>, subset_value: RationalX, superset_value: RationalX },
    Subadditivity { a: Vec<usize>, b: Vec<usize>, a_value: RationalX, b_value: RationalX, union_value: RationalX },
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled { seed: u64, trials: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AxiomReport {
    pub mode: CheckMode,
    pub ground: usize,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn record(&mut self, v: Violation) {
        self.violation_count += 1;
        if self.violations.len() < MAX_LISTED {
            self.violations.push(v);
        }
    }
}

/// Exhaustive on grounds within `limits.max_ground`, sampled otherwise.
pub fn check_axioms(phi: &Submeasure, limits: &Limits, seed: u64) -> Result<AxiomReport> {
    if phi.size() <= limits.max_ground && phi.size() <= crate::submeasure::SUBSET_TABLE_MAX {
        check_exhaustive(phi, limits)
    } else {
        check_sampled(phi, seed, SAMPLED_TRIALS)
    }
}

pub fn check_exhaustive(phi: &Submeasure, limits: &Limits) -> Result<AxiomReport> {
    let n = phi.size();
    let values = phi.all_values(limits)?;
    let mut report = AxiomReport {
        mode: CheckMode::Exhaustive,
        ground: n,
        violation_count: 0,
        violations: vec![],
    };
    if !values[0].is_zero() {
        report.record(Violation::EmptySet { value: values[0].clone() });
    }
    let scaled = scale_to_integers(&values);
    let le = |u: usize, v: usize| -> bool {
        match &scaled {
            Some(s) => s[u] <= s[v],
            None => values[u] <= values[v],
        }
    };
    let full = values.len();
    let set = |m: usize| PointSet::from_mask(n, m as u64).to_vec();

    for m in 0..full {
        for bit in 0..n {
            let sup = m | 1 << bit;
            if sup != m && !le(m, sup) {
                report.record(Violation::Monotonicity {
                    subset: set(m),
                    superset: set(sup),
                    subset_value: values[m].clone(),
                    superset_value: values[sup].clone(),
                });
            }
        }
    }

    for u in 1..full {
        // Unordered splits u = a ⊔ b with the lowest bit in a and b ≠ ∅.
        let low = u & u.wrapping_neg();
        let rest = u ^ low;
        let mut sub = rest;
        loop {
            let a = sub | low;
            let b = u ^ a;
            if b != 0 {
                let ok = match &scaled {
                    Some(s) => s[u] <= s[a].saturating_add(s[b]),
                    None => values[u] <= &values[a] + &values[b],
                };
                if !ok {
                    report.record(Violation::Subadditivity {
                        a: set(a),
                        b: set(b),
                        a_value: values[a].clone(),
                        b_value: values[b].clone(),
                        union_value: values[u].clone(),
                    });
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    Ok(report)
}

/// Values over a common denominator as `i64`, with `∞` mapped far above
/// every finite value. `None` if the numbers do not fit comfortably.
fn scale_to_integers(values: &[RationalX]) -> Option<Vec<i64>> {
    let mut den = BigInt::one();
    for v in values {
        if let RationalX::Finite(r) = v {
            den = den.lcm(r.denom());
        }
    }
    const INF: i64 = i64::MAX / 4;
    const BOUND: i64 = i64::MAX / 16;
    values
        .iter()
        .map(|v| match v {
            RationalX::Inf => Some(INF),
            RationalX::Finite(r) => {
                let scaled = r.numer() * (&den / r.denom());
                scaled.to_i64().filter(|x| x.abs() < BOUND)
            }
        })
        .collect()
}

/// `trials` random pairs `(A, B)`: checks `φ(A) ≤ φ(A ∪ B)`,
/// `φ(B) ≤ φ(A ∪ B)` and `φ(A ∪ B) ≤ φ(A) + φ(B)`, plus `φ(∅) = 0`.
pub fn check_sampled(phi: &Submeasure, seed: u64, trials: u64) -> Result<AxiomReport> {
    let n = phi.size();
    let mut report = AxiomReport {
        mode: CheckMode::Sampled { seed, trials },
        ground: n,
        violation_count: 0,
        violations: vec![],
    };
    let empty = phi.eval(&PointSet::empty(n))?;
    if !empty.is_zero() {
        report.record(Violation::EmptySet { value: empty });
    }
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        // Mix sparse and dense sets so that small unions are exercised too.
        let keep_a = rng.gen_range(0.0..=1.0f64).powi(3);
        let keep_b = rng.gen_range(0.0..=1.0f64).powi(3);
        let a = random_subset(&mut rng, n, keep_a);
        let b = random_subset(&mut rng, n, keep_b);
        let u = a.union(&b);
        let (va, vb, vu) = (phi.eval(&a)?, phi.eval(&b)?, phi.eval(&u)?);
        for (s, vs) in [(&a, &va), (&b, &vb)] {
            if vs > &vu {
                report.record(Violation::Monotonicity {
                    subset: s.to_vec(),
                    superset: u.to_vec(),
                    subset_value: vs.clone(),
                    superset_value: vu.clone(),
                });
            }
        }
        if vu > &va + &vb {
            report.record(Violation::Subadditivity {
                a: a.to_vec(),
                b: b.to_vec(),
                a_value: va,
                b_value: vb,
                union_value: vu,
            });
        }
    }
    Ok(report)
}
