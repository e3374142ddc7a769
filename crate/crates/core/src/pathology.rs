//! Maximal dominated measures, pathology degrees and covering numbers.
//!
//! `φ̂(A)` is the optimum of the linear program
//!
//! ```text
//! maximize Σ_{x∈A} μ_x   subject to   μ(B) ≤ φ(B) for B in C,  μ ≥ 0
//! ```
//!
//! where `C` is every `B ⊆ A` in general and `{s ∩ A : s ∈ family}` for
//! min-cover submeasures. Measures supported outside `A` can be cut down to
//! `A` without breaking domination, so the support is restricted to `A`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{self, LpError};
use crate::pointset::{masks_size_lex, GroundSet, PointSet};
use crate::rational::{Rational, RationalX};
use crate::submeasure::{Measure, Repr, Submeasure};
use crate::Limits;

/// Which constraint family produced a [`HatResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintSet {
    /// One constraint per subset of `A` (generated lazily, see [`hat`]).
    AllSubsets,
    /// One constraint `μ(s ∩ A) ≤ 1` per family set.
    CoverFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatResult {
    pub value: Rational,
    /// Optimal dominated measure, supported inside `A`.
    pub witness: Measure,
    pub constraints: ConstraintSet,
    /// Constraint sets tight at the optimal vertex.
    pub basis: Vec<PointSet>,
    /// Dual certificate: weights `y_B > 0` with `Σ y_B φ(B) = value` and
    /// `Σ_{B ∋ x} y_B ≥ 1` for every `x ∈ A`.
    pub certificate: Vec<(PointSet, Rational)>,
}

/// `φ̂(A)`, choosing the constraint family from the representation.
///
/// Min-cover submeasures use one constraint per family set on any `A`.
/// Every other representation needs `|A| ≤ limits.max_hat_set`; the
/// subset constraints are added as cutting planes (the most violated subset
/// is added until none is violated), which reaches the same optimum as
/// the full constraint set.
pub fn hat(phi: &Submeasure, a: &PointSet, limits: &Limits) -> Result<HatResult> {
    phi.ground().check(a)?;
    match phi.repr() {
        Repr::MinCover(family) => hat_min_cover(phi.size(), a, family),
        _ => hat_all_subsets(phi, a, limits),
    }
}

/// `φ̂(A)` with subset constraints, whatever the representation.
pub fn hat_all_subsets(phi: &Submeasure, a: &PointSet, limits: &Limits) -> Result<HatResult> {
    phi.ground().check(a)?;
    let k = a.len();
    if k > limits.max_hat_set {
        return Err(Error::SizeGuard {
            what: "hat set size for subset constraints",
            size: k,
            limit: limits.max_hat_set,
        });
    }
    let points = a.to_vec();
    let values = phi.values_on(&points)?;
    let local = hat_local(&values, k).map_err(|i| Error::InfiniteSingleton { point: points[i] })?;
    let n = phi.size();
    let lift = |mask: usize| {
        PointSet::from_points(n, (0..k).filter(|i| mask >> i & 1 == 1).map(|i| points[i])).expect("in ground")
    };
    let mut weights = vec![Rational::zero(); n];
    for (i, x) in local.x.into_iter().enumerate() {
        weights[points[i]] = x;
    }
    Ok(HatResult {
        value: local.value,
        witness: Measure::new(weights)?,
        constraints: ConstraintSet::AllSubsets,
        basis: local.tight.into_iter().map(lift).collect(),
        certificate: local.duals.into_iter().map(|(m, y)| (lift(m), y)).collect(),
    })
}

struct LocalHat {
    value: Rational,
    x: Vec<Rational>,
    tight: Vec<usize>,
    duals: Vec<(usize, Rational)>,
}

/// Cutting-plane solve on a local subset table (`values[mask]`, `k` points).
/// `Err(i)` when the singleton of local point `i` has infinite value.
fn hat_local(values: &[RationalX], k: usize) -> std::result::Result<LocalHat, usize> {
    if k == 0 {
        return Ok(LocalHat {
            value: Rational::zero(),
            x: vec![],
            tight: vec![],
            duals: vec![],
        });
    }
    if let Some(i) = (0..k).find(|&i| values[1 << i].is_inf()) {
        return Err(i);
    }
    let full = (1usize << k) - 1;
    let mut cons: Vec<usize> = (0..k).map(|i| 1 << i).collect();
    if k > 1 && !values[full].is_inf() {
        cons.push(full);
    }
    let ones = vec![Rational::one(); k];
    loop {
        let rows: Vec<Vec<Rational>> = cons
            .iter()
            .map(|&m| (0..k).map(|i| if m >> i & 1 == 1 { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        let rhs: Vec<Rational> = cons.iter().map(|&m| values[m].finite().cloned().expect("finite rhs")).collect();
        let sol = match lp::maximize(&ones, &rows, &rhs) {
            Ok(s) => s,
            Err(LpError::Unbounded { column }) => return Err(column),
            Err(e) => unreachable!("well-formed packing LP: {e:?}"),
        };
        // Most violated subset constraint, lowest mask on ties.
        let mut mass = vec![Rational::zero(); full + 1];
        let mut worst: Option<(usize, Rational)> = None;
        for m in 1..=full {
            let low = m.trailing_zeros() as usize;
            mass[m] = &mass[m & (m - 1)] + &sol.x[low];
            if let RationalX::Finite(v) = &values[m] {
                if mass[m] > *v {
                    let excess = &mass[m] - v;
                    if worst.as_ref().is_none_or(|(_, e)| excess > *e) {
                        worst = Some((m, excess));
                    }
                }
            }
        }
        match worst {
            Some((m, _)) => cons.push(m),
            None => {
                let tight = sol.tight_rows().into_iter().map(|r| cons[r]).collect();
                let duals = sol
                    .duals
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| !y.is_zero())
                    .map(|(r, y)| (cons[r], y.clone()))
                    .collect();
                return Ok(LocalHat {
                    value: sol.value,
                    x: sol.x,
                    tight,
                    duals,
                });
            }
        }
    }
}

/// `φ̂(A)` for a min-cover submeasure: `μ(s ∩ A) ≤ 1` for each family set.
///
/// Points of `A` lying in exactly the same family sets are interchangeable
/// in this program, so each such class becomes a single column whose mass
/// the witness places on the class's least point.
pub fn hat_min_cover(n: usize, a: &PointSet, family: &[PointSet]) -> Result<HatResult> {
    let points = a.to_vec();
    let mut class_of: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    let mut signatures: Vec<Vec<usize>> = Vec::new();
    for &p in &points {
        let sig: Vec<usize> = (0..family.len()).filter(|&j| family[j].contains(p)).collect();
        if sig.is_empty() {
            return Err(Error::InfiniteSingleton { point: p });
        }
        if !class_of.contains_key(&sig) {
            class_of.insert(sig.clone(), reps.len());
            reps.push(p);
            signatures.push(sig);
        }
    }
    // Rows: distinct nonempty traces s ∩ A, in family order.
    let mut row_sets: Vec<PointSet> = Vec::new();
    let mut row_cols: Vec<Vec<bool>> = Vec::new();
    for (j, s) in family.iter().enumerate() {
        let trace = s.intersection(a);
        if trace.is_empty() || row_sets.contains(&trace) {
            continue;
        }
        row_cols.push(signatures.iter().map(|sig| sig.binary_search(&j).is_ok()).collect());
        row_sets.push(trace);
    }
    let cols = reps.len();
    let rows: Vec<Vec<Rational>> = row_cols
        .iter()
        .map(|r| r.iter().map(|&b| if b { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let rhs = vec![Rational::one(); rows.len()];
    let sol = lp::maximize(&vec![Rational::one(); cols], &rows, &rhs)
        .map_err(|e| Error::Invalid(format!("cover LP failed: {e:?}")))?;
    let mut weights = vec![Rational::zero(); n];
    for (c, x) in sol.x.iter().enumerate() {
        weights[reps[c]] = x.clone();
    }
    Ok(HatResult {
        value: sol.value.clone(),
        witness: Measure::new(weights)?,
        constraints: ConstraintSet::CoverFamily,
        basis: sol.tight_rows().into_iter().map(|r| row_sets[r].clone()).collect(),
        certificate: sol
            .duals
            .iter()
            .enumerate()
            .filter(|(_, y)| !y.is_zero())
            .map(|(r, y)| (row_sets[r].clone(), y.clone()))
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    AllSubsets,
    Family(Vec<PointSet>),
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Keep every checked `(A, φ(A), φ̂(A))` in the report.
    pub include_table: bool,
    /// Stop starting new subsets after this instant; the report is then
    /// marked incomplete.
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RatioRow {
    pub set: Vec<usize>,
    pub value: RationalX,
    pub hat: String,
    /// `None` where `φ̂(A) = 0`.
    pub ratio: Option<RationalX>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PathologyReport {
    /// `None` when every checked set has `φ̂(A) = 0` (degree undefined).
    pub degree: Option<RationalX>,
    pub argmax: Option<Vec<usize>>,
    pub scope: &'static str,
    /// True for family scope: the value only bounds the degree from below.
    pub lower_bound: bool,
    /// False when a deadline cut the sweep short.
    pub complete: bool,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<RatioRow>>,
}

struct Checked {
    set: PointSet,
    value: RationalX,
    hat: Rational,
}

/// `P(φ) = max φ(A)/φ̂(A)` over the scope, skipping `φ̂(A) = 0`.
///
/// Ties go to the least set in size-then-lexicographic order. The
/// all-subsets sweep runs in parallel and is merged in that fixed order.
pub fn pathology_degree(phi: &Submeasure, scope: &Scope, limits: &Limits, opts: &SweepOptions) -> Result<PathologyReport> {
    let n = phi.size();
    let expired = AtomicBool::new(false);
    let out_of_time = || {
        if let Some(d) = opts.deadline {
            if Instant::now() >= d {
                expired.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    };

    let (checked, scope_name, lower_bound): (Vec<Checked>, _, _) = match scope {
        Scope::AllSubsets => {
            limits.guard_ground(n)?;
            let values = phi.all_values(limits)?;
            let masks: Vec<u64> = (1..(1u64 << n)).collect();
            let rows: Vec<Option<Result<Checked>>> = masks
                .par_iter()
                .map(|&m| {
                    if out_of_time() {
                        return None;
                    }
                    let set = PointSet::from_mask(n, m);
                    let value = values[m as usize].clone();
                    let h = match phi.repr() {
                        Repr::MinCover(family) => hat_min_cover(n, &set, family).map(|r| r.value),
                        _ => hat_from_global(&values, m, &set, limits),
                    };
                    Some(h.map(|hat| Checked { set, value, hat }))
                })
                .collect();
            let mut out = Vec::with_capacity(rows.len());
            for r in rows.into_iter().flatten() {
                out.push(r?);
            }
            (out, "all_subsets", false)
        }
        Scope::Family(sets) => {
            let mut out = Vec::with_capacity(sets.len());
            for s in sets {
                if out_of_time() {
                    break;
                }
                let value = phi.eval(s)?;
                let h = hat(phi, s, limits)?.value;
                out.push(Checked {
                    set: s.clone(),
                    value,
                    hat: h,
                });
            }
            (out, "family", true)
        }
    };

    let mut best: Option<(RationalX, &PointSet)> = None;
    for c in &checked {
        if c.hat.is_zero() {
            continue;
        }
        let r = c.value.div_finite(&c.hat);
        let better = match &best {
            None => true,
            Some((b, s)) => r > *b || (r == *b && c.set < **s),
        };
        if better {
            best = Some((r, &c.set));
        }
    }
    let table = opts.include_table.then(|| {
        let mut rows: Vec<&Checked> = checked.iter().collect();
        rows.sort_by(|a, b| a.set.cmp(&b.set));
        rows.into_iter()
            .map(|c| RatioRow {
                set: c.set.to_vec(),
                value: c.value.clone(),
                hat: crate::rational::format_rational(&c.hat),
                ratio: (!c.hat.is_zero()).then(|| c.value.div_finite(&c.hat)),
            })
            .collect()
    });
    Ok(PathologyReport {
        degree: best.as_ref().map(|(r, _)| r.clone()),
        argmax: best.map(|(_, s)| s.to_vec()),
        scope: scope_name,
        lower_bound,
        complete: !expired.load(Ordering::Relaxed),
        checked: checked.len() as u64,
        table,
    })
}

fn hat_from_global(values: &[RationalX], mask: u64, set: &PointSet, limits: &Limits) -> Result<Rational> {
    let k = mask.count_ones() as usize;
    if k > limits.max_hat_set {
        return Err(Error::SizeGuard {
            what: "hat set size for subset constraints",
            size: k,
            limit: limits.max_hat_set,
        });
    }
    // Submasks in increasing order line up with local masks 0..2^k.
    let local: Vec<RationalX> = crate::pointset::submasks(mask).map(|s| values[s as usize].clone()).collect();
    hat_local(&local, k)
        .map(|h| h.value)
        .map_err(|i| Error::InfiniteSingleton {
            point: set.iter().nth(i).expect("local index in set"),
        })
}

/// First `A` (size-then-lexicographic, `|A| ≥ 2`) with `φ(A) < |A|` and
/// `φ(A ∖ {x}) < φ(A)` for every `x ∈ A`. `None` is not a certificate of
/// nonpathology.
pub fn pathological_criterion(phi: &Submeasure, limits: &Limits) -> Result<Option<PointSet>> {
    let n = phi.size();
    let values = phi.all_values(limits)?;
    for (m, v) in values.iter().enumerate() {
        if let RationalX::Finite(r) = v {
            if !r.is_integer() {
                return Err(Error::NonIntegerValue {
                    set: PointSet::from_mask(n, m as u64).to_string(),
                    value: v.to_string(),
                });
            }
        }
    }
    for m in masks_size_lex(n) {
        let size = m.count_ones() as i64;
        if size < 2 {
            continue;
        }
        let v = &values[m as usize];
        if v.is_inf() || *v >= RationalX::from_int(size) {
            continue;
        }
        let drops = (0..n).filter(|b| m >> b & 1 == 1).all(|b| values[(m ^ (1 << b)) as usize] < *v);
        if drops {
            return Ok(Some(PointSet::from_mask(n, m)));
        }
    }
    Ok(None)
}

/// A ground `K` with a family `𝒮` of subsets of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringInstance {
    pub ground: GroundSet,
    pub family: Vec<PointSet>,
}

impl CoveringInstance {
    pub fn new(ground: GroundSet, family: Vec<PointSet>) -> Result<Self> {
        for s in &family {
            ground.check(s)?;
        }
        Ok(CoveringInstance { ground, family })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CoveringStats {
    /// `B(i)`: number of family sets containing point `i`.
    pub b: Vec<u64>,
    pub m: u64,
    #[serde(with = "crate::rational::serde_rational")]
    pub delta: Rational,
    pub family_size: usize,
}

pub fn covering_stats(inst: &CoveringInstance) -> Result<CoveringStats> {
    let points: Vec<usize> = (0..inst.ground.size()).collect();
    stats_on(&points, &inst.family)
}

fn stats_on(points: &[usize], family: &[PointSet]) -> Result<CoveringStats> {
    let mut b = Vec::with_capacity(points.len());
    for &p in points {
        let count = family.iter().filter(|s| s.contains(p)).count() as u64;
        if count == 0 {
            return Err(Error::CoverageGap { point: p });
        }
        b.push(count);
    }
    let m = *b.iter().min().ok_or(Error::EmptyGround)?;
    Ok(CoveringStats {
        b,
        m,
        delta: Rational::new(m.into(), (family.len() as u64).into()),
        family_size: family.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KelleyWitness {
    pub index: usize,
    pub set: PointSet,
    pub mass: Rational,
    pub delta: Rational,
}

/// A family set of largest `π`-mass (lowest index on ties); its mass is at
/// least `δ(K, 𝒮)` for every probability measure `π` on `K`.
pub fn kelley_witness(inst: &CoveringInstance, pi: &Measure) -> Result<KelleyWitness> {
    if pi.ground_size() != inst.ground.size() {
        return Err(Error::GroundMismatch {
            expected: inst.ground.size(),
            found: pi.ground_size(),
        });
    }
    let total = pi.total();
    if !total.is_one() {
        return Err(Error::NotProbability(format!("total mass {}", crate::rational::format_rational(&total))));
    }
    let stats = covering_stats(inst)?;
    let (index, mass) = best_set(&inst.family, pi).ok_or_else(|| Error::Invalid("empty family".into()))?;
    Ok(KelleyWitness {
        index,
        set: inst.family[index].clone(),
        mass,
        delta: stats.delta,
    })
}

fn best_set(family: &[PointSet], mu: &Measure) -> Option<(usize, Rational)> {
    let mut best: Option<(usize, Rational)> = None;
    for (i, s) in family.iter().enumerate() {
        let m = mu.mass(s);
        if best.as_ref().is_none_or(|(_, b)| m > *b) {
            best = Some((i, m));
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct UniformBound {
    /// Largest total mass of a measure on `K` dominated by `φ`.
    #[serde(with = "crate::rational::serde_rational")]
    pub max_mass: Rational,
    /// `M / δ`.
    #[serde(with = "crate::rational::serde_rational")]
    pub bound: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub delta: Rational,
    pub holds: bool,
}

/// Given `φ(s) ≤ M` on every family set, computes `φ̂(K)` by LP and compares
/// it with `M / δ(K, 𝒮)`.
pub fn uniform_bound_check(phi: &Submeasure, inst: &CoveringInstance, m: &Rational, limits: &Limits) -> Result<UniformBound> {
    if phi.size() != inst.ground.size() {
        return Err(Error::GroundMismatch {
            expected: phi.size(),
            found: inst.ground.size(),
        });
    }
    for (i, s) in inst.family.iter().enumerate() {
        let v = phi.eval(s)?;
        if v > RationalX::Finite(m.clone()) {
            return Err(Error::HypothesisFailure(format!("family set {i} has value {v} above M")));
        }
    }
    let stats = covering_stats(inst)?;
    let max_mass = hat(phi, &inst.ground.full(), limits)?.value;
    let bound = m / &stats.delta;
    Ok(UniformBound {
        holds: max_mass <= bound,
        max_mass,
        bound,
        delta: stats.delta,
    })
}

/// One block `I_j` of a partition with its covering family `𝒮_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub points: PointSet,
    pub family: Vec<PointSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSet {
    pub set: PointSet,
    /// Chosen family index per block; `None` for blocks of zero mass.
    pub picks: Vec<Option<usize>>,
    pub mass: Rational,
    /// `δ · μ(∪ I_j)`.
    pub required: Rational,
}

/// Picks in each block the family set of largest `μ`-mass and returns their
/// union `B`, with `μ(B) ≥ δ · μ(∪ I_j)`.
pub fn pathology_witness_set(blocks: &[Block], mu: &Measure, delta: &Rational) -> Result<WitnessSet> {
    let n = mu.ground_size();
    let mut covered = PointSet::empty(n);
    for (j, b) in blocks.iter().enumerate() {
        if b.points.capacity() != n {
            return Err(Error::GroundMismatch {
                expected: n,
                found: b.points.capacity(),
            });
        }
        if !b.points.is_disjoint(&covered) {
            return Err(Error::HypothesisFailure(format!("block {j} overlaps an earlier block")));
        }
        covered.union_with(&b.points);
        if let Some(i) = b.family.iter().position(|s| !s.is_subset(&b.points)) {
            return Err(Error::HypothesisFailure(format!("family set {i} of block {j} leaves the block")));
        }
        let stats = stats_on(&b.points.to_vec(), &b.family)
            .map_err(|e| Error::HypothesisFailure(format!("block {j}: {e}")))?;
        if *delta > stats.delta {
            return Err(Error::HypothesisFailure(format!(
                "δ exceeds the covering number {} of block {j}",
                crate::rational::format_rational(&stats.delta)
            )));
        }
    }
    if !mu.support().is_subset(&covered) {
        return Err(Error::HypothesisFailure("measure has mass outside the blocks".into()));
    }
    let mut set = PointSet::empty(n);
    let mut picks = Vec::with_capacity(blocks.len());
    for b in blocks {
        if mu.mass(&b.points).is_zero() {
            picks.push(None);
            continue;
        }
        let (i, _) = best_set(&b.family, mu).expect("covering family is nonempty");
        set.union_with(&b.family[i]);
        picks.push(Some(i));
    }
    let mass = mu.mass(&set);
    let required = delta * mu.mass(&covered);
    if mass < required {
        return Err(Error::HypothesisFailure("per-block Kelley picks fell short".into()));
    }
    Ok(WitnessSet {
        set,
        picks,
        mass,
        required,
    })
}
