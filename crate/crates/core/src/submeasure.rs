//! Finite submeasures and their representations.
//!
//! A submeasure on a ground `0..N` is a set function `φ` with `φ(∅) = 0`,
//! monotone and subadditive, with values in `[0, ∞]`. Four stored
//! representations are supported, plus three derived ones that evaluate
//! lazily through the submeasure they wrap.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::pointset::{masks_size_lex, GroundSet, PointSet};
use crate::rational::{Rational, RationalX};
use crate::reductions::PointMap;
use crate::setcover;
use crate::Limits;

/// Largest point count for which a full table of subset values is built.
pub const SUBSET_TABLE_MAX: usize = 20;

/// Default level cap for chain evaluation.
pub const DEFAULT_LEVEL_CAP: u32 = 64;

/// A nonnegative weight vector on the ground.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    weights: Vec<Rational>,
}

impl Measure {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyGround);
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::Invalid(format!("negative weight at point {i}")));
        }
        Ok(Measure { weights })
    }

    /// Counting measure supported on `support`.
    pub fn counting(support: &PointSet) -> Self {
        let one = Rational::from_integer(1.into());
        let weights = (0..support.capacity())
            .map(|i| if support.contains(i) { one.clone() } else { Rational::zero() })
            .collect();
        Measure { weights }
    }

    pub fn ground_size(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, point: usize) -> &Rational {
        &self.weights[point]
    }

    pub fn mass(&self, set: &PointSet) -> Rational {
        set.iter().map(|p| &self.weights[p]).sum()
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn support(&self) -> PointSet {
        PointSet::from_points(
            self.weights.len(),
            (0..self.weights.len()).filter(|&i| !self.weights[i].is_zero()),
        )
        .expect("indices in range")
    }
}

/// How many sets of level `n` are united to form level `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AritySchedule {
    /// `a(n) = c` for every level.
    Constant(u32),
    /// `a(n) = n`: level `n` is built from unions of `n` sets of level `n - 1`.
    Level,
    /// `explicit[i]` is the arity used to build level `i + 2`; the last
    /// entry repeats.
    Explicit(Vec<u32>),
}

impl AritySchedule {
    /// Arity used to build level `level` (`level >= 2`).
    pub fn arity(&self, level: u32) -> u32 {
        match self {
            AritySchedule::Constant(c) => *c,
            AritySchedule::Level => level,
            AritySchedule::Explicit(v) => {
                let i = (level.saturating_sub(2)) as usize;
                *v.get(i).or(v.last()).unwrap_or(&2)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            AritySchedule::Constant(c) => *c >= 2,
            AritySchedule::Level => true,
            AritySchedule::Explicit(v) => !v.is_empty() && v.iter().all(|&a| a >= 2),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid("arity schedule values must be at least 2".into()))
        }
    }
}

impl Default for AritySchedule {
    fn default() -> Self {
        AritySchedule::Constant(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MazurChain {
    /// Generators of the first level; the level itself is their hereditary
    /// closure together with all singletons.
    pub level1: Vec<PointSet>,
    pub arity: AritySchedule,
    pub level_cap: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Repr {
    Table(BTreeMap<PointSet, RationalX>),
    SupMeasures(Vec<Measure>),
    MinCover(Vec<PointSet>),
    MazurChain(MazurChain),
    /// `ψ(A) = φ1(A ∩ G1) + φ2(A ∩ G2)` on the concatenated ground.
    DirectSum(Box<Submeasure>, Box<Submeasure>),
    /// `φ_f(A) = φ(f⁻¹(A))`.
    Pushforward(Box<Submeasure>, PointMap),
    /// `φ` restricted to the listed (increasing) points, relabelled `0..k`.
    Restrict(Box<Submeasure>, Vec<usize>),
}

impl Repr {
    pub fn kind(&self) -> &'static str {
        match self {
            Repr::Table(_) => "table",
            Repr::SupMeasures(_) => "sup_measures",
            Repr::MinCover(_) => "min_cover",
            Repr::MazurChain(_) => "mazur_chain",
            Repr::DirectSum(..) => "direct_sum",
            Repr::Pushforward(..) => "pushforward",
            Repr::Restrict(..) => "restrict",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submeasure {
    ground: GroundSet,
    repr: Repr,
}

impl Submeasure {
    /// A table submeasure. Axioms are not enforced here; see
    /// [`crate::axioms::check_axioms`].
    pub fn table(ground: GroundSet, values: BTreeMap<PointSet, RationalX>) -> Result<Self> {
        for set in values.keys() {
            ground.check(set)?;
        }
        Ok(Submeasure {
            ground,
            repr: Repr::Table(values),
        })
    }

    pub fn min_cover(ground: GroundSet, family: Vec<PointSet>) -> Result<Self> {
        for s in &family {
            ground.check(s)?;
        }
        Ok(Submeasure {
            ground,
            repr: Repr::MinCover(family),
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.size()
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size() {
            return Err(Error::GroundMismatch {
                expected: self.size(),
                found: labels.len(),
            });
        }
        self.ground = GroundSet::with_labels(labels)?;
        Ok(self)
    }

    pub fn set(&self, points: impl IntoIterator<Item = usize>) -> Result<PointSet> {
        PointSet::from_points(self.size(), points)
    }

    /// `φ(A)`.
    pub fn eval(&self, a: &PointSet) -> Result<RationalX> {
        self.ground.check(a)?;
        if a.is_empty() {
            // Every representation gives 0 on ∅ except a malformed table,
            // which must still be reported faithfully.
            if let Repr::Table(t) = &self.repr {
                return t
                    .get(a)
                    .cloned()
                    .ok_or_else(|| Error::MissingTableEntry(a.to_string()));
            }
            return Ok(RationalX::zero());
        }
        match &self.repr {
            Repr::Table(t) => t
                .get(a)
                .cloned()
                .ok_or_else(|| Error::MissingTableEntry(a.to_string())),
            Repr::SupMeasures(ms) => Ok(ms
                .iter()
                .map(|m| m.mass(a))
                .max()
                .map(RationalX::Finite)
                .unwrap_or_else(RationalX::zero)),
            Repr::MinCover(family) => Ok(match setcover::min_cover_size(a, family) {
                Some(k) => RationalX::from_int(k as i64),
                None => RationalX::Inf,
            }),
            Repr::MazurChain(_) => {
                let pts = a.to_vec();
                let table = self.values_on(&pts)?;
                Ok(table.last().cloned().expect("nonempty table"))
            }
            Repr::DirectSum(left, right) => {
                let n1 = left.size();
                let a1 = PointSet::from_points(n1, a.iter().filter(|&p| p < n1))?;
                let a2 = PointSet::from_points(right.size(), a.iter().filter(|&p| p >= n1).map(|p| p - n1))?;
                Ok(left.eval(&a1)? + right.eval(&a2)?)
            }
            Repr::Pushforward(inner, map) => inner.eval(&map.preimage(a)?),
            Repr::Restrict(inner, points) => {
                let mapped = PointSet::from_points(inner.size(), a.iter().map(|p| points[p]))?;
                inner.eval(&mapped)
            }
        }
    }

    /// Values on every subset of `points` (which must be increasing), indexed
    /// by local bitmask: bit `i` of the index stands for `points[i]`.
    pub fn values_on(&self, points: &[usize]) -> Result<Vec<RationalX>> {
        let k = points.len();
        if k > SUBSET_TABLE_MAX {
            return Err(Error::SizeGuard {
                what: "subset table points",
                size: k,
                limit: SUBSET_TABLE_MAX,
            });
        }
        if let Some(&p) = points.iter().find(|&&p| p >= self.size()) {
            return Err(Error::Invalid(format!("point {p} outside ground of size {}", self.size())));
        }
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        let full = 1usize << k;
        let local = |mask: usize| -> PointSet {
            let mut s = PointSet::empty(self.size());
            for (i, &p) in points.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.insert(p);
                }
            }
            s
        };
        let local_mask_of = |set: &PointSet| -> usize {
            points
                .iter()
                .enumerate()
                .filter(|(_, &p)| set.contains(p))
                .fold(0usize, |m, (i, _)| m | 1 << i)
        };

        match &self.repr {
            Repr::Table(_) | Repr::Pushforward(..) => (0..full).map(|m| self.eval(&local(m))).collect(),
            Repr::SupMeasures(ms) => {
                let mut best = vec![Rational::zero(); full];
                let mut sums = vec![Rational::zero(); full];
                for m in ms {
                    for mask in 1..full {
                        let low = mask.trailing_zeros() as usize;
                        sums[mask] = &sums[mask & (mask - 1)] + m.weight(points[low]);
                        if sums[mask] > best[mask] {
                            best[mask] = sums[mask].clone();
                        }
                    }
                }
                Ok(best.into_iter().map(RationalX::Finite).collect())
            }
            Repr::MinCover(family) => {
                let fam: Vec<usize> = family.iter().map(local_mask_of).filter(|&m| m != 0).collect();
                let inf = u32::MAX;
                let mut cover = vec![inf; full];
                cover[0] = 0;
                for mask in 1..full {
                    let low = mask & mask.wrapping_neg();
                    let mut best = inf;
                    for &s in &fam {
                        if s & low != 0 {
                            let rest = cover[mask & !s];
                            if rest != inf && rest + 1 < best {
                                best = rest + 1;
                            }
                        }
                    }
                    cover[mask] = best;
                }
                Ok(cover
                    .into_iter()
                    .map(|c| if c == inf { RationalX::Inf } else { RationalX::from_int(c as i64) })
                    .collect())
            }
            Repr::MazurChain(chain) => {
                let gens: Vec<usize> = chain.level1.iter().map(local_mask_of).collect();
                let levels = chain_levels(k, &gens, &chain.arity, chain.level_cap);
                if levels[full - 1].is_none() {
                    return Err(Error::LevelCapExceeded { cap: chain.level_cap });
                }
                Ok(levels
                    .into_iter()
                    .map(|l| l.map_or(RationalX::Inf, |l| RationalX::from_int(l as i64)))
                    .collect())
            }
            Repr::DirectSum(left, right) => {
                let n1 = left.size();
                let split = points.iter().take_while(|&&p| p < n1).count();
                let left_pts: Vec<usize> = points[..split].to_vec();
                let right_pts: Vec<usize> = points[split..].iter().map(|p| p - n1).collect();
                let lt = left.values_on(&left_pts)?;
                let rt = right.values_on(&right_pts)?;
                let lmask = (1usize << split) - 1;
                Ok((0..full).map(|m| &lt[m & lmask] + &rt[m >> split]).collect())
            }
            Repr::Restrict(inner, sub) => {
                let mapped: Vec<usize> = points.iter().map(|&p| sub[p]).collect();
                inner.values_on(&mapped)
            }
        }
    }

    /// Values on every subset of the whole ground, indexed by bitmask.
    pub fn all_values(&self, limits: &Limits) -> Result<Vec<RationalX>> {
        limits.guard_ground(self.size())?;
        let pts: Vec<usize> = (0..self.size()).collect();
        self.values_on(&pts)
    }

    /// Materializes the submeasure as an explicit table.
    pub fn to_table(&self, limits: &Limits) -> Result<Submeasure> {
        let values = self.all_values(limits)?;
        let map = values
            .into_iter()
            .enumerate()
            .map(|(m, v)| (PointSet::from_mask(self.size(), m as u64), v))
            .collect();
        Ok(Submeasure {
            ground: self.ground.clone(),
            repr: Repr::Table(map),
        })
    }

    pub fn as_measures(&self) -> Option<&[Measure]> {
        match &self.repr {
            Repr::SupMeasures(ms) => Some(ms),
            _ => None,
        }
    }

    pub(crate) fn from_parts(ground: GroundSet, repr: Repr) -> Self {
        Submeasure { ground, repr }
    }
}

/// Chain level of every local mask; `None` where the cap is reached first.
fn chain_levels(k: usize, gens: &[usize], arity: &AritySchedule, cap: u32) -> Vec<Option<u32>> {
    let full = 1usize << k;
    let mut member = vec![false; full];
    for &g in gens {
        member[g] = true;
    }
    for (m, slot) in member.iter_mut().enumerate() {
        if m.count_ones() <= 1 {
            *slot = true;
        }
    }
    // Hereditary closure: push membership down to every submask.
    for bit in 0..k {
        for m in (0..full).rev() {
            if m >> bit & 1 == 1 && member[m] {
                member[m ^ (1 << bit)] = true;
            }
        }
    }
    let mut level = vec![None; full];
    level[0] = Some(0);
    let mut assigned = 1usize;
    for m in 1..full {
        if member[m] {
            level[m] = Some(1);
            assigned += 1;
        }
    }
    let mut current = 1u32;
    while assigned < full && current < cap {
        let next = current + 1;
        let a = arity.arity(next);
        // parts[m]: least number of current-level sets partitioning m,
        // saturated at a + 1.
        let sat = a + 1;
        let mut parts = vec![sat; full];
        parts[0] = 0;
        for m in 1..full {
            if member[m] {
                parts[m] = 1;
                continue;
            }
            let low = m & m.wrapping_neg();
            let rest_bits = m ^ low;
            let mut best = sat;
            // Submasks s of m containing the lowest bit.
            let mut sub = rest_bits;
            loop {
                let s = sub | low;
                if member[s] {
                    let r = parts[m ^ s];
                    if r + 1 < best {
                        best = r + 1;
                        if best == 2 {
                            break;
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest_bits;
            }
            parts[m] = best;
        }
        for m in 1..full {
            if !member[m] && parts[m] <= a {
                member[m] = true;
                level[m] = Some(next);
                assigned += 1;
            }
        }
        current = next;
    }
    level
}

/// Mazur-chain submeasure from first-level generators and an arity schedule.
pub fn mazur_from_chain(ground: GroundSet, level1: Vec<PointSet>, arity: AritySchedule) -> Result<Submeasure> {
    arity.validate()?;
    for s in &level1 {
        ground.check(s)?;
    }
    Ok(Submeasure {
        ground,
        repr: Repr::MazurChain(MazurChain {
            level1,
            arity,
            level_cap: DEFAULT_LEVEL_CAP,
        }),
    })
}

/// Same as [`mazur_from_chain`] with an explicit level cap.
pub fn mazur_from_chain_capped(
    ground: GroundSet,
    level1: Vec<PointSet>,
    arity: AritySchedule,
    level_cap: u32,
) -> Result<Submeasure> {
    let mut s = mazur_from_chain(ground, level1, arity)?;
    if let Repr::MazurChain(c) = &mut s.repr {
        c.level_cap = level_cap.max(1);
    }
    Ok(s)
}

/// Pointwise supremum of a nonempty list of measures on a shared ground.
pub fn sup_of_measures(measures: Vec<Measure>) -> Result<Submeasure> {
    let first = measures.first().ok_or_else(|| Error::Invalid("empty measure list".into()))?;
    let n = first.ground_size();
    if let Some(m) = measures.iter().find(|m| m.ground_size() != n) {
        return Err(Error::GroundMismatch {
            expected: n,
            found: m.ground_size(),
        });
    }
    Ok(Submeasure {
        ground: GroundSet::new(n)?,
        repr: Repr::SupMeasures(measures),
    })
}

/// `ψ(A) = φ1(A ∩ G1) + φ2(A ∩ G2)` where `G2` is relabelled after `G1`.
pub fn direct_sum(left: &Submeasure, right: &Submeasure) -> Result<Submeasure> {
    let n = left.size() + right.size();
    let ground = match (left.ground.labels(), right.ground.labels()) {
        (Some(l), Some(r)) => GroundSet::with_labels(l.iter().chain(r).cloned().collect())
            .or_else(|_| GroundSet::new(n))?,
        _ => GroundSet::new(n)?,
    };
    Ok(Submeasure {
        ground,
        repr: Repr::DirectSum(Box::new(left.clone()), Box::new(right.clone())),
    })
}

/// [`direct_sum`] materialized as a table; errors above `2^16` entries.
pub fn direct_sum_table(left: &Submeasure, right: &Submeasure) -> Result<Submeasure> {
    let n = left.size() + right.size();
    if n > 16 {
        return Err(Error::SizeGuard {
            what: "direct sum table entries (log2)",
            size: n,
            limit: 16,
        });
    }
    direct_sum(left, right)?.to_table(&Limits { max_ground: 16, ..Limits::default() })
}

/// `φ` restricted to `x`, relabelled `0..|x|` in increasing order.
pub fn restrict(phi: &Submeasure, x: &PointSet) -> Result<Submeasure> {
    phi.ground.check(x)?;
    if x.is_empty() {
        return Err(Error::EmptyRestriction);
    }
    let points = x.to_vec();
    let ground = match phi.ground.labels() {
        Some(l) => GroundSet::with_labels(points.iter().map(|&p| l[p].clone()).collect())?,
        None => GroundSet::new(points.len())?,
    };
    Ok(Submeasure {
        ground,
        repr: Repr::Restrict(Box::new(phi.clone()), points),
    })
}

/// `d(A, B) = φ(A △ B)`.
pub fn group_metric(phi: &Submeasure, a: &PointSet, b: &PointSet) -> Result<RationalX> {
    phi.ground.check(a)?;
    phi.ground.check(b)?;
    phi.eval(&a.symmetric_difference(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub set: PointSet,
    pub value: u64,
    /// True when found by exhaustive size-then-lexicographic search (the
    /// least such set); false when found by greedy descent from the ground.
    pub exhaustive: bool,
}

/// A ⊆-minimal set `B` with `φ(B) = k`: every proper subset has value `< k`.
///
/// On grounds within `limits` the least such set in size-then-lexicographic
/// order is returned. Larger grounds use greedy point removal from the whole
/// ground. `NotAttained` only speaks about this finite ground.
pub fn integer_valued_probe(phi: &Submeasure, k: u64, limits: &Limits) -> Result<ProbeResult> {
    if k == 0 {
        return Ok(ProbeResult {
            set: phi.ground.empty(),
            value: 0,
            exhaustive: true,
        });
    }
    let n = phi.size();
    let as_int = |set: &PointSet, v: &RationalX| -> Result<Option<u64>> {
        match v {
            RationalX::Inf => Ok(None),
            RationalX::Finite(r) if r.is_integer() && !r.is_negative() => {
                Ok(v.as_integer().map(|i| i as u64))
            }
            RationalX::Finite(_) => Err(Error::NonIntegerValue {
                set: set.to_string(),
                value: v.to_string(),
            }),
        }
    };
    if n <= limits.max_ground {
        let values = phi.all_values(limits)?;
        for mask in masks_size_lex(n) {
            let set = PointSet::from_mask(n, mask);
            if as_int(&set, &values[mask as usize])? == Some(k) {
                return Ok(ProbeResult {
                    set,
                    value: k,
                    exhaustive: true,
                });
            }
        }
        return Err(Error::NotAttained(k));
    }

    let mut cur = phi.ground.full();
    let start = phi.eval(&cur)?;
    match as_int(&cur, &start)? {
        Some(v) if v < k => return Err(Error::NotAttained(k)),
        _ => {}
    }
    for p in 0..n {
        let mut trial = cur.clone();
        trial.remove(p);
        let v = phi.eval(&trial)?;
        let keep_removed = match as_int(&trial, &v)? {
            Some(v) => v >= k,
            None => true,
        };
        if keep_removed {
            cur = trial;
        }
    }
    let v = phi.eval(&cur)?;
    match as_int(&cur, &v)? {
        Some(v) if v == k => Ok(ProbeResult {
            set: cur,
            value: k,
            exhaustive: false,
        }),
        _ => Err(Error::NotAttained(k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::zoo::gen_minimal_pathological;

    fn set(n: usize, pts: &[usize]) -> PointSet {
        PointSet::from_points(n, pts.iter().copied()).unwrap()
    }

    #[test]
    fn minimal_example_values() {
        let phi = gen_minimal_pathological();
        assert_eq!(phi.eval(&set(3, &[0, 1, 2])).unwrap(), RationalX::from_int(2));
        assert_eq!(phi.eval(&set(3, &[])).unwrap(), RationalX::zero());
        assert_eq!(phi.eval(&set(3, &[0, 1])).unwrap(), RationalX::from_int(1));
    }

    #[test]
    fn ground_mismatch() {
        let phi = gen_minimal_pathological();
        assert!(matches!(phi.eval(&set(4, &[0])), Err(Error::GroundMismatch { .. })));
    }

    #[test]
    fn chain_singletons_only() {
        let g = GroundSet::new(5).unwrap();
        let phi = mazur_from_chain(g, vec![], AritySchedule::default()).unwrap();
        for p in 0..5 {
            assert_eq!(phi.eval(&set(5, &[p])).unwrap(), RationalX::from_int(1));
        }
        assert_eq!(phi.eval(&set(5, &[1, 3])).unwrap(), RationalX::from_int(2));
        // Arity 2: level n holds every set of size <= 2^(n-1).
        assert_eq!(phi.eval(&set(5, &[0, 1, 2])).unwrap(), RationalX::from_int(3));
        assert_eq!(phi.eval(&set(5, &[0, 1, 2, 3])).unwrap(), RationalX::from_int(3));
        assert_eq!(phi.eval(&set(5, &[0, 1, 2, 3, 4])).unwrap(), RationalX::from_int(4));
    }

    #[test]
    fn chain_level_cap_is_not_infinity() {
        let g = GroundSet::new(4).unwrap();
        let phi = mazur_from_chain_capped(g, vec![], AritySchedule::default(), 2).unwrap();
        assert_eq!(phi.eval(&set(4, &[0, 1])).unwrap(), RationalX::from_int(2));
        assert_eq!(phi.eval(&set(4, &[0, 1, 2])), Err(Error::LevelCapExceeded { cap: 2 }));
    }

    #[test]
    fn arity_must_be_at_least_two() {
        let g = GroundSet::new(2).unwrap();
        assert!(mazur_from_chain(g, vec![], AritySchedule::Constant(1)).is_err());
    }

    #[test]
    fn sup_measures_eval() {
        let m1 = Measure::new(vec![int(1), int(0)]).unwrap();
        let m2 = Measure::new(vec![int(0), int(1)]).unwrap();
        let phi = sup_of_measures(vec![m1, m2]).unwrap();
        assert_eq!(phi.eval(&set(2, &[0, 1])).unwrap(), RationalX::from_int(1));
        let counting = sup_of_measures(vec![Measure::counting(&set(2, &[0, 1]))]).unwrap();
        assert_eq!(counting.eval(&set(2, &[0, 1])).unwrap(), RationalX::from_int(2));
        let bad = Measure::new(vec![int(1)]).unwrap();
        assert!(matches!(
            sup_of_measures(vec![Measure::counting(&set(2, &[0])), bad]),
            Err(Error::GroundMismatch { .. })
        ));
        assert!(Measure::new(vec![ratio(-1, 2)]).is_err());
    }

    #[test]
    fn min_cover_table_agrees_with_branch_and_bound() {
        let fam = vec![set(6, &[0, 1, 2]), set(6, &[2, 3]), set(6, &[3, 4]), set(6, &[1, 4])];
        let phi = Submeasure::min_cover(GroundSet::new(6).unwrap(), fam).unwrap();
        let table = phi.all_values(&Limits::default()).unwrap();
        for mask in 0..64u64 {
            let s = PointSet::from_mask(6, mask);
            assert_eq!(table[mask as usize], phi.eval(&s).unwrap(), "mask {mask:b}");
        }
        // Point 5 is uncovered.
        assert_eq!(phi.eval(&set(6, &[5])).unwrap(), RationalX::Inf);
    }

    #[test]
    fn direct_sum_adds() {
        let phi0 = gen_minimal_pathological();
        let one = sup_of_measures(vec![Measure::counting(&set(1, &[0]))]).unwrap();
        let psi = direct_sum(&phi0, &one).unwrap();
        assert_eq!(psi.eval(&set(4, &[0, 1, 2, 3])).unwrap(), RationalX::from_int(3));
        assert_eq!(psi.eval(&set(4, &[0, 1])).unwrap(), RationalX::from_int(1));
        let t = direct_sum_table(&phi0, &one).unwrap();
        assert_eq!(t.eval(&set(4, &[0, 1, 2, 3])).unwrap(), RationalX::from_int(3));
    }

    #[test]
    fn direct_sum_table_guard() {
        let big = Submeasure::min_cover(GroundSet::new(10).unwrap(), vec![]).unwrap();
        assert!(matches!(direct_sum_table(&big, &big), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn restrict_identity_and_empty() {
        let phi = gen_minimal_pathological();
        let r = restrict(&phi, &set(3, &[0, 1, 2])).unwrap();
        for mask in 0..8 {
            let s = PointSet::from_mask(3, mask);
            assert_eq!(r.eval(&s).unwrap(), phi.eval(&s).unwrap());
        }
        assert_eq!(restrict(&phi, &set(3, &[])), Err(Error::EmptyRestriction));
        let r2 = restrict(&phi, &set(3, &[0, 2])).unwrap();
        assert_eq!(r2.eval(&set(2, &[0, 1])).unwrap(), RationalX::from_int(1));
    }

    #[test]
    fn metric_examples() {
        let phi = gen_minimal_pathological();
        let a = set(3, &[0]);
        assert_eq!(group_metric(&phi, &a, &a).unwrap(), RationalX::zero());
        assert_eq!(group_metric(&phi, &set(3, &[0]), &set(3, &[1])).unwrap(), RationalX::from_int(1));
        assert_eq!(group_metric(&phi, &set(3, &[]), &set(3, &[0, 1, 2])).unwrap(), RationalX::from_int(2));
    }

    #[test]
    fn probe_minimal_and_singletons() {
        let phi = gen_minimal_pathological();
        let limits = Limits::default();
        let r = integer_valued_probe(&phi, 2, &limits).unwrap();
        assert_eq!(r.set, set(3, &[0, 1, 2]));
        assert!(r.exhaustive);
        assert_eq!(integer_valued_probe(&phi, 1, &limits).unwrap().set, set(3, &[0]));
        assert_eq!(integer_valued_probe(&phi, 3, &limits), Err(Error::NotAttained(3)));
    }

    #[test]
    fn probe_rejects_fractional_values() {
        let m = Measure::new(vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let phi = sup_of_measures(vec![m]).unwrap();
        assert!(matches!(
            integer_valued_probe(&phi, 2, &Limits::default()),
            Err(Error::NonIntegerValue { .. })
        ));
    }
}
