//! Pushforwards along point maps and the reduction from Mazur's ideal on
//! injective functions to Solecki's levels.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pathology::{hat, pathology_degree, PathologyReport, Scope, SweepOptions};
use crate::pointset::{combinations, GroundSet, PointSet};
use crate::rational::{ratio, Rational, RationalX};
use crate::setcover::min_cover;
use crate::submeasure::{Measure, Repr, Submeasure};
use crate::zoo::{gen_mazur, gen_solecki, index_of_function, omega_codes};
use crate::Limits;

/// A total function from `0..source` to `0..target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    source: usize,
    target: usize,
    map: Vec<usize>,
}

impl PointMap {
    pub fn new(target: usize, map: Vec<usize>) -> Result<Self> {
        if map.is_empty() || target == 0 {
            return Err(Error::EmptyGround);
        }
        if let Some(i) = map.iter().position(|&y| y >= target) {
            return Err(Error::Invalid(format!("f({i}) = {} is outside the target of size {target}", map[i])));
        }
        Ok(PointMap {
            source: map.len(),
            target,
            map,
        })
    }

    pub fn identity(n: usize) -> Self {
        PointMap {
            source: n,
            target: n,
            map: (0..n).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `f⁻¹(A)`.
    pub fn preimage(&self, a: &PointSet) -> Result<PointSet> {
        if a.capacity() != self.target {
            return Err(Error::GroundMismatch {
                expected: self.target,
                found: a.capacity(),
            });
        }
        PointSet::from_points(self.source, (0..self.source).filter(|&x| a.contains(self.map[x])))
    }

    /// `f(B)`.
    pub fn image(&self, b: &PointSet) -> Result<PointSet> {
        if b.capacity() != self.source {
            return Err(Error::GroundMismatch {
                expected: self.source,
                found: b.capacity(),
            });
        }
        PointSet::from_points(self.target, b.iter().map(|x| self.map[x]))
    }
}

/// `φ_f(A) = φ(f⁻¹(A))`, evaluated lazily.
pub fn pushforward(phi: &Submeasure, f: &PointMap) -> Result<Submeasure> {
    if phi.size() != f.source {
        return Err(Error::GroundMismatch {
            expected: phi.size(),
            found: f.source,
        });
    }
    Ok(Submeasure::from_parts(
        GroundSet::new(f.target)?,
        Repr::Pushforward(Box::new(phi.clone()), f.clone()),
    ))
}

/// Image measure `ν_f({y}) = ν(f⁻¹({y}))`.
pub fn pushforward_measure(mu: &Measure, f: &PointMap) -> Result<Measure> {
    if mu.ground_size() != f.source {
        return Err(Error::GroundMismatch {
            expected: f.source,
            found: mu.ground_size(),
        });
    }
    let mut w = vec![Rational::zero(); f.target];
    for x in 0..f.source {
        w[f.map[x]] += mu.weight(x);
    }
    Measure::new(w)
}

/// Ground limit for [`pathology_monotonicity_check`].
pub const MONOTONICITY_MAX_GROUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MonotonicityReport {
    pub image: PathologyReport,
    pub source: PathologyReport,
    /// `P(φ_f) ≤ P(φ)`; `None` when either degree is undefined.
    pub holds: Option<bool>,
}

pub fn pathology_monotonicity_check(phi: &Submeasure, f: &PointMap, limits: &Limits) -> Result<MonotonicityReport> {
    for size in [f.source, f.target] {
        if size > MONOTONICITY_MAX_GROUND {
            return Err(Error::SizeGuard {
                what: "ground for degree comparison",
                size,
                limit: MONOTONICITY_MAX_GROUND,
            });
        }
    }
    let pushed = pushforward(phi, f)?;
    let opts = SweepOptions::default();
    let image = pathology_degree(&pushed, &Scope::AllSubsets, limits, &opts)?;
    let source = pathology_degree(phi, &Scope::AllSubsets, limits, &opts)?;
    let holds = match (&image.degree, &source.degree) {
        (Some(a), Some(b)) => Some(a <= b),
        _ => None,
    };
    Ok(MonotonicityReport { image, source, holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatComparison {
    pub checked: usize,
    /// Target sets with `φ̂_f(A) < φ̂(f⁻¹(A))`.
    pub violations: Vec<PointSet>,
}

/// Checks `φ̂_f(A) ≥ φ̂(f⁻¹(A))` on every subset of the target.
pub fn hat_pushforward_check(phi: &Submeasure, f: &PointMap, limits: &Limits) -> Result<HatComparison> {
    limits.guard_ground(f.target)?;
    let pushed = pushforward(phi, f)?;
    let mut violations = Vec::new();
    let full = 1u64 << f.target;
    for m in 1..full {
        let a = PointSet::from_mask(f.target, m);
        let pre = f.preimage(&a)?;
        let lhs = hat(&pushed, &a, limits)?.value;
        let rhs = hat(phi, &pre, limits)?.value;
        if lhs < rhs {
            violations.push(a);
        }
    }
    Ok(HatComparison {
        checked: (full - 1) as usize,
        violations,
    })
}

/// The map `r ↦ 2^ℕ ∖ ∪_j ⟨s_{r(j)}⟩` from injective functions
/// `2^n → 2^(n+1)` to balanced clopen codes over strings of length `n+1`.
#[derive(Clone, Debug)]
pub struct SoleckiReduction {
    pub n: usize,
    /// Injective functions, lexicographic.
    pub rows: Vec<Vec<usize>>,
    /// Index of each row among all functions `2^n → 2^(n+1)`.
    pub function_index: Vec<usize>,
    /// Code of `f(r)`: bit `j` set iff string `j` is not in the range of `r`.
    pub codes: Vec<u32>,
    /// Rows to points of `Ω_(n+1)`.
    pub map: PointMap,
    /// Measure removed from `2^ℕ` by each row: always `1/2`.
    pub removed_measure: Vec<Rational>,
}

pub const REDUCTION_MAX_LEVEL: usize = 2;

fn injective_functions(domain: usize, codomain: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, domain: usize, codomain: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == domain {
            out.push(cur.clone());
            return;
        }
        for v in 0..codomain {
            if !cur.contains(&v) {
                cur.push(v);
                rec(cur, domain, codomain, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), domain, codomain, &mut out);
    out
}

pub fn solecki_reduction_map(n: usize) -> Result<SoleckiReduction> {
    if n == 0 || n > REDUCTION_MAX_LEVEL {
        return Err(Error::SizeGuard {
            what: "reduction level (1..=2)",
            size: n,
            limit: REDUCTION_MAX_LEVEL,
        });
    }
    let domain = 1usize << n;
    let strings = 2 * domain;
    let rows = injective_functions(domain, strings);
    let targets = omega_codes(n + 1);
    let mut codes = Vec::with_capacity(rows.len());
    let mut map = Vec::with_capacity(rows.len());
    let mut removed_measure = Vec::with_capacity(rows.len());
    for r in &rows {
        let range: u32 = r.iter().fold(0, |m, &j| m | 1 << j);
        let code = !range & ((1u32 << strings) - 1);
        let point = targets
            .binary_search(&code)
            .map_err(|_| Error::Invalid(format!("f{r:?} is not a balanced code")))?;
        codes.push(code);
        map.push(point);
        removed_measure.push(ratio(range.count_ones() as i64, strings as i64));
    }
    Ok(SoleckiReduction {
        n,
        function_index: rows.iter().map(|r| index_of_function(r, strings)).collect(),
        rows,
        codes,
        map: PointMap::new(targets.len(), map)?,
        removed_measure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ForwardCheck {
    /// Index of the string `s` of length `n+1`.
    pub string: usize,
    pub fiber_size: usize,
    /// `f⁻¹(s̃)` equals the Mazur hat `ŝ` restricted to the rows.
    pub equals_hat: bool,
    /// Mazur cover value of the fiber.
    pub cover_value: RationalX,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BackwardCheck {
    pub n_sets: usize,
    pub avoided: Vec<usize>,
    /// Rows whose range misses every string in `avoided`.
    pub rows: usize,
    /// Solecki cover value of their image.
    pub image_value: RationalX,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ReductionReport {
    pub n: usize,
    pub well_defined: bool,
    pub forward: Vec<ForwardCheck>,
    pub backward: Vec<BackwardCheck>,
    /// Least number of Mazur hats covering all rows.
    pub row_cover: usize,
    /// `2^n`: the row set is not covered by this many hats.
    pub row_cover_bound: usize,
    pub passed: bool,
}

/// Forward fibers, backward images for each `N` in `backward_sizes`, and
/// the hat-cover number of the whole row set.
pub fn verify_solecki_reduction(n: usize, backward_sizes: &[usize]) -> Result<ReductionReport> {
    let red = solecki_reduction_map(n)?;
    let domain = 1usize << n;
    let strings = 2 * domain;
    let mazur = gen_mazur(domain)?;
    let solecki = gen_solecki(n + 1)?;
    let k_size = mazur.psi.size();
    let rows_in_k = PointSet::from_points(k_size, red.function_index.iter().copied())?;
    let lift = |rows: &PointSet| PointSet::from_points(k_size, rows.iter().map(|i| red.function_index[i]));

    let well_defined = red.removed_measure.iter().all(|m| *m == ratio(1, 2));

    let mut forward = Vec::with_capacity(strings);
    for s in 0..strings {
        let fiber = red.map.preimage(&solecki.inst.family[s])?;
        let lifted = lift(&fiber)?;
        let expected = mazur.inst.family[s].intersection(&rows_in_k);
        forward.push(ForwardCheck {
            string: s,
            fiber_size: fiber.len(),
            equals_hat: lifted == expected,
            cover_value: mazur.psi.eval(&lifted)?,
        });
    }

    let mut backward = Vec::new();
    for &size in backward_sizes {
        for avoided in combinations(strings, size) {
            let rows = PointSet::from_points(
                red.rows.len(),
                (0..red.rows.len()).filter(|&i| red.rows[i].iter().all(|v| !avoided.contains(v))),
            )?;
            if rows.is_empty() {
                continue;
            }
            let image = red.map.image(&rows)?;
            let image_value = solecki.chi.eval(&image)?;
            backward.push(BackwardCheck {
                n_sets: size,
                rows: rows.len(),
                passed: image_value <= RationalX::from_int(size as i64),
                avoided,
                image_value,
            });
        }
    }

    let row_cover = min_cover(&rows_in_k, &mazur.inst.family).map_or(usize::MAX, |c| c.size());
    let passed = well_defined
        && forward.iter().all(|f| f.equals_hat && f.cover_value == RationalX::from_int(1))
        && backward.iter().all(|b| b.passed)
        && row_cover > domain;
    Ok(ReductionReport {
        n,
        well_defined,
        forward,
        backward,
        row_cover,
        row_cover_bound: domain,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::submeasure::sup_of_measures;
    use crate::zoo::gen_minimal_pathological;

    #[test]
    fn identity_pushforward() {
        let phi = gen_minimal_pathological();
        let psi = pushforward(&phi, &PointMap::identity(3)).unwrap();
        for m in 0..8 {
            let a = PointSet::from_mask(3, m);
            assert_eq!(psi.eval(&a).unwrap(), phi.eval(&a).unwrap());
        }
    }

    #[test]
    fn constant_map_and_empty_fibers() {
        let phi = gen_minimal_pathological();
        let f = PointMap::new(2, vec![0, 0, 0]).unwrap();
        let psi = pushforward(&phi, &f).unwrap();
        assert_eq!(psi.eval(&PointSet::from_points(2, [0]).unwrap()).unwrap(), RationalX::from_int(2));
        assert_eq!(psi.eval(&PointSet::from_points(2, [1]).unwrap()).unwrap(), RationalX::zero());
    }

    #[test]
    fn image_of_measure_is_measure() {
        let mu = Measure::new(vec![int(1), int(2), int(3)]).unwrap();
        let f = PointMap::new(2, vec![0, 0, 1]).unwrap();
        let psi = pushforward(&sup_of_measures(vec![mu.clone()]).unwrap(), &f).unwrap();
        let nu = pushforward_measure(&mu, &f).unwrap();
        for m in 0..4 {
            let a = PointSet::from_mask(2, m);
            assert_eq!(psi.eval(&a).unwrap(), RationalX::Finite(nu.mass(&a)));
        }
    }

    #[test]
    fn merging_does_not_increase_degree() {
        let phi = gen_minimal_pathological();
        let f = PointMap::new(2, vec![0, 0, 1]).unwrap();
        let r = pathology_monotonicity_check(&phi, &f, &Limits::default()).unwrap();
        assert_eq!(r.holds, Some(true));
        let r = pathology_monotonicity_check(&phi, &PointMap::identity(3), &Limits::default()).unwrap();
        assert_eq!(r.image.degree, r.source.degree);
        assert!(hat_pushforward_check(&phi, &f, &Limits::default()).unwrap().violations.is_empty());
    }

    #[test]
    fn reduction_map_level_one() {
        let red = solecki_reduction_map(1).unwrap();
        assert_eq!(red.rows.len(), 12);
        assert_eq!(red.rows[0], vec![0, 1]);
        assert_eq!(red.codes[0], 0b1100);
        assert!(red.removed_measure.iter().all(|m| *m == ratio(1, 2)));
        assert!(solecki_reduction_map(3).is_err());
    }

    #[test]
    fn reduction_report_level_one() {
        let rep = verify_solecki_reduction(1, &[1, 2]).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.forward.len(), 4);
        assert_eq!(rep.forward[0].fiber_size, 6);
        assert_eq!(rep.row_cover, 3);
    }

    #[test]
    fn map_validation() {
        assert!(PointMap::new(2, vec![0, 2]).is_err());
        let f = PointMap::new(2, vec![1, 0]).unwrap();
        assert!(matches!(f.preimage(&PointSet::empty(3)), Err(Error::GroundMismatch { .. })));
    }
}
