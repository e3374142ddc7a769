//! Exact minimum set cover.
//!
//! Families of at most [`SMALL_FAMILY`] sets are solved as a hitting-set
//! problem over subfamilies: a subfamily `C` misses a point exactly when
//! the point's membership signature lies inside the complement of `C`, so
//! marking all signatures and closing upward under inclusion answers every
//! `C` at once in `O(m 2^m)`.
//!
//! Larger families use branch and bound. The search branches on the
//! uncovered point with the fewest remaining candidate sets (lowest index on
//! ties) and tries candidates in family order; in the i-th branch the
//! earlier candidates are excluded, so each subfamily is visited at most
//! once. A greedy cover seeds the incumbent and
//! `ceil(|uncovered| / best single coverage)` prunes.
//!
//! The reported cover is the lexicographically least minimum cover.

use crate::pointset::PointSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    /// Family indices, increasing.
    pub sets: Vec<usize>,
}

impl Cover {
    pub fn size(&self) -> usize {
        self.sets.len()
    }
}

/// Families up to this size use the subfamily DP.
pub const SMALL_FAMILY: usize = 16;

/// Least number of family sets whose union contains `target`.
/// `None` when the family does not cover `target` at all.
pub fn min_cover_size(target: &PointSet, family: &[PointSet]) -> Option<usize> {
    if target.is_empty() {
        return Some(0);
    }
    if family.len() <= SMALL_FAMILY {
        return small_family_size(target, family);
    }
    let restricted: Vec<PointSet> = family.iter().map(|s| s.intersection(target)).collect();
    if !covers(target, &restricted) {
        return None;
    }
    Some(branch_and_bound(target, &restricted).len())
}

/// A minimum cover, lexicographically least among minimum covers.
pub fn min_cover(target: &PointSet, family: &[PointSet]) -> Option<Cover> {
    let k = min_cover_size(target, family)?;
    let restricted: Vec<PointSet> = family.iter().map(|s| s.intersection(target)).collect();
    let mut chosen = Vec::with_capacity(k);
    let found = lex_first(target.clone(), &restricted, 0, k, &mut chosen);
    debug_assert!(found, "a cover of the minimum size exists");
    Some(Cover { sets: chosen })
}

fn covers(target: &PointSet, family: &[PointSet]) -> bool {
    let mut union = PointSet::empty(target.capacity());
    for s in family {
        union.union_with(s);
    }
    target.is_subset(&union)
}

fn small_family_size(target: &PointSet, family: &[PointSet]) -> Option<usize> {
    let m = family.len();
    let mut sig = vec![0u32; target.capacity()];
    for (i, s) in family.iter().enumerate() {
        for p in s.intersection(target).iter() {
            sig[p] |= 1 << i;
        }
    }
    // bad[S]: some point of the target has its signature inside S.
    let words = (1usize << m).div_ceil(64);
    let mut bad = vec![0u64; words];
    for p in target.iter() {
        let g = sig[p] as usize;
        if g == 0 {
            return None;
        }
        bad[g / 64] |= 1 << (g % 64);
    }
    const LOW: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for b in 0..m {
        if let Some(&low) = LOW.get(b) {
            for w in bad.iter_mut() {
                *w |= (*w & low) << (1 << b);
            }
        } else {
            let stride = 1usize << (b - 6);
            for i in 0..words {
                if i & stride == 0 {
                    let lo = bad[i];
                    bad[i | stride] |= lo;
                }
            }
        }
    }
    // Largest S that is not bad; its complement is a smallest cover.
    let full = (1usize << m) - 1;
    let mut best = None::<u32>;
    for (i, &w) in bad.iter().enumerate() {
        let mut free = !w;
        if i == words - 1 && m < 6 {
            free &= (1u64 << (1 << m)) - 1;
        }
        while free != 0 {
            let s = i * 64 + free.trailing_zeros() as usize;
            free &= free - 1;
            let cover = (full & !s).count_ones();
            if best.is_none_or(|b| cover < b) {
                best = Some(cover);
            }
        }
    }
    best.map(|b| b as usize)
}

/// Least index vector of at most `left` more sets from `start` on that
/// covers `uncovered`.
fn lex_first(uncovered: PointSet, family: &[PointSet], start: usize, left: usize, chosen: &mut Vec<usize>) -> bool {
    if uncovered.is_empty() {
        return true;
    }
    if left == 0 || !covers(&uncovered, &family[start..]) {
        return false;
    }
    for i in start..family.len() {
        if family[i].is_disjoint(&uncovered) {
            continue;
        }
        chosen.push(i);
        if lex_first(uncovered.difference(&family[i]), family, i + 1, left - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn branch_and_bound(target: &PointSet, restricted: &[PointSet]) -> Vec<usize> {
    let greedy = greedy_cover(target, restricted);
    let mut search = Search {
        family: restricted,
        best: greedy,
        excluded: vec![false; restricted.len()],
        chosen: Vec::new(),
    };
    search.dfs(target.clone());
    search.best
}

fn greedy_cover(target: &PointSet, family: &[PointSet]) -> Vec<usize> {
    let mut uncovered = target.clone();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (idx, _) = family
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.intersection_count(&uncovered)))
            .fold((usize::MAX, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
        debug_assert!(idx != usize::MAX);
        uncovered.difference_with(&family[idx]);
        chosen.push(idx);
    }
    chosen
}

struct Search<'a> {
    family: &'a [PointSet],
    best: Vec<usize>,
    excluded: Vec<bool>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn dfs(&mut self, uncovered: PointSet) {
        if uncovered.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + 1 >= self.best.len() {
            // Any completion needs at least one more set.
            return;
        }
        let coverage: Vec<usize> = self
            .family
            .iter()
            .enumerate()
            .map(|(i, s)| if self.excluded[i] { 0 } else { s.intersection_count(&uncovered) })
            .collect();
        let max_cov = coverage.iter().copied().max().unwrap_or(0);
        if max_cov == 0 {
            return;
        }
        let lower = uncovered.len().div_ceil(max_cov);
        if self.chosen.len() + lower >= self.best.len() {
            return;
        }

        // Branch point: fewest available candidates.
        let mut pivot: Option<(usize, usize)> = None;
        for p in uncovered.iter() {
            let count = (0..self.family.len())
                .filter(|&i| coverage[i] > 0 && self.family[i].contains(p))
                .count();
            if count == 0 {
                return;
            }
            if pivot.is_none_or(|(_, c)| count < c) {
                pivot = Some((p, count));
                if count == 1 {
                    break;
                }
            }
        }
        let (p, _) = pivot.expect("uncovered is nonempty");
        let candidates: Vec<usize> = (0..self.family.len())
            .filter(|&i| coverage[i] > 0 && self.family[i].contains(p))
            .collect();

        let mut newly_excluded = Vec::new();
        for &i in &candidates {
            self.chosen.push(i);
            let rest = uncovered.difference(&self.family[i]);
            self.dfs(rest);
            self.chosen.pop();
            self.excluded[i] = true;
            newly_excluded.push(i);
        }
        for i in newly_excluded {
            self.excluded[i] = false;
        }
    }
}

/// Independent brute force over all subfamilies, by increasing size.
/// Exponential; for cross-checking only.
pub fn min_cover_brute_force(target: &PointSet, family: &[PointSet]) -> Option<usize> {
    let m = family.len();
    for k in 0..=m {
        for combo in crate::pointset::combinations(m, k) {
            let mut u = PointSet::empty(target.capacity());
            for &i in &combo {
                u.union_with(&family[i]);
            }
            if target.is_subset(&u) {
                return Some(k);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, pts: &[usize]) -> PointSet {
        PointSet::from_points(n, pts.iter().copied()).unwrap()
    }

    #[test]
    fn small_cover() {
        let fam = vec![set(5, &[0, 1]), set(5, &[2, 3]), set(5, &[1, 2, 3, 4]), set(5, &[0])];
        let c = min_cover(&set(5, &[0, 1, 2, 3, 4]), &fam).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.sets, vec![0, 2]);
    }

    #[test]
    fn both_solvers_agree_with_brute_force() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let n = 1 + (next() % 12) as usize;
            let m = 1 + (next() % 20) as usize;
            let fam: Vec<PointSet> = (0..m).map(|_| PointSet::from_mask(n, next() & ((1 << n) - 1))).collect();
            let target = PointSet::from_mask(n, next() & ((1 << n) - 1));
            let brute = min_cover_brute_force(&target, &fam);
            assert_eq!(min_cover_size(&target, &fam), brute);
            let restricted: Vec<PointSet> = fam.iter().map(|s| s.intersection(&target)).collect();
            if let Some(k) = brute {
                if !target.is_empty() {
                    assert_eq!(branch_and_bound(&target, &restricted).len(), k);
                }
                let c = min_cover(&target, &fam).unwrap();
                assert_eq!(c.size(), k);
                let mut u = PointSet::empty(n);
                for &i in &c.sets {
                    u.union_with(&fam[i]);
                }
                assert!(target.is_subset(&u));
            }
        }
    }

    #[test]
    fn lexicographically_least_cover() {
        let fam = vec![set(4, &[2, 3]), set(4, &[0, 1]), set(4, &[0, 1, 2, 3])];
        assert_eq!(min_cover(&set(4, &[0, 1, 2, 3]), &fam).unwrap().sets, vec![2]);
        let fam = vec![set(4, &[2, 3]), set(4, &[0, 1]), set(4, &[0, 2]), set(4, &[1, 3])];
        assert_eq!(min_cover(&set(4, &[0, 1, 2, 3]), &fam).unwrap().sets, vec![0, 1]);
    }

    #[test]
    fn uncoverable_is_none() {
        let fam = vec![set(3, &[0, 1])];
        assert_eq!(min_cover(&set(3, &[2]), &fam), None);
        assert_eq!(min_cover_brute_force(&set(3, &[2]), &fam), None);
    }

    #[test]
    fn empty_target() {
        assert_eq!(min_cover(&set(3, &[]), &[]).unwrap().size(), 0);
    }

    #[test]
    fn greedy_is_not_optimal_here() {
        // Greedy takes the 4-set first and then needs two more.
        let fam = vec![
            set(6, &[0, 1, 2]),
            set(6, &[3, 4, 5]),
            set(6, &[1, 2, 4, 5]),
        ];
        let target = set(6, &[0, 1, 2, 3, 4, 5]);
        assert_eq!(greedy_cover(&target, &fam).len(), 3);
        assert_eq!(min_cover(&target, &fam).unwrap().sets, vec![0, 1]);
    }
}
