//! Pair colorings, homogeneous sets, the level-partition coloring of a
//! measure family, dyadic rounding, Schreier-barrier colorings and
//! eventually disjoint subsequences.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::banach::VectorSequence;
use crate::error::{Error, Result};
use crate::pointset::{combinations, PointSet};
use crate::rational::{format_rational, pow2_neg, Rational};
use crate::TRUNCATION_LABEL;

/// Largest ground for the bitmask homogeneous-set searches.
pub const HOMOGENEOUS_MAX_GROUND: usize = 64;
/// Largest set for [`hom_cover_number`].
pub const HOM_COVER_MAX: usize = 20;

/// A symmetric 2-coloring of the pairs of `0..n`, stored as one bit per
/// unordered pair (bit set = color 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairColoring {
    n: usize,
    ones: FixedBitSet,
}

fn pair_index(a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    hi * (hi - 1) / 2 + lo
}

impl PairColoring {
    pub fn constant(n: usize, color: u8) -> Self {
        let mut ones = FixedBitSet::with_capacity(n * n.saturating_sub(1) / 2);
        if color == 1 {
            ones.insert_range(..);
        }
        PairColoring { n, ones }
    }

    /// Color of `{a, b}` given by `f(a, b)` for `a < b`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut c = PairColoring::constant(n, 0);
        for b in 1..n {
            for a in 0..b {
                if f(a, b) == 1 {
                    c.ones.insert(pair_index(a, b));
                }
            }
        }
        c
    }

    /// Coloring with exactly the listed pairs colored 1.
    pub fn from_pairs1(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut c = PairColoring::constant(n, 0);
        for &(a, b) in pairs {
            if a == b || a >= n || b >= n {
                return Err(Error::Invalid(format!("bad pair ({a},{b}) for ground {n}")));
            }
            c.ones.insert(pair_index(a, b));
        }
        Ok(c)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn color(&self, a: usize, b: usize) -> u8 {
        debug_assert!(a != b && a < self.n && b < self.n);
        self.ones.contains(pair_index(a, b)) as u8
    }

    pub fn set_color(&mut self, a: usize, b: usize, color: u8) {
        self.ones.set(pair_index(a, b), color == 1);
    }

    /// Pairs `(a, b)` with `a < b` colored 1, in lexicographic order.
    pub fn pairs1(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.color(a, b) == 1 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_homogeneous(&self, h: &PointSet, color: u8) -> bool {
        let pts = h.to_vec();
        pts.iter()
            .enumerate()
            .all(|(i, &a)| pts[i + 1..].iter().all(|&b| self.color(a, b) == color))
    }

    /// Per color, per point: bitmask of the points joined to it in that color.
    fn adjacency(&self) -> Result<[Vec<u64>; 2]> {
        if self.n > HOMOGENEOUS_MAX_GROUND {
            return Err(Error::SizeGuard {
                what: "coloring ground for homogeneous search",
                size: self.n,
                limit: HOMOGENEOUS_MAX_GROUND,
            });
        }
        let mut adj = [vec![0u64; self.n], vec![0u64; self.n]];
        for a in 0..self.n {
            for b in a + 1..self.n {
                let c = self.color(a, b) as usize;
                adj[c][a] |= 1 << b;
                adj[c][b] |= 1 << a;
            }
        }
        Ok(adj)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Want {
    Color(u8),
    Any,
}

/// Lexicographically least homogeneous set of `size` points.
pub fn find_homogeneous(c: &PairColoring, want: Want, size: usize) -> Result<Option<PointSet>> {
    let all = if c.n == 64 { u64::MAX } else { (1u64 << c.n) - 1 };
    find_homogeneous_within(c, want, size, all)
}

/// Same as [`find_homogeneous`] inside the points of `allowed`.
pub fn find_homogeneous_within(c: &PairColoring, want: Want, size: usize, allowed: u64) -> Result<Option<PointSet>> {
    let adj = c.adjacency()?;
    let search = |color: usize| -> Option<u64> {
        let mut found = None;
        dfs_clique(&adj[color], allowed, 0, size, &mut found);
        found
    };
    let best = match want {
        Want::Color(col) => search(col as usize),
        Want::Any => match (search(0), search(1)) {
            (Some(a), Some(b)) => {
                let (sa, sb) = (PointSet::from_mask(c.n, a), PointSet::from_mask(c.n, b));
                Some(if sa <= sb { a } else { b })
            }
            (a, b) => a.or(b),
        },
    };
    Ok(best.map(|m| PointSet::from_mask(c.n, m)))
}

fn dfs_clique(adj: &[u64], cand: u64, chosen: u64, size: usize, found: &mut Option<u64>) -> bool {
    let have = chosen.count_ones() as usize;
    if have == size {
        *found = Some(chosen);
        return true;
    }
    if have + (cand.count_ones() as usize) < size {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // Only points after v keep the increasing (lexicographic) order.
        if dfs_clique(adj, rest & adj[v], chosen | 1 << v, size, found) {
            return true;
        }
        if have + (rest.count_ones() as usize) < size {
            return false;
        }
    }
    false
}

/// Maximal cliques of the graph `adj` inside `within` (Bron–Kerbosch with
/// pivoting).
fn maximal_cliques(adj: &[u64], within: u64) -> Vec<u64> {
    fn bk(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pu = p | x;
        let pivot = {
            let mut best = (0u32, pu.trailing_zeros() as usize);
            let mut m = pu;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                let c = (p & adj[u]).count_ones();
                if c > best.0 {
                    best = (c, u);
                }
            }
            best.1
        };
        let mut cand = p & !adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            bk(adj, r | 1 << v, p & adj[v], x & adj[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    if within != 0 {
        bk(adj, 0, within, 0, &mut out);
    }
    out
}

/// Maximal `color`-homogeneous subsets of `A`, size-lex sorted. Every
/// homogeneous subset of `A` lies inside one of them.
pub fn maximal_homogeneous(c: &PairColoring, color: u8, a: &PointSet) -> Result<Vec<PointSet>> {
    let adj = c.adjacency()?;
    let target = a.to_mask().expect("ground at most 64");
    let mut out: Vec<PointSet> = maximal_cliques(&adj[color as usize], target)
        .into_iter()
        .map(|m| PointSet::from_mask(c.n, m))
        .collect();
    out.sort();
    Ok(out)
}

/// Least number of homogeneous sets (either color) covering `A`.
pub fn hom_cover_number(c: &PairColoring, a: &PointSet) -> Result<u32> {
    if a.len() > HOM_COVER_MAX {
        return Err(Error::SizeGuard {
            what: "set size for homogeneous cover",
            size: a.len(),
            limit: HOM_COVER_MAX,
        });
    }
    let adj = c.adjacency()?;
    let target = a.to_mask().expect("ground at most 64");
    let mut maximal: Vec<u64> = maximal_cliques(&adj[0], target);
    maximal.extend(maximal_cliques(&adj[1], target));
    maximal.sort_unstable();
    maximal.dedup();
    let mut memo: HashMap<u64, u32> = HashMap::new();
    Ok(cover_rec(target, &maximal, &mut memo))
}

fn cover_rec(mask: u64, maximal: &[u64], memo: &mut HashMap<u64, u32>) -> u32 {
    if mask == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let low = mask & mask.wrapping_neg();
    let mut best = u32::MAX;
    for &m in maximal {
        if m & low != 0 {
            let r = cover_rec(mask & !m, maximal, memo);
            best = best.min(r + 1);
        }
    }
    memo.insert(mask, best);
    best
}

/// Levels `level(n, k)`: `i` when `2^-(i+1) < μ_k({n}) ≤ 2^-i`, `None`
/// (level `∞`) when `μ_k({n}) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSystem {
    /// `levels[k][n]`.
    levels: Vec<Vec<Option<u32>>>,
    values: VectorSequence,
}

/// Level of a value in `(0, 1]`.
pub fn dyadic_level(v: &Rational) -> Option<u32> {
    if v.is_zero() {
        return None;
    }
    let mut i = 0u32;
    while *v <= pow2_neg(i + 1) {
        i += 1;
    }
    Some(i)
}

fn check_unit_entries(mat: &VectorSequence) -> Result<()> {
    for (k, row) in mat.entries().iter().enumerate() {
        for (n, v) in row.iter().enumerate() {
            if v.is_negative() {
                return Err(Error::SignedInput { row: k, col: n });
            }
            if *v > Rational::one() {
                return Err(Error::EntryAboveOne {
                    row: k,
                    col: n,
                    value: format_rational(v),
                });
            }
        }
    }
    Ok(())
}

pub fn level_partition(mat: &VectorSequence) -> Result<PartitionSystem> {
    check_unit_entries(mat)?;
    let levels = mat.entries().iter().map(|r| r.iter().map(dyadic_level).collect()).collect();
    Ok(PartitionSystem {
        levels,
        values: mat.clone(),
    })
}

impl PartitionSystem {
    pub fn points(&self) -> usize {
        self.values.cols()
    }

    pub fn measures(&self) -> usize {
        self.values.rows()
    }

    pub fn level(&self, n: usize, k: usize) -> Option<u32> {
        self.levels[k][n]
    }

    pub fn values(&self) -> &VectorSequence {
        &self.values
    }

    /// `L_n`: the finite levels occurring at point `n`.
    pub fn finite_levels(&self, n: usize) -> BTreeSet<u32> {
        (0..self.measures()).filter_map(|k| self.level(n, k)).collect()
    }

    /// `A^n_i` for finite `i`, or `A^n_∞` for `None`.
    pub fn cell(&self, n: usize, level: Option<u32>) -> BTreeSet<usize> {
        (0..self.measures()).filter(|&k| self.level(n, k) == level).collect()
    }

    /// The partition of measure indices at point `n`, finite cells only.
    pub fn row(&self, n: usize) -> PartitionRow {
        let mut cells: BTreeMap<u32, BTreeSet<usize>> = BTreeMap::new();
        for k in 0..self.measures() {
            if let Some(i) = self.level(n, k) {
                cells.entry(i).or_default().insert(k);
            }
        }
        PartitionRow { cells }
    }

    pub fn rows(&self) -> Vec<PartitionRow> {
        (0..self.points()).map(|n| self.row(n)).collect()
    }
}

/// For `n < m`: color 1 iff levels strictly increase from `n` to `m` for
/// every measure with a finite level at `n` (level `∞` at `m` is allowed).
pub fn c0tall_coloring(ps: &PartitionSystem) -> PairColoring {
    PairColoring::from_fn(ps.points(), |n, m| {
        let ok = (0..ps.measures()).all(|k| match (ps.level(n, k), ps.level(m, k)) {
            (None, _) => true,
            (Some(_), None) => true,
            (Some(i), Some(j)) => j > i,
        });
        ok as u8
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Color1Certificate {
    #[serde(with = "crate::rational::serde_rational")]
    pub max_mass: Rational,
    pub row: Option<usize>,
    pub holds: bool,
}

/// For a 1-homogeneous `H`, `max_k μ_k(H) ≤ 2`.
pub fn verify_color1_bound(ps: &PartitionSystem, h: &PointSet) -> Result<Color1Certificate> {
    if h.capacity() != ps.points() {
        return Err(Error::GroundMismatch {
            expected: ps.points(),
            found: h.capacity(),
        });
    }
    let pts = h.to_vec();
    for (i, &n) in pts.iter().enumerate() {
        for &m in &pts[i + 1..] {
            let ok = (0..ps.measures()).all(|k| match (ps.level(n, k), ps.level(m, k)) {
                (Some(a), Some(b)) => b > a,
                _ => true,
            });
            if !ok {
                return Err(Error::NotHomogeneous(format!("pair ({n},{m}) has color 0")));
            }
        }
    }
    let mut best: Option<(usize, Rational)> = None;
    for k in 0..ps.measures() {
        let mass: Rational = pts.iter().map(|&n| ps.values.entry(k, n)).sum();
        if best.as_ref().is_none_or(|(_, b)| mass > *b) {
            best = Some((k, mass));
        }
    }
    let (row, max_mass) = match best {
        Some((k, m)) => (Some(k), m),
        None => (None, Rational::zero()),
    };
    Ok(Color1Certificate {
        holds: max_mass <= Rational::from_integer(2.into()),
        max_mass,
        row,
    })
}

/// `λ_k({n}) = i / 2^n` where `i / 2^n < μ_k({n}) ≤ (i + 1) / 2^n`, and 0 when
/// `μ_k({n}) = 0`.
pub fn dyadic_round(mat: &VectorSequence) -> Result<VectorSequence> {
    check_unit_entries(mat)?;
    let entries = mat
        .entries()
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(n, v)| {
                    if v.is_zero() {
                        return Rational::zero();
                    }
                    let scale = BigInt::one() << n;
                    let scaled = v * Rational::from_integer(scale.clone());
                    let i = scaled.ceil().to_integer() - BigInt::one();
                    Rational::new(i, scale)
                })
                .collect()
        })
        .collect();
    VectorSequence::new(entries, false)
}

/// Color of Schreier-barrier sets `s = {q < n_1 < … < n_q}`: 1 iff some
/// measure gives every `n_j` mass at least `2^-(p+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarrierColoring {
    pub p: u32,
    mat: VectorSequence,
}

pub fn schreier_coloring(mat: &VectorSequence, p: u32) -> Result<BarrierColoring> {
    check_unit_entries(mat)?;
    Ok(BarrierColoring { p, mat: mat.clone() })
}

/// `|s| = min(s) + 1`.
pub fn is_barrier_set(s: &PointSet) -> bool {
    s.min().is_some_and(|q| s.len() == q + 1)
}

impl BarrierColoring {
    pub fn ground(&self) -> usize {
        self.mat.cols()
    }

    pub fn color(&self, s: &PointSet) -> Result<u8> {
        if s.capacity() != self.ground() || !is_barrier_set(s) {
            return Err(Error::NotBarrierSet(s.to_string()));
        }
        let rest: Vec<usize> = s.iter().skip(1).collect();
        let th = pow2_neg(self.p + 1);
        let hit = (0..self.mat.rows()).any(|k| rest.iter().all(|&n| *self.mat.entry(k, n) >= th));
        Ok(hit as u8)
    }

    /// Every barrier subset of `h` has `color`. Exponential in `|h|`.
    pub fn is_homogeneous(&self, h: &PointSet, color: u8) -> Result<bool> {
        let pts = h.to_vec();
        for (i, &q) in pts.iter().enumerate() {
            let above = &pts[i + 1..];
            if above.len() < q {
                continue;
            }
            for combo in combinations(above.len(), q) {
                let s = PointSet::from_points(self.ground(), std::iter::once(q).chain(combo.iter().map(|&j| above[j])))?;
                if self.color(&s)? != color {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `max_k μ_k(H ∖ {min H})` against the bound `min H + 2`.
    pub fn color0_mass(&self, h: &PointSet) -> Option<(Rational, usize)> {
        let q = h.min()?;
        let rest: Vec<usize> = h.iter().skip(1).collect();
        let max = (0..self.mat.rows())
            .map(|k| rest.iter().map(|&n| self.mat.entry(k, n)).sum::<Rational>())
            .max()
            .unwrap_or_else(Rational::zero);
        Some((max, q + 2))
    }
}

/// One partition `Q_n` of measure indices: finite level → cell.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PartitionRow {
    pub cells: BTreeMap<u32, BTreeSet<usize>>,
}

impl PartitionRow {
    pub fn levels(&self) -> impl Iterator<Item = u32> + '_ {
        self.cells.iter().filter(|(_, c)| !c.is_empty()).map(|(&i, _)| i)
    }

    fn min_level(&self) -> Option<u32> {
        self.levels().next()
    }

    fn max_level(&self) -> Option<u32> {
        self.levels().last()
    }

    fn without(&self, level: u32) -> PartitionRow {
        let mut cells = self.cells.clone();
        cells.remove(&level);
        PartitionRow { cells }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EventuallyDisjoint {
    pub indices: Vec<usize>,
    /// Cells at levels above `p` are pairwise disjoint across `indices`.
    pub p: u32,
}

/// Follows the induction on `l`: if some minimal level `v` is shared by at
/// least `target` rows, keep those rows, drop level `v` and recurse
/// (`p = max(v, p')`); otherwise take rows greedily whose levels all lie
/// above the levels already taken (`p = 0`).
pub fn eventually_disjoint_subsequence(rows: &[PartitionRow], l: usize, target: usize) -> Result<EventuallyDisjoint> {
    if let Some(n) = rows.iter().position(|r| r.levels().count() > l) {
        return Err(Error::Invalid(format!("row {n} has more than {l} nonempty cells")));
    }
    let all: Vec<usize> = (0..rows.len()).collect();
    let mut rows = rows.to_vec();
    extract(&mut rows, &all, l, target)
}

fn extract(rows: &mut [PartitionRow], idx: &[usize], l: usize, target: usize) -> Result<EventuallyDisjoint> {
    let empty: Vec<usize> = idx.iter().copied().filter(|&n| rows[n].min_level().is_none()).collect();
    if empty.len() >= target {
        return Ok(EventuallyDisjoint {
            indices: empty[..target].to_vec(),
            p: 0,
        });
    }
    if l > 0 {
        let mut counts: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for &n in idx {
            if let Some(v) = rows[n].min_level() {
                counts.entry(v).or_default().push(n);
            }
        }
        if let Some((&v, members)) = counts.iter().find(|(_, m)| m.len() >= target) {
            let members = members.clone();
            for &n in &members {
                rows[n] = rows[n].without(v);
            }
            let inner = extract(rows, &members, l - 1, target)?;
            return Ok(EventuallyDisjoint {
                indices: inner.indices,
                p: v.max(inner.p),
            });
        }
    }
    let mut taken = Vec::new();
    let mut top: Option<u32> = None;
    for &n in idx {
        match (rows[n].min_level(), top) {
            (None, _) => taken.push(n),
            (Some(lo), None) => {
                taken.push(n);
                top = rows[n].max_level().or(Some(lo));
            }
            (Some(lo), Some(t)) if lo > t => {
                taken.push(n);
                top = rows[n].max_level();
            }
            _ => {}
        }
        if taken.len() == target {
            return Ok(EventuallyDisjoint { indices: taken, p: 0 });
        }
    }
    Err(Error::Insufficient {
        reached: taken.len(),
        target,
    })
}

/// Independent pairwise check: for distinct `n, m` in `indices` and every
/// level `i > p`, the cells at level `i` are disjoint.
pub fn check_eventually_disjoint(rows: &[PartitionRow], indices: &[usize], p: u32) -> bool {
    for (a, &n) in indices.iter().enumerate() {
        for &m in &indices[a + 1..] {
            if n == m {
                return false;
            }
            for (i, cell) in &rows[n].cells {
                if *i <= p {
                    continue;
                }
                if let Some(other) = rows[m].cells.get(i) {
                    if !cell.is_disjoint(other) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The first `count` rationals of `[0, 1]`: `0/1`, `1/1`, then the
/// Stern–Brocot tree below `1/2` breadth first (`1/2, 1/3, 2/3, 1/4, 2/5,
/// 3/5, 3/4, …`).
pub fn stern_brocot_rationals(count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let zero = (BigInt::zero(), BigInt::one());
    let one = (BigInt::one(), BigInt::one());
    for (p, q) in [&zero, &one] {
        if out.len() < count {
            out.push(Rational::new(p.clone(), q.clone()));
        }
    }
    let mut queue = std::collections::VecDeque::from([(zero, one)]);
    while out.len() < count {
        let (lo, hi) = queue.pop_front().expect("tree is infinite");
        let mid = (&lo.0 + &hi.0, &lo.1 + &hi.1);
        out.push(Rational::new(mid.0.clone(), mid.1.clone()));
        queue.push_back((lo, mid.clone()));
        queue.push_back((mid, hi));
    }
    out
}

/// Largest ground accepted by the Sierpiński generator.
pub const SIERPINSKI_MAX: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedColoring {
    /// `c{a, b} = 0` for `a < b` iff `r_a < r_b`, on the enumeration of
    /// [`stern_brocot_rationals`].
    Sierpinski(usize),
    /// Consecutive pieces of the given sizes; `c{x, y} = 0` iff same piece.
    Partition(Vec<usize>),
}

pub fn gen_named_coloring(name: &NamedColoring) -> Result<PairColoring> {
    match name {
        NamedColoring::Sierpinski(n) => {
            if *n > SIERPINSKI_MAX {
                return Err(Error::SizeGuard {
                    what: "sierpinski points",
                    size: *n,
                    limit: SIERPINSKI_MAX,
                });
            }
            let r = stern_brocot_rationals(*n);
            Ok(PairColoring::from_fn(*n, |a, b| if r[a] < r[b] { 0 } else { 1 }))
        }
        NamedColoring::Partition(sizes) => {
            let piece: Vec<usize> = sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
            Ok(PairColoring::from_fn(piece.len(), |a, b| (piece[a] != piece[b]) as u8))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ComplementEntry {
    /// Indices into the supplied homogeneous family.
    pub removed: Vec<usize>,
    pub complement_size: usize,
    /// Largest `(1-i)`-homogeneous set inside the complement, up to the
    /// size cap.
    pub largest: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FavorsReport {
    pub label: &'static str,
    pub color: u8,
    /// Largest `(1-i)`-homogeneous set in the whole ground, up to the cap.
    pub largest_opposite: Vec<usize>,
    pub complements: Vec<ComplementEntry>,
}

fn largest_within(c: &PairColoring, color: u8, allowed: u64, cap: usize) -> Result<Vec<usize>> {
    let mut best = Vec::new();
    for size in 1..=cap {
        match find_homogeneous_within(c, Want::Color(color), size, allowed)? {
            Some(h) => best = h.to_vec(),
            None => break,
        }
    }
    Ok(best)
}

/// Finite diagnostics for "favors color `i`": the largest `(1-i)`-homogeneous
/// sets overall and inside each complement of at most `hom_bound` sets from
/// the supplied `i`-homogeneous family.
pub fn favors_color_check(
    c: &PairColoring,
    i: u8,
    family: &[PointSet],
    hom_bound: usize,
    size_cap: usize,
) -> Result<FavorsReport> {
    c.adjacency()?;
    for (j, h) in family.iter().enumerate() {
        if h.capacity() != c.size() || !c.is_homogeneous(h, i) {
            return Err(Error::NotHomogeneous(format!("family set {j} is not {i}-homogeneous")));
        }
    }
    let opposite = 1 - i;
    let all = if c.size() == 64 { u64::MAX } else { (1u64 << c.size()) - 1 };
    let largest_opposite = largest_within(c, opposite, all, size_cap)?;
    let mut complements = Vec::new();
    for r in 1..=hom_bound.min(family.len()) {
        for combo in combinations(family.len(), r) {
            let removed: u64 = combo.iter().fold(0, |m, &j| m | family[j].to_mask().expect("ground at most 64"));
            let allowed = all & !removed;
            complements.push(ComplementEntry {
                largest: largest_within(c, opposite, allowed, size_cap)?,
                complement_size: allowed.count_ones() as usize,
                removed: combo,
            });
        }
    }
    Ok(FavorsReport {
        label: TRUNCATION_LABEL,
        color: i,
        largest_opposite,
        complements,
    })
}
