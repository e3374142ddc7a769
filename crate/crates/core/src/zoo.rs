//! Deterministic generators for the standard example families.
//!
//! Enumeration orders are fixed: functions `n → m` lexicographically (first
//! coordinate most significant), binary strings of length `n` in counting
//! order (`s_j` is `j` written with `n` bits, most significant first), and
//! balanced clopen codes by increasing bitmask over the strings.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::banach::VectorSequence;
use crate::error::{Error, Result};
use crate::pathology::CoveringInstance;
use crate::pointset::{combinations, GroundSet, PointSet};
use crate::rational::{int, pow2_neg, Rational, RationalX};
use crate::submeasure::{mazur_from_chain, sup_of_measures, AritySchedule, Measure, Submeasure};

/// The 3-point table: 0 on `∅`, 1 on sets of one or two points, 2 on the
/// whole ground.
pub fn gen_minimal_pathological() -> Submeasure {
    let values: BTreeMap<PointSet, RationalX> = (0u64..8)
        .map(|m| {
            let v = match m.count_ones() {
                0 => 0,
                3 => 2,
                _ => 1,
            };
            (PointSet::from_mask(3, m), RationalX::from_int(v))
        })
        .collect();
    Submeasure::table(GroundSet::new(3).expect("nonempty"), values).expect("sets in ground")
}

fn consecutive_blocks(sizes: &[usize]) -> (usize, Vec<PointSet>) {
    let total: usize = sizes.iter().sum();
    let mut start = 0;
    let blocks = sizes
        .iter()
        .map(|&s| {
            let b = PointSet::from_points(total, start..start + s).expect("in range");
            start += s;
            b
        })
        .collect();
    (total, blocks)
}

/// Largest number of full selectors materialized by [`gen_ed`].
pub const ED_MAX_SELECTORS: usize = 100_000;

#[derive(Clone, Debug)]
pub struct Ed {
    /// Chain submeasure generated by pieces and selectors, with arity
    /// `a(n) = n`.
    pub chain: Submeasure,
    /// Supremum of the counting measures of `(n+1)`-subsets of block `n`.
    pub sup: Submeasure,
    pub blocks: Vec<PointSet>,
}

/// Pieces-and-selectors example on consecutive blocks of the given sizes.
pub fn gen_ed(block_sizes: &[usize]) -> Result<Ed> {
    if block_sizes.len() < 2 {
        return Err(Error::Invalid("at least two blocks are required".into()));
    }
    if let Some(b) = block_sizes.iter().position(|&s| s == 0) {
        return Err(Error::BlockTooSmall { block: b, size: 0, need: 1 });
    }
    let selectors: usize = block_sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).unwrap_or(usize::MAX);
    if selectors > ED_MAX_SELECTORS {
        return Err(Error::SizeGuard {
            what: "selector count",
            size: selectors,
            limit: ED_MAX_SELECTORS,
        });
    }
    let (total, blocks) = consecutive_blocks(block_sizes);
    let ground = GroundSet::new(total)?;

    let mut level1 = blocks.clone();
    let block_points: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
    let mut idx = vec![0usize; blocks.len()];
    'selectors: loop {
        let sel = PointSet::from_points(total, idx.iter().enumerate().map(|(j, &i)| block_points[j][i]))?;
        level1.push(sel);
        let mut j = blocks.len();
        loop {
            if j == 0 {
                break 'selectors;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < block_points[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
    let chain = mazur_from_chain(ground, level1, AritySchedule::Level)?;

    let mut measures = Vec::new();
    for (n, pts) in block_points.iter().enumerate() {
        if pts.len() < n + 1 {
            return Err(Error::BlockTooSmall {
                block: n,
                size: pts.len(),
                need: n + 1,
            });
        }
        for combo in combinations(pts.len(), n + 1) {
            let f = PointSet::from_points(total, combo.iter().map(|&i| pts[i]))?;
            measures.push(Measure::counting(&f));
        }
    }
    let sup = sup_of_measures(measures)?;
    Ok(Ed { chain, sup, blocks })
}

/// Largest level accepted by [`gen_edfin`] (`7! = 5040` chains).
pub const EDFIN_MAX_LEVEL: usize = 6;

#[derive(Clone, Debug)]
pub struct EdFin {
    /// Supremum of the counting measures of the blocks `C_k`.
    pub psi: Submeasure,
    /// Selector chains through `C_0, …, C_n`.
    pub chains: CoveringInstance,
    /// `C_0, …, C_n` with `|C_k| = k + 1`.
    pub blocks: Vec<PointSet>,
}

pub fn gen_edfin(n: usize) -> Result<EdFin> {
    if n == 0 {
        return Err(Error::Invalid("level must be at least 1".into()));
    }
    if n > EDFIN_MAX_LEVEL {
        return Err(Error::SizeGuard {
            what: "edfin level",
            size: n,
            limit: EDFIN_MAX_LEVEL,
        });
    }
    let sizes: Vec<usize> = (1..=n + 1).collect();
    let (total, blocks) = consecutive_blocks(&sizes);
    let psi = sup_of_measures(blocks.iter().map(Measure::counting).collect())?;
    let mut chains: Vec<PointSet> = vec![PointSet::empty(total)];
    for b in &blocks {
        let mut next = Vec::with_capacity(chains.len() * b.len());
        for s in &chains {
            for j in b.iter() {
                let mut t = s.clone();
                t.insert(j);
                next.push(t);
            }
        }
        chains = next;
    }
    let chains = CoveringInstance::new(GroundSet::new(total)?, chains)?;
    Ok(EdFin { psi, chains, blocks })
}

/// Largest level accepted by [`gen_mazur`] (`|K_4| = 4096`).
pub const MAZUR_MAX_LEVEL: usize = 4;

#[derive(Clone, Debug)]
pub struct Mazur {
    pub n: usize,
    /// Min-cover submeasure of the hats on `K_n`.
    pub psi: Submeasure,
    /// `K_n` with the hats `î = {f : i ∉ range f}`, `i < 2n`.
    pub inst: CoveringInstance,
}

/// Function `n → m` with lexicographic index `index`.
pub fn function_of_index(n: usize, m: usize, mut index: usize) -> Vec<usize> {
    let mut f = vec![0; n];
    for slot in f.iter_mut().rev() {
        *slot = index % m;
        index /= m;
    }
    f
}

/// Lexicographic index of a function `n → m`.
pub fn index_of_function(f: &[usize], m: usize) -> usize {
    f.iter().fold(0, |acc, &v| acc * m + v)
}

fn function_label(f: &[usize]) -> String {
    let parts: Vec<String> = f.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn gen_mazur(n: usize) -> Result<Mazur> {
    if n == 0 || n > MAZUR_MAX_LEVEL {
        return Err(Error::SizeGuard {
            what: "mazur level (1..=4)",
            size: n,
            limit: MAZUR_MAX_LEVEL,
        });
    }
    let m = 2 * n;
    let size = m.pow(n as u32);
    let functions: Vec<Vec<usize>> = (0..size).map(|i| function_of_index(n, m, i)).collect();
    let hats: Vec<PointSet> = (0..m)
        .map(|i| PointSet::from_points(size, (0..size).filter(|&p| !functions[p].contains(&i))).expect("in range"))
        .collect();
    let ground = GroundSet::with_labels(functions.iter().map(|f| function_label(f)).collect())?;
    let psi = Submeasure::min_cover(ground.clone(), hats.clone())?;
    Ok(Mazur {
        n,
        psi,
        inst: CoveringInstance::new(ground, hats)?,
    })
}

/// Binary string `s_j` of length `n`, most significant bit first.
pub fn binary_string(n: usize, j: usize) -> String {
    (0..n).rev().map(|b| if j >> b & 1 == 1 { '1' } else { '0' }).collect()
}

pub const SOLECKI_MIN_LEVEL: usize = 2;
pub const SOLECKI_MAX_LEVEL: usize = 4;

#[derive(Clone, Debug)]
pub struct Solecki {
    pub n: usize,
    /// Code of each point: bit `j` is set when the cylinder of `s_j` is
    /// contained in the clopen set.
    pub codes: Vec<u32>,
    pub chi: Submeasure,
    /// `Ω_n` with the sets `s̃ = {b : bit s set in b}`.
    pub inst: CoveringInstance,
}

/// Balanced codes over `2^n` strings: `2^n`-bit masks with `2^(n-1)` bits
/// set, increasing.
pub fn omega_codes(n: usize) -> Vec<u32> {
    let width = 1u32 << n;
    let half = width / 2;
    (0u32..(1u32 << width)).filter(|c| c.count_ones() == half).collect()
}

pub fn gen_solecki(n: usize) -> Result<Solecki> {
    if !(SOLECKI_MIN_LEVEL..=SOLECKI_MAX_LEVEL).contains(&n) {
        return Err(Error::SizeGuard {
            what: "solecki level (2..=4)",
            size: n,
            limit: SOLECKI_MAX_LEVEL,
        });
    }
    let codes = omega_codes(n);
    let size = codes.len();
    let strings = 1usize << n;
    let labels = codes
        .iter()
        .map(|&c| {
            let parts: Vec<String> = (0..strings).filter(|j| c >> j & 1 == 1).map(|j| binary_string(n, j)).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let hats: Vec<PointSet> = (0..strings)
        .map(|s| PointSet::from_points(size, (0..size).filter(|&p| codes[p] >> s & 1 == 1)).expect("in range"))
        .collect();
    let ground = GroundSet::with_labels(labels)?;
    let chi = Submeasure::min_cover(ground.clone(), hats.clone())?;
    Ok(Solecki {
        n,
        codes,
        chi,
        inst: CoveringInstance::new(ground, hats)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `|B_n^k| = 2^n (n+1)` for every `k`.
    A,
    /// `|B_n^k| = (n+1)(2^n + k)`.
    B,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Variant::A),
            "b" | "B" => Ok(Variant::B),
            _ => Err(Error::parse("variant", format!("expected a or b, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagedBlock {
    pub n: usize,
    pub k: usize,
    pub points: PointSet,
    /// `ν_n^k({x}) = (n+1) / |B_n^k|`.
    pub weight: Rational,
}

/// Disjoint blocks `B_n^k` in order of `n`, then `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagedFamily {
    pub blocks: Vec<StagedBlock>,
}

impl StagedFamily {
    /// `B_n`, the union of the blocks `B_n^k`.
    pub fn stage(&self, n: usize) -> Option<PointSet> {
        let mut it = self.blocks.iter().filter(|b| b.n == n);
        let first = it.next()?.points.clone();
        Some(it.fold(first, |acc, b| acc.union(&b.points)))
    }

    pub fn block(&self, n: usize, k: usize) -> Option<&StagedBlock> {
        self.blocks.iter().find(|b| b.n == n && b.k == k)
    }

    /// Block containing `point`.
    pub fn block_of(&self, point: usize) -> Option<&StagedBlock> {
        self.blocks.iter().find(|b| b.points.contains(point))
    }
}

/// Guards for [`gen_property_a`].
pub const PROPERTY_A_MAX_POINTS: usize = 1 << 16;
pub const PROPERTY_A_MAX_WORK: usize = 10_000_000;

#[derive(Clone, Debug)]
pub struct PropertyA {
    pub variant: Variant,
    pub n_max: usize,
    pub k_max: usize,
    /// Supremum of `μ_s = Σ_n ν_n^{s(n)}` over all `s : {0..n_max} → {0..k_max}`.
    pub phi: Submeasure,
    pub family: StagedFamily,
}

pub fn block_size(variant: Variant, n: usize, k: usize) -> usize {
    match variant {
        Variant::A => (1usize << n) * (n + 1),
        Variant::B => (n + 1) * ((1usize << n) + k),
    }
}

pub fn gen_property_a(variant: Variant, n_max: usize, k_max: usize) -> Result<PropertyA> {
    if n_max == 0 || k_max == 0 {
        return Err(Error::Invalid("stage bounds must be at least 1".into()));
    }
    if n_max >= 16 {
        return Err(Error::SizeGuard {
            what: "property-A stages",
            size: n_max,
            limit: 15,
        });
    }
    let mut total = 0usize;
    for n in 0..=n_max {
        for k in 0..=k_max {
            total = total.saturating_add(block_size(variant, n, k));
        }
    }
    let measure_count = (k_max + 1).checked_pow(n_max as u32 + 1).unwrap_or(usize::MAX);
    if total > PROPERTY_A_MAX_POINTS || measure_count.saturating_mul(total) > PROPERTY_A_MAX_WORK {
        return Err(Error::SizeGuard {
            what: "property-A points times measures",
            size: measure_count.saturating_mul(total),
            limit: PROPERTY_A_MAX_WORK,
        });
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for n in 0..=n_max {
        for k in 0..=k_max {
            let size = block_size(variant, n, k);
            blocks.push(StagedBlock {
                n,
                k,
                points: PointSet::from_points(total, start..start + size)?,
                weight: Rational::new((n as i64 + 1).into(), (size as i64).into()),
            });
            start += size;
        }
    }
    let family = StagedFamily { blocks };
    let mut measures = Vec::with_capacity(measure_count);
    for code in 0..measure_count {
        let mut weights = vec![Rational::zero(); total];
        let mut c = code;
        for n in 0..=n_max {
            let k = c % (k_max + 1);
            c /= k_max + 1;
            let b = family.block(n, k).expect("block exists");
            for p in b.points.iter() {
                weights[p] = b.weight.clone();
            }
        }
        measures.push(Measure::new(weights)?);
    }
    Ok(PropertyA {
        variant,
        n_max,
        k_max,
        phi: sup_of_measures(measures)?,
        family,
    })
}

/// Least `N` with `2^-N < ε`.
pub fn property_a_bound(eps: &Rational) -> Result<u32> {
    if *eps <= Rational::zero() {
        return Err(Error::Invalid("ε must be positive".into()));
    }
    let mut n = 0u32;
    while pow2_neg(n) >= *eps {
        n += 1;
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyABound {
    pub n_bound: u32,
    /// Variant b only: every point of `M_ε` lies in a block with `k < 1/ε`.
    pub k_bound: Option<Rational>,
    /// `M_ε = {x : φ({x}) ≥ ε}` within the truncation.
    pub m_eps: PointSet,
    /// `M_ε ⊆ B_0 ∪ … ∪ B_{N-1}` (and the `k` bound for variant b).
    pub contained: bool,
}

impl PropertyA {
    /// Checks the stage bound for `M_ε` against the generated truncation.
    pub fn certify_bound(&self, eps: &Rational) -> Result<PropertyABound> {
        let n_bound = property_a_bound(eps)?;
        let size = self.phi.size();
        let singles = self.singleton_values();
        let target = RationalX::Finite(eps.clone());
        let m_eps = PointSet::from_points(size, (0..size).filter(|&p| singles[p] >= target))?;
        let k_bound = (self.variant == Variant::B).then(|| Rational::from_integer(1.into()) / eps);
        let contained = m_eps.iter().all(|p| {
            let b = self.family.block_of(p).expect("every point is in a block");
            (b.n as u32) < n_bound && k_bound.as_ref().is_none_or(|kb| int(b.k as i64) < *kb)
        });
        Ok(PropertyABound {
            n_bound,
            k_bound,
            m_eps,
            contained,
        })
    }

    /// `φ({x})` for every point, read from the measures directly.
    pub fn singleton_values(&self) -> Vec<RationalX> {
        let ms = self.phi.as_measures().expect("sup of measures");
        (0..self.phi.size())
            .map(|p| RationalX::Finite(ms.iter().map(|m| m.weight(p).clone()).max().unwrap_or_else(Rational::zero)))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct FinXEmpty {
    pub x: VectorSequence,
    /// `B_1, B_2, …` in order.
    pub blocks: Vec<PointSet>,
}

/// Diagonal sequence with `x_n = m e_n` for `n ∈ B_m`, blocks numbered from 1.
pub fn gen_finxempty(block_sizes: &[usize]) -> Result<FinXEmpty> {
    if block_sizes.is_empty() || block_sizes.contains(&0) {
        return Err(Error::Invalid("need at least one nonempty block".into()));
    }
    let (total, blocks) = consecutive_blocks(block_sizes);
    let mut entries = vec![vec![Rational::zero(); total]; total];
    for (m, b) in blocks.iter().enumerate() {
        for p in b.iter() {
            entries[p][p] = int(m as i64 + 1);
        }
    }
    Ok(FinXEmpty {
        x: VectorSequence::new(entries, false)?,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathology::{covering_stats, pathological_criterion};
    use crate::rational::ratio;
    use crate::setcover::min_cover_brute_force;
    use crate::Limits;

    #[test]
    fn function_indexing_round_trips() {
        for i in 0..64 {
            let f = function_of_index(2, 8, i);
            assert_eq!(index_of_function(&f, 8), i);
        }
        assert_eq!(function_of_index(2, 4, 1), vec![0, 1]);
        assert_eq!(function_of_index(2, 4, 4), vec![1, 0]);
    }

    #[test]
    fn mazur_shapes() {
        let mz = gen_mazur(2).unwrap();
        assert_eq!(mz.psi.size(), 16);
        assert_eq!(mz.inst.family.len(), 4);
        assert_eq!(mz.psi.ground().labels().unwrap()[1], "(0,1)");
        assert_eq!(mz.psi.eval(&mz.psi.ground().full()).unwrap(), RationalX::from_int(3));
        assert!(gen_mazur(5).is_err());
    }

    #[test]
    fn mazur_no_n_hats_cover() {
        for n in 1..=3 {
            let mz = gen_mazur(n).unwrap();
            let full = mz.psi.ground().full();
            assert_eq!(min_cover_brute_force(&full, &mz.inst.family), Some(n + 1));
        }
    }

    #[test]
    fn solecki_shapes() {
        let s = gen_solecki(2).unwrap();
        assert_eq!(s.codes.len(), 6);
        assert_eq!(s.codes[0], 0b0011);
        assert_eq!(s.chi.ground().labels().unwrap()[0], "{00,01}");
        assert_eq!(s.chi.eval(&s.chi.ground().full()).unwrap(), RationalX::from_int(3));
        assert_eq!(binary_string(3, 5), "101");
        assert!(gen_solecki(1).is_err());
    }

    #[test]
    fn solecki_half_families_fail() {
        for n in 2..=3 {
            let s = gen_solecki(n).unwrap();
            let half = 1usize << (n - 1);
            let full = s.chi.ground().full();
            for combo in combinations(1 << n, half) {
                let mut u = PointSet::empty(full.capacity());
                for &j in &combo {
                    u.union_with(&s.inst.family[j]);
                }
                assert_ne!(u, full);
            }
            for combo in combinations(1 << n, half + 1) {
                let mut u = PointSet::empty(full.capacity());
                for &j in &combo {
                    u.union_with(&s.inst.family[j]);
                }
                assert_eq!(u, full);
            }
        }
    }

    #[test]
    fn edfin_chain_counts() {
        let e = gen_edfin(3).unwrap();
        assert_eq!(e.chains.family.len(), 24);
        let st = covering_stats(&e.chains).unwrap();
        assert_eq!(st.delta, ratio(1, 4));
        // B(i) = (n+1)!/(k+1) for i in C_k.
        for (k, b) in e.blocks.iter().enumerate() {
            for p in b.iter() {
                assert_eq!(st.b[p], 24 / (k as u64 + 1));
            }
        }
        assert!(gen_edfin(7).is_err());
    }

    #[test]
    fn ed_examples() {
        let ed = gen_ed(&[3, 3]).unwrap();
        let s = |v: &[usize]| PointSet::from_points(6, v.iter().copied()).unwrap();
        assert_eq!(ed.chain.eval(&s(&[0, 3])).unwrap(), RationalX::from_int(1));
        let a = s(&[0, 3, 4]);
        assert_eq!(ed.chain.eval(&a).unwrap(), RationalX::from_int(2));
        for y in a.iter() {
            let mut b = a.clone();
            b.remove(y);
            assert_eq!(ed.chain.eval(&b).unwrap(), RationalX::from_int(1));
        }
        let w = pathological_criterion(&ed.chain, &Limits::default()).unwrap().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w, s(&[0, 1, 3]));
        assert!(ed.sup.eval(&ed.blocks[1]).unwrap() <= RationalX::from_int(2));
        assert!(matches!(gen_ed(&[3, 1]), Err(Error::BlockTooSmall { block: 1, .. })));
    }

    #[test]
    fn property_a_facts() {
        let pa = gen_property_a(Variant::A, 3, 2).unwrap();
        let singles = pa.singleton_values();
        for b in &pa.family.blocks {
            for p in b.points.iter() {
                assert_eq!(singles[p], RationalX::Finite(pow2_neg(b.n as u32)));
            }
            assert_eq!(pa.phi.eval(&b.points).unwrap(), RationalX::from_int(b.n as i64 + 1));
        }
        let cert = pa.certify_bound(&ratio(1, 4)).unwrap();
        assert_eq!(cert.n_bound, 3);
        assert!(cert.contained);
        let pb = gen_property_a(Variant::B, 2, 3).unwrap();
        let b = pb.family.block(2, 3).unwrap();
        assert_eq!(b.weight, ratio(1, 7));
        assert!(pb.certify_bound(&ratio(1, 4)).unwrap().contained);
    }

    #[test]
    fn property_a_bound_values() {
        assert_eq!(property_a_bound(&ratio(1, 4)).unwrap(), 3);
        assert_eq!(property_a_bound(&int(2)).unwrap(), 0);
        assert_eq!(property_a_bound(&int(1)).unwrap(), 1);
        assert!(property_a_bound(&int(0)).is_err());
    }

    #[test]
    fn finxempty_values() {
        let f = gen_finxempty(&[2, 3, 4]).unwrap();
        let phi = crate::banach::phi_of_sequence(&f.x).unwrap();
        for (m, b) in f.blocks.iter().enumerate() {
            assert_eq!(phi.eval(b).unwrap(), RationalX::from_int(m as i64 + 1));
        }
        let sel = PointSet::from_points(9, [0, 2, 5]).unwrap();
        assert_eq!(phi.eval(&sel).unwrap(), RationalX::from_int(3));
    }
}
