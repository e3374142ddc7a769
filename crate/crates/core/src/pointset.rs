//! Finite ground sets and subsets of them.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// The points `0..size`, optionally labelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyGround);
        }
        Ok(GroundSet { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyGround);
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("point labels must be distinct".into()));
        }
        Ok(GroundSet {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.size)
    }

    pub fn empty(&self) -> PointSet {
        PointSet::empty(self.size)
    }

    pub fn check(&self, set: &PointSet) -> Result<()> {
        if set.capacity() != self.size {
            return Err(Error::GroundMismatch {
                expected: self.size,
                found: set.capacity(),
            });
        }
        Ok(())
    }
}

/// A subset of a ground `0..capacity`.
///
/// Ordered by cardinality first, then lexicographically on the increasing
/// list of elements; this is the tie-breaking order used by every search.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(capacity: usize) -> Self {
        PointSet {
            bits: FixedBitSet::with_capacity(capacity),
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        PointSet { bits }
    }

    pub fn from_points(capacity: usize, points: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = PointSet::empty(capacity);
        for p in points {
            if p >= capacity {
                return Err(Error::Invalid(format!(
                    "point {p} outside ground of size {capacity}"
                )));
            }
            set.bits.insert(p);
        }
        Ok(set)
    }

    /// Builds a set from a bitmask over the first 64 points.
    pub fn from_mask(capacity: usize, mask: u64) -> Self {
        let mut set = PointSet::empty(capacity);
        let mut m = mask;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            set.bits.insert(p);
            m &= m - 1;
        }
        set
    }

    /// Bitmask of the set; `None` if some element is at index 64 or above.
    pub fn to_mask(&self) -> Option<u64> {
        let mut mask = 0u64;
        for p in self.iter() {
            if p >= 64 {
                return None;
            }
            mask |= 1 << p;
        }
        Some(mask)
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.bits.contains(p)
    }

    pub fn insert(&mut self, p: usize) {
        self.bits.insert(p);
    }

    pub fn remove(&mut self, p: usize) {
        self.bits.set(p, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        PointSet { bits }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        PointSet { bits }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        PointSet { bits }
    }

    pub fn symmetric_difference(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.symmetric_difference_with(&other.bits);
        PointSet { bits }
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &PointSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn complement(&self) -> PointSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        PointSet { bits }
    }

    pub fn intersection_count(&self, other: &PointSet) -> usize {
        self.bits.intersection(&other.bits).count()
    }

    /// Re-embeds the set in a ground of a different capacity.
    pub fn with_capacity(&self, capacity: usize) -> Result<PointSet> {
        PointSet::from_points(capacity, self.iter())
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for PointSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.len().hash(state);
        for p in self.iter() {
            p.hash(state);
        }
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec())
    }
}

/// Submasks of `mask` in increasing numeric order, including 0 and `mask`.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

/// Masks over `n` points in size-then-lexicographic order of their element
/// lists (the `PointSet` order). Intended for `n <= 20`.
pub fn masks_size_lex(n: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..(1u64 << n)).collect();
    masks.sort_by(|&a, &b| {
        a.count_ones().cmp(&b.count_ones()).then_with(|| {
            // Lexicographic on increasing element lists: compare lowest
            // differing element; the set containing it is smaller.
            let diff = a ^ b;
            if diff == 0 {
                Ordering::Equal
            } else {
                let low = diff.trailing_zeros();
                if a >> low & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        })
    });
    masks
}

/// k-element combinations of `0..n`, lexicographic.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        cur = if advanced { Some(next) } else { None };
        Some(out)
    })
}
