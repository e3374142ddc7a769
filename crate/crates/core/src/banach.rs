//! Sequences in `ℓ∞` and their submeasures.
//!
//! A [`VectorSequence`] is a `K × N` matrix: column `n` is the vector `x_n`,
//! row `k` is the measure `μ_k` with `μ_k({n}) = x_n(k)`. For nonnegative
//! entries `φ_x(A) = sup_F ‖Σ_{n∈F} x_n‖∞` is attained at `F = A`, so it is
//! the largest row sum over `A`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::rational::{pow2_neg, Rational};
use crate::submeasure::{sup_of_measures, Measure, Repr, Submeasure};
use crate::TRUNCATION_LABEL;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSequence {
    /// `entries[k][n] = x_n(k)`.
    entries: Vec<Vec<Rational>>,
    signed: bool,
}

impl VectorSequence {
    /// Rows of equal nonzero length. Negative entries need `signed`.
    pub fn new(entries: Vec<Vec<Rational>>, signed: bool) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || cols == 0 {
            return Err(Error::Invalid("matrix needs at least one row and one column".into()));
        }
        if let Some(k) = entries.iter().position(|r| r.len() != cols) {
            return Err(Error::Invalid(format!("row {k} has {} entries, expected {cols}", entries[k].len())));
        }
        if !signed {
            if let Some((row, col)) = first_negative(&entries) {
                return Err(Error::SignedInput { row, col });
            }
        }
        Ok(VectorSequence { entries, signed })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn signed(&self) -> bool {
        self.signed
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn column(&self, col: usize) -> Vec<Rational> {
        self.entries.iter().map(|r| r[col].clone()).collect()
    }

    /// `‖x_n‖∞`.
    pub fn column_norm(&self, col: usize) -> Rational {
        self.entries.iter().map(|r| r[col].abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn has_negative(&self) -> bool {
        first_negative(&self.entries).is_some()
    }

    /// Divides every entry by the largest column norm `M`, returning `M`.
    pub fn scale_by_sup(&self) -> Result<(VectorSequence, Rational)> {
        let m = (0..self.cols()).map(|n| self.column_norm(n)).max().unwrap_or_else(Rational::zero);
        if m.is_zero() {
            return Err(Error::Invalid("cannot scale the zero matrix".into()));
        }
        let entries = self.entries.iter().map(|r| r.iter().map(|v| v / &m).collect()).collect();
        Ok((VectorSequence { entries, signed: self.signed }, m))
    }
}

fn first_negative(entries: &[Vec<Rational>]) -> Option<(usize, usize)> {
    entries
        .iter()
        .enumerate()
        .find_map(|(k, r)| r.iter().position(|v| v.is_negative()).map(|n| (k, n)))
}

/// `φ_x` as the supremum of the row measures.
pub fn phi_of_sequence(x: &VectorSequence) -> Result<Submeasure> {
    if let Some((row, col)) = first_negative(&x.entries) {
        return Err(Error::SignedInput { row, col });
    }
    sup_of_measures(x.entries.iter().map(|r| Measure::new(r.clone())).collect::<Result<_>>()?)
}

/// One row per measure of a supremum-of-measures submeasure.
pub fn sequence_of_phi(phi: &Submeasure) -> Result<VectorSequence> {
    match phi.repr() {
        Repr::SupMeasures(ms) => VectorSequence::new(ms.iter().map(|m| m.weights().to_vec()).collect(), false),
        _ => Err(Error::WrongRepresentation { expected: "sup_measures" }),
    }
}

/// Entrywise absolute value.
pub fn abs_normalize(x: &VectorSequence) -> VectorSequence {
    VectorSequence {
        entries: x.entries.iter().map(|r| r.iter().map(|v| v.abs()).collect()).collect(),
        signed: x.signed,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BoundednessReport {
    /// `max_{F ⊆ A} ‖Σ_{n∈F} x_n‖∞`.
    #[serde(with = "crate::rational::serde_rational")]
    pub primal_max: Rational,
    /// Per row: `max(Σ positives, −Σ negatives)` over `A`.
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub row_max: Vec<Rational>,
    #[serde(with = "crate::rational::serde_rational")]
    pub threshold: Rational,
    pub bounded: bool,
    /// Per coordinate functional `e*_k`: `Σ_{n∈A} |x_n(k)|`.
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub dual_sums: Vec<Rational>,
    pub dual_note: &'static str,
}

pub const DUAL_NOTE: &str = "coordinate functionals only: a necessary condition, not the full dual test";

/// Partial-sum bound over `A` (a set of columns) against threshold `k`.
pub fn boundedness_report(x: &VectorSequence, a: &PointSet, k: &Rational) -> Result<BoundednessReport> {
    if a.capacity() != x.cols() {
        return Err(Error::GroundMismatch {
            expected: x.cols(),
            found: a.capacity(),
        });
    }
    let mut row_max = Vec::with_capacity(x.rows());
    let mut dual_sums = Vec::with_capacity(x.rows());
    for r in &x.entries {
        let (mut pos, mut neg, mut abs) = (Rational::zero(), Rational::zero(), Rational::zero());
        for n in a.iter() {
            let v = &r[n];
            if v.is_positive() {
                pos += v;
            } else {
                neg -= v;
            }
            abs += v.abs();
        }
        row_max.push(if pos >= neg { pos } else { neg });
        dual_sums.push(abs);
    }
    let primal_max = row_max.iter().max().cloned().unwrap_or_else(Rational::zero);
    Ok(BoundednessReport {
        bounded: primal_max <= *k,
        primal_max,
        row_max,
        threshold: k.clone(),
        dual_sums,
        dual_note: DUAL_NOTE,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Trend {
    /// Threshold exponent `t`: the threshold is `2^-t`.
    pub exponent: u32,
    /// Last index whose value exceeds `2^-t`, if any.
    pub last_above: Option<usize>,
    /// True when the last index of the truncation is already below.
    pub settled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct NullityReport {
    pub label: &'static str,
    /// For each column `n`: trend of `μ_k({n})` as `k` grows.
    pub row_vanishing: Vec<Vec<Trend>>,
    /// For each row `k`: trend of `x_n(k)` as `n` grows.
    pub column_vanishing: Vec<Vec<Trend>>,
    /// `φ({n}) = ‖x_n‖∞` for each column.
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub column_norms: Vec<Rational>,
    /// Running maximum of the column norms.
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub running_sup: Vec<Rational>,
}

fn trends(values: &[Rational], max_exponent: u32) -> Vec<Trend> {
    (0..=max_exponent)
        .map(|t| {
            let th = pow2_neg(t);
            let last_above = values.iter().rposition(|v| v.abs() > th);
            Trend {
                exponent: t,
                last_above,
                settled: last_above.is_none_or(|i| i + 1 < values.len()),
            }
        })
        .collect()
}

/// Vanishing trends at thresholds `2^0, …, 2^-max_exponent`.
pub fn nullity_diagnostics(x: &VectorSequence, max_exponent: u32) -> NullityReport {
    let row_vanishing = (0..x.cols()).map(|n| trends(&x.column(n), max_exponent)).collect();
    let column_vanishing = x.entries.iter().map(|r| trends(r, max_exponent)).collect();
    let column_norms: Vec<Rational> = (0..x.cols()).map(|n| x.column_norm(n)).collect();
    let mut running_sup = Vec::with_capacity(column_norms.len());
    let mut cur = Rational::zero();
    for v in &column_norms {
        if *v > cur {
            cur = v.clone();
        }
        running_sup.push(cur.clone());
    }
    NullityReport {
        label: TRUNCATION_LABEL,
        row_vanishing,
        column_vanishing,
        column_norms,
        running_sup,
    }
}
