//! Independent oracles shared by the integration tests. None of them calls
//! the simplex solver or the set-cover search of the library.

#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use submeasure_core::pathology::HatResult;
use submeasure_core::pointset::combinations;
use submeasure_core::{PointSet, Rational, RationalX, Submeasure};

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn fin(r: Rational) -> RationalX {
    RationalX::Finite(r)
}

pub fn set(n: usize, pts: &[usize]) -> PointSet {
    PointSet::from_points(n, pts.iter().copied()).unwrap()
}

/// Solves the square system `m x = b` by Gauss–Jordan elimination;
/// `None` when singular.
fn solve(mut m: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let k = b.len();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        b[col] = &b[col] * &inv;
        let pivot_row = m[col].clone();
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some(b)
}

/// `φ̂(A)` by enumerating every vertex of `{μ ≥ 0, μ(B) ≤ φ(B) for B ⊆ A}`.
/// Exponential in the number of constraints; meant for `|A| ≤ 4`.
pub fn hat_by_vertices(phi: &Submeasure, a: &PointSet) -> Rational {
    let pts = a.to_vec();
    let k = pts.len();
    if k == 0 {
        return Rational::zero();
    }
    assert!(k <= 5, "vertex oracle is for tiny sets");
    // Rows: (coefficients over the k points, right-hand side).
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for mask in 1u32..(1 << k) {
        let b = PointSet::from_points(a.capacity(), (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| pts[i])).unwrap();
        if let RationalX::Finite(v) = phi.eval(&b).unwrap() {
            rows.push(((0..k).map(|i| if mask >> i & 1 == 1 { int(1) } else { int(0) }).collect(), v));
        }
    }
    for i in 0..k {
        rows.push(((0..k).map(|j| if i == j { int(-1) } else { int(0) }).collect(), int(0)));
    }
    let mut best: Option<Rational> = None;
    for pick in combinations(rows.len(), k) {
        let m = pick.iter().map(|&r| rows[r].0.clone()).collect();
        let b = pick.iter().map(|&r| rows[r].1.clone()).collect();
        let Some(x) = solve(m, b) else { continue };
        let feasible = rows.iter().all(|(c, rhs)| c.iter().zip(&x).map(|(u, v)| u * v).sum::<Rational>() <= *rhs);
        if feasible {
            let total: Rational = x.iter().sum();
            if best.as_ref().is_none_or(|b| total > *b) {
                best = Some(total);
            }
        }
    }
    best.expect("the zero measure is a vertex")
}

/// Checks a hat result without trusting the solver.
///
/// Primal: the witness is a nonnegative measure inside `A` of total mass
/// `value`, dominated by `φ` on every subset of `A` (or, for min-cover
/// submeasures, with `μ(s) ≤ 1` on each family set, which implies
/// domination). Dual: certificate weights `y_B > 0` on subsets of `A`
/// with `Σ_{B ∋ x} y_B ≥ 1` for every `x ∈ A` and `Σ y_B φ(B) = value`, so
/// no dominated measure has more mass.
pub fn check_hat_certificate(phi: &Submeasure, a: &PointSet, res: &HatResult, family: Option<&[PointSet]>) -> Result<(), String> {
    let mu = &res.witness;
    if !mu.support().is_subset(a) {
        return Err("witness leaves A".into());
    }
    if mu.weights().iter().any(|w| w.is_negative()) {
        return Err("negative witness".into());
    }
    if mu.mass(a) != res.value {
        return Err(format!("witness mass {} differs from value {}", mu.mass(a), res.value));
    }
    match family {
        Some(fam) => {
            for s in fam {
                if mu.mass(s) > int(1) {
                    return Err(format!("witness exceeds 1 on {s}"));
                }
            }
        }
        None => {
            let pts = a.to_vec();
            assert!(pts.len() <= 16);
            for mask in 1u64..(1 << pts.len()) {
                let b = PointSet::from_points(a.capacity(), (0..pts.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pts[i])).unwrap();
                if fin(mu.mass(&b)) > phi.eval(&b).unwrap() {
                    return Err(format!("witness not dominated on {b}"));
                }
            }
        }
    }
    let mut cover = vec![Rational::zero(); a.capacity()];
    let mut dual = Rational::zero();
    for (b, y) in &res.certificate {
        if !b.is_subset(a) || !y.is_positive() {
            return Err(format!("bad certificate entry {b}"));
        }
        let v = phi.eval(b).unwrap().finite().cloned().ok_or("infinite certificate set")?;
        dual += y * v;
        for x in b.iter() {
            cover[x] += y;
        }
    }
    if let Some(x) = a.iter().find(|&x| cover[x] < int(1)) {
        return Err(format!("certificate under-covers point {x}"));
    }
    if dual != res.value {
        return Err(format!("dual value {dual} differs from {}", res.value));
    }
    Ok(())
}

/// Least number of family sets covering `target`, by increasing size.
pub fn brute_cover(target: &PointSet, family: &[PointSet]) -> Option<usize> {
    for k in 0..=family.len() {
        for pick in combinations(family.len(), k) {
            let mut u = PointSet::empty(target.capacity());
            for &i in &pick {
                u.union_with(&family[i]);
            }
            if target.is_subset(&u) {
                return Some(k);
            }
        }
    }
    None
}

/// `min_i |{s : i ∈ s}| / |family|`, counted directly.
pub fn delta_by_count(n: usize, family: &[PointSet]) -> Rational {
    let m = (0..n).map(|i| family.iter().filter(|s| s.contains(i)).count()).min().unwrap();
    ratio(m as i64, family.len() as i64)
}
