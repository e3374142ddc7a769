mod common;

use common::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use submeasure_core::axioms::check_exhaustive;
use submeasure_core::banach::{abs_normalize, phi_of_sequence, sequence_of_phi, VectorSequence};
use submeasure_core::colorings::{
    c0tall_coloring, check_eventually_disjoint, dyadic_round, eventually_disjoint_subsequence, level_partition,
    maximal_homogeneous, schreier_coloring, verify_color1_bound, PartitionRow,
};
use submeasure_core::io::{parse_covering, parse_matrix, parse_submeasure, write_covering, write_matrix, write_submeasure};
use submeasure_core::pathology::{
    covering_stats, hat, hat_all_subsets, hat_min_cover, kelley_witness, pathology_degree, uniform_bound_check,
    CoveringInstance, Scope, SweepOptions,
};
use submeasure_core::reductions::{pushforward, pushforward_measure, PointMap};
use submeasure_core::rng::{
    random_covering_family, random_measure, random_probability, random_submeasure, random_subset, random_unit_matrix,
    trial_rng,
};
use submeasure_core::setcover::{min_cover, min_cover_size};
use submeasure_core::submeasure::{direct_sum, direct_sum_table, group_metric, sup_of_measures};
use submeasure_core::{GroundSet, Limits, PointSet, Rational, RationalX, Submeasure};

fn limits() -> Limits {
    Limits::default()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// Hats are only defined for finite values; every generator here is finite.
fn value(phi: &Submeasure, a: &PointSet) -> Rational {
    phi.eval(a).unwrap().finite().unwrap().clone()
}

fn generated(seed: u64, n: usize) -> Submeasure {
    random_submeasure(&mut trial_rng(seed, 0), n)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn generated_submeasures_satisfy_axioms(seed in any::<u64>(), n in 1usize..=8) {
        let phi = generated(seed, n);
        let report = check_exhaustive(&phi, &limits()).unwrap();
        prop_assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn direct_sum_satisfies_axioms_and_adds(seed in any::<u64>(), n in 1usize..=4, m in 1usize..=4) {
        let left = generated(seed, n);
        let right = generated(seed ^ 0x5555, m);
        let sum = direct_sum(&left, &right).unwrap();
        prop_assert!(check_exhaustive(&sum, &limits()).unwrap().passed());
        let table = direct_sum_table(&left, &right).unwrap();
        let mut rng = trial_rng(seed, 1);
        for _ in 0..16 {
            let a = random_subset(&mut rng, n + m, 0.5);
            let l = PointSet::from_points(n, a.iter().filter(|&p| p < n)).unwrap();
            let r = PointSet::from_points(m, a.iter().filter(|&p| p >= n).map(|p| p - n)).unwrap();
            let expected = left.eval(&l).unwrap() + right.eval(&r).unwrap();
            prop_assert_eq!(sum.eval(&a).unwrap(), expected.clone());
            prop_assert_eq!(table.eval(&a).unwrap(), expected);
        }
    }

    #[test]
    fn min_cover_matches_brute_force(seed in any::<u64>(), n in 1usize..=7, count in 1usize..=9) {
        let mut rng = trial_rng(seed, 0);
        let family = random_covering_family(&mut rng, n, count);
        let target = random_subset(&mut rng, n, 0.6);
        let expected = brute_cover(&target, &family);
        prop_assert_eq!(min_cover_size(&target, &family), expected);
        match min_cover(&target, &family) {
            Some(cover) => {
                prop_assert_eq!(Some(cover.size()), expected);
                let mut union = PointSet::empty(n);
                for &i in &cover.sets {
                    union.union_with(&family[i]);
                }
                prop_assert!(target.is_subset(&union));
            }
            None => prop_assert_eq!(expected, None),
        }
    }

    #[test]
    fn metric_is_a_pseudometric(seed in any::<u64>(), n in 1usize..=8) {
        let phi = generated(seed, n);
        let mut rng = trial_rng(seed, 2);
        let a = random_subset(&mut rng, n, 0.5);
        let b = random_subset(&mut rng, n, 0.5);
        let c = random_subset(&mut rng, n, 0.5);
        let ab = group_metric(&phi, &a, &b).unwrap();
        prop_assert_eq!(ab.clone(), group_metric(&phi, &b, &a).unwrap());
        prop_assert!(group_metric(&phi, &a, &a).unwrap().is_zero());
        let bc = group_metric(&phi, &b, &c).unwrap();
        prop_assert!(group_metric(&phi, &a, &c).unwrap() <= ab + bc);
    }

    #[test]
    fn hat_is_below_value_with_valid_certificate(seed in any::<u64>(), n in 1usize..=7) {
        let phi = generated(seed, n);
        let a = random_subset(&mut trial_rng(seed, 3), n, 0.7);
        let res = hat(&phi, &a, &limits()).unwrap();
        prop_assert!(res.value <= value(&phi, &a));
        let family = match phi.repr() {
            submeasure_core::Repr::MinCover(f) => Some(f.as_slice()),
            _ => None,
        };
        prop_assert_eq!(check_hat_certificate(&phi, &a, &res, family), Ok(()));
    }

    #[test]
    fn hat_agrees_with_vertex_enumeration(seed in any::<u64>(), n in 1usize..=5) {
        let phi = generated(seed, n);
        let a = random_subset(&mut trial_rng(seed, 4), n, 0.8);
        prop_assume!(a.len() <= 4);
        prop_assert_eq!(hat_all_subsets(&phi, &a, &limits()).unwrap().value, hat_by_vertices(&phi, &a));
    }

    #[test]
    fn hat_of_a_single_measure_is_its_mass(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = trial_rng(seed, 5);
        let mu = random_measure(&mut rng, n, 6);
        let phi = sup_of_measures(vec![mu.clone()]).unwrap();
        let a = random_subset(&mut rng, n, 0.6);
        prop_assert_eq!(hat(&phi, &a, &limits()).unwrap().value, mu.mass(&a));
    }

    #[test]
    fn hat_is_idempotent(seed in any::<u64>(), n in 1usize..=5) {
        let phi = generated(seed, n);
        let lim = limits();
        let mut values = std::collections::BTreeMap::new();
        for mask in 0u64..(1 << n) {
            let a = PointSet::from_mask(n, mask);
            values.insert(a.clone(), RationalX::Finite(hat(&phi, &a, &lim).unwrap().value));
        }
        let hat_phi = Submeasure::table(GroundSet::new(n).unwrap(), values.clone()).unwrap();
        for (a, v) in &values {
            prop_assert_eq!(&RationalX::Finite(hat(&hat_phi, a, &lim).unwrap().value), v);
        }
    }

    #[test]
    fn family_constraints_match_subset_constraints(seed in any::<u64>(), n in 1usize..=7, count in 1usize..=6) {
        let mut rng = trial_rng(seed, 6);
        let family = random_covering_family(&mut rng, n, count);
        let phi = Submeasure::min_cover(GroundSet::new(n).unwrap(), family.clone()).unwrap();
        let a = random_subset(&mut rng, n, 0.7);
        let reduced = hat_min_cover(n, &a, &family).unwrap();
        let full = hat_all_subsets(&phi, &a, &limits()).unwrap();
        prop_assert_eq!(&reduced.value, &full.value);
        prop_assert_eq!(check_hat_certificate(&phi, &a, &reduced, Some(&family)), Ok(()));
    }

    #[test]
    fn uniform_bound_holds(seed in any::<u64>(), n in 1usize..=7, count in 1usize..=6) {
        let mut rng = trial_rng(seed, 7);
        let family = random_covering_family(&mut rng, n, count);
        let inst = CoveringInstance::new(GroundSet::new(n).unwrap(), family.clone()).unwrap();
        let phi = generated(seed, n);
        let m = family.iter().map(|s| value(&phi, s)).max().unwrap();
        prop_assume!(!m.is_zero());
        let ub = uniform_bound_check(&phi, &inst, &m, &limits()).unwrap();
        prop_assert!(ub.holds);
        prop_assert_eq!(ub.delta, delta_by_count(n, &family));
    }

    #[test]
    fn pushforward_preserves_axioms_and_domination(seed in any::<u64>(), n in 1usize..=6, m in 1usize..=4) {
        let mut rng = trial_rng(seed, 8);
        let f = PointMap::new(m, (0..n).map(|_| rng.gen_range(0..m)).collect()).unwrap();
        let phi = generated(seed, n);
        let image = pushforward(&phi, &f).unwrap();
        prop_assert!(check_exhaustive(&image, &limits()).unwrap().passed());
        let lim = limits();
        for mask in 0u64..(1 << m) {
            let b = PointSet::from_mask(m, mask);
            let pre = f.preimage(&b).unwrap();
            prop_assert_eq!(image.eval(&b).unwrap(), phi.eval(&pre).unwrap());
            // A measure dominated by φ pushes forward to one dominated by φ_f,
            // so hat(φ)(f⁻¹B) ≤ hat(φ_f)(B).
            prop_assert!(hat(&phi, &pre, &lim).unwrap().value <= hat(&image, &b, &lim).unwrap().value);
        }
        if let Some(ms) = phi.as_measures() {
            for mu in ms {
                let nu = pushforward_measure(mu, &f).unwrap();
                for mask in 0u64..(1 << m) {
                    let b = PointSet::from_mask(m, mask);
                    prop_assert!(RationalX::Finite(nu.mass(&b)) <= image.eval(&b).unwrap());
                }
            }
        }
    }

    #[test]
    fn degree_one_is_preserved_by_pushforward(seed in any::<u64>(), n in 1usize..=6, m in 1usize..=4) {
        let mut rng = trial_rng(seed, 9);
        let measures = (0..rng.gen_range(1..=3)).map(|_| random_measure(&mut rng, n, 4)).collect();
        let phi = sup_of_measures(measures).unwrap();
        let f = PointMap::new(m, (0..n).map(|_| rng.gen_range(0..m)).collect()).unwrap();
        let image = pushforward(&phi, &f).unwrap();
        let opts = SweepOptions::default();
        let before = pathology_degree(&phi, &Scope::AllSubsets, &limits(), &opts).unwrap().degree;
        let after = pathology_degree(&image, &Scope::AllSubsets, &limits(), &opts).unwrap().degree;
        if before == Some(RationalX::from_int(1)) && after.is_some() {
            prop_assert_eq!(after, Some(RationalX::from_int(1)));
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn kelley_witness_reaches_delta(seed in any::<u64>(), n in 1usize..=8, count in 1usize..=8) {
        let mut rng = trial_rng(seed, 10);
        let family = random_covering_family(&mut rng, n, count);
        let inst = CoveringInstance::new(GroundSet::new(n).unwrap(), family.clone()).unwrap();
        let delta = covering_stats(&inst).unwrap().delta;
        for _ in 0..16 {
            let pi = random_probability(&mut rng, n, 12);
            let w = kelley_witness(&inst, &pi).unwrap();
            prop_assert!(w.mass >= delta);
            prop_assert_eq!(&w.mass, &pi.mass(&family[w.index]));
            prop_assert!(family.iter().all(|s| pi.mass(s) <= w.mass));
        }
    }

    #[test]
    fn c0tall_coloring_matches_set_inclusion(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 11);
        let x = random_unit_matrix(&mut rng, 4, 8);
        let ps = level_partition(&x).unwrap();
        let c = c0tall_coloring(&ps);
        let rows = ps.rows();
        for n in 0..ps.points() {
            for m in n + 1..ps.points() {
                let expected = oracle_color(&rows[n], &rows[m]);
                prop_assert_eq!(c.color(n, m), expected);
                prop_assert_eq!(c.color(m, n), expected);
            }
        }
    }

    #[test]
    fn color1_sets_have_small_mass(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 12);
        let x = random_unit_matrix(&mut rng, 4, 9);
        let ps = level_partition(&x).unwrap();
        let c = c0tall_coloring(&ps);
        for h in maximal_homogeneous(&c, 1, &PointSet::full(ps.points())).unwrap() {
            let cert = verify_color1_bound(&ps, &h).unwrap();
            prop_assert!(cert.holds, "mass {} on {}", cert.max_mass, h);
        }
    }

    #[test]
    fn dyadic_rounding_is_close_and_below(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 13);
        let x = random_unit_matrix(&mut rng, 4, 10);
        let lambda = dyadic_round(&x).unwrap();
        for k in 0..x.rows() {
            let mut gap = Rational::zero();
            for n in 0..x.cols() {
                let (mu, la) = (x.entry(k, n), lambda.entry(k, n));
                prop_assert!(la <= mu && !la.is_negative());
                let step = ratio(1, 1 << n);
                prop_assert!(mu - la <= step);
                if mu.is_zero() {
                    prop_assert!(la.is_zero());
                } else {
                    prop_assert!(mu - la > Rational::zero());
                }
                gap += mu - la;
            }
            // Σ 2^-n < 2 bounds the total rounding loss on any set.
            prop_assert!(gap < int(2));
        }
    }

    #[test]
    fn schreier_color0_sets_have_bounded_mass(seed in any::<u64>(), p in 0u32..=3) {
        let mut rng = trial_rng(seed, 14);
        let x = random_unit_matrix(&mut rng, 3, 7);
        let b = schreier_coloring(&x, p).unwrap();
        let n = x.cols();
        for mask in 1u64..(1 << n) {
            let h = PointSet::from_mask(n, mask);
            if !b.is_homogeneous(&h, 0).unwrap() {
                continue;
            }
            let (mass, bound) = b.color0_mass(&h).unwrap();
            // Each measure puts fewer than q points at mass ≥ 2^-(p+1) into
            // H ∖ {q}; the rest weigh below 2^-(p+1) each.
            let rest = (h.len() - 1) as i64;
            let cap = int(bound as i64 - 2) + ratio(rest, 1 << (p + 1));
            prop_assert!(mass <= cap, "{} > {} on {}", mass, cap, h);
        }
    }

    #[test]
    fn eventually_disjoint_extraction_is_sound(seed in any::<u64>(), l in 1usize..=3) {
        let mut rng = trial_rng(seed, 15);
        let rows: Vec<PartitionRow> = (0..12)
            .map(|_| {
                let mut row = PartitionRow::default();
                for _ in 0..rng.gen_range(0..=l) {
                    let level = rng.gen_range(0..5u32);
                    row.cells.entry(level).or_default().insert(rng.gen_range(0..6usize));
                }
                row
            })
            .collect();
        if let Ok(found) = eventually_disjoint_subsequence(&rows, l, 3) {
            prop_assert_eq!(found.indices.len(), 3);
            prop_assert!(found.indices.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(check_eventually_disjoint(&rows, &found.indices, found.p));
        }
    }

    #[test]
    fn vector_sequences_round_trip(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 16);
        let x = random_unit_matrix(&mut rng, 5, 8);
        let phi = phi_of_sequence(&x).unwrap();
        prop_assert_eq!(&sequence_of_phi(&phi).unwrap(), &x);
        for n in 0..x.cols() {
            let single = PointSet::from_points(x.cols(), [n]).unwrap();
            prop_assert_eq!(phi.eval(&single).unwrap(), RationalX::Finite(x.column_norm(n)));
        }
        prop_assert_eq!(parse_matrix(&write_matrix(&x)).unwrap(), x);
    }

    #[test]
    fn abs_normalize_is_idempotent_and_nonnegative(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 17);
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=6);
        let entries: Vec<Vec<Rational>> = (0..rows)
            .map(|_| (0..cols).map(|_| ratio(rng.gen_range(-4..=4), 4)).collect())
            .collect();
        let x = VectorSequence::new(entries, true).unwrap();
        let y = abs_normalize(&x);
        prop_assert!(!y.has_negative());
        prop_assert_eq!(&abs_normalize(&y), &y);
        for n in 0..cols {
            prop_assert_eq!(y.column_norm(n), x.column_norm(n));
        }
    }

    #[test]
    fn files_round_trip_byte_for_byte(seed in any::<u64>(), n in 1usize..=8, count in 1usize..=6) {
        let phi = generated(seed, n);
        let text = write_submeasure(&phi, &limits()).unwrap();
        let back = parse_submeasure(&text).unwrap();
        prop_assert_eq!(&write_submeasure(&back, &limits()).unwrap(), &text);
        prop_assert_eq!(write_submeasure(&phi, &limits()).unwrap(), text);
        let mut rng = trial_rng(seed, 18);
        let inst = CoveringInstance::new(GroundSet::new(n).unwrap(), random_covering_family(&mut rng, n, count)).unwrap();
        let text = write_covering(&inst);
        prop_assert_eq!(write_covering(&parse_covering(&text).unwrap()), text);
    }
}

/// Color 1 iff every finite level of row `n` is strictly below every finite
/// level of row `m` on the measures both rows mention: written through the
/// cells, `k ∈ Q_n(i) ∩ Q_m(j)` forces `i < j`.
fn oracle_color(n: &PartitionRow, m: &PartitionRow) -> u8 {
    for (i, cell_n) in &n.cells {
        for (j, cell_m) in &m.cells {
            if j <= i && !cell_n.is_disjoint(cell_m) {
                return 0;
            }
        }
    }
    1
}

#[test]
fn sup_of_one_measure_has_degree_one() {
    let mut rng = trial_rng(3, 0);
    for _ in 0..20 {
        let mu = random_measure(&mut rng, 6, 5);
        let phi = sup_of_measures(vec![mu]).unwrap();
        let rep = pathology_degree(&phi, &Scope::AllSubsets, &limits(), &SweepOptions::default()).unwrap();
        assert_eq!(rep.degree, Some(RationalX::from_int(1)));
    }
}

#[test]
fn hat_vanishes_only_on_null_sets() {
    let phi = generated(11, 6);
    for mask in 0u64..64 {
        let a = PointSet::from_mask(6, mask);
        let h = hat(&phi, &a, &limits()).unwrap().value;
        assert_eq!(h.is_zero(), value(&phi, &a).is_zero(), "{a}");
        assert!(h <= value(&phi, &a));
    }
}
