//! Named verification suites. Each suite is a fixed list of assertions with
//! an expected value and its basis: `published` (a value stated in the
//! literature), `trivial`, or `derived` (computed by an independent method).

use clap::{Args, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};
use submeasure_core::axioms::check_axioms;
use submeasure_core::banach::{phi_of_sequence, sequence_of_phi};
use submeasure_core::colorings::{c0tall_coloring, dyadic_round, level_partition, maximal_homogeneous, verify_color1_bound};
use submeasure_core::pathology::{
    covering_stats, hat, kelley_witness, pathology_degree, uniform_bound_check, CoveringInstance, Scope, SweepOptions,
};
use submeasure_core::pointset::combinations;
use submeasure_core::rational::{format_decimal, format_rational, int, parse_rational, ratio};
use submeasure_core::reductions::{hat_pushforward_check, pathology_monotonicity_check, verify_solecki_reduction, PointMap};
use submeasure_core::rng::{
    random_covering_family, random_measure, random_probability, random_submeasure, random_unit_matrix, trial_rng,
};
use submeasure_core::submeasure::sup_of_measures;
use submeasure_core::zoo::{gen_ed, gen_edfin, gen_finxempty, gen_mazur, gen_minimal_pathological, gen_property_a, gen_solecki, Variant};
use submeasure_core::{GroundSet, Limits, Measure, PointSet, Rational, RationalX, Submeasure};

use crate::output::{compact, limits, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    All,
    Minimal,
    MazurDegree,
    CoverStats,
    SoleckiChi,
    EdfinDelta,
    Kelley,
    UniformBound,
    Color1Bound,
    DyadicRound,
    RkSolecki,
    RkDegree,
    BanachRoundtrip,
    PropertyA,
    Axioms,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
pub struct VerifyArgs {
    target: Target,
    #[arg(long)]
    level: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// With `all`: only the acceptance set.
    #[arg(long)]
    quick: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Add a decimal rendering of rational results (display only).
    #[arg(long)]
    decimal: Option<usize>,
    #[arg(long)]
    max_ground: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
pub enum Basis {
    Published,
    Trivial,
    Derived,
}

impl Basis {
    fn as_str(self) -> &'static str {
        match self {
            Basis::Published => "published",
            Basis::Trivial => "trivial",
            Basis::Derived => "derived",
        }
    }
}

pub struct Row {
    suite: String,
    assertion: String,
    expected: String,
    basis: Basis,
    computed: String,
    pass: bool,
}

struct Suite<'a> {
    name: String,
    rows: &'a mut Vec<Row>,
}

impl Suite<'_> {
    /// Equality row.
    fn eq(&mut self, assertion: impl Into<String>, expected: impl ToString, basis: Basis, computed: impl ToString) {
        let (e, c) = (expected.to_string(), computed.to_string());
        self.push(assertion, e.clone(), basis, c.clone(), e == c);
    }

    fn push(&mut self, assertion: impl Into<String>, expected: String, basis: Basis, computed: String, pass: bool) {
        self.rows.push(Row {
            suite: self.name.clone(),
            assertion: assertion.into(),
            expected,
            basis,
            computed,
            pass,
        });
    }

    /// `passed/total` row for a property checked on `total` instances.
    fn count(&mut self, assertion: impl Into<String>, basis: Basis, passed: usize, total: usize) {
        self.push(assertion, format!("{total}/{total}"), basis, format!("{passed}/{total}"), passed == total);
    }
}

fn r(x: &Rational) -> String {
    format_rational(x)
}

fn rx(x: &RationalX) -> String {
    x.to_string()
}

fn opt(x: &Option<RationalX>) -> String {
    x.as_ref().map_or("undefined".into(), rx)
}

fn minimal(s: &mut Suite, lim: &Limits) -> CliResult<()> {
    let phi = gen_minimal_pathological();
    let full = PointSet::full(3);
    s.eq("hat({0,1,2})", "3/2", Basis::Derived, r(&hat(&phi, &full, lim)?.value));
    let rep = pathology_degree(&phi, &Scope::AllSubsets, lim, &SweepOptions::default())?;
    s.eq("P(phi)", "4/3", Basis::Derived, opt(&rep.degree));
    Ok(())
}

fn mazur_degree(s: &mut Suite, levels: &[usize], lim: &Limits) -> CliResult<()> {
    for &n in levels {
        let m = gen_mazur(n)?;
        let expected = r(&ratio(n as i64 + 1, 2));
        let full = m.inst.ground.full();
        if m.psi.size() <= lim.max_ground {
            let rep = pathology_degree(&m.psi, &Scope::AllSubsets, lim, &SweepOptions::default())?;
            s.eq(format!("P(psi_{n}), all {} subsets", rep.checked), expected.clone(), Basis::Published, opt(&rep.degree));
        }
        s.eq(format!("hat(K_{n})"), "2/1", Basis::Derived, r(&hat(&m.psi, &full, lim)?.value));
        let rep = pathology_degree(&m.psi, &Scope::Family(vec![full]), lim, &SweepOptions::default())?;
        s.eq(format!("psi_{n}(K_{n}) / hat(K_{n})"), expected, Basis::Published, opt(&rep.degree));
    }
    Ok(())
}

fn cover_stats(s: &mut Suite, levels: &[usize]) -> CliResult<()> {
    for &n in levels {
        if (1..=4).contains(&n) {
            s.eq(format!("delta(K_{n}, hats)"), "1/2", Basis::Published, r(&covering_stats(&gen_mazur(n)?.inst)?.delta));
        }
        if (2..=4).contains(&n) {
            s.eq(format!("delta(Omega_{n})"), "1/2", Basis::Published, r(&covering_stats(&gen_solecki(n)?.inst)?.delta));
        }
    }
    Ok(())
}

fn solecki_chi(s: &mut Suite, levels: &[usize]) -> CliResult<()> {
    for &n in levels {
        let o = gen_solecki(n)?;
        let full = o.inst.ground.full();
        s.eq(format!("chi(Omega_{n})"), (1i64 << (n - 1)) + 1, Basis::Published, o.chi.eval(&full)?.as_integer().unwrap_or(-1));
        if n <= 3 {
            let half = 1usize << (n - 1);
            let (mut total, mut fail) = (0, 0);
            for pick in combinations(o.inst.family.len(), half) {
                let u = pick.iter().fold(PointSet::empty(full.capacity()), |u, &i| u.union(&o.inst.family[i]));
                total += 1;
                fail += usize::from(u != full);
            }
            s.count(format!("{half}-subfamilies of hats miss a point of Omega_{n}"), Basis::Published, fail, total);
        }
    }
    Ok(())
}

fn edfin_delta(s: &mut Suite, levels: &[usize], lim: &Limits) -> CliResult<()> {
    for &n in levels {
        let e = gen_edfin(n)?;
        let st = covering_stats(&e.chains)?;
        let fact: usize = (1..=n + 1).product();
        s.eq(format!("|S_{n}|"), fact, Basis::Published, st.family_size);
        s.eq(format!("delta_{n}"), r(&ratio(1, n as i64 + 1)), Basis::Published, r(&st.delta));
        if e.psi.size() <= 10 {
            let rep = pathology_degree(&e.psi, &Scope::AllSubsets, lim, &SweepOptions::default())?;
            s.eq(format!("P(psi) on the {}-point ground", e.psi.size()), "1/1", Basis::Published, opt(&rep.degree));
        }
    }
    Ok(())
}

fn kelley(s: &mut Suite, seed: u64) -> CliResult<()> {
    let m = gen_mazur(2)?;
    let n = m.inst.ground.size();
    let mut ok = 0;
    for t in 0..1000 {
        let pi = random_probability(&mut trial_rng(seed, t), n, 12);
        let w = kelley_witness(&m.inst, &pi)?;
        ok += usize::from(w.mass >= w.delta);
    }
    s.count("some hat of K_2 has mass >= delta = 1/2 (random probabilities)", Basis::Derived, ok, 1000);
    Ok(())
}

fn uniform_bound(s: &mut Suite, seed: u64, lim: &Limits) -> CliResult<()> {
    let mut ok = 0;
    for t in 0..200 {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(3..=8);
        let count = rng.gen_range(2..=6);
        let fam = random_covering_family(&mut rng, n, count);
        let phi = random_submeasure(&mut rng, n);
        let inst = CoveringInstance::new(GroundSet::new(n)?, fam.clone())?;
        let mut m = Rational::from_integer(0.into());
        for f in &fam {
            if let RationalX::Finite(v) = phi.eval(f)? {
                m = m.max(v);
            }
        }
        ok += usize::from(uniform_bound_check(&phi, &inst, &m, lim)?.holds);
    }
    s.count("max dominated mass <= M/delta", Basis::Derived, ok, 200);
    Ok(())
}

fn color1(s: &mut Suite, seed: u64) -> CliResult<()> {
    let mut ok = 0;
    let mut worst = Rational::from_integer(0.into());
    for t in 0..1000 {
        let mat = random_unit_matrix(&mut trial_rng(seed, t), 5, 14);
        let ps = level_partition(&mat)?;
        let c = c0tall_coloring(&ps);
        let mut good = true;
        for h in maximal_homogeneous(&c, 1, &PointSet::full(mat.cols()))? {
            let cert = verify_color1_bound(&ps, &h)?;
            good &= cert.holds;
            worst = worst.max(cert.max_mass);
        }
        ok += usize::from(good);
    }
    s.count("every 1-homogeneous set has row-mass <= 2", Basis::Derived, ok, 1000);
    s.push("largest row-mass seen", "<= 2/1".into(), Basis::Derived, r(&worst), worst <= int(2));
    Ok(())
}

fn dyadic(s: &mut Suite, seed: u64) -> CliResult<()> {
    let mut ok = 0;
    for t in 0..1000 {
        let mat = random_unit_matrix(&mut trial_rng(seed, t), 6, 12);
        let lam = dyadic_round(&mat)?;
        let good = (0..mat.rows()).all(|k| {
            (0..mat.cols()).all(|n| {
                let (mu, l) = (mat.entry(k, n), lam.entry(k, n));
                l <= mu && mu - l <= ratio(1, 1i64 << n)
            })
        });
        ok += usize::from(good);
    }
    s.count("lambda <= mu and column error <= 1/2^n", Basis::Derived, ok, 1000);
    Ok(())
}

fn rk_solecki(s: &mut Suite, levels: &[usize]) -> CliResult<()> {
    for &n in levels {
        let sizes: Vec<usize> = (1..=n + 1).collect();
        let rep = verify_solecki_reduction(n, &sizes)?;
        let fwd = rep.forward.iter().filter(|f| f.equals_hat && f.cover_value == RationalX::from_int(1)).count();
        s.count(format!("level {n}: forward fibers are hats with cover value 1"), Basis::Derived, fwd, rep.forward.len());
        let back = rep.backward.iter().filter(|b| b.passed).count();
        s.count(format!("level {n}: backward images within N, N in 1..={}", n + 1), Basis::Derived, back, rep.backward.len());
        s.eq(format!("level {n}: removed measure 1/2 for every row"), true, Basis::Trivial, rep.well_defined);
        let expected = if n == 1 { 3 } else { 5 };
        s.eq(format!("level {n}: hat-cover number of X"), expected, Basis::Derived, rep.row_cover);
    }
    Ok(())
}

fn rk_degree(s: &mut Suite, seed: u64, lim: &Limits) -> CliResult<()> {
    let (mut deg, mut hats) = (0, 0);
    for t in 0..100 {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(1..=n);
        let phi = random_submeasure(&mut rng, n);
        let f = PointMap::new(m, (0..n).map(|_| rng.gen_range(0..m)).collect())?;
        deg += usize::from(pathology_monotonicity_check(&phi, &f, lim)?.holds == Some(true));
        hats += usize::from(hat_pushforward_check(&phi, &f, lim)?.violations.is_empty());
    }
    s.count("P(phi_f) <= P(phi)", Basis::Published, deg, 100);
    s.count("hat(phi_f)(A) >= hat(phi)(f^-1 A) on every A", Basis::Published, hats, 100);
    Ok(())
}

fn banach(s: &mut Suite, seed: u64, lim: &Limits) -> CliResult<()> {
    let (mut trips, mut nonpath) = (0, 0);
    for t in 0..100 {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(1..=10);
        let k = rng.gen_range(1..=4);
        let measures: Vec<Measure> = (0..k).map(|_| random_measure(&mut rng, n, 6)).collect();
        let phi = sup_of_measures(measures)?;
        let back = phi_of_sequence(&sequence_of_phi(&phi)?)?;
        let same = (0..1u64 << n).all(|mask| {
            let a = PointSet::from_mask(n, mask);
            phi.eval(&a).ok() == back.eval(&a).ok()
        });
        trips += usize::from(same);
        let rep = pathology_degree(&back, &Scope::AllSubsets, lim, &SweepOptions::default())?;
        nonpath += usize::from(rep.degree == Some(RationalX::from_int(1)));
    }
    s.count("exact round trips on every subset", Basis::Derived, trips, 100);
    s.count("P(phi_x) = 1", Basis::Trivial, nonpath, 100);
    Ok(())
}

fn property_a(s: &mut Suite) -> CliResult<()> {
    let pa = gen_property_a(Variant::A, 3, 2)?;
    let singles = pa.singleton_values();
    let mut ok_single = 0;
    let mut ok_block = 0;
    for b in &pa.family.blocks {
        ok_single += usize::from(b.points.iter().all(|p| singles[p] == RationalX::Finite(ratio(1, 1 << b.n))));
        ok_block += usize::from(pa.phi.eval(&b.points)? == RationalX::from_int(b.n as i64 + 1));
    }
    let nb = pa.family.blocks.len();
    s.count("phi({x}) = 1/2^n on B_n", Basis::Published, ok_single, nb);
    s.count("phi(B_n^k) = n+1", Basis::Published, ok_block, nb);
    let cert = pa.certify_bound(&ratio(1, 4))?;
    s.eq("M_1/4 inside B_0, B_1, B_2", true, Basis::Published, cert.contained && cert.n_bound == 3);
    Ok(())
}

fn axioms(s: &mut Suite, lim: &Limits) -> CliResult<()> {
    let mut cases: Vec<(String, Submeasure)> = vec![("minimal".into(), gen_minimal_pathological())];
    for n in 1..=3 {
        cases.push((format!("mazur {n}"), gen_mazur(n)?.psi));
    }
    for n in 2..=4 {
        cases.push((format!("solecki {n}"), gen_solecki(n)?.chi));
    }
    for n in 1..=5 {
        cases.push((format!("edfin {n}"), gen_edfin(n)?.psi));
    }
    let ed = gen_ed(&[2, 3, 4])?;
    cases.push(("ed chain".into(), ed.chain));
    cases.push(("ed sup".into(), ed.sup));
    cases.push(("propertyA a".into(), gen_property_a(Variant::A, 2, 2)?.phi));
    cases.push(("propertyA b".into(), gen_property_a(Variant::B, 2, 2)?.phi));
    cases.push(("finxempty".into(), phi_of_sequence(&gen_finxempty(&[2, 3, 4])?.x)?));
    for (name, phi) in cases {
        let rep = check_axioms(&phi, lim, 0)?;
        let mode = match rep.mode {
            submeasure_core::axioms::CheckMode::Exhaustive => "exhaustive".to_string(),
            submeasure_core::axioms::CheckMode::Sampled { trials, .. } => format!("{trials} random pairs"),
        };
        s.eq(format!("{name}: axioms ({mode})"), 0, Basis::Trivial, rep.violation_count);
    }
    Ok(())
}

fn levels(level: Option<usize>, default: &[usize]) -> Vec<usize> {
    level.map_or_else(|| default.to_vec(), |l| vec![l])
}

fn run_target(t: Target, args: &VerifyArgs, lim: &Limits, rows: &mut Vec<Row>, extended: bool) -> CliResult<()> {
    let name = t.to_possible_value().expect("named").get_name().to_string();
    let mut s = Suite { name, rows };
    let seed = args.seed;
    match t {
        Target::All => unreachable!("expanded by the caller"),
        Target::Minimal => minimal(&mut s, lim),
        Target::MazurDegree => mazur_degree(&mut s, &levels(args.level, if extended { &[1, 2, 3, 4] } else { &[2, 3, 4] }), lim),
        Target::CoverStats => cover_stats(&mut s, &levels(args.level, &[2, 3, 4])),
        Target::SoleckiChi => solecki_chi(&mut s, &levels(args.level, &[2, 3, 4])),
        Target::EdfinDelta => edfin_delta(&mut s, &levels(args.level, if extended { &[2, 3, 4, 5, 6] } else { &[2, 3, 4, 5] }), lim),
        Target::Kelley => kelley(&mut s, seed),
        Target::UniformBound => uniform_bound(&mut s, seed, lim),
        Target::Color1Bound => color1(&mut s, seed),
        Target::DyadicRound => dyadic(&mut s, seed),
        Target::RkSolecki => rk_solecki(&mut s, &levels(args.level, if extended { &[1, 2] } else { &[1] })),
        Target::RkDegree => rk_degree(&mut s, seed, lim),
        Target::BanachRoundtrip => banach(&mut s, seed, lim),
        Target::PropertyA => property_a(&mut s),
        Target::Axioms => axioms(&mut s, lim),
    }
}

fn render(rows: &[Row], format: Format, decimal: Option<usize>) -> String {
    let dec = |c: &str| -> Option<String> {
        let d = decimal?;
        if !c.contains('/') || c.split('/').count() != 2 {
            return None;
        }
        parse_rational(c).ok().map(|x| format_decimal(&x, d))
    };
    match format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let mut v = json!({
                        "suite": &row.suite,
                        "assertion": row.assertion,
                        "expected": row.expected,
                        "basis": row.basis.as_str(),
                        "computed": row.computed,
                    });
                    if decimal.is_some() {
                        v["computed_decimal"] = dec(&row.computed).map_or(Value::Null, Value::String);
                    }
                    v["verdict"] = json!(if row.pass { "pass" } else { "fail" });
                    v
                })
                .collect();
            let passed = rows.iter().all(|r| r.pass);
            compact(&json!({ "rows": items, "passed": passed }))
        }
        Format::Csv => {
            let mut out = String::from("suite,assertion,expected,basis,computed");
            if decimal.is_some() {
                out.push_str(",computed_decimal");
            }
            out.push_str(",verdict\n");
            let q = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
            for row in rows {
                out.push_str(&format!("{},{},{},{},{}", row.suite, q(&row.assertion), q(&row.expected), row.basis.as_str(), q(&row.computed)));
                if decimal.is_some() {
                    out.push_str(&format!(",{}", dec(&row.computed).unwrap_or_default()));
                }
                out.push_str(if row.pass { ",pass\n" } else { ",fail\n" });
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let width = rows.iter().map(|r| r.assertion.len()).max().unwrap_or(0);
            for row in rows {
                let mut computed = row.computed.clone();
                if let Some(d) = dec(&row.computed) {
                    computed.push_str(&format!(" (~{d})"));
                }
                out.push_str(&format!(
                    "{:<4} {:<16} {:<width$}  expected {} [{}]  computed {}\n",
                    if row.pass { "pass" } else { "FAIL" },
                    row.suite,
                    row.assertion,
                    row.expected,
                    row.basis.as_str(),
                    computed,
                ));
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            out.push_str(&format!("{} assertions, {failed} failed\n", rows.len()));
            out
        }
    }
}

/// Returns the rendered table and whether every assertion passed.
pub fn run(args: &VerifyArgs) -> CliResult<(String, bool)> {
    let lim = limits(args.max_ground)?;
    let targets: Vec<Target> = if args.target == Target::All {
        Target::value_variants().iter().copied().filter(|&t| t != Target::All).collect()
    } else {
        vec![args.target]
    };
    let extended = args.target == Target::All && !args.quick;
    let mut rows = Vec::new();
    for t in targets {
        run_target(t, args, &lim, &mut rows, extended)?;
    }
    let passed = rows.iter().all(|r| r.pass);
    Ok((render(&rows, args.format, args.decimal), passed))
}
