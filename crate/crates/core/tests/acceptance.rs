//! Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
//! wall-clock bound.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    assignments, channel_fixture, check_one_per_orbit, decomposition_fixture, gac, random_domains,
};
use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use valsym::models::{
    build_all_interval, build_pigeonhole, build_random_interchangeable, AllIntervalExtras,
};
use valsym::propagators::precedence_holds;
use valsym::symmetry::satisfies_lex_leader;
use valsym::witness::{
    as_group, channel_fixpoint, channel_oracle, gac_decomposition_fixpoint, strictly_weaker,
};
use valsym::{
    apply_symmetry, exact_valsym_prune, full_symmetric_group, orbit_partition, solve, Constraint,
    DomainSet, Engine, ModelBuilder, SearchConfig, Store, SymmetryMode, ValuePermutation, VarId,
    VarValueSymmetry,
};

type Check = Result<String, String>;

/// Name, wall-clock bound in seconds, check.
type Criterion = (&'static str, u64, fn() -> Check);

const BREAKING: [SymmetryMode; 4] = [
    SymmetryMode::StaticLex,
    SymmetryMode::Precedence,
    SymmetryMode::Channel,
    SymmetryMode::GeTree,
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn with_diffs(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.extend(xs.windows(2).map(|w| w[0].abs_diff(w[1])));
    v
}

fn reference_series() -> Check {
    let base = [3, 7, 4, 6, 5, 0, 10, 1, 9, 2, 8];
    let reversed = [8, 2, 9, 1, 10, 0, 5, 6, 4, 7, 3];
    let inverted = [7, 3, 6, 4, 5, 10, 0, 9, 1, 8, 2];
    let composed = [2, 8, 1, 9, 0, 10, 5, 4, 6, 3, 7];
    let plain = build_all_interval(11, AllIntervalExtras::default()).map_err(|e| e.to_string())?;
    let rev = VarValueSymmetry::reversal(11);
    let inv = VarValueSymmetry::value_only(11, ValuePermutation::inversion(10));
    let images = [
        apply_symmetry(&rev, &base).unwrap(),
        apply_symmetry(&inv, &base).unwrap(),
        apply_symmetry(&rev.then(&inv).unwrap(), &base).unwrap(),
    ];
    ensure(
        images[0] == reversed && images[1] == inverted && images[2] == composed,
        || format!("images {images:?}"),
    )?;
    for v in [base, reversed, inverted, composed] {
        ensure(plain.is_solution(&with_diffs(&v)), || {
            format!("{v:?} is not a solution")
        })?;
    }
    let broken = build_all_interval(11, AllIntervalExtras::ALL).map_err(|e| e.to_string())?;
    let survivors: Vec<[usize; 11]> = [base, reversed, inverted, composed]
        .into_iter()
        .filter(|v| broken.is_solution(&with_diffs(v)))
        .collect();
    ensure(survivors == vec![composed], || {
        format!("survivors {survivors:?}")
    })?;
    Ok("4 vectors are solutions; only (2,8,…,7) survives the three breaking constraints".into())
}

fn lex_simplification() -> Check {
    let mut b = ModelBuilder::new();
    let xs = b.add_vars(11, DomainSet::range(0, 10));
    b.post(Constraint::AllDifferent(xs.clone()));
    b.post(Constraint::LexLeader {
        scope: xs.clone(),
        symmetry: VarValueSymmetry::value_only(11, ValuePermutation::inversion(10)),
    });
    let model = b.build().map_err(|e| e.to_string())?;
    let mut engine = Engine::new(model.constraints().to_vec(), 11);
    let mut store = Store::new(model.initial_domains().to_vec());
    ensure(!engine.propagate_all(&mut store).is_failure(), || {
        "root failure".into()
    })?;
    ensure(store.dom(xs[0]) == &DomainSet::range(0, 5), || {
        format!("X1 = {:?}", store.dom(xs[0]))
    })?;
    store.fix(xs[0], 5).map_err(|e| e.to_string())?;
    let out = engine.propagate_from(&mut store, &[xs[0]]);
    ensure(!out.is_failure(), || "failure after X1 = 5".into())?;
    ensure(store.dom(xs[1]) == &DomainSet::range(0, 4), || {
        format!("X2 = {:?}", store.dom(xs[1]))
    })?;
    Ok("root X1 ∈ {0..5}; after X1 = 5, X2 ∈ {0..4}".into())
}

fn one_per_orbit() -> Check {
    let mut checked = 0;
    for n in 5..=8 {
        let model =
            build_all_interval(n, AllIntervalExtras::default()).map_err(|e| e.to_string())?;
        for mode in BREAKING {
            check_one_per_orbit(&model, mode)?;
            checked += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(2024);
    let models = 60;
    for _ in 0..models {
        let n = rng.random_range(2..=6);
        let m = rng.random_range(2..=4);
        let model = build_random_interchangeable(n, m, rng.random()).map_err(|e| e.to_string())?;
        for mode in BREAKING {
            check_one_per_orbit(&model, mode)?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} (model, mode) pairs incl. {models} random models, 0 violations"
    ))
}

fn precedence_equals_valsym() -> Check {
    let mut total = 0u64;
    for m in 1..=4 {
        let values: Vec<usize> = (0..m).collect();
        let group = full_symmetric_group(&values).map_err(|e| e.to_string())?;
        for n in 1..=5 {
            let syms: Vec<VarValueSymmetry> = group
                .iter()
                .map(|p| VarValueSymmetry::value_only(n, p.clone()))
                .collect();
            for a in assignments(&vec![DomainSet::range(0, m - 1); n]) {
                total += 1;
                let lex = syms.iter().all(|s| satisfies_lex_leader(s, &a));
                ensure(lex == precedence_holds(&a, &values), || {
                    format!("discrepancy at {a:?} (m = {m})")
                })?;
            }
        }
    }
    Ok(format!("{total} assignments, 0 discrepancies"))
}

fn precedence_gac() -> Check {
    let mut rng = StdRng::seed_from_u64(77);
    let trials = 200;
    for _ in 0..trials {
        let n = rng.random_range(1..=6);
        let m = rng.random_range(1..=4);
        let k = m + usize::from(rng.random_bool(0.3));
        let doms = random_domains(&mut rng, n, k);
        let values: Vec<usize> = (0..m).collect();
        let scope: Vec<VarId> = (0..n).map(VarId).collect();
        let exact = gac(&doms, |a| precedence_holds(a, &values));
        let mut store = Store::new(doms.clone());
        let got = valsym::propagators::propagate_precedence(&mut store, &scope, &values)
            .ok()
            .map(|_| store.into_domains());
        ensure(got == exact, || format!("{doms:?}: {got:?} vs {exact:?}"))?;
    }
    Ok(format!("{trials} random instances, 0 discrepancies"))
}

fn witnesses() -> Check {
    let f = decomposition_fixture();
    let n = f.domains.len();
    let decomposed =
        gac_decomposition_fixpoint(&f.domains, &f.symmetries, 1000).map_err(|e| e.to_string())?;
    let exact = exact_valsym_prune(&f.domains, &as_group(n, &f.symmetries), 1000)
        .map_err(|e| e.to_string())?;
    ensure(
        decomposed.as_deref() == Some(&f.decomposed[..]) && exact.as_deref() == Some(&f.exact[..]),
        || format!("decomposition fixture drifted: {decomposed:?} / {exact:?}"),
    )?;
    ensure(strictly_weaker(&decomposed, &exact), || {
        "decomposition not weaker".into()
    })?;

    let f = channel_fixture();
    let n = f.domains.len();
    let channel = channel_fixpoint(&f.domains, 3, &f.symmetries);
    let exact = exact_valsym_prune(&f.domains, &as_group(n, &f.symmetries), 1000)
        .map_err(|e| e.to_string())?;
    let own = channel_oracle(&f.domains, 3, &f.symmetries, 1000).map_err(|e| e.to_string())?;
    ensure(
        channel.as_deref() == Some(&f.decomposed[..]) && exact.as_deref() == Some(&f.exact[..]),
        || format!("channel fixture drifted: {channel:?} / {exact:?}"),
    )?;
    ensure(
        strictly_weaker(&channel, &exact) && strictly_weaker(&channel, &own),
        || "channel not weaker".into(),
    )?;
    Ok("(a) decomposition keeps X2 = 3; (b) channel with 2 symmetries keeps X2 = 2".into())
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    num / den
}

fn pigeonhole_separation() -> Check {
    let mut getree = Vec::new();
    let mut precedence = Vec::new();
    for n in 4..=12 {
        let model = build_pigeonhole(n).map_err(|e| e.to_string())?;
        let g = solve(&model, &SearchConfig::with_mode(SymmetryMode::GeTree))
            .map_err(|e| e.to_string())?;
        let p = solve(&model, &SearchConfig::with_mode(SymmetryMode::Precedence))
            .map_err(|e| e.to_string())?;
        ensure(g.solutions.is_empty() && p.solutions.is_empty(), || {
            format!("n = {n} has solutions")
        })?;
        getree.push((n, g.stats.branches));
        precedence.push((n as f64, p.stats.nodes as f64));
    }
    for w in getree.windows(2).filter(|w| w[0].0 >= 8) {
        let ratio = w[1].1 as f64 / w[0].1 as f64;
        ensure(ratio >= 1.5, || {
            format!("getree ratio {ratio:.2} at n = {}", w[0].0)
        })?;
    }
    let slope = log_log_slope(&precedence);
    ensure(slope <= 2.3, || {
        format!("precedence node exponent {slope:.2}")
    })?;
    Ok(format!(
        "getree branches {:?}; precedence nodes {:?} (exponent {slope:.2})",
        getree.iter().map(|p| p.1).collect::<Vec<_>>(),
        precedence.iter().map(|p| p.1 as u64).collect::<Vec<_>>()
    ))
}

/// Generate-and-test: permutations of `0..n` whose adjacent differences are distinct.
fn naive_all_interval(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .permutations(n)
        .filter(|p| p.windows(2).map(|w| w[0].abs_diff(w[1])).all_unique())
        .collect()
}

fn solution_counts() -> Check {
    let mut counts = Vec::new();
    for n in 3..=8 {
        let naive = naive_all_interval(n);
        let model =
            build_all_interval(n, AllIntervalExtras::default()).map_err(|e| e.to_string())?;
        let none = solve(&model, &SearchConfig::with_mode(SymmetryMode::None))
            .map_err(|e| e.to_string())?;
        ensure(none.solutions.len() == naive.len(), || {
            format!(
                "n = {n}: solver {} vs naive {}",
                none.solutions.len(),
                naive.len()
            )
        })?;
        let group = model.symmetry().group(10_080).map_err(|e| e.to_string())?;
        let orbits = orbit_partition(&naive, &group).len();
        for mode in BREAKING {
            let s = solve(&model, &SearchConfig::with_mode(mode)).map_err(|e| e.to_string())?;
            ensure(s.solutions.len() == orbits, || {
                format!(
                    "n = {n} {mode}: {} solutions vs {orbits} orbits",
                    s.solutions.len()
                )
            })?;
        }
        counts.push((naive.len(), orbits));
    }
    Ok(format!("(solutions, orbits) for n = 3..8: {counts:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("reference-series regression", 1, reference_series),
        ("lex-leader simplification", 1, lex_simplification),
        ("one solution per orbit", 60, one_per_orbit),
        (
            "precedence equals value-symmetry lex-leaders",
            30,
            precedence_equals_valsym,
        ),
        ("precedence propagator is GAC", 30, precedence_gac),
        ("propagation-hierarchy witnesses", 5, witnesses),
        (
            "pigeonhole static/dynamic separation",
            120,
            pigeonhole_separation,
        ),
        ("solution-count sanity", 120, solution_counts),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let bound = Duration::from_secs(limit);
        let (verdict, detail) = match result {
            Ok(d) if elapsed < bound => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; exceeded {limit} s")),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {} [{name}]: {verdict} ({:.3} s < {limit} s) — {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
