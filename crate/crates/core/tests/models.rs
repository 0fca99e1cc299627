//! Bundled model generators.

mod common;

use common::assignments;
use proptest::prelude::*;
use valsym::models::{
    build_all_interval, build_coloring, build_pigeonhole, build_random_interchangeable,
    parse_dimacs, AllIntervalExtras,
};
use valsym::{solve, Error, SearchConfig, SymmetryMode};

#[test]
fn pigeonhole_is_unsatisfiable_by_brute_force() {
    for n in 2..=6 {
        let model = build_pigeonhole(n).unwrap();
        assert!(
            assignments(model.initial_domains())
                .iter()
                .all(|a| !model.is_solution(a)),
            "n = {n}"
        );
        let s = solve(&model, &SearchConfig::with_mode(SymmetryMode::None)).unwrap();
        assert!(s.solutions.is_empty());
    }
}

#[test]
fn pigeonhole_range() {
    assert!(matches!(build_pigeonhole(1), Err(Error::OutOfRange(_))));
    assert!(matches!(build_pigeonhole(21), Err(Error::OutOfRange(_))));
}

#[test]
fn dimacs_triangle() {
    let g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
    assert_eq!(g.num_vertices, 3);
    assert_eq!(g.edges, vec![(0, 1), (1, 2), (0, 2)]);
    let m = build_coloring(g.num_vertices, &g.edges, 3).unwrap();
    assert_eq!(
        solve(&m, &SearchConfig::default()).unwrap().solutions.len(),
        6
    );
}

#[test]
fn dimacs_errors_carry_line_numbers() {
    for (text, line) in [
        ("p edge 2 1\ne 1 3\n", 2),
        ("e 1 2\n", 1),
        ("p edge 2 1\nx\n", 2),
        ("p edge 2 x\n", 1),
    ] {
        match parse_dimacs(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
    assert!(parse_dimacs("p edge 2 2\ne 1 2\n").is_err());
}

#[test]
fn coloring_rejects_bad_edges() {
    assert!(build_coloring(2, &[(0, 2)], 2).is_err());
    assert!(build_coloring(2, &[(1, 1)], 2).is_err());
    assert!(build_coloring(2, &[(0, 1)], 0).is_err());
}

#[test]
fn all_interval_series_are_complete() {
    // generate-and-test over permutations of 0..n
    for n in 3..=6 {
        let model = build_all_interval(n, AllIntervalExtras::default()).unwrap();
        let count = solve(&model, &SearchConfig::default())
            .unwrap()
            .solutions
            .len();
        let naive = itertools::Itertools::permutations(0..n, n)
            .filter(|p| {
                let mut d: Vec<usize> = p.windows(2).map(|w| w[0].abs_diff(w[1])).collect();
                d.sort();
                d.dedup();
                d.len() == n - 1
            })
            .count();
        assert_eq!(count, naive, "n = {n}");
    }
}

fn permute(a: &[usize], perm: &[usize]) -> Vec<usize> {
    a.iter()
        .map(|&v| perm.get(v).copied().unwrap_or(v))
        .collect()
}

proptest! {
    #[test]
    fn pigeonhole_checks_are_value_invariant(
        a in proptest::collection::vec(0usize..6, 5),
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let model = build_pigeonhole(5).unwrap();
        for c in model.constraints() {
            prop_assert_eq!(c.is_satisfied(&a), c.is_satisfied(&permute(&a, &perm)));
        }
    }

    #[test]
    fn random_models_are_class_invariant(
        seed in 0u64..500,
        a in proptest::collection::vec(0usize..4, 5),
        perm in Just((0..3).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let model = build_random_interchangeable(5, 3, seed).unwrap();
        let class = &model.symmetry().interchangeable[0];
        let mut full: Vec<usize> = (0..4).collect();
        for (i, &v) in class.iter().enumerate() {
            full[v] = class[perm[i]];
        }
        let a: Vec<usize> = a.into_iter().map(|v| v.min(model.initial_domains()[0].max().unwrap())).collect();
        prop_assert_eq!(model.is_solution(&a), model.is_solution(&permute(&a, &full)));
    }
}
