#![allow(dead_code)]

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::Rng;
use valsym::{DomainSet, VarValueSymmetry};

/// Every assignment of the cartesian product of `domains`.
pub fn assignments(domains: &[DomainSet]) -> Vec<Vec<usize>> {
    if domains.is_empty() {
        return vec![vec![]];
    }
    domains
        .iter()
        .map(|d| d.iter().collect::<Vec<_>>())
        .multi_cartesian_product()
        .collect()
}

/// Brute-force GAC: for each variable, the values occurring in some accepted
/// assignment. `None` when nothing is accepted.
pub fn gac(domains: &[DomainSet], accept: impl Fn(&[usize]) -> bool) -> Option<Vec<DomainSet>> {
    let mut support = vec![DomainSet::empty(); domains.len()];
    let mut any = false;
    for a in assignments(domains) {
        if accept(&a) {
            any = true;
            for (s, &v) in support.iter_mut().zip(&a) {
                s.insert(v);
            }
        }
    }
    any.then_some(support)
}

pub fn random_domain(rng: &mut StdRng, k: usize) -> DomainSet {
    loop {
        let d: DomainSet = (0..k).filter(|_| rng.random_bool(0.6)).collect();
        if !d.is_empty() {
            return d;
        }
    }
}

pub fn random_domains(rng: &mut StdRng, n: usize, k: usize) -> Vec<DomainSet> {
    (0..n).map(|_| random_domain(rng, k)).collect()
}

/// `a ⊆ b` pointwise.
pub fn within(a: &[DomainSet], b: &[DomainSet]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.is_subset(y))
}

/// Sorted canonical forms of every solution, computed by brute force.
pub fn orbit_representatives(
    solutions: &[Vec<usize>],
    group: &[VarValueSymmetry],
) -> Vec<Vec<usize>> {
    valsym::orbit_partition(solutions, group)
        .into_iter()
        .map(|o| o.canonical)
        .collect()
}

/// Scope values of every solution of `model` with no symmetry breaking.
pub fn scope_solutions(model: &valsym::Model, mode: valsym::SymmetryMode) -> Vec<Vec<usize>> {
    let sol = valsym::solve(model, &valsym::SearchConfig::with_mode(mode)).expect("solve");
    sol.solutions
        .iter()
        .map(|a| a.project(&model.symmetry().scope))
        .collect()
}

/// Checks that `mode` returns exactly the canonical member of every orbit of
/// the full solution set.
pub fn check_one_per_orbit(
    model: &valsym::Model,
    mode: valsym::SymmetryMode,
) -> Result<(), String> {
    let group = model.symmetry().group(10_080).map_err(|e| e.to_string())?;
    let all = scope_solutions(model, valsym::SymmetryMode::None);
    let mut expected = orbit_representatives(&all, &group);
    expected.sort();
    let mut got = scope_solutions(model, mode);
    got.sort();
    if got == expected {
        Ok(())
    } else {
        Err(format!(
            "{} {mode}: {} solutions, {} orbits; got {:?}, expected {:?}",
            model.name(),
            got.len(),
            expected.len(),
            got,
            expected
        ))
    }
}

/// Frozen instance: one lex-leader per symmetry, each filtered exactly, keeps
/// value 3 for the second variable; the exact filter removes it.
pub struct LexFixture {
    pub domains: Vec<DomainSet>,
    pub symmetries: Vec<valsym::ValuePermutation>,
    pub decomposed: Vec<DomainSet>,
    pub exact: Vec<DomainSet>,
}

fn set(vals: &[usize]) -> DomainSet {
    vals.iter().copied().collect()
}

fn perms(images: &[&[usize]]) -> Vec<valsym::ValuePermutation> {
    images
        .iter()
        .map(|i| valsym::ValuePermutation::new(i.to_vec()).unwrap())
        .collect()
}

pub fn decomposition_fixture() -> LexFixture {
    LexFixture {
        domains: vec![set(&[0, 1, 2, 3]), set(&[0, 2, 3])],
        symmetries: perms(&[&[1, 0, 3, 2], &[3, 1, 2, 0], &[0, 2, 3, 1]]),
        decomposed: vec![set(&[0, 2]), set(&[0, 2, 3])],
        exact: vec![set(&[0, 2]), set(&[0, 2])],
    }
}

/// Frozen instance with two value symmetries, `(0 2)` and `(1 2)`:
/// channeling plus ordering keeps value 2 for the second variable.
pub fn channel_fixture() -> LexFixture {
    LexFixture {
        domains: vec![set(&[0, 1, 2]), set(&[0, 1, 2])],
        symmetries: perms(&[&[2, 1, 0], &[0, 2, 1]]),
        decomposed: vec![set(&[0, 1]), set(&[0, 1, 2])],
        exact: vec![set(&[0, 1]), set(&[0, 1])],
    }
}
