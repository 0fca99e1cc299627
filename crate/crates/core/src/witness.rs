//! Seeded random searches for small instances on which a decomposed
//! symmetry-breaking encoding prunes strictly less than the exact
//! value-symmetry filter.

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::domain::{DomainSet, VarId};
use crate::engine::{Engine, PropagationOutcome, Store};
use crate::error::Result;
use crate::propagators::{first_occurrence_sentinel, Constraint, FirstOccurrenceVars};
use crate::symmetry::{exact_valsym_prune, ValuePermutation, VarValueSymmetry};

/// Instance where the propagator fixpoint keeps a value the exact filter removes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub domains: Vec<DomainSet>,
    /// Value symmetries (identity excluded).
    pub symmetries: Vec<ValuePermutation>,
    /// Fixpoint of the decomposition, `None` on failure.
    pub decomposed: Option<Vec<DomainSet>>,
    /// Exact filter result, `None` on failure.
    pub exact: Option<Vec<DomainSet>>,
}

/// Whether `weak` keeps strictly more than `strong` (a failed result keeps nothing).
pub fn strictly_weaker(weak: &Option<Vec<DomainSet>>, strong: &Option<Vec<DomainSet>>) -> bool {
    match (weak, strong) {
        (None, _) => false,
        (Some(_), None) => true,
        (Some(w), Some(s)) => {
            w.iter().zip(s).all(|(w, s)| s.is_subset(w)) && w.iter().zip(s).any(|(w, s)| w != s)
        }
    }
}

/// Fixpoint of one lex-leader constraint per value symmetry.
pub fn decomposed_lex_fixpoint(
    domains: &[DomainSet],
    symmetries: &[ValuePermutation],
) -> Option<Vec<DomainSet>> {
    let n = domains.len();
    let scope: Vec<VarId> = (0..n).map(VarId).collect();
    let cons = symmetries
        .iter()
        .map(|s| Constraint::LexLeader {
            scope: scope.clone(),
            symmetry: VarValueSymmetry::value_only(n, s.clone()),
        })
        .collect();
    run(cons, domains.to_vec())
}

/// Fixpoint of lex-leader constraints each filtered exactly on its own,
/// i.e. the strongest possible propagation of the decomposition.
pub fn gac_decomposition_fixpoint(
    domains: &[DomainSet],
    symmetries: &[ValuePermutation],
    budget: u64,
) -> Result<Option<Vec<DomainSet>>> {
    let n = domains.len();
    let mut doms = domains.to_vec();
    loop {
        let before = doms.clone();
        for s in symmetries {
            match exact_valsym_prune(&doms, &[VarValueSymmetry::value_only(n, s.clone())], budget)?
            {
                Some(d) => doms = d,
                None => return Ok(None),
            }
        }
        if doms == before {
            return Ok(Some(doms));
        }
    }
}

/// First value moved by `sigma` and the value mapped onto it; the lex-leader
/// of the first-occurrence vector under `sigma` reduces to `Z_a < Z_b`.
fn moved_pair(sigma: &ValuePermutation, k: usize) -> Option<(usize, usize)> {
    let inv = sigma.inverse();
    (0..k)
        .find(|&v| sigma.apply(v) != v)
        .map(|a| (a, inv.apply(a)))
}

/// Channels every value in `0..k` into a first-occurrence variable and posts
/// one strict ordering `Z_a < Z_b` per value symmetry. Returns the fixpoint
/// projected back onto the original variables.
pub fn channel_fixpoint(
    domains: &[DomainSet],
    k: usize,
    symmetries: &[ValuePermutation],
) -> Option<Vec<DomainSet>> {
    let n = domains.len();
    let z = FirstOccurrenceVars {
        scope: (0..n).map(VarId).collect(),
        values: (0..k).collect(),
        firsts: (n..n + k).map(VarId).collect(),
    };
    let mut doms = domains.to_vec();
    doms.extend((0..k).map(|r| z.initial_domain(r)));
    let mut cons = vec![Constraint::FirstOccurrence(z.clone())];
    for s in symmetries {
        if let Some((a, b)) = moved_pair(s, k) {
            cons.push(Constraint::Ordering {
                vars: vec![z.firsts[a], z.firsts[b]],
                strict: true,
            });
        }
    }
    run(cons, doms).map(|mut d| {
        d.truncate(n);
        d
    })
}

/// Brute-force supports of the channel encoding: assignments whose
/// first-occurrence vector satisfies every posted ordering.
pub fn channel_oracle(
    domains: &[DomainSet],
    k: usize,
    symmetries: &[ValuePermutation],
    budget: u64,
) -> Result<Option<Vec<DomainSet>>> {
    let n = domains.len();
    let pairs: Vec<(usize, usize)> = symmetries.iter().filter_map(|s| moved_pair(s, k)).collect();
    let firsts = |a: &[usize]| -> Vec<usize> {
        (0..k)
            .map(|v| {
                a.iter()
                    .position(|&x| x == v)
                    .map_or(first_occurrence_sentinel(n, v), |p| p + 1)
            })
            .collect()
    };
    enumerate_supports(domains, budget, |a| {
        let z = firsts(a);
        pairs.iter().all(|&(x, y)| z[x] < z[y])
    })
}

fn enumerate_supports(
    domains: &[DomainSet],
    budget: u64,
    accept: impl Fn(&[usize]) -> bool,
) -> Result<Option<Vec<DomainSet>>> {
    let product = domains.iter().map(|d| d.len() as u64).product::<u64>();
    if product > budget {
        return Err(crate::error::Error::BudgetExceeded(budget));
    }
    let lists: Vec<Vec<usize>> = domains.iter().map(|d| d.iter().collect()).collect();
    let mut support = vec![DomainSet::empty(); domains.len()];
    let mut any = false;
    for a in lists.into_iter().multi_cartesian_product() {
        if accept(&a) {
            any = true;
            for (s, &v) in support.iter_mut().zip(&a) {
                s.insert(v);
            }
        }
    }
    Ok(any.then_some(support))
}

fn run(cons: Vec<Constraint>, doms: Vec<DomainSet>) -> Option<Vec<DomainSet>> {
    let n = doms.len();
    let mut store = Store::new(doms);
    match Engine::new(cons, n).propagate_all(&mut store) {
        PropagationOutcome::Failure => None,
        PropagationOutcome::Fixpoint { .. } => Some(store.into_domains()),
    }
}

fn random_domains(rng: &mut StdRng, n: usize, k: usize) -> Vec<DomainSet> {
    (0..n)
        .map(|_| loop {
            let d: DomainSet = (0..k).filter(|_| rng.random_bool(0.6)).collect();
            if !d.is_empty() {
                break d;
            }
        })
        .collect()
}

fn random_perm(rng: &mut StdRng, k: usize) -> ValuePermutation {
    let mut img: Vec<usize> = (0..k).collect();
    img.shuffle(rng);
    ValuePermutation::new(img).expect("shuffle is a bijection")
}

/// Searches random value-symmetry sets over 2–4 variables and 3–4 values
/// for a case where the decomposition into one lex-leader constraint per
/// symmetry, each filtered exactly, is weaker than the exact filter.
pub fn find_decomposition_witness(seed: u64, tries: usize) -> Result<Option<Witness>> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..tries {
        let n = rng.random_range(2..=4);
        let k = rng.random_range(3..=4);
        let count = rng.random_range(2..=3);
        let symmetries = random_symmetries(&mut rng, k, count);
        let domains = random_domains(&mut rng, n, k);
        let decomposed = gac_decomposition_fixpoint(&domains, &symmetries, BUDGET)?;
        let exact = exact_valsym_prune(&domains, &as_group(n, &symmetries), BUDGET)?;
        if strictly_weaker(&decomposed, &exact) {
            return Ok(Some(Witness {
                domains,
                symmetries,
                decomposed,
                exact,
            }));
        }
    }
    Ok(None)
}

/// Searches instances with exactly two value symmetries for a case where
/// channeling plus ordering keeps a value that both the exact filter and an
/// exact filter of the channel encoding itself remove.
pub fn find_channel_witness(seed: u64, tries: usize) -> Result<Option<Witness>> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..tries {
        let n = rng.random_range(2..=4);
        let k = rng.random_range(3..=4);
        let symmetries = random_symmetries(&mut rng, k, 2);
        let domains = random_domains(&mut rng, n, k);
        let decomposed = channel_fixpoint(&domains, k, &symmetries);
        let exact = exact_valsym_prune(&domains, &as_group(n, &symmetries), BUDGET)?;
        // the channel encoding must also lose against its own exact filter
        if exact.is_some()
            && strictly_weaker(&decomposed, &exact)
            && strictly_weaker(
                &decomposed,
                &channel_oracle(&domains, k, &symmetries, BUDGET)?,
            )
        {
            return Ok(Some(Witness {
                domains,
                symmetries,
                decomposed,
                exact,
            }));
        }
    }
    Ok(None)
}

const BUDGET: u64 = 1 << 16;

/// `count` distinct non-identity permutations of `0..k`.
fn random_symmetries(rng: &mut StdRng, k: usize, count: usize) -> Vec<ValuePermutation> {
    let mut out: Vec<ValuePermutation> = Vec::new();
    while out.len() < count {
        let p = random_perm(rng, k);
        if !p.is_identity() && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Value symmetries as scope symmetries over `n` variables.
pub fn as_group(n: usize, symmetries: &[ValuePermutation]) -> Vec<VarValueSymmetry> {
    symmetries
        .iter()
        .map(|s| VarValueSymmetry::value_only(n, s.clone()))
        .collect()
}
