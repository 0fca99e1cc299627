//! Value and variable/value symmetries, their group closure, orbits of
//! solution sets and the exhaustive lex-leader pruning oracle.
//!
//! A [`VarValueSymmetry`] `(theta, sigma)` acts on a full assignment `a` of
//! the symmetry scope by `a'[theta(i)] = sigma(a[i])`. Composition follows
//! "apply the first operand, then the second": `s1.then(&s2)` acts as
//! `s2 ∘ s1`.

use std::collections::{HashMap, HashSet, VecDeque};

use itertools::Itertools;

use crate::domain::{DomainSet, VarId};
use crate::error::{Error, Result};

/// Default cap on the number of explicitly stored group elements.
pub const DEFAULT_GROUP_CAP: usize = 10_080;

/// Largest class handed to [`full_symmetric_group`].
pub const MAX_SYMMETRIC_DEGREE: usize = 8;

/// A bijection on values. Values beyond the stored image are fixed points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValuePermutation {
    image: Vec<usize>,
}

impl ValuePermutation {
    pub fn identity() -> Self {
        Self { image: Vec::new() }
    }

    /// Builds a permutation from `image[v] = sigma(v)`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &v in &image {
            if v >= image.len() || seen[v] {
                return Err(Error::InvalidModel(format!(
                    "value map {image:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        let mut p = Self { image };
        p.normalize();
        Ok(p)
    }

    /// `v ↦ top − v` on `0..=top`.
    pub fn inversion(top: usize) -> Self {
        Self::new((0..=top).rev().collect()).expect("reversal is a bijection")
    }

    /// Swaps `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..=a.max(b)).collect();
        image.swap(a, b);
        Self::new(image).expect("transposition is a bijection")
    }

    /// Maps `from[k]` to `to[k]`, identity elsewhere.
    pub fn from_pairs(from: &[usize], to: &[usize]) -> Result<Self> {
        let top = from.iter().chain(to).copied().max().map_or(0, |m| m + 1);
        let mut image: Vec<usize> = (0..top).collect();
        for (&f, &t) in from.iter().zip(to) {
            image[f] = t;
        }
        Self::new(image)
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image.get(v).copied().unwrap_or(v)
    }

    /// Images of `0, 1, …` up to the last moved value.
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (v, &w) in self.image.iter().enumerate() {
            inv[w] = v;
        }
        Self { image: inv }
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &ValuePermutation) -> Self {
        let top = self.image.len().max(next.image.len());
        let image = (0..top).map(|v| next.apply(self.apply(v))).collect();
        let mut p = Self { image };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while let Some(&last) = self.image.last() {
            if last + 1 == self.image.len() {
                self.image.pop();
            } else {
                break;
            }
        }
    }
}

/// A simultaneous permutation of scope positions and of values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarValueSymmetry {
    theta: Vec<usize>,
    theta_inv: Vec<usize>,
    sigma: ValuePermutation,
}

impl VarValueSymmetry {
    pub fn new(theta: Vec<usize>, sigma: ValuePermutation) -> Result<Self> {
        let n = theta.len();
        let mut theta_inv = vec![usize::MAX; n];
        for (i, &t) in theta.iter().enumerate() {
            if t >= n || theta_inv[t] != usize::MAX {
                return Err(Error::InvalidModel(format!(
                    "variable map {theta:?} is not a permutation"
                )));
            }
            theta_inv[t] = i;
        }
        Ok(Self {
            theta,
            theta_inv,
            sigma,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::value_only(n, ValuePermutation::identity())
    }

    pub fn value_only(n: usize, sigma: ValuePermutation) -> Self {
        Self::new((0..n).collect(), sigma).expect("identity is a bijection")
    }

    pub fn variable_only(theta: Vec<usize>) -> Result<Self> {
        Self::new(theta, ValuePermutation::identity())
    }

    /// Position reversal `i ↦ n − 1 − i`.
    pub fn reversal(n: usize) -> Self {
        Self::variable_only((0..n).rev().collect()).expect("reversal is a bijection")
    }

    pub fn arity(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    /// Scope position whose value lands on position `j` under the action.
    pub fn source_of(&self, j: usize) -> usize {
        self.theta_inv[j]
    }

    pub fn sigma(&self) -> &ValuePermutation {
        &self.sigma
    }

    pub fn moves_variables(&self) -> bool {
        self.theta.iter().enumerate().any(|(i, &t)| i != t)
    }

    pub fn is_identity(&self) -> bool {
        !self.moves_variables() && self.sigma.is_identity()
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &VarValueSymmetry) -> Result<Self> {
        if self.arity() != next.arity() {
            return Err(Error::DimensionMismatch {
                expected: self.arity(),
                actual: next.arity(),
            });
        }
        let theta = self.theta.iter().map(|&t| next.theta[t]).collect();
        Self::new(theta, self.sigma.then(&next.sigma))
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.theta_inv.clone(), self.sigma.inverse()).expect("inverse of a bijection")
    }
}

/// Image of a scope assignment under `sym`.
pub fn apply_symmetry(sym: &VarValueSymmetry, a: &[usize]) -> Result<Vec<usize>> {
    if a.len() != sym.arity() {
        return Err(Error::DimensionMismatch {
            expected: sym.arity(),
            actual: a.len(),
        });
    }
    let mut out = vec![0; a.len()];
    for (i, &v) in a.iter().enumerate() {
        out[sym.theta[i]] = sym.sigma.apply(v);
    }
    Ok(out)
}

/// Whether `a ≤lex sym(a)`.
pub fn satisfies_lex_leader(sym: &VarValueSymmetry, a: &[usize]) -> bool {
    (0..a.len())
        .map(|j| (a[j], sym.sigma.apply(a[sym.theta_inv[j]])))
        .find(|(u, v)| u != v)
        .is_none_or(|(u, v)| u < v)
}

/// Declared symmetries of a model, acting on the ordered variable list `scope`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymmetrySpec {
    pub scope: Vec<VarId>,
    /// Generators (or a full list) of variable/value symmetries.
    pub explicit: Vec<VarValueSymmetry>,
    /// Disjoint ordered classes of fully interchangeable values.
    pub interchangeable: Vec<Vec<usize>>,
}

impl SymmetrySpec {
    pub fn none(scope: Vec<VarId>) -> Self {
        Self {
            scope,
            ..Self::default()
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.explicit.iter().all(VarValueSymmetry::is_identity)
            && self.interchangeable.iter().all(|c| c.len() < 2)
    }

    /// The whole group generated by explicit generators and class swaps.
    pub fn group(&self, cap: usize) -> Result<Vec<VarValueSymmetry>> {
        let n = self.scope.len();
        let mut gens = self.explicit.clone();
        for class in &self.interchangeable {
            for w in class.windows(2) {
                gens.push(VarValueSymmetry::value_only(
                    n,
                    ValuePermutation::transposition(w[0], w[1]),
                ));
            }
        }
        close_group(&gens, n, cap)
    }
}

/// Closure of `generators` under composition, identity first.
pub fn close_group(
    generators: &[VarValueSymmetry],
    arity: usize,
    cap: usize,
) -> Result<Vec<VarValueSymmetry>> {
    if cap == 0 {
        return Err(Error::OutOfRange("group cap must be at least 1".into()));
    }
    for g in generators {
        if g.arity() != arity {
            return Err(Error::DimensionMismatch {
                expected: arity,
                actual: g.arity(),
            });
        }
    }
    let identity = VarValueSymmetry::identity(arity);
    let mut elements = vec![identity.clone()];
    let mut seen: HashSet<VarValueSymmetry> = HashSet::from([identity]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let next = elements[i].then(g)?;
            if seen.insert(next.clone()) {
                if elements.len() == cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                elements.push(next);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    Ok(elements)
}

/// Every permutation of `values` (identity on all other values).
pub fn full_symmetric_group(values: &[usize]) -> Result<Vec<ValuePermutation>> {
    if values.len() > MAX_SYMMETRIC_DEGREE {
        return Err(Error::OutOfRange(format!(
            "{} interchangeable values exceed the limit of {MAX_SYMMETRIC_DEGREE}",
            values.len()
        )));
    }
    values
        .iter()
        .copied()
        .permutations(values.len())
        .map(|to| ValuePermutation::from_pairs(values, &to))
        .collect()
}

/// One equivalence class of solutions under a group action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographically least member.
    pub canonical: Vec<usize>,
    /// Indices into the input solution list.
    pub members: Vec<usize>,
}

/// Lexicographically least image of `a` under `group`.
pub fn canonical_form(a: &[usize], group: &[VarValueSymmetry]) -> Vec<usize> {
    group
        .iter()
        .map(|g| apply_symmetry(g, a).expect("group arity matches the scope"))
        .min()
        .unwrap_or_else(|| a.to_vec())
}

/// Partitions scope assignments into orbits of a closed `group`, ordered by
/// canonical element.
pub fn orbit_partition(solutions: &[Vec<usize>], group: &[VarValueSymmetry]) -> Vec<Orbit> {
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut orbits: Vec<Orbit> = Vec::new();
    for (i, s) in solutions.iter().enumerate() {
        let canon = canonical_form(s, group);
        let slot = *index.entry(canon.clone()).or_insert_with(|| {
            orbits.push(Orbit {
                canonical: canon,
                members: Vec::new(),
            });
            orbits.len() - 1
        });
        orbits[slot].members.push(i);
    }
    orbits.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    orbits
}

/// Exact pruning for the conjunction of `x ≤lex g(x)` over every `g` in
/// `group`, by enumerating the Cartesian product of `domains`.
///
/// Returns `Ok(None)` when no assignment survives.
pub fn exact_valsym_prune(
    domains: &[DomainSet],
    group: &[VarValueSymmetry],
    budget: u64,
) -> Result<Option<Vec<DomainSet>>> {
    let product = domains
        .iter()
        .try_fold(1u64, |acc, d| acc.checked_mul(d.len() as u64));
    match product {
        Some(p) if p <= budget => {}
        _ => return Err(Error::BudgetExceeded(budget)),
    }
    for g in group {
        if g.arity() != domains.len() {
            return Err(Error::DimensionMismatch {
                expected: domains.len(),
                actual: g.arity(),
            });
        }
    }
    if domains.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let mut support = vec![DomainSet::empty(); domains.len()];
    let mut any = false;
    let lists: Vec<Vec<usize>> = domains.iter().map(|d| d.iter().collect()).collect();
    for a in lists
        .iter()
        .map(|l| l.iter().copied())
        .multi_cartesian_product()
    {
        if group.iter().all(|g| satisfies_lex_leader(g, &a)) {
            any = true;
            for (s, &v) in support.iter_mut().zip(&a) {
                s.insert(v);
            }
        }
    }
    Ok(any.then_some(support))
}
