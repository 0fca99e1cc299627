use crate::domain::{DomainSet, VarId};
use crate::engine::Store;
use crate::error::PropResult;

/// First-occurrence variables for one interchangeable class.
///
/// `firsts[r]` holds the 1-based position of the first occurrence of
/// `values[r]` along `scope`, or [`first_occurrence_sentinel`] when the value
/// is not used at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOccurrenceVars {
    pub scope: Vec<VarId>,
    pub values: Vec<usize>,
    pub firsts: Vec<VarId>,
}

impl FirstOccurrenceVars {
    /// Initial domain `{1..n} ∪ {sentinel}` of `firsts[rank]`.
    pub fn initial_domain(&self, rank: usize) -> DomainSet {
        let n = self.scope.len();
        let mut d = DomainSet::range(1, n);
        d.insert(first_occurrence_sentinel(n, rank));
        d
    }
}

/// "Unused" marker for the value of 0-based `rank` over `n` positions:
/// `n + 1 + j` with `j = rank + 1`. Sentinels exceed `n` and increase with rank.
pub fn first_occurrence_sentinel(n: usize, rank: usize) -> usize {
    n + 2 + rank
}

pub fn propagate_first_occurrence_channel(
    store: &mut Store,
    z: &FirstOccurrenceVars,
) -> PropResult<()> {
    let n = z.scope.len();
    loop {
        let mut changed = false;
        for (rank, (&value, &first)) in z.values.iter().zip(&z.firsts).enumerate() {
            let sentinel = first_occurrence_sentinel(n, rank);
            let first_fixed = z.scope.iter().position(|&x| store.value(x) == Some(value));

            // position p can be first only if value is possible there and not fixed earlier
            let ok_pos: Vec<bool> = z
                .scope
                .iter()
                .enumerate()
                .map(|(i, &x)| store.dom(x).contains(value) && first_fixed.is_none_or(|f| i <= f))
                .collect();
            changed |= store.retain(first, |p| {
                if p == sentinel {
                    first_fixed.is_none()
                } else {
                    (1..=n).contains(&p) && ok_pos[p - 1]
                }
            })?;

            // X_p = value needs first ≤ p
            let lb = store.min(first);
            for (i, &x) in z.scope.iter().enumerate() {
                if i + 1 < lb {
                    changed |= store.remove(x, value)?;
                }
            }
            if let Some(p) = store.value(first).filter(|&p| p <= n) {
                changed |= store.fix(z.scope[p - 1], value)?;
            }
        }
        if !changed {
            return Ok(());
        }
    }
}
