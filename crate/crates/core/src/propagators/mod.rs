//! Constraint descriptors and their filtering algorithms.

mod abs_diff;
mod all_different;
mod channel;
mod lex_leader;
mod not_equal;
mod ordering;
mod pattern;
mod precedence;

pub use abs_diff::propagate_abs_diff;
pub use all_different::propagate_alldifferent;
pub use channel::{
    first_occurrence_sentinel, propagate_first_occurrence_channel, FirstOccurrenceVars,
};
pub use lex_leader::propagate_lex_leader;
pub use not_equal::propagate_not_equal;
pub use ordering::propagate_ordering_chain;
pub use pattern::{propagate_repeat_or_fresh, propagate_uses_all};
pub use precedence::{precedence_holds, propagate_precedence};

use crate::domain::VarId;
use crate::engine::Store;
use crate::error::{Error, PropResult, Result};
use crate::symmetry::{satisfies_lex_leader, VarValueSymmetry};

/// A posted constraint together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    NotEqual(VarId, VarId),
    /// `diff = |x − y|`
    AbsDiff {
        x: VarId,
        y: VarId,
        diff: VarId,
    },
    AllDifferent(Vec<VarId>),
    /// First occurrences of `values` appear in that order along `scope`.
    Precedence {
        scope: Vec<VarId>,
        values: Vec<usize>,
    },
    /// `scope ≤lex symmetry(scope)`.
    LexLeader {
        scope: Vec<VarId>,
        symmetry: VarValueSymmetry,
    },
    /// Links `scope` to first-occurrence variables of each class value.
    FirstOccurrence(FirstOccurrenceVars),
    /// `vars[0] < vars[1] < …` (or `≤` when not strict).
    Ordering {
        vars: Vec<VarId>,
        strict: bool,
    },
    /// The last variable of `scope` repeats its predecessor or takes a value
    /// unused by every earlier variable. Checked once the scope is fixed.
    RepeatOrFresh(Vec<VarId>),
    /// Every value in `values` is taken by some variable of `scope`.
    UsesAll {
        scope: Vec<VarId>,
        values: Vec<usize>,
    },
}

impl Constraint {
    pub fn kind(&self) -> &'static str {
        match self {
            Constraint::NotEqual(..) => "not-equal",
            Constraint::AbsDiff { .. } => "abs-diff",
            Constraint::AllDifferent(_) => "all-different",
            Constraint::Precedence { .. } => "precedence",
            Constraint::LexLeader { .. } => "lex-leader",
            Constraint::FirstOccurrence(_) => "first-occurrence",
            Constraint::Ordering { .. } => "ordering",
            Constraint::RepeatOrFresh(_) => "repeat-or-fresh",
            Constraint::UsesAll { .. } => "uses-all",
        }
    }

    /// Every variable the constraint reads, possibly with repeats.
    pub fn scope(&self) -> Vec<VarId> {
        match self {
            Constraint::NotEqual(x, y) => vec![*x, *y],
            Constraint::AbsDiff { x, y, diff } => vec![*x, *y, *diff],
            Constraint::AllDifferent(s)
            | Constraint::RepeatOrFresh(s)
            | Constraint::Precedence { scope: s, .. }
            | Constraint::LexLeader { scope: s, .. }
            | Constraint::UsesAll { scope: s, .. }
            | Constraint::Ordering { vars: s, .. } => s.clone(),
            Constraint::FirstOccurrence(z) => z.scope.iter().chain(&z.firsts).copied().collect(),
        }
    }

    pub(crate) fn validate(&self, num_vars: usize) -> Result<()> {
        let scope = self.scope();
        if scope.is_empty() {
            return Err(Error::InvalidModel(format!(
                "{} with empty scope",
                self.kind()
            )));
        }
        if let Some(v) = scope.iter().find(|v| v.0 >= num_vars) {
            return Err(Error::InvalidModel(format!(
                "{} references unknown variable {v}",
                self.kind()
            )));
        }
        match self {
            Constraint::LexLeader { scope, symmetry } if symmetry.arity() != scope.len() => {
                Err(Error::DimensionMismatch {
                    expected: scope.len(),
                    actual: symmetry.arity(),
                })
            }
            Constraint::Precedence { values, .. } | Constraint::UsesAll { values, .. } => {
                let mut sorted = values.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != values.len() {
                    return Err(Error::InvalidModel(format!(
                        "{} lists a value twice",
                        self.kind()
                    )));
                }
                Ok(())
            }
            Constraint::FirstOccurrence(z) if z.firsts.len() != z.values.len() => {
                Err(Error::DimensionMismatch {
                    expected: z.values.len(),
                    actual: z.firsts.len(),
                })
            }
            Constraint::Ordering { vars, .. } if vars.len() < 2 => Err(Error::InvalidModel(
                "ordering chain needs at least two variables".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn propagate(&self, store: &mut Store) -> PropResult<()> {
        match self {
            Constraint::NotEqual(x, y) => propagate_not_equal(store, *x, *y),
            Constraint::AbsDiff { x, y, diff } => propagate_abs_diff(store, *x, *y, *diff),
            Constraint::AllDifferent(s) => propagate_alldifferent(store, s),
            Constraint::Precedence { scope, values } => propagate_precedence(store, scope, values),
            Constraint::LexLeader { scope, symmetry } => {
                propagate_lex_leader(store, symmetry, scope)
            }
            Constraint::FirstOccurrence(z) => propagate_first_occurrence_channel(store, z),
            Constraint::Ordering { vars, strict } => propagate_ordering_chain(store, vars, *strict),
            Constraint::RepeatOrFresh(s) => propagate_repeat_or_fresh(store, s),
            Constraint::UsesAll { scope, values } => propagate_uses_all(store, scope, values),
        }
    }

    /// Direct check against a full assignment of the model (indexed by variable).
    pub fn is_satisfied(&self, values: &[usize]) -> bool {
        let get = |v: &VarId| values[v.0];
        match self {
            Constraint::NotEqual(x, y) => get(x) != get(y),
            Constraint::AbsDiff { x, y, diff } => get(x).abs_diff(get(y)) == get(diff),
            Constraint::AllDifferent(s) => {
                let mut vals: Vec<usize> = s.iter().map(get).collect();
                vals.sort();
                vals.windows(2).all(|w| w[0] != w[1])
            }
            Constraint::Precedence {
                scope,
                values: order,
            } => precedence_holds(&scope.iter().map(get).collect::<Vec<_>>(), order),
            Constraint::LexLeader { scope, symmetry } => {
                satisfies_lex_leader(symmetry, &scope.iter().map(get).collect::<Vec<_>>())
            }
            Constraint::FirstOccurrence(z) => {
                let xs: Vec<usize> = z.scope.iter().map(get).collect();
                z.values
                    .iter()
                    .zip(&z.firsts)
                    .enumerate()
                    .all(|(rank, (&val, zv))| {
                        let expected = xs
                            .iter()
                            .position(|&x| x == val)
                            .map_or(first_occurrence_sentinel(xs.len(), rank), |p| p + 1);
                        get(zv) == expected
                    })
            }
            Constraint::Ordering { vars, strict } => vars.windows(2).all(|w| {
                if *strict {
                    get(&w[0]) < get(&w[1])
                } else {
                    get(&w[0]) <= get(&w[1])
                }
            }),
            Constraint::RepeatOrFresh(s) => {
                let vals: Vec<usize> = s.iter().map(get).collect();
                pattern::repeat_or_fresh_holds(&vals)
            }
            Constraint::UsesAll {
                scope,
                values: required,
            } => required.iter().all(|r| scope.iter().any(|v| get(v) == *r)),
        }
    }
}
