//! `U ≤lex V` with `U = scope` and `V = sym(scope)`, i.e.
//! `V[j] = sigma(X[theta⁻¹(j)])`.
//!
//! Both vectors read the same variables, so the filter below is sound but not
//! GAC: it locates the first position `alpha` that is not fixed-and-equal and
//! enforces `U[alpha] ≤ V[alpha]`, strictly when a tie at `alpha` would force
//! `U > V` further right.

use crate::domain::VarId;
use crate::engine::Store;
use crate::error::{Inconsistency, PropResult};
use crate::symmetry::VarValueSymmetry;

struct Pair {
    u: VarId,
    v: VarId,
}

fn pair(sym: &VarValueSymmetry, scope: &[VarId], j: usize) -> Pair {
    Pair {
        u: scope[j],
        v: scope[sym.source_of(j)],
    }
}

enum Tie {
    /// U[j] = V[j] for every assignment.
    Equal,
    /// U[j] > V[j] for every assignment.
    Greater,
    Open,
}

fn classify(store: &Store, sym: &VarValueSymmetry, p: &Pair) -> Tie {
    let sigma = sym.sigma();
    if p.u == p.v {
        let d = store.dom(p.u);
        if d.iter().all(|a| a == sigma.apply(a)) {
            Tie::Equal
        } else if d.iter().all(|a| a > sigma.apply(a)) {
            Tie::Greater
        } else {
            Tie::Open
        }
    } else {
        let max_v = store
            .dom(p.v)
            .iter()
            .map(|b| sigma.apply(b))
            .max()
            .unwrap_or(0);
        let min_v = store
            .dom(p.v)
            .iter()
            .map(|b| sigma.apply(b))
            .min()
            .unwrap_or(0);
        match (store.value(p.u), min_v == max_v) {
            (Some(a), true) if a == min_v => Tie::Equal,
            _ if store.min(p.u) > max_v => Tie::Greater,
            _ => Tie::Open,
        }
    }
}

pub fn propagate_lex_leader(
    store: &mut Store,
    sym: &VarValueSymmetry,
    scope: &[VarId],
) -> PropResult<()> {
    let n = scope.len();
    let sigma = sym.sigma().clone();
    loop {
        let mut alpha = None;
        for j in 0..n {
            let p = pair(sym, scope, j);
            match (store.value(p.u), store.value(p.v).map(|b| sigma.apply(b))) {
                (Some(a), Some(b)) if a == b => continue,
                (Some(a), Some(b)) if a > b => return Err(Inconsistency),
                (Some(_), Some(_)) => return Ok(()),
                _ => {
                    alpha = Some(j);
                    break;
                }
            }
        }
        let Some(alpha) = alpha else {
            return Ok(());
        };

        let mut strict = false;
        for j in alpha + 1..n {
            match classify(store, sym, &pair(sym, scope, j)) {
                Tie::Equal => continue,
                Tie::Greater => {
                    strict = true;
                    break;
                }
                Tie::Open => break,
            }
        }

        let p = pair(sym, scope, alpha);
        let changed = if p.u == p.v {
            store.retain(p.u, |a| {
                let b = sigma.apply(a);
                if strict {
                    a < b
                } else {
                    a <= b
                }
            })?
        } else {
            let max_v = store
                .dom(p.v)
                .iter()
                .map(|b| sigma.apply(b))
                .max()
                .unwrap_or(0);
            let mut changed = store.retain(p.u, |a| if strict { a < max_v } else { a <= max_v })?;
            let min_u = store.min(p.u);
            changed |= store.retain(p.v, |b| {
                let b = sigma.apply(b);
                if strict {
                    b > min_u
                } else {
                    b >= min_u
                }
            })?;
            changed
        };
        if !changed {
            return Ok(());
        }
    }
}
