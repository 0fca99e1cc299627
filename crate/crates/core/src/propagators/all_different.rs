use crate::domain::{DomainSet, VarId};
use crate::engine::Store;
use crate::error::{Inconsistency, PropResult};

/// Assigned-value pruning plus singleton-support tightening.
///
/// When the scope has exactly as many variables as available values, a value
/// supported by a single domain is fixed there. Fewer values than variables
/// is a failure.
pub fn propagate_alldifferent(store: &mut Store, scope: &[VarId]) -> PropResult<()> {
    loop {
        let mut changed = false;
        let mut used = DomainSet::empty();
        for &x in scope {
            if let Some(v) = store.value(x) {
                if !used.insert(v) {
                    return Err(Inconsistency);
                }
            }
        }
        for &x in scope {
            if store.is_fixed(x) {
                continue;
            }
            changed |= store.retain(x, |v| !used.contains(v))?;
        }
        let mut union = DomainSet::empty();
        for &x in scope {
            for v in store.dom(x).iter() {
                union.insert(v);
            }
        }
        if union.len() < scope.len() {
            return Err(Inconsistency);
        }
        if union.len() == scope.len() {
            for v in union.iter() {
                let mut holders = scope.iter().filter(|&&x| store.dom(x).contains(v));
                if let (Some(&only), None) = (holders.next(), holders.next()) {
                    changed |= store.fix(only, v)?;
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}
