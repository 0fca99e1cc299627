//! Equality-pattern constraints. Both are invariant under every permutation
//! of values.

use crate::domain::VarId;
use crate::engine::Store;
use crate::error::{Inconsistency, PropResult};

pub(crate) fn repeat_or_fresh_holds(vals: &[usize]) -> bool {
    match vals.split_last() {
        None => true,
        Some((last, earlier)) => earlier.last() == Some(last) || !earlier.contains(last),
    }
}

/// Checks the pattern once every variable of `scope` is fixed; never prunes.
pub fn propagate_repeat_or_fresh(store: &mut Store, scope: &[VarId]) -> PropResult<()> {
    let vals: Option<Vec<usize>> = scope.iter().map(|&x| store.value(x)).collect();
    match vals {
        Some(v) if !repeat_or_fresh_holds(&v) => Err(Inconsistency),
        _ => Ok(()),
    }
}

/// Each required value needs a variable that can still take it; a value left
/// with a single candidate variable is assigned there.
pub fn propagate_uses_all(store: &mut Store, scope: &[VarId], values: &[usize]) -> PropResult<()> {
    loop {
        let mut changed = false;
        for &v in values {
            let mut holders = scope.iter().filter(|&&x| store.dom(x).contains(v));
            match (holders.next(), holders.next()) {
                (None, _) => return Err(Inconsistency),
                (Some(&only), None) => changed |= store.fix(only, v)?,
                _ => {}
            }
        }
        if !changed {
            return Ok(());
        }
    }
}
