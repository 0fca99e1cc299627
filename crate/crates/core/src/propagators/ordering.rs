use crate::domain::VarId;
use crate::engine::Store;
use crate::error::PropResult;

/// Bounds consistency on `vars[0] < vars[1] < …` (`≤` when not strict).
pub fn propagate_ordering_chain(store: &mut Store, vars: &[VarId], strict: bool) -> PropResult<()> {
    let gap = usize::from(strict);
    for w in vars.windows(2) {
        let lo = store.min(w[0]) + gap;
        store.remove_below(w[1], lo)?;
    }
    for w in vars.windows(2).rev() {
        let hi = store.max(w[1]);
        if hi < gap {
            return Err(crate::Inconsistency);
        }
        store.remove_above(w[0], hi - gap)?;
    }
    Ok(())
}
