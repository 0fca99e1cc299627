use crate::domain::VarId;
use crate::engine::Store;
use crate::error::PropResult;

/// `x ≠ y`: a fixed side removes its value from the other.
pub fn propagate_not_equal(store: &mut Store, x: VarId, y: VarId) -> PropResult<()> {
    if let Some(v) = store.value(x) {
        store.remove(y, v)?;
    }
    if let Some(v) = store.value(y) {
        store.remove(x, v)?;
    }
    Ok(())
}
