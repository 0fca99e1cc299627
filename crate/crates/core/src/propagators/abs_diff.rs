use crate::domain::VarId;
use crate::engine::Store;
use crate::error::PropResult;

/// `diff = |x − y|`, filtered to generalized arc consistency by enumerating
/// supporting pairs.
pub fn propagate_abs_diff(store: &mut Store, x: VarId, y: VarId, diff: VarId) -> PropResult<()> {
    let xs: Vec<usize> = store.dom(x).iter().collect();
    let ys: Vec<usize> = store.dom(y).iter().collect();
    let d = store.dom(diff).clone();
    let mut sx = vec![false; xs.len()];
    let mut sy = vec![false; ys.len()];
    let mut sd = crate::domain::DomainSet::empty();
    for (i, &a) in xs.iter().enumerate() {
        for (j, &b) in ys.iter().enumerate() {
            let delta = a.abs_diff(b);
            if d.contains(delta) {
                sx[i] = true;
                sy[j] = true;
                sd.insert(delta);
            }
        }
    }
    let keep_x: Vec<usize> = xs
        .iter()
        .zip(&sx)
        .filter(|(_, s)| **s)
        .map(|(v, _)| *v)
        .collect();
    let keep_y: Vec<usize> = ys
        .iter()
        .zip(&sy)
        .filter(|(_, s)| **s)
        .map(|(v, _)| *v)
        .collect();
    store.retain(x, |v| keep_x.binary_search(&v).is_ok())?;
    store.retain(y, |v| keep_y.binary_search(&v).is_ok())?;
    store.retain(diff, |v| sd.contains(v))?;
    Ok(())
}
