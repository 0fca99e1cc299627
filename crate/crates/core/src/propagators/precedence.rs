//! Value precedence through the unfolded automaton whose state is the number
//! of class values introduced so far.
//!
//! From state `s`, a class value of rank `r` is accepted when `r < s` (already
//! introduced) or `r == s` (introduced now, moving to `s + 1`). Values outside
//! the class leave the state unchanged. Every state is accepting.

use crate::domain::VarId;
use crate::engine::Store;
use crate::error::PropResult;

fn rank_of(order: &[usize], v: usize) -> Option<usize> {
    order.iter().position(|&c| c == v)
}

fn step(state: usize, rank: Option<usize>) -> Option<usize> {
    match rank {
        None => Some(state),
        Some(r) if r < state => Some(state),
        Some(r) if r == state => Some(state + 1),
        Some(_) => None,
    }
}

/// Direct check on a full assignment.
pub fn precedence_holds(values: &[usize], order: &[usize]) -> bool {
    values
        .iter()
        .try_fold(0, |s, &v| step(s, rank_of(order, v)))
        .is_some()
}

/// GAC filtering of `Precedence(order)` over `scope` by forward and backward
/// reachability on the layered state graph; O(n · m · d) per call.
pub fn propagate_precedence(store: &mut Store, scope: &[VarId], order: &[usize]) -> PropResult<()> {
    let n = scope.len();
    let states = order.len() + 1;
    let doms: Vec<Vec<(usize, Option<usize>)>> = scope
        .iter()
        .map(|&x| {
            store
                .dom(x)
                .iter()
                .map(|v| (v, rank_of(order, v)))
                .collect()
        })
        .collect();

    let mut fwd = vec![vec![false; states]; n + 1];
    fwd[0][0] = true;
    for i in 0..n {
        for s in 0..states {
            if !fwd[i][s] {
                continue;
            }
            for &(_, r) in &doms[i] {
                if let Some(t) = step(s, r) {
                    fwd[i + 1][t] = true;
                }
            }
        }
    }

    let mut bwd = vec![vec![false; states]; n + 1];
    bwd[n] = vec![true; states];
    for i in (0..n).rev() {
        for s in 0..states {
            bwd[i][s] = doms[i]
                .iter()
                .any(|&(_, r)| step(s, r).is_some_and(|t| bwd[i + 1][t]));
        }
    }

    for (i, &x) in scope.iter().enumerate() {
        let supported: Vec<usize> = doms[i]
            .iter()
            .filter(|&&(_, r)| {
                (0..states).any(|s| fwd[i][s] && step(s, r).is_some_and(|t| bwd[i + 1][t]))
            })
            .map(|&(v, _)| v)
            .collect();
        store.retain(x, |v| supported.contains(&v))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DomainSet;

    fn fixed(vals: &[usize]) -> Store {
        Store::new(vals.iter().map(|&v| DomainSet::singleton(v)).collect())
    }

    fn vars(n: usize) -> Vec<VarId> {
        (0..n).map(VarId).collect()
    }

    #[test]
    fn accepts_ordered_first_uses() {
        let mut s = fixed(&[1, 1, 2, 1, 3]);
        assert!(propagate_precedence(&mut s, &vars(5), &[1, 2, 3]).is_ok());
        assert!(precedence_holds(&[1, 1, 2, 1, 3], &[1, 2, 3]));
    }

    #[test]
    fn rejects_swapped_first_uses() {
        let mut s = fixed(&[1, 1, 3, 1, 2]);
        assert!(propagate_precedence(&mut s, &vars(5), &[1, 2, 3]).is_err());
        assert!(!precedence_holds(&[1, 1, 3, 1, 2], &[1, 2, 3]));
    }

    #[test]
    fn fresh_domains_three_positions() {
        // oracle: of the 27 assignments, the accepted ones are
        // 000 001 010 011 012; supports per position follow
        let accepted: Vec<[usize; 3]> = (0..27)
            .map(|k| [k / 9, (k / 3) % 3, k % 3])
            .filter(|a| precedence_holds(a, &[0, 1, 2]))
            .collect();
        assert_eq!(accepted.len(), 5);
        let mut s = Store::new(vec![DomainSet::range(0, 2); 3]);
        propagate_precedence(&mut s, &vars(3), &[0, 1, 2]).unwrap();
        assert_eq!(s.dom(VarId(0)), &DomainSet::singleton(0));
        assert_eq!(s.dom(VarId(1)), &DomainSet::range(0, 1));
        assert_eq!(s.dom(VarId(2)), &DomainSet::range(0, 2));
    }

    #[test]
    fn values_outside_class_pass_through() {
        let mut s = Store::new(vec![[5, 1].into_iter().collect(), DomainSet::range(0, 1)]);
        propagate_precedence(&mut s, &vars(2), &[0, 1]).unwrap();
        assert_eq!(s.dom(VarId(0)), &DomainSet::singleton(5));
        assert_eq!(s.dom(VarId(1)), &DomainSet::singleton(0));
    }
}
