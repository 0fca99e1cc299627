//! Domain store and the propagation-to-fixpoint loop.

use std::collections::VecDeque;

use crate::domain::{DomainSet, VarId};
use crate::error::{Inconsistency, PropResult};
use crate::model::Model;
use crate::propagators::Constraint;

/// Mutable per-node view of every variable's domain.
///
/// Every narrowing operation reports emptiness as [`Inconsistency`]; the
/// caller is expected to discard the store at that point.
#[derive(Debug, Clone)]
pub struct Store {
    doms: Vec<DomainSet>,
    touched: Vec<bool>,
    modified: Vec<VarId>,
}

impl Store {
    pub fn new(doms: Vec<DomainSet>) -> Self {
        let n = doms.len();
        Self {
            doms,
            touched: vec![false; n],
            modified: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.doms.len()
    }

    pub fn dom(&self, var: VarId) -> &DomainSet {
        &self.doms[var.0]
    }

    pub fn domains(&self) -> &[DomainSet] {
        &self.doms
    }

    pub fn into_domains(self) -> Vec<DomainSet> {
        self.doms
    }

    pub fn value(&self, var: VarId) -> Option<usize> {
        self.doms[var.0].value()
    }

    pub fn is_fixed(&self, var: VarId) -> bool {
        self.doms[var.0].len() == 1
    }

    pub fn min(&self, var: VarId) -> usize {
        self.doms[var.0]
            .min()
            .expect("live domains are never empty")
    }

    pub fn max(&self, var: VarId) -> usize {
        self.doms[var.0]
            .max()
            .expect("live domains are never empty")
    }

    pub fn remove(&mut self, var: VarId, v: usize) -> PropResult<bool> {
        let changed = self.doms[var.0].remove(v);
        self.after_change(var, changed)
    }

    pub fn fix(&mut self, var: VarId, v: usize) -> PropResult<bool> {
        if !self.doms[var.0].contains(v) {
            return Err(Inconsistency);
        }
        self.retain(var, |w| w == v)
    }

    pub fn retain(&mut self, var: VarId, keep: impl FnMut(usize) -> bool) -> PropResult<bool> {
        let changed = self.doms[var.0].retain(keep);
        self.after_change(var, changed)
    }

    /// Removes every value strictly below `lo`.
    pub fn remove_below(&mut self, var: VarId, lo: usize) -> PropResult<bool> {
        if self.min(var) >= lo {
            return Ok(false);
        }
        self.retain(var, |v| v >= lo)
    }

    /// Removes every value strictly above `hi`.
    pub fn remove_above(&mut self, var: VarId, hi: usize) -> PropResult<bool> {
        if self.max(var) <= hi {
            return Ok(false);
        }
        self.retain(var, |v| v <= hi)
    }

    /// Variables modified since the last drain, in first-modification order.
    pub fn drain_modified(&mut self) -> Vec<VarId> {
        for v in &self.modified {
            self.touched[v.0] = false;
        }
        std::mem::take(&mut self.modified)
    }

    fn after_change(&mut self, var: VarId, changed: bool) -> PropResult<bool> {
        if self.doms[var.0].is_empty() {
            return Err(Inconsistency);
        }
        if changed && !self.touched[var.0] {
            self.touched[var.0] = true;
            self.modified.push(var);
        }
        Ok(changed)
    }
}

/// Result of running propagation to a fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropagationOutcome {
    /// No propagator can prune further; `changed` lists the narrowed variables.
    Fixpoint {
        changed: Vec<VarId>,
    },
    Failure,
}

impl PropagationOutcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, PropagationOutcome::Failure)
    }
}

/// FIFO propagation queue over a fixed set of constraints.
#[derive(Debug, Clone)]
pub struct Engine {
    constraints: Vec<Constraint>,
    watchers: Vec<Vec<usize>>,
    calls: u64,
}

impl Engine {
    pub fn new(constraints: Vec<Constraint>, num_vars: usize) -> Self {
        let mut watchers = vec![Vec::new(); num_vars];
        for (i, c) in constraints.iter().enumerate() {
            let mut scope = c.scope();
            scope.sort();
            scope.dedup();
            for v in scope {
                watchers[v.0].push(i);
            }
        }
        Self {
            constraints,
            watchers,
            calls: 0,
        }
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Total number of propagator invocations so far.
    pub fn calls(&self) -> u64 {
        self.calls
    }

    /// Schedules every propagator in declaration order.
    pub fn propagate_all(&mut self, store: &mut Store) -> PropagationOutcome {
        let order: Vec<usize> = (0..self.constraints.len()).collect();
        self.propagate_with_order(store, &order)
    }

    /// Schedules the given propagators first, in the given order.
    pub fn propagate_with_order(
        &mut self,
        store: &mut Store,
        order: &[usize],
    ) -> PropagationOutcome {
        let mut in_queue = vec![false; self.constraints.len()];
        let mut queue = VecDeque::with_capacity(order.len());
        for &p in order {
            if !in_queue[p] {
                in_queue[p] = true;
                queue.push_back(p);
            }
        }
        self.run(store, queue, in_queue)
    }

    /// Schedules the watchers of `vars`, e.g. after a branching decision.
    pub fn propagate_from(&mut self, store: &mut Store, vars: &[VarId]) -> PropagationOutcome {
        let mut in_queue = vec![false; self.constraints.len()];
        let mut queue = VecDeque::new();
        for v in vars {
            for &p in &self.watchers[v.0] {
                if !in_queue[p] {
                    in_queue[p] = true;
                    queue.push_back(p);
                }
            }
        }
        self.run(store, queue, in_queue)
    }

    fn run(
        &mut self,
        store: &mut Store,
        mut queue: VecDeque<usize>,
        mut in_queue: Vec<bool>,
    ) -> PropagationOutcome {
        store.drain_modified();
        let mut changed = Vec::new();
        let mut seen = vec![false; store.num_vars()];
        while let Some(p) = queue.pop_front() {
            in_queue[p] = false;
            self.calls += 1;
            if self.constraints[p].propagate(store).is_err() {
                store.drain_modified();
                return PropagationOutcome::Failure;
            }
            for v in store.drain_modified() {
                if !seen[v.0] {
                    seen[v.0] = true;
                    changed.push(v);
                }
                for &q in &self.watchers[v.0] {
                    if !in_queue[q] {
                        in_queue[q] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        changed.sort();
        PropagationOutcome::Fixpoint { changed }
    }
}

/// Runs every constraint of `model` over `domains` until nothing changes.
pub fn propagate_to_fixpoint(model: &Model, domains: &mut Vec<DomainSet>) -> PropagationOutcome {
    let mut engine = Engine::new(model.constraints().to_vec(), model.num_vars());
    let mut store = Store::new(std::mem::take(domains));
    let outcome = engine.propagate_all(&mut store);
    *domains = store.into_domains();
    outcome
}
