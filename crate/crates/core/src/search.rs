//! Depth-first search with k-way branching, per-mode symmetry handling and
//! run statistics.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::domain::{Assignment, DomainSet, VarId};
use crate::engine::{Engine, PropagationOutcome, Store};
use crate::error::{Error, Result};
use crate::model::Model;
use crate::propagators::{Constraint, FirstOccurrenceVars};
use crate::symmetry::{close_group, SymmetrySpec, VarValueSymmetry, DEFAULT_GROUP_CAP};

/// Default node budget for a single run.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryMode {
    None,
    /// Lex-leader constraint for every non-identity group element.
    StaticLex,
    /// `Precedence` per interchangeable class.
    Precedence,
    /// First-occurrence channeling plus a strict ordering chain per class.
    Channel,
    /// Branch on one value per orbit of the current stabilizer.
    GeTree,
}

impl SymmetryMode {
    pub const ALL: [SymmetryMode; 5] = [
        SymmetryMode::None,
        SymmetryMode::StaticLex,
        SymmetryMode::Precedence,
        SymmetryMode::Channel,
        SymmetryMode::GeTree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SymmetryMode::None => "none",
            SymmetryMode::StaticLex => "static-lex",
            SymmetryMode::Precedence => "precedence",
            SymmetryMode::Channel => "channel",
            SymmetryMode::GeTree => "getree",
        }
    }
}

impl fmt::Display for SymmetryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SymmetryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SymmetryMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnsupportedMode {
                mode: s.to_string(),
                reason: "unknown mode".into(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarOrder {
    InputOrder,
    MinDomain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValOrder {
    Ascending,
    Descending,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub var_order: VarOrder,
    pub val_order: ValOrder,
    pub symmetry_mode: SymmetryMode,
    /// `None` enumerates every solution.
    pub solution_limit: Option<usize>,
    /// Maximum number of search nodes.
    pub enumeration_budget: u64,
    pub group_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            var_order: VarOrder::InputOrder,
            val_order: ValOrder::Ascending,
            symmetry_mode: SymmetryMode::None,
            solution_limit: None,
            enumeration_budget: DEFAULT_BUDGET,
            group_cap: DEFAULT_GROUP_CAP,
        }
    }
}

impl SearchConfig {
    pub fn with_mode(mode: SymmetryMode) -> Self {
        Self {
            symmetry_mode: mode,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    /// Child edges explored; always `nodes - 1` with k-way branching.
    pub branches: u64,
    pub failures: u64,
    pub solutions: u64,
    pub propagation_calls: u64,
    pub max_depth: u64,
    pub elapsed: Duration,
}

impl SearchStats {
    /// Every counter except wall-clock time.
    pub fn counters(&self) -> [u64; 6] {
        [
            self.nodes,
            self.branches,
            self.failures,
            self.solutions,
            self.propagation_calls,
            self.max_depth,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub solutions: Vec<Assignment>,
    pub stats: SearchStats,
}

/// Branching decisions taken so far, in search order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    pub decisions: Vec<(VarId, usize)>,
}

impl PartialAssignment {
    pub fn values(&self) -> Vec<usize> {
        self.decisions.iter().map(|&(_, v)| v).collect()
    }
}

/// Dynamic value-symmetry filter used by GE-tree search.
#[derive(Debug, Clone)]
pub struct GeTreeFilter {
    kind: FilterKind,
}

#[derive(Debug, Clone)]
enum FilterKind {
    /// Group elements that fix every variable position.
    Explicit(Vec<VarValueSymmetry>),
    Classes(Vec<Vec<usize>>),
}

impl GeTreeFilter {
    /// Builds the filter and returns the variable-moving group elements that
    /// the filter cannot handle (callers post them as lex-leader constraints).
    pub fn new(spec: &SymmetrySpec, cap: usize) -> Result<(Self, Vec<VarValueSymmetry>)> {
        let has_explicit = spec.explicit.iter().any(|s| !s.is_identity());
        let has_classes = spec.interchangeable.iter().any(|c| c.len() > 1);
        match (has_explicit, has_classes) {
            (true, true) => Err(mixed_spec(SymmetryMode::GeTree)),
            (false, false) => Err(Error::UnsupportedMode {
                mode: SymmetryMode::GeTree.to_string(),
                reason: "the model declares no symmetry".into(),
            }),
            (false, true) => Ok((
                Self {
                    kind: FilterKind::Classes(spec.interchangeable.clone()),
                },
                Vec::new(),
            )),
            (true, false) => {
                let group = close_group(&spec.explicit, spec.scope.len(), cap)?;
                let (moving, fixed): (Vec<_>, Vec<_>) = group
                    .into_iter()
                    .partition(VarValueSymmetry::moves_variables);
                Ok((
                    Self {
                        kind: FilterKind::Explicit(fixed),
                    },
                    moving.into_iter().filter(|g| !g.is_identity()).collect(),
                ))
            }
        }
    }

    /// One representative (the orbit minimum) per orbit of the stabilizer of
    /// `used`, restricted to `domain`.
    pub fn allowed(&self, used: &[usize], domain: &DomainSet) -> DomainSet {
        match &self.kind {
            FilterKind::Explicit(group) => {
                let stab: Vec<&VarValueSymmetry> = group
                    .iter()
                    .filter(|g| used.iter().all(|&d| g.sigma().apply(d) == d))
                    .collect();
                domain
                    .iter()
                    .filter(|&v| stab.iter().all(|g| v <= g.sigma().apply(v)))
                    .collect()
            }
            FilterKind::Classes(classes) => domain
                .iter()
                .filter(|&v| match classes.iter().find(|c| c.contains(&v)) {
                    None => true,
                    Some(class) => {
                        used.contains(&v)
                            || class.iter().copied().filter(|c| !used.contains(c)).min() == Some(v)
                    }
                })
                .collect(),
        }
    }

    /// Whether every position of `prefix` holds an allowed representative
    /// given the values before it.
    pub fn prefix_ok(&self, prefix: &[usize]) -> bool {
        (0..prefix.len()).all(|k| {
            self.allowed(&prefix[..k], &DomainSet::singleton(prefix[k]))
                .contains(prefix[k])
        })
    }
}

/// Values of the next branching variable that GE-tree search explores, given
/// the decisions taken so far.
pub fn getree_allowed_values(
    partial: &PartialAssignment,
    next_var: VarId,
    spec: &SymmetrySpec,
    domains: &[DomainSet],
) -> Result<DomainSet> {
    let (filter, _) = GeTreeFilter::new(spec, DEFAULT_GROUP_CAP)?;
    Ok(filter.allowed(&partial.values(), &domains[next_var.0]))
}

fn mixed_spec(mode: SymmetryMode) -> Error {
    Error::UnsupportedMode {
        mode: mode.to_string(),
        reason: "models mixing explicit symmetries with interchangeable classes only support none and static-lex"
            .into(),
    }
}

/// Constraints and auxiliary variables a mode adds before search.
#[derive(Debug, Clone)]
pub struct Posted {
    pub extra_domains: Vec<DomainSet>,
    pub constraints: Vec<Constraint>,
    pub getree: Option<GeTreeFilter>,
}

pub fn post_symmetry_breaking(model: &Model, mode: SymmetryMode, cap: usize) -> Result<Posted> {
    let spec = model.symmetry();
    let scope = spec.scope.clone();
    let lex = |elems: Vec<VarValueSymmetry>| -> Vec<Constraint> {
        elems
            .into_iter()
            .filter(|g| !g.is_identity())
            .map(|symmetry| Constraint::LexLeader {
                scope: scope.clone(),
                symmetry,
            })
            .collect()
    };
    let mut posted = Posted {
        extra_domains: Vec::new(),
        constraints: Vec::new(),
        getree: None,
    };
    let has_explicit = spec.explicit.iter().any(|s| !s.is_identity());
    let classes: Vec<&Vec<usize>> = spec
        .interchangeable
        .iter()
        .filter(|c| c.len() > 1)
        .collect();
    match mode {
        SymmetryMode::None => {}
        SymmetryMode::StaticLex => posted.constraints = lex(spec.group(cap)?),
        SymmetryMode::Precedence | SymmetryMode::Channel => {
            if has_explicit && !classes.is_empty() {
                return Err(mixed_spec(mode));
            }
            if has_explicit {
                posted.constraints = lex(close_group(&spec.explicit, scope.len(), cap)?);
            }
            for class in classes {
                if mode == SymmetryMode::Precedence {
                    posted.constraints.push(Constraint::Precedence {
                        scope: scope.clone(),
                        values: class.clone(),
                    });
                    continue;
                }
                let base = model.num_vars() + posted.extra_domains.len();
                let z = FirstOccurrenceVars {
                    scope: scope.clone(),
                    values: class.clone(),
                    firsts: (base..base + class.len()).map(VarId).collect(),
                };
                posted
                    .extra_domains
                    .extend((0..class.len()).map(|r| z.initial_domain(r)));
                posted.constraints.push(Constraint::Ordering {
                    vars: z.firsts.clone(),
                    strict: true,
                });
                posted.constraints.push(Constraint::FirstOccurrence(z));
            }
        }
        SymmetryMode::GeTree => {
            let (filter, moving) = GeTreeFilter::new(spec, cap)?;
            posted.constraints = lex(moving);
            posted.getree = Some(filter);
        }
    }
    Ok(posted)
}

enum Flow {
    Continue,
    Stop,
}

struct Searcher<'a> {
    config: &'a SearchConfig,
    engine: Engine,
    scope: &'a [VarId],
    getree: Option<GeTreeFilter>,
    model_vars: usize,
    stats: SearchStats,
    solutions: Vec<Assignment>,
}

impl Searcher<'_> {
    fn visit(&mut self, mut store: Store, depth: u64, decided: Option<VarId>) -> Result<Flow> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.config.enumeration_budget {
            return Err(Error::BudgetExceeded(self.config.enumeration_budget));
        }
        self.stats.max_depth = self.stats.max_depth.max(depth);

        let outcome = match decided {
            None => self.engine.propagate_all(&mut store),
            Some(v) => self.engine.propagate_from(&mut store, &[v]),
        };
        if let PropagationOutcome::Failure = outcome {
            self.stats.failures += 1;
            return Ok(Flow::Continue);
        }

        let prefix: Vec<usize> = self.scope.iter().map_while(|&x| store.value(x)).collect();
        if let Some(filter) = &self.getree {
            if !filter.prefix_ok(&prefix) {
                self.stats.failures += 1;
                return Ok(Flow::Continue);
            }
        }

        let Some(var) = self.select(&store) else {
            let values = store.domains()[..self.model_vars]
                .iter()
                .map(|d| d.value().expect("every variable is fixed"))
                .collect();
            self.solutions.push(Assignment::new(values));
            self.stats.solutions += 1;
            if self.config.solution_limit == Some(self.solutions.len()) {
                return Ok(Flow::Stop);
            }
            return Ok(Flow::Continue);
        };

        let mut values: Vec<usize> = match &self.getree {
            Some(filter) if self.scope.get(prefix.len()) == Some(&var) => {
                filter.allowed(&prefix, store.dom(var)).iter().collect()
            }
            _ => store.dom(var).iter().collect(),
        };
        if values.is_empty() {
            self.stats.failures += 1;
            return Ok(Flow::Continue);
        }
        if self.config.val_order == ValOrder::Descending {
            values.reverse();
        }
        for v in values {
            self.stats.branches += 1;
            let mut child = store.clone();
            child
                .fix(var, v)
                .expect("branching value lies in the domain");
            if let Flow::Stop = self.visit(child, depth + 1, Some(var))? {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    fn select(&self, store: &Store) -> Option<VarId> {
        let unfixed = (0..store.num_vars())
            .map(VarId)
            .filter(|&v| !store.is_fixed(v));
        match self.config.var_order {
            VarOrder::InputOrder => unfixed.min(),
            VarOrder::MinDomain => unfixed.min_by_key(|&v| (store.dom(v).len(), v)),
        }
    }
}

/// Enumerates solutions of `model` under `config`; symmetry-breaking
/// constraints for static modes are posted before search starts.
pub fn solve(model: &Model, config: &SearchConfig) -> Result<Solution> {
    let start = Instant::now();
    let posted = post_symmetry_breaking(model, config.symmetry_mode, config.group_cap)?;
    let mut domains = model.initial_domains().to_vec();
    domains.extend(posted.extra_domains);
    let mut constraints = model.constraints().to_vec();
    constraints.extend(posted.constraints);

    let mut searcher = Searcher {
        config,
        engine: Engine::new(constraints, domains.len()),
        scope: &model.symmetry().scope,
        getree: posted.getree,
        model_vars: model.num_vars(),
        stats: SearchStats::default(),
        solutions: Vec::new(),
    };
    if config.solution_limit != Some(0) {
        searcher.visit(Store::new(domains), 0, None)?;
    }
    searcher.stats.propagation_calls = searcher.engine.calls();
    searcher.stats.elapsed = start.elapsed();
    Ok(Solution {
        solutions: searcher.solutions,
        stats: searcher.stats,
    })
}

/// One row of a method comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeRun {
    pub mode: SymmetryMode,
    pub stats: SearchStats,
    pub solutions: Vec<Assignment>,
}

/// Runs `solve` once per mode with otherwise identical settings, each mode
/// on its own thread.
pub fn compare_methods(
    model: &Model,
    modes: &[SymmetryMode],
    base: &SearchConfig,
) -> Result<Vec<ModeRun>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = modes
            .iter()
            .map(|&mode| {
                let config = SearchConfig {
                    symmetry_mode: mode,
                    ..base.clone()
                };
                s.spawn(move || {
                    solve(model, &config).map(|r| ModeRun {
                        mode,
                        stats: r.stats,
                        solutions: r.solutions,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    })
}
