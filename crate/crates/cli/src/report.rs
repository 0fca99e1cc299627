//! Serializable run reports and their table rendering.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use valsym::{DomainSet, SearchStats};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub model: ModelDescriptor,
    pub config: ConfigEcho,
    pub runs: Vec<ModeReport>,
    pub verification: Option<Verification>,
    pub witness: Option<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub kind: String,
    pub n: Option<usize>,
    pub file: Option<String>,
    pub colors: Option<usize>,
    pub extras: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub modes: Vec<String>,
    pub var_order: String,
    pub val_order: String,
    pub solution_limit: Option<usize>,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeReport {
    /// Instance name, e.g. `pigeonhole-7`.
    pub model: String,
    pub mode: String,
    pub stats: StatsReport,
    /// Scope values of the solutions, at most [`SOLUTION_SAMPLE`] unless
    /// every solution was requested.
    pub solutions: Vec<Vec<usize>>,
}

/// Solutions listed per run when the whole set was not explicitly requested.
pub const SOLUTION_SAMPLE: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub nodes: u64,
    pub branches: u64,
    pub failures: u64,
    pub solutions: u64,
    pub propagation_calls: u64,
    pub max_depth: u64,
    pub elapsed_ms: f64,
}

impl From<&SearchStats> for StatsReport {
    fn from(s: &SearchStats) -> Self {
        Self {
            nodes: s.nodes,
            branches: s.branches,
            failures: s.failures,
            solutions: s.solutions,
            propagation_calls: s.propagation_calls,
            max_depth: s.max_depth,
            elapsed_ms: s.elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    /// Solutions of the unbroken model.
    pub reference_solutions: usize,
    pub orbits: usize,
    pub verdicts: Vec<ModeVerdict>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeVerdict {
    pub mode: String,
    pub passed: bool,
    pub solutions: usize,
    /// Orbits (by canonical member) hit more than once, with the count.
    pub duplicated: Vec<OrbitHits>,
    /// Canonical members of orbits with no returned solution.
    pub missing: Vec<Vec<usize>>,
    /// Returned solutions that are not the canonical member of their orbit.
    pub non_canonical: Vec<Vec<usize>>,
    /// Returned assignments that are not solutions of the unbroken model.
    pub invalid: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitHits {
    pub canonical: Vec<usize>,
    pub hits: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub kind: String,
    pub seed: u64,
    pub tries: usize,
    pub found: bool,
    pub domains: Vec<Vec<usize>>,
    /// Value permutations as images of `0, 1, …`.
    pub symmetries: Vec<Vec<usize>>,
    pub decomposed: Option<Vec<Vec<usize>>>,
    pub exact: Option<Vec<Vec<usize>>>,
}

pub fn domain_values(doms: &[DomainSet]) -> Vec<Vec<usize>> {
    doms.iter().map(|d| d.iter().collect()).collect()
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn set(v: &[usize]) -> String {
    format!(
        "{{{}}}",
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if let Some(w) = &self.witness {
            render_witness(&mut out, w);
            return out;
        }
        let single = self.runs.len() == 1;
        if single {
            let run = &self.runs[0];
            for (i, s) in run.solutions.iter().enumerate() {
                let _ = writeln!(out, "solution {}: {}", i + 1, join(s));
            }
            if (run.solutions.len() as u64) < run.stats.solutions {
                let _ = writeln!(
                    out,
                    "… {} more",
                    run.stats.solutions - run.solutions.len() as u64
                );
            }
        }
        let _ = writeln!(
            out,
            "{:<20} {:<11} {:>10} {:>10} {:>10} {:>10} {:>12} {:>6} {:>10}",
            "model",
            "mode",
            "nodes",
            "branches",
            "failures",
            "solutions",
            "propagations",
            "depth",
            "time(ms)"
        );
        for r in &self.runs {
            let s = &r.stats;
            let _ = writeln!(
                out,
                "{:<20} {:<11} {:>10} {:>10} {:>10} {:>10} {:>12} {:>6} {:>10.2}",
                r.model,
                r.mode,
                s.nodes,
                s.branches,
                s.failures,
                s.solutions,
                s.propagation_calls,
                s.max_depth,
                s.elapsed_ms
            );
        }
        if let Some(v) = &self.verification {
            let _ = writeln!(
                out,
                "reference: {} solutions in {} orbits",
                v.reference_solutions, v.orbits
            );
            for m in &v.verdicts {
                let _ = writeln!(
                    out,
                    "{:<11} {} ({} solutions)",
                    m.mode,
                    if m.passed { "PASS" } else { "FAIL" },
                    m.solutions
                );
                for d in &m.duplicated {
                    let _ = writeln!(out, "  orbit {} hit {} times", set(&d.canonical), d.hits);
                }
                for c in &m.missing {
                    let _ = writeln!(out, "  orbit {} missing", set(c));
                }
                for c in &m.non_canonical {
                    let _ = writeln!(out, "  non-canonical solution {}", set(c));
                }
                for c in &m.invalid {
                    let _ = writeln!(out, "  invalid solution {}", set(c));
                }
            }
            let _ = writeln!(out, "verdict: {}", if v.passed { "PASS" } else { "FAIL" });
        }
        out
    }
}

fn render_witness(out: &mut String, w: &WitnessReport) {
    if !w.found {
        let _ = writeln!(
            out,
            "no {} witness in {} tries (seed {})",
            w.kind, w.tries, w.seed
        );
        return;
    }
    let doms = |d: &Option<Vec<Vec<usize>>>| match d {
        None => "failure".to_string(),
        Some(d) => d.iter().map(|x| set(x)).collect::<Vec<_>>().join(" "),
    };
    let _ = writeln!(out, "{} witness (seed {})", w.kind, w.seed);
    let _ = writeln!(out, "domains:     {}", doms(&Some(w.domains.clone())));
    for s in &w.symmetries {
        let _ = writeln!(
            out,
            "symmetry:    {}",
            s.iter()
                .enumerate()
                .map(|(a, b)| format!("{a}->{b}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    let _ = writeln!(out, "decomposed:  {}", doms(&w.decomposed));
    let _ = writeln!(out, "exact:       {}", doms(&w.exact));
}
