//! Generators for the bundled benchmark models and a DIMACS edge-list reader.
//!
//! All values are 0-based.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::domain::DomainSet;
use crate::error::{Error, Result};
use crate::model::{Model, ModelBuilder};
use crate::propagators::Constraint;
use crate::symmetry::{SymmetrySpec, ValuePermutation, VarValueSymmetry};

/// Hand-written symmetry-breaking constraints for the all-interval series.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AllIntervalExtras {
    /// `X_1 < X_n`, breaking reversal.
    pub first_below_last: bool,
    /// Lex-leader for value inversion.
    pub inversion_lex: bool,
    /// Lex-leader for reversal composed with inversion.
    pub composed_lex: bool,
}

impl AllIntervalExtras {
    pub const ALL: Self = Self {
        first_below_last: true,
        inversion_lex: true,
        composed_lex: true,
    };
}

/// Position reversal of the series.
pub fn all_interval_reversal(n: usize) -> VarValueSymmetry {
    VarValueSymmetry::reversal(n)
}

/// Value inversion `v ↦ n − 1 − v`.
pub fn all_interval_inversion(n: usize) -> VarValueSymmetry {
    VarValueSymmetry::value_only(n, ValuePermutation::inversion(n - 1))
}

/// Series `X_0..X_{n−1}` (variables `0..n`) over `0..n−1`, with difference
/// variables `D_i = |X_{i+1} − X_i|` (variables `n..2n−1`) over `1..n−1`.
pub fn build_all_interval(n: usize, extras: AllIntervalExtras) -> Result<Model> {
    if !(3..=14).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "all-interval length {n} not in 3..=14"
        )));
    }
    let mut b = ModelBuilder::new();
    b.name(format!("all-interval-{n}"));
    let xs = b.add_vars(n, DomainSet::range(0, n - 1));
    let ds = b.add_vars(n - 1, DomainSet::range(1, n - 1));
    b.post(Constraint::AllDifferent(xs.clone()));
    b.post(Constraint::AllDifferent(ds.clone()));
    for i in 0..n - 1 {
        b.post(Constraint::AbsDiff {
            x: xs[i],
            y: xs[i + 1],
            diff: ds[i],
        });
    }
    let reversal = all_interval_reversal(n);
    let inversion = all_interval_inversion(n);
    if extras.first_below_last {
        b.post(Constraint::Ordering {
            vars: vec![xs[0], xs[n - 1]],
            strict: true,
        });
    }
    if extras.inversion_lex {
        b.post(Constraint::LexLeader {
            scope: xs.clone(),
            symmetry: inversion.clone(),
        });
    }
    if extras.composed_lex {
        b.post(Constraint::LexLeader {
            scope: xs.clone(),
            symmetry: reversal.then(&inversion)?,
        });
    }
    b.symmetry(SymmetrySpec {
        scope: xs,
        explicit: vec![reversal, inversion],
        interchangeable: vec![],
    });
    b.build()
}

/// Graph coloring over `0..num_colors` with all colors interchangeable.
/// Edges use 0-based vertex indices.
pub fn build_coloring(
    num_vertices: usize,
    edges: &[(usize, usize)],
    num_colors: usize,
) -> Result<Model> {
    if num_colors == 0 {
        return Err(Error::OutOfRange("at least one color is required".into()));
    }
    let mut b = ModelBuilder::new();
    b.name(format!(
        "coloring-{num_vertices}v-{}e-{num_colors}c",
        edges.len()
    ));
    let xs = b.add_vars(num_vertices, DomainSet::range(0, num_colors - 1));
    for &(u, v) in edges {
        if u >= num_vertices || v >= num_vertices {
            return Err(Error::InvalidModel(format!(
                "edge ({u}, {v}) references a vertex outside 0..{num_vertices}"
            )));
        }
        if u == v {
            return Err(Error::InvalidModel(format!("self-loop on vertex {u}")));
        }
        b.post(Constraint::NotEqual(xs[u], xs[v]));
    }
    b.symmetry(SymmetrySpec {
        scope: xs,
        explicit: vec![],
        interchangeable: vec![(0..num_colors).collect()],
    });
    b.build()
}

/// A graph read from a DIMACS edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsGraph {
    pub num_vertices: usize,
    /// 0-based endpoints.
    pub edges: Vec<(usize, usize)>,
}

/// Parses `c` comment lines, one `p edge V E` header and `e u v` lines with
/// 1-based vertices.
pub fn parse_dimacs(text: &str) -> Result<DimacsGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let parse_num = |tok: Option<&str>, line: usize, what: &str| -> Result<usize> {
        tok.ok_or_else(|| Error::Parse {
            line,
            message: format!("missing {what}"),
        })?
        .parse()
        .map_err(|_| Error::Parse {
            line,
            message: format!("invalid {what}"),
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "duplicate problem line".into(),
                    });
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    _ => {
                        return Err(Error::Parse {
                            line,
                            message: "expected `p edge V E`".into(),
                        })
                    }
                }
                let v = parse_num(toks.next(), line, "vertex count")?;
                let e = parse_num(toks.next(), line, "edge count")?;
                header = Some((v, e));
            }
            Some("e") => {
                let Some((nv, _)) = header else {
                    return Err(Error::Parse {
                        line,
                        message: "edge before problem line".into(),
                    });
                };
                let u = parse_num(toks.next(), line, "edge endpoint")?;
                let v = parse_num(toks.next(), line, "edge endpoint")?;
                if u == 0 || v == 0 || u > nv || v > nv {
                    return Err(Error::Parse {
                        line,
                        message: format!("vertex out of range 1..={nv}"),
                    });
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(Error::Parse {
                    line,
                    message: format!("unexpected line type `{other}`"),
                })
            }
        }
    }
    let (num_vertices, declared) = header.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing problem line".into(),
    })?;
    if declared != edges.len() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("header declares {declared} edges, found {}", edges.len()),
        });
    }
    Ok(DimacsGraph {
        num_vertices,
        edges,
    })
}

/// Unsatisfiable pigeonhole-style family over `n` variables and `n + 1`
/// interchangeable values `0..=n`:
///
/// * for every `k ≥ 1`, `X_k` repeats `X_{k−1}` or takes a value unused by
///   `X_0..X_{k−1}` (checked once the prefix is fixed);
/// * every one of the `n + 1` values is used somewhere.
///
/// The second constraint alone is infeasible by counting, but its propagator
/// only notices once a value has at most one candidate variable.
pub fn build_pigeonhole(n: usize) -> Result<Model> {
    if !(2..=20).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "pigeonhole size {n} not in 2..=20"
        )));
    }
    let mut b = ModelBuilder::new();
    b.name(format!("pigeonhole-{n}"));
    let xs = b.add_vars(n, DomainSet::range(0, n));
    for k in 1..n {
        b.post(Constraint::RepeatOrFresh(xs[..=k].to_vec()));
    }
    b.post(Constraint::UsesAll {
        scope: xs.clone(),
        values: (0..=n).collect(),
    });
    b.symmetry(SymmetrySpec {
        scope: xs,
        explicit: vec![],
        interchangeable: vec![(0..=n).collect()],
    });
    b.build()
}

/// Random model with `n` variables whose values include an interchangeable
/// class of `m` values; constraints are disequalities (and sometimes an
/// all-different), so every permutation of the class is a symmetry.
pub fn build_random_interchangeable(n: usize, m: usize, seed: u64) -> Result<Model> {
    if n == 0 || m < 2 {
        return Err(Error::OutOfRange("need n ≥ 1 and m ≥ 2".into()));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let universe = m + usize::from(rng.random_bool(0.3));
    let mut class: Vec<usize> = (0..universe).collect();
    while class.len() > m {
        let drop = rng.random_range(0..class.len());
        class.remove(drop);
    }
    let mut b = ModelBuilder::new();
    b.name(format!("random-n{n}-m{m}-s{seed}"));
    let xs = b.add_vars(n, DomainSet::range(0, universe - 1));
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.35) {
                b.post(Constraint::NotEqual(xs[i], xs[j]));
            }
        }
    }
    if n >= 3 && rng.random_bool(0.3) {
        let start = rng.random_range(0..n - 2);
        b.post(Constraint::AllDifferent(xs[start..start + 3].to_vec()));
    }
    b.symmetry(SymmetrySpec {
        scope: xs,
        explicit: vec![],
        interchangeable: vec![class],
    });
    b.build()
}
