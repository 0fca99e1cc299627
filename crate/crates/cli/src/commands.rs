use std::collections::HashMap;

use clap::ValueEnum;
use thiserror::Error;
use valsym::models::{
    build_all_interval, build_coloring, build_pigeonhole, parse_dimacs, AllIntervalExtras,
};
use valsym::search::DEFAULT_BUDGET;
use valsym::symmetry::{canonical_form, DEFAULT_GROUP_CAP};
use valsym::witness::{find_channel_witness, find_decomposition_witness, Witness};
use valsym::{
    compare_methods, orbit_partition, solve, Model, SearchConfig, SymmetryMode, ValOrder, VarOrder,
};

use crate::args::{
    CompareArgs, Extra, ModelArgs, ModelKind, SearchArgs, SolveArgs, ValOrderArg, VarOrderArg,
    VerifyArgs, WitnessArgs, WitnessKind,
};
use crate::report::{
    domain_values, ConfigEcho, ModeReport, ModeVerdict, ModelDescriptor, OrbitHits, RunReport,
    StatsReport, Verification, WitnessReport, SOLUTION_SAMPLE,
};

pub const BUDGET_ENV: &str = "VALSYM_BUDGET";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("enumeration budget of {0} nodes exceeded")]
    Budget(u64),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<valsym::Error> for CliError {
    fn from(e: valsym::Error) -> Self {
        match e {
            valsym::Error::BudgetExceeded(b) => CliError::Budget(b),
            valsym::Error::UnsupportedMode { .. } | valsym::Error::OutOfRange(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A finished command: its report and whether it counts as a pass.
pub struct Outcome {
    pub report: RunReport,
    pub passed: bool,
}

fn budget(flag: Option<u64>) -> CliResult<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV}={v:?} is not a node count"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn config(
    search: &SearchArgs,
    mode: SymmetryMode,
    limit: Option<usize>,
) -> CliResult<SearchConfig> {
    Ok(SearchConfig {
        var_order: match search.var_order {
            VarOrderArg::Input => VarOrder::InputOrder,
            VarOrderArg::MinDomain => VarOrder::MinDomain,
        },
        val_order: match search.val_order {
            ValOrderArg::Ascending => ValOrder::Ascending,
            ValOrderArg::Descending => ValOrder::Descending,
        },
        symmetry_mode: mode,
        solution_limit: limit,
        enumeration_budget: budget(search.budget)?,
        group_cap: DEFAULT_GROUP_CAP,
    })
}

fn echo(
    search: &SearchArgs,
    modes: &[SymmetryMode],
    limit: Option<usize>,
) -> CliResult<ConfigEcho> {
    Ok(ConfigEcho {
        modes: modes.iter().map(|m| m.to_string()).collect(),
        var_order: value_name(search.var_order),
        val_order: value_name(search.val_order),
        solution_limit: limit,
        budget: budget(search.budget)?,
    })
}

fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn extra_name(e: Extra) -> &'static str {
    match e {
        Extra::FirstBelowLast => "first-below-last",
        Extra::InversionLex => "inversion-lex",
        Extra::ComposedLex => "composed-lex",
    }
}

fn descriptor(args: &ModelArgs, n: Option<usize>) -> ModelDescriptor {
    ModelDescriptor {
        kind: match args.model {
            ModelKind::AllInterval => "all-interval",
            ModelKind::Coloring => "coloring",
            ModelKind::Pigeonhole => "pigeonhole",
        }
        .into(),
        n,
        file: args.file.as_ref().map(|p| p.display().to_string()),
        colors: args.colors,
        extras: args
            .extra
            .iter()
            .map(|&e| extra_name(e).to_string())
            .collect(),
    }
}

/// Builds the selected model of size `n`, with or without the requested extras.
fn build(args: &ModelArgs, n: Option<usize>, with_extras: bool) -> CliResult<Model> {
    if args.model != ModelKind::AllInterval && !args.extra.is_empty() {
        return Err(CliError::Usage(
            "--extra only applies to all-interval".into(),
        ));
    }
    if args.model != ModelKind::Coloring && (args.file.is_some() || args.colors.is_some()) {
        return Err(CliError::Usage(
            "--file and --colors only apply to coloring".into(),
        ));
    }
    let need_n = || n.ok_or_else(|| CliError::Usage("--n is required for this model".into()));
    let model = match args.model {
        ModelKind::AllInterval => {
            let mut extras = AllIntervalExtras::default();
            if with_extras {
                for e in &args.extra {
                    match e {
                        Extra::FirstBelowLast => extras.first_below_last = true,
                        Extra::InversionLex => extras.inversion_lex = true,
                        Extra::ComposedLex => extras.composed_lex = true,
                    }
                }
            }
            build_all_interval(need_n()?, extras)?
        }
        ModelKind::Pigeonhole => build_pigeonhole(need_n()?)?,
        ModelKind::Coloring => {
            let path = args
                .file
                .as_ref()
                .ok_or_else(|| CliError::Usage("--file is required for coloring".into()))?;
            let colors = args
                .colors
                .ok_or_else(|| CliError::Usage("--colors is required for coloring".into()))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let graph = parse_dimacs(&text).map_err(|e| match e {
                valsym::Error::Parse { line, message } => {
                    CliError::Input(format!("{}:{line}: {message}", path.display()))
                }
                other => other.into(),
            })?;
            build_coloring(graph.num_vertices, &graph.edges, colors)?
        }
    };
    Ok(model)
}

fn scope_values(model: &Model, sols: &[valsym::Assignment], cap: Option<usize>) -> Vec<Vec<usize>> {
    sols.iter()
        .take(cap.unwrap_or(usize::MAX))
        .map(|a| a.project(&model.symmetry().scope))
        .collect()
}

pub fn cmd_solve(args: &SolveArgs) -> CliResult<Outcome> {
    let mode = SymmetryMode::from(args.mode);
    let limit = if args.all {
        None
    } else {
        Some(args.limit.unwrap_or(1))
    };
    let model = build(&args.model, args.model.n, true)?;
    let sol = solve(&model, &config(&args.search, mode, limit)?)?;
    let report = RunReport {
        command: "solve".into(),
        model: descriptor(&args.model, args.model.n),
        config: echo(&args.search, &[mode], limit)?,
        runs: vec![ModeReport {
            model: model.name().into(),
            mode: mode.to_string(),
            stats: StatsReport::from(&sol.stats),
            solutions: scope_values(&model, &sol.solutions, None),
        }],
        verification: None,
        witness: None,
    };
    Ok(Outcome {
        report,
        passed: true,
    })
}

fn distinct_modes(modes: &[crate::args::ModeArg]) -> Vec<SymmetryMode> {
    let mut out: Vec<SymmetryMode> = Vec::new();
    for &m in modes {
        let m = SymmetryMode::from(m);
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

pub fn cmd_compare(args: &CompareArgs) -> CliResult<Outcome> {
    let modes = distinct_modes(&args.mode);
    if modes.len() < 2 {
        return Err(CliError::Usage(
            "compare needs at least two distinct modes".into(),
        ));
    }
    let sizes: Vec<Option<usize>> = match (args.model.n, args.n_to) {
        (_, None) => vec![args.model.n],
        (Some(lo), Some(hi)) if lo <= hi => (lo..=hi).map(Some).collect(),
        (Some(_), Some(_)) => return Err(CliError::Usage("--n-to must not be below --n".into())),
        (None, Some(_)) => return Err(CliError::Usage("--n-to needs --n".into())),
    };
    let limit = if args.all { None } else { args.limit };
    let base = config(&args.search, SymmetryMode::None, limit)?;
    let mut runs = Vec::new();
    for n in sizes {
        let model = build(&args.model, n, true)?;
        for run in compare_methods(&model, &modes, &base)? {
            runs.push(ModeReport {
                model: model.name().into(),
                mode: run.mode.to_string(),
                stats: StatsReport::from(&run.stats),
                solutions: scope_values(&model, &run.solutions, Some(SOLUTION_SAMPLE)),
            });
        }
    }
    let report = RunReport {
        command: "compare".into(),
        model: descriptor(&args.model, args.model.n),
        config: echo(&args.search, &modes, limit)?,
        runs,
        verification: None,
        witness: None,
    };
    Ok(Outcome {
        report,
        passed: true,
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let modes = if args.mode.is_empty() {
        vec![
            SymmetryMode::StaticLex,
            SymmetryMode::Precedence,
            SymmetryMode::Channel,
            SymmetryMode::GeTree,
        ]
    } else {
        distinct_modes(&args.mode)
    };
    let n = args.model.n;
    let base = build(&args.model, n, false)?;
    let checked = build(&args.model, n, true)?;
    let scope = &base.symmetry().scope;

    let reference = solve(&base, &config(&args.search, SymmetryMode::None, None)?)?;
    let ref_scope = scope_values(&base, &reference.solutions, None);
    let group = base.symmetry().group(DEFAULT_GROUP_CAP)?;
    let orbits = orbit_partition(&ref_scope, &group);
    let index: HashMap<&[usize], usize> = orbits
        .iter()
        .enumerate()
        .map(|(i, o)| (o.canonical.as_slice(), i))
        .collect();

    let mut runs = vec![ModeReport {
        model: base.name().into(),
        mode: SymmetryMode::None.to_string(),
        stats: StatsReport::from(&reference.stats),
        solutions: ref_scope.iter().take(SOLUTION_SAMPLE).cloned().collect(),
    }];
    let mut verdicts = Vec::new();
    for mode in modes {
        let sol = solve(&checked, &config(&args.search, mode, None)?)?;
        let mut hits = vec![0usize; orbits.len()];
        let mut verdict = ModeVerdict {
            mode: mode.to_string(),
            passed: false,
            solutions: sol.solutions.len(),
            duplicated: vec![],
            missing: vec![],
            non_canonical: vec![],
            invalid: vec![],
        };
        for a in &sol.solutions {
            let vals = a.project(scope);
            let canon = canonical_form(&vals, &group);
            match index.get(canon.as_slice()) {
                Some(&i) if base.is_solution(&a.values) => {
                    hits[i] += 1;
                    // every symmetry-breaking mode keeps the lex-least member
                    if mode != SymmetryMode::None && vals != canon {
                        verdict.non_canonical.push(vals);
                    }
                }
                _ => verdict.invalid.push(vals),
            }
        }
        for (o, &h) in orbits.iter().zip(&hits) {
            match h {
                0 => verdict.missing.push(o.canonical.clone()),
                1 => {}
                h => verdict.duplicated.push(OrbitHits {
                    canonical: o.canonical.clone(),
                    hits: h,
                }),
            }
        }
        verdict.passed = verdict.duplicated.is_empty()
            && verdict.missing.is_empty()
            && verdict.non_canonical.is_empty()
            && verdict.invalid.is_empty();
        runs.push(ModeReport {
            model: checked.name().into(),
            mode: mode.to_string(),
            stats: StatsReport::from(&sol.stats),
            solutions: scope_values(&checked, &sol.solutions, Some(SOLUTION_SAMPLE)),
        });
        verdicts.push(verdict);
    }
    let passed = verdicts.iter().all(|v| v.passed);
    let mode_list: Vec<SymmetryMode> = runs
        .iter()
        .skip(1)
        .map(|r| r.mode.parse().expect("mode name"))
        .collect();
    let report = RunReport {
        command: "verify".into(),
        model: descriptor(&args.model, n),
        config: echo(&args.search, &mode_list, None)?,
        runs,
        verification: Some(Verification {
            reference_solutions: ref_scope.len(),
            orbits: orbits.len(),
            verdicts,
            passed,
        }),
        witness: None,
    };
    Ok(Outcome { report, passed })
}

pub fn cmd_witness(args: &WitnessArgs) -> CliResult<Outcome> {
    let (kind, found) = match args.kind {
        WitnessKind::Decomposition => (
            "decomposition",
            find_decomposition_witness(args.seed, args.tries)?,
        ),
        WitnessKind::Channel => ("channel", find_channel_witness(args.seed, args.tries)?),
    };
    let passed = found.is_some();
    let w = found.unwrap_or(Witness {
        domains: vec![],
        symmetries: vec![],
        decomposed: None,
        exact: None,
    });
    let k = w
        .domains
        .iter()
        .filter_map(|d| d.max())
        .max()
        .map_or(0, |m| m + 1);
    let report = RunReport {
        command: "witness".into(),
        model: ModelDescriptor {
            kind: "random".into(),
            n: Some(w.domains.len()),
            file: None,
            colors: None,
            extras: vec![],
        },
        config: ConfigEcho {
            modes: vec![],
            var_order: "input".into(),
            val_order: "ascending".into(),
            solution_limit: None,
            budget: 0,
        },
        runs: vec![],
        verification: None,
        witness: Some(WitnessReport {
            kind: kind.into(),
            seed: args.seed,
            tries: args.tries,
            found: passed,
            domains: domain_values(&w.domains),
            symmetries: w
                .symmetries
                .iter()
                .map(|s| (0..k.max(s.image().len())).map(|v| s.apply(v)).collect())
                .collect(),
            decomposed: w.decomposed.as_deref().map(domain_values),
            exact: w.exact.as_deref().map(domain_values),
        }),
    };
    Ok(Outcome { report, passed })
}
