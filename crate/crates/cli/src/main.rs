mod config;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use binact::classgraph::{
    build_gamma, build_gamma_rational, dot_export, graph_summary, DotOptions, GraphSummary,
};
use binact::group::{
    conjugacy_class, max_fixity_classes, parse_group, parse_subgroup, rational_class,
    subgroups_conjugate, Action, FixityOrder,
};
use binact::relcomplex::{is_binary, rc_exact, BinaryVerdict, RCReport, Strategy, StrategySet};
use binact::verify::{self, run_suite, standard_s5_subgroups, SuiteConfig, VerificationResult};
use binact::{Error, PermGroup, Permutation};

use config::{Format, RunConfig};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BOUND: u8 = 3;
const EXIT_UNKNOWN: u8 = 4;

#[derive(Parser)]
#[command(
    name = "binact",
    version,
    about = "Class graphs, relational complexity and binary-action witnesses"
)]
struct Cli {
    /// Worker threads (0: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// json or text.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Override a setting or bound, e.g. `--set exhaustive_points=10`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build Γ(C) for a class given by a representative, or for the
    /// classes of maximal p-fixity in a coset action.
    Gamma {
        group: String,
        /// Class representative in 1-based cycle notation.
        class: Option<String>,
        #[arg(long)]
        order: Option<u64>,
        #[arg(long)]
        max_fixity: bool,
        /// Subgroup whose coset action defines fixity.
        #[arg(long)]
        action: Option<String>,
        /// Use the rational class.
        #[arg(long)]
        rational: bool,
        /// Write DOT here (`-` for stderr).
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Colour DOT vertices by component and list components in text output.
        #[arg(long)]
        components: bool,
    },
    /// Relational complexity of an action.
    Rc {
        group: String,
        #[arg(long, conflicts_with_all = ["regular", "subgroup"])]
        natural: bool,
        #[arg(long, conflicts_with = "subgroup")]
        regular: bool,
        /// Coset action on this subgroup.
        #[arg(long)]
        subgroup: Option<String>,
        /// Require the exact value.
        #[arg(long)]
        exact: bool,
    },
    /// Decide whether the coset action on a subgroup is binary.
    Witness {
        group: String,
        subgroup: String,
        /// Comma-separated strategies, tried in order.
        #[arg(long, value_delimiter = ',')]
        strategies: Vec<String>,
        /// Intermediate subgroup for the inheritance strategy.
        #[arg(long)]
        intermediate: Option<String>,
    },
    /// Verdicts for the coset actions of all subgroup classes.
    Enumerate { group: String },
    /// Run named verification checks.
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        #[arg(long)]
        trials: Option<usize>,
        /// Include the A_7 enumeration.
        #[arg(long)]
        a7: bool,
        /// Report zero runtimes so output is byte-identical across runs.
        #[arg(long)]
        no_timings: bool,
    },
}

struct Report {
    json: Value,
    text: String,
    code: u8,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BoundExceeded { .. } => EXIT_BOUND,
        Error::InvalidWitness(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn config(cli: &Cli) -> binact::Result<RunConfig> {
    let mut c = RunConfig::from_env()?;
    for kv in &cli.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        c.set(k, v)?;
    }
    if let Some(w) = cli.workers {
        c.workers = w;
    }
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if let Some(f) = &cli.format {
        c.set("format", f)?;
    }
    if let Some(o) = &cli.output {
        c.output = Some(o.clone());
    }
    Ok(c)
}

fn summary_text(s: &GraphSummary, components: bool) -> String {
    let mut t = format!(
        "{} class of {}: {} vertices, {} edges, {} components\n",
        s.group,
        s.class_rep,
        s.vertices,
        s.edges,
        s.components.len()
    );
    if components {
        for (i, c) in s.components.iter().enumerate() {
            t.push_str(&format!(
                "  component {i}: {} vertices, group order {}\n",
                c.size, c.group_order
            ));
        }
    }
    t
}

#[allow(clippy::too_many_arguments)]
fn cmd_gamma(
    cfg: &RunConfig,
    spec: &str,
    class: Option<&str>,
    order: Option<u64>,
    max_fixity: bool,
    action: Option<&str>,
    rational: bool,
    dot: Option<&PathBuf>,
    components: bool,
) -> binact::Result<Report> {
    let b = &cfg.bounds;
    let g = parse_group(spec)?;
    let classes = match (class, max_fixity) {
        (Some(rep), false) => {
            let x = Permutation::parse(g.degree(), rep)?;
            vec![if rational {
                rational_class(&g, &x, b)?
            } else {
                conjugacy_class(&g, &x, b)?
            }]
        }
        (None, true) => {
            let p = order.ok_or_else(|| Error::Parse("--max-fixity needs --order".into()))?;
            let h = parse_subgroup(
                &g,
                action.ok_or_else(|| Error::Parse("--max-fixity needs --action".into()))?,
            )?;
            let act = Action::coset(&g, &h, b)?;
            let mut out = Vec::new();
            for c in max_fixity_classes(&act, p, FixityOrder::Exact, b)? {
                out.push(if rational {
                    rational_class(&g, &c.representative, b)?
                } else {
                    c
                });
            }
            out
        }
        _ => {
            return Err(Error::Parse(
                "give a class representative or --max-fixity".into(),
            ))
        }
    };
    let mut summaries = Vec::new();
    let mut dots = String::new();
    let mut text = String::new();
    for c in &classes {
        let graph = if rational {
            build_gamma_rational(c, b)?
        } else {
            build_gamma(c, b)?
        };
        let s = graph_summary(&graph, spec);
        text.push_str(&summary_text(&s, components));
        if dot.is_some() {
            dots.push_str(&dot_export(&graph, &DotOptions { components }));
        }
        summaries.push(s);
    }
    if let Some(path) = dot {
        if path.as_os_str() == "-" {
            eprint!("{dots}");
        } else {
            fs::write(path, dots)
                .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    let json = if max_fixity {
        json!(summaries)
    } else {
        json!(summaries[0])
    };
    Ok(Report {
        json,
        text,
        code: 0,
    })
}

/// Natural action unless `--regular` or `--subgroup` is given.
fn action_for(
    g: &PermGroup,
    regular: bool,
    subgroup: Option<&str>,
    cfg: &RunConfig,
) -> binact::Result<Action> {
    if regular {
        Action::regular(g, &cfg.bounds)
    } else if let Some(s) = subgroup {
        Action::coset(g, &parse_subgroup(g, s)?, &cfg.bounds)
    } else {
        Ok(Action::natural(g))
    }
}

fn cmd_rc(
    cfg: &RunConfig,
    spec: &str,
    regular: bool,
    subgroup: Option<&str>,
    exact: bool,
) -> binact::Result<Report> {
    let g = parse_group(spec)?;
    let act = action_for(&g, regular, subgroup, cfg)?;
    let report = if exact || act.points() <= cfg.bounds.exhaustive_points {
        rc_exact(&act, &cfg.bounds)?
    } else {
        // binariness settles whether the complexity is 2
        let verdict = is_binary(&act, &StrategySet::default(), &cfg.bounds);
        let upper = act.points().max(2);
        let (lower, exact) = match verdict.is_binary() {
            Some(true) => (2, Some(2)),
            Some(false) => (3, None),
            None => (2, None),
        };
        RCReport {
            action: act.describe(),
            points: act.points(),
            lower_bound: lower,
            upper_bound: if exact.is_some() { 2 } else { upper },
            exact,
            certificate: None,
        }
    };
    let text = match report.exact {
        Some(k) => format!("{}: RC = {k}\n", report.action),
        None => format!(
            "{}: {} <= RC <= {}\n",
            report.action, report.lower_bound, report.upper_bound
        ),
    };
    let mut json = serde_json::to_value(&report).expect("serializable");
    if let Some(c) = &report.certificate {
        json["certificate"] = serde_json::to_value(c.one_based()).expect("serializable");
    }
    Ok(Report {
        json,
        text,
        code: 0,
    })
}

fn verdict_text(v: &BinaryVerdict) -> String {
    match v {
        BinaryVerdict::Binary { proof } => format!(
            "binary ({})",
            serde_json::to_value(proof)
                .expect("serializable")
                .as_str()
                .unwrap_or("")
        ),
        BinaryVerdict::NonBinary { witness } => format!(
            "not binary ({} witness; I = {:?}, J = {:?})",
            witness.kind_name(),
            witness.tuples.i.iter().map(|x| x + 1).collect::<Vec<_>>(),
            witness.tuples.j.iter().map(|x| x + 1).collect::<Vec<_>>()
        ),
        BinaryVerdict::Unknown { tried, .. } => format!("unknown (tried {})", tried.join(", ")),
    }
}

fn cmd_witness(
    cfg: &RunConfig,
    spec: &str,
    sub: &str,
    strategies: &[String],
    intermediate: Option<&str>,
) -> binact::Result<Report> {
    let g = parse_group(spec)?;
    let h = parse_subgroup(&g, sub)?;
    let mut sets = StrategySet::default();
    if !strategies.is_empty() {
        sets.strategies = strategies
            .iter()
            .map(|s| Strategy::parse(s))
            .collect::<binact::Result<_>>()?;
    }
    if let Some(m) = intermediate {
        sets.intermediate = Some(parse_subgroup(&g, m)?);
    }
    let act = Action::coset(&g, &h, &cfg.bounds)?;
    let verdict = is_binary(&act, &sets, &cfg.bounds);
    let code = if verdict.is_binary().is_none() {
        EXIT_UNKNOWN
    } else {
        0
    };
    let text = format!(
        "{spec} on cosets of a subgroup of order {} (index {}): {}\n",
        h.order(),
        act.points(),
        verdict_text(&verdict)
    );
    let json = json!({
        "group": spec,
        "subgroup": h.generators().iter().map(Permutation::to_string).collect::<Vec<_>>(),
        "subgroup_order": h.order(),
        "index": act.points(),
        "verdict": verdict,
    });
    Ok(Report { json, text, code })
}

fn cmd_enumerate(cfg: &RunConfig, spec: &str) -> binact::Result<Report> {
    let g = parse_group(spec)?;
    let mut rows = verify::enumerate_binary_actions(&g, &cfg.bounds)?;
    let standard = if g.same_group(&PermGroup::symmetric(5)) {
        standard_s5_subgroups()
    } else {
        Vec::new()
    };
    for r in rows.iter_mut() {
        if r.order == 1 {
            r.label = Some("1".into());
        } else if r.order == g.order() {
            r.label = Some(spec.to_string());
        } else {
            for (name, s) in &standard {
                if subgroups_conjugate(&g, s, &r.subgroup, &cfg.bounds)? {
                    r.label = Some(name.clone());
                    break;
                }
            }
        }
    }
    let binary = rows
        .iter()
        .filter(|r| r.verdict.is_binary() == Some(true))
        .count();
    let unknown = rows
        .iter()
        .filter(|r| r.verdict.is_binary().is_none())
        .count();
    let mut text = String::new();
    for r in &rows {
        let name = r
            .label
            .clone()
            .unwrap_or_else(|| format!("<{}>", r.generators.join(",")));
        text.push_str(&format!(
            "order {:>4} index {:>4} {name}: {}\n",
            r.order,
            r.index,
            verdict_text(&r.verdict)
        ));
    }
    text.push_str(&format!(
        "{binary} of {} classes binary, {unknown} unknown\n",
        rows.len()
    ));
    let json = json!({
        "group": spec,
        "order": g.order(),
        "classes": rows.len(),
        "binary": binary,
        "unknown": unknown,
        "actions": rows,
    });
    Ok(Report {
        json,
        text,
        code: if unknown > 0 { EXIT_UNKNOWN } else { 0 },
    })
}

fn cmd_verify(
    cfg: &RunConfig,
    suite: &[String],
    trials: Option<usize>,
    a7: bool,
    no_timings: bool,
) -> binact::Result<Report> {
    let sc = SuiteConfig {
        bounds: cfg.bounds.clone(),
        seed: cfg.seed,
        trials: trials.unwrap_or(cfg.trials),
        include_a7: a7,
        timings: cfg.timings && !no_timings,
    };
    let names: Vec<&str> = suite.iter().map(String::as_str).collect();
    let results: Vec<VerificationResult> = run_suite(&names, &sc)?;
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!(
            "{} {} [{}] expected {} computed {}\n",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            serde_json::to_value(r.provenance)
                .expect("serializable")
                .as_str()
                .unwrap_or(""),
            r.expected,
            r.computed
        ));
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    text.push_str(&format!("{} checks, {failed} failed\n", results.len()));
    Ok(Report {
        json: json!(results),
        text,
        code: if failed == 0 { 0 } else { EXIT_FAIL },
    })
}

fn run(cli: &Cli) -> binact::Result<(Report, RunConfig)> {
    let cfg = config(cli)?;
    if cfg.workers > 0 {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build_global();
    }
    let report = match &cli.command {
        Command::Gamma {
            group,
            class,
            order,
            max_fixity,
            action,
            rational,
            dot,
            components,
        } => cmd_gamma(
            &cfg,
            group,
            class.as_deref(),
            *order,
            *max_fixity,
            action.as_deref(),
            *rational,
            dot.as_ref(),
            *components,
        )?,
        Command::Rc {
            group,
            regular,
            subgroup,
            exact,
            ..
        } => cmd_rc(&cfg, group, *regular, subgroup.as_deref(), *exact)?,
        Command::Witness {
            group,
            subgroup,
            strategies,
            intermediate,
        } => cmd_witness(&cfg, group, subgroup, strategies, intermediate.as_deref())?,
        Command::Enumerate { group } => cmd_enumerate(&cfg, group)?,
        Command::Verify {
            suite,
            trials,
            a7,
            no_timings,
        } => cmd_verify(&cfg, suite, *trials, *a7, *no_timings)?,
    };
    Ok((report, cfg))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (report, cfg) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("binact: {e}");
            if matches!(e, Error::BoundExceeded { .. }) {
                eprintln!("hint: raise the bound with --set, or use `binact witness` to decide binariness");
            }
            return ExitCode::from(exit_code(&e));
        }
    };
    let body = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable") + "\n",
        Format::Text => report.text,
    };
    match &cfg.output {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                eprintln!("binact: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_FAIL);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(report.code)
}
