//! The `dtcheck` command line: loads model and DAG files, evaluates
//! statements, runs the consistency checks, lemma suites, g-computation and
//! lab searches, and reports as text or JSON.
//!
//! Exit codes: 0 holds or passes, 1 fails or a counterexample was found,
//! 2 usage or input error, 3 vacuous or nothing found.

pub mod formats;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dtcheck_core::consistency::{
    admissible_bindings, check_all_targets, check_distributional_consistency, run_suite, ImplicationReport,
    LemmaBinding, LemmaChecker, LemmaId, Structure,
};
use dtcheck_core::dag::{
    d_separated, implied_independencies, local_markov_statements, validate_dag, verify_local_markov,
};
use dtcheck_core::eci::{evaluate, parse_statement};
use dtcheck_core::gcomp::{check_corrected_condition, verify_identification, SequentialProblem};
use dtcheck_core::lab::{
    build_fat_hand_model, contextual_demo, search_eq13_counterexample, search_vi_counterexample, ContextualKind,
    ContextualParams, FatHandParams, SearchConfig, SearchOutcome,
};
use dtcheck_core::model::validate_model;
use dtcheck_core::random::{GeneratorConfig, GeneratorKind};
use dtcheck_core::{MultiRegimeModel, Outcome, Verdict, DEFAULT_TOL};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use formats::{load_dag, load_model, save_model, FormatError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VACUOUS: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "dtcheck",
    version,
    about = "Checks extended conditional independence, consistency and identification on discrete multi-regime models"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Tolerance on total-variation distances.
    #[arg(long, default_value_t = DEFAULT_TOL, global = true)]
    tol: f64,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a model file and/or a DAG file for structural problems.
    Validate {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        dag: Option<PathBuf>,
    },
    /// Evaluate one statement, e.g. "Y _||_ F(T) | T".
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        stmt: String,
    },
    /// Distributional consistency for one target or all of them.
    Dc {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        target: Option<String>,
    },
    /// Check one lemma instance, or every admissible one when no binding
    /// is given.
    Lemma {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        lemma: String,
        /// Binding entries such as `B=T` or `W=S,Y`; repeatable.
        #[arg(long = "bind")]
        bind: Vec<String>,
        /// Take order and parents from this DAG instead of the complete
        /// declaration-order structure.
        #[arg(long)]
        dag: Option<PathBuf>,
    },
    /// Run lemmas over a generated corpus.
    Suite {
        /// Lemma ids; all of them when omitted.
        #[arg(long)]
        lemma: Vec<String>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Generator::Structural)]
        generator: Generator,
        #[arg(long, default_value_t = 4)]
        max_vars: usize,
        #[arg(long, default_value_t = 2)]
        max_card: usize,
        #[arg(long, default_value_t = 2)]
        max_targets: usize,
    },
    /// d-separation on a DAG, or the list of implied independencies.
    Dsep {
        #[arg(long)]
        dag: PathBuf,
        #[arg(long, value_delimiter = ',')]
        x: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        y: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        z: Vec<String>,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 2)]
        max_cond: usize,
    },
    /// List the local Markov statements of a DAG, or verify them on a model.
    Markov {
        #[arg(long)]
        dag: PathBuf,
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Two-stage g-computation against the interventional regime.
    Gcomp {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        x0: String,
        #[arg(long)]
        x1: String,
        #[arg(long, default_value = "X0")]
        x0_var: String,
        #[arg(long, value_delimiter = ',', default_value = "Z")]
        z: Vec<String>,
        #[arg(long, default_value = "X1")]
        x1_var: String,
        #[arg(long, default_value = "Y")]
        y_var: String,
    },
    /// Counterexample searches and demonstrations.
    Lab {
        #[command(subcommand)]
        command: LabCommand,
    },
}

#[derive(Debug, Subcommand)]
enum LabCommand {
    /// Search non-product regime families for a lemma counterexample.
    Vi {
        #[arg(long, default_value = "L3_PROMOTE")]
        lemma: String,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        /// Keep the full regime product.
        #[arg(long)]
        vi_only: bool,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        /// Write a found model here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a model satisfying the local Markov statements of its DAG
    /// while the marginal node statement fails.
    Eq13 {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        max_vars: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Response reads the intention: ignorability holds against the graph.
    FatHand,
    /// Checked against full indicator conditioning.
    Contextual {
        #[arg(long, value_enum, default_value_t = Kind::Mediator)]
        kind: Kind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Generator {
    Structural,
    ConsistentRandom,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Mediator,
    InterventionFlag,
    ConstantResponse,
}

/// The structured report envelope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub outcome: String,
    pub exit_code: i32,
    pub result: Value,
}

struct Reply {
    code: i32,
    outcome: &'static str,
    text: String,
    data: Value,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] dtcheck_core::Error),
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Usage(String),
}

type CliResult = Result<Reply, CliError>;

fn outcome_code(o: Outcome) -> (i32, &'static str) {
    match o {
        Outcome::Holds => (EXIT_OK, "holds"),
        Outcome::Fails => (EXIT_FAIL, "fails"),
        Outcome::Vacuous => (EXIT_VACUOUS, "vacuous"),
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    outcome_code(o).1
}

fn verdict_text(model: &MultiRegimeModel, v: &Verdict) -> String {
    let mut s = format!(
        "verdict: {}\nmax discrepancy: {:e}\ncomparisons: {}\n",
        outcome_name(v.outcome),
        v.max_discrepancy,
        v.comparisons
    );
    if let Some(w) = &v.witness {
        let _ = writeln!(s, "witness: {}", w.describe(model));
    }
    if !v.skipped_regimes.is_empty() {
        let names: Vec<String> = v.skipped_regimes.iter().map(|r| model.describe_regime(r)).collect();
        let _ = writeln!(s, "skipped absent regimes: {}", names.join("; "));
    }
    s
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn verdict_reply(model: &MultiRegimeModel, v: &Verdict, data: Value) -> Reply {
    let (code, outcome) = outcome_code(v.outcome);
    Reply {
        code,
        outcome,
        text: verdict_text(model, v),
        data,
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit code and the report to print on standard output.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let name = command_name(&cli.command);
    let format = cli.format;
    match dispatch(cli) {
        Ok(r) => {
            let out = match format {
                Format::Text => format!("{}outcome: {}\n", r.text, r.outcome),
                Format::Structured => {
                    let report = Report {
                        command: name.into(),
                        outcome: r.outcome.into(),
                        exit_code: r.code,
                        result: r.data,
                    };
                    serde_json::to_string_pretty(&report).expect("serializable report") + "\n"
                }
            };
            (r.code, out)
        }
        Err(e) => {
            let out = match format {
                Format::Text => format!("error: {e}\n"),
                Format::Structured => {
                    let report = Report {
                        command: name.into(),
                        outcome: "error".into(),
                        exit_code: EXIT_USAGE,
                        result: json!({ "error": e.to_string() }),
                    };
                    serde_json::to_string_pretty(&report).expect("serializable report") + "\n"
                }
            };
            (EXIT_USAGE, out)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Eval { .. } => "eval",
        Command::Dc { .. } => "dc",
        Command::Lemma { .. } => "lemma",
        Command::Suite { .. } => "suite",
        Command::Dsep { .. } => "dsep",
        Command::Markov { .. } => "markov",
        Command::Gcomp { .. } => "gcomp",
        Command::Lab { command } => match command {
            LabCommand::Vi { .. } => "lab vi",
            LabCommand::Eq13 { .. } => "lab eq13",
            LabCommand::FatHand => "lab fat-hand",
            LabCommand::Contextual { .. } => "lab contextual",
        },
    }
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol >= 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--tol must be a non-negative number, got {tol}"
        )))
    }
}

fn dispatch(cli: Cli) -> CliResult {
    let tol = cli.tol;
    check_tol(tol)?;
    let seed = cli.seed;
    match cli.command {
        Command::Validate { model, dag } => validate(model, dag),
        Command::Eval { model, stmt } => {
            let m = load_model(&model)?;
            let s = parse_statement(&stmt)
                .map_err(|e| CliError::Syntax(format!("{e}\n  {stmt}\n  {}^", " ".repeat(e.position))))?;
            let v = evaluate(&m, &s, tol)?;
            let mut r = verdict_reply(&m, &v, json!({ "statement": s.to_string(), "verdict": to_value(&v) }));
            r.text = format!("statement: {s}\n{}", r.text);
            Ok(r)
        }
        Command::Dc { model, target } => {
            let m = load_model(&model)?;
            let v = match &target {
                Some(t) => check_distributional_consistency(&m, t, tol)?,
                None => check_all_targets(&m, tol)?,
            };
            let mut r = verdict_reply(&m, &v, json!({ "target": target, "verdict": to_value(&v) }));
            let what = target.map_or_else(|| "every target".to_string(), |t| format!("target {t}"));
            r.text = format!("distributional consistency for {what}\n{}", r.text);
            Ok(r)
        }
        Command::Lemma {
            model,
            lemma,
            bind,
            dag,
        } => lemma_cmd(model, &lemma, &bind, dag, tol),
        Command::Suite {
            lemma,
            trials,
            generator,
            max_vars,
            max_card,
            max_targets,
        } => {
            let lemmas = parse_lemmas(&lemma)?;
            let config = GeneratorConfig {
                kind: match generator {
                    Generator::Structural => GeneratorKind::Structural,
                    Generator::ConsistentRandom => GeneratorKind::ConsistentRandom,
                    Generator::Random => GeneratorKind::Random,
                },
                max_vars,
                max_card,
                max_targets,
                ..GeneratorConfig::default()
            };
            let rep = run_suite(&config, &lemmas, trials, seed, tol)?;
            let mut text = format!(
                "trials: {}  seed: {}  variation-independent models: {}\n",
                rep.trials, rep.seed, rep.variation_independent_models
            );
            let _ = writeln!(
                text,
                "{:<18} {:>9} {:>9} {:>9} {:>9}",
                "lemma", "instances", "premise", "concl", "failures"
            );
            for l in &rep.lemmas {
                let _ = writeln!(
                    text,
                    "{:<18} {:>9} {:>9} {:>9} {:>9}",
                    l.lemma.as_str(),
                    l.instances,
                    l.premise_holds,
                    l.conclusion_holds,
                    l.implication_failures
                );
                for f in &l.failures {
                    let _ = writeln!(
                        text,
                        "  trial {} seed {} [{}]: {}",
                        f.trial, f.model_seed, f.binding, f.description
                    );
                }
            }
            if rep.stepwise_checked > 0 {
                let _ = writeln!(
                    text,
                    "stepwise agreement: {}/{}",
                    rep.stepwise_agreed, rep.stepwise_checked
                );
            }
            let failed = rep.total_failures() > 0 || rep.stepwise_agreed != rep.stepwise_checked;
            Ok(Reply {
                code: if failed { EXIT_FAIL } else { EXIT_OK },
                outcome: if failed { "fails" } else { "holds" },
                text,
                data: to_value(&rep),
            })
        }
        Command::Dsep {
            dag,
            x,
            y,
            z,
            list,
            max_cond,
        } => {
            let d = load_dag(&dag)?;
            if list {
                let triples = implied_independencies(&d, max_cond);
                let mut text = String::new();
                for t in &triples {
                    let _ = writeln!(text, "{} _||_ {} | {}", t.x, t.y, t.z.join(", "));
                }
                let _ = writeln!(text, "{} independencies", triples.len());
                return Ok(Reply {
                    code: EXIT_OK,
                    outcome: "listed",
                    text,
                    data: to_value(&triples),
                });
            }
            if x.is_empty() || y.is_empty() {
                return Err(CliError::Usage("dsep needs --x and --y, or --list".into()));
            }
            let sep = d_separated(&d, &x, &y, &z)?;
            let text = format!(
                "{} and {} are {} given {{{}}}\n",
                x.join(","),
                y.join(","),
                if sep { "d-separated" } else { "d-connected" },
                z.join(",")
            );
            Ok(Reply {
                code: if sep { EXIT_OK } else { EXIT_FAIL },
                outcome: if sep { "separated" } else { "connected" },
                text,
                data: json!({ "x": x, "y": y, "z": z, "separated": sep }),
            })
        }
        Command::Markov { dag, model } => {
            let d = load_dag(&dag)?;
            let Some(model) = model else {
                let lm = local_markov_statements(&d);
                let mut text = String::new();
                for l in &lm {
                    let _ = writeln!(text, "{}: {}", l.subject, l.statement);
                }
                return Ok(Reply {
                    code: EXIT_OK,
                    outcome: "listed",
                    text,
                    data: to_value(&lm),
                });
            };
            let m = load_model(&model)?;
            let results = verify_local_markov(&m, &d, tol)?;
            let all = Verdict::all(results.iter().map(|(_, v)| v));
            let mut text = String::new();
            for (l, v) in &results {
                let _ = writeln!(text, "{:<8} {}", outcome_name(v.outcome), l.statement);
            }
            let mut r = verdict_reply(&m, &all, to_value(&results));
            r.text = text + &r.text;
            Ok(r)
        }
        Command::Gcomp {
            model,
            x0,
            x1,
            x0_var,
            z,
            x1_var,
            y_var,
        } => {
            let m = load_model(&model)?;
            let zs: Vec<&str> = z.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
            let p = SequentialProblem::new(&x0_var, &zs, &x1_var, &y_var, &x0, &x1);
            let rep = verify_identification(&m, &p, tol)?;
            let corrected = check_corrected_condition(&m, &p, tol)?;
            let text = format!(
                "g-formula:      {:?}\ninterventional: {:?}\ndistance: {:e}\nidentification: {}\ncondition {}: {}\n",
                rep.g_formula,
                rep.interventional,
                rep.distance,
                if rep.pass { "pass" } else { "fail" },
                p.corrected_statement(),
                outcome_name(corrected.outcome)
            );
            Ok(Reply {
                code: if rep.pass { EXIT_OK } else { EXIT_FAIL },
                outcome: if rep.pass { "pass" } else { "fails" },
                text,
                data: json!({ "identification": to_value(&rep), "condition": to_value(&corrected) }),
            })
        }
        Command::Lab { command } => lab(command, seed, tol),
    }
}

fn parse_lemmas(ids: &[String]) -> Result<Vec<LemmaId>, CliError> {
    if ids.is_empty() {
        return Ok(LemmaId::ALL.to_vec());
    }
    ids.iter()
        .flat_map(|s| s.split(','))
        .map(|s| s.trim().parse::<LemmaId>().map_err(CliError::from))
        .collect()
}

fn validate(model: Option<PathBuf>, dag: Option<PathBuf>) -> CliResult {
    if model.is_none() && dag.is_none() {
        return Err(CliError::Usage("validate needs --model and/or --dag".into()));
    }
    let mut text = String::new();
    let mut problems = 0;
    let mut data = json!({});
    if let Some(p) = model {
        let m = load_model(&p)?;
        let diags = validate_model(&m);
        for d in &diags {
            let _ = writeln!(text, "model {}: {}: {}", d.location, d.kind, d.message);
        }
        problems += diags.len();
        data["model"] = to_value(&diags);
    }
    if let Some(p) = dag {
        let d = load_dag(&p)?;
        let diags = validate_dag(&d);
        for d in &diags {
            let _ = writeln!(text, "dag: {}: {}", d.kind, d.message);
        }
        problems += diags.len();
        data["dag"] = to_value(&diags);
    }
    let _ = writeln!(text, "{problems} problem(s)");
    Ok(Reply {
        code: if problems == 0 { EXIT_OK } else { EXIT_FAIL },
        outcome: if problems == 0 { "valid" } else { "invalid" },
        text,
        data,
    })
}

fn report_text(model: &MultiRegimeModel, r: &ImplicationReport) -> String {
    let mut s = format!("{} [{}]\n", r.lemma, r.binding);
    for c in &r.claims {
        let _ = writeln!(s, "  {:?} {}: {}", c.role, c.label, outcome_name(c.verdict.outcome));
    }
    let _ = writeln!(
        s,
        "  premise: {}  conclusion: {}  implication: {}",
        outcome_name(r.premise.outcome),
        outcome_name(r.conclusion.outcome),
        if r.implication_ok { "ok" } else { "FAILED" }
    );
    if !r.implication_ok {
        if let Some(w) = &r.conclusion.witness {
            let _ = writeln!(s, "  witness: {}", w.describe(model));
        }
    }
    s
}

fn lemma_cmd(model: PathBuf, lemma: &str, bind: &[String], dag: Option<PathBuf>, tol: f64) -> CliResult {
    let m = load_model(&model)?;
    let id: LemmaId = lemma.parse()?;
    let structure = match dag {
        Some(p) => load_dag(&p)?.structure(&m)?,
        None => Structure::complete(&m),
    };
    let bindings = if bind.is_empty() {
        admissible_bindings(&m, id, Some(&structure))
    } else {
        let mut pairs = Vec::new();
        for b in bind {
            let (k, v) = b
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("binding `{b}` is not KEY=VALUE")))?;
            pairs.push((k, v));
        }
        let mut bd = LemmaBinding::parse(&m, &pairs)?;
        if id.needs_structure() {
            bd.structure = Some(structure);
        }
        vec![bd]
    };
    let mut checker = LemmaChecker::new(&m, tol);
    let reports = bindings
        .iter()
        .map(|b| checker.check(id, b))
        .collect::<Result<Vec<_>, _>>()?;
    let text: String = reports.iter().map(|r| report_text(&m, r)).collect();
    let (code, outcome) = if reports.iter().any(|r| !r.implication_ok) {
        (EXIT_FAIL, "fails")
    } else if reports.iter().any(ImplicationReport::premise_holds) {
        (EXIT_OK, "holds")
    } else {
        (EXIT_VACUOUS, "vacuous")
    };
    Ok(Reply {
        code,
        outcome,
        text: text + &format!("{} instance(s): {outcome}\n", reports.len()),
        data: to_value(&reports),
    })
}

fn lab(command: LabCommand, seed: u64, tol: f64) -> CliResult {
    match command {
        LabCommand::Vi {
            lemma,
            trials,
            vi_only,
            max_vars,
            out,
        } => {
            let id: LemmaId = lemma.parse()?;
            let config = SearchConfig {
                max_vars,
                budget: trials,
                seed,
                tol,
                variation_independent_only: vi_only,
                ..SearchConfig::default()
            };
            match search_vi_counterexample(&config, id)? {
                SearchOutcome::Found(cx) => {
                    if let Some(p) = out {
                        save_model(&p, &cx.model)?;
                    }
                    let missing: Vec<String> = cx.missing_regimes.iter().map(|r| cx.model.describe_regime(r)).collect();
                    let text = format!(
                        "counterexample found at trial {}\nmissing regimes: {}\n{}",
                        cx.trial,
                        missing.join("; "),
                        report_text(&cx.model, &cx.report)
                    );
                    Ok(Reply {
                        code: EXIT_FAIL,
                        outcome: "found",
                        text,
                        data: json!({
                            "trial": cx.trial,
                            "model": to_value(&cx.model),
                            "certificate": {
                                "lemma": id.as_str(),
                                "binding": cx.report.binding,
                                "premise": to_value(&cx.report.premise),
                                "conclusion": to_value(&cx.report.conclusion),
                                "missing_regimes": missing,
                            }
                        }),
                    })
                }
                SearchOutcome::NotFound { trials } => Ok(not_found(trials)),
            }
        }
        LabCommand::Eq13 { trials, max_vars, out } => {
            let config = SearchConfig {
                min_vars: 3,
                max_vars,
                budget: trials,
                seed,
                tol,
                ..SearchConfig::default()
            };
            match search_eq13_counterexample(&config)? {
                SearchOutcome::Found(cx) => {
                    if let Some(p) = out {
                        save_model(&p, &cx.model)?;
                    }
                    let mut text = format!("instance found at trial {}\nlocal Markov statements:\n", cx.trial);
                    for (l, v) in &cx.markov {
                        let _ = writeln!(text, "  {:<8} {}", outcome_name(v.outcome), l.statement);
                    }
                    let _ = writeln!(text, "statement {}: {}", cx.statement, outcome_name(cx.verdict.outcome));
                    text += &verdict_text(&cx.model, &cx.verdict);
                    Ok(Reply {
                        code: EXIT_FAIL,
                        outcome: "found",
                        text,
                        data: json!({
                            "trial": cx.trial,
                            "dag": to_value(&cx.dag),
                            "model": to_value(&cx.model),
                            "certificate": {
                                "statement": cx.statement.to_string(),
                                "verdict": to_value(&cx.verdict),
                                "markov": cx.markov.iter().map(|(l, v)| json!({
                                    "statement": l.statement.to_string(),
                                    "outcome": outcome_name(v.outcome),
                                })).collect::<Vec<_>>(),
                            }
                        }),
                    })
                }
                SearchOutcome::NotFound { trials } => Ok(not_found(trials)),
            }
        }
        LabCommand::FatHand => {
            let fh = build_fat_hand_model(&FatHandParams::default())?;
            let stmt = parse_statement("Y _||_ F(T) | T").expect("fixed statement");
            let v = evaluate(&fh.model, &stmt, tol)?;
            let sep = d_separated(&fh.dag, &["F(T)"], &["Y"], &["T"])?;
            let reproduced = v.holds() && !sep;
            let text = format!(
                "statement {stmt}: {}\nF(T) and Y d-separated given T: {sep}\nunfaithful ignorability: {}\n",
                outcome_name(v.outcome),
                if reproduced { "reproduced" } else { "not reproduced" }
            );
            Ok(Reply {
                code: if reproduced { EXIT_OK } else { EXIT_FAIL },
                outcome: if reproduced { "holds" } else { "fails" },
                text,
                data: json!({
                    "model": to_value(&fh.model),
                    "dag": to_value(&fh.dag),
                    "statement": stmt.to_string(),
                    "verdict": to_value(&v),
                    "d_separated": sep,
                }),
            })
        }
        LabCommand::Contextual { kind } => {
            let params = ContextualParams {
                kind: match kind {
                    Kind::Mediator => ContextualKind::Mediator,
                    Kind::InterventionFlag => ContextualKind::InterventionFlag,
                    Kind::ConstantResponse => ContextualKind::ConstantResponse,
                },
                ..ContextualParams::default()
            };
            let r = contextual_demo(&params, tol)?;
            let text = format!(
                "{}: {}\n{}: {} (max discrepancy {:e})\nconsistent: {}\n",
                r.checked_statement,
                outcome_name(r.checked.outcome),
                r.full_statement,
                outcome_name(r.full.outcome),
                r.full.max_discrepancy,
                r.consistent
            );
            let (code, outcome) = outcome_code(r.checked.outcome);
            Ok(Reply {
                code,
                outcome,
                text,
                data: to_value(&r),
            })
        }
    }
}

fn not_found(trials: usize) -> Reply {
    Reply {
        code: EXIT_VACUOUS,
        outcome: "not_found",
        text: format!("nothing found in {trials} trials\n"),
        data: json!({ "trials": trials }),
    }
}
