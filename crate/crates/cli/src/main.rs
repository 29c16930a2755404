//! `idyn` — decide transitivity variants, evaluate ideal-topology operators,
//! replay the built-in literature corpus, and grind the theorem suite over
//! every small model.
//!
//! Exit codes: 0 = query answered / all expectations met, 1 = violation or
//! mismatch (sound-suite violations, unregistered corpus mismatch), 2 =
//! usage, parse, or model-precondition error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use idyn_core::corpus::{self, Provenance};
use idyn_core::dynamics::{
    check_transitive, forward_union, nonwandering_set, transitive_points, Direction,
    DynamicalSystem, OrbitDensity, TransitivityKind, Verdict,
};
use idyn_core::falsify::{
    mine, run_registry_suite, MinePredicate, ModelSpace, SuiteReport, TargetStatus,
};
use idyn_core::genopen::{k_opens, OpenKind};
use idyn_core::ideal::{classify, i_opens, local_function, psi, star_operators, star_topology};
use idyn_core::model::{parse_subset, Model};
use idyn_core::topology::Subset;

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "idyn", version, about = "Exact dynamics on finite ideal topological spaces")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Reject discontinuous maps instead of warning about them.
    #[arg(long, global = true)]
    strict_continuity: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a transitivity variant (e.g. `transitive`, `i-transitive`,
    /// `semi-i-transitive`) for a model file (or stdin).
    Check {
        query: String,
        /// Model file; `-` or absent reads stdin.
        file: Option<PathBuf>,
    },
    /// Evaluate one operator: closure, interior, local-function, psi,
    /// star-closure, star-topology, k-opens:<kind>, i-opens, omega, omega-i,
    /// transitive-points, forward-union.
    Compute {
        op: String,
        file: Option<PathBuf>,
        /// Set literal such as `{a c}` for the set-valued operators.
        #[arg(long)]
        set: Option<String>,
        /// Open-set kind for omega[-i]: open, semi, pre, b, beta.
        #[arg(long, default_value = "open")]
        kind: String,
        /// Orbit density grading for transitive-points: dense, i-dense,
        /// star-dense.
        #[arg(long, default_value = "dense")]
        graded: String,
        /// Direction for forward-union.
        #[arg(long, value_enum, default_value_t = Dir::Forward)]
        direction: Dir,
    },
    /// Report the ideal's classification flags and the map's continuity /
    /// openness for a model.
    Classify { file: Option<PathBuf> },
    /// Run the built-in literature example corpus and print the verdict
    /// table, including registered discrepancies.
    Paper,
    /// Run the theorem suite over every model on up to `--size` points.
    Suite {
        #[arg(long, default_value_t = 3)]
        size: usize,
        /// Also run the suspect (converse-direction) targets.
        #[arg(long)]
        include_suspect: bool,
        /// Worker threads (default: rayon's choice). Output is identical
        /// for any worker count.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Search the model space for models satisfying a conjunction of flags,
    /// e.g. `--predicate "transitive & !i_transitive"`.
    Mine {
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long)]
        predicate: String,
        /// Stop after this many witnesses.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dir {
    Forward,
    Backward,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Check { query, file } => cmd_check(&cli, query, file.as_deref()),
        Command::Compute { op, file, set, kind, graded, direction } => cmd_compute(
            &cli,
            op,
            file.as_deref(),
            set.as_deref(),
            kind,
            graded,
            *direction,
        ),
        Command::Classify { file } => cmd_classify(&cli, file.as_deref()),
        Command::Paper => cmd_paper(&cli),
        Command::Suite { size, include_suspect, workers } => {
            cmd_suite(&cli, *size, *include_suspect, *workers)
        }
        Command::Mine { size, predicate, limit, workers } => {
            cmd_mine(&cli, *size, predicate, *limit, *workers)
        }
    }
}

fn load_model(cli: &Cli, file: Option<&std::path::Path>) -> Result<Model, String> {
    let text = match file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| format!("cannot read {}: {e}", p.display()))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            buf
        }
    };
    let model = Model::parse(&text).map_err(|e| e.to_string())?;
    let cont = model.topology().is_continuous(model.map());
    if !cont.holds {
        let open = cont.violating.map(|o| model.ground().render(o)).unwrap_or_default();
        if cli.strict_continuity {
            return Err(format!(
                "map is not continuous (preimage of {open} is not open) and --strict-continuity is set"
            ));
        }
        eprintln!("note: map is not continuous (preimage of {open} is not open); proceeding");
    }
    Ok(model)
}

fn model_name(model: &Model) -> Value {
    match &model.name {
        Some(n) => json!(n),
        None => Value::Null,
    }
}

fn set_json(model: &Model, s: Subset) -> Value {
    let labels: Vec<&str> = s.iter().map(|i| model.ground().label(i)).collect();
    json!(labels)
}

fn report_header(query: &str, model: Option<&Model>) -> Value {
    json!({
        "tool_version": TOOL_VERSION,
        "query": query,
        "model_name": model.map(model_name).unwrap_or(Value::Null),
    })
}

fn emit(cli: &Cli, mut report: Value, text: String) {
    match cli.format {
        Format::Text => println!("{text}"),
        Format::Json => {
            if let Some(obj) = report.as_object_mut() {
                obj.entry("tool_version").or_insert(json!(TOOL_VERSION));
            }
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
    }
}

/// Attach a registered-discrepancy note when the model is a corpus entry and
/// the query has one.
fn discrepancy_note(model: &Model, query_key: &str) -> Option<&'static corpus::Claim> {
    let name = model.name.as_deref()?;
    corpus::registered_discrepancy(name, query_key)
}

fn cmd_check(cli: &Cli, query: &str, file: Option<&std::path::Path>) -> Result<ExitCode, String> {
    let kind = TransitivityKind::parse(query)
        .ok_or_else(|| format!("unknown check query `{query}` (try `i-transitive`)"))?;
    let model = load_model(cli, file)?;
    let sys = DynamicalSystem::new(model.clone());
    let verdict: Verdict = check_transitive(&sys, kind).map_err(|e| e.to_string())?;

    let query_key = format!("check {}", kind.name());
    let mut report = report_header(&query_key, Some(&model));
    report["holds"] = json!(verdict.holds);
    report["result"] = json!(verdict.holds);
    if let Some(w) = verdict.witness {
        report["witness"] = json!({
            "U": set_json(&model, w.u),
            "V": set_json(&model, w.v),
            "n_range": [w.n_range.0, w.n_range.1],
        });
    }

    let mut text = format!(
        "{}: {} = {}",
        model.name.as_deref().unwrap_or("model"),
        kind.name(),
        verdict.holds
    );
    if let Some(w) = verdict.witness {
        text.push_str(&format!(
            "\n  witness: U={} V={} for all n in {}..={}",
            model.ground().render(w.u),
            model.ground().render(w.v),
            w.n_range.0,
            w.n_range.1
        ));
    }
    if let Some(claim) = discrepancy_note(&model, &query_key) {
        report["note"] = json!({
            "registered_discrepancy": true,
            "recorded_value": claim.paper_value,
            "computed_value": claim.expected_computed,
        });
        text.push_str(&format!(
            "\n  note: registered discrepancy — source prints {}, computation yields {}",
            claim.paper_value, claim.expected_computed
        ));
    }
    emit(cli, report, text);
    Ok(ExitCode::SUCCESS)
}

fn cmd_compute(
    cli: &Cli,
    op: &str,
    file: Option<&std::path::Path>,
    set: Option<&str>,
    kind: &str,
    graded: &str,
    direction: Dir,
) -> Result<ExitCode, String> {
    let model = load_model(cli, file)?;
    let g = model.ground().clone();
    let t = model.topology();
    let i = model.ideal();
    let sys = DynamicalSystem::new(model.clone());

    let need_set = |set: Option<&str>| -> Result<Subset, String> {
        let text = set.ok_or_else(|| format!("`{op}` needs --set \"{{...}}\""))?;
        parse_subset(&g, text).map_err(|e| e.to_string())
    };

    enum Out {
        Set(Subset),
        Family(Vec<Subset>),
    }

    let (query_key, out) = match op {
        "closure" => {
            let a = need_set(set)?;
            (format!("closure {}", g.render(a)), Out::Set(t.closure(a)))
        }
        "interior" => {
            let a = need_set(set)?;
            (format!("interior {}", g.render(a)), Out::Set(t.interior(a)))
        }
        "local-function" => {
            let a = need_set(set)?;
            (
                format!("local-function {}", g.render(a)),
                Out::Set(local_function(t, i, a)),
            )
        }
        "psi" => {
            let a = need_set(set)?;
            (format!("psi {}", g.render(a)), Out::Set(psi(t, i, a)))
        }
        "star-closure" => {
            let a = need_set(set)?;
            let (cl, _) = star_operators(t, i, a);
            (format!("star-closure {}", g.render(a)), Out::Set(cl))
        }
        "star-topology" => (
            "star-topology".to_string(),
            Out::Family(star_topology(t, i).opens().iter().collect()),
        ),
        "i-opens" => ("i-opens".to_string(), Out::Family(i_opens(t, i).iter().collect())),
        "omega" | "omega-i" => {
            let base = OpenKind::parse(kind).ok_or_else(|| format!("unknown kind `{kind}`"))?;
            let tk = if op == "omega-i" {
                TransitivityKind::ideal(base)
            } else {
                TransitivityKind::plain(base)
            };
            let omega = nonwandering_set(&sys, tk).map_err(|e| e.to_string())?;
            let key = if base == OpenKind::Open {
                op.to_string()
            } else {
                format!("{op}:{}", base.name())
            };
            (key, Out::Set(omega))
        }
        "transitive-points" => {
            let od = OrbitDensity::parse(graded)
                .ok_or_else(|| format!("unknown grading `{graded}`"))?;
            let pts = transitive_points(&sys, od).map_err(|e| e.to_string())?;
            (format!("transitive-points {graded}"), Out::Set(pts))
        }
        "forward-union" => {
            let a = need_set(set)?;
            let dir = match direction {
                Dir::Forward => Direction::Forward,
                Dir::Backward => Direction::Backward,
            };
            let name = match direction {
                Dir::Forward => "forward",
                Dir::Backward => "backward",
            };
            (
                format!("forward-union {} {}", name, g.render(a)),
                Out::Set(forward_union(&sys, a, dir)),
            )
        }
        other => match other.strip_prefix("k-opens:") {
            Some(k) => {
                let base = OpenKind::parse(k).ok_or_else(|| format!("unknown kind `{k}`"))?;
                (
                    format!("k-opens:{}", base.name()),
                    Out::Family(k_opens(t, base).iter().collect()),
                )
            }
            None => return Err(format!("unknown compute op `{other}`")),
        },
    };

    let mut report = report_header(&query_key, Some(&model));
    let text_value = match &out {
        Out::Set(s) => {
            report["result"] = set_json(&model, *s);
            g.render(*s)
        }
        Out::Family(fam) => {
            report["result"] = json!(fam.iter().map(|s| set_json(&model, *s)).collect::<Vec<_>>());
            fam.iter().map(|s| g.render(*s)).collect::<Vec<_>>().join(" ")
        }
    };
    let mut text = format!(
        "{}: {} = {}",
        model.name.as_deref().unwrap_or("model"),
        query_key,
        text_value
    );
    if let Some(claim) = discrepancy_note(&model, &query_key) {
        report["note"] = json!({
            "registered_discrepancy": true,
            "recorded_value": claim.paper_value,
            "computed_value": claim.expected_computed,
        });
        text.push_str(&format!(
            "\n  note: registered discrepancy — source prints {}, computation yields {}",
            claim.paper_value, claim.expected_computed
        ));
    }
    emit(cli, report, text);
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(cli: &Cli, file: Option<&std::path::Path>) -> Result<ExitCode, String> {
    let model = load_model(cli, file)?;
    let c = classify(model.topology(), model.ideal());
    let cont = model.topology().is_continuous(model.map()).holds;
    let open = model.topology().is_open_map(model.map()).holds;
    let mut report = report_header("classify", Some(&model));
    report["result"] = json!({
        "codense": c.codense,
        "completely_codense": c.completely_codense,
        "compatible": c.compatible,
        "hayashi_samuel": c.hayashi_samuel,
        "proper_ideal": model.ideal().is_proper(),
        "map_continuous": cont,
        "map_open": open,
    });
    let text = format!(
        "{}:\n  codense: {}\n  completely_codense: {}\n  compatible: {}\n  hayashi_samuel: {}\n  proper_ideal: {}\n  map_continuous: {}\n  map_open: {}",
        model.name.as_deref().unwrap_or("model"),
        c.codense,
        c.completely_codense,
        c.compatible,
        c.hayashi_samuel,
        model.ideal().is_proper(),
        cont,
        open
    );
    emit(cli, report, text);
    Ok(ExitCode::SUCCESS)
}

fn cmd_paper(cli: &Cli) -> Result<ExitCode, String> {
    let report = corpus::run();
    let ok = report.ok();

    match cli.format {
        Format::Text => {
            println!(
                "{:<12} {:<28} {:<28} {:<28} status",
                "entry", "query", "printed", "computed"
            );
            for r in &report.rows {
                let status = if !r.matched() {
                    "MISMATCH (unregistered)"
                } else if r.provenance == Provenance::RegisteredDiscrepancy {
                    "discrepancy (registered)"
                } else {
                    "ok"
                };
                println!(
                    "{:<12} {:<28} {:<28} {:<28} {status}",
                    r.entry, r.query, r.paper_value, r.computed
                );
            }
            println!(
                "{} rows, {} registered discrepancies, {} mismatches",
                report.rows.len(),
                report.discrepancies(),
                report.mismatches()
            );
        }
        Format::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "entry": r.entry,
                        "query": r.query,
                        "printed_value": r.paper_value,
                        "computed_value": r.computed,
                        "expected_computed": r.expected_computed,
                        "registered_discrepancy": r.provenance == Provenance::RegisteredDiscrepancy,
                        "matched": r.matched(),
                    })
                })
                .collect();
            let doc = json!({
                "tool_version": TOOL_VERSION,
                "query": "paper",
                "model_name": Value::Null,
                "result": {
                    "rows": rows,
                    "row_count": report.rows.len(),
                    "discrepancies": report.discrepancies(),
                    "mismatches": report.mismatches(),
                },
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn install_pool<T>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    match workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("worker pool")
            .install(f),
        None => f(),
    }
}

fn suite_json(report: &SuiteReport) -> Value {
    let outcomes: Vec<Value> = report
        .outcomes
        .iter()
        .map(|o| {
            json!({
                "id": o.id,
                "status": match o.status {
                    TargetStatus::Sound => "sound",
                    TargetStatus::Suspect => "suspect",
                },
                "applicable": o.applicable,
                "violations": o.violations,
                "first_witness": o.first_witness.as_ref().map(|w| json!({
                    "model": w.model,
                    "witness": w.witness,
                })),
            })
        })
        .collect();
    json!({
        "tool_version": TOOL_VERSION,
        "query": format!(
            "suite --size {}{}",
            report.space.max_points,
            if report.include_suspect { " --include-suspect" } else { "" }
        ),
        "model_name": Value::Null,
        "result": {
            "instances": report.instances,
            "outcomes": outcomes,
            "sound_violations": report.sound_violations(),
        },
    })
}

fn cmd_suite(
    cli: &Cli,
    size: usize,
    include_suspect: bool,
    workers: Option<usize>,
) -> Result<ExitCode, String> {
    let space = ModelSpace::up_to(size);
    let report = install_pool(workers, || run_registry_suite(space, include_suspect))
        .map_err(|e| e.to_string())?;
    match cli.format {
        Format::Text => print!("{}", report.canonical_text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&suite_json(&report)).unwrap()),
    }
    eprintln!(
        "suite finished in {:.3}s over {} instances",
        report.elapsed.as_secs_f64(),
        report.instances
    );
    Ok(if report.sound_violations() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_mine(
    cli: &Cli,
    size: usize,
    predicate: &str,
    limit: Option<usize>,
    workers: Option<usize>,
) -> Result<ExitCode, String> {
    let pred = MinePredicate::parse(predicate).map_err(|e| e.to_string())?;
    let space = ModelSpace {
        max_points: size,
        continuous_only: false,
        proper_ideals_only: true,
    };
    let found = install_pool(workers, || mine(space, &pred, limit)).map_err(|e| e.to_string())?;
    match cli.format {
        Format::Text => {
            for m in &found {
                println!("{}", m.to_text());
            }
            println!("# {} model(s) matched `{predicate}` at size <= {size}", found.len());
        }
        Format::Json => {
            let doc = json!({
                "tool_version": TOOL_VERSION,
                "query": format!("mine --size {size} --predicate {predicate}"),
                "model_name": Value::Null,
                "result": {
                    "count": found.len(),
                    "models": found.iter().map(|m| m.to_text()).collect::<Vec<_>>(),
                },
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}
