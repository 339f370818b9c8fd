use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ordsup_core::analysis::{Analysis, AnalysisConfig, CkappaValue, LabeledCertificate};
use ordsup_core::audit::{
    audit_family, compare_with_ledger, ledger_line, parse_ledger, AuditSource, Family, LedgerEntry,
};
use ordsup_core::group::{GroupError, DEFAULT_ELEMENT_CAP};
use ordsup_core::groupspec::{parse_and_build, GroupInstance};
use ordsup_core::supergraph::{order_quotient_graph, order_supergraph};
use serde_json::json;

/// Prints a line to stdout, ignoring a closed pipe.
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(io::stdout(), $($t)*);
    }};
}

const KNOWN_DISCREPANCIES: &str = include_str!("../known_discrepancies.ndjson");

/// Order supergraphs of finite groups: construction, cyclic separability,
/// cyclic vertex connectivity and theorem audits.
#[derive(Parser)]
#[command(name = "ordsup", version)]
struct Cli {
    /// Largest group order that may be materialized. Overrides ORDSUP_ELEMENT_CAP.
    #[arg(long, global = true)]
    element_cap: Option<u64>,
    /// Groups up to this order are also analyzed on the direct graph.
    #[arg(long, global = true, default_value_t = ordsup_core::analysis::DEFAULT_DIRECT_THRESHOLD)]
    direct_threshold: u64,
    /// Budget of chordless-cycle visits per direct-graph search.
    #[arg(long, global = true, default_value_t = ordsup_core::graph::DEFAULT_CYCLE_LIMIT)]
    cycle_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, order profile and Sylow facts of a group.
    Group {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Build the order supergraph (or its quotient) and export it.
    Graph(GraphArgs),
    /// Decide cyclic separability or compute cyclic vertex connectivity.
    Analyze {
        #[arg(value_enum)]
        mode: Mode,
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare a characterization against computed verdicts over a family.
    Audit(AuditArgs),
}

#[derive(Args)]
struct GraphArgs {
    spec: String,
    /// Write Graphviz DOT to PATH ("-" for stdout).
    #[arg(long, value_name = "PATH")]
    dot: Option<String>,
    /// Write the JSON document to PATH ("-" for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<String>,
    /// Use the weighted quotient on element orders instead of the full graph.
    #[arg(long)]
    quotient: bool,
    /// Largest direct graph that will be built without --quotient.
    #[arg(long, default_value_t = 5040)]
    max_vertices: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Separable,
    Ckappa,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct AuditArgs {
    family: Family,
    #[arg(long, requires = "to", conflicts_with_all = ["catalog", "spec"])]
    from: Option<u64>,
    #[arg(long, requires = "from", conflicts_with_all = ["catalog", "spec"])]
    to: Option<u64>,
    /// Use the family's built-in source (the default when no range or spec is given).
    #[arg(long, conflicts_with = "spec")]
    catalog: bool,
    /// Audit these group specs instead of the catalog. Repeatable.
    #[arg(long)]
    spec: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output path, "-" for stdout.
    #[arg(long, default_value = "-")]
    out: String,
    /// Worker threads. Output does not depend on this.
    #[arg(long)]
    jobs: Option<usize>,
    /// Known-discrepancy ledger (NDJSON) replacing the built-in one.
    #[arg(long)]
    ledger: Option<PathBuf>,
    /// Write this run's discrepancies as a ledger to PATH.
    #[arg(long, value_name = "PATH")]
    emit_ledger: Option<PathBuf>,
    /// Record the wall-clock time in the report metadata.
    #[arg(long)]
    timestamp: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<ordsup_core::Error>() {
        return match e {
            e if e.is_resource_limit() => 3,
            ordsup_core::Error::PathMismatch(_) => 4,
            _ => 2,
        };
    }
    if let Some(GroupError::TooLarge { .. }) = err.downcast_ref::<GroupError>() {
        return 3;
    }
    2
}

fn config(cli: &Cli) -> anyhow::Result<AnalysisConfig> {
    let element_cap = match cli.element_cap {
        Some(cap) => cap,
        None => match std::env::var("ORDSUP_ELEMENT_CAP") {
            Ok(v) => v
                .trim()
                .parse()
                .with_context(|| format!("ORDSUP_ELEMENT_CAP is not a number: {v:?}"))?,
            Err(_) => DEFAULT_ELEMENT_CAP,
        },
    };
    Ok(AnalysisConfig {
        element_cap,
        direct_threshold: cli.direct_threshold,
        cycle_limit: cli.cycle_limit,
    })
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let config = config(&cli)?;
    match cli.command {
        Command::Group { spec, json } => cmd_group(&spec, json, &config),
        Command::Graph(args) => cmd_graph(&args, &config),
        Command::Analyze { mode, spec, json } => cmd_analyze(mode, &spec, json, &config),
        Command::Audit(args) => cmd_audit(&args, &config),
    }
}

fn build(spec: &str, config: &AnalysisConfig) -> anyhow::Result<GroupInstance> {
    Ok(parse_and_build(spec, &config.limits())?.1)
}

fn write_target(path: &str, text: &str) -> anyhow::Result<()> {
    if path == "-" {
        let mut out = io::stdout().lock();
        match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(e.into()),
            _ => {}
        }
    } else {
        fs::write(path, text).with_context(|| format!("writing {path}"))?;
    }
    Ok(())
}

fn cmd_group(spec: &str, json: bool, config: &AnalysisConfig) -> anyhow::Result<u8> {
    let group = build(spec, config)?;
    let profile = group.profile();
    let sylow = profile.all_sylow_facts();
    if json {
        let doc = json!({
            "order": group.order(),
            "profile": profile.as_map(),
            "name": group.name(),
            "exponent": profile.exponent(),
            "eppo": profile.is_eppo(),
            "epo": profile.is_epo(),
            "nilpotent": group.is_nilpotent(),
            "sylow": sylow.iter().map(|s| json!({
                "prime": s.prime,
                "order": s.sylow_order,
                "exponent": s.exponent,
                "p_elements": s.p_element_count,
                "normal": s.is_normal,
            })).collect::<Vec<_>>(),
        });
        say!("{}", serde_json::to_string_pretty(&doc)?);
        return Ok(0);
    }
    let counts: Vec<String> = profile.iter().map(|(d, m)| format!("{d}:{m}")).collect();
    say!("group:     {}", group.name());
    say!("order:     {}", group.order());
    say!("profile:   {}", counts.join(" "));
    say!("exponent:  {}", profile.exponent());
    say!("eppo:      {}", profile.is_eppo());
    say!("epo:       {}", profile.is_epo());
    say!("nilpotent: {}", group.is_nilpotent());
    for s in &sylow {
        say!(
            "sylow {}:  order {}, exponent {}, {} p-elements, {}",
            s.prime,
            s.sylow_order,
            s.exponent,
            s.p_element_count,
            if s.is_normal { "normal" } else { "not normal" }
        );
    }
    Ok(0)
}

fn cmd_graph(args: &GraphArgs, config: &AnalysisConfig) -> anyhow::Result<u8> {
    let group = build(&args.spec, config)?;
    let name = group.name().to_string();
    let (graph, json_text) = if args.quotient {
        let q = order_quotient_graph(&group.profile());
        let text = serde_json::to_string_pretty(&q.to_document())?;
        (q.graph().clone(), text)
    } else {
        let g = group.group().ok_or(ordsup_core::Error::GraphTooLarge {
            what: format!("S({name})"),
            size: group.order(),
            cap: args.max_vertices,
        })?;
        let graph = order_supergraph(g, args.max_vertices)?;
        let text = serde_json::to_string_pretty(&graph.to_document())?;
        (graph, text)
    };
    let title = if args.quotient { format!("Q({name})") } else { format!("S({name})") };
    if let Some(path) = &args.dot {
        write_target(path, &graph.to_dot(&title))?;
    }
    if let Some(path) = &args.json {
        write_target(path, &(json_text + "\n"))?;
    }
    if args.dot.is_none() && args.json.is_none() {
        say!(
            "{title}: {} vertices, {} edges",
            graph.vertex_count(),
            graph.edge_count()
        );
    }
    Ok(0)
}

fn show(set: &[String]) -> String {
    format!("{{{}}}", set.join(", "))
}

fn show_certificate(cert: &LabeledCertificate) -> String {
    format!(
        "cutset {}; cycles on {} and {}",
        show(&cert.cutset),
        show(&cert.witness_a),
        show(&cert.witness_b)
    )
}

fn cmd_analyze(mode: Mode, spec: &str, json: bool, config: &AnalysisConfig) -> anyhow::Result<u8> {
    let group = build(spec, config)?;
    let analysis = Analysis::new(&group, *config)?;
    match mode {
        Mode::Separable => {
            let out = analysis.separability()?;
            if json {
                let doc = json!({
                    "group": group.name(),
                    "order": group.order(),
                    "separable": out.separable,
                    "path": out.path,
                    "certificate": out.certificate,
                });
                say!("{}", serde_json::to_string_pretty(&doc)?);
            } else if let Some(cert) = &out.certificate {
                say!("{}: separable, {}", group.name(), show_certificate(cert));
            } else {
                say!("{}: not separable", group.name());
            }
            Ok(if out.separable { 0 } else { 1 })
        }
        Mode::Ckappa => {
            let out = analysis.ckappa()?;
            if json {
                let mut doc = serde_json::to_value(out.document())?;
                let obj = doc.as_object_mut().expect("document is an object");
                obj.insert("group".into(), json!(group.name()));
                obj.insert("order".into(), json!(group.order()));
                obj.insert("path".into(), json!(out.path));
                say!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                match (&out.value, &out.certificate) {
                    (CkappaValue::Finite(k), Some(cert)) => {
                        say!("{}: ckappa {k}, {}", group.name(), show_certificate(cert))
                    }
                    _ => say!("{}: ckappa infinite", group.name()),
                }
            }
            Ok(if matches!(out.value, CkappaValue::Finite(_)) { 0 } else { 1 })
        }
    }
}

fn unix_timestamp() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

fn cmd_audit(args: &AuditArgs, config: &AnalysisConfig) -> anyhow::Result<u8> {
    let source = match (args.from, args.to) {
        (Some(from), Some(to)) => {
            if !args.family.is_parametric() {
                bail!("--from/--to only apply to parametric families, not {}", args.family);
            }
            AuditSource::Range { from, to }
        }
        _ if !args.spec.is_empty() => AuditSource::Specs(args.spec.clone()),
        _ => args.family.default_source(),
    };
    let ledger_text = match &args.ledger {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => KNOWN_DISCREPANCIES.to_string(),
    };
    let ledger = parse_ledger(&ledger_text).map_err(|e| anyhow!("bad ledger: {e}"))?;

    let run = || audit_family(args.family, &source, config);
    let mut report = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()?
            .install(run)?,
        None => run()?,
    };
    if args.timestamp {
        report.metadata.timestamp = Some(unix_timestamp());
    }

    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    write_target(&args.out, &text)?;

    if let Some(path) = &args.emit_ledger {
        let lines: String = report
            .discrepancies
            .iter()
            .filter_map(LedgerEntry::from_row)
            .map(|e| ledger_line(&e) + "\n")
            .collect();
        fs::write(path, lines).with_context(|| format!("writing {}", path.display()))?;
    }

    let cmp = compare_with_ledger(&report, &ledger);
    for e in &cmp.resolved {
        eprintln!("note: ledger entry no longer reproduces: {} {}", e.family, e.params);
    }
    let known = report.discrepancies.len() - cmp.new.len();
    eprintln!(
        "{}: {} rows, {} discrepancies ({} known, {} new)",
        args.family,
        report.rows.len(),
        report.discrepancies.len(),
        known,
        cmp.new.len()
    );
    for e in &cmp.new {
        eprintln!(
            "new discrepancy: {} {} predicate={} computed={}",
            e.family, e.params, e.predicate, e.computed
        );
    }
    Ok(if cmp.new.is_empty() { 0 } else { 1 })
}
