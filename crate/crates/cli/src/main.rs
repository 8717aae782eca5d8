use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use loopsmith::catalog::{self, CatalogEntry, ParseOptions};
use loopsmith::halfmorph::{self, HalfKind};
use loopsmith::suites::{self, Subject, DEFAULT_MAX_HALF_ORDER};
use loopsmith::{inner, subloops, LoopError, LoopTable};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "loopsmith",
    version,
    about = "Finite loops, inner maps and half-automorphisms"
)]
struct Cli {
    /// Accept tables whose identity is not element 1 and relabel them.
    #[arg(long, global = true)]
    normalize: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a .loop file and report whether it is a loop.
    Validate { path: PathBuf },
    /// Structural report: flags, derived subloops, half-automorphism census.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_HALF_ORDER)]
        max_half_order: usize,
        /// Include per-phase timings in JSON output.
        #[arg(long)]
        timings: bool,
    },
    /// List half-automorphisms in cycle notation.
    Halfautos {
        path: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the half-automorphism check and every property suite.
    Checktheorem(CheckArgs),
    /// List the built-in catalog keys.
    Catalog,
    /// Print a built-in loop as a .loop file or JSON.
    Export {
        key: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct CheckArgs {
    paths: Vec<PathBuf>,
    /// Include every built-in catalog loop.
    #[arg(long)]
    catalog: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_HALF_ORDER)]
    max_half_order: usize,
}

/// Exit status: 0 success, 1 property or theorem failure, 2 input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok = 0,
    Failure = 1,
    InputError = 2,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return Status::InputError.into();
    }
    let options = ParseOptions {
        normalize: cli.normalize,
    };
    let status = match cli.command {
        Command::Validate { path } => cmd_validate(&path, options),
        Command::Analyze {
            path,
            json,
            max_half_order,
            timings,
        } => with_loop(&path, options, |e| {
            cmd_analyze(e, json, max_half_order, timings)
        }),
        Command::Halfautos {
            path,
            limit,
            classify,
            json,
        } => with_loop(&path, options, |e| cmd_halfautos(e, limit, classify, json)),
        Command::Checktheorem(args) => cmd_checktheorem(&args, options),
        Command::Catalog => {
            for key in catalog::keys() {
                println!("{key}");
            }
            Status::Ok
        }
        Command::Export { key, json } => match catalog::builtin(&key) {
            Ok(entry) if json => {
                println!("{}", entry.to_json());
                Status::Ok
            }
            Ok(entry) => {
                print!("{}", catalog::write_loop_file(&entry));
                Status::Ok
            }
            Err(e) => {
                eprintln!("error: {e}");
                Status::InputError
            }
        },
    };
    status.into()
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("LOOPSMITH_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("LOOPSMITH_THREADS must be a number, got `{raw}`"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, Status> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        Status::InputError
    })
}

fn label(path: &Path, e: &LoopError) -> String {
    match e {
        LoopError::Parse {
            line,
            column,
            message,
        } => {
            format!("{}:{line}:{column}: {message}", path.display())
        }
        other => format!("{}: {other}", path.display()),
    }
}

/// Loads a file for commands that need a loop. Syntax errors are input
/// errors; tables that are not loops are property failures.
fn load(path: &Path, options: ParseOptions) -> Result<CatalogEntry, Status> {
    let text = read(path)?;
    let raw = catalog::parse_raw(&text, options).map_err(|e| {
        eprintln!("error: {}", label(path, &e));
        Status::InputError
    })?;
    let is_loop = raw.validation().is_loop();
    let mut entry = raw.into_entry().map_err(|e| {
        eprintln!("error: {}", label(path, &e));
        if is_loop {
            Status::InputError
        } else {
            Status::Failure
        }
    })?;
    if entry.table.name().is_none() {
        let stem = path
            .file_stem()
            .map_or("loop".into(), |s| s.to_string_lossy().into_owned());
        entry.key = stem.clone();
        entry.table = entry.table.with_name(stem);
    }
    Ok(entry)
}

fn with_loop(path: &Path, options: ParseOptions, f: impl FnOnce(CatalogEntry) -> Status) -> Status {
    match load(path, options) {
        Ok(entry) => f(entry),
        Err(status) => status,
    }
}

fn cmd_validate(path: &Path, options: ParseOptions) -> Status {
    let text = match read(path) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let raw = match catalog::parse_raw(&text, options) {
        Ok(raw) => raw,
        Err(e) => {
            eprintln!("error: {}", label(path, &e));
            return Status::InputError;
        }
    };
    let report = raw.validation();
    println!("{}", path.display());
    println!("{report}");
    for v in &report.violations {
        for &(r, c) in &v.cells {
            if r >= 1 && c >= 1 && r <= raw.rows.len() && c <= raw.rows.len() {
                let (line, column) = raw.position(r, c);
                println!("  {:?} at {}:{line}:{column}", v.kind, path.display());
            }
        }
    }
    if !report.is_loop() {
        return Status::Failure;
    }
    match raw.into_entry() {
        Ok(_) => {
            println!("ok");
            Status::Ok
        }
        Err(e) => {
            eprintln!("error: {}", label(path, &e));
            Status::InputError
        }
    }
}

fn millis(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e5).round() / 100.0
}

fn cmd_analyze(entry: CatalogEntry, as_json: bool, max_half_order: usize, timings: bool) -> Status {
    let l = Arc::new(entry.table);
    let mut phases = serde_json::Map::new();

    let t = Instant::now();
    let report = loopsmith::table::validate(&l.rows());
    let commutative = l.is_commutative();
    let associative = l.is_associative();
    let moufang = l.is_moufang();
    let diassociative = l.is_diassociative();
    let left_automorphic = inner::is_left_automorphic(&l);
    let automorphic = left_automorphic && inner::is_automorphic(&l);
    let witness = inner::non_automorphic_witness(&l, false).map(|g| g.to_string());
    phases.insert("flags".into(), json!(millis(t)));

    let t = Instant::now();
    let order_of = |r: loopsmith::Result<loopsmith::Subloop<'_>>| r.ok().map(|s| s.order());
    let commutant = subloops::commutant(&l);
    let subloop_orders = json!({
        "nucleus": order_of(subloops::nucleus(&l)),
        "commutant": commutant.elements.len(),
        "commutant_closed": commutant.closed,
        "center": order_of(subloops::center(&l)),
        "commutator_subloop": subloops::commutator_subloop(&l).order(),
        "associator_subloop": subloops::associator_subloop(&l).order(),
    });
    let nilpotency = subloops::commutative_nilpotency_class(&l);
    phases.insert("subloops".into(), json!(millis(t)));

    let t = Instant::now();
    let census = if l.order() <= max_half_order {
        let e = halfmorph::enumerate_half_automorphisms(&l, None);
        let c = e.census();
        json!({
            "total": c.total, "iso": c.iso, "anti": c.anti, "both": c.both, "proper": c.proper,
        })
    } else {
        json!("skipped")
    };
    phases.insert("half_automorphisms".into(), json!(millis(t)));

    let mut out = json!({
        "name": l.display_name(),
        "order": l.order(),
        "flags": {
            "quasigroup": report.is_quasigroup,
            "loop": report.is_loop(),
            "commutative": commutative,
            "associative": associative,
            "diassociative": diassociative,
            "moufang": moufang,
            "left_automorphic": left_automorphic,
            "automorphic": automorphic,
        },
        "non_automorphic_witness": witness,
        "subloop_orders": subloop_orders,
        "commutative_nilpotency_class": nilpotency,
        "half_automorphisms": census,
    });
    if as_json {
        if timings {
            out["timings_ms"] = Value::Object(phases);
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        out["timings_ms"] = Value::Object(phases);
        print!("{}", render_analysis(&out));
    }
    Status::Ok
}

fn render_value(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "no".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_analysis(report: &Value) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} (order {})",
        render_value(&report["name"]),
        report["order"]
    );
    for section in ["flags", "subloop_orders"] {
        let _ = writeln!(s, "{}:", section.replace('_', " "));
        if let Some(map) = report[section].as_object() {
            for (k, v) in map {
                let _ = writeln!(s, "  {:<20} {}", k.replace('_', " "), render_value(v));
            }
        }
    }
    if !report["non_automorphic_witness"].is_null() {
        let _ = writeln!(
            s,
            "non-automorphic witness: {}",
            render_value(&report["non_automorphic_witness"])
        );
    }
    let _ = writeln!(
        s,
        "commutative nilpotency class: {}",
        render_value(&report["commutative_nilpotency_class"])
    );
    let census = &report["half_automorphisms"];
    match census.as_object() {
        Some(c) => {
            let parts: Vec<String> = ["total", "iso", "anti", "both", "proper"]
                .iter()
                .map(|k| format!("{k} {}", c[*k]))
                .collect();
            let _ = writeln!(s, "half-automorphisms: {}", parts.join(", "));
        }
        None => {
            let _ = writeln!(s, "half-automorphisms: {}", render_value(census));
        }
    }
    if let Some(t) = report["timings_ms"].as_object() {
        let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k} {v} ms")).collect();
        let _ = writeln!(s, "timings: {}", parts.join(", "));
    }
    s
}

fn cmd_halfautos(
    entry: CatalogEntry,
    limit: Option<usize>,
    classify: bool,
    as_json: bool,
) -> Status {
    let l = Arc::new(entry.table);
    let e = halfmorph::enumerate_half_automorphisms(&l, limit);
    let census = e.census();
    let group = e
        .complete
        .then(|| halfmorph::half_maps_form_group_check(&e).unwrap_or(false));
    if as_json {
        let maps: Vec<Value> = e
            .maps
            .iter()
            .map(|m| {
                let mut v = json!({ "cycles": m.perm().to_string() });
                if classify {
                    v["class"] = json!(m.classify().kind.to_string());
                }
                v
            })
            .collect();
        let out = json!({
            "name": l.display_name(),
            "complete": e.complete,
            "census": census,
            "group": group,
            "maps": maps,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        for m in &e.maps {
            if classify {
                println!("{} {}", m.perm(), m.classify().kind);
            } else {
                println!("{}", m.perm());
            }
        }
        println!(
            "{}: {} half-automorphisms{} (iso {}, anti {}, both {}, proper {})",
            l.display_name(),
            census.total,
            if e.complete {
                ""
            } else {
                " (incomplete, limit reached)"
            },
            census.iso,
            census.anti,
            census.both,
            census.proper
        );
        match group {
            Some(true) => println!("group check: closed under composition and inverse"),
            Some(false) => println!("group check: NOT closed"),
            None => println!("group check: skipped, enumeration incomplete"),
        }
    }
    match group {
        Some(false) => Status::Failure,
        _ => Status::Ok,
    }
}

fn cmd_checktheorem(args: &CheckArgs, options: ParseOptions) -> Status {
    let mut status = Status::Ok;
    let mut tables: Vec<LoopTable> = Vec::new();
    if args.catalog {
        tables.extend(catalog::all().into_iter().map(|e| e.table));
    }
    for path in &args.paths {
        match load(path, options) {
            Ok(entry) => tables.push(entry.table),
            Err(s) => status = status.max(s),
        }
    }
    if tables.is_empty() {
        if status == Status::Ok {
            eprintln!("error: no input loops; pass paths or --catalog");
            return Status::InputError;
        }
        return status;
    }
    let subjects: Vec<Subject> = tables
        .into_iter()
        .map(|t| Subject::new(t, args.max_half_order))
        .collect();

    let mut loops = Vec::new();
    for s in &subjects {
        let census = s.enumeration.as_ref().map(|e| e.census());
        let proper_witness = s.enumeration.as_ref().and_then(|e| {
            e.maps
                .iter()
                .find(|m| m.classify().kind == HalfKind::ProperHalf)
                .map(|m| m.perm().to_string())
        });
        loops.push(json!({
            "name": s.name(),
            "order": s.table.order(),
            "moufang": s.moufang,
            "automorphic": s.automorphic,
            "hypotheses_hold": s.moufang && s.automorphic,
            "census": census,
            "proper_witness": proper_witness,
        }));
    }
    let results = suites::run_all(&subjects);
    if results.iter().any(|r| r.violation_count > 0) {
        status = status.max(Status::Failure);
    }

    if args.json {
        let out = json!({ "loops": loops, "suites": results, "exit_code": status as u8 });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
        return status;
    }
    println!("loops:");
    for l in &loops {
        let census = match l["census"].as_object() {
            Some(c) => format!("{} half-automorphisms, {} proper", c["total"], c["proper"]),
            None => "census skipped".into(),
        };
        let hyp = if l["hypotheses_hold"] == true {
            "automorphic Moufang"
        } else {
            "hypotheses fail"
        };
        let witness = l["proper_witness"]
            .as_str()
            .map(|w| format!(", e.g. {w} ProperHalf"))
            .unwrap_or_default();
        println!(
            "  {:<10} order {:>2}  {hyp}; {census}{witness}",
            render_value(&l["name"]),
            l["order"]
        );
    }
    println!("suites:");
    for r in &results {
        let verdict = if r.violation_count > 0 {
            "FAIL"
        } else if r.is_vacuous() {
            "vacuous"
        } else {
            "ok"
        };
        println!(
            "  {:<38} {verdict:<7} carriers {:>2}, instances {:>7}, violations {}  [{}]",
            r.name,
            r.carriers.len(),
            r.instances,
            r.violation_count,
            r.hypothesis
        );
        for v in &r.violations {
            println!("      {v}");
        }
    }
    status
}
