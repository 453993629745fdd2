mod input;
mod output;

use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use wirtgraph::gauss::{parse_any, parse_link_gauss, ValidationReport};
use wirtgraph::generate::{singularizable_pairs, singularize};
use wirtgraph::quandle::{
    check_quandle, count_colorings_backtrack, count_colorings_with, is_homogeneous, CountOptions,
};
use wirtgraph::wirt::{embedding_certificate, tangle_report, wirtinger_number};
use wirtgraph::{
    Diagram, DiagramError, Exec, FiniteQuandle, GaussError, GenerateError, QuandleError,
    SearchOptions, SeedItem, WirtError, WirtingerResult,
};

use input::{entries, Entry};
use output::{Format, Report};

const EXIT_IO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_QUANDLE: u8 = 4;

#[derive(Parser)]
#[command(name = "wirtgraph", version, about = "Wirtinger numbers and quandle bounds for spatial graph diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "WIRTGRAPH_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Output format; JSON when stdout is not a terminal, text otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Record per-input failures and keep going instead of stopping.
    #[arg(long, global = true)]
    lenient: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Wirtinger number, witness and bridge certificate of each diagram.
    Wirt {
        files: Vec<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Theta-4 graph codes from two-component link codes.
    Generate {
        files: Vec<PathBuf>,
        /// Passages required strictly inside each of the four arcs.
        #[arg(long, default_value_t = 4)]
        min_arc: usize,
        /// Directory for one `.sg` file per generated code plus `index.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Index CSV path; defaults to `index.csv` inside `--out`.
        #[arg(long)]
        index: Option<PathBuf>,
    },
    /// Quandle coloring count and the bridge-index lower bound it gives.
    Bound {
        files: Vec<PathBuf>,
        /// `dihedral:N`, `alexander:4`, `trivial:N` or a CSV table file.
        #[arg(long, default_value = "dihedral:3")]
        quandle: String,
        /// Also compute the Wirtinger number and report `bound <= beta <= omega`.
        #[arg(long)]
        sandwich: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check Gauss codes without computing anything.
    Validate { files: Vec<PathBuf> },
    /// Quandle axioms, n-quandle order and homogeneity.
    QuandleCheck {
        /// `dihedral:N`, `alexander:4`, `trivial:N` or a CSV table file.
        #[arg(long)]
        quandle: Option<String>,
        /// CSV table files, checked in addition to `--quandle`.
        files: Vec<PathBuf>,
        /// Node budget for the automorphism search above order 8.
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args, Clone, Copy)]
struct SearchArgs {
    /// Largest seed count tried.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_k: Option<u64>,
    /// Only try seed sets containing a pod.
    #[arg(long)]
    require_pod_seed: bool,
    /// Maximum seed sets propagated (or seed labelings counted).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
}

impl SearchArgs {
    fn options(&self, exec: Exec) -> SearchOptions {
        SearchOptions {
            max_k: self.max_k.map(|k| k as usize),
            require_pod_seed: self.require_pod_seed,
            budget: self.budget,
            exec,
        }
    }
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<GaussError> for Failure {
    fn from(e: GaussError) -> Self {
        Failure::new(EXIT_INPUT, e)
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        Failure::new(EXIT_INPUT, e)
    }
}

impl From<GenerateError> for Failure {
    fn from(e: GenerateError) -> Self {
        Failure::new(EXIT_INPUT, e)
    }
}

impl From<WirtError> for Failure {
    fn from(e: WirtError) -> Self {
        let code = match e {
            WirtError::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_IO,
        };
        Failure::new(code, e)
    }
}

impl From<QuandleError> for Failure {
    fn from(e: QuandleError) -> Self {
        match e {
            QuandleError::Wirt(w) => w.into(),
            QuandleError::BudgetExceeded { .. } => Failure::new(EXIT_BUDGET, e),
            QuandleError::NoWitness => Failure::new(EXIT_IO, e),
            _ => Failure::new(EXIT_QUANDLE, e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_IO, e)
    }
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("records are objects"),
    }
}

/// Runs `f` on each entry; failures stop the run unless `lenient`, in which
/// case they become rows with an `error` field.
fn each_entry<F>(
    report: &mut Report,
    items: &[Entry],
    lenient: bool,
    mut f: F,
) -> Result<(), Failure>
where
    F: FnMut(&Entry) -> Result<Vec<Map<String, Value>>, Failure>,
{
    for e in items {
        match f(e) {
            Ok(rows) => {
                for mut row in rows {
                    let mut full = obj(json!({"source": e.source, "line": e.line}));
                    full.append(&mut row);
                    report.rows.push(full);
                }
            }
            Err(fail) if lenient => {
                eprintln!("warning: {}:{}: {}", e.source, e.line, fail.message);
                report.rows.push(obj(json!({
                    "source": e.source,
                    "line": e.line,
                    "error": fail.message,
                    "exit_code": fail.code,
                })));
            }
            Err(fail) => {
                return Err(Failure::new(
                    fail.code,
                    format!("{}:{}: {}", e.source, e.line, fail.message),
                ))
            }
        }
    }
    Ok(())
}

fn read_entries(files: &[PathBuf], lenient: bool) -> Result<Vec<Entry>, Failure> {
    entries(files, lenient).map_err(|(src, e)| Failure::new(EXIT_INPUT, format!("{src}: {e}")))
}

fn diagram_of(text: &str) -> Result<Diagram, Failure> {
    Ok(Diagram::from_code(&parse_any(text)?)?)
}

fn seed_json(d: &Diagram, item: &SeedItem) -> Value {
    match *item {
        SeedItem::Pod(v) => json!({"pod": v}),
        SeedItem::Arc(s) => json!({"arc": s, "passages": d.strand(s).passages}),
    }
}

fn wirt_record(d: &Diagram, r: &WirtingerResult) -> Result<Map<String, Value>, Failure> {
    let cert = embedding_certificate(d, r)?;
    // the Euler identity only means something with vertices
    let euler = if d.vertices().is_empty() {
        Value::Null
    } else {
        let t = tangle_report(d, r)?;
        json!({"chi": t.chi, "degrees": t.degrees, "degree_sum": t.degree_sum})
    };
    Ok(obj(json!({
        "strands": d.strand_count(),
        "omega": r.omega,
        "witness": r.witness.iter().map(|i| seed_json(d, i)).collect::<Vec<_>>(),
        "multicolored": r.multicolored_crossings,
        "tau2": r.tau2,
        "certificate": {
            "upper_pods": cert.upper_pods,
            "maxima": cert.maxima,
            "minima": cert.minima,
            "lower_pods": cert.lower_pods,
        },
        "euler": euler,
    })))
}

fn load_quandle(spec: &str) -> Result<FiniteQuandle, Failure> {
    if Path::new(spec).is_file() {
        let text = fs::read_to_string(spec)?;
        return Ok(FiniteQuandle::from_csv(&text)?);
    }
    Ok(spec.parse()?)
}

fn cmd_wirt(files: &[PathBuf], search: SearchArgs, common: &Common, exec: Exec) -> Result<Report, Failure> {
    let mut report = Report::new(
        "wirt",
        &["source", "line", "strands", "omega", "witness", "multicolored", "tau2", "certificate", "euler", "error"],
    );
    let items = read_entries(files, common.lenient)?;
    let opts = search.options(exec);
    each_entry(&mut report, &items, common.lenient, |e| {
        let d = diagram_of(&e.text)?;
        let r = wirtinger_number(&d, &opts)?;
        Ok(vec![wirt_record(&d, &r)?])
    })?;
    Ok(report)
}

fn cmd_bound(
    files: &[PathBuf],
    quandle: &str,
    sandwich: bool,
    search: SearchArgs,
    common: &Common,
    exec: Exec,
) -> Result<Report, Failure> {
    let q = load_quandle(quandle)?;
    let mut report = Report::new(
        "bound",
        &["source", "line", "quandle", "order", "count", "bound", "omega", "exact", "sandwich", "error"],
    );
    let items = read_entries(files, common.lenient)?;
    let opts = search.options(exec);
    let count_opts = CountOptions {
        budget: search.budget,
        exec,
    };
    each_entry(&mut report, &items, common.lenient, |e| {
        let d = diagram_of(&e.text)?;
        let r = match wirtinger_number(&d, &opts) {
            Ok(r) => Some(r),
            Err(WirtError::NotFoundWithinBound { .. }) if !sandwich => None,
            Err(err) => return Err(err.into()),
        };
        let c = match &r {
            Some(r) => count_colorings_with(&d, &q, r, &count_opts)?,
            None => count_colorings_backtrack(&d, &q, search.budget)?,
        };
        let mut row = obj(json!({
            "quandle": quandle,
            "order": c.order,
            "count": c.count,
            "bound": c.bound,
        }));
        if sandwich {
            let omega = r.as_ref().map(|r| r.omega).unwrap_or_default();
            let exact = c.bound as usize == omega;
            row.insert("omega".into(), json!(omega));
            row.insert("exact".into(), json!(exact));
            let line = if exact {
                format!("exact bridge index: {omega}")
            } else {
                format!("{} <= beta <= {omega}", c.bound)
            };
            row.insert("sandwich".into(), json!(line));
        }
        Ok(vec![row])
    })?;
    Ok(report)
}

fn validation_record(report: &ValidationReport) -> Map<String, Value> {
    obj(json!({
        "ok": report.ok,
        "issues": report.issues,
        "summary": report.to_string(),
    }))
}

fn cmd_validate(files: &[PathBuf], common: &Common) -> Result<(Report, bool), Failure> {
    let mut report = Report::new("validate", &["source", "line", "ok", "summary", "issues"]);
    let items = read_entries(files, common.lenient)?;
    let mut all_ok = true;
    for e in &items {
        let mut row = obj(json!({"source": e.source, "line": e.line}));
        let rec = match parse_any(&e.text) {
            Ok(code) => validation_record(&code.validate()),
            Err(GaussError::Validation(r)) => validation_record(&r),
            Err(err @ GaussError::Syntax { .. }) => obj(json!({
                "ok": false,
                "issues": [],
                "summary": err.to_string(),
            })),
        };
        all_ok &= rec["ok"] == json!(true);
        row.extend(rec);
        report.rows.push(row);
    }
    Ok((report, all_ok))
}

fn cmd_quandle_check(
    spec: Option<&str>,
    files: &[PathBuf],
    budget: Option<u64>,
) -> Result<(Report, bool), Failure> {
    let mut report = Report::new(
        "quandle-check",
        &["quandle", "order", "axioms_ok", "idempotent", "right_invertible", "self_distributive", "n_quandle_order", "homogeneous", "automorphisms"],
    );
    let mut sources: Vec<(String, String)> = Vec::new();
    if let Some(s) = spec {
        sources.push((s.to_string(), s.to_string()));
    }
    for f in files {
        sources.push((f.display().to_string(), f.display().to_string()));
    }
    if sources.is_empty() {
        return Err(Failure::new(EXIT_INPUT, "no quandle given; use --quandle or a CSV file"));
    }
    let mut all_ok = true;
    for (name, spec) in sources {
        let rows = if Path::new(&spec).is_file() {
            parse_rows(&fs::read_to_string(&spec)?)?
        } else {
            spec.parse::<FiniteQuandle>()?.rows()
        };
        let axioms = check_quandle(&rows)?;
        let mut row = obj(json!({
            "quandle": name,
            "order": axioms.order,
            "axioms_ok": axioms.ok(),
            "idempotent": axioms.idempotent,
            "right_invertible": axioms.right_invertible,
            "self_distributive": axioms.self_distributive,
        }));
        if axioms.ok() {
            let q = FiniteQuandle::from_table(rows)?;
            let h = is_homogeneous(&q, budget)?;
            row.insert("n_quandle_order".into(), json!(q.n_quandle_order()));
            row.insert("homogeneous".into(), json!(h.homogeneous));
            row.insert("automorphisms".into(), json!(h.automorphisms));
            row.insert("orbits".into(), json!(h.orbits));
        } else {
            all_ok = false;
        }
        report.rows.push(row);
    }
    Ok((report, all_ok))
}

/// Table rows without the axiom check, so failures can be reported.
fn parse_rows(text: &str) -> Result<Vec<Vec<u32>>, Failure> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Failure::new(EXIT_QUANDLE, format!("bad table entry `{t}`")))
                })
                .collect()
        })
        .collect()
}

fn cmd_generate(
    files: &[PathBuf],
    min_arc: usize,
    out: Option<&Path>,
    index: Option<&Path>,
    common: &Common,
    exec: Exec,
) -> Result<Report, Failure> {
    let mut report = Report::new("generate", &["source", "line", "x", "y", "output_id", "code", "error"]);
    let items = read_entries(files, common.lenient)?;
    // parse up front so pair enumeration can run in parallel over the batch
    let parsed: Vec<Result<_, Failure>> = wirtgraph::exec::map(exec, &items, |e| {
        let link = parse_link_gauss(&e.text)?;
        let pairs = singularizable_pairs(&link, min_arc)?;
        pairs
            .iter()
            .map(|p| Ok((*p, singularize(&link, p)?)))
            .collect::<Result<Vec<_>, Failure>>()
    });
    let mut next_id = 0usize;
    let mut results = parsed.into_iter();
    each_entry(&mut report, &items, common.lenient, |_| {
        let codes = results.next().expect("one result per entry")?;
        Ok(codes
            .into_iter()
            .map(|(p, code)| {
                let id = next_id;
                next_id += 1;
                obj(json!({"x": p.x, "y": p.y, "output_id": id, "code": code.to_string()}))
            })
            .collect())
    })?;
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        for row in report.rows.iter().filter(|r| r.contains_key("code")) {
            let path = dir.join(format!("{}.sg", row["output_id"]));
            fs::write(path, format!("{}\n", text_of(&row["code"])))?;
        }
    }
    let index = index.map(Path::to_path_buf).or_else(|| out.map(|d| d.join("index.csv")));
    if let Some(path) = index {
        let mut csv = String::from("source_line,x,y,output_id\n");
        for row in report.rows.iter().filter(|r| r.contains_key("code")) {
            csv += &format!("{},{},{},{}\n", row["line"], row["x"], row["y"], row["output_id"]);
        }
        fs::write(path, csv)?;
    }
    eprintln!(
        "generated {} codes from {} inputs",
        report.rows.iter().filter(|r| r.contains_key("code")).count(),
        items.len()
    );
    Ok(report)
}

fn text_of(v: &Value) -> String {
    v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())
}

fn configure_threads(threads: Option<u32>) -> Exec {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        // a second build in the same process is harmless to ignore
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global();
    }
    match threads {
        Some(1) => Exec::Sequential,
        _ if cfg!(feature = "parallel") => Exec::Parallel,
        _ => Exec::Sequential,
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let exec = configure_threads(cli.common.threads);
    let format = cli.common.format.unwrap_or(if io::stdout().is_terminal() {
        Format::Text
    } else {
        Format::Json
    });
    let common = &cli.common;
    let (report, status) = match &cli.command {
        Command::Wirt { files, search } => (cmd_wirt(files, *search, common, exec)?, 0),
        Command::Generate {
            files,
            min_arc,
            out,
            index,
        } => (
            cmd_generate(files, *min_arc, out.as_deref(), index.as_deref(), common, exec)?,
            0,
        ),
        Command::Bound {
            files,
            quandle,
            sandwich,
            search,
        } => (cmd_bound(files, quandle, *sandwich, *search, common, exec)?, 0),
        Command::Validate { files } => {
            let (r, ok) = cmd_validate(files, common)?;
            (r, if ok { 0 } else { EXIT_INPUT })
        }
        Command::QuandleCheck {
            quandle,
            files,
            budget,
        } => {
            let (r, ok) = cmd_quandle_check(quandle.as_deref(), files, *budget)?;
            (r, if ok { 0 } else { EXIT_QUANDLE })
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    report.write(format, &mut lock)?;
    lock.flush()?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
