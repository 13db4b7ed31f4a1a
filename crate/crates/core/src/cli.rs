//! The `hurwitz` command line.
//!
//! Exit codes: 0 found or passed, 1 provably nothing (or a failed check),
//! 2 usage or input error, 3 resource limit.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::classify;
use crate::constellation::{
    self, compose, merge_cycles, pipeline, split_cycle, BranchData, Constellation, ConstellationJson, InnerJson, Route,
    SearchOptions, SearchOutcome, SearchResultJson, FORMAT_VERSION,
};
use crate::exactmath::Rat;
use crate::family::{self, FamilyParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Environment variable naming the search cache directory.
pub const CACHE_ENV: &str = "HURWITZ_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "hurwitz", version, about = "Hurwitz data and constellations for genus-2 pullbacks")]
pub struct Cli {
    /// Worker threads (defaults to all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Search cache directory; overrides $HURWITZ_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Do not read or write the search cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    Hypergeometric,
    General,
    Triples,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[value(alias = "text")]
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the classification tables.
    Classify {
        #[arg(long, value_enum)]
        case: Case,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Search for constellations, e.g. "d=6; 2,2,2; 6; 6; free".
    Search {
        spec: String,
        /// All classes up to simultaneous conjugation.
        #[arg(long)]
        exhaustive: bool,
        /// Number of distinct witnesses in witness mode.
        #[arg(long, default_value_t = 1)]
        limit: usize,
        /// Ignore the degree cap and work estimate.
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(2..))]
        max_degree: u32,
        /// Seconds before giving up (exit 3).
        #[arg(long)]
        time_budget: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Build constellations by cycle surgery or composition.
    Construct {
        #[command(subcommand)]
        how: Construct,
    },
    /// Check a constellation file.
    Validate {
        input: PathBuf,
        /// Expected branch data, same syntax as `search`.
        #[arg(long)]
        types: Option<String>,
    },
    /// Exact checks of the explicit degree-6 family.
    VerifyFamily {
        /// Rational x_t; y_t defaults to +sqrt(x_t^3 + 1).
        #[arg(long, allow_hyphen_values = true)]
        xt: Option<String>,
        /// Rational y_t; must satisfy y_t^2 = x_t^3 + 1.
        #[arg(long, allow_hyphen_values = true)]
        yt: Option<String>,
        /// Scanned specializations when no parameter is given.
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// List the built-in routes.
    Routes,
    /// Run a built-in route (seed search, then merge or split).
    Route {
        name: String,
        #[arg(long)]
        force: bool,
    },
    /// Join two cycles of a slot, adding a transposition slot.
    Merge {
        input: PathBuf,
        #[arg(long)]
        slot: usize,
        /// Two 1-based points, e.g. 1,4.
        #[arg(long, value_parser = parse_pair)]
        points: (usize, usize),
    },
    /// Cut one cycle of a slot in two, adding a transposition slot.
    Split {
        input: PathBuf,
        #[arg(long)]
        slot: usize,
        #[arg(long, value_parser = parse_pair)]
        points: (usize, usize),
    },
    /// Compose an outer constellation with inner generator images.
    Compose {
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        inner: PathBuf,
    },
    /// The degree-42 pipeline: degree-7 outer, degree-6 lift, composite.
    Pipeline {
        /// Also write the outer constellation here.
        #[arg(long)]
        outer_output: Option<PathBuf>,
        /// Also write the inner generator images here.
        #[arg(long)]
        inner_output: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected two points like 1,4")?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad point {t:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(CliError(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

struct CliError(i32, String);

fn usage(msg: impl Into<String>) -> CliError {
    CliError(EXIT_USAGE, msg.into())
}

type CliResult = Result<i32, CliError>;

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError(EXIT_USAGE, e.to_string()))
        }
    }
}

fn write_file(p: &Path, text: &str) -> Result<(), CliError> {
    fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))
}

fn read_constellation(p: &Path) -> Result<Constellation, CliError> {
    let s = fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
    Constellation::from_json(&s).map_err(|e| usage(format!("{}: {e}", p.display())))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Classify { case, format } => cmd_classify(cli, *case, *format),
        Command::Search {
            spec,
            exhaustive,
            limit,
            force,
            max_degree,
            time_budget,
            format,
        } => {
            let data: BranchData = spec.parse().map_err(usage)?;
            let mut opts = SearchOptions {
                exhaustive: *exhaustive,
                limit: (*limit).max(1),
                force: *force,
                max_degree: *max_degree,
                ..SearchOptions::default()
            };
            if let Some(t) = time_budget {
                if !(*t > 0.0) {
                    return Err(usage("time budget must be positive"));
                }
                opts.time_budget = Some(Duration::from_secs_f64(*t));
            }
            cmd_search(cli, &data, &opts, *format)
        }
        Command::Construct { how } => cmd_construct(cli, how),
        Command::Validate { input, types } => cmd_validate(cli, input, types.as_deref()),
        Command::VerifyFamily { xt, yt, count, format } => cmd_verify_family(cli, xt.as_deref(), yt.as_deref(), *count, *format),
    }
}

pub fn classify_output(case: Case, format: Format) -> String {
    match (case, format) {
        (Case::Triples, Format::Table) => {
            let mut s = classify::render_triples(&classify::candidate_triples());
            let ex: Vec<String> = classify::excluded_triples()
                .iter()
                .map(|t| format!("({},{},{})", t[0], t[1], t[2]))
                .collect();
            let _ = writeln!(s, "excluded by divisibility: {}", ex.join(" "));
            s
        }
        (Case::Triples, Format::Json) => json(&serde_json::json!({
            "format": FORMAT_VERSION,
            "triples": classify::candidate_triples(),
            "excluded": classify::excluded_triples(),
        })),
        (Case::Hypergeometric, Format::Table) => classify::render_table(&classify::table_hypergeometric(), true),
        (Case::General, Format::Table) => classify::render_table(&classify::table_general(), false),
        (c, Format::Json) => {
            let rows = if c == Case::Hypergeometric {
                classify::table_hypergeometric()
            } else {
                classify::table_general()
            };
            json(&serde_json::json!({ "format": FORMAT_VERSION, "rows": rows }))
        }
    }
}

fn cmd_classify(cli: &Cli, case: Case, format: Format) -> CliResult {
    emit(cli, &classify_output(case, format))?;
    Ok(EXIT_OK)
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    if cli.no_cache {
        return None;
    }
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .or_else(|| Some(std::env::temp_dir().join("hurwitz-cache")))
}

fn cache_key(data: &BranchData, opts: &SearchOptions) -> String {
    let mode = if opts.exhaustive {
        "all".to_string()
    } else {
        format!("w{}", opts.limit)
    };
    let raw = format!("v{FORMAT_VERSION}-{mode}-{data}");
    raw.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect::<String>() + ".json"
}

/// Search through the on-disk cache keyed by format version, mode and
/// branch data. Only definite outcomes are stored.
pub fn cached_search(dir: Option<&Path>, data: &BranchData, opts: &SearchOptions) -> Result<SearchOutcome, String> {
    let path = dir.map(|d| d.join(cache_key(data, opts)));
    if let Some(p) = &path {
        if let Some(hit) = fs::read_to_string(p).ok().and_then(|s| load_cached(&s, data)) {
            return Ok(hit);
        }
    }
    let out = constellation::search(data, opts)?;
    if let (Some(p), SearchOutcome::Found(_) | SearchOutcome::Infeasible(_)) = (&path, &out) {
        if let Some(d) = p.parent() {
            let _ = fs::create_dir_all(d);
        }
        let tmp = p.with_extension(format!("tmp{}", std::process::id()));
        if fs::write(&tmp, json(&search_json(data, opts, &out))).is_ok() {
            let _ = fs::rename(&tmp, p);
        }
    }
    Ok(out)
}

fn load_cached(s: &str, data: &BranchData) -> Option<SearchOutcome> {
    let j: SearchResultJson = serde_json::from_str(s).ok()?;
    if j.format != FORMAT_VERSION || j.query != data.to_string() {
        return None;
    }
    match j.status.as_str() {
        "found" => {
            let cs = j
                .constellations
                .iter()
                .map(|c| Constellation::try_from(c).ok())
                .collect::<Option<Vec<_>>>()?;
            cs.iter()
                .all(|c| c.validate(Some(&data.types)).is_valid())
                .then_some(SearchOutcome::Found(cs))
        }
        "none" => Some(SearchOutcome::Infeasible(j.message.unwrap_or_default())),
        _ => None,
    }
}

pub fn search_json(data: &BranchData, opts: &SearchOptions, out: &SearchOutcome) -> SearchResultJson {
    let (status, message, cs) = match out {
        SearchOutcome::Found(v) => ("found", None, v.iter().map(ConstellationJson::from).collect()),
        SearchOutcome::Infeasible(m) => ("none", Some(m.clone()), Vec::new()),
        SearchOutcome::ResourceLimit(m) => ("resource-limit", Some(m.clone()), Vec::new()),
    };
    SearchResultJson {
        format: FORMAT_VERSION,
        query: data.to_string(),
        exhaustive: opts.exhaustive,
        status: status.into(),
        message,
        constellations: cs,
    }
}

/// One line per slot: label, cycle type, cycles.
pub fn render_constellation(c: &Constellation) -> String {
    let mut s = String::new();
    let genus = c.genus().map(|g| g.to_string()).unwrap_or_else(|_| "?".into());
    let _ = writeln!(s, "degree {}, base genus {}, cover genus {genus}", c.degree(), c.base_genus());
    for (i, (a, b)) in c.handles().iter().enumerate() {
        let _ = writeln!(s, "  a{} = {a}", i + 1);
        let _ = writeln!(s, "  b{} = {b}", i + 1);
    }
    for (label, p) in c.labels().iter().zip(c.slots()) {
        let _ = writeln!(s, "  {label:>4} [{}] {p}", p.cycle_type().compact());
    }
    s
}

fn cmd_search(cli: &Cli, data: &BranchData, opts: &SearchOptions, format: Format) -> CliResult {
    let out = cached_search(cache_dir(cli).as_deref(), data, opts).map_err(usage)?;
    let text = match format {
        Format::Json => json(&search_json(data, opts, &out)),
        Format::Table => match &out {
            SearchOutcome::Found(v) => {
                let mut s = format!("{data}: {} constellation(s)\n", v.len());
                for c in v {
                    s.push_str(&render_constellation(c));
                }
                s
            }
            SearchOutcome::Infeasible(m) => format!("{data}: none ({m})\n"),
            SearchOutcome::ResourceLimit(m) => format!("{data}: gave up ({m})\n"),
        },
    };
    emit(cli, &text)?;
    match &out {
        SearchOutcome::Infeasible(m) => eprintln!("no constellation: {m}"),
        SearchOutcome::ResourceLimit(m) => eprintln!("resource limit: {m}"),
        SearchOutcome::Found(_) => {}
    }
    Ok(out.exit_code())
}

fn report_validation(c: &Constellation, expected: Option<&BranchData>) -> bool {
    let r = c.validate(expected.map(|d| d.types.as_slice()));
    match r.first_violation() {
        None => {
            eprintln!(
                "valid: degree {}, types [{}], genus {}",
                c.degree(),
                c.cycle_types().iter().map(|t| t.compact()).collect::<Vec<_>>().join("; "),
                c.genus().map(|g| g.to_string()).unwrap_or_else(|_| "?".into())
            );
            true
        }
        Some(v) => {
            eprintln!("invalid: {v}");
            false
        }
    }
}

fn cmd_construct(cli: &Cli, how: &Construct) -> CliResult {
    match how {
        Construct::Routes => {
            let mut s = String::new();
            for r in Route::all() {
                let op = match r.op {
                    constellation::RouteOp::Merge => "merge",
                    constellation::RouteOp::Split => "split",
                };
                let _ = writeln!(
                    s,
                    "{:<12} ({},{},{})  seed [{}]  {op} slot {}  -> [{}]{}",
                    r.name,
                    r.triple[0],
                    r.triple[1],
                    r.triple[2],
                    r.seed,
                    r.slot,
                    r.target,
                    if r.needs_force { "  (needs --force)" } else { "" }
                );
            }
            emit(cli, &s)?;
            Ok(EXIT_OK)
        }
        Construct::Route { name, force } => {
            let route = Route::by_name(name).ok_or_else(|| usage(format!("unknown route {name:?}; see `construct routes`")))?;
            if route.needs_force && !force {
                eprintln!("route {name} searches beyond the degree cap; pass --force");
                return Ok(EXIT_RESOURCE);
            }
            let opts = SearchOptions {
                force: *force,
                ..SearchOptions::default()
            };
            let r = route.run(&opts).map_err(|e| CliError(EXIT_NONE, e))?;
            eprintln!("seed {}:", route.seed);
            eprint!("{}", render_constellation(&r.seed));
            eprintln!("pivots {:?} in slot {}", r.pivots, route.slot);
            report_validation(&r.result, Some(&r.target));
            emit(cli, &json(&ConstellationJson::from(&r.result)))?;
            Ok(EXIT_OK)
        }
        Construct::Merge { input, slot, points } | Construct::Split { input, slot, points } => {
            let c = read_constellation(input)?;
            let (a, b) = *points;
            let res = if matches!(how, Construct::Merge { .. }) {
                merge_cycles(&c, *slot, a, b)
            } else {
                split_cycle(&c, *slot, a, b)
            }
            .map_err(|e| usage(e.to_string()))?;
            report_validation(&res, None);
            emit(cli, &json(&ConstellationJson::from(&res)))?;
            Ok(EXIT_OK)
        }
        Construct::Compose { outer, inner } => {
            let o = read_constellation(outer)?;
            let s = fs::read_to_string(inner).map_err(|e| usage(format!("cannot read {}: {e}", inner.display())))?;
            let ij: InnerJson = serde_json::from_str(&s).map_err(|e| usage(format!("{}: {e}", inner.display())))?;
            if ij.outer_degree != o.degree() {
                return Err(usage("inner file was made for a different outer degree"));
            }
            let inner = ij.to_inner().map_err(|e| usage(e.to_string()))?;
            let c = compose(&o, &inner).map_err(|e| usage(e.to_string()))?;
            let ok = report_validation(&c, None);
            emit(cli, &json(&ConstellationJson::from(&c)))?;
            Ok(if ok { EXIT_OK } else { EXIT_NONE })
        }
        Construct::Pipeline {
            outer_output,
            inner_output,
        } => {
            let dir = cache_dir(cli);
            let p = pipeline::run_with(&SearchOptions::default(), &|d, o| cached_search(dir.as_deref(), d, o))
                .map_err(|e| CliError(EXIT_NONE, e))?;
            eprintln!("outer (degree 7, genus {}):", p.outer.genus().unwrap_or(0));
            eprint!("{}", render_constellation(&p.outer));
            eprintln!("inner branch data witnessed by {}:", pipeline::INNER_QUERY);
            eprint!("{}", render_constellation(&p.inner_witness));
            eprintln!("free point on sheet {}", p.free_sheet + 1);
            for (slot, pt, t) in &p.inner_branching {
                eprintln!("  inner branching over {} at outer point {}: {t}", p.outer.labels()[*slot], pt + 1);
            }
            let target: BranchData = pipeline::TARGET_QUERY.parse().map_err(usage)?;
            report_validation(&p.composite, Some(&target));
            if let Some(path) = outer_output {
                write_file(path, &json(&ConstellationJson::from(&p.outer)))?;
            }
            if let Some(path) = inner_output {
                let ij = InnerJson::new(&p.outer, &p.inner).map_err(|e| usage(e.to_string()))?;
                write_file(path, &json(&ij))?;
            }
            emit(cli, &json(&ConstellationJson::from(&p.composite)))?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_validate(cli: &Cli, input: &Path, types: Option<&str>) -> CliResult {
    let c = read_constellation(input)?;
    let expected: Option<BranchData> = types.map(str::parse).transpose().map_err(usage)?;
    let ok = report_validation(&c, expected.as_ref());
    emit(cli, &render_constellation(&c))?;
    Ok(if ok { EXIT_OK } else { EXIT_NONE })
}

fn parse_rat(s: &str) -> Result<Rat, CliError> {
    s.trim().parse::<Rat>().map_err(|e| usage(format!("bad rational {s:?}: {e}")))
}

fn cmd_verify_family(cli: &Cli, xt: Option<&str>, yt: Option<&str>, count: usize, format: Format) -> CliResult {
    let params = match (xt, yt) {
        (None, None) => Vec::new(),
        (None, Some(_)) => return Err(usage("--yt needs --xt")),
        (Some(x), None) => vec![FamilyParams::from_xt(parse_rat(x)?)],
        (Some(x), Some(y)) => {
            let (x, y) = (parse_rat(x)?, parse_rat(y)?);
            vec![FamilyParams::rational(x.clone(), y.clone())
                .ok_or_else(|| usage(format!("({x}, {y}) is not on y^2 = x^3 + 1")))?]
        }
    };
    let report = family::verify_family(&params, count.max(1));
    let text = match format {
        Format::Json => json(&report),
        Format::Table => report.render_text(),
    };
    emit(cli, &text)?;
    Ok(if report.all_passed { EXIT_OK } else { EXIT_NONE })
}
