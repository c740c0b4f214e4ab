//! Command-line front end for `loopkit`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 budget exceeded,
//! 3 a theorem check failed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use loopkit::bk::{self, BKElement, BKParams};
use loopkit::mult::GenKind;
use loopkit::search::{self, Isomorphs, Mode, SearchSpec};
use loopkit::structure::{self, SubloopSet};
use loopkit::varieties::{self, catalog};
use loopkit::{Error, LoopTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_FAIL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "loopkit", version, about = "Finite loops: structure, varieties, search")]
pub struct Cli {
    /// Print the variety catalog and exit.
    #[arg(long)]
    pub list_varieties: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct BudgetArgs {
    /// Abort after this many search nodes (or isomorphism steps).
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Abort after this many seconds.
    #[arg(long)]
    pub budget_seconds: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure and variety report for a `.loop` file.
    Check {
        path: PathBuf,
        /// Also run the G-loop test (isomorphism heavy).
        #[arg(long)]
        g_loop: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Enumerate loops of one order.
    Search {
        #[arg(long)]
        order: usize,
        /// Required varieties, comma separated.
        #[arg(long, value_delimiter = ',')]
        require: Vec<String>,
        /// Forbidden varieties, comma separated.
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<String>,
        #[arg(long, value_enum, default_value_t = SearchMode::Count)]
        mode: SearchMode,
        /// Keep one table per isomorphism class in collect and first mode.
        #[arg(long)]
        up_to_iso: bool,
        /// Check required identities on complete tables only.
        #[arg(long)]
        no_propagate: bool,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Where witnesses go in collect and first mode.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the theorem suite on files, or on every loop of order <= k.
    Verify {
        paths: Vec<PathBuf>,
        #[arg(long)]
        corpus: Option<usize>,
    },
    /// Query the infinite loop on Z x Z.
    Construct {
        #[arg(long)]
        p: i64,
        /// Window bound on first coordinates (default p^3).
        #[arg(long)]
        window_a: Option<i64>,
        /// Window bound on second coordinates.
        #[arg(long, default_value_t = 100)]
        window_x: i64,
        #[command(subcommand)]
        op: ConstructOp,
    },
    /// Principal isotopes and the G-loop test.
    Isotopes {
        path: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Quotient by a normal subloop.
    Quotient {
        path: PathBuf,
        /// `nucleus`, `center`, or a comma separated element list.
        #[arg(long)]
        by: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Count reduced tables.
    Count,
    /// Count isomorphism classes.
    CountIso,
    /// Write every table.
    Collect,
    /// Write the first table found.
    First,
}

#[derive(Subcommand, Debug)]
pub enum ConstructOp {
    Mul {
        u: String,
        v: String,
    },
    Ldiv {
        u: String,
        w: String,
    },
    Rdiv {
        w: String,
        v: String,
    },
    Inner {
        #[arg(value_enum)]
        kind: InnerKind,
        x: String,
        y: String,
        s: String,
    },
    Witness,
    Audit,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum InnerKind {
    Ll,
    Rr,
    Tr,
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Budget(String),
    TheoremFail(usize),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Budget(_) => EXIT_BUDGET,
            Failure::TheoremFail(_) => EXIT_FAIL,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget(_) | Error::Capped(_) => Failure::Budget(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the command, returning the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = match &f {
                Failure::Usage(m) => writeln!(err, "error: {m}"),
                Failure::Budget(m) => writeln!(err, "budget exceeded: {m}"),
                Failure::TheoremFail(k) => writeln!(err, "{k} FAIL rows"),
            };
            f.code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Outcome {
    if cli.list_varieties {
        for e in catalog::catalog() {
            let kind = if e.is_equational() { "equational" } else { "computed" };
            writeln!(out, "{:<18} arity={} {kind}  {}", e.id, e.arity(), e.anchor)?;
        }
        return Ok(());
    }
    let Some(cmd) = cli.command else {
        return Err(Failure::Usage("no command given; try --help".into()));
    };
    match cmd {
        Command::Check { path, g_loop, budget } => cmd_check(&load(&path)?, g_loop, budget, out),
        Command::Search { order, require, forbid, mode, up_to_iso, no_propagate, shards, out_dir, budget } => {
            let spec = SearchSpec {
                required: require,
                forbidden: forbid,
                mode: match mode {
                    SearchMode::Count | SearchMode::CountIso => Mode::Count,
                    SearchMode::Collect => Mode::Collect,
                    SearchMode::First => Mode::First,
                },
                isomorphs: if mode == SearchMode::CountIso || up_to_iso {
                    Isomorphs::UpToIso
                } else {
                    Isomorphs::Reduced
                },
                propagate: !no_propagate,
                ..SearchSpec::new(order)
            }
            .budget(budget.budget_nodes, seconds(budget)?);
            cmd_search(&spec, shards, &out_dir, out)
        }
        Command::Verify { paths, corpus } => cmd_verify(&paths, corpus, out),
        Command::Construct { p, window_a, window_x, op } => {
            let mut params = BKParams::new(p)?;
            params = params.with_window(window_a.unwrap_or(params.window_a), window_x)?;
            cmd_construct(&params, op, out)
        }
        Command::Isotopes { path, budget } => cmd_isotopes(&load(&path)?, budget, out),
        Command::Quotient { path, by } => cmd_quotient(&load(&path)?, &by, out),
    }
}

fn load(path: &Path) -> Result<LoopTable, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    LoopTable::parse_loop(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn seconds(b: BudgetArgs) -> Result<Option<Duration>, Failure> {
    match b.budget_seconds {
        None => Ok(None),
        Some(s) if s.is_finite() && s > 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => Err(Failure::Usage(format!("--budget-seconds must be positive, got {s}"))),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn cmd_check(q: &LoopTable, g_loop: bool, budget: BudgetArgs, out: &mut dyn Write) -> Outcome {
    let n = q.order();
    let nuc = structure::nucleus(q);
    writeln!(out, "order: {n}")?;
    writeln!(out, "left nucleus: {}", structure::left_nucleus(q))?;
    writeln!(out, "middle nucleus: {}", structure::middle_nucleus(q))?;
    writeln!(out, "right nucleus: {}", structure::right_nucleus(q))?;
    writeln!(out, "nucleus: {nuc}{}", if nuc.is_whole() { " (N=Q)" } else { "" })?;
    writeln!(out, "center: {}", structure::center(q))?;
    match structure::nilpotency_class(q)? {
        Some(c) => writeln!(out, "nilpotency class: {c}")?,
        None => writeln!(out, "nilpotency class: not nilpotent")?,
    }
    let mut failed = Vec::new();
    for e in catalog::catalog().iter().filter(|e| e.is_equational()) {
        let ok = catalog::check_variety(q, e.id)?;
        if !ok {
            failed.push(e.id);
        }
        writeln!(out, "variety {}: {}", e.id, yes(ok))?;
    }
    if failed.is_empty() {
        writeln!(out, "all varieties pass")?;
    } else {
        writeln!(out, "failing varieties: {}", failed.join(", "))?;
    }
    if structure::is_normal_subloop(q, &nuc)? {
        let quo = structure::quotient(q, &nuc)?;
        let abelian =
            catalog::check_variety(&quo.table, "associative")? && catalog::check_variety(&quo.table, "commutative")?;
        writeln!(out, "Q/N: order {}, abelian group: {}", quo.table.order(), yes(abelian))?;
    } else {
        writeln!(out, "Q/N: nucleus not normal")?;
    }
    if g_loop {
        let b = budget.budget_nodes.unwrap_or(loopkit::iso::DEFAULT_ISO_BUDGET);
        writeln!(out, "g-loop: {}", yes(varieties::is_g_loop_with_budget(q, b)?))?;
    }
    Ok(())
}

pub fn cmd_search(spec: &SearchSpec, shards: usize, out_dir: &Path, out: &mut dyn Write) -> Outcome {
    if shards == 0 {
        return Err(Failure::Usage("--shards must be at least 1".into()));
    }
    let outcome = if shards == 1 { search::enumerate(spec)? } else { search::enumerate_sharded(spec, shards)? };
    if !outcome.tables.is_empty() {
        fs::create_dir_all(out_dir)?;
        for (i, t) in outcome.tables.iter().enumerate() {
            let path = out_dir.join(format!("order{}_{:05}.loop", spec.order, i));
            fs::write(&path, t.to_loop_string())?;
            writeln!(out, "wrote {}", path.display())?;
        }
    }
    writeln!(out, "{}", outcome.summary_line())?;
    Ok(())
}

pub fn cmd_verify(paths: &[PathBuf], corpus: Option<usize>, out: &mut dyn Write) -> Outcome {
    let mut loops: Vec<(String, LoopTable)> = Vec::new();
    if let Some(k) = corpus {
        for n in 1..=k {
            let spec = SearchSpec::new(n).isomorphs(Isomorphs::UpToIso);
            for (i, t) in search::enumerate(&spec)?.tables.into_iter().enumerate() {
                loops.push((format!("corpus-{n}-{i}"), t));
            }
        }
    }
    for p in paths {
        loops.push((p.display().to_string(), load(p)?));
    }
    if loops.is_empty() {
        return Err(Failure::Usage("nothing to verify; give files or --corpus".into()));
    }
    let mut fails = 0;
    for (id, q) in &loops {
        let report = varieties::verify_theorems(q);
        write!(out, "{}", report.lines(id))?;
        fails += report.failures().count();
        if q.order() == 16 {
            let prof = varieties::order16_profile(q)?;
            if prof.proper {
                for l in prof.lines() {
                    writeln!(out, "{id} profile {l}")?;
                }
                let ok = prof.confirms();
                writeln!(out, "{id} order16-profile {}", if ok { "PASS" } else { "FAIL" })?;
                fails += usize::from(!ok);
            }
        }
    }
    writeln!(out, "loops={} fail={fails}", loops.len())?;
    if fails > 0 {
        return Err(Failure::TheoremFail(fails));
    }
    Ok(())
}

fn elem(s: &str) -> Result<BKElement, Failure> {
    s.parse().map_err(Failure::from)
}

pub fn cmd_construct(params: &BKParams, op: ConstructOp, out: &mut dyn Write) -> Outcome {
    match op {
        ConstructOp::Mul { u, v } => writeln!(out, "{}", bk::bk_mul(params, elem(&u)?, elem(&v)?))?,
        ConstructOp::Ldiv { u, w } => writeln!(out, "{}", bk::bk_ldiv(params, elem(&u)?, elem(&w)?)?)?,
        ConstructOp::Rdiv { w, v } => writeln!(out, "{}", bk::bk_rdiv(params, elem(&w)?, elem(&v)?)?)?,
        ConstructOp::Inner { kind, x, y, s } => {
            let kind = match kind {
                InnerKind::Ll => GenKind::LL,
                InnerKind::Rr => GenKind::RR,
                InnerKind::Tr => GenKind::TR,
            };
            writeln!(out, "{}", bk::standard_inner(params, kind, elem(&x)?, elem(&y)?, elem(&s)?)?)?
        }
        ConstructOp::Witness => writeln!(out, "{}", bk::nonnormal_witness(params)?)?,
        ConstructOp::Audit => {
            let rep = bk::window_audit(params);
            for v in &rep.violations {
                writeln!(out, "violation: {v}")?;
            }
            writeln!(out, "{rep}")?;
            if !rep.violations.is_empty() {
                return Err(Failure::TheoremFail(rep.violations.len()));
            }
        }
    }
    Ok(())
}

pub fn cmd_isotopes(q: &LoopTable, budget: BudgetArgs, out: &mut dyn Write) -> Outcome {
    let b = budget.budget_nodes.unwrap_or(loopkit::iso::DEFAULT_ISO_BUDGET);
    let n = q.order();
    let mut classes: Vec<LoopTable> = Vec::new();
    let mut odd = Vec::new();
    for a in 0..n {
        for c in 0..n {
            let iso = q.principal_isotope(a, c);
            if loopkit::iso::isomorphic_with_budget(q, &iso, b)?.is_none() {
                odd.push((a, c));
            }
            let canon = loopkit::iso::canonical_table(&iso);
            if !classes.contains(&canon) {
                classes.push(canon);
            }
        }
    }
    writeln!(out, "principal isotopes: {}", n * n)?;
    writeln!(out, "isomorphism classes among them: {}", classes.len())?;
    if let Some(&(a, c)) = odd.first() {
        writeln!(out, "first non-isomorphic isotope: a={a} b={c} ({} in total)", odd.len())?;
    }
    let routes = varieties::g_loop_routes(q, b)?;
    writeln!(out, "isotope route: {}", yes(routes.isotopes))?;
    writeln!(out, "companion route: {}", yes(routes.companions))?;
    if routes.isotopes != routes.companions {
        return Err(Failure::Usage("G-loop routes disagree".into()));
    }
    writeln!(out, "g-loop: {}", yes(routes.isotopes))?;
    Ok(())
}

pub fn cmd_quotient(q: &LoopTable, by: &str, out: &mut dyn Write) -> Outcome {
    let s = match by.trim() {
        "nucleus" => structure::nucleus(q),
        "center" => structure::center(q),
        list => {
            let elems = list
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Usage(format!("bad element list `{list}`")))?;
            if let Some(&x) = elems.iter().find(|&&x| x >= q.order()) {
                return Err(Failure::Usage(format!("element {x} out of range")));
            }
            SubloopSet::from_elements(q.order(), elems)
        }
    };
    let quo = structure::quotient(q, &s)?;
    writeln!(out, "# quotient by {s}, representatives {:?}", quo.representatives)?;
    write!(out, "{}", quo.table.to_loop_string())?;
    Ok(())
}
