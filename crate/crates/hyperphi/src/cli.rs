//! Command-line front end. Every command builds a [`Report`].

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperphi_core::geometry::{fan_family, fan_test, Fan, FanMode};
use hyperphi_core::hyperspace::{is_hyperplane_function, theorem_bounds};
use hyperphi_core::incidence::{
    build_incidence, canonical_direction, rank_report, rank_report_within, Hyperplane, IncidenceKind, RankReport,
};
use hyperphi_core::phi::{degree, expand, phi_table, Degree, FnTable, MultiIndex};
use hyperphi_core::verify::{run_suite, Suite, SuiteConfig, SuiteReport};
use hyperphi_core::{Budget, Check, Error, Point, RingCtx};
use serde_json::{json, Value};

use crate::io::{matrix_to_dump, read_table, table_to_csv, table_to_json, FanDoc};
use crate::report::{wide, Format, Report, Table};
use crate::CliError;

/// Environment variable overriding the default budgets.
pub const BUDGET_ENV: &str = "PADIC_BUDGET";

/// Fan-screen violations listed in full; the rest are only counted.
const MAX_LISTED_VIOLATIONS: usize = 8;

#[derive(Parser, Debug)]
#[command(
    name = "hyperphi",
    version,
    about = "Phi expansions, incidence ranks and hyperplane-span screening over Z/p^kZ"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; csv is only accepted for rank tables.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest matrix (rows × cols) any command may build.
    #[arg(long, global = true)]
    pub max_entries: Option<u128>,
    /// Largest elimination work (rows × cols × rank bound).
    #[arg(long, global = true)]
    pub max_work: Option<u128>,
    /// Largest exhaustive enumeration (tuples, fans, fan × hyperplane pairs).
    #[arg(long, global = true)]
    pub max_tuples: Option<u128>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct CtxArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Phi,
    Incidence,
    Factorization,
    Geometry,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    W,
    Wstar,
    Astar,
    AstarLiteral,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ranks of the incidence matrices with every rank relation that applies.
    Rank(CtxArgs),
    /// Rank reports over a grid of contexts, as one table.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Skip contexts with more points than this.
        #[arg(long, default_value_t = 4096)]
        max_points: usize,
    },
    /// Run property suites at one context.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// Degree, hyperplane-span membership and an optional fan screen for a table.
    Member {
        #[arg(long = "fn", value_name = "FILE")]
        file: PathBuf,
        #[arg(long)]
        fan_screen: bool,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fans per scale when the family is sampled.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// Phi-basis coefficients of a table.
    Expand {
        #[arg(long = "fn", value_name = "FILE")]
        file: PathBuf,
    },
    /// Degree of a table.
    Degree {
        #[arg(long = "fn", value_name = "FILE")]
        file: PathBuf,
    },
    /// The three dimension bounds at a context.
    Bounds(CtxArgs),
    /// List fans on one scale, exhaustively (n = 2) or sampled.
    Fans {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, default_value_t = 0)]
        scale: u32,
        /// Sample this many fans instead of enumerating.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a phi function or hyperplane indicator as a table file.
    Table {
        #[command(flatten)]
        ctx: CtxArgs,
        /// Multi-index of the phi function, e.g. 2,1.
        #[arg(long, value_delimiter = ',', conflicts_with = "hyperplane", required_unless_present = "hyperplane")]
        phi: Option<Vec<u64>>,
        /// Normal vector of the hyperplane, e.g. 1,1.
        #[arg(long, value_delimiter = ',')]
        hyperplane: Option<Vec<u64>>,
        #[arg(long, default_value_t = 0, requires = "hyperplane")]
        level: u64,
        /// Output path; `.csv` selects CSV, anything else JSON.
        #[arg(long)]
        out: PathBuf,
    },
    /// Dump an incidence matrix.
    Matrix {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, value_enum)]
        kind: MatrixKind,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `N` or a comma list of `entries=N`, `work=W`, `tuples=M`.
/// A bare `N` sets the entry limit and scales the work limit with it.
pub fn parse_budget(spec: &str, base: Budget) -> Result<Budget, CliError> {
    let bad = || CliError::Usage(format!("{BUDGET_ENV}: cannot parse {spec:?}"));
    let num = |s: &str| s.trim().parse::<u128>().map_err(|_| bad());
    let mut b = base;
    if let Ok(n) = num(spec) {
        b.max_matrix_entries = n;
        b.max_elimination_work = n.saturating_mul(64);
        return Ok(b);
    }
    for part in spec.split(',') {
        let (key, val) = part.split_once('=').ok_or_else(bad)?;
        let v = num(val)?;
        match key.trim() {
            "entries" => b.max_matrix_entries = v,
            "work" => b.max_elimination_work = v,
            "tuples" => b.max_exhaustive = v,
            _ => return Err(bad()),
        }
    }
    Ok(b)
}

impl Cli {
    /// Defaults, then the environment, then flags.
    pub fn budget(&self, env: Option<&str>) -> Result<Budget, CliError> {
        let mut b = match env {
            Some(s) => parse_budget(s, Budget::default())?,
            None => Budget::default(),
        };
        if let Some(v) = self.max_entries {
            b.max_matrix_entries = v;
        }
        if let Some(v) = self.max_work {
            b.max_elimination_work = v;
        }
        if let Some(v) = self.max_tuples {
            b.max_exhaustive = v;
        }
        Ok(b)
    }
}

/// Parse, run and print; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let env = std::env::var(BUDGET_ENV).ok();
    let outcome = cli
        .budget(env.as_deref())
        .and_then(|budget| run(&cli, echo, &budget))
        .and_then(|report| Ok((report.render(cli.format)?, report.exit_code())));
    match outcome {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(e) => {
            eprintln!("hyperphi: {e}");
            e.exit_code()
        }
    }
}

fn context(p: u64, k: u32, n: usize) -> Result<RingCtx, CliError> {
    RingCtx::new(p, k, n).map_err(|e| match e {
        Error::Overflow { .. } => CliError::Core(e),
        other => CliError::Usage(other.to_string()),
    })
}

impl CtxArgs {
    fn ring(self) -> Result<RingCtx, CliError> {
        context(self.p, self.k, self.n)
    }
}

/// Run a parsed command.
pub fn run(cli: &Cli, echo: Vec<String>, budget: &Budget) -> Result<Report, CliError> {
    let tabular = matches!(cli.command, Command::Rank(_) | Command::Sweep { .. });
    if cli.format == Format::Csv && !tabular {
        return Err(CliError::Usage("CSV output is only available for rank and sweep".into()));
    }
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Rank(c) => cmd_rank(&c.ring()?, echo, budget),
        Command::Sweep { p, k, n, max_points } => cmd_sweep(p, k, n, *max_points, echo, budget)?,
        Command::Verify { suite, ctx, seed, samples } => {
            let cfg = SuiteConfig { seed: *seed, samples: *samples, budget: *budget };
            cmd_verify(*suite, &ctx.ring()?, &cfg, echo)?
        }
        Command::Member { file, fan_screen, p, k, n, seed, samples } => {
            let f = read_table(file)?;
            check_context(f.ctx(), *p, *k, *n)?;
            let cfg = SuiteConfig { seed: *seed, samples: *samples, budget: *budget };
            cmd_member(&f, *fan_screen, &cfg, echo)?
        }
        Command::Expand { file } => cmd_expand(&read_table(file)?, echo),
        Command::Degree { file } => {
            let f = read_table(file)?;
            let mut r = Report::new(echo, Some(f.ctx()));
            r.value("degree", degree_value(degree(&f)));
            r
        }
        Command::Bounds(c) => cmd_bounds(&c.ring()?, echo)?,
        Command::Fans { ctx, scale, samples, seed } => cmd_fans(&ctx.ring()?, *scale, *samples, *seed, echo, budget)?,
        Command::Table { ctx, phi, hyperplane, level, out } => {
            cmd_table(&ctx.ring()?, phi.as_deref(), hyperplane.as_deref(), *level, out, echo)?
        }
        Command::Matrix { ctx, kind, out } => cmd_matrix(&ctx.ring()?, *kind, out, echo, budget)?,
    };
    report.timing.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

fn check_context(ctx: &RingCtx, p: Option<u64>, k: Option<u32>, n: Option<usize>) -> Result<(), CliError> {
    let want = (p.unwrap_or(ctx.p()), k.unwrap_or(ctx.k()), n.unwrap_or(ctx.n()));
    let have = (ctx.p(), ctx.k(), ctx.n());
    if want != have {
        return Err(CliError::Parse(format!("context mismatch: table is {have:?}, flags ask for {want:?}")));
    }
    Ok(())
}

fn degree_value(d: Degree) -> Value {
    match d {
        Degree::NegInfinity => Value::from("-inf"),
        Degree::Finite(d) => Value::from(d),
    }
}

fn opt(v: Option<u128>) -> Value {
    v.map_or(Value::Null, wide)
}

const RANK_COLUMNS: [&str; 8] = ["p", "k", "n", "rank_W", "rank_Wstar", "dim_H", "checks", "failed"];

fn rank_row(rr: &RankReport) -> Vec<Value> {
    let failed = rr.checks.iter().filter(|c| !c.pass).count();
    vec![
        Value::from(rr.p),
        Value::from(rr.k),
        Value::from(rr.n),
        opt(rr.rank_w),
        opt(rr.rank_wstar),
        opt(rr.dim_h),
        Value::from(rr.checks.len()),
        Value::from(failed),
    ]
}

fn rank_table(rows: Vec<Vec<Value>>) -> Table {
    Table { columns: RANK_COLUMNS.iter().map(|s| s.to_string()).collect(), rows }
}

fn cmd_rank(ctx: &RingCtx, echo: Vec<String>, budget: &Budget) -> Report {
    let rr = rank_report(ctx, budget);
    let mut r = Report::new(echo, Some(ctx));
    r.value("rank_W", opt(rr.rank_w));
    r.value("rank_Wstar", opt(rr.rank_wstar));
    r.value("dim_H", opt(rr.dim_h));
    r.value("astar_path", rr.astar_path);
    r.value("rank_Wstar_by_scale", rr.rank_wstar_by_scale.iter().map(|&v| wide(v)).collect::<Vec<_>>());
    r.checks(rr.checks.iter().cloned());
    r.omitted.extend(rr.omitted.iter().cloned());
    r.budget_exceeded = rr.rank_w.is_none() || rr.rank_wstar.is_none();
    r.table = Some(rank_table(vec![rank_row(&rr)]));
    r
}

fn cmd_sweep(
    ps: &[u64],
    ks: &[u32],
    ns: &[usize],
    max_points: usize,
    echo: Vec<String>,
    budget: &Budget,
) -> Result<Report, CliError> {
    let mut r = Report::new(echo, None);
    let mut rows = Vec::new();
    for &p in ps {
        for &k in ks {
            for &n in ns {
                let tag = format!("p{p}_k{k}_n{n}");
                let ctx = match context(p, k, n) {
                    Ok(c) if c.size() <= max_points => c,
                    Ok(_) | Err(CliError::Core(Error::Overflow { .. })) => {
                        r.omitted.push(format!("{tag}: more than {max_points} points"));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let rr = rank_report_within(&ctx, budget, max_points as u128);
                r.checks(rr.checks.iter().map(|c| Check { name: format!("{tag}.{}", c.name), ..c.clone() }));
                r.omitted.extend(rr.omitted.iter().map(|o| format!("{tag}: {o}")));
                r.budget_exceeded |= rr.rank_w.is_none() || rr.rank_wstar.is_none();
                rows.push(rank_row(&rr));
            }
        }
    }
    r.table = Some(rank_table(rows));
    Ok(r)
}

fn cmd_verify(suite: SuiteArg, ctx: &RingCtx, cfg: &SuiteConfig, echo: Vec<String>) -> Result<Report, CliError> {
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Phi => vec![Suite::Phi],
        SuiteArg::Incidence => vec![Suite::Incidence],
        SuiteArg::Factorization => vec![Suite::Factorization],
        SuiteArg::Geometry => vec![Suite::Geometry],
    };
    // One thread per suite; results are collected in declaration order.
    let outcomes: Vec<hyperphi_core::Result<SuiteReport>> = thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|&x| s.spawn(move || run_suite(x, ctx, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut r = Report::new(echo, Some(ctx));
    r.seed = Some(cfg.seed);
    r.value("samples", cfg.samples);
    for out in outcomes {
        let sr = out?;
        let name = sr.suite.name();
        r.checks(sr.checks.into_iter().map(|c| Check { name: format!("{name}.{}", c.name), ..c }));
        for (stat, v) in sr.stats {
            r.count(format!("{name}.{stat}"), v);
        }
        r.omitted.extend(sr.omitted.into_iter().map(|o| format!("{name}: {o}")));
    }
    Ok(r)
}

/// The fans screened for `f`: every scale `0..=k−2`, exhaustive in dimension
/// two when the budget allows and sampled otherwise.
fn screen_families(ctx: &RingCtx, cfg: &SuiteConfig) -> Result<Vec<(u32, bool, Vec<Fan>)>, CliError> {
    let mut out = Vec::new();
    for scale in 0..=ctx.k() - 2 {
        let exhaustive = if ctx.n() == 2 {
            match fan_family(ctx, scale, FanMode::Exhaustive, &cfg.budget) {
                Ok(f) => Some(f),
                Err(Error::BudgetExceeded { .. }) => None,
                Err(e) => return Err(e.into()),
            }
        } else {
            None
        };
        match exhaustive {
            Some(f) => out.push((scale, true, f)),
            None => {
                let mode = FanMode::Sampled { seed: cfg.seed ^ scale as u64, count: cfg.samples };
                out.push((scale, false, fan_family(ctx, scale, mode, &cfg.budget)?));
            }
        }
    }
    Ok(out)
}

fn cmd_member(f: &FnTable, fan_screen: bool, cfg: &SuiteConfig, echo: Vec<String>) -> Result<Report, CliError> {
    let ctx = f.ctx();
    let mut r = Report::new(echo, Some(ctx));
    let deg = degree(f);
    r.value("degree", degree_value(deg));
    let member = match is_hyperplane_function(f, &cfg.budget) {
        Ok(cert) => {
            r.value("member", cert.is_some());
            let terms = cert.map(|c| {
                c.terms
                    .into_iter()
                    .map(|(m, b, coeff)| json!({"m": m, "direction": b, "coeff": coeff}))
                    .collect::<Vec<_>>()
            });
            r.value("certificate", terms);
            Some(r.get_value("member") == Some(&Value::Bool(true)))
        }
        Err(e @ Error::BudgetExceeded { .. }) => {
            r.omitted.push(format!("membership: {e}"));
            r.budget_exceeded = true;
            None
        }
        Err(e) => return Err(e.into()),
    };
    if member == Some(true) {
        let d = deg.as_i64().unwrap_or(0) as u128;
        r.check(Check::new("member_degree_at_most_pk_minus_1", d, hyperphi_core::Relation::Le, ctx.pk() as u128 - 1));
    }
    if !fan_screen {
        return Ok(r);
    }
    if ctx.k() < 2 || ctx.n() < 2 {
        r.omitted.push("fan screen: fans need k >= 2 and n >= 2".into());
        return Ok(r);
    }
    let families = match screen_families(ctx, cfg) {
        Ok(f) => f,
        Err(CliError::Core(e @ Error::BudgetExceeded { .. })) => {
            r.omitted.push(format!("fan screen: {e}"));
            r.budget_exceeded = true;
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let mut summary = Vec::new();
    let mut listed = Vec::new();
    let mut total = 0usize;
    for (scale, exhaustive, fans) in &families {
        let rep = fan_test(f, fans);
        total += rep.violations.len();
        if !exhaustive {
            r.seed = Some(cfg.seed);
        }
        summary.push(json!({
            "scale": scale,
            "mode": if *exhaustive { "exhaustive" } else { "sampled" },
            "fans": rep.fans_checked,
            "violations": rep.violations.len(),
        }));
        for v in rep.violations.iter().take(MAX_LISTED_VIOLATIONS.saturating_sub(listed.len())) {
            listed.push(json!({
                "scale": scale,
                "fan_index": v.fan_index,
                "sum": v.sum,
                "fan": FanDoc::from_fan(&fans[v.fan_index]),
            }));
        }
    }
    r.value("fan_screen", summary);
    r.value("fan_violation_count", total);
    r.value("fan_violations", listed);
    if member == Some(true) {
        r.check(Check::violations("member_fan_violations", total as u128));
    }
    Ok(r)
}

fn cmd_expand(f: &FnTable, echo: Vec<String>) -> Report {
    let mut r = Report::new(echo, Some(f.ctx()));
    let coeffs = expand(f);
    r.value("degree", degree_value(coeffs.degree()));
    let support: Vec<Value> = coeffs.support().map(|(a, c)| json!({"alpha": a.entries(), "coeff": c})).collect();
    r.value("coefficients", support);
    let back = coeffs.synthesize();
    let mismatches = back.values().iter().zip(f.values()).filter(|(a, b)| a != b).count();
    r.check(Check::violations("synthesis_mismatches", mismatches as u128));
    r
}

fn cmd_bounds(ctx: &RingCtx, echo: Vec<String>) -> Result<Report, CliError> {
    let b = theorem_bounds(ctx)?;
    let mut r = Report::new(echo, Some(ctx));
    r.count("trivial_bound", b.trivial_bound);
    r.count("fan_bound", b.fan_bound);
    r.count("ubn_bound", b.ubn_bound);
    r.value("fan_bound_below_trivial", b.fan_bound < b.trivial_bound);
    Ok(r)
}

fn cmd_fans(
    ctx: &RingCtx,
    scale: u32,
    samples: Option<u64>,
    seed: u64,
    echo: Vec<String>,
    budget: &Budget,
) -> Result<Report, CliError> {
    let mode = match samples {
        Some(count) => FanMode::Sampled { seed, count },
        None => FanMode::Exhaustive,
    };
    let fans = fan_family(ctx, scale, mode, budget).map_err(|e| match e {
        Error::Hypothesis(m) => CliError::Usage(m),
        other => CliError::Core(other),
    })?;
    let mut r = Report::new(echo, Some(ctx));
    if samples.is_some() {
        r.seed = Some(seed);
    }
    r.value("scale", scale);
    r.value("fan_count", fans.len());
    r.value("fans", fans.iter().map(FanDoc::from_fan).collect::<Vec<_>>());
    Ok(r)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn cmd_table(
    ctx: &RingCtx,
    phi: Option<&[u64]>,
    hyperplane: Option<&[u64]>,
    level: u64,
    out: &Path,
    echo: Vec<String>,
) -> Result<Report, CliError> {
    let usage = |e: Error| CliError::Usage(e.to_string());
    let f = match (phi, hyperplane) {
        (Some(alpha), _) => phi_table(ctx, &MultiIndex::new(ctx, alpha.to_vec()).map_err(usage)?),
        (None, Some(b)) => {
            let dir = canonical_direction(ctx, &Point(b.to_vec())).map_err(usage)?;
            if level >= ctx.pk() {
                return Err(CliError::Usage(format!("level {level} >= p^k = {}", ctx.pk())));
            }
            FnTable::indicator(*ctx, &Hyperplane::with_level(ctx, dir, level).points(ctx))
        }
        (None, None) => return Err(CliError::Usage("give --phi or --hyperplane".into())),
    };
    let is_csv = out.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    write_file(out, &if is_csv { table_to_csv(&f) } else { table_to_json(&f) })?;
    let mut r = Report::new(echo, Some(ctx));
    r.value("path", out.display().to_string());
    r.value("degree", degree_value(degree(&f)));
    Ok(r)
}

fn cmd_matrix(
    ctx: &RingCtx,
    kind: MatrixKind,
    out: &Path,
    echo: Vec<String>,
    budget: &Budget,
) -> Result<Report, CliError> {
    let kind = match kind {
        MatrixKind::W => IncidenceKind::W,
        MatrixKind::Wstar => IncidenceKind::Wstar,
        MatrixKind::Astar => IncidenceKind::AstarReduced,
        MatrixKind::AstarLiteral => IncidenceKind::AstarLiteral,
    };
    let m = build_incidence(kind, ctx, budget)?;
    budget.check_elimination("matrix rank", m.rows() as u128, m.cols() as u128, m.cols() as u128)?;
    write_file(out, &matrix_to_dump(&m))?;
    let mut r = Report::new(echo, Some(ctx));
    r.value("path", out.display().to_string());
    r.value("rows", m.rows());
    r.value("cols", m.cols());
    r.value("rank", m.rank());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_env_forms() {
        let d = Budget::default();
        let b = parse_budget("1000", d).unwrap();
        assert_eq!((b.max_matrix_entries, b.max_elimination_work), (1000, 64_000));
        assert_eq!(b.max_exhaustive, d.max_exhaustive);
        let b = parse_budget("entries=5, tuples=7", d).unwrap();
        assert_eq!((b.max_matrix_entries, b.max_exhaustive), (5, 7));
        assert_eq!(b.max_elimination_work, d.max_elimination_work);
        assert!(parse_budget("lots", d).is_err());
        assert!(parse_budget("speed=3", d).is_err());
    }

    #[test]
    fn flags_override_env() {
        let cli = Cli::try_parse_from(["hyperphi", "--max-tuples", "9", "bounds", "--p", "2", "--k", "2", "--n", "2"])
            .unwrap();
        let b = cli.budget(Some("tuples=100,entries=3")).unwrap();
        assert_eq!((b.max_exhaustive, b.max_matrix_entries), (9, 3));
    }

    #[test]
    fn context_mismatch_is_a_parse_error() {
        let ctx = RingCtx::new(2, 2, 2).unwrap();
        assert!(check_context(&ctx, Some(2), None, None).is_ok());
        assert!(matches!(check_context(&ctx, None, Some(3), None), Err(CliError::Parse(_))));
    }
}
