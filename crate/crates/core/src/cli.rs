//! Command-line front end. `run` parses arguments, executes one command and
//! returns the process exit code: 0 pass, 1 verification failure, 2 input
//! error, 3 modular computation needing exact mode.

use crate::bezoutian_cert::{psd_check, verify_hyperzout, HyperzoutOptions, HyperzoutWitness};
use crate::dimension_gate::{format_rows, format_table, gate_grid, GateKind, TableFormat};
use crate::error::{Error, Result};
use crate::exact_algebra::{
    is_psd_symmetric, parse_poly, parse_polys, parse_vector, GradedTuple, HomogeneousPoly, LineOrientation, Rational,
    WeightedSos,
};
use crate::hyperbolic::{check_hyperbolic, HyperbolicPair, Strategy, Verdict};
use crate::manifest::{Manifest, ManifestKind, VerdictRecord};
use crate::quaternion_example::{example_report, ExampleCheck, ExampleOptions, SystemMode, DEFAULT_RANK_ONE_POINTS};
use crate::report::Report;
use crate::wronskian_cert::{
    interlacer_certificate, sos_to_hyperwron, verify_hyperwron, HyperwronWitness, SosOptions, VerifyOptions,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "HYPERWRON_THREADS";

#[derive(Parser, Debug)]
#[command(name = "hyperwron", version, about = "Exact hyperbolic certificates of nonnegativity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify a certificate manifest.
    Verify(VerifyArgs),
    /// Turn a list of squares into a hyperwron manifest.
    Sos2wron(Sos2wronArgs),
    /// Dimension-count tables.
    Gate(GateArgs),
    /// Print the parameterized Bezoutian of p along u, v.
    Bezout(BezoutArgs),
    /// Hyperbolicity tools.
    Hyperbolic {
        #[command(subcommand)]
        command: HyperbolicCommand,
    },
    /// Checks on the 16-variable quaternionic quartic.
    Example(ExampleArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub manifest: PathBuf,
    /// Nonnegativity sample count (default: the manifest's).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Seed for all sampled checks (default: the manifest's).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also check the Bezoutian exactly at sampled points for hyperwrons.
    #[arg(long)]
    pub exact_psd: bool,
    #[arg(long, default_value_t = 1000)]
    pub psd_points: usize,
    /// Also write the report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Sos2wronArgs {
    /// Polynomial file listing the forms g_i; an empty file means zero.
    pub squares: PathBuf,
    /// Weights w_i (default all 1); q = sum w_i g_i^2.
    #[arg(long)]
    pub weights: Option<String>,
    /// Split non-square weights into four squares instead of failing.
    #[arg(long)]
    pub four_square: bool,
    /// Variable count, needed when the list is empty.
    #[arg(long)]
    pub nvars: Option<usize>,
    /// Degree of the g_i, needed when the list is empty.
    #[arg(long)]
    pub half_degree: Option<u32>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, default_value = "cert")]
    pub name: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct GateArgs {
    /// Inclusive range `a..b`, or a single value.
    #[arg(long, default_value = "3..12", value_parser = parse_range)]
    pub m_range: (u64, u64),
    #[arg(long, default_value = "2..8", value_parser = parse_range)]
    pub y_range: (u64, u64),
    /// Degree-restricted hyperzout count instead of the hyperwron count.
    #[arg(long)]
    pub bezoutian: bool,
    #[arg(long)]
    pub tsv: bool,
    /// Print every profile's bound after the table.
    #[arg(long)]
    pub rows: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct BezoutArgs {
    #[arg(long)]
    pub p: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub u: String,
    #[arg(long, allow_hyphen_values = true)]
    pub v: String,
    /// Evaluate at this point and decide PSD exactly.
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum HyperbolicCommand {
    /// Decide or sample hyperbolicity of p in direction e.
    Check(HyperbolicArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Quadratic,
    Family,
    Sampled,
}

#[derive(Args, Debug)]
pub struct HyperbolicArgs {
    #[arg(long)]
    pub p: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub e: String,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Invariance,
    Restriction,
    RankOne,
    #[value(name = "nullspace-U", alias = "nullspace-u")]
    NullspaceU,
    Extremal,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Modular,
    Exact,
}

#[derive(Args, Debug)]
pub struct ExampleArgs {
    #[arg(long, value_enum, default_values_t = [CheckArg::All])]
    pub check: Vec<CheckArg>,
    #[arg(long, value_enum, default_value_t = ModeArg::Modular)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rank-one sample points for the modular cubic system.
    #[arg(long, default_value_t = DEFAULT_RANK_ONE_POINTS)]
    pub points: usize,
}

fn parse_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("`{t}` is not a nonnegative integer"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => (parse(s)?, parse(s)?),
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

fn vector_arg(name: &str, s: &str) -> Result<Vec<Rational>> {
    parse_vector(s).ok_or_else(|| Error::Parse { line: 0, message: format!("--{name} is not a rational vector") })
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        // A second call in the same process (tests) keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    configure_threads();
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::Escalation(_)) {
                let _ = writeln!(err, "hint: rerun with --mode exact");
            }
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<()> {
    write!(out, "{text}").map_err(Error::Io)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Sos2wron(a) => cmd_sos2wron(&a, out),
        Command::Gate(a) => cmd_gate(&a, out),
        Command::Bezout(a) => cmd_bezout(&a, out),
        Command::Hyperbolic { command: HyperbolicCommand::Check(a) } => cmd_hyperbolic_check(&a, out),
        Command::Example(a) => cmd_example(&a, out),
    }
}

fn strategy_for(record: Option<&VerdictRecord>) -> Strategy {
    match record {
        Some(VerdictRecord::Sampled { n, seed }) => Strategy::Sampled { samples: *n, seed: *seed },
        _ => Strategy::Auto,
    }
}

/// Verification report for a parsed manifest. The hyperbolicity verdict is
/// always recomputed, never trusted.
pub fn verify_manifest(m: &Manifest, opts: VerifyOptions, psd_points: Option<usize>) -> Result<Report> {
    let pair = HyperbolicPair::new(m.p.clone(), m.e.clone(), &strategy_for(m.verdict.as_ref()))?;
    let mut report = match m.kind {
        ManifestKind::Hyperwron => {
            let (u, v) = (m.u.clone().unwrap_or_default(), m.v.clone().unwrap_or_default());
            let w = HyperwronWitness::new(pair, u, v, m.phi.clone())?;
            let mut r = verify_hyperwron(&w, &m.claim, opts);
            if let Some(points) = psd_points {
                psd_check(&mut r, &w.pair, &w.u, &w.v, &w.phi, points, opts.seed);
            }
            r
        }
        ManifestKind::Hyperzout => {
            let (u, v) = (m.u.clone().unwrap_or_default(), m.v.clone().unwrap_or_default());
            let live = m.xi.clone().unwrap_or_default();
            let xi = GradedTuple::from_live(m.phi.nvars_in(), pair.degree() as usize, m.phi.degree(), live)?;
            let w = HyperzoutWitness::new(pair, u, v, m.phi.clone(), xi)?;
            verify_hyperzout(&w, &m.claim, HyperzoutOptions { verify: opts, psd_points: psd_points.unwrap_or(1000) })
        }
        ManifestKind::Interlacer => {
            let q = m.interlacer.as_ref().expect("validated");
            let (cert, mut r) = interlacer_certificate(&pair, q, &m.phi, opts)?;
            r.pass_if(
                "identity",
                cert == m.claim,
                format!("{} terms rebuilt, {} claimed", cert.num_terms(), m.claim.num_terms()),
            );
            r
        }
    };
    if let Some(v) = &m.verdict {
        report.meta("claimed verdict", serde_json::to_string(v).expect("serializable"));
    }
    Ok(report)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let m = Manifest::read(&a.manifest)?;
    let opts = VerifyOptions { samples: a.samples.unwrap_or(m.samples), seed: a.seed.unwrap_or(m.seed) };
    let psd = if a.exact_psd || m.kind == ManifestKind::Hyperzout { Some(a.psd_points) } else { None };
    let mut report = verify_manifest(&m, opts, psd)?;
    report.meta("manifest", a.manifest.display());
    let text = report.to_string();
    if let Some(path) = &a.out {
        std::fs::write(path, &text)?;
    }
    emit(out, text)?;
    Ok(report.exit_code())
}

fn cmd_sos2wron(a: &Sos2wronArgs, out: &mut dyn Write) -> Result<i32> {
    let text = read_text(&a.squares)?;
    let has_block = text.lines().any(|l| l.split('#').next().unwrap_or("").trim().starts_with("poly"));
    let squares = if has_block { parse_polys(&text)? } else { Vec::new() };
    let (m, s) = match squares.first() {
        Some(g) => (g.nvars(), g.degree()),
        None => match (a.nvars, a.half_degree) {
            (Some(m), Some(s)) => (m, s),
            _ => return Err(Error::Precondition("an empty square list needs --nvars and --half-degree".into())),
        },
    };
    let weights = match &a.weights {
        Some(w) => vector_arg("weights", w)?,
        None => vec![Rational::from_integer(1.into()); squares.len()],
    };
    if weights.len() != squares.len() {
        return Err(Error::Dimension(format!("{} weights for {} squares", weights.len(), squares.len())));
    }
    let sos = WeightedSos::new(m, s, weights.into_iter().zip(squares).collect())?;
    let w = sos_to_hyperwron(&sos, SosOptions { n: None, four_square: a.four_square })?;
    let manifest = Manifest {
        kind: ManifestKind::Hyperwron,
        p: w.pair.p().clone(),
        e: w.pair.e().to_vec(),
        u: Some(w.u.clone()),
        v: Some(w.v.clone()),
        phi: w.phi.clone(),
        mu: None,
        xi: None,
        interlacer: None,
        claim: sos.to_poly(),
        verdict: Some(VerdictRecord::from(w.pair.verdict())),
        seed: a.seed,
        samples: a.samples,
    };
    let path = manifest.write(&a.out_dir, &a.name)?;
    emit(out, format!("wrote {}\nlorentz dimension: {}\nsquares: {}\n", path.display(), w.pair.nvars(), sos.len()))?;
    Ok(0)
}

fn cmd_gate(a: &GateArgs, out: &mut dyn Write) -> Result<i32> {
    let kind = if a.bezoutian { GateKind::Bezoutian } else { GateKind::Wronskian };
    let ms: Vec<u64> = (a.m_range.0..=a.m_range.1).collect();
    let ys: Vec<u64> = (a.y_range.0.max(1)..=a.y_range.1).collect();
    if ms.is_empty() || ys.is_empty() {
        return Err(Error::Precondition("ranges must be nonempty".into()));
    }
    let reports = gate_grid(kind, &ms, &ys);
    emit(out, format_table(&reports, if a.tsv { TableFormat::Tsv } else { TableFormat::Aligned }))?;
    if a.rows {
        for r in &reports {
            emit(out, format_rows(r))?;
        }
    }
    Ok(0)
}

fn cmd_bezout(a: &BezoutArgs, out: &mut dyn Write) -> Result<i32> {
    let p = parse_poly(&read_text(&a.p)?)?;
    let (u, v) = (vector_arg("u", &a.u)?, vector_arg("v", &a.v)?);
    let pair = HyperbolicPair::with_verdict(p.clone(), u.clone(), Verdict::Sampled { trials: 0, seed: a.seed })?;
    let b = crate::bezoutian_cert::parameterized_bezoutian(&pair, &u, &v)?;
    let mut text = format!("# Bezoutian of p along u, v ({} x {})\n", b.len(), b.len());
    match &a.at {
        None => {
            for (j, row) in b.iter().enumerate() {
                for (l, e) in row.iter().enumerate() {
                    text.push_str(&format!("B[{j}][{l}] = {e}\n"));
                }
            }
        }
        Some(x) => {
            let x = vector_arg("at", x)?;
            if x.len() != p.nvars() {
                return Err(Error::Dimension(format!("--at needs {} entries", p.nvars())));
            }
            let mat: Vec<Vec<Rational>> = b.iter().map(|row| row.iter().map(|e| e.eval(&x)).collect()).collect();
            for row in &mat {
                text.push_str(&row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\t"));
                text.push('\n');
            }
            text.push_str(&format!("psd: {}\n", is_psd_symmetric(&mat)));
        }
    }
    emit(out, text)?;
    Ok(0)
}

/// True when x exhibits non-hyperbolicity: p(e) <= 0 at x = e, or
/// t -> p(t e - x) has a non-real root.
pub fn confirm_refutation(p: &HomogeneousPoly, e: &[Rational], x: &[Rational]) -> Result<bool> {
    use num_traits::Signed;
    if x == e {
        return Ok(!p.eval(e).is_positive());
    }
    Ok(!p.restrict_line(x, e, LineOrientation::Eigen).is_real_rooted())
}

fn cmd_hyperbolic_check(a: &HyperbolicArgs, out: &mut dyn Write) -> Result<i32> {
    let p = parse_poly(&read_text(&a.p)?)?;
    let e = vector_arg("e", &a.e)?;
    let strategy = match a.strategy {
        StrategyArg::Auto => Strategy::Auto,
        StrategyArg::Quadratic => Strategy::Quadratic,
        StrategyArg::Family => Strategy::KnownFamily,
        StrategyArg::Sampled => Strategy::Sampled { samples: a.samples, seed: a.seed },
    };
    let verdict = check_hyperbolic(&p, &e, &strategy)?;
    let mut text = format!("seed: {}\nsamples: {}\nverdict: {verdict}\n", a.seed, a.samples);
    text.push_str(&format!(
        "record: {}\n",
        serde_json::to_string(&VerdictRecord::from(&verdict)).expect("serializable")
    ));
    let code = match &verdict {
        Verdict::Refuted(x) => {
            let ok = confirm_refutation(&p, &e, x)?;
            text.push_str(&format!("witness confirmed: {ok}\n"));
            1
        }
        _ => 0,
    };
    emit(out, text)?;
    Ok(code)
}

fn cmd_example(a: &ExampleArgs, out: &mut dyn Write) -> Result<i32> {
    let checks: Vec<ExampleCheck> = if a.check.contains(&CheckArg::All) {
        ExampleCheck::ALL.to_vec()
    } else {
        a.check
            .iter()
            .map(|c| match c {
                CheckArg::Invariance => ExampleCheck::Invariance,
                CheckArg::Restriction => ExampleCheck::Restriction,
                CheckArg::RankOne => ExampleCheck::RankOne,
                CheckArg::NullspaceU => ExampleCheck::NullspaceU,
                CheckArg::Extremal => ExampleCheck::Extremal,
                CheckArg::All => unreachable!(),
            })
            .collect()
    };
    let mode = match a.mode {
        ModeArg::Modular => SystemMode::Modular { seed: a.seed },
        ModeArg::Exact => SystemMode::Exact,
    };
    let opts = ExampleOptions { mode, seed: a.seed, rank_one_points: a.points, ..ExampleOptions::default() };
    let report = example_report(&checks, opts)?;
    emit(out, &report)?;
    Ok(report.exit_code())
}
