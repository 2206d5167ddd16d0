//! Command-line front end: argument parsing, run configuration and the
//! `info`, `zeta`, `verify` and `scan` commands.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weng_zeta::numeric::{scan_zeros, ScanReport};
use weng_zeta::symexpr::{Format, XiProduct, ZetaExpression};
use weng_zeta::weyl::diagram_automorphisms;
use weng_zeta::zeta::verify::{verify_group, NumericOptions, VerifyOptions, VerifyReport};
use weng_zeta::zeta::{normalize, z_and_weng, GroupContext, ZetaBundle, ZetaContext};
use weng_zeta::{all_types, build_root_system, Error, GroupCap, Kind};

/// Version of every JSON document the tool emits.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "weng-zeta",
    version,
    about = "Weng zeta functions for maximal parabolics of Chevalley groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Centers, group orders, admissible counts and Levi degrees.
    Info(CommonArgs),
    /// Print ω, F, D, Z and the Weng zeta function.
    Zeta(CommonArgs),
    /// Run the exact and numeric verification suites.
    Verify(CommonArgs),
    /// Bracket zeros of the normalized zeta on Re s = 1/2.
    Scan(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Latex,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Dynkin type letter (A–G).
    pub kind: Option<String>,
    /// Rank of the root system.
    pub rank: Option<usize>,
    /// Parabolic index (1-based) or "all".
    #[arg(long = "p", value_name = "N|all")]
    pub p: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Relative tolerance of the numeric checks.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[arg(long = "t-max", default_value_t = 30.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Skip groups above this rank.
    #[arg(long = "max-rank")]
    pub max_rank: Option<usize>,
    /// Lift the Weyl group size cap to admit E8.
    #[arg(long = "allow-e8")]
    pub allow_e8: bool,
    /// Run over A1–A7, B2–B6, C2–C6, D4–D6, E6, F4, G2.
    #[arg(long = "all-types")]
    pub all_types: bool,
    #[arg(long = "corrupt-d", hide = true)]
    pub corrupt_d: bool,
}

/// Which parabolics to process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParabolicSel {
    All,
    /// 0-based.
    One(usize),
}

/// Validated settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub groups: Vec<(Kind, usize)>,
    pub p: ParabolicSel,
    pub format: OutputFormat,
    pub rank_cap: Option<usize>,
    pub allow_e8: bool,
    pub tolerance: f64,
    pub seed: u64,
    pub t_max: f64,
    pub step: f64,
    pub corrupt_d: bool,
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Usage = 2,
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            status: Status::Ok,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
            status: Status::Usage,
        }
    }

    fn from_error(e: Error) -> Self {
        let status = match e {
            Error::InvalidType { .. }
            | Error::InvalidParabolic { .. }
            | Error::CapExceeded { .. }
            | Error::InvalidArgument(_)
            | Error::Parse(_) => Status::Usage,
            _ => Status::Failed,
        };
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            status,
        }
    }
}

pub fn parse_kind(s: &str) -> Result<Kind, String> {
    match s.to_ascii_uppercase().as_str() {
        "A" => Ok(Kind::A),
        "B" => Ok(Kind::B),
        "C" => Ok(Kind::C),
        "D" => Ok(Kind::D),
        "E" => Ok(Kind::E),
        "F" => Ok(Kind::F),
        "G" => Ok(Kind::G),
        _ => Err(format!("unknown type {s:?}; expected one of A B C D E F G")),
    }
}

impl FromStr for ParabolicSel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(ParabolicSel::All);
        }
        match s.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(ParabolicSel::One(n - 1)),
            _ => Err(format!(
                "--p expects a positive index or \"all\", got {s:?}"
            )),
        }
    }
}

impl RunConfig {
    /// Validates arguments; `scanning` enables the scan-specific rules.
    pub fn from_args(a: &CommonArgs, scanning: bool) -> Result<Self, String> {
        if !(a.tolerance.is_finite() && a.tolerance > 0.0) {
            return Err(format!("--tolerance must be positive, got {}", a.tolerance));
        }
        if scanning && !(a.step.is_finite() && a.step > 0.0) {
            return Err(format!("--step must be positive, got {}", a.step));
        }
        if scanning && !(a.t_max.is_finite() && a.t_max > 0.0) {
            return Err(format!("--t-max must be positive, got {}", a.t_max));
        }
        let default_p = if scanning { "1" } else { "all" };
        let p: ParabolicSel = a.p.as_deref().unwrap_or(default_p).parse()?;
        let groups = if a.all_types {
            if a.kind.is_some() {
                return Err("--all-types takes no KIND/RANK".into());
            }
            all_types()
                .into_iter()
                .filter(|&(_, r)| a.max_rank.is_none_or(|m| r <= m))
                .collect()
        } else {
            let (Some(k), Some(r)) = (a.kind.as_deref(), a.rank) else {
                return Err("expected KIND RANK (for example `A 2`) or --all-types".into());
            };
            let kind = parse_kind(k)?;
            kind.validate(r).map_err(|e| e.to_string())?;
            if let Some(m) = a.max_rank {
                if r > m {
                    return Err(format!("rank {r} exceeds --max-rank {m}"));
                }
            }
            vec![(kind, r)]
        };
        if let ParabolicSel::One(q) = p {
            if let Some(&(k, r)) = groups.iter().find(|&&(_, r)| q >= r) {
                return Err(format!("--p {} out of range for {}{r}", q + 1, k.letter()));
            }
        }
        if scanning && p == ParabolicSel::All && a.format != OutputFormat::Json {
            return Err("scan with --p all needs --format json".into());
        }
        if scanning && a.format == OutputFormat::Latex {
            return Err("scan output is CSV (text) or JSON".into());
        }
        Ok(RunConfig {
            groups,
            p,
            format: a.format,
            rank_cap: a.max_rank,
            allow_e8: a.allow_e8,
            tolerance: a.tolerance,
            seed: a.seed,
            t_max: a.t_max,
            step: a.step,
            corrupt_d: a.corrupt_d,
        })
    }

    pub fn cap(&self) -> GroupCap {
        if self.allow_e8 {
            GroupCap::with_e8()
        } else {
            GroupCap::default()
        }
    }

    fn parabolics(&self, rank: usize) -> Vec<usize> {
        match self.p {
            ParabolicSel::All => (0..rank).collect(),
            ParabolicSel::One(q) => vec![q],
        }
    }

    fn context(&self, kind: Kind, rank: usize) -> weng_zeta::Result<std::sync::Arc<GroupContext>> {
        GroupContext::new(build_root_system(kind, rank)?, self.cap())
    }
}

fn label(kind: Kind, rank: usize) -> String {
    format!("{}{rank}", kind.letter())
}

fn document(command: &str, body: Value) -> String {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
        m.extend(b);
    }
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Group data that does not need the Weyl group enumerated.
pub fn cmd_info(cfg: &RunConfig) -> weng_zeta::Result<Outcome> {
    let mut groups = Vec::new();
    let mut text = String::new();
    for &(kind, rank) in &cfg.groups {
        let order = kind.weyl_order(rank);
        cfg.cap().check(order)?;
        let rs = build_root_system(kind, rank)?;
        let enumerable = GroupCap::default().check(order).is_ok();
        let g = if enumerable {
            Some(GroupContext::new(rs.clone(), cfg.cap())?)
        } else {
            None
        };
        let autos = diagram_automorphisms(&rs);
        let _ = writeln!(
            text,
            "{}: |W| = {order}, |Φ+| = {}, |Aut(Γ)| = {}",
            rs.label(),
            rs.num_positive(),
            autos.len()
        );
        let mut ps = Vec::new();
        for p in cfg.parabolics(rank) {
            let c = rs.center(p)?;
            let degrees = rs.degrees_of_parabolic(p)?;
            let mut orbit: Vec<usize> = autos.iter().map(|a| a.apply_index(p) + 1).collect();
            orbit.sort_unstable();
            orbit.dedup();
            let admissible = match &g {
                Some(g) => Some(ZetaContext::new(g.clone(), p)?.admissible().len()),
                None => None,
            };
            let adm_text = admissible.map_or("not enumerated".to_string(), |n| n.to_string());
            let _ = writeln!(
                text,
                "  p = {}: c = {c}, admissible = {adm_text}, degrees of W_p = {:?}, orbit = {:?}",
                p + 1,
                degrees,
                orbit
            );
            ps.push(json!({
                "p": p + 1,
                "c": c,
                "admissible": admissible,
                "degrees": degrees,
                "orbit": orbit,
            }));
        }
        groups.push(json!({
            "group": rs.label(),
            "order": order.to_string(),
            "positive_roots": rs.num_positive(),
            "automorphisms": autos.len(),
            "parabolics": ps,
        }));
    }
    Ok(Outcome::ok(match cfg.format {
        OutputFormat::Json => document("info", json!({ "groups": groups })),
        _ => text,
    }))
}

fn product_text(p: &XiProduct, format: OutputFormat) -> String {
    let s = match format {
        OutputFormat::Latex => p.to_latex(),
        _ => p.to_text(),
    };
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn expr_out(e: &ZetaExpression, format: OutputFormat) -> String {
    match format {
        OutputFormat::Latex => e.serialize(Format::Latex),
        _ => e.serialize(Format::Text),
    }
}

/// JSON document for one bundle.
pub fn bundle_json(b: &ZetaBundle) -> Value {
    json!({
        "group": b.rs().label(),
        "p": b.p() + 1,
        "c": b.c,
        "omega": b.omega.to_json_value(),
        "F": b.f.to_json_value(),
        "D": b.d.to_json_value(),
        "minimal_factor": b.minimal_factor().to_json_value(),
        "Z": b.z.to_json_value(),
        "xi": b.xi_weng.to_json_value(),
        "xi_normalized": normalize(b).to_json_value(),
    })
}

fn bundle_text(b: &ZetaBundle, format: OutputFormat) -> String {
    let mut out = String::new();
    let normalized = normalize(b);
    if format == OutputFormat::Latex {
        let _ = writeln!(out, "% {} p={} c={}", b.rs().label(), b.p() + 1, b.c);
        let rows = [
            ("\\omega^{G/P}(s)", expr_out(&b.omega, format)),
            ("F(s)", product_text(&b.f, format)),
            ("D(s)", product_text(&b.d, format)),
            ("F(s)/D(s)", product_text(&b.minimal_factor(), format)),
            ("Z(s)", expr_out(&b.z, format)),
            ("\\xi^{G/P}_{o}(s)", expr_out(&b.xi_weng, format)),
            ("\\xi^{G/P}(s)", expr_out(&normalized, format)),
        ];
        for (name, body) in rows {
            let _ = writeln!(out, "{name} = {body}");
        }
    } else {
        let _ = writeln!(out, "{} p={} c={}", b.rs().label(), b.p() + 1, b.c);
        let rows = [
            ("omega", expr_out(&b.omega, format)),
            ("F", product_text(&b.f, format)),
            ("D", product_text(&b.d, format)),
            ("F/D", product_text(&b.minimal_factor(), format)),
            ("Z", expr_out(&b.z, format)),
            ("xi", expr_out(&b.xi_weng, format)),
            ("xi_normalized", expr_out(&normalized, format)),
        ];
        for (name, body) in rows {
            let _ = writeln!(out, "{name} = {body}");
        }
    }
    out
}

fn bundles(cfg: &RunConfig, kind: Kind, rank: usize) -> weng_zeta::Result<Vec<ZetaBundle>> {
    let g = cfg.context(kind, rank)?;
    cfg.parabolics(rank)
        .into_iter()
        .map(|p| {
            let b = z_and_weng(&ZetaContext::new(g.clone(), p)?)?;
            Ok(if cfg.corrupt_d {
                b.with_corrupted_d()
            } else {
                b
            })
        })
        .collect()
}

pub fn cmd_zeta(cfg: &RunConfig) -> weng_zeta::Result<Outcome> {
    let mut docs = Vec::new();
    let mut text = String::new();
    for &(kind, rank) in &cfg.groups {
        for b in bundles(cfg, kind, rank)? {
            match cfg.format {
                OutputFormat::Json => docs.push(bundle_json(&b)),
                f => text.push_str(&bundle_text(&b, f)),
            }
        }
    }
    Ok(Outcome::ok(match cfg.format {
        OutputFormat::Json => document("zeta", json!({ "results": docs })),
        _ => text,
    }))
}

fn report_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    let blocking = r.checks.iter().filter(|c| c.blocking).count();
    let failed: Vec<_> = r.failures().collect();
    let status = if failed.is_empty() { "ok" } else { "FAILED" };
    let _ = writeln!(
        out,
        "{} p={}: {status} ({} checks)",
        r.group,
        r.p + 1,
        blocking
    );
    for c in &failed {
        let _ = writeln!(
            out,
            "  FAIL {}: {}",
            c.name,
            c.detail.as_deref().unwrap_or("")
        );
    }
    for c in r.checks.iter().filter(|c| !c.blocking && !c.passed) {
        let _ = writeln!(
            out,
            "  note {}: {}",
            c.name,
            c.detail.as_deref().unwrap_or("")
        );
    }
    out
}

pub fn cmd_verify(cfg: &RunConfig) -> weng_zeta::Result<Outcome> {
    let opts = VerifyOptions {
        corrupt_d: cfg.corrupt_d,
        numeric: Some(NumericOptions {
            tolerance: cfg.tolerance,
            seed: cfg.seed,
            ..NumericOptions::default()
        }),
    };
    let mut reports = Vec::new();
    for &(kind, rank) in &cfg.groups {
        let g = cfg.context(kind, rank)?;
        reports.extend(verify_group(&g, &cfg.parabolics(rank), opts)?);
    }
    let passed = reports.iter().all(VerifyReport::passed);
    let stdout = match cfg.format {
        OutputFormat::Json => document(
            "verify",
            json!({
                "passed": passed,
                "tolerance": cfg.tolerance,
                "seed": cfg.seed,
                "reports": reports.iter().map(VerifyReport::to_json_value).collect::<Vec<_>>(),
            }),
        ),
        _ => {
            let mut s: String = reports.iter().map(report_text).collect();
            let total = reports.len();
            let bad = reports.iter().filter(|r| !r.passed()).count();
            let _ = writeln!(s, "{} of {total} (group, p) pairs passed", total - bad);
            s
        }
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        status: if passed { Status::Ok } else { Status::Failed },
    })
}

fn scan_json(group: &str, p: usize, r: &ScanReport) -> Value {
    json!({
        "group": group,
        "p": p + 1,
        "t_max": r.t_max,
        "step": r.step,
        "zeros": r.zeros.iter().map(|z| json!({
            "t_lo": z.t_lo,
            "t_hi": z.t_hi,
            "t_mid": z.t_mid,
            "abs_value": z.value_abs,
        })).collect::<Vec<_>>(),
        "imag_ratio": r.imag_ratio,
        "off_line": r.off_line.iter().map(|m| json!({
            "sigma": m.sigma,
            "t": m.t,
            "min_abs": m.min_abs,
        })).collect::<Vec<_>>(),
        "warnings": r.skipped.iter().map(|t| format!("pole near s = 1/2 + {t}i skipped")).collect::<Vec<_>>(),
    })
}

fn scan_csv(r: &ScanReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t_lo", "t_hi", "t_mid", "|value|"])
        .expect("in-memory write");
    for z in &r.zeros {
        w.write_record([
            format!("{:.12}", z.t_lo),
            format!("{:.12}", z.t_hi),
            format!("{:.12}", z.t_mid),
            format!("{:.6e}", z.value_abs),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
}

pub fn cmd_scan(cfg: &RunConfig) -> weng_zeta::Result<Outcome> {
    let mut docs = Vec::new();
    let mut csv_out = String::new();
    let mut stderr = String::new();
    for &(kind, rank) in &cfg.groups {
        for b in bundles(cfg, kind, rank)? {
            let r = scan_zeros(&normalize(&b), cfg.t_max, cfg.step)?;
            for t in &r.skipped {
                let _ = writeln!(
                    stderr,
                    "warning: {} p={}: pole near s = 1/2 + {t}i skipped",
                    label(kind, rank),
                    b.p() + 1
                );
            }
            let _ = writeln!(
                stderr,
                "{} p={}: {} zero(s) on the line up to t = {}; max |Im|/max |value| = {:.2e}",
                label(kind, rank),
                b.p() + 1,
                r.zeros.len(),
                cfg.t_max,
                r.imag_ratio
            );
            for m in &r.off_line {
                let _ = writeln!(
                    stderr,
                    "  off-line minimum |value| at σ = {}: {:.3e} (t = {:.2})",
                    m.sigma, m.min_abs, m.t
                );
            }
            match cfg.format {
                OutputFormat::Json => docs.push(scan_json(&label(kind, rank), b.p(), &r)),
                _ => csv_out.push_str(&scan_csv(&r)),
            }
        }
    }
    Ok(Outcome {
        stdout: match cfg.format {
            OutputFormat::Json => document("scan", json!({ "results": docs })),
            _ => csv_out,
        },
        stderr,
        status: Status::Ok,
    })
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Outcome {
    let (args, scanning) = match &cli.command {
        Command::Scan(a) => (a, true),
        Command::Info(a) | Command::Zeta(a) | Command::Verify(a) => (a, false),
    };
    let cfg = match RunConfig::from_args(args, scanning) {
        Ok(c) => c,
        Err(msg) => return Outcome::usage(msg),
    };
    let result = match cli.command {
        Command::Info(_) => cmd_info(&cfg),
        Command::Zeta(_) => cmd_zeta(&cfg),
        Command::Verify(_) => cmd_verify(&cfg),
        Command::Scan(_) => cmd_scan(&cfg),
    };
    result.unwrap_or_else(Outcome::from_error)
}

/// Parses `args` (program name first) and runs the command. Help and
/// version requests succeed; other parse errors are usage errors.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    status: Status::Usage,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}
