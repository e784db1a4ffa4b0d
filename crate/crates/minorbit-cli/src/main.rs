//! Command-line interface for the minimal-orbit Cohen-Macaulay classifier.
//!
//! Exit codes: 0 success (and "is MCM" for `check`), 1 negative verdict
//! (`check`: not MCM; `crosscheck`: disagreements found), 2 input error,
//! 3 internal disagreement between the oracle and a closed-form criterion.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use minorbit::engine::{
    self, closed_form_verdict, crosscheck, enumerate_box, enumerate_mcm, mcm_oracle,
};
use minorbit::families::{FamilyContext, StabilizerWeight};
use minorbit::rootsys::{pair, Family, SimpleType};
use minorbit::TableFormat;

#[derive(Parser)]
#[command(
    name = "minorbit",
    about = "Equivariant maximal Cohen-Macaulay sheaves on minimal nilpotent orbit closures",
    long_about = None,
    after_help = WEIGHT_SYNTAX
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const WEIGHT_SYNTAX: &str = "\
Weight syntax (--weight):
  type A:       \"lambda\" or \"lambda;l1,...,l(n-1)\"   (integers, l's weakly decreasing)
  type C:       \"lambda0;l1,...,l(n-1)\"              (lambda0 in {0,1}, l's decreasing >= 0)
  types B, D:   \"lambda;l1,...,l(n-2)\"               (halves allowed, e.g. \"0;3/2,1/2\")
  exceptional:  \"a1,a2,...\"                          (nonnegative fundamental-weight coefficients)
An omitted Levi part defaults to zeros. Rank ranges are inclusive: \"2..5\".";

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormatArg {
    Json,
    Csv,
    Text,
}

impl From<TableFormatArg> for TableFormat {
    fn from(f: TableFormatArg) -> TableFormat {
        match f {
            TableFormatArg::Json => TableFormat::Json,
            TableFormatArg::Csv => TableFormat::Csv,
            TableFormatArg::Text => TableFormat::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether one stabilizer weight induces a maximal Cohen-Macaulay
    /// sheaf, cross-checked against the closed-form criterion when one exists
    Check {
        #[arg(long = "type")]
        family: char,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        weight: String,
        /// Print the full family trace
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Enumerate all Cohen-Macaulay weights (exceptional types), or all in a
    /// coordinate box (classical types, --box required)
    Enumerate {
        #[arg(long = "type")]
        family: char,
        #[arg(long)]
        rank: usize,
        /// Coefficient bound for the exceptional scan
        #[arg(long, default_value_t = 16)]
        bound: i64,
        /// Ceiling for the boundary-shell bound doubling
        #[arg(long, default_value_t = 64)]
        ceiling: i64,
        /// Coordinate box for classical types
        #[arg(long = "box")]
        box_bound: Option<i64>,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormatArg,
        /// Write the table here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compare the closed-form criteria against the vanishing oracle on a box
    /// of weights
    Crosscheck {
        #[arg(long = "type")]
        family: char,
        /// Inclusive rank range, e.g. 2..5
        #[arg(long)]
        ranks: String,
        #[arg(long = "box")]
        box_bound: i64,
        /// Scan the half-integral Spin coset (types B and D)
        #[arg(long)]
        spin: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print root-system data: highest root, rho, Levi subsystem, orbit
    /// dimension
    Rootinfo {
        #[arg(long = "type")]
        family: char,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Regenerate the five exceptional classification tables in all formats
    Tables {
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 16)]
        bound: i64,
        #[arg(long, default_value_t = 64)]
        ceiling: i64,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Check {
            family,
            rank,
            weight,
            trace,
            format,
        } => cmd_check(family, rank, &weight, trace, format),
        Command::Enumerate {
            family,
            rank,
            bound,
            ceiling,
            box_bound,
            format,
            out,
            jobs,
        } => with_jobs(jobs, || {
            cmd_enumerate(family, rank, bound, ceiling, box_bound, format.into(), out)
        }),
        Command::Crosscheck {
            family,
            ranks,
            box_bound,
            spin,
            jobs,
        } => with_jobs(jobs, || cmd_crosscheck(family, &ranks, box_bound, spin)),
        Command::Rootinfo {
            family,
            rank,
            format,
        } => cmd_rootinfo(family, rank, format),
        Command::Tables {
            out_dir,
            bound,
            ceiling,
            jobs,
        } => with_jobs(jobs, || cmd_tables(&out_dir, bound, ceiling)),
    }
}

/// Runs the closure inside a rayon pool of the requested size; the default
/// pool uses all cores. Results are deterministic either way.
fn with_jobs<T>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    match jobs {
        None => f(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| e.to_string())
                .expect("thread pool");
            pool.install(f)
        }
    }
}

fn parse_kind(family: char, rank: usize) -> Result<SimpleType, String> {
    let family = Family::from_letter(family)
        .ok_or_else(|| format!("unknown family '{family}', expected one of A B C D E F G"))?;
    SimpleType::new(family, rank).map_err(|e| e.to_string())
}

fn parse_i64(s: &str) -> Result<i64, String> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| format!("'{s}' is not an integer"))
}

/// Integer-or-half entry, doubled: "2" -> 4, "3/2" -> 3, "-1/2" -> -1.
fn parse_half_doubled(s: &str) -> Result<i64, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        if den.trim() != "2" {
            return Err(format!("'{s}': only halves like 3/2 are supported"));
        }
        parse_i64(num)
    } else {
        Ok(2 * parse_i64(s)?)
    }
}

fn parse_weight(kind: SimpleType, s: &str) -> Result<StabilizerWeight, String> {
    let n = kind.rank();
    let (head, levi_part) = match s.split_once(';') {
        Some((h, l)) => (h.trim(), Some(l.trim())),
        None => (s.trim(), None),
    };
    let levi_len = |expected: usize| -> Result<Vec<&str>, String> {
        match levi_part {
            None | Some("") => Ok(Vec::new()),
            Some(l) => {
                let parts: Vec<&str> = l.split(',').collect();
                if parts.len() != expected {
                    Err(format!(
                        "expected {expected} Levi entries for {kind}, got {}",
                        parts.len()
                    ))
                } else {
                    Ok(parts)
                }
            }
        }
    };
    match kind.family() {
        Family::A => {
            let lambda = parse_i64(head)?;
            let parts = levi_len(n - 1)?;
            let levi = if parts.is_empty() {
                vec![0; n - 1]
            } else {
                parts
                    .iter()
                    .map(|p| parse_i64(p))
                    .collect::<Result<_, _>>()?
            };
            Ok(StabilizerWeight::type_a(lambda, levi))
        }
        Family::C => {
            let lambda0 = parse_i64(head)?;
            if !(0..=1).contains(&lambda0) {
                return Err("lambda0 must be 0 or 1".into());
            }
            let parts = levi_len(n - 1)?;
            let levi = if parts.is_empty() {
                vec![0; n - 1]
            } else {
                parts
                    .iter()
                    .map(|p| parse_i64(p))
                    .collect::<Result<_, _>>()?
            };
            Ok(StabilizerWeight::type_c(lambda0 as u8, levi))
        }
        Family::B | Family::D => {
            let lambda = parse_i64(head)?;
            let parts = levi_len(n - 2)?;
            let levi_x2 = if parts.is_empty() {
                vec![0; n - 2]
            } else {
                parts
                    .iter()
                    .map(|p| parse_half_doubled(p))
                    .collect::<Result<_, _>>()?
            };
            Ok(StabilizerWeight::type_bd_doubled(lambda, levi_x2))
        }
        Family::E | Family::F | Family::G => {
            if levi_part.is_some() {
                return Err("exceptional weights are plain comma-separated coefficients".into());
            }
            let coeffs: Vec<i64> = s
                .trim()
                .split(',')
                .map(parse_i64)
                .collect::<Result<_, _>>()?;
            Ok(StabilizerWeight::exceptional(coeffs))
        }
    }
}

fn cmd_check(
    family: char,
    rank: usize,
    weight: &str,
    trace: bool,
    format: OutputFormat,
) -> Result<ExitCode, String> {
    let kind = parse_kind(family, rank)?;
    let w = parse_weight(kind, weight)?;
    let ctx = FamilyContext::new(kind).map_err(|e| e.to_string())?;
    if let Err(e) = ctx.family(&w) {
        return Err(e.to_string());
    }
    let verdict = mcm_oracle(&ctx, &w).map_err(|e| e.to_string())?;
    let closed = closed_form_verdict(&ctx, &w).map_err(|e| e.to_string())?;
    let agreement = closed.map(|c| c == verdict.is_mcm);

    match format {
        OutputFormat::Text => {
            println!("type: {kind}");
            println!("weight: {w}");
            println!("mcm: {}", verdict.is_mcm);
            match closed {
                Some(c) => println!(
                    "closed_form: {c} ({})",
                    if agreement == Some(true) {
                        "agrees"
                    } else {
                        "DISAGREES"
                    }
                ),
                None => println!("closed_form: n/a"),
            }
            if let Some((param, degree)) = verdict.first_violation {
                println!("first_violation: j={param} degree={degree}");
            }
            println!("orbit_dim: {}", ctx.min_orbit_dim());
            if trace {
                for entry in &verdict.trace {
                    println!(
                        "  j={} weight={} profile={}",
                        entry.param,
                        entry.weight,
                        entry.profile.describe()
                    );
                }
            }
        }
        OutputFormat::Json => {
            let mut doc = serde_json::json!({
                "type": kind.to_string(),
                "weight": w.to_string(),
                "is_mcm": verdict.is_mcm,
                "closed_form": closed,
                "agreement": agreement,
                "orbit_dim": ctx.min_orbit_dim(),
                "first_violation": verdict.first_violation
                    .map(|(p, q)| serde_json::json!({"param": p, "degree": q})),
            });
            if trace {
                doc["trace"] = serde_json::to_value(&verdict.trace).map_err(|e| e.to_string())?;
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?
            );
        }
    }

    if agreement == Some(false) {
        eprintln!("error: oracle and closed form disagree; this is a bug");
        return Ok(ExitCode::from(3));
    }
    Ok(if verdict.is_mcm {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_enumerate(
    family: char,
    rank: usize,
    bound: i64,
    ceiling: i64,
    box_bound: Option<i64>,
    format: TableFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let kind = parse_kind(family, rank)?;
    let ctx = FamilyContext::new(kind).map_err(|e| e.to_string())?;
    let table = if kind.is_exceptional() {
        if box_bound.is_some() {
            return Err("--box applies to classical types; exceptional scans use --bound".into());
        }
        enumerate_mcm(&ctx, bound, ceiling).map_err(|e| e.to_string())?
    } else {
        let b = box_bound.ok_or_else(|| {
            format!(
                "type {kind} has unbounded Cohen-Macaulay families; classical enumeration \
                 is box-relative, pass --box <bound>"
            )
        })?;
        enumerate_box(&ctx, b).map_err(|e| e.to_string())?
    };
    let rendered = engine::emit_table(&table, format);
    match out {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{rendered}"),
    }
    println!("count={}", table.count);
    Ok(ExitCode::SUCCESS)
}

fn parse_rank_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("'{s}' is not a rank range like 2..5"))?;
    let lo: usize = lo.trim().parse().map_err(|_| format!("bad rank '{lo}'"))?;
    let hi = hi.trim_start_matches('=');
    let hi: usize = hi.trim().parse().map_err(|_| format!("bad rank '{hi}'"))?;
    if lo > hi {
        return Err(format!("empty rank range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn cmd_crosscheck(
    family: char,
    ranks: &str,
    box_bound: i64,
    spin: bool,
) -> Result<ExitCode, String> {
    let family = Family::from_letter(family).ok_or_else(|| format!("unknown family '{family}'"))?;
    let (lo, hi) = parse_rank_range(ranks)?;
    // validate each rank in the range up front
    for r in lo..=hi {
        SimpleType::new(family, r).map_err(|e| e.to_string())?;
    }
    let report = crosscheck(family, lo..=hi, box_bound, spin).map_err(|e| e.to_string())?;
    println!(
        "crosscheck {}{}..{} box={} spin={}: {} weights tested",
        report.family,
        report.rank_lo,
        report.rank_hi,
        report.box_bound,
        report.spin,
        report.total_weights
    );
    for d in &report.disagreements {
        println!(
            "  DISAGREEMENT rank={} weight={} closed_form={} oracle={}",
            d.rank, d.weight, d.closed_form, d.oracle
        );
    }
    println!("disagreements={}", report.disagreements.len());
    Ok(if report.disagreements.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_rootinfo(family: char, rank: usize, format: OutputFormat) -> Result<ExitCode, String> {
    let kind = parse_kind(family, rank)?;
    let ctx = FamilyContext::new(kind).map_err(|e| e.to_string())?;
    let rs = ctx.root_system();
    let levi = ctx.levi();
    match format {
        OutputFormat::Text => {
            println!("type: {kind}");
            println!("ambient_dim: {}", rs.ambient_dim());
            println!("positive_roots: {}", rs.num_positive_roots());
            println!("theta: {}", rs.highest_root());
            println!("theta_covector: {}", rs.theta_covector());
            let expansion: Vec<String> = rs
                .theta_covector_simple_expansion()
                .iter()
                .map(|c| c.to_string())
                .collect();
            println!(
                "theta_covector_over_simple_coroots: [{}]",
                expansion.join(", ")
            );
            println!("rho: {}", rs.rho());
            println!("levi_type: {}", levi.classified_type_label());
            let indices: Vec<String> = levi
                .simple_indices()
                .iter()
                .map(|i| format!("a{}", i + 1))
                .collect();
            println!("levi_simple_roots: [{}]", indices.join(", "));
            for (i, w) in levi.fundamental_weights().iter().enumerate() {
                println!("levi_fundamental_weight_{}: {}", i + 1, w);
            }
            println!("min_orbit_dim: {}", ctx.min_orbit_dim());
        }
        OutputFormat::Json => {
            let pairings_ok = levi.fundamental_weights().iter().enumerate().all(|(i, w)| {
                levi.simple_roots().iter().enumerate().all(|(j, b)| {
                    let cov = rs.coroot(b).expect("levi simple is a root");
                    let expected = i64::from(i == j);
                    pair(w, &cov)
                        .map(|p| p == minorbit::rat(expected))
                        .unwrap_or(false)
                })
            });
            let doc = serde_json::json!({
                "type": kind.to_string(),
                "ambient_dim": rs.ambient_dim(),
                "positive_roots": rs.num_positive_roots(),
                "theta": rs.highest_root(),
                "theta_covector": rs.theta_covector(),
                "theta_covector_over_simple_coroots": rs.theta_covector_simple_expansion(),
                "rho": rs.rho(),
                "levi_type": levi.classified_type_label(),
                "levi_simple_roots": levi.simple_indices().iter().map(|i| i + 1).collect::<Vec<_>>(),
                "levi_fundamental_weights": levi.fundamental_weights(),
                "levi_pairings_verified": pairings_ok,
                "min_orbit_dim": ctx.min_orbit_dim(),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tables(out_dir: &std::path::Path, bound: i64, ceiling: i64) -> Result<ExitCode, String> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| format!("cannot create {}: {e}", out_dir.display()))?;
    let kinds = [
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::F, 4),
        (Family::G, 2),
    ];
    let mut summary = String::new();
    for (family, rank) in kinds {
        let kind = SimpleType::new(family, rank).expect("exceptional types are admissible");
        let ctx = FamilyContext::new(kind).map_err(|e| e.to_string())?;
        let table = enumerate_mcm(&ctx, bound, ceiling).map_err(|e| e.to_string())?;
        for format in [TableFormat::Json, TableFormat::Csv, TableFormat::Text] {
            let name = format!("{}.{}", kind.to_string().to_lowercase(), format.extension());
            let path = out_dir.join(&name);
            std::fs::write(&path, engine::emit_table(&table, format))
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        let _ = writeln!(summary, "{kind}: count={}", table.count);
    }
    print!("{summary}");
    Ok(ExitCode::SUCCESS)
}
