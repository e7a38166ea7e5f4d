//! Command-line front end for the exact-arithmetic orbit / coset / series toolkit.
//!
//! Four subcommands:
//! * `orbits p q` — survey graded nilpotent orbits: traces, dimensions,
//!   regularity, and the transpose action.
//! * `classify FILE` — read a matrix pair from JSON and identify its orbit.
//! * `cosets p q` — build a closed double-coset representative, verify
//!   closedness, and round-trip its invariants.
//! * `lfun p` — verify the series identity symbolically or evaluate spherical
//!   values and the pole order at specific character values.
//!
//! Exit codes: 0 = all checks pass, 1 = a mathematical check failed,
//! 2 = usage error (bad arguments, malformed input, limits exceeded).

mod reports;

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use orbitlab::error::Error;
use orbitlab::exact::{Domain, Scalar};
use orbitlab::io::PairFile;

/// Default cap on p + q for pair-indexed commands.
const DEFAULT_PAIR_CAP: usize = 12;
/// Default cap on series truncation degrees.
const DEFAULT_TRUNC_CAP: usize = 12;
/// Environment variable overriding the caps: "<pair_cap>[,<trunc_cap>]".
const LIMITS_ENV: &str = "ORBITLAB_LIMITS";

#[derive(Parser)]
#[command(
    name = "orbitlab",
    about = "Exact-arithmetic checks for graded nilpotent orbits, symmetric-space cosets, and spherical series",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Scalar domain: Q, Fp:<prime>, or Cyc:<order>.
    #[arg(long, global = true, default_value = "Q")]
    field: String,

    /// Truncation degree for series computations.
    #[arg(long, global = true, default_value_t = 6)]
    truncate: usize,

    /// Random seed (reserved; all computations here are deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker thread count (0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Disable the built-in size caps.
    #[arg(long, global = true)]
    unsafe_limits: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Survey the graded nilpotent orbits for signature (p, q).
    Orbits {
        p: usize,
        q: usize,
        /// Keep only orbits whose trace equals this value.
        #[arg(long)]
        find_trace: Option<i64>,
        /// Cross-check every trace against the brute-force linear-algebra value.
        #[arg(long)]
        oracle: bool,
    },
    /// Classify the orbit of a matrix pair stored as JSON.
    Classify {
        /// Path to a JSON file with fields "x" and "y".
        file: PathBuf,
    },
    /// Build and analyze a closed double-coset representative.
    Cosets {
        p: usize,
        q: usize,
        /// Number of swapped coordinate pairs in the representative.
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Comma-separated block parameters (each != 1, -1).
        #[arg(long, value_delimiter = ',')]
        a: Vec<String>,
    },
    /// Series identity and spherical-value computations for n = 2p + 1.
    Lfun {
        p: usize,
        /// Verify the symbolic series identity through this degree.
        #[arg(long, conflicts_with = "chars")]
        verify: Option<usize>,
        /// Comma-separated character values (rationals or zeta:<order>:<power>).
        #[arg(long, value_delimiter = ',')]
        chars: Option<Vec<String>>,
    },
}

struct Limits {
    pair_cap: usize,
    trunc_cap: usize,
}

fn read_limits(unsafe_limits: bool) -> Result<Limits, String> {
    if unsafe_limits {
        return Ok(Limits {
            pair_cap: usize::MAX,
            trunc_cap: usize::MAX,
        });
    }
    let mut limits = Limits {
        pair_cap: DEFAULT_PAIR_CAP,
        trunc_cap: DEFAULT_TRUNC_CAP,
    };
    if let Ok(raw) = std::env::var(LIMITS_ENV) {
        let (pair_cap, trunc_cap) = parse_limit_spec(&raw)?;
        limits.pair_cap = pair_cap;
        if let Some(t) = trunc_cap {
            limits.trunc_cap = t;
        }
    }
    Ok(limits)
}

/// Parses `"<pair_cap>[,<trunc_cap>]"`.
fn parse_limit_spec(raw: &str) -> Result<(usize, Option<usize>), String> {
    let mut parts = raw.splitn(2, ',');
    let pair = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| format!("bad {LIMITS_ENV} value {raw:?}"))?;
    let trunc = match parts.next() {
        Some(t) => Some(
            t.trim()
                .parse()
                .map_err(|_| format!("bad {LIMITS_ENV} value {raw:?}"))?,
        ),
        None => None,
    };
    Ok((pair, trunc))
}

fn check_pair_cap(p: usize, q: usize, limits: &Limits) -> Result<(), String> {
    if p + q > limits.pair_cap {
        return Err(format!(
            "p + q = {} exceeds the cap of {} (raise via {LIMITS_ENV} or --unsafe-limits)",
            p + q,
            limits.pair_cap
        ));
    }
    Ok(())
}

fn check_trunc_cap(d: usize, limits: &Limits) -> Result<(), String> {
    if d > limits.trunc_cap {
        return Err(format!(
            "truncation degree {} exceeds the cap of {} (raise via {LIMITS_ENV} or --unsafe-limits)",
            d, limits.trunc_cap
        ));
    }
    Ok(())
}

/// Parse `--chars` entries. Plain entries are read in `field`; any
/// `zeta:<order>:<power>` entry switches the whole list to that cyclotomic
/// field, which must not contradict an explicit non-cyclotomic `--field`.
fn parse_chars(entries: &[String], field: &Domain, field_was_set: bool) -> Result<Vec<Scalar>, String> {
    let mut zeta_order: Option<u32> = None;
    for e in entries {
        if let Some(rest) = e.strip_prefix("zeta:") {
            let mut it = rest.splitn(2, ':');
            let order: u32 = it
                .next()
                .unwrap_or("")
                .trim()
                .parse()
                .map_err(|_| format!("bad character entry {e:?}"))?;
            it.next()
                .ok_or_else(|| format!("bad character entry {e:?} (expected zeta:<order>:<power>)"))?;
            match zeta_order {
                None => zeta_order = Some(order),
                Some(m) if m == order => {}
                Some(m) => {
                    return Err(format!(
                        "mixed cyclotomic orders {m} and {order} in --chars"
                    ))
                }
            }
        }
    }
    let domain = match zeta_order {
        Some(m) => {
            let cyc = Domain::Cyclotomic(m);
            if field_was_set && *field != cyc {
                return Err(format!(
                    "--chars uses zeta:{m}:* but --field is {field}"
                ));
            }
            cyc
        }
        None => field.clone(),
    };
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        let v = if let Some(rest) = e.strip_prefix("zeta:") {
            let mut it = rest.splitn(2, ':');
            let order: u32 = it.next().unwrap().trim().parse().unwrap();
            let power: u32 = it
                .next()
                .unwrap()
                .trim()
                .parse()
                .map_err(|_| format!("bad character entry {e:?}"))?;
            Scalar::cyclotomic_root(order, power).map_err(|err| err.to_string())?
        } else {
            // Comma splitting happened upstream, so a plain token is a single
            // rational; in a cyclotomic domain it lands on the constant slot.
            Scalar::parse_entry(e.trim(), &domain).map_err(|err| err.to_string())?
        };
        out.push(v);
    }
    Ok(out)
}

fn init_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    if threads > 0 {
        // A second build_global in the same process is an error we can ignore.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

enum Rendered {
    Report { body: String, pass: bool },
}

/// Usage-level failures keep their plain message; library errors render
/// through their own display. Both exit with code 2.
enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Lib(e)
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn render<T: serde::Serialize>(report: &T, text: String, pass: bool, format: Format) -> Rendered {
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serialization");
            s.push('\n');
            s
        }
        Format::Text => text,
    };
    Rendered::Report { body, pass }
}

fn usage_error(msg: impl Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run(cli: &Cli, limits: &Limits) -> Result<Rendered, CliError> {
    let format = cli.global.format;
    match &cli.command {
        Command::Orbits {
            p,
            q,
            find_trace,
            oracle,
        } => {
            let report = reports::orbits_report(*p, *q, *find_trace, *oracle)?;
            let text = report.text();
            let pass = report.pass;
            Ok(render(&report, text, pass, format))
        }
        Command::Classify { file } => {
            let raw = std::fs::read_to_string(file)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", file.display())))?;
            let parsed: PairFile = serde_json::from_str(&raw)
                .map_err(|e| Error::Parse(format!("cannot parse {}: {e}", file.display())))?;
            check_pair_cap(parsed.x.rows, parsed.x.cols, limits).map_err(CliError::Usage)?;
            let report = reports::classify_report(&file.display().to_string(), &parsed)?;
            let text = report.text();
            let pass = report.pass;
            Ok(render(&report, text, pass, format))
        }
        Command::Cosets { p, q, k, a } => {
            let domain: Domain = cli.global.field.parse()?;
            let mut values = Vec::with_capacity(a.len());
            for entry in a {
                values.push(Scalar::parse_entry(entry.trim(), &domain)?);
            }
            let report = reports::cosets_report(*p, *q, *k, &values, &domain)?;
            let text = report.text();
            let pass = report.pass;
            Ok(render(&report, text, pass, format))
        }
        Command::Lfun { p, verify, chars } => match (verify, chars) {
            (Some(d), None) => {
                check_trunc_cap(*d, limits).map_err(CliError::Usage)?;
                let report = reports::lfun_verify_report(*p, *d)?;
                let text = report.text();
                let pass = report.pass;
                Ok(render(&report, text, pass, format))
            }
            (None, Some(entries)) => {
                let field_was_set = cli.global.field != "Q";
                let domain: Domain = cli.global.field.parse()?;
                let values = parse_chars(entries, &domain, field_was_set).map_err(CliError::Usage)?;
                check_trunc_cap(cli.global.truncate, limits).map_err(CliError::Usage)?;
                let report = reports::lfun_chars_report(*p, &values, cli.global.truncate)?;
                let text = report.text();
                let pass = report.pass;
                Ok(render(&report, text, pass, format))
            }
            (None, None) => Err(CliError::Usage(
                "lfun requires either --verify <degree> or --chars <values>".into(),
            )),
            (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.global.threads);

    let limits = match read_limits(cli.global.unsafe_limits) {
        Ok(l) => l,
        Err(msg) => return usage_error(msg),
    };
    // Pair-indexed commands share one size cap.
    let cap_check = match &cli.command {
        Command::Orbits { p, q, .. } | Command::Cosets { p, q, .. } => {
            check_pair_cap(*p, *q, &limits)
        }
        Command::Lfun { p, .. } => check_pair_cap(*p, p + 1, &limits),
        Command::Classify { .. } => Ok(()),
    };
    if let Err(msg) = cap_check {
        return usage_error(msg);
    }

    match run(&cli, &limits) {
        Ok(Rendered::Report { body, pass }) => {
            if let Some(path) = &cli.global.out {
                if let Err(e) = std::fs::write(path, &body) {
                    return usage_error(format!("cannot write {}: {e}", path.display()));
                }
            } else {
                print!("{body}");
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => usage_error(e),
    }
}
