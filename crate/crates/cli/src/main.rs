use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cdlat_core::cache::LatticeCache;
use cdlat_core::harness::{self, CLAIM_IDS};
use cdlat_core::report::{self, ReportFormat, ShowReport};
use cdlat_core::{parse_spec, Engine, Error, Limits, DEFAULT_MAX_SUBGROUPS};
use clap::{Parser, Subcommand, ValueEnum};

/// Chermak-Delgado measures of explicit finite groups.
///
/// Groups are written in a small language: C12, D60 (order 60), Q8,
/// Ab(2,2,4), (C15 : C4 @ 2), Jp(3,2), A5, S3 x D10, or a catalog name
/// such as SD16.
#[derive(Parser, Debug)]
#[command(name = "cdlat", version)]
struct Cli {
    /// Output format [default: md, except json for `measures` and csv for `survey`]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Refuse groups larger than this
    #[arg(long, global = true, default_value_t = cdlat_core::families::DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Neither read nor write the lattice cache
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory [default: $CDLAT_CACHE, else .cdlat-cache]
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
            Format::Md => ReportFormat::Md,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, center, nilpotency class and structural flags
    Show { spec: String },
    /// Measures per conjugacy class of subgroups, and the set of values
    Measures { spec: String },
    /// Every subgroup with its class, centralizer order and measure
    Lattice { spec: String },
    /// Check a claim against brute force; `all` runs every claim
    Verify {
        #[arg(value_parser = claim_parser())]
        claims: Vec<String>,
    },
    /// One row per catalog group with order in the range
    Survey {
        /// Inclusive order range, e.g. 1..64
        #[arg(long, value_parser = parse_range)]
        orders: (u64, u64),
    },
    /// Maintain the lattice cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Remove unreadable and other-version entries
    Gc,
    /// Count entries and bytes
    Stats,
}

fn claim_parser() -> clap::builder::PossibleValuesParser {
    let mut ids: Vec<&str> = CLAIM_IDS.to_vec();
    ids.push("all");
    clap::builder::PossibleValuesParser::new(ids)
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad lower bound in `{s}`"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("bad upper bound in `{s}`"))?;
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeLimit { .. } | Error::Explosion { .. } => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let limits = Limits {
        max_order: cli.max_order,
        max_subgroups: DEFAULT_MAX_SUBGROUPS,
    };
    let cache = LatticeCache::resolve(cli.cache_dir.as_deref());
    let mut engine = Engine::new(limits);
    if !cli.no_cache {
        engine = engine.with_cache(cache.clone());
    }
    let fmt = |default: ReportFormat| cli.format.map_or(default, ReportFormat::from);
    let out: String;
    let mut code = 0;
    match &cli.command {
        Command::Show { spec } => {
            let spec = parse_spec(spec)?;
            let g = engine.build(&spec)?;
            out = ShowReport::new(&spec, &g).render(fmt(ReportFormat::Md));
        }
        Command::Measures { spec } => {
            let spec = parse_spec(spec)?;
            let a = engine.analyze_spec(&spec)?;
            out = report::render_spectrum(&spec, &a.report, fmt(ReportFormat::Json));
        }
        Command::Lattice { spec } => {
            let spec = parse_spec(spec)?;
            let a = engine.analyze_spec(&spec)?;
            out = report::render_lattice(&spec, &a.lattice, &a.report, fmt(ReportFormat::Md));
        }
        Command::Verify { claims } => {
            let ids: Vec<&str> = if claims.is_empty() || claims.iter().any(|c| c == "all") {
                CLAIM_IDS.to_vec()
            } else {
                claims.iter().map(String::as_str).collect()
            };
            let format = fmt(ReportFormat::Md);
            let mut reports = Vec::new();
            for id in ids {
                let r = harness::run_claim(&engine, id)?;
                if !r.overall_pass {
                    code = 1;
                }
                reports.push(r);
            }
            out = match format {
                ReportFormat::Json if reports.len() == 1 => report::render_verification(&reports[0], format),
                ReportFormat::Json => {
                    let parts: Vec<String> = reports
                        .iter()
                        .map(|r| report::render_verification(r, format).trim_end().to_string())
                        .collect();
                    format!("[\n{}\n]\n", parts.join(",\n"))
                }
                ReportFormat::Csv => {
                    let mut s = String::new();
                    for (i, r) in reports.iter().enumerate() {
                        let text = report::render_verification(r, format);
                        // one header for the whole table
                        s.push_str(if i == 0 { &text } else { text.split_once('\n').map_or("", |x| x.1) });
                    }
                    s
                }
                ReportFormat::Md => reports
                    .iter()
                    .map(|r| report::render_verification(r, format))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
        }
        Command::Survey { orders: (lo, hi) } => {
            let rows = harness::survey(&engine, *lo, *hi)?;
            out = report::render_survey(&rows, fmt(ReportFormat::Csv));
        }
        Command::Cache { action } => match action {
            CacheAction::Gc => {
                let removed = cache.gc()?;
                out = format!("removed {removed} stale entries from {}\n", cache.dir().display());
            }
            CacheAction::Stats => {
                let s = cache.stats()?;
                out = format!(
                    "{}: {} entries, {} bytes, {} stale\n",
                    cache.dir().display(),
                    s.entries,
                    s.bytes,
                    s.stale
                );
            }
        },
    }
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(out.as_bytes())?;
    stdout.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
