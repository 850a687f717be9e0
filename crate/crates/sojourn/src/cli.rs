//! Command-line front end.
//!
//! Subcommands: `scan` (per-q arithmetic records as CSV), `geodesics`
//! (family numerators and sojourn times as CSV), `ekhist` (histogram of the
//! normalized statistic plus a KS/CDF report), `acheck` / `echeck` (the
//! density and exceptional-set counts), and `constants`.
//!
//! Conventions shared by every subcommand:
//!
//! * data goes to `--output` (atomically: written to a temp file in the
//!   target directory, then renamed) or to stdout; progress and timing lines
//!   go to stderr;
//! * exit codes: 0 success, 2 usage error, 3 I/O or resource failure,
//!   4 invariant violation (a bug, reported loudly rather than papered over);
//! * `--workers N` only changes how many blocks run concurrently — output
//!   bytes are identical for every worker count;
//! * floats in CSV are printed with 12 significant digits.

use crate::geodesics;
use crate::parallel;
use crate::sieve::FactorTable;
use crate::stats::{self, OmegaCounts};
use crate::svg;
use crate::{Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

/// Resolved configuration for one subcommand run. Fields not applicable to
/// the subcommand hold their defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Scan cutoff `x` (for `constants`, 0 means "not requested").
    pub limit: u64,
    /// Cusp cutoff height for sojourn times; must be > 1.
    pub t0: f64,
    /// Histogram bin count.
    pub bins: u32,
    /// Histogram range `[lo, hi)`.
    pub range: (f64, f64),
    /// Prime cutoff for the density-constant product.
    pub prime_limit: u64,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub workers: usize,
    /// Build the factor table windowed instead of in one pass.
    pub segmented: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

/// Histogram range flag, written `LO:HI`.
#[derive(Debug, Clone, Copy)]
pub struct HistRange {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for HistRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<HistRange, String> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
        let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
        let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(format!("range [{lo}, {hi}) is empty or not finite"));
        }
        Ok(HistRange { lo, hi })
    }
}

impl std::fmt::Display for HistRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

fn default_workers() -> NonZeroUsize {
    std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN)
}

#[derive(Parser)]
#[command(
    name = "sojourn",
    version,
    about = "Arithmetic of scattering geodesics: sieve scans, geodesic families, and distribution experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Write data here instead of stdout (the file appears atomically).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads; any value produces byte-identical output.
    #[arg(long, default_value_t = default_workers())]
    workers: NonZeroUsize,
    /// Build the factor table in fixed windows (same table, bounded working set).
    #[arg(long)]
    segmented: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Scan q = 1..=LIMIT and write q,phi,s,n,omega_n,omega_phi rows as CSV.
    Scan {
        /// Largest denominator to scan.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Enumerate geodesic families and write q,p,sojourn rows as CSV.
    Geodesics {
        /// Largest denominator to enumerate.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        /// Cusp cutoff height (> 1) in the sojourn time 2 ln(q t0).
        #[arg(long, default_value_t = 2.0)]
        t0: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Histogram the normalized omega statistic over q <= LIMIT and print a
    /// KS/CDF report as JSON on stdout.
    Ekhist {
        /// Scan cutoff; at least 16.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        /// Number of histogram bins.
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u32).range(1..))]
        bins: u32,
        /// Histogram range as LO:HI (half-open).
        #[arg(long, default_value_t = HistRange { lo: -4.0, hi: 4.0 }, allow_hyphen_values = true)]
        range: HistRange,
        /// Bin table format: csv, json (full report incl. bins), or svg plot.
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Count A(x) = #{q <= x : s_q != 0} two independent ways and compare
    /// with the asymptotic density alpha x / sqrt(ln x).
    Acheck {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        /// Prime cutoff for the truncated density-constant product.
        #[arg(long, default_value_t = 1_000_000)]
        prime_limit: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Count E(x), the denominators where omega(n_q) and omega(phi(q))
    /// differ by more than 1.
    Echeck {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Report the density constant and, given --limit, the normalization
    /// f(x), g(x).
    Constants {
        /// Report the normalization at this cutoff (>= 16) as well.
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        prime_limit: u64,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parses the command line, runs the subcommand, and maps the outcome to the
/// process exit code. Panics anywhere below signal broken invariants and are
/// caught here to exit with code 4.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(cli))) {
        Ok(Ok(())) => 0,
        Ok(Err(e)) => {
            eprintln!("sojourn: error: {e}");
            exit_code(&e)
        }
        Err(_) => {
            eprintln!("sojourn: exiting after invariant violation");
            4
        }
    }
}

/// Exit code for an error, per the contract in the module docs.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) => 2,
        Error::Io(_) | Error::Resource(_) => 3,
        Error::InvariantViolation(_) => 4,
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Scan { limit, common } => cmd_scan(&config(limit, None, None, None, None, None, common)),
        Command::Geodesics { limit, t0, common } => {
            cmd_geodesics(&config(limit, Some(t0), None, None, None, None, common))
        }
        Command::Ekhist {
            limit,
            bins,
            range,
            format,
            common,
        } => cmd_ekhist(&config(limit, None, Some(bins), Some(range), None, Some(format), common)),
        Command::Acheck {
            limit,
            prime_limit,
            common,
        } => cmd_acheck(&config(limit, None, None, None, Some(prime_limit), None, common)),
        Command::Echeck { limit, common } => cmd_echeck(&config(limit, None, None, None, None, None, common)),
        Command::Constants {
            limit,
            prime_limit,
            output,
        } => cmd_constants(&RunConfig {
            limit: limit.unwrap_or(0),
            prime_limit,
            output,
            ..default_config()
        }),
    }
}

fn default_config() -> RunConfig {
    RunConfig {
        limit: 0,
        t0: 2.0,
        bins: 60,
        range: (-4.0, 4.0),
        prime_limit: 1_000_000,
        format: OutputFormat::Csv,
        output: None,
        workers: 1,
        segmented: false,
    }
}

fn config(
    limit: u64,
    t0: Option<f64>,
    bins: Option<u32>,
    range: Option<HistRange>,
    prime_limit: Option<u64>,
    format: Option<OutputFormat>,
    common: CommonArgs,
) -> RunConfig {
    let defaults = default_config();
    RunConfig {
        limit,
        t0: t0.unwrap_or(defaults.t0),
        bins: bins.unwrap_or(defaults.bins),
        range: range.map_or(defaults.range, |r| (r.lo, r.hi)),
        prime_limit: prime_limit.unwrap_or(defaults.prime_limit),
        format: format.unwrap_or(defaults.format),
        output: common.output,
        workers: common.workers.get(),
        segmented: common.segmented,
    }
}

/// Builds the factor table for `cfg.limit`, honoring `--segmented`.
fn build_table(cfg: &RunConfig) -> Result<FactorTable> {
    let start = Instant::now();
    let t = if cfg.segmented {
        FactorTable::build_segmented(cfg.limit)
    } else {
        FactorTable::build(cfg.limit)
    }?;
    eprintln!(
        "sojourn: factor table to {} ready in {:.2}s",
        cfg.limit,
        start.elapsed().as_secs_f64()
    );
    Ok(t)
}

/// Runs `emit` against the chosen sink. With `--output` the data lands in a
/// temporary file in the same directory and is renamed into place afterwards,
/// so the target path never holds a partial file.
fn write_output<F>(output: Option<&Path>, emit: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match output {
        None => {
            let stdout = io::stdout();
            let mut w = io::BufWriter::new(stdout.lock());
            emit(&mut w)?;
            w.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::Builder::new()
                .prefix(".sojourn.")
                .suffix(".tmp")
                .tempfile_in(dir)?;
            {
                let mut w = io::BufWriter::new(tmp.as_file_mut());
                emit(&mut w)?;
                w.flush()?;
            }
            tmp.persist(path).map_err(|e| Error::Io(e.error))?;
            // The temp file was created private (0600); give the final
            // artifact ordinary data-file permissions.
            #[cfg(unix)]
            {
                use std::os::unix::fs::PermissionsExt;
                std::fs::set_permissions(path, std::fs::Permissions::from_mode(0o644))?;
            }
        }
    }
    Ok(())
}

/// `v` with 12 significant digits, in plain decimal notation.
fn fmt_sig(v: f64, sig: i32) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (sig - 1 - exponent).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn cmd_scan(cfg: &RunConfig) -> Result<()> {
    let t = build_table(cfg)?;
    let start = Instant::now();
    write_output(cfg.output.as_deref(), |w| {
        writeln!(w, "q,phi,s,n,omega_n,omega_phi")?;
        parallel::run_blocks(
            1,
            cfg.limit,
            parallel::DEFAULT_BLOCK_LEN,
            cfg.workers,
            |lo, hi| {
                let mut buf = Vec::with_capacity((hi - lo + 1) as usize * 24);
                for r in stats::scan_range(&t, lo, hi)? {
                    writeln!(buf, "{},{},{},{},{},{}", r.q, r.phi, r.s, r.n, r.omega_n, r.omega_phi)?;
                }
                Ok(buf)
            },
            |buf| {
                w.write_all(&buf)?;
                Ok(())
            },
        )
    })?;
    eprintln!(
        "sojourn: scan of q <= {} done in {:.2}s",
        cfg.limit,
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

/// Geodesic enumeration blocks are shorter than scan blocks: the per-q cost
/// grows with q, and smaller blocks keep workers evenly loaded.
const GEODESIC_BLOCK_LEN: u64 = 1 << 16;

pub fn cmd_geodesics(cfg: &RunConfig) -> Result<()> {
    if !(cfg.t0 > 1.0) {
        return Err(Error::invalid(format!("t0 must be > 1, got {}", cfg.t0)));
    }
    let t = build_table(cfg)?;
    let start = Instant::now();
    write_output(cfg.output.as_deref(), |w| {
        writeln!(w, "q,p,sojourn")?;
        parallel::run_blocks(
            1,
            cfg.limit,
            GEODESIC_BLOCK_LEN,
            cfg.workers,
            |lo, hi| {
                let mut buf = Vec::new();
                for q in lo..=hi {
                    let family = geodesics::enumerate_family(&t, q, cfg.t0)?;
                    let sojourn = fmt_sig(family.sojourn, 12);
                    for p in &family.numerators {
                        writeln!(buf, "{q},{p},{sojourn}")?;
                    }
                }
                Ok(buf)
            },
            |buf| {
                w.write_all(&buf)?;
                Ok(())
            },
        )
    })?;
    eprintln!(
        "sojourn: geodesic families for q <= {} done in {:.2}s",
        cfg.limit,
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

#[derive(Serialize)]
struct CdfPoint {
    a: i32,
    empirical: f64,
    normal: f64,
}

#[derive(Serialize)]
struct ColumnReport {
    ks_distance: f64,
    cdf: Vec<CdfPoint>,
}

#[derive(Serialize)]
struct HistRow {
    bin_lo: f64,
    bin_hi: f64,
    count: u64,
    density: f64,
}

#[derive(Serialize)]
struct EkReport {
    x: u64,
    samples: u64,
    f: f64,
    g: f64,
    /// KS distance of the omega(n_q) statistic (the headline number).
    ks_distance: f64,
    cdf: Vec<CdfPoint>,
    mean: f64,
    std: f64,
    clamped_lo: u64,
    clamped_hi: u64,
    /// The same report for the companion statistic omega(phi(q)).
    companion_omega_phi: ColumnReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    histogram: Option<Vec<HistRow>>,
}

/// The fixed CDF report grid.
const CDF_GRID: [i32; 5] = [-2, -1, 0, 1, 2];

fn column_report(counts: &OmegaCounts, norm: &stats::EKNormalization) -> ColumnReport {
    ColumnReport {
        ks_distance: counts.ks_distance(norm),
        cdf: CDF_GRID
            .iter()
            .map(|&a| CdfPoint {
                a,
                empirical: counts.empirical_cdf(norm, a as f64),
                normal: stats::normal::std_normal_cdf(a as f64),
            })
            .collect(),
    }
}

pub fn cmd_ekhist(cfg: &RunConfig) -> Result<()> {
    let norm = stats::EKNormalization::for_cutoff(cfg.limit)?;
    let (lo, hi) = cfg.range;
    let t = build_table(cfg)?;
    let start = Instant::now();

    let mut counts_n = OmegaCounts::new();
    let mut counts_phi = OmegaCounts::new();
    parallel::run_blocks(
        1,
        cfg.limit,
        parallel::DEFAULT_BLOCK_LEN,
        cfg.workers,
        |a, b| {
            let mut cn = OmegaCounts::new();
            let mut cp = OmegaCounts::new();
            for r in stats::scan_range(&t, a, b)? {
                cn.add(r.omega_n);
                cp.add(r.omega_phi);
            }
            Ok((cn, cp))
        },
        |(cn, cp)| {
            counts_n.merge(&cn);
            counts_phi.merge(&cp);
            Ok(())
        },
    )?;

    let hist = counts_n.histogram(&norm, lo, hi, cfg.bins)?;
    let (mean, std) = counts_n.mean_std(&norm);
    let main = column_report(&counts_n, &norm);
    let mut report = EkReport {
        x: cfg.limit,
        samples: counts_n.total,
        f: norm.f,
        g: norm.g,
        ks_distance: main.ks_distance,
        cdf: main.cdf,
        mean,
        std,
        clamped_lo: hist.clamped_lo,
        clamped_hi: hist.clamped_hi,
        companion_omega_phi: column_report(&counts_phi, &norm),
        histogram: None,
    };

    let hist_rows: Vec<HistRow> = (0..hist.bins())
        .map(|i| HistRow {
            bin_lo: hist.bin_lo(i),
            bin_hi: hist.bin_hi(i),
            count: hist.counts[i],
            density: hist.density(i),
        })
        .collect();

    match cfg.format {
        OutputFormat::Csv => write_output(cfg.output.as_deref(), |w| {
            writeln!(w, "bin_lo,bin_hi,count,density")?;
            for row in &hist_rows {
                writeln!(
                    w,
                    "{},{},{},{}",
                    fmt_sig(row.bin_lo, 12),
                    fmt_sig(row.bin_hi, 12),
                    row.count,
                    fmt_sig(row.density, 12)
                )?;
            }
            Ok(())
        })?,
        OutputFormat::Svg => {
            let title = format!(
                "normalized omega(n_q) for q <= {}, against the standard normal",
                cfg.limit
            );
            let image = svg::render_histogram(&hist, &title, "(omega - f(x)) / g(x)");
            write_output(cfg.output.as_deref(), |w| {
                w.write_all(image.as_bytes())?;
                Ok(())
            })?;
        }
        OutputFormat::Json => {
            report.histogram = Some(hist_rows);
            let body =
                serde_json::to_string_pretty(&report).expect("report serialization is infallible");
            write_output(cfg.output.as_deref(), |w| {
                writeln!(w, "{body}")?;
                Ok(())
            })?;
            report.histogram = None;
        }
    }

    // The KS/CDF report always ends up on stdout — unless the full JSON
    // report just went there, which would only duplicate it.
    if !(cfg.format == OutputFormat::Json && cfg.output.is_none()) {
        let line = serde_json::to_string(&report).expect("report serialization is infallible");
        println!("{line}");
    }
    eprintln!(
        "sojourn: distribution of q <= {} done in {:.2}s (KS = {:.6})",
        cfg.limit,
        start.elapsed().as_secs_f64(),
        report.ks_distance
    );
    Ok(())
}

#[derive(Serialize)]
struct AcheckReport {
    x: u64,
    #[serde(rename = "A_x")]
    a_x: u64,
    #[serde(rename = "A_x_via_O")]
    a_x_via_o: u64,
    alpha: f64,
    prime_limit: u64,
    tail_bound: f64,
    /// `A(x) sqrt(ln x) / (alpha x)`; drifts toward 1 slowly as x grows.
    ratio_to_asymptotic: f64,
}

pub fn cmd_acheck(cfg: &RunConfig) -> Result<()> {
    let alpha = stats::alpha_constant(cfg.prime_limit)?;
    let t = build_table(cfg)?;
    let start = Instant::now();
    let mut direct = 0u64;
    let mut via_o = 0u64;
    parallel::run_blocks(
        1,
        cfg.limit,
        parallel::DEFAULT_BLOCK_LEN,
        cfg.workers,
        |lo, hi| {
            Ok((
                stats::count_A_range(&t, lo, hi)?,
                stats::count_A_via_O_range(&t, lo, hi)?,
            ))
        },
        |(a, b)| {
            direct += a;
            via_o += b;
            Ok(())
        },
    )?;
    if direct != via_o {
        return Err(Error::InvariantViolation(format!(
            "A({}) disagrees between routes: {direct} from s_q, {via_o} from the semigroup test",
            cfg.limit
        )));
    }
    let x = cfg.limit as f64;
    let report = AcheckReport {
        x: cfg.limit,
        a_x: direct,
        a_x_via_o: via_o,
        alpha: alpha.value,
        prime_limit: alpha.prime_limit,
        tail_bound: alpha.tail_bound,
        ratio_to_asymptotic: direct as f64 * x.ln().sqrt() / (alpha.value * x),
    };
    let line = serde_json::to_string(&report).expect("report serialization is infallible");
    write_output(cfg.output.as_deref(), |w| {
        writeln!(w, "{line}")?;
        Ok(())
    })?;
    eprintln!(
        "sojourn: A({}) = {direct} done in {:.2}s",
        cfg.limit,
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

#[derive(Serialize)]
struct EcheckReport {
    x: u64,
    #[serde(rename = "E_x")]
    e_x: u64,
    /// `E(x) / x`, the exceptional density.
    #[serde(rename = "E_ratio")]
    e_ratio: f64,
    #[serde(rename = "A_x")]
    a_x: u64,
    #[serde(rename = "A_ratio")]
    a_ratio: f64,
}

pub fn cmd_echeck(cfg: &RunConfig) -> Result<()> {
    let t = build_table(cfg)?;
    let start = Instant::now();
    let mut e_count = 0u64;
    let mut a_count = 0u64;
    parallel::run_blocks(
        1,
        cfg.limit,
        parallel::DEFAULT_BLOCK_LEN,
        cfg.workers,
        |lo, hi| Ok((stats::count_E_range(&t, lo, hi)?, stats::count_A_range(&t, lo, hi)?)),
        |(e, a)| {
            e_count += e;
            a_count += a;
            Ok(())
        },
    )?;
    let x = cfg.limit as f64;
    let report = EcheckReport {
        x: cfg.limit,
        e_x: e_count,
        e_ratio: e_count as f64 / x,
        a_x: a_count,
        a_ratio: a_count as f64 / x,
    };
    let line = serde_json::to_string(&report).expect("report serialization is infallible");
    write_output(cfg.output.as_deref(), |w| {
        writeln!(w, "{line}")?;
        Ok(())
    })?;
    eprintln!(
        "sojourn: E({}) = {e_count} done in {:.2}s",
        cfg.limit,
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

#[derive(Serialize)]
struct ConstantsReport {
    alpha: f64,
    prime_limit: u64,
    tail_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<f64>,
}

pub fn cmd_constants(cfg: &RunConfig) -> Result<()> {
    let alpha = stats::alpha_constant(cfg.prime_limit)?;
    // limit = 0 encodes "no cutoff requested" (0 is never a valid cutoff).
    let norm = if cfg.limit >= 1 {
        Some(stats::EKNormalization::for_cutoff(cfg.limit)?)
    } else {
        None
    };
    let report = ConstantsReport {
        alpha: alpha.value,
        prime_limit: alpha.prime_limit,
        tail_bound: alpha.tail_bound,
        x: norm.map(|_| cfg.limit),
        f: norm.map(|n| n.f),
        g: norm.map(|n| n.g),
    };
    let line = serde_json::to_string(&report).expect("report serialization is infallible");
    write_output(cfg.output.as_deref(), |w| {
        writeln!(w, "{line}")?;
        Ok(())
    })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_flag_parses() {
        let r: HistRange = "-4:4".parse().unwrap();
        assert_eq!((r.lo, r.hi), (-4.0, 4.0));
        let r: HistRange = "-1.5 : 2.5".parse().unwrap();
        assert_eq!((r.lo, r.hi), (-1.5, 2.5));
        assert!(" -4".parse::<HistRange>().is_err());
        assert!("4:-4".parse::<HistRange>().is_err());
        assert!("1:1".parse::<HistRange>().is_err());
        assert!("a:b".parse::<HistRange>().is_err());
        assert!("nan:4".parse::<HistRange>().is_err());
        assert_eq!(HistRange { lo: -4.0, hi: 4.0 }.to_string(), "-4:4");
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(1.3862943611198906, 12), "1.38629436112");
        assert_eq!(fmt_sig(4.605170185988091, 12), "4.60517018599");
        assert_eq!(fmt_sig(0.35858773130237905, 12), "0.358587731302");
        assert_eq!(fmt_sig(0.0, 12), "0");
        assert_eq!(fmt_sig(-4.0, 12), "-4.00000000000");
        assert_eq!(fmt_sig(123456789012345.0, 12), "123456789012345");
    }

    #[test]
    fn exit_codes_follow_error_kinds() {
        assert_eq!(exit_code(&Error::invalid("x")), 2);
        assert_eq!(exit_code(&Error::Io(io::Error::other("x"))), 3);
        assert_eq!(exit_code(&Error::Resource("x".into())), 3);
        assert_eq!(exit_code(&Error::InvariantViolation("x".into())), 4);
    }

    #[test]
    fn cli_parses_subcommands() {
        use clap::Parser;
        let cli = Cli::try_parse_from(["sojourn", "scan", "--limit", "100"]).unwrap();
        assert!(matches!(cli.command, Command::Scan { limit: 100, .. }));
        let cli = Cli::try_parse_from([
            "sojourn", "ekhist", "--limit", "1000", "--bins", "40", "--range", "-3:3", "--format",
            "svg",
        ])
        .unwrap();
        match cli.command {
            Command::Ekhist { limit, bins, range, format, .. } => {
                assert_eq!(limit, 1000);
                assert_eq!(bins, 40);
                assert_eq!((range.lo, range.hi), (-3.0, 3.0));
                assert_eq!(format, OutputFormat::Svg);
            }
            _ => panic!("wrong subcommand"),
        }
        assert!(Cli::try_parse_from(["sojourn", "scan", "--limit", "0"]).is_err());
        assert!(Cli::try_parse_from(["sojourn", "scan"]).is_err());
        assert!(Cli::try_parse_from(["sojourn", "ekhist", "--limit", "100", "--bins", "0"]).is_err());
        assert!(Cli::try_parse_from(["sojourn", "nope"]).is_err());
    }
}
