//! The `blockscope` command line. Exit codes: 0 success, 1 anomaly (scan
//! found `gamma < 1`), 2 validation, 3 I/O or parse, 4 usage.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::blocks::{defect_class_support, is_defect_group_normal, l_of_block, BlockDistribution};
use crate::chartable::load_table;
use crate::error::{Error, Result};
use crate::invariants::AnalysisOptions;
use crate::report::{analyze_table, rational_string, scan_directory, validate, PrimeSelection};
use crate::sections::fusion_number;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ANOMALY: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "blockscope", version, about = "p-block invariants from character tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a CTJ table: structure, orthogonality, Brauer's permutation lemma.
    Validate {
        file: PathBuf,
        /// Skip the Brauer permutation lemma check.
        #[arg(long)]
        lenient: bool,
    },
    /// Block distribution with defects, heights, k(B), l(B) and support.
    Blocks {
        file: PathBuf,
        #[arg(short, long)]
        prime: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Full block report.
    Analyze {
        file: PathBuf,
        #[arg(short, long)]
        prime: u64,
        /// Only this block (index in the sorted distribution).
        #[arg(long)]
        block: Option<usize>,
        /// Treat defect groups as abelian.
        #[arg(long)]
        assert_abelian: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include elapsed time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Fusion numbers of all blocks.
    Gamma {
        file: PathBuf,
        #[arg(short, long)]
        prime: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Fusion numbers and nilpotency indicators for every table in a directory.
    Scan {
        dir: PathBuf,
        /// `all` or a comma-separated list.
        #[arg(long, default_value = "all")]
        primes: String,
        #[arg(long)]
        report: PathBuf,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Parse(_) => EXIT_IO,
        Error::Usage(_) | Error::InvalidGaloisIndex { .. } => EXIT_USAGE,
        _ => EXIT_VALIDATION,
    }
}

/// Cap the global thread pool at `BLOCKSCOPE_THREADS` if set.
pub fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("BLOCKSCOPE_THREADS") {
        let n: usize = v.parse().map_err(|_| Error::Usage(format!("BLOCKSCOPE_THREADS={v:?} is not a number")))?;
        // A pool already built (by an earlier call) is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return exit_code(&e);
    }
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e)
}

fn check_prime(p: u64) -> Result<()> {
    if crate::numtheory::is_prime(p) {
        Ok(())
    } else {
        Err(Error::Usage(format!("{p} is not a prime")))
    }
}

fn json_line(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Arithmetic(e.to_string()))?;
    writeln!(out, "{s}").map_err(io)
}

pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Validate { file, lenient } => {
            let t = load_table(file)?;
            let summary = validate(&t, *lenient)?;
            writeln!(out, "{}: valid ({} classes, |G| = {})", t.name(), t.num_classes(), t.order()).map_err(io)?;
            for (q, _) in summary.brauer_permutation {
                writeln!(out, "Brauer permutation lemma holds at p = {q}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Blocks { file, prime, format } => {
            check_prime(*prime)?;
            let t = load_table(file)?;
            let dist = BlockDistribution::new(&t, *prime)?;
            let rows: Vec<serde_json::Value> = dist
                .blocks
                .iter()
                .map(|b| {
                    serde_json::json!({
                        "index": b.index,
                        "characters": b.characters,
                        "defect": b.defect,
                        "heights": b.heights,
                        "k": b.k(),
                        "l": l_of_block(&t, b),
                        "defectClassSupport": defect_class_support(&t, b),
                        "defectGroupNormal": is_defect_group_normal(&t, b),
                        "galoisOrbit": b.galois_orbit,
                    })
                })
                .collect();
            if *format == Format::Json {
                json_line(out, &serde_json::json!({ "table": t.name(), "prime": prime, "blocks": rows }))?;
            } else {
                writeln!(out, "{} at p = {}: {} blocks", t.name(), prime, dist.blocks.len()).map_err(io)?;
                for b in &dist.blocks {
                    let support: Vec<&str> =
                        defect_class_support(&t, b).into_iter().map(|k| t.class(k).name.as_str()).collect();
                    writeln!(
                        out,
                        "block {}: characters {:?} defect {} heights {:?} k = {} l = {} normal D = {} support [{}]",
                        b.index,
                        b.characters,
                        b.defect,
                        b.heights,
                        b.k(),
                        l_of_block(&t, b),
                        is_defect_group_normal(&t, b),
                        support.join(", ")
                    )
                    .map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Analyze { file, prime, block, assert_abelian, format, timing } => {
            check_prime(*prime)?;
            let t = load_table(file)?;
            let report = analyze_table(&t, *prime, AnalysisOptions { assert_abelian: *assert_abelian }, *block)?;
            match format {
                Format::Md => write!(out, "{}", report.to_markdown(*timing)).map_err(io)?,
                _ => json_line(out, &report.to_json(*timing))?,
            }
            Ok(EXIT_OK)
        }
        Command::Gamma { file, prime, format } => {
            check_prime(*prime)?;
            let t = load_table(file)?;
            let dist = BlockDistribution::new(&t, *prime)?;
            let mut rows = Vec::new();
            for b in &dist.blocks {
                let f = fusion_number(&t, &dist, b)?;
                rows.push((b, f));
            }
            if *format == Format::Json {
                let v: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(b, f)| {
                        serde_json::json!({
                            "block": b.index,
                            "characters": b.characters,
                            "gamma": f.gamma_string(),
                            "galoisConjugates": f.galois_block_count,
                        })
                    })
                    .collect();
                json_line(out, &serde_json::json!({ "table": t.name(), "prime": prime, "blocks": v }))?;
            } else {
                for (b, f) in rows {
                    writeln!(out, "block {} {:?}: gamma = {}", b.index, b.characters, rational_string(&f.gamma))
                        .map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Scan { dir, primes, report } => {
            let sel = PrimeSelection::parse(primes)?;
            let r = scan_directory(dir, &sel)?;
            for w in &r.warnings {
                writeln!(err, "warning: {w}").map_err(io)?;
            }
            let text = serde_json::to_string_pretty(&r.to_json()).map_err(|e| Error::Arithmetic(e.to_string()))?;
            std::fs::write(report, text + "\n")?;
            let anomalies = r.anomaly_count();
            writeln!(
                out,
                "scanned {} tables, {} blocks, {} with gamma < 1",
                r.files.len(),
                r.rows.len(),
                anomalies
            )
            .map_err(io)?;
            Ok(if anomalies > 0 { EXIT_ANOMALY } else { EXIT_OK })
        }
    }
}
