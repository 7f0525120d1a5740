use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use polyrep::constructions::{NType, PType};
use polyrep::Error;
use polyrep_cli::cache::{resolve_dir, TableCache};
use polyrep_cli::report::ReportRecord;
use polyrep_cli::suites::{self, RunOptions};
use serde::Serialize;

/// Exact verification of symmetric ranks and faithful representation
/// dimensions.
///
/// Exit status: 0 when every assertion passes, 1 when an assertion or
/// verification fails, 2 on usage or input errors.
#[derive(Parser)]
#[command(name = "polyrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Directory for cached character tables (overrides POLYREP_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Do not read or write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for independent catalog records.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Include wall times in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit census and symmetric rank of a lattice modulo d.
    Symrank {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        modulus: Option<u32>,
    },
    /// Heisenberg construction in PGL_p.
    Heisenberg {
        #[arg(long)]
        p: u32,
        /// Allow p = 7 (order 16464).
        #[arg(long)]
        allow_p7: bool,
        /// Also compare the image with (Z/p)^2 ⋊ SL_2(F_p).
        #[arg(long)]
        semidirect: bool,
    },
    /// Extensions of polyhedral groups by 1, C2 or C2^2.
    Extensions {
        #[arg(long = "N")]
        n: Option<NType>,
        #[arg(long = "P")]
        p: Option<PType>,
        /// Write the rows as CSV here.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Faithful representation dimension of a recipe such as "a4 x c2".
    Rdim {
        #[arg(long)]
        group: String,
    },
    /// Structure of GL_2(Z/4).
    Gl2z4,
    /// Emit both reproduced tables as CSV.
    Tables {
        /// Directory receiving table1.csv and table2.csv; stdout otherwise.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Run every suite in a fixed order.
    VerifyAll,
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidInput(_) | Error::UnknownLattice(_) | Error::UnsupportedModulus(_) | Error::Guard(..)
    )
}

fn write_json(path: Option<&Path>, value: &impl Serialize) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(()),
    }
}

fn print_record(r: &ReportRecord) {
    let label = match r.inputs.values().filter(|v| !v.is_null()).map(|v| v.to_string()).collect::<Vec<_>>() {
        v if v.is_empty() => String::new(),
        v => format!(" ({})", v.join(", ")),
    };
    println!("{} {}{}: {}/{} assertions", if r.pass { "PASS" } else { "FAIL" }, r.command, label,
        r.assertions.iter().filter(|a| a.pass).count(), r.assertions.len());
    for a in r.failures() {
        println!("  failed: {} (computed {} {} expected {})", a.name, a.computed, a.relation, a.expected);
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let cache = if cli.no_cache {
        TableCache::disabled()
    } else {
        TableCache::new(Some(resolve_dir(cli.cache_dir.as_deref())))
    };
    let opts = RunOptions { cache: &cache, jobs: cli.jobs, timings: cli.timings };
    let json = cli.json_out.as_deref();
    let pass = match cli.command {
        Command::Symrank { lattice, rank, modulus } => single(suites::run_symrank(&lattice, rank, modulus, &opts)?, json)?,
        Command::Heisenberg { p, allow_p7, semidirect } => {
            single(suites::run_heisenberg(p, allow_p7, semidirect, &opts)?, json)?
        }
        Command::Extensions { n, p, csv_out } => {
            let run = suites::run_extensions(n, p, &opts)?;
            let csv = suites::extension_csv(&run.rows)?;
            match csv_out {
                Some(path) => fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{csv}"),
            }
            single(run.report, json)?
        }
        Command::Rdim { group } => single(suites::run_rdim(&group, &opts)?, json)?,
        Command::Gl2z4 => single(suites::run_gl2z4(&opts)?, json)?,
        Command::Tables { csv_out } => {
            let (t1, t2, pass) = suites::run_tables(&opts)?;
            match csv_out {
                Some(dir) => {
                    fs::create_dir_all(&dir)?;
                    fs::write(dir.join("table1.csv"), t1)?;
                    fs::write(dir.join("table2.csv"), t2)?;
                }
                None => print!("{t1}\n{t2}"),
            }
            pass
        }
        Command::VerifyAll => {
            let agg = suites::run_verify_all(&opts)?;
            agg.suites.iter().for_each(print_record);
            println!("{}", if agg.pass { "ALL PASS" } else { "FAILURES" });
            write_json(json, &agg)?;
            agg.pass
        }
    };
    let s = cache.stats();
    eprintln!("cache: {} hits, {} misses, {} repaired", s.hits, s.misses, s.repaired);
    Ok(pass)
}

fn single(r: ReportRecord, json: Option<&Path>) -> anyhow::Result<bool> {
    print_record(&r);
    write_json(json, &r)?;
    Ok(r.pass)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(inner) if !is_input_error(inner) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
