use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use hasse_census::calculus::{delta_h_requirement, h_infinity_requirement};
use hasse_census::enumerator::{count_refined_with_progress, enumerate_levels, BYTES_PER_LEVEL_KEY};
use hasse_census::io::{
    export_bfile, export_sequence_bfile, load_cache, save_cache, verify, BfileLayout, FixtureSource,
    VerifyInputs,
};
use hasse_census::{
    delta_h, extend_row, h_infinity, BigCount, BigCountTable, BigRefinedCounts, EnumerationConfig,
    Error, Refinement,
};

#[derive(Parser)]
#[command(name = "hasse-census", version, about = "Count unlabeled posets by points and Hasse-diagram arcs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Memory budget in MiB for one enumeration level.
    #[arg(long, global = true, value_name = "MIB")]
    max_memory: Option<usize>,
    /// Reuse or store computed tables in this file.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    All,
    Connected,
    NoIsolated,
    SelfDual,
}

impl From<Filter> for Refinement {
    fn from(f: Filter) -> Self {
        match f {
            Filter::All => Refinement::All,
            Filter::Connected => Refinement::Connected,
            Filter::NoIsolated => Refinement::NoIsolated,
            Filter::SelfDual => Refinement::SelfDualConnected,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Bfile,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportWhat {
    Hinf,
    Hdelta,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Counts of the posets on exactly `--points` points, per arc count.
    Enumerate {
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum, default_value = "all")]
        filter: Filter,
        /// Only posets with at most this many arcs.
        #[arg(long)]
        arcs: Option<usize>,
        /// Print one canonical representative per line instead of counts.
        #[arg(long)]
        list: bool,
    },
    /// The whole table for 1 ≤ p ≤ `--points`.
    Table {
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum, default_value = "all")]
        filter: Filter,
        #[arg(long)]
        arcs: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Stationary difference ΔH(n), zero-based.
    Delta { n: usize },
    /// Row limit H∞(a).
    Hinf { a: usize },
    /// H(2a − n − 1, a) from the row limit and the stationary differences.
    Extend { a: usize, n: usize },
    /// Recompute the reference tables and compare.
    Verify {
        /// `all` or one of table_normal, table_conn, table_selfdual,
        /// table_hdelta, table_hinf.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Direct enumeration bound.
        #[arg(long, default_value_t = 8)]
        points: usize,
        /// Arc bound of the connected counts used by the partition formulas.
        #[arg(long, default_value_t = 8)]
        arcs: usize,
    },
    /// Write a b-file to standard output.
    Export {
        #[arg(value_enum)]
        what: ExportWhat,
        /// Last index (n or a) for sequences.
        #[arg(long, default_value_t = 8)]
        upto: usize,
        #[arg(long, default_value_t = 6)]
        points: usize,
        #[arg(long, value_enum, default_value = "all")]
        filter: Filter,
    },
}

struct Ctx {
    config: EnumerationConfig,
    cache: Option<PathBuf>,
}

impl Ctx {
    fn config(&self, arcs: Option<usize>) -> EnumerationConfig {
        let mut c = self.config.clone();
        c.arc_ceiling = arcs;
        c
    }

    fn enumerate(&self, points: usize, arcs: Option<usize>) -> anyhow::Result<BigRefinedCounts> {
        let counts = count_refined_with_progress(points, &self.config(arcs), &mut |p| {
            eprintln!("level {}: {} children, {} classes", p.level, p.children, p.classes)
        })?;
        Ok(counts)
    }

    fn cached(&self, refinement: Refinement, points: usize, arcs: Option<usize>) -> Option<BigCountTable> {
        let path = self.cache.as_deref().filter(|p| p.exists())?;
        match load_cache::<BigCount>(path) {
            Ok(t) if t.refinement() == refinement && covers(&t, points, arcs) => Some(t),
            Ok(_) => None,
            Err(e) => {
                eprintln!("ignoring cache {}: {e}", path.display());
                None
            }
        }
    }

    fn store(&self, table: &BigCountTable) -> anyhow::Result<()> {
        if let Some(path) = &self.cache {
            save_cache(table, path).with_context(|| format!("writing cache {}", path.display()))?;
        }
        Ok(())
    }

    /// One refined table complete for `p ≤ points` and `a ≤ arcs`.
    fn table(&self, refinement: Refinement, points: usize, arcs: Option<usize>) -> anyhow::Result<BigCountTable> {
        if let Some(t) = self.cached(refinement, points, arcs) {
            return Ok(t);
        }
        let table = self.enumerate(points, arcs)?.table(refinement).clone();
        self.store(&table)?;
        Ok(table)
    }
}

fn covers(t: &BigCountTable, points: usize, arcs: Option<usize>) -> bool {
    t.max_points() >= points
        && match (t.max_arcs(), arcs) {
            (None, _) => true,
            (Some(m), Some(a)) => m >= a,
            (Some(_), None) => false,
        }
}

fn print_cells(out: &mut impl Write, table: &BigCountTable, ps: impl Iterator<Item = usize>) -> io::Result<()> {
    writeln!(out, "p,a,count")?;
    for p in ps {
        for (q, a, n) in table.cells() {
            if q == p {
                writeln!(out, "{q},{a},{n}")?;
            }
        }
    }
    Ok(())
}

fn fmt_range(what: &str, (p, a): (usize, usize)) -> String {
    format!("{what} counts used: p <= {p}, a <= {a}")
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    let mut config = EnumerationConfig::default();
    if let Some(mib) = cli.max_memory {
        config = config.with_max_level_keys(mib.saturating_mul(1 << 20) / BYTES_PER_LEVEL_KEY);
    }
    let ctx = Ctx { config, cache: cli.cache };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());

    match cli.command {
        Command::Enumerate { points, filter, arcs, list } => {
            let refinement = Refinement::from(filter);
            if list {
                enumerate_levels(
                    points,
                    &ctx.config(arcs),
                    |p, level| {
                        if p == points {
                            for d in level.iter().filter(|d| refinement.admits(d)) {
                                write!(out, "{} {}", d.points(), d.arc_count())?;
                                for (x, y) in d.arcs() {
                                    write!(out, " {x},{y}")?;
                                }
                                writeln!(out)?;
                            }
                        }
                        Ok(())
                    },
                    &mut |_| {},
                )?;
            } else {
                let table = ctx.table(refinement, points, arcs)?;
                print_cells(&mut out, &table, std::iter::once(points))?;
            }
        }
        Command::Table { points, filter, arcs, format } => {
            let table = ctx.table(filter.into(), points, arcs)?;
            match format {
                Format::Csv => print_cells(&mut out, &table, 1..=points)?,
                Format::Bfile => {
                    let mut trimmed = BigCountTable::new(table.refinement(), points, table.max_arcs());
                    for (p, a, n) in table.cells().filter(|&(p, _, _)| p <= points) {
                        trimmed.set(p, a, n.clone());
                    }
                    out.write_all(export_bfile(&trimmed, BfileLayout::Rows)?.as_bytes())?;
                }
            }
        }
        Command::Delta { n } => {
            let need = delta_h_requirement(n);
            let conn = ctx.table(Refinement::Connected, need.0, Some(need.1))?;
            writeln!(out, "{}", delta_h(n, &conn)?)?;
            writeln!(out, "{}", fmt_range("connected", need))?;
        }
        Command::Hinf { a } => {
            let need = h_infinity_requirement(a);
            let conn = ctx.table(Refinement::Connected, need.0, Some(need.1))?;
            writeln!(out, "{}", h_infinity(a, &conn)?)?;
            writeln!(out, "{}", fmt_range("connected", need))?;
        }
        Command::Extend { a, n } => {
            if a < 2 * n {
                return Err(Error::OutsideStableCone { a, n }.into());
            }
            let d = delta_h_requirement(n);
            let h = h_infinity_requirement(a);
            let need = (d.0.max(h.0), d.1.max(h.1));
            let conn = ctx.table(Refinement::Connected, need.0, Some(need.1))?;
            writeln!(out, "H({},{a}) = {}", 2 * a - n - 1, extend_row(a, n, &conn)?)?;
            writeln!(out, "Hinf({a}) = {}", h_infinity(a, &conn)?)?;
        }
        Command::Verify { suite, points, arcs } => {
            let sources: Vec<FixtureSource> = if suite == "all" {
                FixtureSource::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let enumerated = ctx.enumerate(points, None)?;
            let connected = if arcs < points {
                enumerated.connected.clone()
            } else {
                ctx.table(Refinement::Connected, arcs + 1, Some(arcs))?
            };
            let report = verify(&sources, &VerifyInputs { enumerated: &enumerated, connected: &connected })?;
            for check in &report.checks {
                writeln!(out, "{check}")?;
            }
            writeln!(out, "{}", report.summary())?;
            out.flush()?;
            return Ok(if report.is_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Export { what, upto, points, filter } => {
            let text = match what {
                ExportWhat::Hinf => {
                    let (p, a) = h_infinity_requirement(upto);
                    let conn = ctx.table(Refinement::Connected, p, Some(a))?;
                    let values = (0..=upto).map(|a| h_infinity(a, &conn)).collect::<Result<Vec<_>, _>>()?;
                    export_sequence_bfile(&values)
                }
                ExportWhat::Hdelta => {
                    let (p, a) = delta_h_requirement(upto);
                    let conn = ctx.table(Refinement::Connected, p, Some(a))?;
                    let values = (0..=upto).map(|n| delta_h(n, &conn)).collect::<Result<Vec<_>, _>>()?;
                    export_sequence_bfile(&values)
                }
                ExportWhat::Table => export_bfile(&ctx.table(filter.into(), points, None)?, BfileLayout::Rows)?,
            };
            out.write_all(text.as_bytes())?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ResourceLimit { .. }) => 3,
        Some(Error::Usage(_) | Error::OutsideStableCone { .. } | Error::TooManyPoints { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
