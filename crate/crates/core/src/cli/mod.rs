//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::census::{self, CensusMode, CensusTable, Settings};
use crate::field::{field_of_order, prime_divisors, FieldSpec};
use crate::theory::{self, Partition};

mod render;
mod verify;

pub use verify::Check;

#[derive(Debug, Parser)]
#[command(name = "fqdisc", version, about = "Discriminant censuses of monic polynomials over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discriminant counts for a range of degrees, one column per degree.
    Table(TableArgs),
    /// Census of squarefree polynomials of one factorization type.
    TypeCensus(TypeCensusArgs),
    /// Run verification checks over degrees 2..=max-deg.
    Verify(VerifyArgs),
    /// Construct a monic polynomial with a given discriminant.
    Surject(SurjectArgs),
    /// A factorization type whose discriminants cannot be equally distributed.
    Counterexample(CounterexampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableMode {
    All,
    Irr,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Field order, a prime power.
    #[arg(long)]
    pub q: u64,
    /// Modulus coefficients c0,c1,...,c_{k-1} of the monic defining polynomial.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn field(&self) -> Result<Arc<FieldSpec>> {
        Ok(field_of_order(self.q, self.modulus.as_deref())?)
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Worker threads for enumeration.
    #[arg(long, default_value_t = census::default_workers())]
    pub workers: usize,
    /// Directory for cached census tables.
    #[arg(long, env = "DISC_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Enumerate every polynomial instead of one per translation orbit.
    #[arg(long)]
    pub no_reduction: bool,
}

impl RunArgs {
    fn settings(&self) -> Settings {
        Settings { reduction: !self.no_reduction, workers: self.workers.max(1), progress: true }
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=12))]
    pub min_deg: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=12))]
    pub max_deg: u64,
    #[arg(long, value_enum, default_value_t = TableMode::All)]
    pub mode: TableMode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct TypeCensusArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Parts of the factorization type, e.g. 2,1,1.
    #[arg(long)]
    pub partition: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=12))]
    pub max_deg: u64,
    /// Checks to run; defaults to every check valid for the field.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub checks: Vec<Check>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct SurjectArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub deg: usize,
    /// Target discriminant as an element encoding.
    #[arg(long)]
    pub disc: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub deg: usize,
}

/// Runs a parsed command. `Ok(false)` means a check failed.
pub fn run(cli: Cli, out: &mut dyn Write, diag: &mut dyn Write) -> Result<bool> {
    match cli.command {
        Command::Table(a) => cmd_table(&a, out, diag),
        Command::TypeCensus(a) => cmd_type_census(&a, out, diag),
        Command::Verify(a) => verify::cmd_verify(&a, out, diag),
        Command::Surject(a) => cmd_surject(&a, out),
        Command::Counterexample(a) => cmd_counterexample(&a, out),
    }
}

/// Looks a census up in the cache, computing and storing it on a miss.
/// Cache problems are reported on `diag` and otherwise ignored.
pub(crate) fn cached_census(
    spec: &Arc<FieldSpec>,
    m: usize,
    mode: &CensusMode,
    run: &RunArgs,
    diag: &mut dyn Write,
) -> Result<CensusTable> {
    let dir = run.cache_dir.as_deref();
    if let Some(dir) = dir {
        match CensusTable::read_cache(dir, spec, m, mode) {
            Ok(Some(t)) => return Ok(t),
            Ok(None) => {}
            Err(e) => writeln!(diag, "warning: ignoring cache entry in {}: {e}", dir.display())?,
        }
    }
    let table = census::run(spec, m, mode, run.settings())?;
    store(&table, dir, diag)?;
    Ok(table)
}

pub(crate) fn store(table: &CensusTable, dir: Option<&Path>, diag: &mut dyn Write) -> Result<()> {
    if let Some(dir) = dir {
        if let Err(e) = table.write_cache(dir) {
            writeln!(diag, "warning: could not write cache in {}: {e}", dir.display())?;
        }
    }
    Ok(())
}

/// Every `ByType` census of degree `m`, from the cache when all are present.
pub(crate) fn cached_type_censuses(
    spec: &Arc<FieldSpec>,
    m: usize,
    run: &RunArgs,
    diag: &mut dyn Write,
) -> Result<Vec<CensusTable>> {
    if let Some(dir) = run.cache_dir.as_deref() {
        let mut found = Vec::new();
        for l in theory::partitions(m)? {
            match CensusTable::read_cache(dir, spec, m, &CensusMode::ByType(l)) {
                Ok(Some(t)) => found.push(t),
                _ => break,
            }
        }
        if found.len() == theory::partitions(m)?.len() {
            return Ok(found);
        }
    }
    let tables = census::run_all_types(spec, m, run.settings())?;
    for t in &tables {
        store(t, run.cache_dir.as_deref(), diag)?;
    }
    Ok(tables)
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write, diag: &mut dyn Write) -> Result<bool> {
    if a.min_deg > a.max_deg {
        bail!("--min-deg {} exceeds --max-deg {}", a.min_deg, a.max_deg);
    }
    let spec = a.field.field()?;
    let mode = match a.mode {
        TableMode::All => CensusMode::AllMonic,
        TableMode::Irr => CensusMode::IrreducibleOnly,
    };
    let tables = (a.min_deg..=a.max_deg)
        .map(|m| cached_census(&spec, m as usize, &mode, &a.run, diag))
        .collect::<Result<Vec<_>>>()?;
    match a.format {
        Format::Text => out.write_all(render::text_table(&tables).as_bytes())?,
        Format::Csv => out.write_all(census::render_csv(&tables)?.as_bytes())?,
        Format::Json => {
            let records: Vec<_> = tables.iter().map(CensusTable::to_record).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&records)?)?;
        }
    }
    Ok(true)
}

fn cmd_type_census(a: &TypeCensusArgs, out: &mut dyn Write, diag: &mut dyn Write) -> Result<bool> {
    let spec = a.field.field()?;
    let lambda: Partition = a.partition.parse()?;
    let m = lambda.size();
    if m > 10 {
        bail!("partition {lambda} has size {m}; type censuses are limited to degree 10");
    }
    let mode = CensusMode::ByType(lambda.clone());
    let table = cached_census(&spec, m, &mode, &a.run, diag)?;
    let expected = theory::s_lambda_size_big(&spec, &lambda)?;
    let size_ok = expected == table.total().into();
    match a.format {
        Format::Csv => out.write_all(census::render_csv(std::slice::from_ref(&table))?.as_bytes())?,
        Format::Json => writeln!(out, "{}", table.to_json())?,
        Format::Text => {
            out.write_all(render::text_table(std::slice::from_ref(&table)).as_bytes())?;
            let support = census::support_set(&table)?;
            let items: Vec<String> = support.iter().map(u32::to_string).collect();
            writeln!(out, "support: {{{}}}", items.join(", "))?;
            writeln!(out, "total: {}", table.total())?;
            let verdict = if size_ok { "matches" } else { "DOES NOT MATCH" };
            writeln!(out, "|S_{lambda}| = {expected} ({verdict} the census total)")?;
            match census::is_equally_distributed(&table) {
                Ok(d) if d.uniform => writeln!(out, "equally distributed: yes ({} each)", d.witness[0])?,
                Ok(_) => writeln!(out, "equally distributed: no")?,
                Err(census::CensusError::Empty) => writeln!(out, "empty: no polynomials of type {lambda}")?,
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(size_ok)
}

fn cmd_surject(a: &SurjectArgs, out: &mut dyn Write) -> Result<bool> {
    let spec = a.field.field()?;
    let d = spec.element(a.disc).context("invalid --disc")?;
    let c = theory::construct_disc(&spec, a.deg, &d)?;
    let disc = c.poly.discriminant()?.enc();
    match a.format {
        Format::Json => {
            let value = serde_json::json!({
                "q": spec.q(),
                "coeffs": c.poly.coeffs(),
                "case": c.case.to_string(),
                "disc": disc,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        Format::Csv => {
            writeln!(out, "coeffs,case,disc")?;
            writeln!(out, "\"{}\",{},{disc}", c.poly.to_coeff_string(), c.case)?;
        }
        Format::Text => {
            writeln!(out, "{}", c.poly.to_coeff_string())?;
            writeln!(out, "f = {}", c.poly)?;
            writeln!(out, "{}", c.case)?;
            writeln!(out, "disc(f) = {disc}")?;
        }
    }
    Ok(true)
}

fn cmd_counterexample(a: &CounterexampleArgs, out: &mut dyn Write) -> Result<bool> {
    let spec = a.field.field()?;
    let q1 = spec.q() as u64 - 1;
    let verdict = theory::hypothesis(&spec, a.deg)?;
    writeln!(out, "{verdict}")?;
    match theory::counterexample_partition(&spec, a.deg) {
        Ok(None) => {
            writeln!(out, "none")?;
            Ok(true)
        }
        Ok(Some(c)) => {
            let which = if c.divides_m { "m" } else { "m - 1" };
            writeln!(out, "l = {} divides q - 1 = {q1} and {which}", c.l)?;
            writeln!(out, "partition: {}", c.partition)?;
            writeln!(out, "|S| = {}", c.size)?;
            if c.l_divides_size {
                writeln!(out, "{} | {} (construction failed)", c.l, c.size)?;
            } else {
                writeln!(out, "{} \u{2224} {}", c.l, c.size)?;
            }
            Ok(!c.l_divides_size)
        }
        Err(theory::TheoryError::NotSquarefree(n)) => {
            let factors = prime_divisors(n);
            bail!("q - 1 = {n} is not squarefree (prime factors {factors:?}); the construction needs squarefree q - 1")
        }
        Err(e) => Err(e.into()),
    }
}
