//! Command-line front end.
//!
//! Exit codes: `0` success, `1` verification failure, `2` usage or
//! configuration error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::exact::FactoredConstant;
use crate::identity::{lhs_word, rhs_constant, Mode, Summary, SystemRange, Variant, Verifier, VerifyConfig};
use crate::gammaword::GammaWord;
use crate::prover::{Lattice, RelationTag};
use crate::rootsys::{build, Family, RootSystemId, RootTable};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "gamma-roots", version, about = "Exact verification of Gamma-product identities over root systems")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print h, h∨, marks, comarks, ρ and the roots of a system.
    Table {
        #[arg(value_parser = parse_family)]
        family: Family,
        rank: u32,
    },
    /// Print the left-hand γ-word of one identity.
    Word {
        #[arg(value_parser = parse_family)]
        family: Family,
        rank: u32,
        index: usize,
        #[arg(value_parser = parse_variant)]
        variant: Variant,
    },
    /// Verify identities over a range of systems.
    Verify(VerifyArgs),
    /// Dump the reflection and multiplication relations on the grid 1/N.
    Relations { n: u64 },
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Families to sweep (repeatable); all families when omitted.
    #[arg(long = "family", value_parser = parse_family)]
    pub families: Vec<Family>,
    /// Single rank (sets both bounds).
    #[arg(long, conflicts_with_all = ["rank_min", "rank_max"])]
    pub rank: Option<u32>,
    #[arg(long)]
    pub rank_min: Option<u32>,
    #[arg(long)]
    pub rank_max: Option<u32>,
    /// Variants to check (repeatable); all admissible ones when omitted.
    #[arg(long = "variant", value_parser = parse_variant)]
    pub variants: Vec<Variant>,
    #[arg(long, value_parser = parse_mode, default_value = "exact")]
    pub mode: Mode,
    /// Decimal digits for the numeric backend.
    #[arg(long, default_value_t = 60)]
    pub digits: u32,
    /// Report `not_in_lattice` instead of falling back to the numeric check.
    #[arg(long)]
    pub no_fallback: bool,
    /// Write reports here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl VerifyArgs {
    pub fn config(&self) -> Result<VerifyConfig, Error> {
        let explicit = !self.families.is_empty();
        let families: Vec<Family> = if explicit {
            self.families.clone()
        } else {
            Family::ALL.to_vec()
        };
        let (lo, hi) = match self.rank {
            Some(r) => (Some(r), Some(r)),
            None => (self.rank_min, self.rank_max),
        };
        let mut systems = Vec::new();
        for f in families {
            match SystemRange::clamped(f, lo, hi) {
                Some(range) => systems.push(range),
                None if explicit => {
                    return Err(Error::Config(format!(
                        "no admissible rank of family {f} in the requested range"
                    )))
                }
                None => {}
            }
        }
        if let Some(r) = self.rank {
            for s in &systems {
                if !s.family.admits(r) {
                    return Err(Error::InadmissibleSystem { family: s.family, rank: r });
                }
            }
        }
        if self.digits < 10 {
            return Err(Error::Precision(self.digits));
        }
        let variants = if self.variants.is_empty() {
            Variant::ALL.to_vec()
        } else {
            self.variants.clone()
        };
        Ok(VerifyConfig { systems, variants, mode: self.mode })
    }
}

/// Runs the CLI on `args`, writing to `out`/`err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(CliError::Usage(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

enum CliError {
    Usage(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Table { family, rank } => {
            cmd_table(RootSystemId::new(*family, *rank)?, cli.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Word { family, rank, index, variant } => {
            cmd_word(RootSystemId::new(*family, *rank)?, *index, *variant, cli.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let config = args.config()?;
            let verifier = Verifier::new(args.digits)?.with_fallback(!args.no_fallback);
            let summary = verifier.verify_all(&config)?;
            match &args.output {
                Some(path) => write_summary(&summary, cli.format, &mut File::create(path)?)?,
                None => write_summary(&summary, cli.format, out)?,
            }
            if summary.all_passed() {
                Ok(EXIT_OK)
            } else {
                writeln!(err, "FAILED: {} of {} reports did not pass", summary.failures, summary.total)?;
                Ok(EXIT_FAILED)
            }
        }
        Command::Relations { n } => {
            if *n < 2 {
                return Err(Error::Config("relations need N >= 2".into()).into());
            }
            cmd_relations(*n, cli.format, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn join(xs: &[String]) -> String {
    format!("({})", xs.join(", "))
}

fn cmd_table(id: RootSystemId, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let r = build(id)?;
    let table = RootTable::from(&r);
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&table)?)?,
        Format::Text => {
            writeln!(out, "{id}")?;
            writeln!(out, "h = {}", table.h)?;
            writeln!(out, "h∨ = {}", table.h_check)?;
            writeln!(out, "marks (n_0..n_r) = {}", join(&table.marks))?;
            writeln!(out, "comarks = {}", join(&table.comarks))?;
            writeln!(out, "double comarks = {}", join(&table.double_comarks))?;
            writeln!(out, "ρ = {}", table.rho)?;
            writeln!(out, "ρ∨ = {}", table.rho_check)?;
            writeln!(out, "simple roots:")?;
            for (i, a) in table.simple_roots.iter().enumerate() {
                writeln!(out, "  α{} = {a}", i + 1)?;
            }
            writeln!(out, "positive roots ({}):", table.positive_roots.len())?;
            for a in &table.positive_roots {
                writeln!(out, "  {a}")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct WordOutput {
    family: Family,
    rank: u32,
    index: usize,
    variant: Variant,
    word: GammaWord,
    reduced: GammaWord,
    rhs_constant: FactoredConstant,
}

fn cmd_word(
    id: RootSystemId,
    index: usize,
    variant: Variant,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let r = build(id)?;
    let word = lhs_word(&r, index, variant)?;
    let rhs = rhs_constant(&r, index, variant)?;
    let reduced = word.reduce_reflection();
    match format {
        Format::Json => {
            let o = WordOutput { family: id.family(), rank: id.rank(), index, variant, word, reduced, rhs_constant: rhs };
            writeln!(out, "{}", serde_json::to_string(&o)?)?;
        }
        Format::Text => {
            writeln!(out, "{id} α{index} {variant}  N={}", word.denominator())?;
            writeln!(out, "word:    {}", word.without_half().to_brace_string())?;
            writeln!(out, "reduced: {}", reduced.to_brace_string())?;
            writeln!(out, "rhs:     {rhs}")?;
            writeln!(out, "json:    {}", serde_json::to_string(&word)?)?;
        }
    }
    Ok(())
}

fn write_summary(summary: &Summary, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(summary)?)?,
        Format::Text => {
            for r in &summary.reports {
                let constant = r
                    .certificate
                    .as_ref()
                    .map(|c| r.lhs_word.coeff().mul(&c.derived_constant).to_string())
                    .unwrap_or_else(|| "-".into());
                write!(
                    out,
                    "{}{} α{} {:<7} {:<14} N={:<3} rhs={} derived={}",
                    r.family,
                    r.rank,
                    r.index,
                    r.variant.to_string(),
                    r.status.to_string(),
                    r.lhs_word.denominator(),
                    r.rhs_constant,
                    constant
                )?;
                if let Some(res) = &r.numeric_residual {
                    write!(out, " residual={res}")?;
                }
                writeln!(out)?;
            }
            let counts: Vec<String> = summary.counts.iter().map(|(s, n)| format!("{s}={n}")).collect();
            writeln!(
                out,
                "total={} failures={} {}",
                summary.total,
                summary.failures,
                counts.join(" ")
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct RelationOutput {
    tag: RelationTag,
    word: GammaWord,
    value: FactoredConstant,
}

#[derive(Serialize)]
struct RelationsOutput {
    #[serde(rename = "N")]
    n: u64,
    rank: usize,
    kernel_dimension: usize,
    kernel_consistent: bool,
    relations: Vec<RelationOutput>,
}

fn cmd_relations(n: u64, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let lattice = Lattice::new(n);
    let check = lattice.kernel_consistency();
    match format {
        Format::Json => {
            let o = RelationsOutput {
                n,
                rank: lattice.rank(),
                kernel_dimension: check.kernel_dimension,
                kernel_consistent: check.consistent,
                relations: lattice
                    .relations()
                    .iter()
                    .map(|r| RelationOutput { tag: r.tag, word: r.word.clone(), value: r.value.clone() })
                    .collect(),
            };
            writeln!(out, "{}", serde_json::to_string(&o)?)?;
        }
        Format::Text => {
            writeln!(out, "N={n}: {} relations, rank {}", lattice.relations().len(), lattice.rank())?;
            for r in lattice.relations() {
                writeln!(out, "  {r}")?;
            }
            writeln!(
                out,
                "kernel dimension {}, consistent: {}",
                check.kernel_dimension, check.consistent
            )?;
        }
    }
    Ok(())
}
