use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use blade_order::{ordered_basis, OrderingKind};
use clap::{Parser, Subcommand, ValueEnum};
use ga_core::Signature;
use table_cli::{build_table, check_fixture, fixture::load_fixture, render, verify_all, Format, TableError, TableMode};

#[derive(Parser)]
#[command(name = "spintab", version, about = "Spinor tables for real and complex Clifford algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Real,
    Complex,
}

impl From<ModeArg> for TableMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Real => TableMode::Real,
            ModeArg::Complex => TableMode::Complex,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build and print the seven items for Cl(p,q).
    Table {
        #[arg(long, value_parser = parse_signature)]
        signature: Signature,
        #[arg(long, value_enum, default_value = "real")]
        mode: ModeArg,
        #[arg(long, default_value = "text", value_parser = str::parse::<Format>)]
        format: Format,
    },
    /// Compare built tables with golden fixtures.
    Verify {
        /// Check every fixture in the fixture directory.
        #[arg(long, conflicts_with = "signature")]
        all: bool,
        #[arg(long, value_parser = parse_signature, required_unless_present = "all")]
        signature: Option<Signature>,
        #[arg(long, value_enum, default_value = "real")]
        mode: ModeArg,
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// List the basis blades of an n-dimensional algebra in a named order.
    Orderings {
        #[arg(long)]
        n: usize,
        /// e.g. Lex, RevLex, Deg[InvLex], InvDeg[Lex].
        #[arg(long, default_value = "InvDeg[Lex]")]
        kind: OrderingKind,
    },
}

fn parse_signature(s: &str) -> Result<Signature, String> {
    let bad = || TableError::SignatureArg(s.to_string()).to_string();
    let (p, q) = s.split_once(',').ok_or_else(bad)?;
    let p: usize = p.trim().parse().map_err(|_| bad())?;
    let q: usize = q.trim().parse().map_err(|_| bad())?;
    Signature::new(p, q).map_err(|e| e.to_string())
}

/// Writes to stdout, ignoring a closed pipe such as `| head`.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn default_fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(cli: Cli) -> Result<bool, TableError> {
    match cli.command {
        Command::Table { signature, mode, format } => {
            let table = build_table(signature, TableMode::from(mode).into())?;
            let mut text = render(&table, format)?;
            if format == Format::Json {
                text.push('\n');
            }
            out(&text);
            Ok(true)
        }
        Command::Verify { all, signature, mode, fixtures } => {
            let dir = fixtures.unwrap_or_else(default_fixtures);
            if all {
                let results = verify_all(&dir)?;
                let mut ok = 0;
                for (path, r) in &results {
                    match r {
                        Ok(rep) => {
                            out(&rep.to_string());
                            ok += usize::from(rep.passed());
                        }
                        Err(e) => out(&format!("{}: error: {e}\n", path.display())),
                    }
                }
                out(&format!("{ok}/{} fixtures pass\n", results.len()));
                Ok(ok == results.len())
            } else {
                let sig = signature.expect("clap requires a signature without --all");
                let sub = match TableMode::from(mode) {
                    TableMode::Real => "real",
                    TableMode::Complex => "complex",
                };
                let path = dir.join(sub).join(format!("cl_{}_{}.toml", sig.p(), sig.q()));
                let rep = check_fixture(&load_fixture(&path)?)?;
                out(&rep.to_string());
                Ok(rep.passed())
            }
        }
        Command::Orderings { n, kind } => {
            if n > ga_core::MAX_DIM {
                return Err(TableError::Ga(ga_core::GaError::DimensionTooLarge(n)));
            }
            let names: Vec<String> = ordered_basis(kind, n).iter().map(|b| b.to_string()).collect();
            out(&format!("{kind}: {}\n", names.join(" > ")));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
