//! Spinor tables for Cl(p,q): build the seven items, print them, and check
//! them against golden fixtures.

pub mod emit;
pub mod expr;
pub mod fixture;
pub mod table;
pub mod verify;

use ga_core::GaError;
use ideal_engine::IdealError;
use rep_spinor::RepError;

pub use emit::{render, Format};
pub use fixture::{load_dir, load_fixture, Correction, Equivalence, GoldenFixture};
pub use table::{build_table, build_table_with_phases, SpinorTable, TableMode};
pub use verify::{check_fixture, verify_against_golden, verify_all, ItemResult, Report};

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error(transparent)]
    Ga(#[from] GaError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("expression: {0}")]
    Expr(#[from] expr::ExprError),
    #[error("{path}: {message}")]
    Fixture { path: String, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("bad signature {0:?}, expected p,q")]
    SignatureArg(String),
}
