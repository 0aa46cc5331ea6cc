//! Golden fixtures: one TOML file per algebra and mode, written in the
//! plain-text notation parsed by [`crate::expr`].

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::table::TableMode;
use crate::TableError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item1 {
    pub idempotent: String,
    /// Number of mutually annihilating primitive idempotents summing to 1.
    #[serde(default)]
    pub family_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item2 {
    pub elements: Vec<String>,
    #[serde(default)]
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item3 {
    pub generators: Vec<String>,
    #[serde(default)]
    pub second_block: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item4 {
    pub matrices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item5 {
    pub spinor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item6 {
    pub matrix: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item7 {
    pub lhs: String,
    pub rhs: String,
}

/// Which harmless differences a comparison forgives.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    /// Coefficients may be relabelled s_j -> σ_j s_j, σ_j a unit.
    #[serde(default)]
    pub coefficient_sign: bool,
    /// Quaternion units may be permuted by an automorphism of H.
    #[serde(default)]
    pub quaternion_relabel: bool,
    /// Spinor generators may carry a unit phase.
    #[serde(default)]
    pub generator_phase: bool,
    /// The norm formula may omit a complex conjugation.
    #[serde(default)]
    pub implicit_conjugation: bool,
}

/// A printed value that was wrong and what the fixture uses instead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correction {
    pub field: String,
    pub printed: String,
    pub corrected: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenFixture {
    pub signature: [usize; 2],
    pub mode: TableMode,
    pub classification: String,
    pub item1: Item1,
    pub item2: Item2,
    pub item3: Item3,
    pub item4: Item4,
    pub item5: Item5,
    pub item6: Item6,
    pub item7: Item7,
    #[serde(default)]
    pub equivalence: Equivalence,
    #[serde(default)]
    pub corrections: Vec<Correction>,
}

impl GoldenFixture {
    pub fn name(&self) -> String {
        let mode = match self.mode {
            TableMode::Real => "real",
            TableMode::Complex => "complex",
        };
        format!("Cl({},{}) {mode}", self.signature[0], self.signature[1])
    }
}

pub fn load_fixture(path: &Path) -> Result<GoldenFixture, TableError> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| TableError::Fixture { path: path.display().to_string(), message: e.to_string() })
}

/// Every `*.toml` below `dir`, sorted by path.
pub fn load_dir(dir: &Path) -> Result<Vec<(PathBuf, GoldenFixture)>, TableError> {
    let mut paths = Vec::new();
    collect(dir, &mut paths)?;
    paths.sort();
    paths.into_iter().map(|p| load_fixture(&p).map(|f| (p, f))).collect()
}

fn collect(dir: &Path, out: &mut Vec<PathBuf>) -> Result<(), TableError> {
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_dir() {
            collect(&path, out)?;
        } else if path.extension().is_some_and(|e| e == "toml") {
            out.push(path);
        }
    }
    Ok(())
}
