use std::collections::BTreeMap;

use ga_core::{Blade, Cx, Dyadic, Quat, Signature};
use ideal_engine::{left_ideal, spinor_basis_with_phases, two_sided_ideal, RingKind};
use idempotent_factory::{default_family, Mode, Mv};
use rep_spinor::{
    find_norm_formula, spinor_text, FrameElement, Involution, NormFormula, RepMatrix, Representation, SpinorFrame,
};
use serde::{Deserialize, Serialize};

use crate::TableError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableMode {
    Real,
    Complex,
}

impl From<Mode> for TableMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Real => TableMode::Real,
            Mode::Complex => TableMode::Complex,
        }
    }
}

impl From<TableMode> for Mode {
    fn from(m: TableMode) -> Self {
        match m {
            TableMode::Real => Mode::Real,
            TableMode::Complex => Mode::Complex,
        }
    }
}

/// Exact dyadic rational `num / 2^log2den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Num {
    #[serde(with = "wide_int")]
    pub num: i128,
    pub log2den: u32,
}

/// JSON has no 128-bit integers: numerators outside i64 travel as strings.
mod wide_int {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &i128, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(*v) {
            Ok(small) => s.serialize_i64(small),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(i64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i128, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Small(v) => Ok(v.into()),
            Repr::Text(t) => t.parse().map_err(de::Error::custom),
        }
    }
}

impl From<Dyadic> for Num {
    fn from(d: Dyadic) -> Self {
        Num { num: d.num(), log2den: d.log2den() }
    }
}

impl From<Num> for Dyadic {
    fn from(n: Num) -> Self {
        Dyadic::new(n.num, n.log2den)
    }
}

/// A scalar: real part inline, then `im` for complex values or `q1..q3`
/// for quaternion ones. Zero parts are omitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coeff {
    #[serde(flatten)]
    pub re: Num,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q1: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q2: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q3: Option<Num>,
}

fn part(d: Dyadic) -> Option<Num> {
    (!d.is_zero()).then(|| d.into())
}

fn val(n: Option<Num>) -> Dyadic {
    n.map_or(Dyadic::ZERO, Dyadic::from)
}

impl Coeff {
    pub fn from_cx(c: Cx) -> Self {
        Coeff { re: c.re.into(), im: part(c.im), q1: None, q2: None, q3: None }
    }

    pub fn from_quat(q: Quat, kind: RingKind) -> Self {
        if kind == RingKind::H {
            Coeff { re: q.w.into(), im: None, q1: part(q.x), q2: part(q.y), q3: part(q.z) }
        } else {
            Coeff { re: q.w.into(), im: part(q.x), q1: None, q2: None, q3: None }
        }
    }

    pub fn to_quat(&self) -> Quat {
        Quat::new(self.re.into(), val(self.im.or(self.q1)), val(self.q2), val(self.q3))
    }

    pub fn to_cx(&self) -> Cx {
        Cx::new(self.re.into(), val(self.im))
    }
}

/// One multivector term; the blade is its sorted index list (empty for 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub blade: Vec<usize>,
    pub coeff: Coeff,
}

pub fn terms_of(x: &Mv) -> Vec<Term> {
    x.terms().map(|(b, c)| Term { blade: b.indices(), coeff: Coeff::from_cx(c) }).collect()
}

pub fn mv_of(sig: Signature, terms: &[Term]) -> Result<Mv, TableError> {
    let terms = terms
        .iter()
        .map(|t| Ok((Blade::from_indices(&t.blade)?, t.coeff.to_cx())))
        .collect::<Result<Vec<_>, TableError>>()?;
    Ok(Mv::from_terms(sig, terms)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub blade: Vec<usize>,
    pub imaginary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Named {
    pub name: Vec<usize>,
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingItem {
    pub kind: String,
    /// K = {t, u} with u² = -t: the odd complex case.
    pub split: bool,
    /// Spanning elements P e_B P of K; in complex mode its units, so u may carry i.
    pub elements: Vec<Named>,
    /// `1`, `i`, `q1`.. or `u`, matching `elements`.
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisItem {
    pub generators: Vec<Named>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_block: Option<Vec<Vec<Term>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub coeff: Coeff,
}

/// A matrix as its nonzero unit entries; rows and columns count from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub generator: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<usize>,
    pub entries: Vec<Entry>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameTerm {
    /// 1-based coefficient index s_j.
    pub symbol: usize,
    pub coeff: Coeff,
    pub blade: Vec<usize>,
    pub block: usize,
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorItem {
    pub complex_coefficients: bool,
    pub terms: Vec<FrameTerm>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymCoeff {
    pub symbol: usize,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormEntry {
    pub row: usize,
    pub col: usize,
    pub form: Vec<SymCoeff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorMatrixItem {
    pub dim: usize,
    pub entries: Vec<FormEntry>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaJson {
    pub sign: i8,
    pub involution: String,
    pub conjugated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<Vec<usize>>,
}

impl FormulaJson {
    pub fn to_formula(&self) -> Option<NormFormula> {
        let sandwich = match &self.sandwich {
            Some(b) => Some(Blade::from_indices(b).ok()?),
            None => None,
        };
        Some(NormFormula {
            sign: self.sign,
            involution: Involution::from_name(&self.involution)?,
            conjugated: self.conjugated,
            sandwich,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormItem {
    pub formula: Option<FormulaJson>,
    pub rhs_normalization: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Items {
    #[serde(rename = "1")]
    pub idempotent: Vec<Term>,
    #[serde(rename = "2")]
    pub ring: RingItem,
    #[serde(rename = "3")]
    pub basis: BasisItem,
    #[serde(rename = "4")]
    pub generators: Vec<MatrixJson>,
    #[serde(rename = "5")]
    pub spinor: SpinorItem,
    #[serde(rename = "6")]
    pub spinor_matrix: SpinorMatrixItem,
    #[serde(rename = "7")]
    pub norm: NormItem,
}

/// The seven items of one algebra, as plain data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorTable {
    pub signature: [usize; 2],
    pub mode: TableMode,
    pub classification: String,
    pub k: usize,
    pub factors: Vec<FactorJson>,
    pub items: Items,
}

impl SpinorTable {
    pub fn sig(&self) -> Result<Signature, TableError> {
        Ok(Signature::new(self.signature[0], self.signature[1])?)
    }

    /// `P1` for real tables, `t` for complex ones.
    pub fn idempotent_name(&self) -> &'static str {
        match self.mode {
            TableMode::Real => "P1",
            TableMode::Complex => "t",
        }
    }

    pub fn idempotent_mv(&self) -> Result<Mv, TableError> {
        mv_of(self.sig()?, &self.items.idempotent)
    }

    /// The coordinate directions X_j of the general spinor.
    pub fn frame_values(&self) -> Result<Vec<Mv>, TableError> {
        let sig = self.sig()?;
        self.items.spinor.terms.iter().map(|t| mv_of(sig, &t.value)).collect()
    }

    /// Rebuilds the rep-spinor frame so norm formulas can be evaluated on it.
    pub fn frame(&self) -> Result<SpinorFrame, TableError> {
        let sig = self.sig()?;
        let p = self.idempotent_mv()?;
        let nblocks = self.items.spinor.terms.iter().map(|t| t.block + 1).max().unwrap_or(1);
        let block_idempotents = (0..nblocks).map(|b| if b == 0 { p.clone() } else { p.grade_involution() }).collect();
        let elements = self
            .items
            .spinor
            .terms
            .iter()
            .map(|t| {
                Ok(FrameElement {
                    value: mv_of(sig, &t.value)?,
                    block: t.block,
                    generator: 0,
                    unit: 0,
                    coeff: t.coeff.to_cx(),
                    blade: Blade::from_indices(&t.blade)?,
                })
            })
            .collect::<Result<_, TableError>>()?;
        Ok(SpinorFrame { elements, complex_coefficients: self.items.spinor.complex_coefficients, block_idempotents })
    }

    /// Item 4 as maps from 0-based (row, col) to entries.
    pub fn generator_maps(&self) -> Vec<BTreeMap<(usize, usize), Quat>> {
        self.items
            .generators
            .iter()
            .map(|m| m.entries.iter().map(|e| ((e.row - 1, e.col - 1), e.coeff.to_quat())).collect())
            .collect()
    }

    /// Item 6 split per symbol: ρ(X_j) as a map from 0-based (row, col).
    pub fn spinor_matrix_maps(&self) -> Vec<BTreeMap<(usize, usize), Quat>> {
        let mut out = vec![BTreeMap::new(); self.items.spinor.terms.len()];
        for e in &self.items.spinor_matrix.entries {
            for f in &e.form {
                out[f.symbol - 1].insert((e.row - 1, e.col - 1), f.coeff.to_quat());
            }
        }
        out
    }
}

fn matrix_json(generator: usize, m: &RepMatrix) -> MatrixJson {
    MatrixJson {
        generator,
        dim: m.dim(),
        block: m.block(),
        entries: m
            .nonzero()
            .into_iter()
            .map(|(r, c, v)| Entry { row: r + 1, col: c + 1, coeff: Coeff::from_quat(v, m.kind()) })
            .collect(),
        text: m.to_string(),
    }
}

fn kind_name(k: RingKind) -> String {
    k.to_string()
}

pub fn build_table(sig: Signature, mode: Mode) -> Result<SpinorTable, TableError> {
    build_table_with_phases(sig, mode, None)
}

/// As [`build_table`], with each spinor generator multiplied by a phase.
pub fn build_table_with_phases(sig: Signature, mode: Mode, phases: Option<&[Cx]>) -> Result<SpinorTable, TableError> {
    let family = default_family(sig, mode);
    let p = family.primitive().clone();
    let ideal = left_ideal(&p)?;
    let ring = two_sided_ideal(&p, mode)?;
    let basis = spinor_basis_with_phases(&ideal, &ring, phases)?;
    let classification = basis.classification();
    let rep = Representation::new(basis, ring, family.k());
    let gens = rep.generators()?;
    let frame = rep.spinor_frame()?;
    let form = rep.spinor_matrix_form(&frame)?;
    let formula = find_norm_formula(&rep, &frame);
    let idem_name = if mode == Mode::Real { "P1" } else { "t" };
    let k = family.k();

    let ring_item = RingItem {
        kind: kind_name(rep.kind()),
        split: rep.ring().split(),
        // Real rings list the spanning P e_B P; complex ones their units, where u may carry i.
        elements: if mode == Mode::Real {
            rep.ring().elements.iter().map(|e| Named { name: e.name.indices(), value: terms_of(&e.value) }).collect()
        } else {
            rep.ring().units.iter().map(|u| Named { name: u.name.indices(), value: terms_of(&u.value) }).collect()
        },
        labels: rep.ring().units.iter().map(|u| u.label.clone()).collect(),
    };
    let basis_item = BasisItem {
        generators: rep
            .basis()
            .generators
            .iter()
            .map(|g| Named { name: g.name.indices(), value: terms_of(&g.value) })
            .collect(),
        second_block: rep.basis().second_block.as_ref().map(|b| b.iter().map(terms_of).collect()),
    };
    let spinor = SpinorItem {
        complex_coefficients: frame.complex_coefficients,
        terms: frame
            .elements
            .iter()
            .enumerate()
            .map(|(j, e)| FrameTerm {
                symbol: j + 1,
                coeff: Coeff::from_cx(e.coeff),
                blade: e.blade.indices(),
                block: e.block,
                value: terms_of(&e.value),
            })
            .collect(),
        text: spinor_text(&frame, idem_name),
    };
    let spinor_matrix = SpinorMatrixItem {
        dim: form.dim,
        entries: form
            .entries
            .iter()
            .map(|((r, c), lf)| FormEntry {
                row: r + 1,
                col: c + 1,
                form: lf
                    .0
                    .iter()
                    .map(|(j, q)| SymCoeff { symbol: j + 1, coeff: Coeff::from_quat(*q, rep.kind()) })
                    .collect(),
            })
            .collect(),
        text: form.to_string(),
    };
    let norm = match formula {
        Some(f) => NormItem {
            formula: Some(FormulaJson {
                sign: f.sign,
                involution: f.involution.name().to_string(),
                conjugated: f.conjugated,
                sandwich: f.sandwich.map(|b| b.indices()),
            }),
            rhs_normalization: format!("2^-{k}"),
            text: format!("{f} = {}", f.evaluate(&frame)),
        },
        None => NormItem { formula: None, rhs_normalization: format!("2^-{k}"), text: "no formula found".into() },
    };
    Ok(SpinorTable {
        signature: [sig.p(), sig.q()],
        mode: mode.into(),
        classification,
        k,
        factors: family
            .factors()
            .iter()
            .map(|f| FactorJson { blade: f.blade.indices(), imaginary: f.imaginary })
            .collect(),
        items: Items {
            idempotent: terms_of(&p),
            ring: ring_item,
            basis: basis_item,
            generators: gens.iter().enumerate().map(|(i, m)| matrix_json(i + 1, m)).collect(),
            spinor,
            spinor_matrix,
            norm,
        },
    })
}

impl SpinorTable {
    /// Rescales the second-block basis vectors b_r -> d_r b_r of a complex odd
    /// table. Matrices change by M_rc -> d_r⁻¹ M_rc d_c inside that block.
    pub fn rephase_second_block(&mut self, d: &[Cx]) -> Result<(), TableError> {
        let sig = self.sig()?;
        let Some(second) = self.items.basis.second_block.as_mut() else {
            return Ok(());
        };
        let m = second.len();
        if d.len() != m || self.mode != TableMode::Complex {
            return Err(TableError::Rep(rep_spinor::RepError::Frame(format!(
                "{} block phases for a block of {m}",
                d.len()
            ))));
        }
        for (t, c) in second.iter_mut().zip(d) {
            *t = terms_of(&mv_of(sig, t)?.scale(*c));
        }
        let q: Vec<Quat> = d.iter().map(|c| Quat::from_cx(*c)).collect();
        let qinv: Vec<Quat> = d.iter().map(|c| Quat::from_cx(c.inverse().expect("unit phase"))).collect();
        let fix = |r: usize, c: usize, v: Quat| -> Quat {
            if r > m && c > m {
                qinv[r - 1 - m] * v * q[c - 1 - m]
            } else {
                v
            }
        };
        for g in &mut self.items.generators {
            let mut mat = RepMatrix::zero(g.dim, RingKind::C, g.block);
            for e in &mut g.entries {
                let v = fix(e.row, e.col, e.coeff.to_quat());
                e.coeff = Coeff::from_quat(v, RingKind::C);
                mat.set(e.row - 1, e.col - 1, v);
            }
            g.text = mat.to_string();
        }
        let dim = self.items.spinor_matrix.dim;
        let mut mats = vec![RepMatrix::zero(dim, RingKind::C, None); self.items.spinor.terms.len()];
        for e in &mut self.items.spinor_matrix.entries {
            for f in &mut e.form {
                let v = fix(e.row, e.col, f.coeff.to_quat());
                f.coeff = Coeff::from_quat(v, RingKind::C);
                mats[f.symbol - 1].set(e.row - 1, e.col - 1, v);
            }
        }
        self.items.spinor_matrix.text = rep_spinor::SpinorMatrixForm::from_matrices(&mats).to_string();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_numerators_survive_json() {
        for num in [3, -7, i128::from(i64::MAX) + 1, i128::MIN] {
            let n = Num { num, log2den: 5 };
            let text = serde_json::to_string(&n).unwrap();
            assert_eq!(serde_json::from_str::<Num>(&text).unwrap(), n, "{text}");
        }
        assert_eq!(serde_json::to_string(&Num { num: -7, log2den: 1 }).unwrap(), r#"{"num":-7,"log2den":1}"#);
    }
}
