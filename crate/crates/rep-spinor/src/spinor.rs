use std::collections::BTreeMap;
use std::fmt;

use blade_order::invdeglex_rank;
use ga_core::{Blade, Cx, Dyadic, Quat, Scalar};
use idempotent_factory::{Mode, Mv};

use crate::matrix::unit_name;
use crate::{RepError, RepMatrix, Representation};

/// One spinor coordinate direction X = S(r)·K(u)·S(1)†, which is always a
/// single `coeff · e_blade · P` with P the idempotent of its block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameElement {
    pub value: Mv,
    pub block: usize,
    pub generator: usize,
    pub unit: usize,
    pub coeff: Cx,
    pub blade: Blade,
}

/// The ordered coordinate directions of the general spinor: blocks, then
/// generators, then ring units.
#[derive(Clone, Debug)]
pub struct SpinorFrame {
    pub elements: Vec<FrameElement>,
    /// Coefficients range over C (even complex algebras) rather than R.
    pub complex_coefficients: bool,
    pub block_idempotents: Vec<Mv>,
}

impl SpinorFrame {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Directions over the reals: X_j, or X_j and i·X_j for complex coefficients.
    pub fn real_directions(&self) -> Vec<Mv> {
        if self.complex_coefficients {
            self.elements.iter().flat_map(|e| [e.value.clone(), e.value.scale(Cx::I)]).collect()
        } else {
            self.elements.iter().map(|e| e.value.clone()).collect()
        }
    }
}

fn as_single_term(x: &Mv, p: &Mv) -> Option<(Cx, Blade)> {
    let sig = x.signature();
    let mut support: Vec<Blade> = x.support().collect();
    support.sort_by_key(|b| invdeglex_rank(*b));
    support.into_iter().find_map(|b| {
        let e = &Mv::blade(sig, b) * p;
        let c = x.coeff(b) * e.coeff(b).inverse()?;
        (e.scale(c) == *x).then_some((c, b))
    })
}

impl Representation {
    pub fn spinor_frame(&self) -> Result<SpinorFrame, RepError> {
        let basis = self.basis();
        let complex_even = self.mode() == Mode::Complex && !self.ring().split();
        let nblocks = if self.mode() == Mode::Complex { 1 } else { self.blocks().len() };
        let mut idems = Vec::new();
        let mut elements = Vec::new();
        for b in 0..nblocks {
            let gens = &self.blocks()[b];
            let units = &basis.block_units[b];
            let p_b = units[0].clone();
            let s1d = gens[0].hermitian_adjoint();
            for (r, s) in gens.iter().enumerate() {
                for (ui, unit) in units.iter().enumerate() {
                    let value = &(s * unit) * &s1d;
                    let (coeff, blade) =
                        as_single_term(&value, &p_b).ok_or_else(|| RepError::Frame(value.to_string()))?;
                    elements.push(FrameElement { value, block: b, generator: r, unit: ui, coeff, blade });
                }
            }
            idems.push(p_b);
        }
        Ok(SpinorFrame { elements, complex_coefficients: complex_even, block_idempotents: idems })
    }
}

/// A concrete spinor Ψ = Σ s_j X_j.
#[derive(Clone, Debug)]
pub struct Spinor<'a> {
    pub rep: &'a Representation,
    pub coefficients: Vec<Cx>,
    pub value: Mv,
}

pub fn assemble_spinor<'a>(coeffs: &[Cx], rep: &'a Representation) -> Result<Spinor<'a>, RepError> {
    let frame = rep.spinor_frame()?;
    if coeffs.len() != frame.len() {
        return Err(RepError::CoefficientCount { expected: frame.len(), got: coeffs.len() });
    }
    if !frame.complex_coefficients && coeffs.iter().any(|c| !c.is_real()) {
        return Err(RepError::ComplexCoefficient);
    }
    let mut value = Mv::zero(rep.signature());
    for (c, e) in coeffs.iter().zip(&frame.elements) {
        value = &value + &e.value.scale(*c);
    }
    Ok(Spinor { rep, coefficients: coeffs.to_vec(), value })
}

pub fn spinor_matrix(psi: &Spinor<'_>) -> Result<RepMatrix, RepError> {
    psi.rep.rep(&psi.value)
}

/// ⟨Ψ†Ψ⟩.
pub fn hermitian_norm_sq(psi: &Spinor<'_>) -> Cx {
    crate::scalar_product(&psi.value.hermitian_adjoint(), &psi.value)
}

/// 2^{-k} Tr(Ψ̂†Ψ̂).
pub fn trace_norm_sq(psi_hat: &RepMatrix, k: usize) -> Dyadic {
    let t = (&psi_hat.conj_transpose() * psi_hat).trace();
    debug_assert!(t.x.is_zero() && t.y.is_zero() && t.z.is_zero());
    t.w * Dyadic::pow2(-(k as i32))
}

/// Σ_j s_j c_j with symbol index j (0-based) and coefficient c_j.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm(pub BTreeMap<usize, Quat>);

impl LinearForm {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&mut self, j: usize, c: Quat) {
        let v = self.0.get(&j).copied().unwrap_or_else(Quat::zero) + c;
        if v.is_zero() {
            self.0.remove(&j);
        } else {
            self.0.insert(j, v);
        }
    }

    /// Text such as `s1`, `-is4`, `s2q1`, or `(s1 + is2)` when several terms occur.
    pub fn text(&self, uses_i: bool) -> (bool, String) {
        let parts: Vec<(bool, String)> = self
            .0
            .iter()
            .map(|(j, c)| {
                let (neg, mag) = c.signed_text_as(uses_i);
                let sym = format!("s{}", j + 1);
                let body = if mag.starts_with('q') { format!("{sym}{mag}") } else { format!("{mag}{sym}") };
                (neg, body)
            })
            .collect();
        if parts.len() == 1 {
            return parts.into_iter().next().unwrap();
        }
        let mut s = String::from("(");
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(body);
        }
        s.push(')');
        (false, s)
    }
}

/// The spinor matrix with free coefficients: each entry a linear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorMatrixForm {
    pub dim: usize,
    pub uses_i: bool,
    pub entries: BTreeMap<(usize, usize), LinearForm>,
}

impl SpinorMatrixForm {
    pub fn from_matrices(mats: &[RepMatrix]) -> Self {
        let dim = mats.first().map_or(0, |m| m.dim());
        let uses_i = mats.first().is_none_or(|m| m.uses_i());
        let mut entries: BTreeMap<(usize, usize), LinearForm> = BTreeMap::new();
        for (j, m) in mats.iter().enumerate() {
            for (r, c, v) in m.nonzero() {
                entries.entry((r, c)).or_default().add(j, v);
            }
        }
        entries.retain(|_, f| !f.is_zero());
        SpinorMatrixForm { dim, uses_i, entries }
    }

    /// Columns carrying at least one nonzero entry (0-based).
    pub fn columns(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.entries.keys().map(|(_, c)| *c).collect();
        c.sort();
        c.dedup();
        c
    }
}

impl fmt::Display for SpinorMatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        // column-major reading order, the way the printed spinors run
        let mut cells: Vec<(&(usize, usize), &LinearForm)> = self.entries.iter().collect();
        cells.sort_by_key(|((r, c), _)| (*c, *r));
        for (k, ((r, c), form)) in cells.into_iter().enumerate() {
            let (neg, body) = form.text(self.uses_i);
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{body}{}", unit_name(r + 1, c + 1))?;
        }
        Ok(())
    }
}

impl Representation {
    /// Ψ̂ with free coefficients, Σ_j s_j ρ(X_j).
    pub fn spinor_matrix_form(&self, frame: &SpinorFrame) -> Result<SpinorMatrixForm, RepError> {
        let mats: Vec<RepMatrix> = frame.elements.iter().map(|e| self.rep(&e.value)).collect::<Result<_, _>>()?;
        Ok(SpinorMatrixForm::from_matrices(&mats))
    }
}

/// Text of the general spinor, e.g. `(s1 + s2e2 + s3e4 + s4e24)P1`; the
/// second-block idempotent prints as `gi(P1)`.
pub fn spinor_text(frame: &SpinorFrame, idempotent_name: &str) -> String {
    let mut out = String::new();
    let nblocks = frame.block_idempotents.len();
    for b in 0..nblocks {
        let mut s = String::new();
        for (k, (j, e)) in frame.elements.iter().enumerate().filter(|(_, e)| e.block == b).enumerate() {
            let (neg, mag) = e.coeff.signed_text();
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(&format!("{mag}s{}", j + 1));
            if !e.blade.is_scalar() {
                s.push_str(&e.blade.to_string());
            }
        }
        let idem = if b == 0 { idempotent_name.to_string() } else { format!("gi({idempotent_name})") };
        if b > 0 {
            out.push_str(" + ");
        }
        if frame.elements.iter().filter(|e| e.block == b).count() == 1 {
            out.push_str(&format!("{s}{idem}"));
        } else {
            out.push_str(&format!("({s}){idem}"));
        }
    }
    out
}
