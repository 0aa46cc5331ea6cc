//! Left ideals Cl·P, the ring P·Cl·P and the spinor basis.
//!
//! All three are computed straight from P by multiplying it against the blade
//! basis. Elements that differ by a unit of the ground field (±1, and ±i over
//! the complex numbers) are treated as the same element.

mod basis;
mod ring;

use std::collections::HashMap;

use blade_order::invdeglex_rank;
use ga_core::{Blade, Cx, Dyadic, Scalar, Signature};
use idempotent_factory::{is_idempotent, Mode, Mv};
use thiserror::Error;

pub use basis::{classification, is_semisimple, spinor_basis, spinor_basis_with_phases, SpinorBasis};
pub use ring::{two_sided_ideal, DivisionRing, RingKind, RingUnit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("input is not idempotent")]
    NotIdempotent,
    #[error("two-sided ideal has {0} elements; expected 1, 2 or 4")]
    RingSize(usize),
    #[error("division ring axiom fails: {0}")]
    RingAxiom(String),
    #[error("{0} is not a combination of ring units")]
    NotInRing(String),
    #[error("expected {expected} generator phases, got {got}")]
    PhaseCount { expected: usize, got: usize },
}

/// An element e_T·X of an ideal, named by the InvDeg[Lex]-least T producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealElement {
    pub name: Blade,
    pub value: Mv,
}

/// Coefficient on the leading (InvDeg[Lex]-least) blade of the support.
fn leading(x: &Mv) -> Option<(Blade, Cx)> {
    x.terms().min_by_key(|(b, _)| invdeglex_rank(*b))
}

fn units() -> [Cx; 4] {
    [Cx::one(), -Cx::one(), Cx::I, -Cx::I]
}

/// `(u, y)` with `x = u·y`, u a unit and y's leading coefficient in the closed
/// first quadrant (positive real part, non-negative imaginary part).
pub fn unit_normal(x: &Mv) -> (Cx, Mv) {
    let Some((_, c)) = leading(x) else {
        return (Cx::one(), x.clone());
    };
    for u in units() {
        let v = u * c;
        if v.re > Dyadic::ZERO && v.im >= Dyadic::ZERO {
            // x = u^{-1}·(u x), and u^{-1} = conj(u) for these units
            return (u.conj(), x.scale(u));
        }
    }
    unreachable!("some unit rotates a nonzero coefficient into the first quadrant")
}

/// Elements e_T·P for every blade, deduplicated up to units.
#[derive(Clone, Debug)]
pub struct LeftIdeal {
    idempotent: Mv,
    elements: Vec<IdealElement>,
    index: HashMap<Mv, usize>,
}

impl LeftIdeal {
    pub fn idempotent(&self) -> &Mv {
        &self.idempotent
    }

    pub fn signature(&self) -> Signature {
        self.idempotent.signature()
    }

    /// Sorted RevLex (ascending mask) by name.
    pub fn elements(&self) -> &[IdealElement] {
        &self.elements
    }

    /// Same ideal with element i replaced by `units[i] · elements[i]`; the
    /// unit-normal lookup is unaffected.
    pub fn rescaled(&self, units: &[Cx]) -> LeftIdeal {
        let mut r = self.clone();
        for (e, u) in r.elements.iter_mut().zip(units) {
            e.value = e.value.scale(*u);
        }
        r
    }

    /// `(i, u)` with `x = u · elements[i]`, if x is a unit multiple of an element.
    pub fn locate(&self, x: &Mv) -> Option<(usize, Cx)> {
        let (u, y) = unit_normal(x);
        let i = *self.index.get(&y)?;
        let (v, _) = unit_normal(&self.elements[i].value);
        // elements[i] = v·y, so x = u·y = u·v^{-1}·elements[i]
        Some((i, u * v.conj()))
    }
}

pub fn left_ideal(p: &Mv) -> Result<LeftIdeal, IdealError> {
    if !is_idempotent(p) {
        return Err(IdealError::NotIdempotent);
    }
    let sig = p.signature();
    let mut blades: Vec<Blade> = sig.blades().collect();
    blades.sort_by_key(|b| invdeglex_rank(*b));
    let mut elements: Vec<IdealElement> = Vec::new();
    let mut index = HashMap::new();
    for b in blades {
        let x = &Mv::blade(sig, b) * p;
        if x.is_zero() {
            continue;
        }
        let (_, y) = unit_normal(&x);
        if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(y) {
            slot.insert(elements.len());
            elements.push(IdealElement { name: b, value: x });
        }
    }
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by_key(|&i| elements[i].name);
    let elements: Vec<IdealElement> = order.iter().map(|&i| elements[i].clone()).collect();
    let index = elements.iter().enumerate().map(|(i, e)| (unit_normal(&e.value).1, i)).collect();
    Ok(LeftIdeal { idempotent: p.clone(), elements, index })
}

/// Which ground field the construction runs over.
pub fn ground_units(mode: Mode) -> &'static [Cx] {
    const REAL: [Cx; 1] = [Cx { re: Dyadic::ONE, im: Dyadic::ZERO }];
    const COMPLEX: [Cx; 2] = [Cx { re: Dyadic::ONE, im: Dyadic::ZERO }, Cx::I];
    match mode {
        Mode::Real => &REAL,
        Mode::Complex => &COMPLEX,
    }
}
