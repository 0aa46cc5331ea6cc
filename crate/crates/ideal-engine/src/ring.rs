use std::collections::HashSet;
use std::fmt;

use blade_order::invdeglex_rank;
use ga_core::{Blade, Cx};
use idempotent_factory::{is_idempotent, Mode, Mv};

use crate::{unit_normal, IdealElement, IdealError};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RingKind {
    R,
    C,
    H,
}

impl RingKind {
    pub fn real_dim(&self) -> usize {
        match self {
            RingKind::R => 1,
            RingKind::C => 2,
            RingKind::H => 4,
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::R => "R",
            RingKind::C => "C",
            RingKind::H => "H",
        })
    }
}

/// A basis element of the ring with its interpretation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingUnit {
    /// `1`, `i`, `q1`, `q2`, `q3`, or `u` for the central element of an odd
    /// complex algebra.
    pub label: String,
    /// Leading blade of the support, used to read off coordinates.
    pub name: Blade,
    pub value: Mv,
}

/// P·Cl·P with its unit assignment.
///
/// In complex mode the ground field already contains i, so the ring is C with
/// unit t. Odd complex algebras add a central `u` with u² = −t, which makes
/// the representation split into two blocks.
#[derive(Clone, Debug)]
pub struct DivisionRing {
    pub kind: RingKind,
    pub mode: Mode,
    /// Distinct P e_T P, unit first, then by ascending name mask.
    pub elements: Vec<IdealElement>,
    pub units: Vec<RingUnit>,
}

impl DivisionRing {
    /// True for odd complex algebras (the `u` unit is present).
    pub fn split(&self) -> bool {
        self.mode == Mode::Complex && self.units.len() == 2
    }

    /// Coordinates of `y` on the given units (real for real mode), with an
    /// exact residual check.
    pub fn coordinates(&self, y: &Mv, units: &[Mv]) -> Result<Vec<Cx>, IdealError> {
        let mut rest = y.clone();
        let mut out = Vec::with_capacity(units.len());
        for (u, v) in self.units.iter().zip(units) {
            let c = v.coeff(u.name);
            let lambda =
                c.inverse().map(|inv| y.coeff(u.name) * inv).ok_or_else(|| IdealError::NotInRing(y.to_string()))?;
            if self.mode == Mode::Real && !lambda.is_real() {
                return Err(IdealError::NotInRing(y.to_string()));
            }
            rest = &rest - &v.scale(lambda);
            out.push(lambda);
        }
        if rest.is_zero() {
            Ok(out)
        } else {
            Err(IdealError::NotInRing(y.to_string()))
        }
    }

    pub fn unit_values(&self) -> Vec<Mv> {
        self.units.iter().map(|u| u.value.clone()).collect()
    }
}

fn lead_blade(x: &Mv) -> Blade {
    x.support().min_by_key(|b| invdeglex_rank(*b)).expect("nonzero ring element")
}

fn unit(label: &str, value: Mv) -> RingUnit {
    RingUnit { label: label.to_string(), name: lead_blade(&value), value }
}

pub fn two_sided_ideal(p: &Mv, mode: Mode) -> Result<DivisionRing, IdealError> {
    if !is_idempotent(p) {
        return Err(IdealError::NotIdempotent);
    }
    let sig = p.signature();
    let mut blades: Vec<Blade> = sig.blades().collect();
    blades.sort_by_key(|b| invdeglex_rank(*b));
    let mut seen = HashSet::new();
    let mut elements = Vec::new();
    for b in blades {
        let x = &(p * &Mv::blade(sig, b)) * p;
        if x.is_zero() {
            continue;
        }
        if seen.insert(unit_normal(&x).1) {
            elements.push(IdealElement { name: b, value: x });
        }
    }
    elements.sort_by_key(|e| e.name);
    let axiom = |m: &str| IdealError::RingAxiom(m.to_string());
    let minus_p = -p;
    let mut units = vec![unit("1", elements[0].value.clone())];
    let kind = match (mode, elements.len()) {
        (Mode::Real, 1) | (Mode::Complex, 1) => {
            if mode == Mode::Real {
                RingKind::R
            } else {
                RingKind::C
            }
        }
        (Mode::Real, 2) => {
            let i = elements[1].value.clone();
            if &i * &i != minus_p || &i * p != i {
                return Err(axiom("i² ≠ −1"));
            }
            units.push(unit("i", i));
            RingKind::C
        }
        (Mode::Complex, 2) => {
            let w = elements[1].value.clone();
            let sq = &w * &w;
            let w = if sq == minus_p {
                w
            } else if sq == *p {
                w.scale(Cx::I)
            } else {
                return Err(axiom("central element does not square to ±t"));
            };
            if &w * &w != minus_p {
                return Err(axiom("u² ≠ −t"));
            }
            units.push(unit("u", w));
            RingKind::C
        }
        (Mode::Real, 4) => {
            let q1 = elements[1].value.clone();
            let q2 = elements[2].value.clone();
            let q3 = &q1 * &q2;
            for (q, l) in [(&q1, "q1"), (&q2, "q2"), (&q3, "q3")] {
                if q * q != minus_p {
                    return Err(axiom(&format!("{l}² ≠ −1")));
                }
            }
            if &q2 * &q3 != q1 || &q3 * &q1 != q2 {
                return Err(axiom("quaternion table"));
            }
            units.push(unit("q1", q1));
            units.push(unit("q2", q2));
            units.push(unit("q3", q3));
            RingKind::H
        }
        (_, n) => return Err(IdealError::RingSize(n)),
    };
    if elements[0].value != *p {
        return Err(axiom("first element is not the idempotent"));
    }
    Ok(DivisionRing { kind, mode, elements, units })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ga_core::{Scalar, Signature};
    use idempotent_factory::default_family;

    fn ring(p: usize, q: usize, mode: Mode) -> DivisionRing {
        let s = Signature::new(p, q).unwrap();
        two_sided_ideal(default_family(s, mode).primitive(), mode).unwrap()
    }

    fn names(r: &DivisionRing) -> Vec<String> {
        r.elements.iter().map(|e| e.name.to_string()).collect()
    }

    #[test]
    fn kinds_from_element_count() {
        let r = ring(2, 2, Mode::Real);
        assert_eq!((r.kind, names(&r)), (RingKind::R, vec!["1".to_string()]));
        let r = ring(3, 0, Mode::Real);
        assert_eq!((r.kind, names(&r)), (RingKind::C, vec!["1".into(), "e23".into()]));
        let r = ring(0, 3, Mode::Real);
        assert_eq!(r.kind, RingKind::H);
        assert_eq!(names(&r), ["1", "e1", "e2", "e3"]);
        assert_eq!(r.units[3].value, &r.units[1].value * &r.units[2].value);
    }

    #[test]
    fn complex_odd_has_central_unit() {
        let r = ring(3, 0, Mode::Complex);
        assert!(r.split());
        assert_eq!(r.units[1].name.to_string(), "e23");
        let r = ring(2, 2, Mode::Complex);
        assert!(!r.split());
        assert_eq!(r.units.len(), 1);
    }

    #[test]
    fn coordinates_are_exact() {
        let r = ring(0, 3, Mode::Real);
        let y = &r.units[2].value.scale(Cx::from_int(3)) - &r.units[0].value;
        let got = r.coordinates(&y, &r.unit_values()).unwrap();
        assert_eq!(got, vec![-Cx::one(), Cx::zero(), Cx::from_int(3), Cx::zero()]);
        let s = Signature::new(0, 3).unwrap();
        assert!(r.coordinates(&Mv::blade(s, Blade::generator(1)), &r.unit_values()).is_err());
    }
}
