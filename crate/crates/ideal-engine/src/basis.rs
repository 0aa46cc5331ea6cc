use ga_core::{Blade, Cx, Scalar, Signature};
use idempotent_factory::{Mode, Mv};

use crate::{DivisionRing, IdealElement, IdealError, LeftIdeal, RingKind};

/// p − q ≡ 1 mod 4 for real algebras, odd n for complex ones.
pub fn is_semisimple(sig: Signature, mode: Mode) -> bool {
    match mode {
        Mode::Real => (sig.p() as i64 - sig.q() as i64).rem_euclid(4) == 1,
        Mode::Complex => sig.n() % 2 == 1,
    }
}

/// Matrix type label such as `R(4)`, `²H(2)` or `C(2)⊕C(2)`.
pub fn classification(kind: RingKind, m: usize, semisimple: bool, mode: Mode) -> String {
    match (mode, semisimple) {
        (Mode::Real, true) => format!("²{kind}({m})"),
        (Mode::Complex, true) => format!("{kind}({m})⊕{kind}({m})"),
        _ => format!("{kind}({m})"),
    }
}

/// Columns of the matrix representation.
#[derive(Clone, Debug)]
pub struct SpinorBasis {
    pub signature: Signature,
    pub mode: Mode,
    pub kind: RingKind,
    /// Block-one generators S(1..m), each `phase · e_name · P`.
    pub generators: Vec<IdealElement>,
    pub phases: Vec<Cx>,
    /// Block-two generators, present for semisimple algebras.
    pub second_block: Option<Vec<Mv>>,
    /// Ring units acting on each block (grade-inverted in the real second block).
    pub block_units: Vec<Vec<Mv>>,
}

impl SpinorBasis {
    pub fn m(&self) -> usize {
        self.generators.len()
    }

    pub fn semisimple(&self) -> bool {
        self.second_block.is_some()
    }

    pub fn blocks(&self) -> Vec<Vec<Mv>> {
        let mut v = vec![self.generators.iter().map(|g| g.value.clone()).collect()];
        if let Some(b) = &self.second_block {
            v.push(b.clone());
        }
        v
    }

    pub fn names(&self) -> Vec<Blade> {
        self.generators.iter().map(|g| g.name).collect()
    }

    pub fn classification(&self) -> String {
        classification(self.kind, self.m(), self.semisimple(), self.mode)
    }
}

fn support_bounds(x: &Mv) -> (u32, u32) {
    let masks = x.support().map(|b| b.mask());
    masks.fold((u32::MAX, 0), |(lo, hi), m| (lo.min(m), hi.max(m)))
}

/// Keeps one ideal element per right ring orbit.
///
/// Elements are scanned by ascending largest blade mask in their support; each
/// kept element marks x·u for every ring unit u as covered. The kept elements
/// are then listed by ascending smallest blade mask.
pub fn spinor_basis(ideal: &LeftIdeal, ring: &DivisionRing) -> SpinorBasis {
    spinor_basis_with_phases(ideal, ring, None).expect("no phases means no count mismatch")
}

/// As [`spinor_basis`], with an optional phase multiplying each generator.
pub fn spinor_basis_with_phases(
    ideal: &LeftIdeal,
    ring: &DivisionRing,
    phases: Option<&[Cx]>,
) -> Result<SpinorBasis, IdealError> {
    let elems = ideal.elements();
    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by_key(|&i| support_bounds(&elems[i].value).1);
    let mut covered = vec![false; elems.len()];
    let mut kept = Vec::new();
    for i in order {
        if covered[i] {
            continue;
        }
        kept.push(i);
        covered[i] = true;
        for u in &ring.units {
            if let Some((j, _)) = ideal.locate(&(&elems[i].value * &u.value)) {
                covered[j] = true;
            }
        }
    }
    kept.sort_by_key(|&i| support_bounds(&elems[i].value).0);

    let phases: Vec<Cx> = match phases {
        None => vec![Cx::one(); kept.len()],
        Some(ph) if ph.len() == kept.len() => ph.to_vec(),
        Some(ph) => return Err(IdealError::PhaseCount { expected: kept.len(), got: ph.len() }),
    };
    let sig = ideal.signature();
    let generators: Vec<IdealElement> = kept
        .iter()
        .zip(&phases)
        .map(|(&i, &c)| IdealElement { name: elems[i].name, value: elems[i].value.scale(c) })
        .collect();
    let units = ring.unit_values();
    let (second_block, block_units) = if !is_semisimple(sig, ring.mode) {
        (None, vec![units])
    } else if ring.mode == Mode::Real {
        let b2 = generators.iter().map(|g| g.value.grade_involution()).collect();
        let u2 = units.iter().map(Mv::grade_involution).collect();
        (Some(b2), vec![units, u2])
    } else {
        let p = ideal.idempotent();
        let b2 = generators
            .iter()
            .zip(&phases)
            .map(|(g, &c)| (&Mv::blade(sig, g.name).grade_involution() * p).scale(c))
            .collect();
        (Some(b2), vec![units.clone(), units])
    };
    Ok(SpinorBasis { signature: sig, mode: ring.mode, kind: ring.kind, generators, phases, second_block, block_units })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{left_ideal, two_sided_ideal};
    use idempotent_factory::default_family;

    fn basis(p: usize, q: usize, mode: Mode) -> SpinorBasis {
        let s = Signature::new(p, q).unwrap();
        let f = default_family(s, mode);
        let l = left_ideal(f.primitive()).unwrap();
        let r = two_sided_ideal(f.primitive(), mode).unwrap();
        spinor_basis(&l, &r)
    }

    fn names(b: &SpinorBasis) -> Vec<String> {
        b.names().iter().map(|n| n.to_string()).collect()
    }

    #[test]
    fn printed_generator_sets() {
        assert_eq!(names(&basis(2, 2, Mode::Real)), ["1", "e2", "e4", "e24"]);
        assert_eq!(names(&basis(3, 0, Mode::Real)), ["1", "e2"]);
        assert_eq!(names(&basis(0, 3, Mode::Real)), ["e3"]);
        assert_eq!(names(&basis(5, 0, Mode::Real)), ["e25", "e5"]);
        let b = basis(2, 1, Mode::Real);
        assert_eq!(names(&b), ["1", "e2"]);
        assert!(b.semisimple());
        assert_eq!(b.second_block.as_ref().unwrap()[0], b.generators[0].value.grade_involution());
    }

    #[test]
    fn labels() {
        assert_eq!(basis(5, 0, Mode::Real).classification(), "²H(2)");
        assert_eq!(basis(3, 1, Mode::Real).classification(), "R(4)");
        assert_eq!(basis(3, 0, Mode::Complex).classification(), "C(2)⊕C(2)");
    }

    #[test]
    fn phases_must_match_count() {
        let s = Signature::new(2, 0).unwrap();
        let f = default_family(s, Mode::Complex);
        let l = left_ideal(f.primitive()).unwrap();
        let r = two_sided_ideal(f.primitive(), Mode::Complex).unwrap();
        let err = spinor_basis_with_phases(&l, &r, Some(&[Cx::I])).unwrap_err();
        assert_eq!(err, IdealError::PhaseCount { expected: 2, got: 1 });
        let b = spinor_basis_with_phases(&l, &r, Some(&[Cx::one(), Cx::I])).unwrap();
        assert_eq!(b.generators[1].value, l.elements()[1].value.scale(Cx::I));
    }
}
