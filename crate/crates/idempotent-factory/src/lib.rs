//! Primitive idempotents from commuting blades.
//!
//! A real Cl(p,q) needs k = q − r_{q−p} pairwise commuting blades that square to
//! +1; their sign patterns give 2^k mutually annihilating idempotents. Over the
//! complex numbers any blade can be made to square to +1 by an i prefix, so
//! ⌊n/2⌋ factors always suffice.

use std::fmt;

use blade_order::{sort_blades, OrderingKind};
use ga_core::{Blade, Cx, Dyadic, Multivector, Scalar, Signature};
use thiserror::Error;

pub type Mv = Multivector<Cx>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    Real,
    Complex,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Real => "real",
            Mode::Complex => "complex",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactoryError {
    #[error("factors {0} and {1} do not commute")]
    NotCommuting(Blade, Blade),
    #[error("factor {0} does not square to +1")]
    BadSquare(Blade),
    #[error("factor {0} lies in the group generated by the earlier factors")]
    Dependent(Blade),
    #[error("factor {0} is outside the algebra")]
    OutOfRange(Blade),
}

/// Radon–Hurwitz number r_i, for any integer i.
pub fn radon_hurwitz(i: i64) -> i64 {
    const BASE: [i64; 8] = [0, 1, 2, 2, 3, 3, 3, 3];
    if i >= 0 {
        BASE[(i % 8) as usize] + 4 * (i / 8)
    } else if i == -1 {
        -1
    } else {
        let j = -i;
        1 - j + radon_hurwitz(j - 2)
    }
}

/// Number of idempotent factors k.
pub fn idempotent_factor_count(sig: Signature, mode: Mode) -> usize {
    match mode {
        Mode::Real => {
            let (p, q) = (sig.p() as i64, sig.q() as i64);
            (q - radon_hurwitz(q - p)) as usize
        }
        Mode::Complex => sig.n() / 2,
    }
}

/// Non-scalar blades squaring to +1, in InvDeg[Lex] order. Anti-Euclidean
/// algebras keep only grades ≡ 3 mod 4.
pub fn real_candidates(sig: Signature) -> Vec<Blade> {
    let c: Vec<Blade> = sig
        .blades()
        .filter(|b| !b.is_scalar() && sig.square_sign(*b) == 1)
        .filter(|b| sig.p() > 0 || b.grade() % 4 == 3)
        .collect();
    sort_blades(OrderingKind::INVDEG_LEX, &c, true)
}

fn extend_span(span: &[u32], m: u32) -> Vec<u32> {
    span.iter().copied().chain(span.iter().map(|x| x ^ m)).collect()
}

fn admissible(sig: Signature, chosen: &[Blade], span: &[u32], c: Blade) -> bool {
    chosen.iter().all(|d| sig.commutes(c, *d)) && !span.contains(&c.mask())
}

/// Depth-first walk over candidate tuples in lexicographic order of the
/// candidate list; `visit` returns false to stop.
fn walk(
    sig: Signature,
    cands: &[Blade],
    k: usize,
    start: usize,
    chosen: &mut Vec<Blade>,
    span: &[u32],
    visit: &mut dyn FnMut(&[Blade]) -> bool,
) -> bool {
    if chosen.len() == k {
        return visit(chosen);
    }
    for idx in start..cands.len() {
        let c = cands[idx];
        if admissible(sig, chosen, span, c) {
            chosen.push(c);
            let next = extend_span(span, c.mask());
            let go_on = walk(sig, cands, k, idx + 1, chosen, &next, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
    }
    true
}

/// Every k-tuple of pairwise commuting, independent, +1-square blades,
/// listed lexicographically over the InvDeg[Lex] candidate order.
pub fn find_commuting_tuples(sig: Signature, k: usize) -> Vec<Vec<Blade>> {
    let cands = real_candidates(sig);
    let mut out = Vec::new();
    walk(sig, &cands, k, 0, &mut Vec::new(), &[0], &mut |t| {
        out.push(t.to_vec());
        true
    });
    out
}

/// The first entry of `find_commuting_tuples`, without enumerating the rest.
pub fn first_commuting_tuple(sig: Signature, k: usize) -> Option<Vec<Blade>> {
    let cands = real_candidates(sig);
    let mut found = None;
    walk(sig, &cands, k, 0, &mut Vec::new(), &[0], &mut |t| {
        found = Some(t.to_vec());
        false
    });
    found
}

/// One factor ½(1 ± e_T) or ½(1 ± i e_T).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Factor {
    pub blade: Blade,
    pub imaginary: bool,
}

impl Factor {
    pub fn real(blade: Blade) -> Self {
        Factor { blade, imaginary: false }
    }

    /// `e_T` or `i e_T` as a multivector.
    pub fn element(&self, sig: Signature) -> Mv {
        let c = if self.imaginary { Cx::I } else { Cx::one() };
        Mv::term(sig, self.blade, c)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.imaginary { "i" } else { "" }, self.blade)
    }
}

/// Factors used by the tables: the first commuting tuple for real algebras;
/// e1, e23, e45, ... with an i on every factor that squares to −1 for complex ones.
pub fn default_tuple(sig: Signature, mode: Mode) -> Vec<Factor> {
    let k = idempotent_factor_count(sig, mode);
    match mode {
        Mode::Real => first_commuting_tuple(sig, k)
            .expect("every real signature has a commuting tuple")
            .into_iter()
            .map(Factor::real)
            .collect(),
        Mode::Complex => (0..k)
            .map(|j| {
                let blade =
                    if j == 0 { Blade::generator(1) } else { Blade::from_indices(&[2 * j, 2 * j + 1]).unwrap() };
                Factor { blade, imaginary: sig.square_sign(blade) < 0 }
            })
            .collect(),
    }
}

/// 2^k idempotents from k factors. Member j has sign pattern given by the bits
/// of j, most significant bit for the first factor, a set bit meaning minus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentFamily {
    sig: Signature,
    factors: Vec<Factor>,
    members: Vec<Mv>,
}

impl IdempotentFamily {
    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn members(&self) -> &[Mv] {
        &self.members
    }

    /// The all-plus member P1.
    pub fn primitive(&self) -> &Mv {
        &self.members[0]
    }

    pub fn sign_pattern(&self, index: usize) -> Vec<bool> {
        let k = self.k();
        (0..k).map(|i| index >> (k - 1 - i) & 1 == 0).collect()
    }

    /// The factor ½(1 ± f) for one factor and sign.
    pub fn factor_element(&self, i: usize, plus: bool) -> Mv {
        half_sum(self.sig, &self.factors[i], plus)
    }
}

fn half_sum(sig: Signature, f: &Factor, plus: bool) -> Mv {
    let e = f.element(sig);
    let e = if plus { e } else { -&e };
    (&Mv::one(sig) + &e).scale_dyadic(Dyadic::new(1, 1))
}

pub fn build_family(sig: Signature, factors: &[Factor], mode: Mode) -> Result<IdempotentFamily, FactoryError> {
    let mut span = vec![0u32];
    for (i, f) in factors.iter().enumerate() {
        if !sig.contains(f.blade) {
            return Err(FactoryError::OutOfRange(f.blade));
        }
        let sq = sig.square_sign(f.blade) * if f.imaginary { -1 } else { 1 };
        if sq != 1 || (mode == Mode::Real && f.imaginary) {
            return Err(FactoryError::BadSquare(f.blade));
        }
        if let Some(g) = factors[..i].iter().find(|g| !sig.commutes(g.blade, f.blade)) {
            return Err(FactoryError::NotCommuting(g.blade, f.blade));
        }
        if span.contains(&f.blade.mask()) {
            return Err(FactoryError::Dependent(f.blade));
        }
        span = extend_span(&span, f.blade.mask());
    }
    let k = factors.len();
    let members = (0..1usize << k)
        .map(|j| {
            factors
                .iter()
                .enumerate()
                .fold(Mv::one(sig), |acc, (i, f)| &acc * &half_sum(sig, f, j >> (k - 1 - i) & 1 == 0))
        })
        .collect();
    Ok(IdempotentFamily { sig, factors: factors.to_vec(), members })
}

/// The family the tables use.
pub fn default_family(sig: Signature, mode: Mode) -> IdempotentFamily {
    build_family(sig, &default_tuple(sig, mode), mode).expect("default tuple is admissible")
}

pub fn is_idempotent(x: &Mv) -> bool {
    &(x * x) == x
}

/// The partial order on idempotents: a ≤ b when ab = ba = a.
pub fn idempotent_le(a: &Mv, b: &Mv) -> bool {
    &(a * b) == a && &(b * a) == a
}

/// Refinement test: no further +1-square blade commuting with every factor can
/// split P1 into two nonzero annihilating pieces P1·½(1 ± e).
pub fn resists_refinement(family: &IdempotentFamily) -> bool {
    let sig = family.sig;
    let p = family.primitive();
    real_candidates(sig).into_iter().filter(|e| family.factors.iter().all(|f| sig.commutes(f.blade, *e))).all(|e| {
        let piece = p * &half_sum(sig, &Factor::real(e), true);
        piece.is_zero() || &piece == p
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn blades(s: &str) -> Vec<Blade> {
        s.split_whitespace().map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn radon_hurwitz_values() {
        assert_eq!(radon_hurwitz(4), 3);
        assert_eq!(radon_hurwitz(0), 0);
        assert_eq!(radon_hurwitz(12), 7);
        assert_eq!(radon_hurwitz(-1), -1);
        assert_eq!(radon_hurwitz(-3), -1);
    }

    #[test]
    fn factor_counts() {
        assert_eq!(idempotent_factor_count(sig(2, 2), Mode::Real), 2);
        assert_eq!(idempotent_factor_count(sig(0, 1), Mode::Real), 0);
        assert_eq!(idempotent_factor_count(sig(3, 0), Mode::Real), 1);
        assert_eq!(idempotent_factor_count(sig(3, 2), Mode::Complex), 2);
    }

    #[test]
    fn default_tuples() {
        let real = |p, q| first_commuting_tuple(sig(p, q), idempotent_factor_count(sig(p, q), Mode::Real)).unwrap();
        assert_eq!(real(3, 1), blades("e1 e24"));
        assert_eq!(real(0, 6), blades("e123 e145 e246"));
        assert_eq!(real(0, 1), Vec::<Blade>::new());
        let c = default_tuple(sig(6, 0), Mode::Complex);
        assert_eq!(c.iter().map(|f| f.to_string()).collect::<Vec<_>>(), ["e1", "ie23", "ie45"]);
    }

    #[test]
    fn worked_family() {
        let f = default_family(sig(2, 2), Mode::Real);
        assert_eq!(f.primitive().to_string(), "1/4(1 + e1 + e23 + e123)");
        assert_eq!(f.members().len(), 4);
        assert_eq!(f.sign_pattern(1), vec![true, false]);
        assert_eq!(f.sign_pattern(2), vec![false, true]);
        let t = default_family(sig(0, 2), Mode::Complex);
        assert_eq!(t.primitive().to_string(), "1/2(1 + ie1)");
    }

    #[test]
    fn rejects_bad_tuples() {
        let s = sig(2, 0);
        let e = |x: &str| Factor::real(x.parse().unwrap());
        assert_eq!(
            build_family(s, &[e("e1"), e("e2")], Mode::Real),
            Err(FactoryError::NotCommuting("e1".parse().unwrap(), "e2".parse().unwrap()))
        );
        assert_eq!(build_family(s, &[e("e12")], Mode::Real), Err(FactoryError::BadSquare("e12".parse().unwrap())));
        let s4 = sig(2, 2);
        assert!(matches!(
            build_family(s4, &[e("e1"), e("e23"), e("e123")], Mode::Real),
            Err(FactoryError::Dependent(_))
        ));
        let imag = Factor { blade: "e12".parse().unwrap(), imaginary: true };
        assert!(build_family(s, &[imag], Mode::Complex).is_ok());
        assert!(build_family(s, &[imag], Mode::Real).is_err());
    }

    #[test]
    fn empty_family_is_unit() {
        let f = default_family(sig(0, 1), Mode::Real);
        assert_eq!(f.members(), &[Mv::one(sig(0, 1))]);
    }
}
