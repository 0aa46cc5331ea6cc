use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::{Blade, Dyadic, GaError, Scalar, Signature};

/// Finite sum of blades with exact coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multivector<S: Scalar> {
    sig: Signature,
    terms: BTreeMap<Blade, S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, c: S) -> Self {
        Self::term(sig, Blade::SCALAR, c)
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, S::one())
    }

    /// `c e_b`. Panics if the blade is outside the algebra.
    pub fn term(sig: Signature, b: Blade, c: S) -> Self {
        assert!(sig.contains(b), "blade {b} outside {sig}");
        let mut m = Self::zero(sig);
        if !c.is_zero() {
            m.terms.insert(b, c);
        }
        m
    }

    pub fn blade(sig: Signature, b: Blade) -> Self {
        Self::term(sig, b, S::one())
    }

    pub fn from_terms<I>(sig: Signature, terms: I) -> Result<Self, GaError>
    where
        I: IntoIterator<Item = (Blade, S)>,
    {
        let mut m = Self::zero(sig);
        for (b, c) in terms {
            if !sig.contains(b) {
                let index = b.indices().last().copied().unwrap_or(0);
                return Err(GaError::IndexOutOfRange { index, n: sig.n() });
            }
            m.add_term(b, c);
        }
        Ok(m)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, S)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = Blade> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: Blade) -> S {
        self.terms.get(&b).copied().unwrap_or_else(S::zero)
    }

    pub fn scalar_part(&self) -> S {
        self.coeff(Blade::SCALAR)
    }

    fn add_term(&mut self, b: Blade, c: S) {
        if c.is_zero() {
            return;
        }
        let v = self.coeff(b) + c;
        if v.is_zero() {
            self.terms.remove(&b);
        } else {
            self.terms.insert(b, v);
        }
    }

    fn check(&self, other: &Self) -> Result<(), GaError> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(GaError::SignatureMismatch(self.sig, other.sig))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GaError> {
        self.check(other)?;
        let mut r = self.clone();
        for (b, c) in other.terms() {
            r.add_term(b, c);
        }
        Ok(r)
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self, GaError> {
        self.check(other)?;
        let mut r = Self::zero(self.sig);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let (s, m) = self.sig.blade_product(a, b);
                let c = x * y;
                r.add_term(m, if s < 0 { -c } else { c });
            }
        }
        Ok(r)
    }

    /// Left scalar multiple `c · self`.
    pub fn scale(&self, c: S) -> Self {
        self.map_coeffs(|_, v| c * v)
    }

    /// Scale every coefficient by a dyadic factor (central in all rings).
    pub fn scale_dyadic(&self, d: Dyadic) -> Self {
        self.scale(S::from_dyadic(d))
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(Blade, S) -> S) -> Self {
        let mut r = Self::zero(self.sig);
        for (b, c) in self.terms() {
            r.add_term(b, f(b, c));
        }
        r
    }

    /// Change of scalar ring.
    pub fn convert<T: Scalar>(&self, f: impl Fn(S) -> T) -> Multivector<T> {
        let mut r = Multivector::zero(self.sig);
        for (b, c) in self.terms() {
            r.add_term(b, f(c));
        }
        r
    }

    fn signed(&self, sign: impl Fn(Blade) -> i8) -> Self {
        self.map_coeffs(|b, c| if sign(b) < 0 { -c } else { c })
    }

    pub fn reverse(&self) -> Self {
        self.signed(|b| b.reverse_sign())
    }

    pub fn grade_involution(&self) -> Self {
        self.signed(|b| b.grade_sign())
    }

    pub fn clifford_conjugate(&self) -> Self {
        self.signed(|b| b.reverse_sign() * b.grade_sign())
    }

    /// Index raising: each negative-square factor of a blade flips its sign.
    pub fn sharp(&self) -> Self {
        let neg = self.sig.negative_mask();
        self.signed(move |b| if (b.mask() & neg).count_ones().is_multiple_of(2) { 1 } else { -1 })
    }

    /// Coefficient-wise complex conjugation.
    pub fn conj(&self) -> Self {
        self.map_coeffs(|_, c| c.conj())
    }

    /// Σ c_T* e_T^{-1}, with e_T^{-1} = reverse(sharp(e_T)).
    pub fn hermitian_adjoint(&self) -> Self {
        self.sharp().reverse().conj()
    }

    pub fn grade_part(&self, g: usize) -> Self {
        let mut r = Self::zero(self.sig);
        for (b, c) in self.terms().filter(|(b, _)| b.grade() == g) {
            r.add_term(b, c);
        }
        r
    }
}

impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;
    /// Panics on signature mismatch; use `try_add` to get an error instead.
    fn add(self, o: &Multivector<S>) -> Multivector<S> {
        self.try_add(o).expect("signature mismatch")
    }
}

impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, o: &Multivector<S>) -> Multivector<S> {
        self.try_add(&-o).expect("signature mismatch")
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        self.map_coeffs(|_, c| -c)
    }
}

impl<S: Scalar> Mul for &Multivector<S> {
    type Output = Multivector<S>;
    fn mul(self, o: &Multivector<S>) -> Multivector<S> {
        self.geometric_product(o).expect("signature mismatch")
    }
}

/// Prints `1/4(1 + e1 + e23 + e123)`: terms by grade, then index list, and the
/// largest common power-of-two denominator pulled out when more than one term
/// is present.
impl<S: Scalar> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let e = self.terms().map(|(_, c)| c.log2den()).max().unwrap_or(0);
        let factor = self.len() > 1 && e > 0;
        let body = if factor { self.scale_dyadic(Dyadic::pow2(e as i32)) } else { self.clone() };
        if factor {
            write!(f, "1/{}(", 1u64 << e)?;
        }
        let mut terms: Vec<(Blade, S)> = body.terms().collect();
        terms.sort_by_key(|(b, _)| (b.grade(), b.indices()));
        for (k, (b, c)) in terms.into_iter().enumerate() {
            let (neg, mag) = c.signed_text();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if b.is_scalar() {
                write!(f, "{}", if mag.is_empty() { "1" } else { &mag })?;
            } else {
                write!(f, "{mag}{b}")?;
            }
        }
        if factor {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cx;

    type Mv = Multivector<Dyadic>;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn mv(s: Signature, terms: &[(&str, i128, u32)]) -> Mv {
        Mv::from_terms(s, terms.iter().map(|(b, n, e)| (b.parse().unwrap(), Dyadic::new(*n, *e)))).unwrap()
    }

    #[test]
    fn worked_idempotent_product() {
        let s = sig(2, 2);
        let p = mv(s, &[("1", 1, 2), ("e1", 1, 2), ("e23", 1, 2), ("e123", 1, 2)]);
        let e2 = Mv::blade(s, "e2".parse().unwrap());
        let want = mv(s, &[("e2", 1, 2), ("e3", 1, 2), ("e12", -1, 2), ("e13", -1, 2)]);
        assert_eq!(&e2 * &p, want);
        assert_eq!(&p * &p, p);
        assert_eq!((&p * &p).scalar_part(), Dyadic::new(1, 2));
        assert_eq!(p.to_string(), "1/4(1 + e1 + e23 + e123)");
    }

    #[test]
    fn involutions_on_idempotent() {
        let s = sig(2, 2);
        let p = mv(s, &[("1", 1, 2), ("e1", 1, 2), ("e23", 1, 2), ("e123", 1, 2)]);
        let flipped = mv(s, &[("1", 1, 2), ("e1", 1, 2), ("e23", -1, 2), ("e123", -1, 2)]);
        assert_eq!(p.reverse(), flipped);
        assert_eq!(p.sharp(), flipped);
        let h = mv(sig(1, 0), &[("1", 1, 1), ("e1", 1, 1)]);
        assert_eq!(h.grade_involution(), mv(sig(1, 0), &[("1", 1, 1), ("e1", -1, 1)]));
        let c = mv(sig(2, 0), &[("1", 1, 0), ("e1", 1, 0), ("e12", 1, 0)]);
        assert_eq!(c.clifford_conjugate(), mv(sig(2, 0), &[("1", 1, 0), ("e1", -1, 0), ("e12", -1, 0)]));
        assert_eq!(Mv::blade(sig(1, 3), "e234".parse().unwrap()).sharp(), mv(sig(1, 3), &[("e234", -1, 0)]));
    }

    #[test]
    fn adjoint_inverts_blades() {
        let s = sig(0, 1);
        let a = mv(s, &[("1", 3, 0), ("e1", 5, 0)]);
        assert_eq!(a.hermitian_adjoint(), mv(s, &[("1", 3, 0), ("e1", -5, 0)]));
        for b in sig(2, 3).blades() {
            let e = Mv::blade(sig(2, 3), b);
            assert_eq!(&e.hermitian_adjoint() * &e, Mv::one(sig(2, 3)));
        }
        let z = Multivector::<Cx>::scalar(s, Cx::new(Dyadic::ONE, Dyadic::ONE));
        assert_eq!(z.hermitian_adjoint().scalar_part(), Cx::new(Dyadic::ONE, -Dyadic::ONE));
    }

    #[test]
    fn mismatch_is_rejected() {
        let a = Mv::one(sig(1, 0));
        let b = Mv::one(sig(0, 1));
        assert!(matches!(a.geometric_product(&b), Err(GaError::SignatureMismatch(..))));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn display_forms() {
        let s = sig(3, 0);
        assert_eq!(Mv::zero(s).to_string(), "0");
        assert_eq!(mv(s, &[("e1", 1, 1)]).to_string(), "1/2e1");
        assert_eq!(mv(s, &[("1", 1, 0), ("e12", -2, 0)]).to_string(), "1 - 2e12");
        let c = Multivector::<Cx>::from_terms(
            s,
            [
                (Blade::SCALAR, Cx::real(Dyadic::new(1, 1))),
                (Blade::generator(1), Cx::new(Dyadic::ZERO, Dyadic::new(1, 1))),
            ],
        )
        .unwrap();
        assert_eq!(c.to_string(), "1/2(1 + ie1)");
    }
}
