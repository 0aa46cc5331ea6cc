use std::fmt;

use crate::{Blade, GaError, MAX_DIM};

/// Metric signature of Cl(p,q): generators e_1..e_p square to +1, the rest to −1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self, GaError> {
        if p + q > MAX_DIM {
            return Err(GaError::DimensionTooLarge(p + q));
        }
        Ok(Signature { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// Bits of the generators with negative square.
    pub fn negative_mask(&self) -> u32 {
        ((1u32 << self.n()) - 1) & !((1u32 << self.p) - 1)
    }

    /// Number of basis blades, 2^n.
    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn blades(&self) -> impl Iterator<Item = Blade> {
        (0..self.dim() as u32).map(Blade::from_mask)
    }

    pub fn pseudoscalar(&self) -> Blade {
        Blade::from_mask((1u32 << self.n()) - 1)
    }

    /// Square of generator e_i (1-based).
    pub fn metric(&self, i: usize) -> i8 {
        if i <= self.p {
            1
        } else {
            -1
        }
    }

    /// Product of two basis blades: `e_a e_b = sign · e_(a xor b)`.
    pub fn blade_product(&self, a: Blade, b: Blade) -> (i8, Blade) {
        let (am, bm) = (a.mask(), b.mask());
        let mut swaps = 0u32;
        let mut x = am >> 1;
        while x != 0 {
            swaps += (x & bm).count_ones();
            x >>= 1;
        }
        swaps += (am & bm & self.negative_mask()).count_ones();
        let sign = if swaps & 1 == 1 { -1 } else { 1 };
        (sign, Blade::from_mask(am ^ bm))
    }

    /// Sign of `e_b e_b`.
    pub fn square_sign(&self, b: Blade) -> i8 {
        self.blade_product(b, b).0
    }

    pub fn commutes(&self, a: Blade, b: Blade) -> bool {
        self.blade_product(a, b).0 == self.blade_product(b, a).0
    }

    pub fn contains(&self, b: Blade) -> bool {
        b.mask() >> self.n() == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Blade {
        s.parse().unwrap()
    }

    #[test]
    fn metric_squares() {
        let s = Signature::new(2, 2).unwrap();
        assert_eq!(s.blade_product(b("e1"), b("e1")), (1, Blade::SCALAR));
        assert_eq!(s.blade_product(b("e3"), b("e3")), (-1, Blade::SCALAR));
        assert_eq!(s.negative_mask(), 0b1100);
    }

    #[test]
    fn transposition_sign() {
        let s = Signature::new(4, 0).unwrap();
        assert_eq!(s.blade_product(b("e12"), b("e134")), (-1, b("e234")));
        assert_eq!(s.blade_product(b("e2"), b("e1")), (-1, b("e12")));
        assert!(!s.commutes(b("e1"), b("e2")));
        assert!(s.commutes(b("e12"), b("e34")));
    }

    #[test]
    fn rejects_large_dimension() {
        assert_eq!(Signature::new(10, 3), Err(GaError::DimensionTooLarge(13)));
    }
}
