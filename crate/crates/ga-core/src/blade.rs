use std::fmt;
use std::str::FromStr;

use crate::GaError;

/// Basis blade e_T encoded as a bit mask, bit i-1 set when e_i is a factor.
///
/// Ordering on `Blade` itself is by mask; the named orderings live elsewhere.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Blade(u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    /// Generator e_i, 1-based.
    pub fn generator(i: usize) -> Self {
        Blade(1 << (i - 1))
    }

    /// Blade from 1-based indices; order and repetition are ignored.
    pub fn from_indices(indices: &[usize]) -> Result<Self, GaError> {
        let mut m = 0u32;
        for &i in indices {
            if i == 0 || i > 32 {
                return Err(GaError::IndexOutOfRange { index: i, n: 32 });
            }
            m |= 1 << (i - 1);
        }
        Ok(Blade(m))
    }

    pub fn mask(&self) -> u32 {
        self.0
    }

    pub fn grade(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_scalar(&self) -> bool {
        self.0 == 0
    }

    /// Strictly increasing 1-based indices.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|i| self.0 >> i & 1 == 1).map(|i| i + 1).collect()
    }

    /// Sign picked up under reversion, (−1)^(g(g−1)/2).
    pub fn reverse_sign(&self) -> i8 {
        let g = self.grade();
        if (g * g.saturating_sub(1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn grade_sign(&self) -> i8 {
        if self.grade().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn xor(&self, other: Blade) -> Blade {
        Blade(self.0 ^ other.0)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let idx = self.indices();
        if idx.iter().all(|&i| i < 10) {
            write!(f, "e")?;
            for i in idx {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            write!(f, "e{{{}}}", parts.join(","))
        }
    }
}

/// Accepts `1`, `e12`, `e{1,10}` and `e{12}`.
impl FromStr for Blade {
    type Err = GaError;

    fn from_str(s: &str) -> Result<Self, GaError> {
        let bad = || GaError::BadBlade(s.to_string());
        let t = s.trim();
        if t == "1" {
            return Ok(Blade::SCALAR);
        }
        let rest = t.strip_prefix('e').ok_or_else(bad)?;
        let indices: Vec<usize> = if let Some(inner) = rest.strip_prefix('{') {
            let inner = inner.strip_suffix('}').ok_or_else(bad)?;
            if inner.contains(',') {
                inner.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_, _>>()?
            } else {
                digits(inner).ok_or_else(bad)?
            }
        } else {
            digits(rest).ok_or_else(bad)?
        };
        if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad());
        }
        Blade::from_indices(&indices).map_err(|_| bad())
    }
}

fn digits(s: &str) -> Option<Vec<usize>> {
    s.chars().map(|c| c.to_digit(10).filter(|&d| d > 0).map(|d| d as usize)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in ["1", "e1", "e23", "e1234"] {
            assert_eq!(s.parse::<Blade>().unwrap().to_string(), s);
        }
        let b = Blade::from_indices(&[1, 10]).unwrap();
        assert_eq!(b.to_string(), "e{1,10}");
        assert_eq!("e{1,10}".parse::<Blade>().unwrap(), b);
        assert_eq!("e{1}".parse::<Blade>().unwrap(), Blade::generator(1));
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "e", "e21", "e11", "x1", "e0", "e{1,1}"] {
            assert!(s.parse::<Blade>().is_err(), "{s}");
        }
    }

    #[test]
    fn involution_signs() {
        let s: Vec<i8> = (0..5).map(|g| Blade((1 << g) - 1).reverse_sign()).collect();
        assert_eq!(s, vec![1, 1, -1, -1, 1]);
        assert_eq!(Blade(0b101).grade_sign(), 1);
    }
}
