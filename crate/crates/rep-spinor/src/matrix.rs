use std::fmt;
use std::ops::{Add, Mul};

use ga_core::{Dyadic, Quat, Scalar};
use ideal_engine::RingKind;

/// Dense square matrix over the real, complex or quaternion numbers.
///
/// Entries are stored as quaternions; complex values use the `q1` slot for i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepMatrix {
    dim: usize,
    entries: Vec<Quat>,
    kind: RingKind,
    /// Size of each diagonal block when the matrix has two of them.
    block: Option<usize>,
}

impl RepMatrix {
    pub fn zero(dim: usize, kind: RingKind, block: Option<usize>) -> Self {
        RepMatrix { dim, entries: vec![Quat::zero(); dim * dim], kind, block }
    }

    pub fn identity(dim: usize, kind: RingKind, block: Option<usize>) -> Self {
        let mut m = Self::zero(dim, kind, block);
        for i in 0..dim {
            m.set(i, i, Quat::one());
        }
        m
    }

    /// E_ij with 0-based indices.
    pub fn unit(dim: usize, kind: RingKind, block: Option<usize>, i: usize, j: usize) -> Self {
        let mut m = Self::zero(dim, kind, block);
        m.set(i, j, Quat::one());
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn block(&self) -> Option<usize> {
        self.block
    }

    pub fn get(&self, i: usize, j: usize) -> Quat {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Quat) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Nonzero entries as `(row, col, value)`, row-major, 0-based.
    pub fn nonzero(&self) -> Vec<(usize, usize, Quat)> {
        (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.get(i, j)))
            .filter(|(_, _, v)| !v.is_zero())
            .collect()
    }

    pub fn scale(&self, c: Quat) -> Self {
        let mut m = self.clone();
        for e in &mut m.entries {
            *e = c * *e;
        }
        m
    }

    pub fn conj_transpose(&self) -> Self {
        let mut m = Self::zero(self.dim, self.kind, self.block);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(j, i, self.get(i, j).conj());
            }
        }
        m
    }

    pub fn trace(&self) -> Quat {
        (0..self.dim).fold(Quat::zero(), |acc, i| acc + self.get(i, i))
    }

    /// True when nothing sits outside the two diagonal blocks.
    pub fn is_block_diagonal(&self) -> bool {
        match self.block {
            None => true,
            Some(m) => self.nonzero().iter().all(|(i, j, _)| (i / m) == (j / m)),
        }
    }

    /// Entries print with i for complex-valued rings and q1..q3 for quaternions.
    pub fn uses_i(&self) -> bool {
        self.kind != RingKind::H
    }
}

impl Add for &RepMatrix {
    type Output = RepMatrix;
    fn add(self, o: &RepMatrix) -> RepMatrix {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut m = self.clone();
        for (a, b) in m.entries.iter_mut().zip(&o.entries) {
            *a = *a + *b;
        }
        m
    }
}

impl Mul for &RepMatrix {
    type Output = RepMatrix;
    fn mul(self, o: &RepMatrix) -> RepMatrix {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let n = self.dim;
        let mut m = RepMatrix::zero(n, self.kind, self.block);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        m.entries[i * n + j] = m.entries[i * n + j] + a * b;
                    }
                }
            }
        }
        m
    }
}

/// `E11`, or `E_{10,2}` once an index passes 9. Indices are 1-based here.
pub fn unit_name(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("E{i}{j}")
    } else {
        format!("E_{{{i},{j}}}")
    }
}

/// Signed sum of entries, e.g. `E11 - E22` or `-q1E12 + q1E21`.
impl fmt::Display for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz = self.nonzero();
        if nz.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, j, v)) in nz.into_iter().enumerate() {
            let (neg, mag) = v.signed_text_as(self.uses_i());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{mag}{}", unit_name(i + 1, j + 1))?;
        }
        Ok(())
    }
}

/// 2^e as a quaternion scalar.
pub fn pow2(e: i32) -> Quat {
    Quat::real(Dyadic::pow2(e))
}
