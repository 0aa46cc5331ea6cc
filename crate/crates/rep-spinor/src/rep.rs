use ga_core::{Blade, Cx, Quat, Scalar, Signature};
use ideal_engine::{left_ideal, spinor_basis_with_phases, two_sided_ideal, DivisionRing, RingKind, SpinorBasis};
use idempotent_factory::{default_family, Mode, Mv};

use crate::{RepError, RepMatrix};

/// The representation x ↦ [S(i)† x S(j)] in a fixed spinor basis.
#[derive(Clone, Debug)]
pub struct Representation {
    basis: SpinorBasis,
    ring: DivisionRing,
    k: usize,
    blocks: Vec<Vec<Mv>>,
    adjoints: Vec<Vec<Mv>>,
}

impl Representation {
    /// `k` is the idempotent factor count, used by the norm normalization.
    pub fn new(basis: SpinorBasis, ring: DivisionRing, k: usize) -> Self {
        let blocks = basis.blocks();
        let adjoints = blocks.iter().map(|b| b.iter().map(Mv::hermitian_adjoint).collect()).collect();
        Representation { basis, ring, k, blocks, adjoints }
    }

    /// Full pipeline from the default idempotent, with optional generator phases.
    pub fn build(sig: Signature, mode: Mode, phases: Option<&[Cx]>) -> Result<Self, RepError> {
        let family = default_family(sig, mode);
        let p = family.primitive();
        let ideal = left_ideal(p)?;
        let ring = two_sided_ideal(p, mode)?;
        let basis = spinor_basis_with_phases(&ideal, &ring, phases)?;
        Ok(Representation::new(basis, ring, family.k()))
    }

    pub fn basis(&self) -> &SpinorBasis {
        &self.basis
    }

    pub fn ring(&self) -> &DivisionRing {
        &self.ring
    }

    pub fn signature(&self) -> Signature {
        self.basis.signature
    }

    pub fn mode(&self) -> Mode {
        self.basis.mode
    }

    pub fn kind(&self) -> RingKind {
        self.ring.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.basis.m()
    }

    pub fn dim(&self) -> usize {
        self.m() * self.blocks.len()
    }

    pub fn block(&self) -> Option<usize> {
        (self.blocks.len() == 2).then_some(self.m())
    }

    pub(crate) fn blocks(&self) -> &[Vec<Mv>] {
        &self.blocks
    }

    fn entry(&self, block: usize, i: usize, j: usize, x: &Mv) -> Result<Quat, RepError> {
        let y = &(&self.adjoints[block][i] * x) * &self.blocks[block][j];
        if y.is_zero() {
            return Ok(Quat::zero());
        }
        let c = self.ring.coordinates(&y, &self.basis.block_units[block])?;
        let re = |z: Cx| z.re;
        Ok(match (self.mode(), self.kind()) {
            (Mode::Real, RingKind::R) => Quat::real(re(c[0])),
            (Mode::Real, RingKind::C) => Quat::from_cx(Cx::new(re(c[0]), re(c[1]))),
            (Mode::Real, RingKind::H) => Quat::new(re(c[0]), re(c[1]), re(c[2]), re(c[3])),
            (Mode::Complex, _) if self.ring.split() => {
                let iu = Cx::I * c[1];
                Quat::from_cx(if block == 0 { c[0] + iu } else { c[0] - iu })
            }
            (Mode::Complex, _) => Quat::from_cx(c[0]),
        })
    }

    /// Matrix of any multivector.
    pub fn rep(&self, x: &Mv) -> Result<RepMatrix, RepError> {
        if x.signature() != self.signature() {
            return Err(RepError::Signature);
        }
        let m = self.m();
        let mut out = RepMatrix::zero(self.dim(), self.kind(), self.block());
        for b in 0..self.blocks.len() {
            for i in 0..m {
                for j in 0..m {
                    out.set(b * m + i, b * m + j, self.entry(b, i, j, x)?);
                }
            }
        }
        Ok(out)
    }

    /// ê_k for a 1-based generator index.
    pub fn generator(&self, k: usize) -> Result<RepMatrix, RepError> {
        if k == 0 || k > self.signature().n() {
            return Err(RepError::Generator(k));
        }
        self.rep(&Mv::blade(self.signature(), Blade::generator(k)))
    }

    pub fn generators(&self) -> Result<Vec<RepMatrix>, RepError> {
        (1..=self.signature().n()).map(|k| self.generator(k)).collect()
    }

    /// Matrices of the spinor basis elements themselves, block by block.
    pub fn basis_unit_matrices(&self) -> Result<Vec<RepMatrix>, RepError> {
        self.blocks.iter().flatten().map(|s| self.rep(s)).collect()
    }

    /// Matrices of all 2^n basis blades, indexed by mask.
    pub fn blade_matrices(&self) -> Result<Vec<RepMatrix>, RepError> {
        let s = self.signature();
        s.blades().map(|b| self.rep(&Mv::blade(s, b))).collect()
    }

    /// Extension by linearity from precomputed blade matrices.
    pub fn rep_from_blades(&self, blades: &[RepMatrix], x: &Mv) -> RepMatrix {
        let mut out = RepMatrix::zero(self.dim(), self.kind(), self.block());
        for (b, c) in x.terms() {
            assert!(c.is_real() || self.mode() == Mode::Complex, "real algebra with complex coefficient");
            let q = Quat::from_cx(c);
            out = &out + &blades[b.mask() as usize].scale(q);
        }
        out
    }
}

/// ê_k in the given basis.
pub fn generator_rep(e_k: Blade, basis: &SpinorBasis, ring: &DivisionRing) -> Result<RepMatrix, RepError> {
    let r = Representation::new(basis.clone(), ring.clone(), 0);
    r.rep(&Mv::blade(basis.signature, e_k))
}

/// Matrices of the basis elements S(k), expected to be E_k1 (and the block-two
/// analogue in the middle column).
pub fn basis_unit_matrices(basis: &SpinorBasis, ring: &DivisionRing) -> Result<Vec<RepMatrix>, RepError> {
    Representation::new(basis.clone(), ring.clone(), 0).basis_unit_matrices()
}
