use std::fmt;

use blade_order::{ordered_basis, OrderingKind};
use ga_core::{Blade, Cx, Dyadic, Scalar};
use idempotent_factory::{Mode, Mv};

use crate::{scalar_product, Representation, SpinorFrame};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    Identity,
    Reverse,
    GradeInvolution,
    CliffordConjugate,
}

impl Involution {
    pub const ALL: [Involution; 4] =
        [Involution::Identity, Involution::Reverse, Involution::GradeInvolution, Involution::CliffordConjugate];

    pub fn apply(self, x: &Mv) -> Mv {
        match self {
            Involution::Identity => x.clone(),
            Involution::Reverse => x.reverse(),
            Involution::GradeInvolution => x.grade_involution(),
            Involution::CliffordConjugate => x.clifford_conjugate(),
        }
    }

    /// Short name used in text output and fixtures.
    pub fn name(self) -> &'static str {
        match self {
            Involution::Identity => "id",
            Involution::Reverse => "rev",
            Involution::GradeInvolution => "gi",
            Involution::CliffordConjugate => "cc",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Involution::ALL.into_iter().find(|i| i.name() == s)
    }
}

/// `sign ⟨u · inv(Ψ)[*] · u · Ψ⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormFormula {
    pub sign: i8,
    pub involution: Involution,
    pub conjugated: bool,
    pub sandwich: Option<Blade>,
}

impl NormFormula {
    pub fn left_factor(&self, y: &Mv) -> Mv {
        let mut l = self.involution.apply(y);
        if self.conjugated {
            l = l.conj();
        }
        if let Some(u) = self.sandwich {
            let e = Mv::blade(y.signature(), u);
            l = &(&e * &l) * &e;
        }
        if self.sign < 0 {
            l = -&l;
        }
        l
    }

    /// Value on a concrete multivector.
    pub fn apply(&self, psi: &Mv) -> Cx {
        scalar_product(&self.left_factor(psi), psi)
    }

    /// Gram matrix over the real directions of `frame`.
    pub fn evaluate(&self, frame: &SpinorFrame) -> QuadraticForm {
        let dirs = frame.real_directions();
        let left: Vec<Mv> = dirs.iter().map(|y| self.left_factor(y)).collect();
        let gram = left.iter().map(|l| dirs.iter().map(|y| scalar_product(l, y)).collect()).collect();
        QuadraticForm { gram, complex_symbols: frame.complex_coefficients }
    }
}

impl fmt::Display for NormFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        let inner = match self.involution {
            Involution::Identity => "Ψ".to_string(),
            i => format!("{}(Ψ)", i.name()),
        };
        let star = if self.conjugated { "*" } else { "" };
        match self.sandwich {
            Some(u) => write!(f, "<{u} {inner}{star} {u} Ψ>"),
            None => write!(f, "<{inner}{star} Ψ>"),
        }
    }
}

/// A real quadratic form Σ r_a r_b G[a][b] in the real coordinates of a spinor.
/// With complex coefficients s_j the coordinates run re(s1), im(s1), re(s2), ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub gram: Vec<Vec<Cx>>,
    pub complex_symbols: bool,
}

impl QuadraticForm {
    pub fn len(&self) -> usize {
        self.gram.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gram.is_empty()
    }

    /// `Some(c)` when the form equals c·Σ r_a².
    pub fn as_scaled_identity(&self) -> Option<Dyadic> {
        let c = self.gram.first()?.first()?;
        if !c.is_real() {
            return None;
        }
        for a in 0..self.len() {
            if self.gram[a][a] != *c {
                return None;
            }
            for b in a + 1..self.len() {
                if !(self.gram[a][b] + self.gram[b][a]).is_zero() {
                    return None;
                }
            }
        }
        Some(c.re)
    }

    /// Symmetric real coefficient of r_a r_b (a ≤ b) in the expanded polynomial.
    pub fn coefficient(&self, a: usize, b: usize) -> Cx {
        if a == b {
            self.gram[a][a]
        } else {
            self.gram[a][b] + self.gram[b][a]
        }
    }

    fn symbol(&self, a: usize) -> String {
        if self.complex_symbols {
            let part = if a.is_multiple_of(2) { "re" } else { "im" };
            format!("{part}(s{})", a / 2 + 1)
        } else {
            format!("s{}", a + 1)
        }
    }

    /// Equal as polynomials: Gram matrices may differ by an antisymmetric part.
    pub fn same_polynomial(&self, other: &QuadraticForm) -> bool {
        self.len() == other.len()
            && self.complex_symbols == other.complex_symbols
            && (0..self.len()).all(|a| (a..self.len()).all(|b| self.coefficient(a, b) == other.coefficient(a, b)))
    }

    /// The number of spinor coefficients the form is written in.
    pub fn symbol_count(&self) -> usize {
        if self.complex_symbols {
            self.len() / 2
        } else {
            self.len()
        }
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_scaled_identity() {
            if c.is_zero() {
                return write!(f, "0");
            }
            let terms: Vec<String> = (1..=self.symbol_count())
                .map(|j| if self.complex_symbols { format!("|s{j}|²") } else { format!("s{j}²") })
                .collect();
            let (neg, mag) = c.signed_text();
            let sign = if neg { "-" } else { "" };
            return if mag.is_empty() && terms.len() == 1 {
                write!(f, "{sign}{}", terms[0])
            } else if mag.is_empty() && !neg {
                write!(f, "{}", terms.join(" + "))
            } else {
                write!(f, "{sign}{mag}({})", terms.join(" + "))
            };
        }
        let mut first = true;
        for a in 0..self.len() {
            for b in a..self.len() {
                let c = self.coefficient(a, b);
                if c.is_zero() {
                    continue;
                }
                let (neg, mag) = c.signed_text();
                let sep = match (first, neg) {
                    (true, true) => "-",
                    (true, false) => "",
                    (false, true) => " - ",
                    (false, false) => " + ",
                };
                let mono = if a == b {
                    format!("{}²", self.symbol(a))
                } else {
                    format!("{}{}", self.symbol(a), self.symbol(b))
                };
                write!(f, "{sep}{mag}{mono}")?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// ⟨Ψ†Ψ⟩ as a quadratic form.
pub fn hermitian_form(frame: &SpinorFrame) -> QuadraticForm {
    let dirs = frame.real_directions();
    let gram = dirs
        .iter()
        .map(|a| {
            let l = a.hermitian_adjoint();
            dirs.iter().map(|b| scalar_product(&l, b)).collect()
        })
        .collect();
    QuadraticForm { gram, complex_symbols: frame.complex_coefficients }
}

/// log2 of the trace normalization: k, or k+1 for split complex algebras
/// where both blocks carry the same spinor.
pub fn trace_normalization(rep: &Representation) -> u32 {
    let k = rep.k() as u32;
    if rep.mode() == Mode::Complex && rep.ring().split() {
        k + 1
    } else {
        k
    }
}

/// 2^{-k} Tr(Ψ̂†Ψ̂) as a quadratic form.
pub fn trace_form(rep: &Representation, frame: &SpinorFrame) -> Result<QuadraticForm, crate::RepError> {
    let mats = frame.real_directions().iter().map(|y| rep.rep(y)).collect::<Result<Vec<_>, _>>()?;
    let scale = Dyadic::pow2(-(trace_normalization(rep) as i32));
    let gram = mats
        .iter()
        .map(|a| {
            let ad = a.conj_transpose();
            mats.iter().map(|b| Cx::real((&ad * b).trace().w * scale)).collect()
        })
        .collect();
    Ok(QuadraticForm { gram, complex_symbols: frame.complex_coefficients })
}

/// Value of the form if it is ±c·Σ r² with c = 2^{-k}; cheap early exits
/// because the search visits hundreds of candidates.
fn scaled_identity_sign(formula: &NormFormula, dirs: &[Mv], c: Dyadic) -> Option<i8> {
    let left: Vec<Mv> = dirs.iter().map(|y| formula.left_factor(y)).collect();
    let d0 = scalar_product(&left[0], &dirs[0]);
    let sign = if d0 == Cx::real(c) {
        1
    } else if d0 == Cx::real(-c) {
        -1
    } else {
        return None;
    };
    for a in 1..dirs.len() {
        if scalar_product(&left[a], &dirs[a]) != d0 {
            return None;
        }
    }
    for a in 0..dirs.len() {
        for b in a + 1..dirs.len() {
            if !(scalar_product(&left[a], &dirs[b]) + scalar_product(&left[b], &dirs[a])).is_zero() {
                return None;
            }
        }
    }
    Some(sign)
}

/// First formula `± ⟨u inv(Ψ)[*] u Ψ⟩ = 2^{-k} Σ |s|²` in the order
/// involution, conjugation, sandwich (none first, then InvDeg[Lex]).
pub fn find_norm_formula(rep: &Representation, frame: &SpinorFrame) -> Option<NormFormula> {
    let sig = rep.signature();
    let dirs = frame.real_directions();
    if dirs.is_empty() {
        return None;
    }
    let c = Dyadic::pow2(-(rep.k() as i32));
    let conj_opts: &[bool] = if rep.mode() == Mode::Complex { &[false, true] } else { &[false] };
    let mut sandwiches = vec![None];
    let blades = ordered_basis(OrderingKind::INVDEG_LEX, sig.n());
    sandwiches.extend(blades.into_iter().filter(|b| !b.is_scalar()).map(Some));
    for involution in Involution::ALL {
        for &conjugated in conj_opts {
            for &sandwich in &sandwiches {
                let probe = NormFormula { sign: 1, involution, conjugated, sandwich };
                if let Some(sign) = scaled_identity_sign(&probe, &dirs, c) {
                    return Some(NormFormula { sign, ..probe });
                }
            }
        }
    }
    None
}
