//! Matrix representations of a Clifford algebra on its spinor basis, general
//! spinors, and spinor norm formulas.

mod matrix;
mod norm;
mod rep;
mod spinor;

use ga_core::{Cx, Scalar};
use ideal_engine::IdealError;
use idempotent_factory::Mv;

pub use matrix::{pow2, unit_name, RepMatrix};
pub use norm::{
    find_norm_formula, hermitian_form, trace_form, trace_normalization, Involution, NormFormula, QuadraticForm,
};
pub use rep::{basis_unit_matrices, generator_rep, Representation};
pub use spinor::{
    assemble_spinor, hermitian_norm_sq, spinor_matrix, spinor_text, trace_norm_sq, FrameElement, LinearForm, Spinor,
    SpinorFrame, SpinorMatrixForm,
};

#[derive(Debug, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("multivector belongs to another signature")]
    Signature,
    #[error("no generator e{0}")]
    Generator(usize),
    #[error("expected {expected} spinor coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("real spinor coefficients required")]
    ComplexCoefficient,
    #[error("frame element {0} is not a single blade times the idempotent")]
    Frame(String),
}

/// Scalar part of a·b, without forming the product.
pub fn scalar_product(a: &Mv, b: &Mv) -> Cx {
    let sig = a.signature();
    let mut acc = Cx::zero();
    for (blade, x) in a.terms() {
        let y = b.coeff(blade);
        if y.is_zero() {
            continue;
        }
        let (s, _) = sig.blade_product(blade, blade);
        let v = x * y;
        acc = if s < 0 { acc - v } else { acc + v };
    }
    acc
}
