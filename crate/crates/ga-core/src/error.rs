use thiserror::Error;

use crate::Signature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaError {
    #[error("signature mismatch: Cl({}, {}) vs Cl({}, {})", .0.p(), .0.q(), .1.p(), .1.q())]
    SignatureMismatch(Signature, Signature),
    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::MAX_DIM)]
    DimensionTooLarge(usize),
    #[error("blade index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cannot parse blade {0:?}")]
    BadBlade(String),
}
