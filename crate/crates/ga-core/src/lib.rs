//! Exact arithmetic for the real Clifford algebras Cl(p,q).
//!
//! Blades are bit masks, coefficients live in an exact [`Scalar`] ring and every
//! multivector remembers its [`Signature`].

mod blade;
mod error;
mod multivector;
mod scalar;
mod signature;

pub use blade::Blade;
pub use error::GaError;
pub use multivector::Multivector;
pub use scalar::{Cx, Dyadic, Quat, Scalar};
pub use signature::Signature;

/// Largest supported n = p + q.
pub const MAX_DIM: usize = 12;
