//! Exact construction of type-II Padé approximants for contiguous
//! hypergeometric G-functions, certification of the generalized Wronskian
//! and effective linear-independence criteria over all places of `Q`.
//!
//! All algebra is carried out over `BigRational`. Floating point appears only
//! in the growth/decay rates of the criterion module and in the interval
//! arithmetic of [`numerics`].

pub mod arith;
pub mod criterion;
pub mod error;
pub mod linalg;
pub mod numerics;
pub mod pade;
pub mod polyops;
pub mod report;
pub mod suite;
pub mod wronskian;

pub use error::{Error, Result};
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

/// Exact rational number used throughout.
pub type Rational = BigRational;
