//! Polynomials over `Q`, truncated expansions in `1/z`, diagonal operators
//! on `Q[t]` and the instance data of a contiguous hypergeometric family.

mod laurent;
mod operator;
mod poly;
mod spec;

pub use laurent::LaurentTail;
pub use operator::{
    apply_h_theta, apply_h_theta_inverse, expand_f_s, phi_zeta_s, psi, psi_weights, t_c, DiagonalOperator,
    Direction, OperatorTag,
};
pub use poly::RationalPoly;
pub use spec::{group_values, HypergeometricSpec, HypothesisCheck, SpecOrigin};
