//! Exact and numeric machinery for the Rogers (continuous q-ultraspherical)
//! polynomials `C_n(x;β|q)` and the first-order q-difference operator
//! `𝒟_x^{β,q}` with `𝒟_x^{β,q} C_n = (q^{-n/2} + β q^{n/2}) C_n`.
//!
//! Polynomials in `x = cos θ` are carried as symmetric Laurent polynomials in
//! `z = e^{iθ}` with exact rational coefficients; shift operators act by
//! rescaling `z`. See [`operators`] for the operator algebra, [`numerics`]
//! for weight functions and quadrature, and [`verify`] for the check
//! catalog behind the `qfactor` binary.

pub mod error;
pub mod exact;
pub mod families;
pub mod numerics;
pub mod operators;
pub mod qkernel;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{BigRational, LaurentPoly, RationalExpr, TruncatedSeries};
pub use qkernel::{Eigenvalue, QContext};
