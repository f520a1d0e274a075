//! Exact-arithmetic engine for classical r-matrix lifts and braidings of
//! dual formal Poisson groups.
//!
//! Given a finite-dimensional quasitriangular Lie bialgebra `(g, r)` with
//! rational structure constants, the crate
//!
//! * models the truncated function algebras of powers of the dual formal
//!   group in exponential coordinates, with the Campbell-Baker-Hausdorff
//!   coproduct and the Poisson structure dual to the co-Poisson cobracket
//!   of the enveloping algebra ([`formalgroup`], [`enveloping`], [`cbh`]);
//! * constructs the unique lift of `r` to a two-leg element satisfying the
//!   cabling identities, degree by degree, by solving co-Hochschild
//!   coboundary equations ([`liftengine`], [`cohochschild`]);
//! * exponentiates the Hamiltonian derivation of the lift into the braiding
//!   operator and verifies every axiom identically ([`braiding`]).
//!
//! All kernels are generic over the [`Scalar`] coefficient field. The
//! checks test residuals for *identical* zero, so the intended field is the
//! arbitrary-precision rational alias [`Rat`]; see the type aliases below.

pub mod braiding;
pub mod catalog;
pub mod cbh;
pub mod cohochschild;
pub mod enveloping;
pub mod error;
pub mod formalgroup;
pub mod liebialg;
pub mod liftengine;
pub mod linalg;
pub mod report;
mod rngutil;
pub mod scalar;

pub use error::{EngineError, Result};
pub use formalgroup::{AlgebraContext, TruncatedElement};
pub use liebialg::{DualLieAlgebra, LieBialgebra, ValidationReport};
pub use report::{AxiomCheck, AxiomReport};
pub use scalar::Scalar;

/// Exact rational scalar: the coefficient field used by the command line
/// tool and the acceptance suite.
pub type Rat = num_rational::BigRational;

/// Truncated function-algebra element over exact rationals.
pub type Element = TruncatedElement<Rat>;
/// Precomputed algebra context over exact rationals.
pub type Context = AlgebraContext<Rat>;
/// Input datum over exact rationals.
pub type Bialgebra = LieBialgebra<Rat>;
/// Truncated linear operator over exact rationals.
pub type Operator = cbh::TruncatedOperator<Rat>;
