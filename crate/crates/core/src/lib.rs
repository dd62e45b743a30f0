//! Generic freeness certificates.
//!
//! Given a finitely presented algebra `B = A[x1..xn]/I` and a module
//! `M = B^m / N` over the parameter ring `A = Q[t1..tk]`, this crate computes a
//! nonzero `f ∈ A` together with a staircase certificate showing that `B[1/f]`
//! and `M[1/f]` are free `A[1/f]`-modules with explicit finite presentations.
//! The [`verify`] module checks such certificates without reusing any solver
//! state.
//!
//! The polynomial layer is generic over the coefficient ring through the
//! [`scalar::Coeff`] trait; the type aliases below fix the concrete carriers
//! used by the solver and the verifier.

pub mod certificate;
pub mod dsl;
pub mod engine;
pub mod localize;
pub mod poly;
pub mod scalar;
pub mod staircase;
pub mod verify;

pub use certificate::{Certificate, Presentation};
pub use engine::{module_case_echelon, solve, ProblemSpec, SolveConfig};
pub use localize::{TrackedScalar, WitnessAccumulator};
pub use poly::{ExponentVector, ModuleIndex, ParamPoly, TermOrder};
pub use staircase::Staircase;
pub use verify::{verify, VerifyOptions, VerifyReport};

/// Exact rational numbers, the ground field of every computation.
pub type Rational = num_rational::BigRational;

/// Polynomials in the algebra variables with coefficients in the localized
/// fraction field of `A`.
pub type AlgPoly = poly::Poly<TrackedScalar>;

/// Vectors of the free module `B<V1..Vm>` over the localized fraction field.
pub type ModVector = poly::ModVector<TrackedScalar>;

/// Algebra polynomials as they appear in a problem: coefficients in `A` itself.
pub type AlgRelation = poly::Poly<ParamPoly>;

/// Module vectors as they appear in a problem: coefficients in `A` itself.
pub type ModRelation = poly::ModVector<ParamPoly>;

/// Specialized (parameter-free) algebra polynomials over `Q`.
pub type RationalPoly = poly::Poly<Rational>;

/// Specialized (parameter-free) module vectors over `Q`.
pub type RationalVector = poly::ModVector<Rational>;
