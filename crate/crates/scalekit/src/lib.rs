//! Scales, gauges and weights on groups.
//!
//! This crate provides:
//!
//! * concrete group models (lattices, the discrete Heisenberg group, free
//!   groups, tuple groups of positive rationals, the `ax+b` group, `SL(2,R)`,
//!   `GL(n,R)` and integer unitriangular groups) with word evaluation and
//!   Cayley-ball enumeration ([`group`]);
//! * scale/gauge/weight evaluation in the log domain together with
//!   evidence-based probes for axioms, domination orderings, translation
//!   equivalence and (m-)sub-polynomiality ([`scale`]);
//! * adjoint representations in closed form with a finite-difference oracle,
//!   norm-growth probes and related decompositions ([`adjoint`]);
//! * weighted `l^1` convolution algebras with exact rational coefficients,
//!   seminorms, involution and m-convexity experiments ([`algebra`]);
//! * ball-growth classification and integrability certificates ([`growth`]);
//! * a Euclidean grid-convolution lower-bound experiment ([`euclid`]).
//!
//! Numeric conventions: all scale values are handled in the log domain
//! (`log_sigma`), since weights such as `exp(tau^k)` overflow `f64` long
//! before the probes run out of evidence.  Exact arithmetic uses
//! `num_rational::BigRational`.

pub mod adjoint;
pub mod algebra;
pub mod euclid;
pub mod error;
pub mod group;
pub mod growth;
pub mod logsum;
pub mod report;
pub mod scalar;
pub mod scale;

pub use error::SkError;
pub use group::{Element, GeneratingSet, GroupKind, GroupSpec, ShellTable};
pub use report::{EvidenceDomain, Fit, ProbeReport, Verdict, Witness};
pub use scale::Scale;

/// Default floating-point scalar used by the concrete type aliases.
pub type Real = f64;

/// Exact rational scalar used by the exact-arithmetic code paths.
pub type Rational = num_rational::BigRational;

/// Grid function over [`Real`] samples (see [`euclid::GridFunction`]).
pub type GridFunction = euclid::GridFunction<Real>;

/// Weighted function with exact rational coefficients.
pub type ExactFunction = algebra::WeightedFunction<Rational>;

/// Weighted function with floating-point coefficients.
pub type FloatFunction = algebra::WeightedFunction<Real>;
