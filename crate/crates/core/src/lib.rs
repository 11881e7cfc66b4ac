//! Real and complex eigenpairs of dense symmetric tensors.
//!
//! An eigenpair `(lambda, x)` of a symmetric order-`m` tensor `A` satisfies
//! `A x^{m-1} = lambda x` with `x^T x = 1`. This crate computes such pairs by
//! shifted symmetric power iteration, classifies them through the projected
//! Hessian of the constrained optimization problem, analyzes fixed-point
//! stability through the iteration-map Jacobian, and cross-checks everything
//! against an independent Newton-multistart enumeration on small instances.
//!
//! Module map:
//! * [`tensor`] — dense symmetric storage, contractions, shift bounds.
//! * [`linalg`] — symmetric eigendecomposition and complement bases.
//! * [`solver`] — power iterations, classification, stability, multistart.
//! * [`oracle`] — Newton refinement, enumeration, the class-count bound.
//! * [`io`] — tensor text format and the built-in corpus.
//! * [`sample`] — seeded random draws behind every stochastic entry point.

pub mod io;
pub mod linalg;
pub mod oracle;
pub mod sample;
pub mod solver;
pub mod tensor;

pub use linalg::SymMatrix;
pub use solver::{Classification, ComplexEigenPair, EigenPair, ShiftConfig};
pub use tensor::SymTensor;
