//! Exact computations in the partition algebras `A_k(z)` and their
//! half-integer subalgebras `A_{k-1/2}(z)`.
//!
//! The algebras are realised on their diagram bases: set partitions of
//! `{1..k, 1'..k'}` with the stacking product `d1 d2 = z^l (d1 o d2)`,
//! where `l` counts the connected components removed from the middle row.
//! On top of the diagram calculus the crate provides
//!
//! * arbitrary-precision coefficients in `Z[z]` ([`poly::IntPolynomial`]),
//! * formal linear combinations of diagrams ([`algebra::AlgebraElement`]),
//! * the recursively defined Jucys-Murphy families `L_i`, `L_{i+1/2}` and
//!   the involutions `sigma_i`, `sigma_{i+1/2}` ([`jucys::JmCache`]),
//! * machine verification of the defining relations, the commutation
//!   theorems and both presentations ([`verify`]),
//! * the exact integer action on tensor space `V^{(x)r}` together with
//!   Schur-Weyl consistency checks ([`tensor`]).
//!
//! Everything is exact: no floating point is used anywhere.

pub mod algebra;
pub mod diagram;
pub mod jucys;
pub mod poly;
pub mod tensor;
pub mod verify;

pub use algebra::AlgebraElement;
pub use diagram::{Composition, DiagramError, Generator, SetPartitionDiagram};
pub use jucys::{HalfIndex, JmCache};
pub use poly::IntPolynomial;
pub use tensor::{RepConfig, SparseOperator, TensorIndex, TensorSuiteId};
pub use verify::{Check, SuiteId, VerificationReport};
