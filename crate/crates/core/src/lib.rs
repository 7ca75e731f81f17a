//! Exact computer algebra for the big bracket on `∧V* ⊗ ∧V`.
//!
//! Structures on a graded space `V` (Lie algebras, coalgebras, bialgebras,
//! quasi-bialgebras and their L∞ versions) are elements `Q` of total degree
//! one; they are what they claim to be exactly when `[Q, Q] = 0`.

pub mod bracket;
pub mod element;
pub mod error;
pub mod geom;
pub mod homotopy;
pub mod io;
pub mod manin;
pub mod monomial;
pub mod parse;
pub mod random;
pub mod scalar;
pub mod space;
pub mod structures;
pub mod verdict;

pub use bracket::{adjoint, big_bracket, pairing, subspace_membership, Subspace};
pub use element::{Degrees, Element, Grade};
pub use error::{Error, Result};
pub use monomial::Monomial;
pub use scalar::Scalar;
pub use space::{GeneratorRef, GradedSpace, Kind};
pub use verdict::Verdict;
