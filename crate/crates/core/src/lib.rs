//! Exact Clifford algebras of arbitrary quadratic forms over ℚ and prime
//! fields, Vahlen groups of 2×2 matrices over them, and the Möbius action of
//! those groups on generalized half-spaces with their boundary points.

pub mod census;
pub mod clifford;
pub mod cmatrix;
pub mod error;
pub mod field;
pub mod groups;
pub mod halfspace;
pub mod linalg;
pub mod quadspace;
pub mod sample;
pub mod vahlen;
pub mod verify;

pub use clifford::{CliffordAlgebra, Element, Involution, Part};
pub use cmatrix::CMatrix2;
pub use groups::GroupTag;
pub use halfspace::{HalfSpace, Point};
pub use error::{Error, Result};
pub use field::{FieldDesc, Scalar};
pub use linalg::Matrix;
pub use quadspace::{Extension, QuadraticSpace};
pub use vahlen::VahlenKind;
