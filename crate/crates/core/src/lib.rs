//! Exact computation of tangent cones of Schubert varieties in type A.
//!
//! The pipeline runs reduced word → unipotent parametrization → graph ideal
//! → elimination → cell ideal → ideal of lowest forms, all over the
//! rationals with Buchberger's algorithm.

pub mod scalar;
pub mod poly;
pub mod groebner;
pub mod weyl;
pub mod schubert;
pub mod verify;

pub use groebner::{GroebnerBasis, GroebnerError, Ideal};
pub use poly::{parse_poly, MonomialOrder, Monomial, PolyError, Polynomial, TableRef, VariableTable};
pub use scalar::{Integer, Rational, ScalarError};
pub use schubert::{SchubertError, TangentCone};
pub use verify::{ConeRecord, ConeSet, ConeSource};
pub use weyl::{parse_cycles, print_cycles, Permutation, ReducedWord, WeylError};
