//! Exact arithmetic over GF(p): field elements, graded polynomials, Gröbner
//! bases, monomial-ideal dimension and dense/sparse linear algebra.

pub mod caps;
pub mod dimension;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod text;

pub use caps::Caps;
pub use dimension::{coprime, ideal_codim, krull_dimension};
pub use field::{FieldElement, PrimeField};
pub use groebner::{groebner, normal_form, IdealBasis};
pub use linalg::{LinearSystem, Matrix, RankEvidence, Solution};
pub use monomial::{monomials_of_degree, Monomial};
pub use poly::Poly;
pub use text::parse_poly;
