//! Exact bracket, Jones, Khovanov and Lee computations for knot and link
//! diagrams.
//!
//! The linear-algebra layers are generic over the coefficient [`Ring`];
//! the aliases below fix the rings used in practice.

pub mod bracket;
pub mod complex;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod frobenius;
pub mod homology;
pub mod lee;
pub mod matrix;
pub mod poly;
pub mod quantum;
pub mod resolution;
pub mod ring;
pub mod snf;

pub use bracket::{bracket_a, bracket_q, jones, Poly};
pub use complex::{build_complex, build_dr_complex, BigradedComplex, GradingShift};
pub use diagram::{close_braid, parse_diagram, parse_pd, BraidWord, KnotDiagram, Move, Sign, Site, Strand};
pub use error::{Error, Result};
pub use frobenius::{AlgebraElement, FrobeniusAlgebra, FrobeniusAlgebraSpec};
pub use homology::{homology, khovanov_homology, HomologyEntry, HomologyTable};
pub use lee::{lee_homology, rasmussen_s, RasmussenResult};
pub use matrix::SparseMatrix;
pub use poly::{LaurentPoly, PoincarePoly};
pub use quantum::DiagonalUnitary;
pub use resolution::{EnhancedState, Resolution, ResolvedState, DEFAULT_CAP};
pub use ring::{Coefficients, Field, Ring, F2};

/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Double-precision complex numbers.
pub type Complex = num_complex::Complex64;

/// Integer matrices.
pub type ZMatrix = SparseMatrix<Integer>;
/// Rational matrices.
pub type QMatrix = SparseMatrix<Rational>;
/// Matrices over the two-element field.
pub type F2Matrix = SparseMatrix<F2>;
/// Complex matrices.
pub type CMatrix = SparseMatrix<Complex>;
/// The Khovanov complex with machine-integer entries.
pub type KhComplex = BigradedComplex<i64>;

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
