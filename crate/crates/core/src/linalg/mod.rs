//! Exact rational arithmetic and the linear-algebra kernel everything else is
//! built on.
//!
//! Two independent elimination routes are provided: a fraction-free
//! (Bareiss) route on [`RationalMatrix`] for dense systems and an incremental
//! rational echelon builder, [`SparseEchelon`], for the large and very sparse
//! systems that define the exceptional algebras. The test-suite checks the
//! two routes against each other.

mod jet;
mod matrix;
mod sparse;

pub use jet::{hessian, jet_eval2, Jet2, JetEval, Scalar};
pub use matrix::RationalMatrix;
pub use sparse::{sparsify, SparseEchelon, SparseVec};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` as a reduced rational. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Converts a slice of integers to a rational vector.
pub fn qvec(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| q(v)).collect()
}

/// Standard basis vector `e_index` of length `len`.
pub fn unit_vector(len: usize, index: usize) -> Vec<Rational> {
    let mut v = vec![zero(); len];
    v[index] = one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(zero(), |acc, (x, y)| acc + x * y)
}

/// Rank of a family of vectors of equal length.
pub fn rank_of_vectors(vectors: &[Vec<Rational>], width: usize) -> usize {
    RationalMatrix::from_rows(width, vectors).rank()
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
}
