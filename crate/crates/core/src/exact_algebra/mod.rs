//! Exact arithmetic over Q: scalars, univariate and homogeneous polynomials,
//! polynomial maps, quadratic forms, sparse/modular linear algebra and the
//! plain-text polynomial format.

mod combinatorics;
mod linalg;
mod modular;
mod poly;
mod polymap;
mod quadratic;
mod text;
mod univariate;

pub use combinatorics::{binomial, dim_forms, monomials};
pub use linalg::{
    charpoly, dense_inverse, dense_rank, is_psd_symmetric, matrix_rank, nullspace_basis, ExactMatrix, RankConfidence,
    RankMode, RankResult,
};
pub use modular::{random_primes_near_2_61, sparse_rank_mod, ModElem, Prime};
pub use poly::{HomogeneousPoly, LineOrientation, Monomial};
pub use polymap::{GradedTuple, PolyMap, WeightedSos};
pub use quadratic::{lagrange_diagonalize, QuadraticFormDiag, Signature};
pub use text::{format_poly, format_polys, format_vector, parse_poly, parse_polys, parse_rational, parse_vector};
pub use univariate::{real_roots_isolated, Bound, Interval, UnivariatePoly};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// The rational scalar used everywhere.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rvec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Exact square root of a nonnegative rational when it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Minimal ring interface shared by scalars, polynomials and residues, so that
/// quaternion and Bezoutian code can be written once.
pub trait Ring: Clone {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for Rational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}
