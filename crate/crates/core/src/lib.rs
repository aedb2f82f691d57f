//! Exact certificates that forms are nonnegative, built from hyperbolic
//! polynomials.
//!
//! A hyperbolic polynomial p with points u, v in its closed cone yields the
//! nonnegative Wronskian `D_u p * D_v p - p * D_uv p`; composing with a
//! polynomial map gives a nonnegative form (a "hyperwron"). Quadratic forms in
//! the Bezoutian of p give a larger family ("hyperzouts"). This crate builds
//! and verifies such certificates in exact rational arithmetic, converts sums
//! of squares into them and decomposes the low-degree cases back into
//! squares. It also evaluates the dimension counts showing that, in most
//! degrees, some nonnegative forms have no such certificate, and checks a
//! 16-variable quaternionic quartic that is nonnegative, extreme, and not a
//! sum of hyperwrons.

#![allow(clippy::needless_range_loop)]

pub mod bezoutian_cert;
pub mod cli;
pub mod dimension_gate;
pub mod error;
pub mod exact_algebra;
pub mod hyperbolic;
pub mod manifest;
pub mod quaternion_example;
pub mod report;
pub mod sampling;
pub mod wronskian_cert;

pub use error::{Error, Result};
