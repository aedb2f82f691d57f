//! The literal full-rank Hessian claim at x = z = 1, y = w = 0. That point is
//! a rank-one matrix, where the quartic vanishes to second order along a
//! 12-dimensional locus, so the rank is at most 4 and this test stays red.
//! Run with `cargo test --test hessian_claim -- --ignored`.

use hyperwron::quaternion_example::{hessian_rank_at, named_hessian_point};

#[test]
#[ignore = "unattainable: the named point is a rank-one zero of the quartic (rank 4, not 16)"]
fn hessian_full_rank_at_named_point() {
    assert_eq!(hessian_rank_at(&named_hessian_point()), 16);
}

#[test]
fn hessian_rank_at_named_point_is_four() {
    assert_eq!(hessian_rank_at(&named_hessian_point()), 4);
}
