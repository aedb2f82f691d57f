//! Hyperbolicity verdicts, eigenvalues, cone membership and the boundary
//! derivative property on the built-in families.

use hyperwron::exact_algebra::{format_vector, rvec, HomogeneousPoly};
use hyperwron::hyperbolic::{
    boundary_derivative_check, check_hyperbolic, cone_membership, eigen_poly, families, sample_cone_point,
    ConeSampleStyle, Strategy,
};

fn main() -> hyperwron::Result<()> {
    let e2 = families::elementary_symmetric(4, 2)?;
    println!("e2 in 4 variables: {}", e2.verdict());
    let x = rvec(&[3, 1, 0, -1]);
    println!("eigenvalue polynomial at ({}): {}", format_vector(&x), eigen_poly(&e2, &x)?);
    println!("membership: {:?}", cone_membership(&e2, &x)?);

    let det = families::det_symmetric(2)?;
    let u = sample_cone_point(&det, 7, ConeSampleStyle::Boundary)?;
    println!("2x2 determinant, boundary point ({}): {:?}", format_vector(&u), cone_membership(&det, &u)?);
    let rep = boundary_derivative_check(&det, &u, 50, 7)?;
    println!("D_u p = {}  cone inclusion holds: {}", rep.derivative, rep.holds());

    // x1^2 + x2^2 is not hyperbolic in any direction
    let q = HomogeneousPoly::var(2, 0).square().add(&HomogeneousPoly::var(2, 1).square());
    println!("x1^2 + x2^2 along (1, 0): {}", check_hyperbolic(&q, &rvec(&[1, 0]), &Strategy::Auto)?);
    Ok(())
}
