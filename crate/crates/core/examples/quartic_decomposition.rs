//! The Wronskian of a hyperbolic cubic splits as q1 q2 + r l with q1, q2
//! sums of squares and l = D_uv p.

use hyperwron::exact_algebra::{format_vector, rvec};
use hyperwron::hyperbolic::families;
use hyperwron::wronskian_cert::{cubic_derivative_split, decompose_quartic_hyperwron, wronskian, DerivativeSplit};

fn main() -> hyperwron::Result<()> {
    let pair = families::product_of_linear(&[rvec(&[1, 0, 0]), rvec(&[0, 1, 0]), rvec(&[0, 0, 1])], rvec(&[1, 1, 1]))?;
    for (u, v) in [
        (rvec(&[1, 1, 1]), rvec(&[2, 1, 1])),
        (rvec(&[1, 0, 0]), rvec(&[1, 1, 0])),
        (rvec(&[1, 0, 0]), rvec(&[1, 0, 0])),
    ] {
        let d = decompose_quartic_hyperwron(&pair, &u, &v)?;
        let f = wronskian(pair.p(), &u, &v);
        println!("u = ({}), v = ({})", format_vector(&u), format_vector(&v));
        println!("  case {:?}, {} + {} squares, l = {}", d.case, d.q1.len(), d.q2.len(), d.l);
        println!("  identity exact: {}", d.reconstruct() == f);
    }
    if let DerivativeSplit::Split { q, alpha } = cubic_derivative_split(&pair, &rvec(&[1, 2, 3]), &rvec(&[1, 1, 1]))? {
        println!("D_u p = -({}) + ({}) D_uv p", q.to_poly(), alpha);
    }
    Ok(())
}
