//! Parameterized Bezoutians, hyperzouts, the degree restriction, and the
//! mu = 2 case collapsing to a sum of squares.

use hyperwron::bezoutian_cert::{
    build_hyperzout, degree_restricted, factor_2x2_psd, mu2_hyperzout_to_sos, parameterized_bezoutian,
    verify_hyperzout, HyperzoutOptions, HyperzoutWitness,
};
use hyperwron::exact_algebra::{int, rvec, GradedTuple, HomogeneousPoly, PolyMap};
use hyperwron::hyperbolic::families;
use hyperwron::wronskian_cert::VerifyOptions;

fn main() -> hyperwron::Result<()> {
    let pair = families::elementary_symmetric(3, 3)?;
    let (u, v) = (rvec(&[1, 1, 1]), rvec(&[1, 2, 1]));
    let b = parameterized_bezoutian(&pair, &u, &v)?;
    for (j, row) in b.iter().enumerate() {
        for (l, e) in row.iter().enumerate() {
            println!("B[{j}][{l}] (degree {}) = {e}", e.degree());
        }
    }

    let x = |i| HomogeneousPoly::var(3, i);
    let xi = GradedTuple::from_live(3, 3, 1, vec![HomogeneousPoly::constant(3, int(1)), x(0).sub(&x(2))])?;
    let w = HyperzoutWitness::new(pair, u, v, PolyMap::identity(3), xi)?;
    let eta = build_hyperzout(&w)?;
    let opts = HyperzoutOptions { verify: VerifyOptions { samples: 2000, seed: 5 }, psd_points: 200 };
    println!("{}", verify_hyperzout(&w, &eta, opts));
    let sos = mu2_hyperzout_to_sos(&w)?;
    println!("as {} weighted squares, exact: {}", sos.len(), sos.to_poly() == eta);

    let bad = factor_2x2_psd(&x(0).square(), &x(1), &HomogeneousPoly::zero(3, 0));
    println!("[[x1^2, x2], [x2, 0]]: {}", bad.unwrap_err());
    for (mu, d) in [(2, 6), (3, 3), (3, 4), (4, 5)] {
        println!("mu={mu} d={d} degree-restricted: {}", degree_restricted(mu, d)?);
    }
    Ok(())
}
