//! A weighted sum of squares becomes a hyperwron of a Lorentz form, and the
//! hyperwron rebuilds the same polynomial.

use hyperwron::exact_algebra::{int, rat, HomogeneousPoly, WeightedSos};
use hyperwron::wronskian_cert::{build_hyperwron, sos_to_hyperwron, verify_hyperwron, SosOptions, VerifyOptions};

fn main() -> hyperwron::Result<()> {
    let x = |i| HomogeneousPoly::var(3, i);
    let g1 = x(0).mul(&x(1)).sub(&x(2).square());
    let g2 = x(0).square().add(&x(1).mul(&x(2)).scale(&int(3)));
    let sos = WeightedSos::new(3, 2, vec![(rat(9, 4), g1), (int(1), g2)])?;
    let w = sos_to_hyperwron(&sos, SosOptions::default())?;
    println!("Lorentz form in {} variables, map of degree {}", w.pair.nvars(), w.phi.degree());
    let q = build_hyperwron(&w);
    println!("round trip exact: {}", q == sos.to_poly());
    println!("{}", verify_hyperwron(&w, &q, VerifyOptions { samples: 2000, seed: 1 }));

    // weight 3 is not a square; ask for a four-square split
    let single = WeightedSos::new(3, 1, vec![(int(3), x(0))])?;
    assert!(sos_to_hyperwron(&single, SosOptions::default()).is_err());
    let w = sos_to_hyperwron(&single, SosOptions { n: None, four_square: true })?;
    println!("3 x1^2 via four squares: {}", build_hyperwron(&w));
    Ok(())
}
