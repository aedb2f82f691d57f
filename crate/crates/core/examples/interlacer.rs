//! Certificates from an interlacer: D_e p q - D_e q p is nonnegative when q
//! interlaces p along e.

use hyperwron::exact_algebra::{PolyMap, UnivariatePoly};
use hyperwron::hyperbolic::families;
use hyperwron::wronskian_cert::{interlacer_certificate, weakly_interlaces, VerifyOptions};

fn main() -> hyperwron::Result<()> {
    let f = UnivariatePoly::from_ints(&[0, -1, 0, 1]);
    let g = UnivariatePoly::from_ints(&[-1, 0, 3]);
    println!("roots of 3t^2 - 1 interlace t^3 - t: {}", weakly_interlaces(&f, &g)?);

    let pair = families::elementary_symmetric(3, 3)?;
    let q = families::elementary_symmetric(3, 2)?.p().clone();
    let (cert, report) =
        interlacer_certificate(&pair, &q, &PolyMap::identity(3), VerifyOptions { samples: 3000, seed: 2 })?;
    println!("certificate has {} terms", cert.num_terms());
    println!("{report}");
    Ok(())
}
