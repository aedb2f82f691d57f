//! Writes a hyperwron certificate manifest, reads it back and verifies it,
//! then tampers with the claim.

use hyperwron::cli::verify_manifest;
use hyperwron::exact_algebra::{rvec, HomogeneousPoly, PolyMap};
use hyperwron::hyperbolic::families;
use hyperwron::manifest::{Manifest, ManifestKind, VerdictRecord};
use hyperwron::wronskian_cert::{build_hyperwron, HyperwronWitness, VerifyOptions};

fn main() -> hyperwron::Result<()> {
    let pair = families::elementary_symmetric(3, 3)?;
    let (u, v) = (rvec(&[1, 2, 1]), rvec(&[1, 1, 3]));
    let w = HyperwronWitness::new(pair.clone(), u.clone(), v.clone(), PolyMap::identity(3))?;
    let manifest = Manifest {
        kind: ManifestKind::Hyperwron,
        p: pair.p().clone(),
        e: pair.e().to_vec(),
        u: Some(u),
        v: Some(v),
        phi: PolyMap::identity(3),
        mu: None,
        xi: None,
        interlacer: None,
        claim: build_hyperwron(&w),
        verdict: Some(VerdictRecord::from(pair.verdict())),
        seed: 3,
        samples: 2000,
    };
    let dir = std::env::temp_dir().join("hyperwron-manifest-example");
    let path = manifest.write(&dir, "x1x2x3")?;
    println!("{}", std::fs::read_to_string(&path)?);
    let back = Manifest::read(&path)?;
    println!("round trip identical: {}", back == manifest);
    let opts = VerifyOptions { samples: back.samples, seed: back.seed };
    println!("{}", verify_manifest(&back, opts, Some(100))?);

    let mut tampered = back;
    tampered.claim = tampered.claim.add(&HomogeneousPoly::var(3, 0).pow(4));
    let r = verify_manifest(&tampered, opts, None)?;
    println!("tampered: identity {}", r.check("identity").map(|c| c.status.to_string()).unwrap_or_default());
    Ok(())
}
