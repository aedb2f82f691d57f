//! Hyperwron certificates: q = (D_u p D_v p - p D_uv p) composed with a
//! polynomial map, for p hyperbolic and u, v in its closed cone.

mod decompose;
mod interlace;
mod sos;

pub use decompose::{
    cubic_derivative_split, decompose_quartic_hyperwron, DerivativeSplit, QuarticCase, QuarticDecomposition,
};
pub use interlace::{interlacer_certificate, weakly_interlaces};
pub use sos::{four_squares, qform_hyperplane_split, sos_split_nonneg_quadratic, sos_to_hyperwron, SosOptions};

use crate::error::{dim_err, Result};
use crate::exact_algebra::{HomogeneousPoly, PolyMap, Rational};
use crate::hyperbolic::{cone_membership, HyperbolicPair, Verdict};
use crate::report::{Report, Status};
use crate::sampling;

/// Everything needed to rebuild a hyperwron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperwronWitness {
    pub pair: HyperbolicPair,
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
    pub phi: PolyMap,
}

impl HyperwronWitness {
    pub fn new(pair: HyperbolicPair, u: Vec<Rational>, v: Vec<Rational>, phi: PolyMap) -> Result<Self> {
        let n = pair.nvars();
        if u.len() != n || v.len() != n {
            return dim_err(format!("u and v need {n} entries, got {} and {}", u.len(), v.len()));
        }
        if phi.len() != n {
            return dim_err(format!("phi needs {n} components, got {}", phi.len()));
        }
        Ok(HyperwronWitness { pair, u, v, phi })
    }

    /// Degree of the resulting form, 2k(d-1).
    pub fn degree(&self) -> u32 {
        2 * self.phi.degree() * self.pair.degree().saturating_sub(1)
    }
}

/// D_u p D_v p - p D_uv p, before composition.
pub fn wronskian(p: &HomogeneousPoly, u: &[Rational], v: &[Rational]) -> HomogeneousPoly {
    let du = p.directional(u, 1);
    let dv = p.directional(v, 1);
    let duv = du.directional(v, 1);
    let d = 2 * p.degree().saturating_sub(1);
    du.mul(&dv).sub(&p.mul(&duv)).with_degree(d)
}

pub fn build_hyperwron(w: &HyperwronWitness) -> HomogeneousPoly {
    wronskian(w.pair.p(), &w.u, &w.v).compose(&w.phi).with_degree(w.degree())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { samples: 10_000, seed: 0 }
    }
}

pub(crate) fn verdict_check(report: &mut Report, v: &Verdict) {
    let status = match v {
        Verdict::Certified(_) => Status::Pass,
        Verdict::Sampled { .. } => Status::SampledOk,
        Verdict::Refuted(_) => Status::Fail,
    };
    report.push("hyperbolicity", status, v.to_string());
}

pub(crate) fn cone_check(report: &mut Report, name: &str, pair: &HyperbolicPair, x: &[Rational]) {
    match cone_membership(pair, x) {
        Ok(m) => report.pass_if(name, m.in_closed_cone(), format!("{m:?}")),
        Err(e) => report.push(name, Status::Fail, e.to_string()),
    }
}

pub(crate) fn nonneg_check(report: &mut Report, q: &HomogeneousPoly, opts: VerifyOptions) {
    match sampling::find_negative_point(q, opts.samples, opts.seed) {
        None => report.push("nonnegativity", Status::SampledOk, format!("{} seeded points", opts.samples)),
        Some(x) => report.push("nonnegativity", Status::Fail, format!("negative at {}", crate::error::fmt_vec(&x))),
    }
}

/// Checks that `q` is the hyperwron of the witness: exact identity, exact cone
/// membership of u and v, the hyperbolicity verdict, and sampled
/// nonnegativity.
pub fn verify_hyperwron(w: &HyperwronWitness, q: &HomogeneousPoly, opts: VerifyOptions) -> Report {
    let mut r = Report::new("hyperwron certificate");
    r.meta("variables", w.phi.nvars_in());
    r.meta("degree", w.degree());
    r.meta("seed", opts.seed);
    r.meta("samples", opts.samples);
    let built = build_hyperwron(w);
    let same = built == *q && (q.is_zero() || q.degree() == w.degree());
    r.pass_if("identity", same, format!("{} terms rebuilt, {} claimed", built.num_terms(), q.num_terms()));
    cone_check(&mut r, "cone-u", &w.pair, &w.u);
    cone_check(&mut r, "cone-v", &w.pair, &w.v);
    verdict_check(&mut r, w.pair.verdict());
    nonneg_check(&mut r, q, opts);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, rvec};
    use crate::hyperbolic::families;

    #[test]
    fn product_wronskian() {
        let pair = families::product_of_linear(&[rvec(&[1, 0]), rvec(&[0, 1])], rvec(&[1, 1])).unwrap();
        let w = HyperwronWitness::new(pair, rvec(&[1, 1]), rvec(&[1, 1]), PolyMap::identity(2)).unwrap();
        let q = build_hyperwron(&w);
        let want = HomogeneousPoly::var(2, 0).square().add(&HomogeneousPoly::var(2, 1).square());
        assert_eq!(q, want);
        let rep = verify_hyperwron(&w, &q, VerifyOptions { samples: 200, seed: 1 });
        assert!(rep.passed(), "{rep}");
        let bad =
            verify_hyperwron(&w, &q.add(&HomogeneousPoly::var(2, 0).square()), VerifyOptions { samples: 10, seed: 1 });
        assert!(!bad.passed());
    }

    #[test]
    fn outside_cone_fails() {
        let pair = families::product_of_linear(&[rvec(&[1, 0]), rvec(&[0, 1])], rvec(&[1, 1])).unwrap();
        let w = HyperwronWitness::new(pair, rvec(&[1, -1]), rvec(&[1, 1]), PolyMap::identity(2)).unwrap();
        let q = build_hyperwron(&w);
        let rep = verify_hyperwron(&w, &q, VerifyOptions { samples: 10, seed: 0 });
        assert_eq!(rep.check("cone-u").unwrap().status, Status::Fail);
        assert!(!rep.passed());
        let _ = int(0);
    }

    #[test]
    fn malformed_witness() {
        let pair = families::product_of_linear(&[rvec(&[1, 0]), rvec(&[0, 1])], rvec(&[1, 1])).unwrap();
        assert!(HyperwronWitness::new(pair.clone(), rvec(&[1, 1, 0]), rvec(&[1, 1]), PolyMap::identity(2)).is_err());
        assert!(HyperwronWitness::new(pair, rvec(&[1, 1]), rvec(&[1, 1]), PolyMap::identity(3)).is_err());
    }
}
