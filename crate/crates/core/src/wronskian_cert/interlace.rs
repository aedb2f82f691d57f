use super::{nonneg_check, verdict_check, VerifyOptions};
use crate::error::{dim_err, pre_err, Result};
use crate::exact_algebra::{real_roots_isolated, HomogeneousPoly, Interval, LineOrientation, PolyMap, UnivariatePoly};
use crate::hyperbolic::HyperbolicPair;
use crate::report::{Report, Status};
use crate::sampling;
use num_traits::Signed;

/// Weak interlacing of real-rooted f (degree d) and g (degree d-1):
/// l_1 <= m_1 <= l_2 <= ... <= m_{d-1} <= l_d, decided exactly by isolating
/// the roots of the squarefree part of f g and reading multiplicities off
/// gcds with the derivatives.
pub fn weakly_interlaces(f: &UnivariatePoly, g: &UnivariatePoly) -> Result<bool> {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else { return pre_err("interlacing with a zero polynomial") };
    if dg + 1 != df {
        return pre_err(format!("degrees {df} and {dg} do not differ by one"));
    }
    if !f.is_real_rooted() || !g.is_real_rooted() {
        return Ok(false);
    }
    let h = f.mul(g).squarefree_part();
    let roots = real_roots_isolated(&h)?;
    let mult = |p: &UnivariatePoly| -> Result<Vec<usize>> {
        // multiplicity at r = number of leading derivatives vanishing at r
        let mut out = vec![0; roots.len()];
        let mut alive = vec![true; roots.len()];
        let mut cur = p.clone();
        while !cur.is_zero() && cur.degree() != Some(0) && alive.iter().any(|&a| a) {
            let gc = cur.gcd(&h);
            for (i, (a, b)) in roots.iter().enumerate() {
                let hit = alive[i]
                    && gc.degree().unwrap_or(0) > 0
                    && gc.sturm_count(&Interval::half_open(a.clone(), b.clone()))? == 1;
                if hit {
                    out[i] += 1;
                } else {
                    alive[i] = false;
                }
            }
            cur = cur.derivative();
        }
        Ok(out)
    };
    let (mf, mg) = (mult(f)?, mult(g)?);
    let expand =
        |m: &[usize]| -> Vec<usize> { m.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect() };
    let (lam, mu) = (expand(&mf), expand(&mg));
    if lam.len() != df || mu.len() != dg {
        return Ok(false);
    }
    Ok((0..dg).all(|i| lam[i] <= mu[i] && mu[i] <= lam[i + 1]))
}

/// The form (D_e p * q - D_e q * p) composed with phi, with a report on
/// sampled interlacing of q with p along e and sampled nonnegativity.
pub fn interlacer_certificate(
    pair: &HyperbolicPair,
    q: &HomogeneousPoly,
    phi: &PolyMap,
    opts: VerifyOptions,
) -> Result<(HomogeneousPoly, Report)> {
    let n = pair.nvars();
    if q.nvars() != n || phi.len() != n {
        return dim_err("interlacer, map and p must share the ambient dimension");
    }
    if q.degree() + 1 != pair.degree() {
        return pre_err(format!("interlacer must have degree {}", pair.degree() - 1));
    }
    let p = pair.p();
    let e = pair.e();
    let cert_raw = p.directional(e, 1).mul(q).sub(&q.directional(e, 1).mul(p));
    let deg = 2 * (pair.degree() - 1) * phi.degree();
    let cert = cert_raw.compose(phi).with_degree(deg);

    let mut r = Report::new("interlacer certificate");
    r.meta("seed", opts.seed);
    r.meta("samples", opts.samples);
    verdict_check(&mut r, pair.verdict());
    r.pass_if("interlacer-positive-at-e", q.eval(e).is_positive(), format!("q(e) = {}", q.eval(e)));
    let mut rng = sampling::rng(opts.seed ^ 0x1f);
    let trials = opts.samples.min(500);
    let mut witness = None;
    for _ in 0..trials {
        let x = sampling::rational_vector(&mut rng, n, 9, 3);
        let f = p.restrict_line(&x, e, LineOrientation::Eigen);
        let g = q.restrict_line(&x, e, LineOrientation::Eigen);
        if !weakly_interlaces(&f, &g)? {
            witness = Some(x);
            break;
        }
    }
    match witness {
        None => r.push("interlacing", Status::SampledOk, format!("{trials} seeded lines")),
        Some(x) => r.push("interlacing", Status::Fail, format!("fails along {}", crate::error::fmt_vec(&x))),
    }
    nonneg_check(&mut r, &cert, opts);
    Ok((cert, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rvec;
    use crate::hyperbolic::families;

    #[test]
    fn interlacing_examples() {
        let f = UnivariatePoly::from_ints(&[0, -1, 0, 1]); // roots -1, 0, 1
        assert!(weakly_interlaces(&f, &UnivariatePoly::from_ints(&[-1, 0, 4])).unwrap()); // +-1/2
        assert!(weakly_interlaces(&f, &UnivariatePoly::from_ints(&[0, 0, 1])).unwrap()); // 0, 0
        assert!(!weakly_interlaces(&f, &UnivariatePoly::from_ints(&[1, -2, 1])).unwrap()); // 1, 1
        assert!(weakly_interlaces(&f, &UnivariatePoly::from_ints(&[0, 1, 1])).unwrap()); // -1, 0
        assert!(!weakly_interlaces(&f, &UnivariatePoly::from_ints(&[1, 0, 1])).unwrap());
    }

    #[test]
    fn derivative_interlaces() {
        let pair =
            families::product_of_linear(&[rvec(&[1, 0, 0]), rvec(&[0, 1, 0]), rvec(&[0, 0, 1])], rvec(&[1, 1, 1]))
                .unwrap();
        let q = pair.p().directional(pair.e(), 1);
        let (cert, rep) =
            interlacer_certificate(&pair, &q, &PolyMap::identity(3), VerifyOptions { samples: 100, seed: 0 }).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(cert.degree(), 4);
        let bad = HomogeneousPoly::var(3, 0).square();
        let (_, rep) =
            interlacer_certificate(&pair, &bad, &PolyMap::identity(3), VerifyOptions { samples: 100, seed: 0 })
                .unwrap();
        assert!(!rep.passed());
    }
}
