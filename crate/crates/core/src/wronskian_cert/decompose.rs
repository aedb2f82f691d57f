use super::sos::{qform_hyperplane_split, sos_split_nonneg_quadratic};
use super::wronskian;
use crate::error::{pre_err, Error, Result};
use crate::exact_algebra::{dot, lagrange_diagonalize, HomogeneousPoly, PolyMap, Rational, WeightedSos};
use crate::hyperbolic::{cone_membership, HyperbolicPair};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivativeSplit {
    /// D_uv p is identically zero.
    MixedVanishes,
    /// D_u p = -q + alpha * D_uv p with q a sum of squares and alpha linear.
    Split { q: WeightedSos, alpha: HomogeneousPoly },
}

fn cubic_pre(pair: &HyperbolicPair, u: &[Rational], v: &[Rational]) -> Result<()> {
    if pair.degree() != 3 {
        return pre_err(format!("expected a cubic, got degree {}", pair.degree()));
    }
    for (name, x) in [("u", u), ("v", v)] {
        if !cone_membership(pair, x)?.in_closed_cone() {
            return pre_err(format!("{name} is not in the closed hyperbolicity cone"));
        }
    }
    Ok(())
}

fn inconsistent<T>(msg: &str) -> Result<T> {
    Err(Error::Inconsistent(msg.into()))
}

/// The positive square and the negative part of a hyperbolic quadratic:
/// (d1, l1, [(c_i, l_i)]) with q = d1 l1^2 - sum c_i l_i^2, all weights > 0.
type LorentzSplit = (Rational, Vec<Rational>, Vec<(Rational, Vec<Rational>)>);

fn lorentz_parts(q: &HomogeneousPoly) -> Result<LorentzSplit> {
    let d = lagrange_diagonalize(q)?;
    let pos: Vec<usize> = (0..d.weights.len()).filter(|&i| d.weights[i].is_positive()).collect();
    if pos.len() != 1 {
        return inconsistent("derivative of a hyperbolic cubic does not have exactly one positive square");
    }
    let neg = (0..d.weights.len())
        .filter(|&i| d.weights[i].is_negative())
        .map(|i| (-d.weights[i].clone(), d.forms[i].clone()))
        .collect();
    Ok((d.weights[pos[0]].clone(), d.forms[pos[0]].clone(), neg))
}

/// For a cubic hyperbolic p and u, v in its closed cone: either D_uv p = 0,
/// or D_u p = -q + alpha D_uv p with q a sum of squares.
pub fn cubic_derivative_split(pair: &HyperbolicPair, u: &[Rational], v: &[Rational]) -> Result<DerivativeSplit> {
    cubic_pre(pair, u, v)?;
    let n = pair.nvars();
    let du = pair.p().directional(u, 1);
    if du.is_zero() {
        return Ok(DerivativeSplit::Split { q: WeightedSos::zero(n, 1), alpha: HomogeneousPoly::zero(n, 1) });
    }
    let duv = du.directional(v, 1);
    if duv.is_zero() {
        return Ok(DerivativeSplit::MixedVanishes);
    }
    let (d1, l1, neg) = lorentz_parts(&du)?;
    let w1 = dot(&l1, v);
    if w1.is_zero() {
        return inconsistent("mixed derivative is nonzero but the positive square vanishes at v");
    }
    // S = sum c_i w_i l_i
    let mut s = vec![Rational::zero(); n];
    let mut neg_part = HomogeneousPoly::zero(n, 2);
    for (c, l) in &neg {
        let wi = dot(l, v);
        for (sj, lj) in s.iter_mut().zip(l) {
            *sj += c * &wi * lj;
        }
        neg_part = neg_part.add(&HomogeneousPoly::linear(l).square().scale(c));
    }
    let denom = &d1 * &w1 * &w1;
    let q = neg_part.sub(&HomogeneousPoly::linear(&s).square().scale(&(Rational::from_integer(1.into()) / &denom)));
    let q = q.with_degree(2);
    let alpha_coeffs: Vec<Rational> =
        l1.iter().zip(&s).map(|(a, b)| (&d1 * &w1 * a + b) / (Rational::from_integer(2.into()) * &denom)).collect();
    let alpha = HomogeneousPoly::linear(&alpha_coeffs);
    let q_sos = match sos_split_nonneg_quadratic(&q) {
        Ok(v) => v,
        Err(Error::NotPsd { .. }) => return inconsistent("the residual quadratic is not nonnegative"),
        Err(e) => return Err(e),
    };
    if alpha.mul(&duv).sub(&q) != du {
        return inconsistent("derivative split identity does not hold");
    }
    Ok(DerivativeSplit::Split { q: q_sos, alpha })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuarticCase {
    /// D_u p or D_v p vanishes, so the hyperwron is zero.
    Trivial,
    /// D_uv p = 0 and the negative part of D_u p is divisible by its positive
    /// square root.
    MixedZeroDivisible,
    /// D_uv p = 0, general position.
    MixedZero,
    /// D_uv p is a nonzero linear form.
    General,
}

/// f = q1 q2 + r l with q1, q2 sums of squares of linear forms, r cubic and l
/// linear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticDecomposition {
    pub q1: WeightedSos,
    pub q2: WeightedSos,
    pub r: HomogeneousPoly,
    pub l: HomogeneousPoly,
    pub case: QuarticCase,
}

impl QuarticDecomposition {
    pub fn reconstruct(&self) -> HomogeneousPoly {
        let deg = 2 * self.q1.half_degree().max(self.q2.half_degree()) * 2;
        self.q1.to_poly().mul(&self.q2.to_poly()).add(&self.r.mul(&self.l)).with_degree(deg)
    }

    /// Pull back along a linear map; the shape of the decomposition survives.
    pub fn compose(&self, phi: &PolyMap) -> Result<Self> {
        if phi.degree() != 1 {
            return pre_err("quartic decompositions pull back only along linear maps");
        }
        Ok(QuarticDecomposition {
            q1: self.q1.compose(phi),
            q2: self.q2.compose(phi),
            r: self.r.compose(phi).with_degree(3),
            l: self.l.compose(phi).with_degree(1),
            case: self.case,
        })
    }
}

/// Decomposes the Wronskian of a hyperbolic cubic as q1 q2 + r l.
pub fn decompose_quartic_hyperwron(
    pair: &HyperbolicPair,
    u: &[Rational],
    v: &[Rational],
) -> Result<QuarticDecomposition> {
    cubic_pre(pair, u, v)?;
    let n = pair.nvars();
    let p = pair.p();
    let f = wronskian(p, u, v);
    let du = p.directional(u, 1);
    let dv = p.directional(v, 1);
    let duv = du.directional(v, 1);
    let zero_sos = || WeightedSos::zero(n, 1);
    let dec = if du.is_zero() || dv.is_zero() {
        QuarticDecomposition {
            q1: zero_sos(),
            q2: zero_sos(),
            r: HomogeneousPoly::zero(n, 3),
            l: HomogeneousPoly::zero(n, 1),
            case: QuarticCase::Trivial,
        }
    } else if duv.is_zero() {
        let (d1, l1, neg) = lorentz_parts(&du)?;
        let q1 = WeightedSos::new(n, 1, neg.iter().map(|(c, l)| (c.clone(), HomogeneousPoly::linear(l))).collect())?;
        let q1p = q1.to_poly();
        let lin = HomogeneousPoly::linear(&l1);
        let (rest, alpha) = qform_hyperplane_split(&q1p, &l1)?;
        if rest.is_trivial() {
            QuarticDecomposition {
                q1: zero_sos(),
                q2: zero_sos(),
                r: lin.scale(&d1).sub(&alpha).mul(&dv).with_degree(3),
                l: lin,
                case: QuarticCase::MixedZeroDivisible,
            }
        } else {
            let (q2, alpha2) = match qform_hyperplane_split(&dv.neg(), &l1) {
                Ok(v) => v,
                Err(Error::NotPsd { .. }) => return inconsistent("-D_v p is not nonnegative on the hyperplane"),
                Err(e) => return Err(e),
            };
            QuarticDecomposition {
                q1,
                q2,
                r: lin.scale(&d1).mul(&dv).add(&alpha2.mul(&q1p)).with_degree(3),
                l: lin,
                case: QuarticCase::MixedZero,
            }
        }
    } else {
        let (DerivativeSplit::Split { q: q1, alpha: a1 }, DerivativeSplit::Split { q: q2, alpha: a2 }) =
            (cubic_derivative_split(pair, u, v)?, cubic_derivative_split(pair, v, u)?)
        else {
            return inconsistent("mixed derivative vanishes in one order only");
        };
        let (q1p, q2p) = (q1.to_poly(), q2.to_poly());
        let r = q1p.mul(&a2).neg().sub(&q2p.mul(&a1)).add(&a1.mul(&a2).mul(&duv)).sub(p).with_degree(3);
        QuarticDecomposition { q1, q2, r, l: duv, case: QuarticCase::General }
    };
    if dec.reconstruct() != f {
        return inconsistent("quartic decomposition does not reproduce the hyperwron");
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rvec;
    use crate::hyperbolic::families;

    fn x1x2x3() -> HyperbolicPair {
        families::product_of_linear(&[rvec(&[1, 0, 0]), rvec(&[0, 1, 0]), rvec(&[0, 0, 1])], rvec(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn split_at_e() {
        let pair = x1x2x3();
        let e = rvec(&[1, 1, 1]);
        let DerivativeSplit::Split { q, alpha } = cubic_derivative_split(&pair, &e, &e).unwrap() else { panic!() };
        let du = pair.p().directional(&e, 1);
        let duv = du.directional(&e, 1);
        assert_eq!(alpha.mul(&duv).sub(&q.to_poly()), du);
    }

    #[test]
    fn mixed_zero_case() {
        let pair = x1x2x3();
        let u = rvec(&[1, 0, 0]);
        assert_eq!(cubic_derivative_split(&pair, &u, &u).unwrap(), DerivativeSplit::MixedVanishes);
        let dec = decompose_quartic_hyperwron(&pair, &u, &u).unwrap();
        assert_eq!(dec.case, QuarticCase::MixedZero);
        assert_eq!(dec.reconstruct(), wronskian(pair.p(), &u, &u));
    }

    #[test]
    fn general_case() {
        let pair = x1x2x3();
        let dec = decompose_quartic_hyperwron(&pair, &rvec(&[1, 1, 1]), &rvec(&[2, 1, 3])).unwrap();
        assert_eq!(dec.case, QuarticCase::General);
    }

    #[test]
    fn outside_cone_rejected() {
        let pair = x1x2x3();
        assert!(cubic_derivative_split(&pair, &rvec(&[1, -1, 1]), &rvec(&[1, 1, 1])).is_err());
        let lor = families::lorentz(rvec(&[1, 1, 0])).unwrap();
        assert!(cubic_derivative_split(&lor, &rvec(&[1, 1, 0]), &rvec(&[1, 1, 0])).is_err());
    }
}
