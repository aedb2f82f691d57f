use super::HyperwronWitness;
use crate::error::{pre_err, Error, Result};
use crate::exact_algebra::{
    dim_forms, dot, lagrange_diagonalize, rational_sqrt, HomogeneousPoly, PolyMap, Rational, WeightedSos,
};
use crate::hyperbolic::families;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SosOptions {
    /// Ambient dimension of the Lorentz form; defaults to the larger of the
    /// number of squares and C(s+m-1, s).
    pub n: Option<usize>,
    /// Split non-square weights into four rational squares.
    pub four_square: bool,
}

/// Writes a weighted sum of squares as a hyperwron of the Lorentz form with
/// e = u = v = (1, 1, 0, ..., 0), whose Wronskian is |y|^2.
pub fn sos_to_hyperwron(q: &WeightedSos, opts: SosOptions) -> Result<HyperwronWitness> {
    let m = q.nvars();
    let s = q.half_degree();
    let mut comps: Vec<HomogeneousPoly> = Vec::new();
    let mut bad: Vec<Rational> = Vec::new();
    for (w, g) in q.terms() {
        match rational_sqrt(w) {
            Some(r) => comps.push(g.scale(&r)),
            None if opts.four_square => {
                // w = a/b = (a b) / b^2 and a b is a sum of four squares
                let ab = w.numer() * w.denom();
                let Some(parts) = four_squares(&ab) else {
                    return pre_err(format!("weight {w} is too large for the four-square search"));
                };
                for c in parts.iter().filter(|c| !c.is_zero()) {
                    comps.push(g.scale(&Rational::new(c.clone(), w.denom().clone())));
                }
            }
            None => bad.push(w.clone()),
        }
    }
    if !bad.is_empty() {
        let list: Vec<String> = bad.iter().map(|w| w.to_string()).collect();
        return pre_err(format!(
            "weights are not rational squares: {} (enable the four-square option)",
            list.join(", ")
        ));
    }
    let dim = dim_forms(m as u64, s as u64).to_usize().unwrap_or(usize::MAX);
    let n = match opts.n {
        Some(n) if n < comps.len().max(2) => {
            return pre_err(format!("n = {n} is smaller than the {} squares needed", comps.len().max(2)))
        }
        Some(n) => n,
        None => comps.len().max(dim).max(2),
    };
    while comps.len() < n {
        comps.push(HomogeneousPoly::zero(m, s));
    }
    let phi = PolyMap::new(m, s, comps)?;
    let mut e = vec![Rational::zero(); n];
    e[0] = Rational::one();
    e[1] = Rational::one();
    let pair = families::lorentz(e.clone())?;
    HyperwronWitness::new(pair, e.clone(), e, phi)
}

/// A nonnegative quadratic form as a weighted sum of squares of linear forms,
/// or an error carrying a point where it is negative.
pub fn sos_split_nonneg_quadratic(q: &HomogeneousPoly) -> Result<WeightedSos> {
    lagrange_diagonalize(q)?.to_weighted_sos()
}

/// For q nonnegative on the hyperplane l = 0: q = s + l * alpha with s a
/// weighted sum of squares and alpha linear. Uses the orthogonal projection
/// onto the hyperplane, which stays rational.
pub fn qform_hyperplane_split(q: &HomogeneousPoly, l: &[Rational]) -> Result<(WeightedSos, HomogeneousPoly)> {
    let n = q.nvars();
    if l.len() != n {
        return Err(Error::Dimension(format!("hyperplane normal has {} entries, expected {n}", l.len())));
    }
    if !q.is_zero() && q.degree() != 2 {
        return pre_err("expected a quadratic form");
    }
    let ll = dot(l, l);
    if ll.is_zero() {
        return Ok((sos_split_nonneg_quadratic(q)?, HomogeneousPoly::zero(n, 1)));
    }
    // P x = x - l (l.x) / |l|^2, as a matrix
    let proj: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { Rational::one() } else { Rational::zero() };
                    id - &l[i] * &l[j] / &ll
                })
                .collect()
        })
        .collect();
    let s = q.compose(&PolyMap::linear(&proj)?).with_degree(2);
    let g = q.gram();
    let lg: Vec<Rational> = (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, i| acc + &l[i] * &g[i][j])).collect();
    let lgl = dot(&lg, l);
    // alpha = [2 l^T G P x + (l^T G l / |l|^2) l.x] / |l|^2
    let coeffs: Vec<Rational> = (0..n)
        .map(|j| {
            let lgp = (0..n).fold(Rational::zero(), |acc, k| acc + &lg[k] * &proj[k][j]);
            (Rational::from_integer(2.into()) * lgp + &lgl / &ll * &l[j]) / &ll
        })
        .collect();
    let alpha = HomogeneousPoly::linear(&coeffs);
    let sos = match sos_split_nonneg_quadratic(&s) {
        Ok(v) => v,
        Err(Error::NotPsd { witness, .. }) => {
            let x: Vec<Rational> = (0..n).map(|i| dot(&proj[i], &witness)).collect();
            return Err(Error::NotPsd { message: "form is negative on the hyperplane".into(), witness: x });
        }
        Err(e) => return Err(e),
    };
    Ok((sos, alpha))
}

/// n = a^2 + b^2 + c^2 + d^2 by descending search; None above 10^12.
pub fn four_squares(n: &BigInt) -> Option<[BigInt; 4]> {
    if n.is_negative() {
        return None;
    }
    let n = n.to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let isqrt = |x: u64| -> u64 {
        let mut r = (x as f64).sqrt() as u64;
        while r * r > x {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= x {
            r += 1;
        }
        r
    };
    let two = |x: u64| -> Option<(u64, u64)> {
        let mut a = isqrt(x);
        loop {
            let r = x - a * a;
            let b = isqrt(r);
            if b * b == r {
                return Some((a, b));
            }
            if a == 0 || a * a * 2 < x {
                return None;
            }
            a -= 1;
        }
    };
    let mut a = isqrt(n);
    loop {
        let r1 = n - a * a;
        let mut b = isqrt(r1);
        loop {
            let r2 = r1 - b * b;
            if let Some((c, d)) = two(r2) {
                return Some([a, b, c, d].map(BigInt::from));
            }
            if b == 0 {
                break;
            }
            b -= 1;
        }
        if a == 0 {
            return None;
        }
        a -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, rat, rvec};
    use crate::wronskian_cert::build_hyperwron;

    fn x(i: usize, n: usize) -> HomogeneousPoly {
        HomogeneousPoly::var(n, i)
    }

    #[test]
    fn squares_become_lorentz_hyperwron() {
        let q = WeightedSos::unit(2, 2, vec![x(0, 2).square(), x(1, 2).square()]).unwrap();
        let w = sos_to_hyperwron(&q, SosOptions::default()).unwrap();
        assert_eq!(w.phi.len(), 3);
        assert!(w.phi.component(2).is_zero());
        assert_eq!(build_hyperwron(&w), q.to_poly());
    }

    #[test]
    fn non_square_weight_needs_opt_in() {
        let q = WeightedSos::new(1, 1, vec![(int(2), x(0, 1))]).unwrap();
        assert!(sos_to_hyperwron(&q, SosOptions::default()).is_err());
        let w = sos_to_hyperwron(&q, SosOptions { four_square: true, ..Default::default() }).unwrap();
        assert_eq!(build_hyperwron(&w), q.to_poly());
        let q = WeightedSos::new(2, 1, vec![(rat(7, 3), x(0, 2).add(&x(1, 2)))]).unwrap();
        let w = sos_to_hyperwron(&q, SosOptions { four_square: true, ..Default::default() }).unwrap();
        assert_eq!(build_hyperwron(&w), q.to_poly());
    }

    #[test]
    fn indefinite_quadratic_has_witness() {
        let q = x(0, 2).mul(&x(1, 2));
        match sos_split_nonneg_quadratic(&q) {
            Err(Error::NotPsd { witness, .. }) => assert!(q.eval(&witness).is_negative()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hyperplane_split_examples() {
        let cases = [
            (x(0, 2).square(), HomogeneousPoly::zero(2, 1)),
            (x(0, 2).mul(&x(1, 2)), x(0, 2)),
            (x(0, 2).square().sub(&x(1, 2).square()), x(1, 2).neg()),
        ];
        let l = rvec(&[0, 1]);
        for (q, alpha) in cases {
            let (s, a) = qform_hyperplane_split(&q, &l).unwrap();
            assert_eq!(a, alpha);
            assert_eq!(s.to_poly().add(&HomogeneousPoly::linear(&l).mul(&a)), q);
        }
        let bad = x(0, 2).square().neg();
        assert!(matches!(qform_hyperplane_split(&bad, &l), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn four_square_search() {
        for n in [0u64, 1, 2, 3, 7, 15, 23, 1_000_003, 999_999_999_989] {
            let [a, b, c, d] = four_squares(&BigInt::from(n)).unwrap();
            assert_eq!(&a * &a + &b * &b + &c * &c + &d * &d, BigInt::from(n));
        }
    }
}
