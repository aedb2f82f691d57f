//! Hyperbolic polynomials: certificates of hyperbolicity, eigenvalue
//! polynomials, exact cone membership, cone sampling, and the boundary
//! derivative property (D_u p is hyperbolic with a larger cone, or zero).

use crate::error::{pre_err, Error, Result};
use crate::exact_algebra::{
    dot, int, lagrange_diagonalize, rat, Bound, HomogeneousPoly, Interval, LineOrientation, Rational, UnivariatePoly,
};
use crate::sampling;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Quadratic signature for degree <= 2, family recognition, then sampling.
    Auto,
    Quadratic,
    KnownFamily,
    Sampled {
        samples: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Proved: the form is Lorentzian, or belongs to a family known to be
    /// hyperbolic in this direction.
    Certified(String),
    /// Every sampled line restriction was real-rooted; not a proof.
    Sampled { trials: usize, seed: u64 },
    /// p(e) <= 0 (witness e) or a line restriction with non-real roots.
    Refuted(Vec<Rational>),
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified(r) => write!(f, "certified ({r})"),
            Verdict::Sampled { trials, seed } => write!(f, "sampled ({trials} directions, seed {seed})"),
            Verdict::Refuted(w) => write!(f, "refuted (witness {})", crate::error::fmt_vec(w)),
        }
    }
}

/// A form p together with a direction e and the evidence that p is
/// hyperbolic with respect to e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicPair {
    p: HomogeneousPoly,
    e: Vec<Rational>,
    verdict: Verdict,
}

impl HyperbolicPair {
    pub fn new(p: HomogeneousPoly, e: Vec<Rational>, strategy: &Strategy) -> Result<Self> {
        let verdict = check_hyperbolic(&p, &e, strategy)?;
        Ok(HyperbolicPair { p, e, verdict })
    }

    /// Pair whose verdict is supplied by the caller, for example from a
    /// manifest that was already checked.
    pub fn with_verdict(p: HomogeneousPoly, e: Vec<Rational>, verdict: Verdict) -> Result<Self> {
        if e.len() != p.nvars() {
            return Err(Error::Dimension(format!("e has {} entries, p has {} variables", e.len(), p.nvars())));
        }
        Ok(HyperbolicPair { p, e, verdict })
    }

    pub fn p(&self) -> &HomogeneousPoly {
        &self.p
    }
    pub fn e(&self) -> &[Rational] {
        &self.e
    }
    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }
    pub fn degree(&self) -> u32 {
        self.p.degree()
    }
    pub fn nvars(&self) -> usize {
        self.p.nvars()
    }

    fn usable(&self) -> Result<()> {
        if self.verdict.is_refuted() {
            return pre_err("pair is refuted as hyperbolic");
        }
        if !self.p.eval(&self.e).is_positive() {
            return pre_err("p(e) must be positive");
        }
        Ok(())
    }
}

pub fn check_hyperbolic(p: &HomogeneousPoly, e: &[Rational], strategy: &Strategy) -> Result<Verdict> {
    if e.len() != p.nvars() {
        return Err(Error::Dimension(format!("e has {} entries, p has {} variables", e.len(), p.nvars())));
    }
    if p.is_zero() || !p.eval(e).is_positive() {
        return Ok(Verdict::Refuted(e.to_vec()));
    }
    match strategy {
        Strategy::Quadratic => quadratic_verdict(p, e),
        Strategy::KnownFamily => match recognize_family(p, e) {
            Some(name) => Ok(Verdict::Certified(name)),
            None => pre_err("no known hyperbolic family matches this form and direction"),
        },
        Strategy::Sampled { samples, seed } => Ok(sampled_verdict(p, e, *samples, *seed)),
        Strategy::Auto => {
            if p.degree() <= 2 {
                return quadratic_verdict(p, e);
            }
            if let Some(name) = recognize_family(p, e) {
                return Ok(Verdict::Certified(name));
            }
            Ok(sampled_verdict(p, e, 200, 0))
        }
    }
}

fn quadratic_verdict(p: &HomogeneousPoly, e: &[Rational]) -> Result<Verdict> {
    match p.degree() {
        0 => return Ok(Verdict::Certified("constant".into())),
        1 => return Ok(Verdict::Certified("linear form".into())),
        2 => {}
        d => return pre_err(format!("quadratic strategy needs degree 2, got {d}")),
    }
    let diag = lagrange_diagonalize(p)?;
    let pos: Vec<usize> = (0..diag.weights.len()).filter(|&i| diag.weights[i].is_positive()).collect();
    if pos.len() <= 1 {
        return Ok(Verdict::Certified("quadratic signature".into()));
    }
    // Two positive directions B-orthogonal to each other; a combination that
    // is B-orthogonal to e gives a line with negative discriminant.
    let g = p.gram();
    let x1 = diag.point_for(pos[0]);
    let x2 = diag.point_for(pos[1]);
    let ge: Vec<Rational> = (0..e.len()).map(|i| dot(&g[i], e)).collect();
    let (b1, b2) = (dot(&ge, &x1), dot(&ge, &x2));
    let w: Vec<Rational> =
        if b1.is_zero() && b2.is_zero() { x1 } else { x1.iter().zip(&x2).map(|(a, b)| &b2 * a - &b1 * b).collect() };
    Ok(Verdict::Refuted(w))
}

fn sampled_verdict(p: &HomogeneousPoly, e: &[Rational], samples: usize, seed: u64) -> Verdict {
    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let x = sampling::rational_vector(&mut rng, p.nvars(), 12, 4);
        if !p.restrict_line(&x, e, LineOrientation::Eigen).is_real_rooted() {
            return Verdict::Refuted(x);
        }
    }
    Verdict::Sampled { trials: samples, seed }
}

/// Names the family when p is a positive multiple of a form known to be
/// hyperbolic in direction e.
fn recognize_family(p: &HomogeneousPoly, e: &[Rational]) -> Option<String> {
    let n = p.nvars();
    let d = p.degree();
    if d <= 1 {
        return Some(if d == 0 { "constant" } else { "linear form" }.into());
    }
    if p.num_terms() == 1 {
        let (m, c) = p.terms().next().unwrap();
        if c.is_positive() || p.eval(e).is_positive() {
            let ok = m.iter().zip(e).all(|(&k, ei)| k == 0 || !ei.is_zero());
            if ok {
                return Some("product of linear forms".into());
            }
        }
    }
    let lead = p.terms().next().map(|(_, c)| c.clone())?;
    if (d as usize) <= n && e.iter().all(|x| x.is_positive()) {
        let es = families::elementary_symmetric_poly(n, d as usize);
        if es.scale(&lead) == *p {
            return Some(format!("elementary symmetric e_{d}"));
        }
    }
    let side = ((((8 * n + 1) as f64).sqrt() as usize).saturating_sub(1)) / 2;
    if side >= 1 && side * (side + 1) / 2 == n && side == d as usize {
        let det = families::det_symmetric_poly(side);
        let c = det.terms().next().map(|(_, c)| c.clone())?;
        if det.scale(&(&lead / &c)) == *p {
            let m = families::symmetric_matrix_of(side, e);
            let cp = crate::exact_algebra::charpoly(&m);
            let neg = cp.sturm_count(&Interval::below(Rational::zero())).ok()?;
            let pos = cp.sturm_count(&Interval::above(Rational::zero())).ok()?;
            let definite = !cp.eval(&Rational::zero()).is_zero() && (neg == 0 || pos == 0);
            if definite {
                return Some("determinant of a symmetric pencil".into());
            }
        }
    }
    None
}

/// p(t e - x) / p(e): monic, roots are the eigenvalues of x.
pub fn eigen_poly(pair: &HyperbolicPair, x: &[Rational]) -> Result<UnivariatePoly> {
    if x.len() != pair.nvars() {
        return Err(Error::Dimension(format!("point has {} entries, expected {}", x.len(), pair.nvars())));
    }
    let f = pair.p.restrict_line(x, &pair.e, LineOrientation::Eigen);
    Ok(f.scale(&(Rational::one() / pair.p.eval(&pair.e))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeMembership {
    Interior,
    Boundary { multiplicity: usize },
    Outside,
}

impl ConeMembership {
    pub fn in_closed_cone(&self) -> bool {
        !matches!(self, ConeMembership::Outside)
    }
}

/// Exact membership in the closed hyperbolicity cone: all eigenvalues >= 0.
pub fn cone_membership(pair: &HyperbolicPair, x: &[Rational]) -> Result<ConeMembership> {
    pair.usable()?;
    let f = eigen_poly(pair, x)?;
    if !f.is_real_rooted() {
        return Err(Error::Precondition(format!(
            "eigenvalue polynomial at {} has non-real roots; p is not hyperbolic",
            crate::error::fmt_vec(x)
        )));
    }
    if f.sturm_count(&Interval::below(Rational::zero()))? > 0 {
        return Ok(ConeMembership::Outside);
    }
    match f.order_at_zero() {
        0 => Ok(ConeMembership::Interior),
        k => Ok(ConeMembership::Boundary { multiplicity: k }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeSampleStyle {
    /// e plus a perturbation small against a crude eigenvalue bound.
    Interior,
    /// A random point pushed into the cone along e.
    Shifted,
    /// A rational boundary point, found by bounded search.
    Boundary,
}

pub fn sample_cone_point(pair: &HyperbolicPair, seed: u64, style: ConeSampleStyle) -> Result<Vec<Rational>> {
    pair.usable()?;
    let n = pair.nvars();
    let mut rng = sampling::rng(seed);
    match style {
        ConeSampleStyle::Interior => {
            let delta = sampling::rational_vector(&mut rng, n, 8, 8);
            let bound = eigen_poly(pair, &delta)?.root_bound();
            let mut s = Rational::one() / (int(8) * bound);
            for _ in 0..40 {
                let x: Vec<Rational> = pair.e.iter().zip(&delta).map(|(a, b)| a + &s * b).collect();
                if cone_membership(pair, &x)? == ConeMembership::Interior {
                    return Ok(x);
                }
                s /= int(2);
            }
            Err(Error::Inconsistent("interior sampling did not converge".into()))
        }
        ConeSampleStyle::Shifted => {
            let x = sampling::rational_vector(&mut rng, n, 6, 3);
            let bound = eigen_poly(pair, &x)?.root_bound();
            let s = bound + sampling::rational(&mut rng, 4, 4).abs() + rat(1, 16);
            let y: Vec<Rational> = x.iter().zip(&pair.e).map(|(a, b)| a + &s * b).collect();
            if cone_membership(pair, &y)? != ConeMembership::Interior {
                return Err(Error::Inconsistent("shifted sample left the cone".into()));
            }
            Ok(y)
        }
        ConeSampleStyle::Boundary => boundary_search(pair, &mut rng),
    }
}

fn boundary_search(pair: &HyperbolicPair, rng: &mut sampling::SampleRng) -> Result<Vec<Rational>> {
    let n = pair.nvars();
    let mut found: Option<Vec<Rational>> = None;
    for attempt in 0..96 {
        let cand: Vec<Rational> = if attempt % 2 == 0 {
            // zero out a random nonempty proper subset of e's coordinates
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(rng);
            let k = rng.gen_range(1..n.max(2));
            let mut c = pair.e.clone();
            for &i in idx.iter().take(k.min(n)) {
                c[i] = Rational::zero();
            }
            c
        } else if let (Some(z), 2) = (&found, pair.degree()) {
            // second intersection of a random line through a known boundary point
            let x = sampling::rational_vector(rng, n, 5, 3);
            let g = pair.p.gram();
            let gz: Vec<Rational> = (0..n).map(|i| dot(&g[i], z)).collect();
            let px = pair.p.eval(&x);
            if px.is_zero() {
                continue;
            }
            let s = -int(2) * dot(&gz, &x) / px;
            z.iter().zip(&x).map(|(a, b)| a + &s * b).collect()
        } else {
            let x = sampling::rational_vector(rng, n, 5, 1);
            let f = eigen_poly(pair, &x)?;
            match smallest_rational_root(&f) {
                Some(l) => x.iter().zip(&pair.e).map(|(a, b)| a - &l * b).collect(),
                None => continue,
            }
        };
        if cand.iter().all(|c| c.is_zero()) {
            continue;
        }
        for c in [cand.clone(), cand.iter().map(|v| -v).collect()] {
            if let Ok(ConeMembership::Boundary { .. }) = cone_membership(pair, &c) {
                if found.is_some() && attempt % 2 == 1 {
                    return Ok(c);
                }
                if found.is_none() {
                    found = Some(c.clone());
                }
                if rng.gen_bool(0.5) || pair.degree() != 2 {
                    return Ok(c);
                }
            }
        }
    }
    found.ok_or_else(|| Error::Precondition("no rational boundary point found within the retry budget".into()))
}

/// Smallest real root when it is rational, via the rational root test.
fn smallest_rational_root(f: &UnivariatePoly) -> Option<Rational> {
    let g = f.squarefree_part();
    let l = g.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = g.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let z = ints.iter().take_while(|c| c.is_zero()).count();
    let mut cands: Vec<Rational> = if z > 0 { vec![Rational::zero()] } else { Vec::new() };
    let a0 = ints[z].abs().to_u64()?;
    let an = ints.last()?.abs().to_u64()?;
    if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
        return None;
    }
    for p in divisors(a0) {
        for q in divisors(an) {
            let r = rat(p as i64, q as i64);
            cands.push(r.clone());
            cands.push(-r);
        }
    }
    let mut roots: Vec<Rational> = cands.into_iter().filter(|r| g.eval(r).is_zero()).collect();
    roots.sort();
    let min = roots.first()?.clone();
    let below = g.sturm_count(&Interval { lo: Bound::Infinite, hi: Bound::Open(min.clone()) }).ok()?;
    (below == 0).then_some(min)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out
}

#[derive(Clone, Debug)]
pub struct BoundaryDerivativeReport {
    /// D_u p is identically zero (the degenerate branch).
    pub zero_branch: bool,
    pub derivative: HomogeneousPoly,
    pub derivative_positive_at_e: bool,
    pub derivative_verdict: Option<Verdict>,
    pub inclusion_samples: usize,
    pub counterexamples: Vec<Vec<Rational>>,
}

impl BoundaryDerivativeReport {
    pub fn holds(&self) -> bool {
        self.zero_branch
            || (self.derivative_positive_at_e
                && self.derivative_verdict.as_ref().is_some_and(|v| !v.is_refuted())
                && self.counterexamples.is_empty())
    }
}

/// For u on the boundary of the cone: D_u p is zero, or it is hyperbolic in
/// direction e and its cone contains the cone of p (checked on samples).
pub fn boundary_derivative_check(
    pair: &HyperbolicPair,
    u: &[Rational],
    trials: usize,
    seed: u64,
) -> Result<BoundaryDerivativeReport> {
    match cone_membership(pair, u)? {
        ConeMembership::Boundary { .. } => {}
        other => return pre_err(format!("u must lie on the cone boundary, found {other:?}")),
    }
    let dp = pair.p.directional(u, 1);
    if dp.is_zero() {
        return Ok(BoundaryDerivativeReport {
            zero_branch: true,
            derivative: dp,
            derivative_positive_at_e: false,
            derivative_verdict: None,
            inclusion_samples: 0,
            counterexamples: Vec::new(),
        });
    }
    let positive = dp.eval(&pair.e).is_positive();
    let verdict = check_hyperbolic(&dp, &pair.e, &Strategy::Sampled { samples: trials, seed })?;
    let mut counterexamples = Vec::new();
    let mut checked = 0;
    if positive && !verdict.is_refuted() {
        let dpair = HyperbolicPair { p: dp.clone(), e: pair.e.clone(), verdict: verdict.clone() };
        for i in 0..trials as u64 {
            let style = if i % 2 == 0 { ConeSampleStyle::Shifted } else { ConeSampleStyle::Interior };
            let x = sample_cone_point(pair, seed.wrapping_mul(1_000_003).wrapping_add(i), style)?;
            checked += 1;
            if !cone_membership(&dpair, &x)?.in_closed_cone() {
                counterexamples.push(x);
            }
        }
    }
    Ok(BoundaryDerivativeReport {
        zero_branch: false,
        derivative: dp,
        derivative_positive_at_e: positive,
        derivative_verdict: Some(verdict),
        inclusion_samples: checked,
        counterexamples,
    })
}

/// Constructors for standard hyperbolic families.
pub mod families {
    use super::*;

    /// Product of linear forms, each required to be positive at e.
    pub fn product_of_linear(forms: &[Vec<Rational>], e: Vec<Rational>) -> Result<HyperbolicPair> {
        let n = e.len();
        let mut p = HomogeneousPoly::constant(n, Rational::one());
        for (i, l) in forms.iter().enumerate() {
            if l.len() != n {
                return Err(Error::Dimension(format!("linear form {i} has {} entries, expected {n}", l.len())));
            }
            if !dot(l, &e).is_positive() {
                return pre_err(format!("linear form {i} is not positive at e"));
            }
            p = p.mul(&HomogeneousPoly::linear(l));
        }
        Ok(HyperbolicPair { p, e, verdict: Verdict::Certified("product of linear forms".into()) })
    }

    /// <e,y>^2/|e|^2 - |y|^2/2, hyperbolic in direction e.
    pub fn lorentz(e: Vec<Rational>) -> Result<HyperbolicPair> {
        let n2 = dot(&e, &e);
        if n2.is_zero() {
            return pre_err("Lorentz form needs a nonzero direction");
        }
        let n = e.len();
        let p = HomogeneousPoly::linear(&e).square().scale(&(Rational::one() / n2)).sub(
            &(0..n)
                .fold(HomogeneousPoly::zero(n, 2), |acc, i| acc.add(&HomogeneousPoly::var(n, i).square()))
                .scale(&rat(1, 2)),
        );
        Ok(HyperbolicPair { p, e, verdict: Verdict::Certified("quadratic signature".into()) })
    }

    pub(crate) fn elementary_symmetric_poly(n: usize, k: usize) -> HomogeneousPoly {
        let mut p = HomogeneousPoly::zero(n, k as u32);
        for subset in subsets(n, k) {
            let mut e = vec![0u32; n];
            for i in subset {
                e[i] = 1;
            }
            p = p.add(&HomogeneousPoly::monomial(e, Rational::one()));
        }
        p
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if n < k {
            return Vec::new();
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// e_k in n variables, direction (1, ..., 1).
    pub fn elementary_symmetric(n: usize, k: usize) -> Result<HyperbolicPair> {
        if k == 0 || k > n {
            return pre_err(format!("need 1 <= k <= n, got k = {k}, n = {n}"));
        }
        Ok(HyperbolicPair {
            p: elementary_symmetric_poly(n, k),
            e: vec![Rational::one(); n],
            verdict: Verdict::Certified(format!("elementary symmetric e_{k}")),
        })
    }

    /// Variables of the symmetric n x n matrix, upper triangle row by row.
    pub fn symmetric_index(n: usize, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * n - i * (i + 1) / 2 + j
    }

    pub(crate) fn symmetric_matrix_of(n: usize, x: &[Rational]) -> Vec<Vec<Rational>> {
        (0..n).map(|i| (0..n).map(|j| x[symmetric_index(n, i, j)].clone()).collect()).collect()
    }

    pub(crate) fn det_symmetric_poly(n: usize) -> HomogeneousPoly {
        let nv = n * (n + 1) / 2;
        let m: Vec<Vec<HomogeneousPoly>> =
            (0..n).map(|i| (0..n).map(|j| HomogeneousPoly::var(nv, symmetric_index(n, i, j))).collect()).collect();
        laplace_det(&m, nv)
    }

    fn laplace_det(m: &[Vec<HomogeneousPoly>], nv: usize) -> HomogeneousPoly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = HomogeneousPoly::zero(nv, n as u32);
        for c in 0..n {
            let minor: Vec<Vec<HomogeneousPoly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = m[0][c].mul(&laplace_det(&minor, nv));
            acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// det of a generic symmetric n x n matrix, direction the identity.
    pub fn det_symmetric(n: usize) -> Result<HyperbolicPair> {
        if n == 0 {
            return pre_err("matrix size must be positive");
        }
        let nv = n * (n + 1) / 2;
        let mut e = vec![Rational::zero(); nv];
        for i in 0..n {
            e[symmetric_index(n, i, i)] = Rational::one();
        }
        Ok(HyperbolicPair {
            p: det_symmetric_poly(n),
            e,
            verdict: Verdict::Certified("determinant of a symmetric pencil".into()),
        })
    }
}
