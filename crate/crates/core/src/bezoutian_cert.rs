//! Bezoutian certificates. The Bezoutian of p(x + t u) and D_v p(x + t u) is a
//! symmetric matrix of forms, positive semidefinite when u, v lie in the
//! hyperbolicity cone; its (0, 0) entry is the Wronskian. Quadratic forms in
//! it with graded polynomial weights give "hyperzouts".

use crate::error::{dim_err, pre_err, Error, Result};
use crate::exact_algebra::{
    is_psd_symmetric, lagrange_diagonalize, rational_sqrt, GradedTuple, HomogeneousPoly, PolyMap, Rational, Ring,
    UnivariatePoly, WeightedSos,
};
use crate::hyperbolic::HyperbolicPair;
use crate::report::{Report, Status};
use crate::sampling;
use crate::wronskian_cert::{cone_check, nonneg_check, verdict_check, VerifyOptions};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

/// Coefficients c_jl of (f(t) g(s) - f(s) g(t)) / (t - s) = sum c_jl t^j s^l
/// for f = sum a_i t^i (i <= d) and g = sum b_k t^k (k < d).
pub fn bezout_coefficients<T: Ring>(a: &[T], b: &[T], d: usize, zero_at: impl Fn(usize, usize) -> T) -> Vec<Vec<T>> {
    let mut c: Vec<Vec<T>> = (0..d).map(|j| (0..d).map(|l| zero_at(j, l)).collect()).collect();
    for (i, ai) in a.iter().enumerate().take(d + 1) {
        for (k, bk) in b.iter().enumerate().take(d) {
            if i == k {
                continue;
            }
            let prod = ai.mul(bk);
            if i > k {
                for r in 0..i - k {
                    c[k + r][i - 1 - r] = c[k + r][i - 1 - r].add(&prod);
                }
            } else {
                for r in 0..k - i {
                    c[i + r][k - 1 - r] = c[i + r][k - 1 - r].sub(&prod);
                }
            }
        }
    }
    c
}

/// The d x d Bezoutian of univariate f (degree <= d) and g (degree < d).
pub fn bezout_matrix(f: &UnivariatePoly, g: &UnivariatePoly, d: usize) -> Result<Vec<Vec<Rational>>> {
    if f.degree().unwrap_or(0) > d || g.degree().is_some_and(|x| x >= d) {
        return pre_err(format!("need deg f <= {d} and deg g < {d}"));
    }
    let a: Vec<Rational> = (0..=d).map(|i| f.coeff(i)).collect();
    let b: Vec<Rational> = (0..d).map(|i| g.coeff(i)).collect();
    Ok(bezout_coefficients(&a, &b, d, |_, _| Rational::zero()))
}

fn factorial(k: u32) -> Rational {
    Rational::from_integer((1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// B_{p,u,v}(x): the Bezoutian of t -> p(x + t u) and t -> D_v p(x + t u).
/// Entry (j, l) is a form of degree 2(d-1) - (j + l); entry (0, 0) is the
/// Wronskian.
pub fn parameterized_bezoutian(
    pair: &HyperbolicPair,
    u: &[Rational],
    v: &[Rational],
) -> Result<Vec<Vec<HomogeneousPoly>>> {
    let n = pair.nvars();
    if u.len() != n || v.len() != n {
        return dim_err(format!("u and v need {n} entries"));
    }
    let d = pair.degree() as usize;
    let p = pair.p();
    let dv = p.directional(v, 1);
    let a: Vec<HomogeneousPoly> =
        (0..=d as u32).map(|j| p.directional(u, j).scale(&(Rational::one() / factorial(j)))).collect();
    let b: Vec<HomogeneousPoly> =
        (0..d as u32).map(|j| dv.directional(u, j).scale(&(Rational::one() / factorial(j)))).collect();
    let deg = |j: usize, l: usize| (2 * (d - 1)).saturating_sub(j + l) as u32;
    let c = bezout_coefficients(&a, &b, d, |j, l| HomogeneousPoly::zero(n, deg(j, l)));
    Ok(c.into_iter()
        .enumerate()
        .map(|(j, row)| row.into_iter().enumerate().map(|(l, e)| e.with_degree(deg(j, l))).collect())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperzoutWitness {
    pub pair: HyperbolicPair,
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
    pub phi: PolyMap,
    pub xi: GradedTuple,
}

impl HyperzoutWitness {
    pub fn new(
        pair: HyperbolicPair,
        u: Vec<Rational>,
        v: Vec<Rational>,
        phi: PolyMap,
        xi: GradedTuple,
    ) -> Result<Self> {
        let n = pair.nvars();
        if u.len() != n || v.len() != n || phi.len() != n {
            return dim_err(format!("u, v and phi must all have dimension {n}"));
        }
        if xi.d() != pair.degree() as usize || xi.k() != phi.degree() || xi.nvars() != phi.nvars_in() {
            return dim_err("graded tuple does not match deg p, deg phi or the number of variables");
        }
        Ok(HyperzoutWitness { pair, u, v, phi, xi })
    }

    pub fn degree(&self) -> u32 {
        2 * self.phi.degree() * (self.xi.mu() as u32 - 1)
    }
}

/// xi(x)^T B(phi(x)) xi(x).
pub fn build_hyperzout(w: &HyperzoutWitness) -> Result<HomogeneousPoly> {
    let b = parameterized_bezoutian(&w.pair, &w.u, &w.v)?;
    let d = w.xi.d();
    let lo = d - w.xi.mu();
    let m = w.phi.nvars_in();
    let mut acc = HomogeneousPoly::zero(m, w.degree());
    for j in lo..d {
        for l in lo..d {
            let (xj, xl) = (w.xi.slot(j), w.xi.slot(l));
            if xj.is_zero() || xl.is_zero() || b[j][l].is_zero() {
                continue;
            }
            acc = acc.add(&xj.mul(xl).mul(&b[j][l].compose(&w.phi)));
        }
    }
    Ok(acc.with_degree(w.degree()))
}

/// Hyperzouts with this (mu, d) have degree low enough that the dimension
/// count applies: mu = 2 or d <= 2 mu - 3.
pub fn degree_restricted(mu: usize, d: usize) -> Result<bool> {
    if mu < 2 || mu > d {
        return pre_err(format!("need 2 <= mu <= d, got mu = {mu}, d = {d}"));
    }
    Ok(mu == 2 || d + 3 <= 2 * mu)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperzoutOptions {
    pub verify: VerifyOptions,
    /// Points at which B(phi(x)) is checked to be PSD exactly.
    pub psd_points: usize,
}

impl Default for HyperzoutOptions {
    fn default() -> Self {
        HyperzoutOptions { verify: VerifyOptions::default(), psd_points: 1000 }
    }
}

/// B_{p,u,v}(phi(x)) is PSD at `points` seeded rational x, decided exactly by
/// the signs of the characteristic polynomial's roots.
pub(crate) fn psd_check(
    r: &mut Report,
    pair: &HyperbolicPair,
    u: &[Rational],
    v: &[Rational],
    phi: &PolyMap,
    points: usize,
    seed: u64,
) {
    let b = match parameterized_bezoutian(pair, u, v) {
        Ok(b) => b,
        Err(e) => return r.push("bezoutian-psd", Status::Fail, e.to_string()),
    };
    let composed: Vec<Vec<HomogeneousPoly>> =
        b.iter().map(|row| row.iter().map(|e| e.compose(phi)).collect()).collect();
    let mut rng = sampling::rng(seed ^ 0xb2);
    let pts: Vec<Vec<Rational>> =
        (0..points).map(|_| sampling::rational_vector(&mut rng, phi.nvars_in(), 9, 3)).collect();
    let bad = pts.par_iter().find_first(|x| {
        let mat: Vec<Vec<Rational>> = composed.iter().map(|row| row.iter().map(|e| e.eval(x)).collect()).collect();
        !is_psd_symmetric(&mat)
    });
    match bad {
        None => r.push("bezoutian-psd", Status::SampledOk, format!("{points} seeded points, exact eigenvalue signs")),
        Some(x) => r.push("bezoutian-psd", Status::Fail, format!("not PSD at {}", crate::error::fmt_vec(x))),
    }
}

pub fn verify_hyperzout(w: &HyperzoutWitness, q: &HomogeneousPoly, opts: HyperzoutOptions) -> Report {
    let mut r = Report::new("hyperzout certificate");
    r.meta("variables", w.phi.nvars_in());
    r.meta("degree", w.degree());
    r.meta("mu", w.xi.mu());
    r.meta("seed", opts.verify.seed);
    r.meta("samples", opts.verify.samples);
    match build_hyperzout(w) {
        Ok(built) => r.pass_if(
            "identity",
            built == *q,
            format!("{} terms rebuilt, {} claimed", built.num_terms(), q.num_terms()),
        ),
        Err(e) => r.push("identity", Status::Fail, e.to_string()),
    }
    cone_check(&mut r, "cone-u", &w.pair, &w.u);
    cone_check(&mut r, "cone-v", &w.pair, &w.v);
    verdict_check(&mut r, w.pair.verdict());
    if let Ok(dr) = degree_restricted(w.xi.mu(), w.xi.d()) {
        r.push("degree-restricted", Status::Info, dr.to_string());
    }
    psd_check(&mut r, &w.pair, &w.u, &w.v, &w.phi, opts.psd_points, opts.verify.seed);
    nonneg_check(&mut r, q, opts.verify);
    r
}

/// [[p2, p1], [p1, p0]] = sum_k w_k c_k c_k^T with columns c_k = (top, bottom),
/// top linear and bottom constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsdFactor {
    pub nvars: usize,
    pub columns: Vec<(Rational, HomogeneousPoly, Rational)>,
}

impl PsdFactor {
    /// (p2, p1, p0) rebuilt from the columns.
    pub fn reconstruct(&self) -> (HomogeneousPoly, HomogeneousPoly, Rational) {
        let n = self.nvars;
        let mut p2 = HomogeneousPoly::zero(n, 2);
        let mut p1 = HomogeneousPoly::zero(n, 1);
        let mut p0 = Rational::zero();
        for (w, top, bot) in &self.columns {
            p2 = p2.add(&top.square().scale(w));
            p1 = p1.add(&top.scale(&(w * bot)));
            p0 += w * bot * bot;
        }
        (p2.with_degree(2), p1.with_degree(1), p0)
    }

    /// The factor M with M M^T equal to the block, when every weight is a
    /// rational square: one (top, bottom) pair per column.
    pub fn plain_columns(&self) -> Option<Vec<(HomogeneousPoly, Rational)>> {
        self.columns.iter().map(|(w, top, bot)| rational_sqrt(w).map(|r| (top.scale(&r), &r * bot))).collect()
    }
}

fn not_psd<T>(msg: &str, witness: Vec<Rational>) -> Result<T> {
    Err(Error::NotPsd { message: msg.into(), witness })
}

/// Factors a 2x2 matrix of forms of degrees (2, 1, 0) that is PSD at every
/// point. Fails with a point where it is not PSD.
pub fn factor_2x2_psd(p2: &HomogeneousPoly, p1: &HomogeneousPoly, p0: &HomogeneousPoly) -> Result<PsdFactor> {
    let n = p2.nvars();
    if p1.nvars() != n || p0.nvars() != n {
        return dim_err("entries must share the variables");
    }
    if (!p2.is_zero() && p2.degree() != 2) || (!p1.is_zero() && p1.degree() != 1) || (!p0.is_zero() && p0.degree() != 0)
    {
        return pre_err("entries must have degrees 2, 1, 0");
    }
    let c0 = p0.eval(&vec![Rational::zero(); n]);
    let zero_pt = vec![Rational::zero(); n];
    if c0.is_negative() {
        return not_psd("bottom-right entry is negative", zero_pt);
    }
    let mut columns = Vec::new();
    let rest = if c0.is_zero() {
        if !p1.is_zero() {
            let c = p1.linear_coeffs();
            let i = c.iter().position(|x| !x.is_zero()).unwrap();
            let mut x = zero_pt;
            x[i] = Rational::one();
            return not_psd("off-diagonal entry is nonzero where the corner vanishes", x);
        }
        p2.clone()
    } else {
        let top = p1.scale(&(Rational::one() / &c0));
        columns.push((c0.clone(), top, Rational::one()));
        p2.sub(&p1.square().scale(&(Rational::one() / &c0))).with_degree(2)
    };
    let diag = lagrange_diagonalize(&rest)?;
    if let Some(x) = diag.negative_witness() {
        return not_psd("Schur complement is negative", x);
    }
    for (w, l) in diag.weights.iter().zip(&diag.forms) {
        if w.is_positive() {
            columns.push((w.clone(), HomogeneousPoly::linear(l), Rational::zero()));
        }
    }
    Ok(PsdFactor { nvars: n, columns })
}

/// A hyperzout with mu = 2 as an explicit weighted sum of squares of forms of
/// degree k.
pub fn mu2_hyperzout_to_sos(w: &HyperzoutWitness) -> Result<WeightedSos> {
    if w.xi.mu() != 2 {
        return pre_err(format!("expected mu = 2, got {}", w.xi.mu()));
    }
    let d = w.xi.d();
    let b = parameterized_bezoutian(&w.pair, &w.u, &w.v)?;
    let f = factor_2x2_psd(&b[d - 2][d - 2], &b[d - 2][d - 1], &b[d - 1][d - 1])?;
    let m = w.phi.nvars_in();
    let k = w.phi.degree();
    let xi0 = w.xi.slot(d - 2).eval(&vec![Rational::zero(); m]);
    let xis = w.xi.slot(d - 1);
    let mut terms = Vec::new();
    for (wt, top, bot) in &f.columns {
        let g = top.compose(&w.phi).scale(&xi0).with_degree(k).add(&xis.scale(bot)).with_degree(k);
        terms.push((wt.clone(), g));
    }
    let sos = WeightedSos::new(m, k, terms)?;
    if sos.to_poly() != build_hyperzout(w)? {
        return Err(Error::Inconsistent("sum of squares does not reproduce the hyperzout".into()));
    }
    Ok(sos)
}
