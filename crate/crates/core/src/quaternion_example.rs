//! A 16-variable quartic built from 2x2 quaternionic matrices: f(X) is the
//! Moore determinant of X X*. It is non-negative, vanishes on rank-one
//! matrices, spans an extreme ray of the non-negative quartics, and is not a
//! hyperwron. This module checks every computational input to those claims.
//!
//! Coordinates: X = [[X11, X12], [X21, X22]], variables ordered entry by entry
//! (row-major), each entry contributing its (1, i, j, k) components. So
//! variable 4 r + c is component c of entry r (r = 0 for X11, 1 for X12,
//! 2 for X21, 3 for X22).

use crate::error::{pre_err, Error, Result};
use crate::exact_algebra::{
    dense_rank, int, matrix_rank, monomials, random_primes_near_2_61, sparse_rank_mod, ExactMatrix, HomogeneousPoly,
    ModElem, Monomial, PolyMap, Prime, RankConfidence, RankMode, Rational, Ring,
};
use crate::report::{Report, Status};
use crate::sampling;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::OnceLock;

pub const NVARS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Ring> Quaternion<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn add(&self, o: &Self) -> Self {
        Quaternion::new(self.a.add(&o.a), self.b.add(&o.b), self.c.add(&o.c), self.d.add(&o.d))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Quaternion::new(self.a.sub(&o.a), self.b.sub(&o.b), self.c.sub(&o.c), self.d.sub(&o.d))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        Quaternion::new(
            a1.mul(a2).sub(&b1.mul(b2)).sub(&c1.mul(c2)).sub(&d1.mul(d2)),
            a1.mul(b2).add(&b1.mul(a2)).add(&c1.mul(d2)).sub(&d1.mul(c2)),
            a1.mul(c2).sub(&b1.mul(d2)).add(&c1.mul(a2)).add(&d1.mul(b2)),
            a1.mul(d2).add(&b1.mul(c2)).sub(&c1.mul(b2)).add(&d1.mul(a2)),
        )
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a.clone(), self.b.neg(), self.c.neg(), self.d.neg())
    }

    pub fn norm_sq(&self) -> T {
        self.a.mul(&self.a).add(&self.b.mul(&self.b)).add(&self.c.mul(&self.c)).add(&self.d.mul(&self.d))
    }

    pub fn components(&self) -> [&T; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl Quaternion<Rational> {
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion::new(int(a), int(b), int(c), int(d))
    }

    pub fn real(a: Rational) -> Self {
        Quaternion::new(a, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Quaternion::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }
}

/// 2x2 quaternionic matrix, `e[r][c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatMatrix2<T> {
    pub e: [[Quaternion<T>; 2]; 2],
}

impl<T: Ring> QuatMatrix2<T> {
    pub fn new(e: [[Quaternion<T>; 2]; 2]) -> Self {
        QuatMatrix2 { e }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let at = |r: usize, c: usize| self.e[r][0].mul(&o.e[0][c]).add(&self.e[r][1].mul(&o.e[1][c]));
        QuatMatrix2::new([[at(0, 0), at(0, 1)], [at(1, 0), at(1, 1)]])
    }

    pub fn conj_transpose(&self) -> Self {
        let e = &self.e;
        QuatMatrix2::new([[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]])
    }

    /// The 16 real coordinates in the module's fixed order.
    pub fn coords(&self) -> Vec<T> {
        self.e.iter().flatten().flat_map(|q| q.components().map(|x| x.clone())).collect()
    }

    pub fn from_coords(x: &[T]) -> Self {
        assert_eq!(x.len(), NVARS);
        let q = |r: usize| {
            Quaternion::new(x[4 * r].clone(), x[4 * r + 1].clone(), x[4 * r + 2].clone(), x[4 * r + 3].clone())
        };
        QuatMatrix2::new([[q(0), q(1)], [q(2), q(3)]])
    }
}

impl QuatMatrix2<Rational> {
    pub fn identity() -> Self {
        Self::diag(Quaternion::one(), Quaternion::one())
    }

    pub fn diag(p: Quaternion<Rational>, q: Quaternion<Rational>) -> Self {
        QuatMatrix2::new([[p, Quaternion::zero()], [Quaternion::zero(), q]])
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.conj_transpose()
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.conj_transpose()) == Self::identity()
    }
}

/// Z11 Z22 - |Z12|^2 read off a Hermitian matrix (real parts of the diagonal).
fn moore_det_unchecked<T: Ring>(z: &QuatMatrix2<T>) -> T {
    z.e[0][0].a.mul(&z.e[1][1].a).sub(&z.e[0][1].norm_sq())
}

pub fn moore_det(z: &QuatMatrix2<Rational>) -> Result<Rational> {
    if !z.is_hermitian() {
        return pre_err("Moore determinant needs a Hermitian matrix");
    }
    Ok(moore_det_unchecked(z))
}

/// det_M(X X*) over any ring.
pub fn fhat_at<T: Ring>(x: &QuatMatrix2<T>) -> T {
    moore_det_unchecked(&x.mul(&x.conj_transpose()))
}

/// The quartic in the 16 coordinates, expanded once.
pub fn fhat() -> &'static HomogeneousPoly {
    static F: OnceLock<HomogeneousPoly> = OnceLock::new();
    F.get_or_init(|| {
        let vars: Vec<HomogeneousPoly> = (0..NVARS).map(|i| HomogeneousPoly::var(NVARS, i)).collect();
        fhat_at(&QuatMatrix2::from_coords(&vars)).with_degree(4)
    })
}

/// q^2 / |q|^2: a rational unit quaternion for any nonzero rational q.
pub fn unit_quaternion(q: &Quaternion<Rational>) -> Result<Quaternion<Rational>> {
    let n = q.norm_sq();
    if n.is_zero() {
        return pre_err("zero quaternion");
    }
    Ok(q.mul(q).scale(&(Rational::one() / n)))
}

/// Real rotation [[c, s], [-s, c]] with c = (1 - t^2)/(1 + t^2), s = 2t/(1 + t^2).
pub fn rational_rotation(t: &Rational) -> QuatMatrix2<Rational> {
    let den = Rational::one() + t * t;
    let c = (Rational::one() - t * t) / &den;
    let s = (int(2) * t) / den;
    QuatMatrix2::new([
        [Quaternion::real(c.clone()), Quaternion::real(s.clone())],
        [Quaternion::real(-s), Quaternion::real(c)],
    ])
}

pub fn swap_matrix() -> QuatMatrix2<Rational> {
    QuatMatrix2::new([[Quaternion::zero(), Quaternion::one()], [Quaternion::one(), Quaternion::zero()]])
}

fn random_unit(rng: &mut sampling::SampleRng) -> Quaternion<Rational> {
    loop {
        let q = Quaternion::from_ints(
            rng.gen_range(-5..=5),
            rng.gen_range(-5..=5),
            rng.gen_range(-5..=5),
            rng.gen_range(-5..=5),
        );
        if let Ok(u) = unit_quaternion(&q) {
            return u;
        }
    }
}

/// A product of diagonal unit matrices, rational rotations and the swap.
pub fn random_sp2(rng: &mut sampling::SampleRng) -> QuatMatrix2<Rational> {
    let mut m = QuatMatrix2::identity();
    for _ in 0..3 {
        m = m.mul(&QuatMatrix2::diag(random_unit(rng), random_unit(rng)));
        m = m.mul(&rational_rotation(&sampling::rational(rng, 4, 3)));
        if rng.gen_bool(0.5) {
            m = m.mul(&swap_matrix());
        }
    }
    m
}

fn require_unitary(m: &QuatMatrix2<Rational>, name: &str) -> Result<()> {
    if m.is_unitary() {
        Ok(())
    } else {
        pre_err(format!("{name} is not unitary"))
    }
}

/// f(P X Q) = f(X) at `samples` seeded rational X.
pub fn sp2_invariance_check(
    p: &QuatMatrix2<Rational>,
    q: &QuatMatrix2<Rational>,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    require_unitary(p, "P")?;
    require_unitary(q, "Q")?;
    let f = fhat();
    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let x = sampling::rational_vector(&mut rng, NVARS, 6, 4);
        let moved = p.mul(&QuatMatrix2::from_coords(&x)).mul(q).coords();
        if f.eval(&moved) != f.eval(&x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The linear map X -> P X Q on the 16 coordinates.
pub fn sp2_action(p: &QuatMatrix2<Rational>, q: &QuatMatrix2<Rational>) -> PolyMap {
    let vars: Vec<HomogeneousPoly> = (0..NVARS).map(|i| HomogeneousPoly::var(NVARS, i)).collect();
    let embed = |m: &QuatMatrix2<Rational>| {
        QuatMatrix2::from_coords(
            &m.coords().iter().map(|c| HomogeneousPoly::constant(NVARS, c.clone())).collect::<Vec<_>>(),
        )
    };
    let moved = embed(p).mul(&QuatMatrix2::from_coords(&vars)).mul(&embed(q));
    PolyMap::new(NVARS, 1, moved.coords().into_iter().map(|c| c.with_degree(1)).collect()).expect("linear map")
}

/// f composed with X -> P X Q equals f as a polynomial.
pub fn sp2_symbolic_invariance(p: &QuatMatrix2<Rational>, q: &QuatMatrix2<Rational>) -> Result<bool> {
    require_unitary(p, "P")?;
    require_unitary(q, "Q")?;
    Ok(fhat().compose(&sp2_action(p, q)) == *fhat())
}

/// X = [x; y] [z w] with quaternion parameters x, y, z, w (16 real
/// parameters, 4 each in that order).
pub fn rank_one_parameterization() -> PolyMap {
    let v: Vec<HomogeneousPoly> = (0..NVARS).map(|i| HomogeneousPoly::var(NVARS, i)).collect();
    let q =
        |s: usize| Quaternion::new(v[4 * s].clone(), v[4 * s + 1].clone(), v[4 * s + 2].clone(), v[4 * s + 3].clone());
    let (x, y, z, w) = (q(0), q(1), q(2), q(3));
    let m = QuatMatrix2::new([[x.mul(&z), x.mul(&w)], [y.mul(&z), y.mul(&w)]]);
    PolyMap::new(NVARS, 2, m.coords().into_iter().map(|c| c.with_degree(2)).collect()).expect("quadratic map")
}

/// f composed with the rank-one parameterization, a form of degree 8.
pub fn rank_one_composition() -> HomogeneousPoly {
    fhat().compose(&rank_one_parameterization())
}

pub fn rank_one_vanishing() -> bool {
    rank_one_composition().is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    /// f on [[x1 i, z i], [z i, w1 i]] in the variables (x1, w1, z).
    pub h: HomogeneousPoly,
    /// h == (x1 w1 - z^2)^2.
    pub is_expected_square: bool,
    /// Rank of the Gram matrix of z^2 - x1 w1; a symmetrized product of two
    /// linear forms has rank at most 2.
    pub factor_gram_rank: usize,
}

pub fn restriction_h() -> Restriction {
    let v = |i| HomogeneousPoly::var(3, i);
    let zero = HomogeneousPoly::zero(3, 1);
    let im = |t: HomogeneousPoly| Quaternion::new(zero.clone(), t, zero.clone(), zero.clone());
    let x = QuatMatrix2::new([[im(v(0)), im(v(2))], [im(v(2)), im(v(1))]]);
    let h = fhat_at(&x).with_degree(4);
    let g = v(2).square().sub(&v(0).mul(&v(1)));
    Restriction { is_expected_square: h == g.square(), factor_gram_rank: dense_rank(&g.gram()), h }
}

/// Rank of the Hessian of f at a point.
pub fn hessian_rank_at(x: &[Rational]) -> usize {
    let f = fhat();
    let grad = f.gradient();
    let hess: Vec<Vec<Rational>> = grad.iter().map(|g| (0..NVARS).map(|j| g.partial(j).eval(x)).collect()).collect();
    dense_rank(&hess)
}

/// Coordinates of X = [[x, y], [z, w]] with x = z = 1, y = w = 0.
pub fn named_hessian_point() -> Vec<Rational> {
    QuatMatrix2::new([[Quaternion::one(), Quaternion::zero()], [Quaternion::one(), Quaternion::zero()]]).coords()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemMode {
    /// Rank modulo two seeded primes near 2^61, which must agree.
    Modular { seed: u64 },
    /// Fraction-free elimination over the integers.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicSpace {
    pub dimension: usize,
    pub rows: usize,
    pub confidence: RankConfidence,
    /// Every partial derivative of f composes to zero with the rank-one map.
    pub partials_vanish: bool,
    /// Rank of the 16 x 816 coefficient matrix of the partials.
    pub partials_coeff_rank: usize,
    pub hessian_rank_identity: usize,
    pub hessian_rank_named_point: usize,
}

fn cubic_monomials() -> Vec<Monomial> {
    monomials(NVARS, 3)
}

fn rank_one_point_mod(rng: &mut sampling::SampleRng, p: Prime) -> Vec<ModElem> {
    let params: Vec<ModElem> = (0..NVARS).map(|_| ModElem::new(rng.gen_range(0..p), p)).collect();
    let q = |s: usize| Quaternion::new(params[4 * s], params[4 * s + 1], params[4 * s + 2], params[4 * s + 3]);
    let (x, y, z, w) = (q(0), q(1), q(2), q(3));
    QuatMatrix2::new([[x.mul(&z), x.mul(&w)], [y.mul(&z), y.mul(&w)]]).coords()
}

fn eval_monomial_mod(e: &[u32], x: &[ModElem], p: Prime) -> u64 {
    let mut acc = ModElem::new(1, p);
    for (i, &k) in e.iter().enumerate() {
        for _ in 0..k {
            acc = acc.mul(&x[i]);
        }
    }
    acc.v
}

pub const DEFAULT_RANK_ONE_POINTS: usize = 1300;

fn u_rank_mod(p: Prime, points: usize, seed: u64, cols: &[Monomial]) -> usize {
    let mut rng = sampling::rng(seed ^ p);
    let pts: Vec<Vec<ModElem>> = (0..points).map(|_| rank_one_point_mod(&mut rng, p)).collect();
    let rows: Vec<Vec<(usize, u64)>> = pts
        .par_iter()
        .map(|x| cols.iter().enumerate().map(|(j, e)| (j, eval_monomial_mod(e, x, p))).filter(|e| e.1 != 0).collect())
        .collect();
    sparse_rank_mod(p, cols.len(), rows)
}

/// The symbolic constraint matrix: one row per degree-6 monomial in the
/// parameters, one column per cubic monomial in X.
pub fn rank_one_constraint_matrix() -> ExactMatrix {
    let cols = cubic_monomials();
    let param = rank_one_parameterization();
    let images: Vec<HomogeneousPoly> =
        cols.par_iter().map(|e| HomogeneousPoly::monomial(e.clone(), Rational::one()).compose(&param)).collect();
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    for (j, img) in images.iter().enumerate() {
        for (e, c) in img.terms() {
            let r = *row_of.entry(e.clone()).or_insert_with(|| {
                rows.push(Vec::new());
                rows.len() - 1
            });
            rows[r].push((j, c.clone()));
        }
    }
    ExactMatrix::from_sparse(cols.len(), rows)
}

pub fn cubics_vanishing_on_rank_one(mode: SystemMode, points: usize) -> Result<CubicSpace> {
    let cols = cubic_monomials();
    let (rank, nrows, confidence) = match mode {
        SystemMode::Modular { seed } => {
            let primes = random_primes_near_2_61(3, seed);
            let r0 = u_rank_mod(primes[0], points, seed, &cols);
            let r1 = u_rank_mod(primes[1], points, seed, &cols);
            if r0 == r1 {
                (r0, points, RankConfidence::Probabilistic { primes: primes[..2].to_vec() })
            } else {
                let r2 = u_rank_mod(primes[2], points, seed, &cols);
                if r2 != r0.max(r1) {
                    return Err(Error::Escalation(format!("ranks {r0}, {r1}, {r2} disagree; rerun in exact mode")));
                }
                let keep = if r0 == r2 { primes[0] } else { primes[1] };
                (r2, points, RankConfidence::Probabilistic { primes: vec![keep, primes[2]] })
            }
        }
        SystemMode::Exact => {
            let m = rank_one_constraint_matrix();
            let r = matrix_rank(&m, &RankMode::Exact)?;
            (r.rank, m.nrows(), r.confidence)
        }
    };
    let f = fhat();
    let grad = f.gradient();
    let param = rank_one_parameterization();
    let partials_vanish = grad.par_iter().all(|g| g.compose(&param).is_zero());
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(j, e)| (e, j)).collect();
    let coeff_rows: Vec<Vec<(usize, Rational)>> =
        grad.iter().map(|g| g.terms().map(|(e, c)| (index[e], c.clone())).collect()).collect();
    let partials_coeff_rank = matrix_rank(&ExactMatrix::from_sparse(cols.len(), coeff_rows), &RankMode::Exact)?.rank;
    Ok(CubicSpace {
        dimension: cols.len() - rank,
        rows: nrows,
        confidence,
        partials_vanish,
        partials_coeff_rank,
        hessian_rank_identity: hessian_rank_at(&QuatMatrix2::identity().coords()),
        hessian_rank_named_point: hessian_rank_at(&named_hessian_point()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremality {
    pub dimension: usize,
    pub rows: usize,
    pub unknowns: usize,
    pub confidence: RankConfidence,
    /// (f, I) satisfies every equation exactly.
    pub known_kernel_ok: bool,
}

/// Matrix of (p, A) -> grad p - A grad f in the monomial basis. Columns: the
/// quartic coefficients of p, then A row-major; rows: (i, beta) for the
/// coefficient of x^beta in the i-th component.
pub fn extremality_matrix() -> ExactMatrix {
    let quartics = monomials(NVARS, 4);
    let cubics = cubic_monomials();
    let qidx: HashMap<&Monomial, usize> = quartics.iter().enumerate().map(|(j, e)| (e, j)).collect();
    let offset = quartics.len();
    let grad = fhat().gradient();
    let rows: Vec<Vec<(usize, Rational)>> = (0..NVARS)
        .into_par_iter()
        .flat_map_iter(|i| {
            let grad = &grad;
            let qidx = &qidx;
            cubics.iter().map(move |beta| {
                let mut up = beta.clone();
                up[i] += 1;
                let mut row = vec![(qidx[&up], int(up[i] as i64))];
                for (j, g) in grad.iter().enumerate() {
                    let c = g.coeff(beta);
                    if !c.is_zero() {
                        row.push((offset + NVARS * i + j, -c));
                    }
                }
                row
            })
        })
        .collect();
    ExactMatrix::from_sparse(offset + NVARS * NVARS, rows)
}

pub fn extremality_dimension(mode: SystemMode) -> Result<Extremality> {
    let m = extremality_matrix();
    let rank = match mode {
        SystemMode::Modular { seed } => matrix_rank(&m, &RankMode::ModularSeeded(seed))?,
        SystemMode::Exact => matrix_rank(&m, &RankMode::Exact)?,
    };
    let quartics = monomials(NVARS, 4);
    let f = fhat();
    let mut known: Vec<Rational> = quartics.iter().map(|e| f.coeff(e)).collect();
    for i in 0..NVARS {
        for j in 0..NVARS {
            known.push(if i == j { Rational::one() } else { Rational::zero() });
        }
    }
    let known_kernel_ok = m.apply(&known).iter().all(|x| x.is_zero());
    Ok(Extremality {
        dimension: m.ncols() - rank.rank,
        rows: m.nrows(),
        unknowns: m.ncols(),
        confidence: rank.confidence,
        known_kernel_ok,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExampleCheck {
    Invariance,
    Restriction,
    RankOne,
    NullspaceU,
    Extremal,
}

impl ExampleCheck {
    pub const ALL: [ExampleCheck; 5] = [
        ExampleCheck::Invariance,
        ExampleCheck::Restriction,
        ExampleCheck::RankOne,
        ExampleCheck::NullspaceU,
        ExampleCheck::Extremal,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExampleOptions {
    pub mode: SystemMode,
    pub seed: u64,
    pub sp2_products: usize,
    pub sp2_points: usize,
    pub rank_one_points: usize,
    pub nonneg_samples: usize,
}

impl Default for ExampleOptions {
    fn default() -> Self {
        ExampleOptions {
            mode: SystemMode::Modular { seed: 0 },
            seed: 0,
            sp2_products: 50,
            sp2_points: 20,
            rank_one_points: DEFAULT_RANK_ONE_POINTS,
            nonneg_samples: 100_000,
        }
    }
}

fn confidence_note(c: &RankConfidence) -> String {
    match c {
        RankConfidence::Certified => "exact".into(),
        RankConfidence::Probabilistic { primes } => {
            format!("modular, primes {}", primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
        }
    }
}

fn claim(r: &mut Report, name: &str, expected: usize, got: usize, note: &str) {
    r.pass_if(name, expected == got, format!("expected {expected}, computed {got}{note}"));
}

/// Runs the selected checks and reports each claimed value against the
/// computed one. Modular disagreement is returned as an escalation error.
pub fn example_report(checks: &[ExampleCheck], opts: ExampleOptions) -> Result<Report> {
    let mut r = Report::new("quaternionic quartic");
    r.meta("seed", opts.seed);
    r.meta(
        "mode",
        match opts.mode {
            SystemMode::Modular { .. } => "modular",
            SystemMode::Exact => "exact",
        },
    );
    let f = fhat();
    r.pass_if(
        "expansion",
        f.nvars() == NVARS && f.degree() == 4,
        format!("{} variables, degree {}, {} terms", f.nvars(), f.degree(), f.num_terms()),
    );
    for check in checks {
        match check {
            ExampleCheck::Invariance => {
                let mut rng = sampling::rng(opts.seed);
                let mut ok = true;
                for t in 0..opts.sp2_products {
                    let (p, q) = (random_sp2(&mut rng), random_sp2(&mut rng));
                    match sp2_invariance_check(&p, &q, opts.sp2_points, opts.seed.wrapping_add(t as u64)) {
                        Ok(true) => {}
                        _ => ok = false,
                    }
                }
                let sym = sp2_symbolic_invariance(
                    &QuatMatrix2::diag(random_unit(&mut rng), random_unit(&mut rng)),
                    &rational_rotation(&int(2)),
                );
                r.pass_if(
                    "sp2-invariance",
                    ok && matches!(sym, Ok(true)),
                    format!(
                        "{} unitary pairs at {} points each, plus one symbolic identity",
                        opts.sp2_products, opts.sp2_points
                    ),
                );
                match sampling::find_negative_point(f, opts.nonneg_samples, opts.seed) {
                    None => r.push(
                        "nonnegativity",
                        Status::SampledOk,
                        format!("{} seeded integer points", opts.nonneg_samples),
                    ),
                    Some(x) => {
                        r.push("nonnegativity", Status::Fail, format!("negative at {}", crate::error::fmt_vec(&x)))
                    }
                }
            }
            ExampleCheck::Restriction => {
                let res = restriction_h();
                r.pass_if("restriction", res.is_expected_square, format!("h = {} with x = x1, y = w1", res.h));
                r.pass_if(
                    "restriction-rank",
                    res.factor_gram_rank == 3,
                    format!(
                        "Gram rank of z^2 - x1 w1 is {}, a product of linear forms has at most 2",
                        res.factor_gram_rank
                    ),
                );
            }
            ExampleCheck::RankOne => {
                let comp = rank_one_composition();
                r.pass_if(
                    "rank-one-vanishing",
                    comp.is_zero(),
                    format!("degree 8 composition has {} terms", comp.num_terms()),
                );
            }
            ExampleCheck::NullspaceU => match cubics_vanishing_on_rank_one(opts.mode, opts.rank_one_points) {
                Ok(u) => {
                    let note = format!(" ({}, {} rows x 816)", confidence_note(&u.confidence), u.rows);
                    claim(&mut r, "dim-U", 16, u.dimension, &note);
                    r.pass_if("partials-in-U", u.partials_vanish, "each partial derivative composes to zero");
                    claim(&mut r, "partials-independent", 16, u.partials_coeff_rank, " (coefficient rank)");
                    claim(&mut r, "hessian-rank-identity", 16, u.hessian_rank_identity, "");
                    claim(
                        &mut r,
                        "hessian-rank-named-point",
                        16,
                        u.hessian_rank_named_point,
                        " at x=z=1, y=w=0, a rank-one zero of f",
                    );
                }
                Err(e @ Error::Escalation(_)) => return Err(e),
                Err(e) => r.push("dim-U", Status::Fail, e.to_string()),
            },
            ExampleCheck::Extremal => match extremality_dimension(opts.mode) {
                Ok(l) => {
                    let note = format!(" ({}, {} rows x {})", confidence_note(&l.confidence), l.rows, l.unknowns);
                    claim(&mut r, "dim-L", 1, l.dimension, &note);
                    r.pass_if("known-kernel", l.known_kernel_ok, "(f, I) satisfies every equation");
                    r.pass_if("extreme-ray", l.dimension == 1 && l.known_kernel_ok, "kernel is spanned by (f, I)");
                }
                Err(e @ Error::Escalation(_)) => return Err(e),
                Err(e) => r.push("dim-L", Status::Fail, e.to_string()),
            },
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;

    #[test]
    fn quaternion_axioms() {
        let i = Quaternion::from_ints(0, 1, 0, 0);
        let j = Quaternion::from_ints(0, 0, 1, 0);
        let k = Quaternion::from_ints(0, 0, 0, 1);
        assert_eq!(i.mul(&j), k);
        assert_eq!(i.mul(&i), Quaternion::from_ints(-1, 0, 0, 0));
        assert_eq!(i.mul(&j).mul(&k), Quaternion::from_ints(-1, 0, 0, 0));
        assert_eq!(Quaternion::from_ints(1, 1, 1, 1).norm_sq(), int(4));
    }

    #[test]
    fn moore_examples() {
        assert_eq!(moore_det(&QuatMatrix2::identity()).unwrap(), int(1));
        let z = QuatMatrix2::new([
            [Quaternion::from_ints(2, 0, 0, 0), Quaternion::from_ints(0, 1, 0, 0)],
            [Quaternion::from_ints(0, -1, 0, 0), Quaternion::from_ints(3, 0, 0, 0)],
        ]);
        assert_eq!(moore_det(&z).unwrap(), int(5));
        let z = QuatMatrix2::new([
            [Quaternion::from_ints(2, 0, 0, 0), Quaternion::from_ints(1, 1, 0, 0)],
            [Quaternion::from_ints(1, -1, 0, 0), Quaternion::from_ints(1, 0, 0, 0)],
        ]);
        assert_eq!(moore_det(&z).unwrap(), int(0));
        let bad = QuatMatrix2::new([
            [Quaternion::from_ints(2, 0, 0, 0), Quaternion::from_ints(0, 1, 0, 0)],
            [Quaternion::from_ints(0, 1, 0, 0), Quaternion::from_ints(3, 0, 0, 0)],
        ]);
        assert!(moore_det(&bad).is_err());
    }

    #[test]
    fn fhat_basics() {
        let f = fhat();
        assert_eq!((f.nvars(), f.degree(), f.num_terms()), (16, 4, 96));
        assert_eq!(f.eval(&QuatMatrix2::identity().coords()), int(1));
        let ones = QuatMatrix2::new([[Quaternion::one(), Quaternion::one()], [Quaternion::one(), Quaternion::one()]]);
        assert_eq!(f.eval(&ones.coords()), int(0));
        let mut rng = sampling::rng(5);
        for _ in 0..20 {
            let x = QuatMatrix2::from_coords(&sampling::rational_vector(&mut rng, 16, 5, 3));
            assert_eq!(f.eval(&x.coords()), moore_det(&x.mul(&x.conj_transpose())).unwrap());
        }
    }

    #[test]
    fn invariance_examples() {
        let p = QuatMatrix2::diag(Quaternion::new(rat(3, 5), rat(4, 5), int(0), int(0)), Quaternion::one());
        assert!(sp2_invariance_check(&p, &QuatMatrix2::identity(), 10, 1).unwrap());
        assert!(sp2_invariance_check(&rational_rotation(&int(2)), &swap_matrix(), 10, 2).unwrap());
        let not_unitary = QuatMatrix2::diag(Quaternion::from_ints(2, 0, 0, 0), Quaternion::one());
        assert!(sp2_invariance_check(&not_unitary, &QuatMatrix2::identity(), 1, 0).is_err());
        let mut rng = sampling::rng(9);
        assert!(random_sp2(&mut rng).is_unitary());
    }

    #[test]
    fn restriction_identity() {
        let r = restriction_h();
        assert!(r.is_expected_square);
        assert_eq!(r.factor_gram_rank, 3);
        assert_eq!(r.h.eval(&[int(1), int(1), int(1)]), int(0));
        assert_eq!(r.h.eval(&[int(0), int(0), int(1)]), int(1));
    }

    #[test]
    fn rank_one_spot() {
        let q = |a, b, c, d| Quaternion::from_ints(a, b, c, d);
        let (x, y, z, w) = (q(1, 0, 0, 0), q(0, 1, 0, 0), q(0, 0, 1, 0), q(0, 0, 0, 1));
        let m = QuatMatrix2::new([[x.mul(&z), x.mul(&w)], [y.mul(&z), y.mul(&w)]]);
        assert_eq!(fhat().eval(&m.coords()), int(0));
    }

    #[test]
    fn hessian_ranks() {
        assert_eq!(hessian_rank_at(&QuatMatrix2::identity().coords()), 16);
        assert_eq!(hessian_rank_at(&named_hessian_point()), 4);
    }
}
