//! Property tests for the algebraic invariants. Inputs are drawn from seeds
//! so that every case is an exact rational object.

#![allow(clippy::needless_range_loop)]

mod common;

use common::{cone_pair, cubic_pairs, library_pairs, random_form, square_weight};
use hyperwron::bezoutian_cert::{build_hyperzout, mu2_hyperzout_to_sos, parameterized_bezoutian, HyperzoutWitness};
use hyperwron::cli::confirm_refutation;
use hyperwron::dimension_gate::{binom_ratio_lemma_check, closed_form_g, g_binomial, wronskian_gate};
use hyperwron::exact_algebra::{
    dense_inverse, int, lagrange_diagonalize, matrix_rank, monomials, ExactMatrix, GradedTuple, HomogeneousPoly,
    Interval, PolyMap, RankMode, Rational, UnivariatePoly, WeightedSos,
};
use hyperwron::hyperbolic::{
    check_hyperbolic, cone_membership, eigen_poly, sample_cone_point, ConeMembership, ConeSampleStyle, HyperbolicPair,
    Strategy, Verdict,
};
use hyperwron::manifest::{Manifest, ManifestKind, VerdictRecord};
use hyperwron::quaternion_example::{fhat, moore_det, random_sp2, QuatMatrix2, Quaternion};
use hyperwron::sampling::{self, SampleRng};
use hyperwron::wronskian_cert::{build_hyperwron, sos_to_hyperwron, HyperwronWitness, SosOptions};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

fn random_map(rng: &mut SampleRng, m: usize, n: usize, k: u32) -> PolyMap {
    PolyMap::new(m, k, (0..n).map(|_| random_form(rng, m, k, 3)).collect()).unwrap()
}

fn random_quaternion(rng: &mut SampleRng) -> Quaternion<Rational> {
    let mut c = || sampling::rational(rng, 7, 3);
    Quaternion::new(c(), c(), c(), c())
}

fn random_quat_matrix(rng: &mut SampleRng) -> QuatMatrix2<Rational> {
    QuatMatrix2::from_coords(&sampling::rational_vector(rng, 16, 5, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn directional_derivative_duality(seed in any::<u64>(), m in 1usize..4, d in 1u32..5, k in 0u32..5) {
        prop_assume!(k <= d);
        let mut rng = sampling::rng(seed);
        let p = random_form(&mut rng, m, d, 4);
        let u = sampling::rational_vector(&mut rng, m, 5, 3);
        let x = sampling::rational_vector(&mut rng, m, 5, 3);
        let lhs = p.directional(&u, k).eval(&x);
        let rhs = factorial(k) / factorial(d - k) * p.directional(&x, d - k).eval(&u);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_identity(seed in any::<u64>(), m in 1usize..5, d in 0u32..5) {
        let mut rng = sampling::rng(seed);
        let p = random_form(&mut rng, m, d, 6);
        let sum = (0..m).fold(HomogeneousPoly::zero(m, d), |acc, i| {
            acc.add(&HomogeneousPoly::var(m, i).mul(&p.partial(i)))
        });
        prop_assert_eq!(sum, p.scale(&int(d as i64)));
    }

    #[test]
    fn composition_degree(seed in any::<u64>(), m in 1usize..4, n in 1usize..4, d in 1u32..4, k in 1u32..3) {
        let mut rng = sampling::rng(seed);
        let p = random_form(&mut rng, n, d, 4);
        let phi = random_map(&mut rng, m, n, k);
        let q = p.compose(&phi);
        prop_assert_eq!(q.degree(), d * k);
        let x = sampling::rational_vector(&mut rng, m, 4, 2);
        prop_assert_eq!(q.eval(&x), p.eval(&phi.eval(&x)));
    }

    #[test]
    fn sturm_counts_distinct_roots(roots in prop::collection::btree_set((-40i64..40, 1i64..6), 1..7)) {
        let rs: Vec<Rational> = roots.iter().map(|&(a, b)| Rational::new(a.into(), b.into())).collect();
        let mut distinct = rs.clone();
        distinct.sort();
        distinct.dedup();
        let f = distinct.iter().fold(UnivariatePoly::constant(int(1)), |acc, r| acc.mul(&UnivariatePoly::linear_root(r.clone())));
        prop_assert_eq!(f.sturm_count(&Interval::real_line()).unwrap(), distinct.len());
        prop_assert!(f.is_real_rooted());
    }

    #[test]
    fn lagrange_reconstruction_and_sylvester(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = sampling::rng(seed);
        let q = random_form(&mut rng, n, 2, 5);
        let diag = lagrange_diagonalize(&q).unwrap();
        prop_assert_eq!(diag.to_poly(), q.clone());
        let a: Vec<Vec<Rational>> = (0..n).map(|_| sampling::rational_vector(&mut rng, n, 4, 2)).collect();
        prop_assume!(dense_inverse(&a).is_some());
        let moved = q.compose(&PolyMap::linear(&a).unwrap());
        prop_assert_eq!(lagrange_diagonalize(&moved).unwrap().signature(), diag.signature());
    }

    #[test]
    fn exact_and_modular_rank_agree(seed in any::<u64>(), r in 1usize..30, c in 1usize..30, fill in 1u32..4) {
        let mut rng = sampling::rng(seed);
        // low-rank structure so that ranks are not always full
        let basis: Vec<Vec<Rational>> = (0..(r.min(c) / fill as usize).max(1)).map(|_| sampling::rational_vector(&mut rng, c, 9, 1)).collect();
        let rows: Vec<Vec<Rational>> = (0..r).map(|_| {
            let coef: Vec<Rational> = (0..basis.len()).map(|_| sampling::rational(&mut rng, 3, 1)).collect();
            (0..c).map(|j| basis.iter().zip(&coef).fold(Rational::zero(), |acc, (b, x)| acc + &b[j] * x)).collect()
        }).collect();
        let m = ExactMatrix::from_dense(&rows);
        let exact = matrix_rank(&m, &RankMode::Exact).unwrap().rank;
        let modular = matrix_rank(&m, &RankMode::ModularSeeded(seed)).unwrap().rank;
        prop_assert_eq!(exact, modular);
        prop_assert!(exact <= basis.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigen_polynomial_is_homogeneous(seed in any::<u64>(), which in 0usize..5, s in (1i64..9, 1i64..5)) {
        let (_, pair) = library_pairs().swap_remove(which);
        let mut rng = sampling::rng(seed);
        let x = sampling::rational_vector(&mut rng, pair.nvars(), 6, 3);
        let s = Rational::new(s.0.into(), s.1.into());
        let sx: Vec<Rational> = x.iter().map(|a| a * &s).collect();
        let (f, g) = (eigen_poly(&pair, &x).unwrap(), eigen_poly(&pair, &sx).unwrap());
        let d = pair.degree() as usize;
        for i in 0..=d {
            let mut scale = Rational::one();
            for _ in i..d {
                scale *= &s;
            }
            prop_assert_eq!(g.coeff(i), f.coeff(i) * scale);
        }
    }

    #[test]
    fn direction_is_interior(which in 0usize..8) {
        let mut pairs = library_pairs();
        pairs.extend(cubic_pairs());
        let (_, pair) = pairs.swap_remove(which);
        prop_assert_eq!(cone_membership(&pair, pair.e()).unwrap(), ConeMembership::Interior);
    }

    #[test]
    fn interior_direction_gives_same_cone(seed in any::<u64>(), which in 0usize..5) {
        let (_, pair) = library_pairs().swap_remove(which);
        let c = sample_cone_point(&pair, seed, ConeSampleStyle::Interior).unwrap();
        let v = check_hyperbolic(pair.p(), &c, &Strategy::Sampled { samples: 40, seed }).unwrap();
        prop_assert!(!v.is_refuted());
        let other = HyperbolicPair::with_verdict(pair.p().clone(), c, v).unwrap();
        let mut rng = sampling::rng(seed ^ 1);
        for _ in 0..100 {
            let x = sampling::rational_vector(&mut rng, pair.nvars(), 6, 2);
            let (a, b) = (cone_membership(&pair, &x).unwrap(), cone_membership(&other, &x).unwrap());
            prop_assert_eq!(a.in_closed_cone(), b.in_closed_cone());
            prop_assert_eq!(a == ConeMembership::Interior, b == ConeMembership::Interior);
        }
    }

    #[test]
    fn derivative_cone_contains_cone(seed in any::<u64>(), which in 0usize..8, i in 0u64..9) {
        let mut pairs = library_pairs();
        pairs.extend(cubic_pairs());
        let (_, pair) = pairs.swap_remove(which);
        let de = pair.p().directional(pair.e(), 1);
        let dpair = HyperbolicPair::with_verdict(de, pair.e().to_vec(), Verdict::Certified("derivative".into())).unwrap();
        let (x, _) = cone_pair(&pair, i + 3 * (seed % 5));
        prop_assert!(cone_membership(&dpair, &x).unwrap().in_closed_cone());
    }

    #[test]
    fn quadratic_refutations_confirm(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = sampling::rng(seed);
        let q = random_form(&mut rng, n, 2, 4);
        let e = sampling::rational_vector(&mut rng, n, 3, 1);
        prop_assume!(e.iter().any(|c| !c.is_zero()));
        if let Verdict::Refuted(w) = check_hyperbolic(&q, &e, &Strategy::Quadratic).unwrap() {
            prop_assert!(confirm_refutation(&q, &e, &w).unwrap());
        }
    }

    #[test]
    fn sos_round_trip(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let (m, s, count) = (rng.gen_range(1..=4usize), rng.gen_range(1..=3u32), rng.gen_range(0..=5usize));
        let terms = (0..count).map(|_| (square_weight(&mut rng), random_form(&mut rng, m, s, 5))).collect();
        let sos = WeightedSos::new(m, s, terms).unwrap();
        let w = sos_to_hyperwron(&sos, SosOptions::default()).unwrap();
        prop_assert_eq!(build_hyperwron(&w), sos.to_poly());
    }

    #[test]
    fn four_square_split_round_trip(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let m = rng.gen_range(1..=3usize);
        let terms = (0..3).map(|_| (sampling::rational(&mut rng, 30, 7).abs(), random_form(&mut rng, m, 1, 4))).collect();
        let sos = WeightedSos::new(m, 1, terms).unwrap();
        let w = sos_to_hyperwron(&sos, SosOptions { n: None, four_square: true }).unwrap();
        prop_assert_eq!(build_hyperwron(&w), sos.to_poly());
    }

    #[test]
    fn hyperwron_degree_and_nonnegativity(seed in any::<u64>(), which in 0usize..8, k in 1u32..3) {
        let mut pairs = library_pairs();
        pairs.extend(cubic_pairs());
        let (_, pair) = pairs.swap_remove(which);
        let (u, v) = cone_pair(&pair, seed % 12);
        let mut rng = sampling::rng(seed);
        let phi = random_map(&mut rng, 2, pair.nvars(), k);
        let w = HyperwronWitness::new(pair.clone(), u, v, phi).unwrap();
        let q = build_hyperwron(&w);
        prop_assert_eq!(q.degree(), 2 * (pair.degree() - 1) * k);
        prop_assert!(sampling::find_negative_point(&q, 2000, seed).is_none());
    }

    #[test]
    fn hyperwron_is_linear_in_u(seed in any::<u64>(), which in 0usize..8, s in (1i64..9, 1i64..5)) {
        let mut pairs = library_pairs();
        pairs.extend(cubic_pairs());
        let (_, pair) = pairs.swap_remove(which);
        let (u, v) = cone_pair(&pair, seed % 12);
        let s = Rational::new(s.0.into(), s.1.into());
        let su: Vec<Rational> = u.iter().map(|a| a * &s).collect();
        let phi = PolyMap::identity(pair.nvars());
        let base = build_hyperwron(&HyperwronWitness::new(pair.clone(), u, v.clone(), phi.clone()).unwrap());
        let scaled = build_hyperwron(&HyperwronWitness::new(pair, su, v, phi).unwrap());
        prop_assert_eq!(scaled, base.scale(&s));
    }

    #[test]
    fn bezoutian_symmetric_and_graded(seed in any::<u64>(), which in 0usize..8) {
        let mut pairs = library_pairs();
        pairs.extend(cubic_pairs());
        let (_, pair) = pairs.swap_remove(which);
        let mut rng = sampling::rng(seed);
        let u = sampling::rational_vector(&mut rng, pair.nvars(), 5, 3);
        let v = sampling::rational_vector(&mut rng, pair.nvars(), 5, 3);
        let b = parameterized_bezoutian(&pair, &u, &v).unwrap();
        let d = pair.degree() as usize;
        prop_assert_eq!(b.len(), d);
        for j in 0..d {
            for l in 0..d {
                prop_assert_eq!(&b[j][l], &b[l][j]);
                prop_assert_eq!(b[j][l].degree() as usize, 2 * (d - 1) - (j + l));
            }
        }
    }

    #[test]
    fn mu2_hyperzout_collapses_to_squares(seed in any::<u64>(), which in 0usize..8) {
        let mut pairs = library_pairs();
        pairs.extend(cubic_pairs());
        let (_, pair) = pairs.swap_remove(which);
        let (u, v) = cone_pair(&pair, seed % 12);
        let mut rng = sampling::rng(seed);
        let m = pair.nvars();
        let live = vec![random_form(&mut rng, m, 0, 4), random_form(&mut rng, m, 1, 4)];
        let xi = GradedTuple::from_live(m, pair.degree() as usize, 1, live).unwrap();
        let w = HyperzoutWitness::new(pair, u, v, PolyMap::identity(m), xi).unwrap();
        let eta = build_hyperzout(&w).unwrap();
        let sos = mu2_hyperzout_to_sos(&w).unwrap();
        prop_assert_eq!(sos.to_poly(), eta);
        prop_assert!(sos.terms().iter().all(|(c, _)| !c.is_negative()));
    }

    #[test]
    fn gate_sides_grow_with_m(m in 3u64..30, y in 2u64..10) {
        let (a, b) = (wronskian_gate(m, y), wronskian_gate(m + 1, y));
        prop_assert!(b.lhs > a.lhs);
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            prop_assert_eq!(ra.profile, rb.profile);
            prop_assert!(rb.rhs > ra.rhs);
        }
    }

    #[test]
    fn closed_forms_match_binomials(y in 2u64..60, kk in 1u64..30) {
        let k = 1 + (kk - 1) % (y / 2);
        for m in [4u64, 5] {
            let closed = closed_form_g(m, &int(k as i64), &int(y as i64)).unwrap();
            prop_assert_eq!(closed, Rational::from_integer(g_binomial(m, k, y)));
        }
    }

    #[test]
    fn quaternion_norm_is_multiplicative(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let (x, y) = (random_quaternion(&mut rng), random_quaternion(&mut rng));
        prop_assert_eq!(x.mul(&y).norm_sq(), x.norm_sq() * y.norm_sq());
    }

    #[test]
    fn moore_determinant_is_multiplicative(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let (p, x) = (random_quat_matrix(&mut rng), random_quat_matrix(&mut rng));
        let xx = x.mul(&x.conj_transpose());
        let lhs = moore_det(&p.mul(&xx).mul(&p.conj_transpose())).unwrap();
        let rhs = moore_det(&p.mul(&p.conj_transpose())).unwrap() * moore_det(&xx).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quartic_is_sp2_invariant(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let (p, q) = (random_sp2(&mut rng), random_sp2(&mut rng));
        prop_assert!(p.is_unitary() && q.is_unitary());
        let f = fhat();
        for _ in 0..5 {
            let x = sampling::rational_vector(&mut rng, 16, 6, 4);
            let moved = p.mul(&QuatMatrix2::from_coords(&x)).mul(&q).coords();
            prop_assert_eq!(f.eval(&moved), f.eval(&x));
        }
    }

    #[test]
    fn manifest_round_trip(seed in any::<u64>(), kind in 0usize..3, k in 1u32..3) {
        let mut rng = sampling::rng(seed);
        let (_, pair) = library_pairs().swap_remove(seed as usize % 5);
        let n = pair.nvars();
        let m = rng.gen_range(1..=3usize);
        let vec_ = |rng: &mut SampleRng| sampling::rational_vector(rng, n, 9, 5);
        let phi = if rng.gen_bool(0.3) { PolyMap::identity(n) } else { random_map(&mut rng, m, n, k) };
        let vars = phi.nvars_in();
        let kind = [ManifestKind::Hyperwron, ManifestKind::Hyperzout, ManifestKind::Interlacer][kind];
        let mu = 2;
        let verdict = match rng.gen_range(0..4) {
            0 => None,
            1 => Some(VerdictRecord::Certified { reason: "a reason: with \"quotes\"".into() }),
            2 => Some(VerdictRecord::Sampled { n: rng.gen_range(1..500), seed: rng.gen() }),
            _ => Some(VerdictRecord::Refuted { witness: vec!["1/2".into(), "-3".into()] }),
        };
        let manifest = Manifest {
            kind,
            p: pair.p().clone(),
            e: pair.e().to_vec(),
            u: (kind != ManifestKind::Interlacer).then(|| vec_(&mut rng)),
            v: (kind != ManifestKind::Interlacer).then(|| vec_(&mut rng)),
            mu: (kind == ManifestKind::Hyperzout).then_some(mu),
            xi: (kind == ManifestKind::Hyperzout).then(|| {
                (0..mu as u32).map(|j| random_form(&mut rng, vars, j * phi.degree(), 3)).collect()
            }),
            interlacer: (kind == ManifestKind::Interlacer).then(|| random_form(&mut rng, n, pair.degree() - 1, 4)),
            claim: random_form(&mut rng, vars, 2 * phi.degree(), 6),
            phi,
            verdict,
            seed: rng.gen(),
            samples: rng.gen_range(1..100_000),
        };
        let dir = tempfile::tempdir().unwrap();
        let path = manifest.write(dir.path(), "case").unwrap();
        prop_assert_eq!(Manifest::read(&path).unwrap(), manifest);
    }
}

#[test]
fn binomial_ratio_sweep() {
    for l in 2..=14u64 {
        for lp in 1..l {
            for b in 1..=14u64 {
                for a in 0..b {
                    assert!(binom_ratio_lemma_check(lp, l, a, b).unwrap(), "fails at l'={lp}, l={l}, a={a}, b={b}");
                }
            }
        }
    }
    assert!(binom_ratio_lemma_check(3, 3, 0, 1).is_err());
}

#[test]
fn monomial_count_matches_dimension() {
    let direct: BigInt = monomials(4, 3).len().into();
    assert_eq!(direct, hyperwron::exact_algebra::dim_forms(4, 3));
}
