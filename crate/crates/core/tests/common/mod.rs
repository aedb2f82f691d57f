#![allow(dead_code)]

use hyperwron::exact_algebra::{monomials, rvec, HomogeneousPoly, Rational};
use hyperwron::hyperbolic::{families, sample_cone_point, ConeSampleStyle, HyperbolicPair};
use hyperwron::sampling::{self, SampleRng};
use rand::Rng;

pub fn x1x2x3() -> HyperbolicPair {
    families::product_of_linear(&[rvec(&[1, 0, 0]), rvec(&[0, 1, 0]), rvec(&[0, 0, 1])], rvec(&[1, 1, 1])).unwrap()
}

/// The pairs every soundness check runs over, with display names.
pub fn library_pairs() -> Vec<(&'static str, HyperbolicPair)> {
    vec![
        ("x1x2x3 wrt (1,1,1)", x1x2x3()),
        ("e2 in 4 vars wrt (1,1,1,1)", families::elementary_symmetric(4, 2).unwrap()),
        ("2x2 symmetric det wrt I", families::det_symmetric(2).unwrap()),
        ("Lorentz wrt (1,1,0)", families::lorentz(rvec(&[1, 1, 0])).unwrap()),
        ("Lorentz wrt (1,1,1,1)", families::lorentz(rvec(&[1, 1, 1, 1])).unwrap()),
    ]
}

pub fn cubic_pairs() -> Vec<(&'static str, HyperbolicPair)> {
    vec![
        ("x1x2x3", x1x2x3()),
        ("e3 in 4 vars", families::elementary_symmetric(4, 3).unwrap()),
        ("3x3 symmetric det", families::det_symmetric(3).unwrap()),
    ]
}

const STYLES: [ConeSampleStyle; 3] = [ConeSampleStyle::Interior, ConeSampleStyle::Shifted, ConeSampleStyle::Boundary];

/// The i-th seeded (u, v) pair in the closed cone, cycling through interior,
/// shifted and boundary points.
pub fn cone_pair(pair: &HyperbolicPair, i: u64) -> (Vec<Rational>, Vec<Rational>) {
    let u = sample_cone_point(pair, 1000 + 2 * i, STYLES[i as usize % 3]).unwrap();
    let v = sample_cone_point(pair, 1001 + 2 * i, STYLES[(i as usize / 3) % 3]).unwrap();
    (u, v)
}

pub fn random_form(rng: &mut SampleRng, m: usize, deg: u32, bound: i64) -> HomogeneousPoly {
    let terms: Vec<_> = monomials(m, deg).into_iter().map(|e| (e, sampling::rational(rng, bound, 3))).collect();
    HomogeneousPoly::from_terms(m, deg, terms).unwrap()
}

/// A random square rational weight, possibly zero.
pub fn square_weight(rng: &mut SampleRng) -> Rational {
    let r = Rational::new(rng.gen_range(0..5).into(), rng.gen_range(1..4).into());
    &r * &r
}
