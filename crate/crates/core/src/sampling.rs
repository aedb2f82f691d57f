//! Seeded random rational points.

use crate::exact_algebra::Rational;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational a/b with |a| <= num_bound and 1 <= b <= den_bound.
pub fn rational(rng: &mut SampleRng, num_bound: i64, den_bound: i64) -> Rational {
    let n = rng.gen_range(-num_bound..=num_bound);
    let d = rng.gen_range(1..=den_bound);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_vector(rng: &mut SampleRng, n: usize, num_bound: i64, den_bound: i64) -> Vec<Rational> {
    (0..n).map(|_| rational(rng, num_bound, den_bound)).collect()
}

/// Integer point with entries in [-bound, bound], never all zero.
pub fn integer_vector(rng: &mut SampleRng, n: usize, bound: i64) -> Vec<BigInt> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(BigInt::from).collect();
        }
    }
}

/// Evaluates a form at `samples` seeded integer points and returns the first
/// point where it is negative. Homogeneity makes integer points enough.
pub fn find_negative_point(
    q: &crate::exact_algebra::HomogeneousPoly,
    samples: usize,
    seed: u64,
) -> Option<Vec<Rational>> {
    use num_integer::Integer;
    use num_traits::{One, Signed};
    use rayon::prelude::*;
    let l = q.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let qi = q.scale(&Rational::from_integer(l));
    let n = q.nvars();
    (0..samples as u64)
        .into_par_iter()
        .find_first(|&i| {
            let mut r = rng(seed.wrapping_mul(0x2545_f491_4f6c_dd1d).wrapping_add(i));
            let x = integer_vector(&mut r, n, 10);
            qi.eval_scaled_integer(&x).is_negative()
        })
        .map(|i| {
            let mut r = rng(seed.wrapping_mul(0x2545_f491_4f6c_dd1d).wrapping_add(i));
            integer_vector(&mut r, n, 10).into_iter().map(Rational::from_integer).collect()
        })
}
