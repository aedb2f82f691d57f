use super::{linalg::sparse_rank_generic, Rational, Ring};
use num_bigint::BigInt;
use num_prime::nt_funcs::is_prime64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Prime = u64;

/// Residue modulo a prime below 2^62.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModElem {
    pub v: u64,
    pub p: u64,
}

impl ModElem {
    pub fn new(v: u64, p: u64) -> Self {
        ModElem { v: v % p, p }
    }

    pub fn from_i64(x: i64, p: u64) -> Self {
        let r = x.rem_euclid(p as i64) as u64;
        ModElem::new(r, p)
    }

    pub fn from_bigint(x: &BigInt, p: u64) -> Self {
        let r = x % BigInt::from(p);
        let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
        ModElem::new(r.to_u64().expect("residue fits"), p)
    }

    /// None when the denominator is divisible by p.
    pub fn from_rational(q: &Rational, p: u64) -> Option<Self> {
        let d = Self::from_bigint(q.denom(), p);
        if d.v == 0 {
            return None;
        }
        Some(Self::from_bigint(q.numer(), p).mul(&d.inv()))
    }

    pub fn is_zero(&self) -> bool {
        self.v == 0
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = ModElem::new(1, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero mod p");
        self.pow(self.p - 2)
    }
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

impl Ring for ModElem {
    fn add(&self, o: &Self) -> Self {
        let s = self.v + o.v;
        ModElem { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        ModElem { v: submod(self.v, o.v, self.p), p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        ModElem { v: mulmod(self.v, o.v, self.p), p: self.p }
    }
    fn neg(&self) -> Self {
        ModElem { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

/// `count` distinct primes just below 2^61, chosen from a seeded offset.
pub fn random_primes_near_2_61(count: usize, seed: u64) -> Vec<Prime> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut out: Vec<Prime> = Vec::with_capacity(count);
    while out.len() < count {
        let mut c = (1u64 << 61) - rng.gen_range(1u64..(1u64 << 40));
        c |= 1;
        while !is_prime64(c) {
            c -= 2;
        }
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Rank over F_p of a sparse matrix given by rows of (column, residue).
pub fn sparse_rank_mod(p: Prime, ncols: usize, rows: Vec<Vec<(usize, u64)>>) -> usize {
    sparse_rank_generic(&ModOps { p }, ncols, rows)
}

pub(crate) struct ModOps {
    pub p: u64,
}

impl super::linalg::ElimOps for ModOps {
    type T = u64;

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn zero(&self) -> u64 {
        0
    }

    fn eliminate(&self, t: &[(usize, u64)], piv: &[(usize, u64)], c: usize) -> Vec<(usize, u64)> {
        let p = self.p;
        let tc = t.iter().find(|e| e.0 == c).map(|e| e.1).unwrap_or(0);
        let pc = piv.iter().find(|e| e.0 == c).map(|e| e.1).expect("pivot entry present");
        let f = mulmod(tc, ModElem::new(pc, p).inv().v, p);
        let mut out = Vec::with_capacity(t.len() + piv.len());
        let (mut i, mut j) = (0, 0);
        while i < t.len() || j < piv.len() {
            let ci = t.get(i).map_or(usize::MAX, |e| e.0);
            let cj = piv.get(j).map_or(usize::MAX, |e| e.0);
            let (col, v) = if ci < cj {
                i += 1;
                (ci, t[i - 1].1)
            } else if cj < ci {
                j += 1;
                (cj, submod(0, mulmod(f, piv[j - 1].1, p), p))
            } else {
                i += 1;
                j += 1;
                (ci, submod(t[i - 1].1, mulmod(f, piv[j - 1].1, p), p))
            };
            if v != 0 && col != c {
                out.push((col, v));
            }
        }
        out
    }

    fn prepare_dense_pivot(&self, piv: &mut [u64], c: usize) {
        let inv = ModElem::new(piv[c], self.p).inv().v;
        for x in piv.iter_mut().skip(c) {
            *x = mulmod(*x, inv, self.p);
        }
    }

    fn eliminate_dense(&self, t: &mut [u64], piv: &[u64], c: usize) {
        let f = t[c];
        if f == 0 {
            return;
        }
        let p = self.p;
        for j in c..t.len() {
            if piv[j] != 0 {
                t[j] = submod(t[j], mulmod(f, piv[j], p), p);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_distinct_and_near_2_61() {
        let ps = random_primes_near_2_61(3, 1);
        assert_eq!(ps.len(), 3);
        for &p in &ps {
            assert!(is_prime64(p));
            assert!(p < 1 << 61 && p > (1 << 61) - (1 << 41));
        }
        assert_ne!(ps[0], ps[1]);
        assert_eq!(ps, random_primes_near_2_61(3, 1));
    }

    #[test]
    fn field_axioms_small() {
        let p = 1_000_000_007;
        let a = ModElem::new(123_456, p);
        assert_eq!(a.mul(&a.inv()).v, 1);
        assert_eq!(ModElem::from_i64(-1, p).v, p - 1);
        let half = ModElem::from_rational(&crate::exact_algebra::rat(1, 2), p).unwrap();
        assert_eq!(half.add(&half).v, 1);
    }
}
