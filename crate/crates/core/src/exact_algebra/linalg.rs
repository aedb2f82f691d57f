use super::{random_primes_near_2_61, ModElem, Prime, Rational, UnivariatePoly};
use crate::error::{pre_err, Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::HashSet;

/// Sparse matrix with an explicit scalar domain. Rows are lists of
/// (column, value) sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactMatrix {
    Rational { ncols: usize, rows: Vec<Vec<(usize, Rational)>> },
    Modular { ncols: usize, p: Prime, rows: Vec<Vec<(usize, u64)>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankMode {
    /// Fraction-free elimination over Z; certified.
    Exact,
    /// Reduction modulo the given primes; all must agree.
    Modular(Vec<Prime>),
    /// Two random primes near 2^61 drawn from the seed.
    ModularSeeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankConfidence {
    Certified,
    Probabilistic { primes: Vec<Prime> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub confidence: RankConfidence,
}

impl ExactMatrix {
    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::Rational {
            ncols,
            rows: rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect())
                .collect(),
        }
    }

    pub fn from_sparse(ncols: usize, mut rows: Vec<Vec<(usize, Rational)>>) -> Self {
        for r in &mut rows {
            r.retain(|e| !e.1.is_zero());
            r.sort_by_key(|e| e.0);
        }
        ExactMatrix::Rational { ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        match self {
            ExactMatrix::Rational { rows, .. } => rows.len(),
            ExactMatrix::Modular { rows, .. } => rows.len(),
        }
    }

    pub fn ncols(&self) -> usize {
        match self {
            ExactMatrix::Rational { ncols, .. } | ExactMatrix::Modular { ncols, .. } => *ncols,
        }
    }

    /// Reduction of a rational matrix modulo p; None if a denominator dies.
    pub fn reduce_mod(&self, p: Prime) -> Option<Vec<Vec<(usize, u64)>>> {
        match self {
            ExactMatrix::Rational { rows, .. } => rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(j, v)| ModElem::from_rational(v, p).map(|m| (*j, m.v)))
                        .filter(|e| e.as_ref().is_none_or(|e| e.1 != 0))
                        .collect::<Option<Vec<_>>>()
                })
                .collect(),
            ExactMatrix::Modular { p: q, rows, .. } => (p == *q).then(|| rows.clone()),
        }
    }

    /// M v for a rational matrix.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        match self {
            ExactMatrix::Rational { rows, .. } => {
                rows.iter().map(|r| r.iter().fold(Rational::zero(), |acc, (j, x)| acc + x * &v[*j])).collect()
            }
            ExactMatrix::Modular { .. } => panic!("apply on a modular matrix"),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        match self {
            ExactMatrix::Rational { ncols, rows } => rows
                .iter()
                .map(|r| {
                    let mut d = vec![Rational::zero(); *ncols];
                    for (j, v) in r {
                        d[*j] = v.clone();
                    }
                    d
                })
                .collect(),
            ExactMatrix::Modular { .. } => panic!("to_dense on a modular matrix"),
        }
    }
}

pub fn matrix_rank(m: &ExactMatrix, mode: &RankMode) -> Result<RankResult> {
    match (m, mode) {
        (ExactMatrix::Modular { ncols, p, rows }, _) => Ok(RankResult {
            rank: super::sparse_rank_mod(*p, *ncols, rows.clone()),
            confidence: RankConfidence::Certified,
        }),
        (ExactMatrix::Rational { ncols, rows }, RankMode::Exact) => {
            let int_rows = rows.iter().map(|r| primitive_integer_row(r)).collect();
            Ok(RankResult { rank: sparse_rank_integer(*ncols, int_rows), confidence: RankConfidence::Certified })
        }
        (ExactMatrix::Rational { .. }, RankMode::Modular(ps)) => modular_rank_agreeing(m, ps.clone(), 0),
        (ExactMatrix::Rational { .. }, RankMode::ModularSeeded(seed)) => {
            modular_rank_agreeing(m, random_primes_near_2_61(2, *seed), *seed)
        }
    }
}

fn modular_rank_agreeing(m: &ExactMatrix, primes: Vec<Prime>, seed: u64) -> Result<RankResult> {
    if primes.is_empty() {
        return pre_err("modular rank needs at least one prime");
    }
    let ncols = m.ncols();
    let rank_at = |p: Prime| -> Result<usize> {
        let rows = m.reduce_mod(p).ok_or_else(|| Error::Escalation(format!("a denominator vanishes modulo {p}")))?;
        Ok(super::sparse_rank_mod(p, ncols, rows))
    };
    let ranks: Vec<usize> = primes.iter().map(|&p| rank_at(p)).collect::<Result<_>>()?;
    if ranks.iter().all(|&r| r == ranks[0]) {
        return Ok(RankResult { rank: ranks[0], confidence: RankConfidence::Probabilistic { primes } });
    }
    // An unlucky prime can only lower the rank; a fresh prime that matches the
    // largest value settles it.
    let best = *ranks.iter().max().unwrap();
    let extra = random_primes_near_2_61(primes.len() + 1, seed.wrapping_add(0xdead_beef))
        .into_iter()
        .find(|p| !primes.contains(p))
        .expect("fresh prime");
    if rank_at(extra)? == best {
        let mut agreeing: Vec<Prime> = primes.iter().zip(&ranks).filter(|(_, &r)| r == best).map(|(p, _)| *p).collect();
        agreeing.push(extra);
        return Ok(RankResult { rank: best, confidence: RankConfidence::Probabilistic { primes: agreeing } });
    }
    Err(Error::Escalation(format!("ranks {ranks:?} disagree across primes {primes:?}")))
}

/// Clears denominators and divides out the content.
pub(crate) fn primitive_integer_row(r: &[(usize, Rational)]) -> Vec<(usize, BigInt)> {
    let l = r.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let ints: Vec<(usize, BigInt)> = r.iter().map(|(j, v)| (*j, v.numer() * (&l / v.denom()))).collect();
    normalize_int_row(ints)
}

fn normalize_int_row(mut r: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let g = r.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for e in &mut r {
            e.1 = &e.1 / &g;
        }
    }
    r
}

pub(crate) trait ElimOps: Sync {
    type T: Clone + Send + Sync;
    fn is_zero(&self, a: &Self::T) -> bool;
    fn zero(&self) -> Self::T;
    /// Kills column c of `t` using `piv`; the result has no entry in column c.
    fn eliminate(&self, t: &[(usize, Self::T)], piv: &[(usize, Self::T)], c: usize) -> Vec<(usize, Self::T)>;
    fn prepare_dense_pivot(&self, piv: &mut [Self::T], c: usize);
    fn eliminate_dense(&self, t: &mut [Self::T], piv: &[Self::T], c: usize);
}

struct IntOps;

impl ElimOps for IntOps {
    type T = BigInt;

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn eliminate(&self, t: &[(usize, BigInt)], piv: &[(usize, BigInt)], c: usize) -> Vec<(usize, BigInt)> {
        let tc = t.iter().find(|e| e.0 == c).map(|e| e.1.clone()).unwrap_or_default();
        let pc = piv.iter().find(|e| e.0 == c).map(|e| e.1.clone()).expect("pivot entry present");
        let g = tc.gcd(&pc);
        let (a, b) = (&pc / &g, &tc / &g);
        let mut out = Vec::with_capacity(t.len() + piv.len());
        let (mut i, mut j) = (0, 0);
        while i < t.len() || j < piv.len() {
            let ci = t.get(i).map_or(usize::MAX, |e| e.0);
            let cj = piv.get(j).map_or(usize::MAX, |e| e.0);
            let (col, v) = if ci < cj {
                i += 1;
                (ci, &a * &t[i - 1].1)
            } else if cj < ci {
                j += 1;
                (cj, -(&b * &piv[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (ci, &a * &t[i - 1].1 - &b * &piv[j - 1].1)
            };
            if !v.is_zero() && col != c {
                out.push((col, v));
            }
        }
        normalize_int_row(out)
    }

    fn prepare_dense_pivot(&self, _piv: &mut [BigInt], _c: usize) {}

    fn eliminate_dense(&self, t: &mut [BigInt], piv: &[BigInt], c: usize) {
        if t[c].is_zero() {
            return;
        }
        let g = t[c].gcd(&piv[c]);
        let (a, b) = (&piv[c] / &g, &t[c] / &g);
        for j in c..t.len() {
            t[j] = &a * &t[j] - &b * &piv[j];
        }
        let g = t.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if !g.is_zero() && !g.is_one() {
            for v in t.iter_mut() {
                *v = &*v / &g;
            }
        }
    }
}

/// Rank over Q of an integer matrix by fraction-free elimination.
pub(crate) fn sparse_rank_integer(ncols: usize, rows: Vec<Vec<(usize, BigInt)>>) -> usize {
    sparse_rank_generic(&IntOps, ncols, rows)
}

/// Sparse elimination with Markowitz-style pivoting: the pivot column is the
/// one with the fewest nonzeros, the pivot row the shortest row in it. When
/// the active part fills in past a third it is finished densely.
pub(crate) fn sparse_rank_generic<O: ElimOps>(ops: &O, ncols: usize, rows: Vec<Vec<(usize, O::T)>>) -> usize {
    let mut rows: Vec<Vec<(usize, O::T)>> = rows
        .into_iter()
        .map(|mut r| {
            r.retain(|e| !ops.is_zero(&e.1));
            r.sort_by_key(|e| e.0);
            r
        })
        .collect();
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); ncols];
    let mut nnz = 0usize;
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_rows[*j].insert(i);
        }
        nnz += r.len();
    }
    let mut col_active = vec![true; ncols];
    let mut rank = 0;
    loop {
        let mut best: Option<(usize, usize)> = None;
        let mut live_cols = 0;
        for c in 0..ncols {
            if !col_active[c] {
                continue;
            }
            let n = col_rows[c].len();
            if n == 0 {
                col_active[c] = false;
                continue;
            }
            live_cols += 1;
            if best.is_none_or(|(bn, _)| n < bn) {
                best = Some((n, c));
            }
        }
        let Some((_, c)) = best else { break };
        let live_rows = rows.iter().filter(|r| !r.is_empty()).count();
        let area = live_rows * live_cols;
        if area > 0 && nnz * 3 >= area && area <= 60_000_000 && live_cols > 8 {
            let active: Vec<usize> = (0..ncols).filter(|&j| col_active[j]).collect();
            let mut index = vec![usize::MAX; ncols];
            for (k, &j) in active.iter().enumerate() {
                index[j] = k;
            }
            let dense: Vec<Vec<O::T>> = rows
                .iter()
                .filter(|r| !r.is_empty())
                .map(|r| {
                    let mut d = vec![ops.zero(); active.len()];
                    for (j, v) in r {
                        d[index[*j]] = v.clone();
                    }
                    d
                })
                .collect();
            return rank + dense_rank_generic(ops, dense);
        }
        let piv = *col_rows[c].iter().min_by_key(|&&i| (rows[i].len(), i)).unwrap();
        let prow = std::mem::take(&mut rows[piv]);
        nnz -= prow.len();
        for (j, _) in &prow {
            col_rows[*j].remove(&piv);
        }
        let targets: Vec<usize> = col_rows[c].iter().copied().collect();
        for t in targets {
            let old = std::mem::take(&mut rows[t]);
            let new = ops.eliminate(&old, &prow, c);
            for (j, _) in &old {
                col_rows[*j].remove(&t);
            }
            for (j, _) in &new {
                col_rows[*j].insert(t);
            }
            nnz = nnz - old.len() + new.len();
            rows[t] = new;
        }
        col_active[c] = false;
        rank += 1;
    }
    rank
}

fn dense_rank_generic<O: ElimOps>(ops: &O, mut m: Vec<Vec<O::T>>) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !ops.is_zero(&m[i][c])) else { continue };
        m.swap(r, pr);
        let (head, tail) = m.split_at_mut(r + 1);
        let piv = &mut head[r];
        ops.prepare_dense_pivot(piv, c);
        let piv: &Vec<O::T> = piv;
        tail.par_iter_mut().for_each(|row| ops.eliminate_dense(row, piv, c));
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Gauss-Jordan inverse; None when singular.
pub fn dense_inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, pr);
        let inv = Rational::one() / &m[c][c];
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        let piv = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&piv) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = Rational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let piv = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&piv) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn dense_rank(a: &[Vec<Rational>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

/// Basis of {v : M v = 0} over Q.
pub fn nullspace_basis(m: &ExactMatrix) -> Result<Vec<Vec<Rational>>> {
    if matches!(m, ExactMatrix::Modular { .. }) {
        return pre_err("nullspace basis is computed over Q only");
    }
    let ncols = m.ncols();
    let mut d = m.to_dense();
    let pivots = rref(&mut d);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -d[r][f].clone();
            }
            v
        })
        .collect())
}

/// det(t I - A) by Faddeev-LeVerrier.
pub fn charpoly(a: &[Vec<Rational>]) -> UnivariatePoly {
    let n = a.len();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !mk[l][j].is_zero() {
                        s += &a[i][l] * &mk[l][j];
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &c[n - k + 1];
        }
        mk = next;
        let mut tr = Rational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &mk[l][i];
            }
        }
        c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    UnivariatePoly::new(c)
}

/// True when a symmetric rational matrix is positive semidefinite, decided by
/// counting negative roots of its characteristic polynomial.
pub fn is_psd_symmetric(a: &[Vec<Rational>]) -> bool {
    if a.is_empty() {
        return true;
    }
    let cp = charpoly(a);
    cp.sturm_count(&super::Interval::below(Rational::zero())).map(|c| c == 0).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, rvec};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_dense(&rows.iter().map(|r| rvec(r)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(matrix_rank(&m(&[&[1, 2], &[2, 4]]), &RankMode::Exact).unwrap().rank, 1);
        let r = matrix_rank(&m(&[&[1, 0], &[0, 1]]), &RankMode::ModularSeeded(3)).unwrap();
        assert_eq!(r.rank, 2);
        assert!(matches!(r.confidence, RankConfidence::Probabilistic { ref primes } if primes.len() == 2));
        let empty = ExactMatrix::from_sparse(3, vec![]);
        assert_eq!(matrix_rank(&empty, &RankMode::Exact).unwrap().rank, 0);
    }

    #[test]
    fn small_prime_loses_rank_but_agreement_recovers() {
        let a = m(&[&[1, 0], &[0, 7]]);
        let low =
            matrix_rank(&ExactMatrix::Modular { ncols: 2, p: 7, rows: a.reduce_mod(7).unwrap() }, &RankMode::Exact)
                .unwrap();
        assert_eq!(low.rank, 1);
        let r = matrix_rank(&a, &RankMode::Modular(vec![7, 1_000_000_007])).unwrap();
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn nullspace_is_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = nullspace_basis(&a).unwrap();
        assert_eq!(ns.len(), 1);
        assert!(a.apply(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn charpoly_and_psd() {
        let a = vec![rvec(&[5, 3]), rvec(&[3, 2])];
        assert_eq!(charpoly(&a), UnivariatePoly::from_ints(&[1, -7, 1]));
        assert!(is_psd_symmetric(&a));
        assert!(!is_psd_symmetric(&[rvec(&[0, 1]), rvec(&[1, 0])]));
        let inv = dense_inverse(&a).unwrap();
        assert_eq!(inv[0][0], int(2));
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        // a 40x30 integer matrix of rank 20 built as a product
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let l: Vec<Vec<i64>> = (0..40).map(|_| (0..20).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let r: Vec<Vec<i64>> = (0..20).map(|_| (0..30).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let prod: Vec<Vec<Rational>> =
            (0..40).map(|i| (0..30).map(|j| int((0..20).map(|k| l[i][k] * r[k][j]).sum())).collect()).collect();
        let mat = ExactMatrix::from_dense(&prod);
        let ex = matrix_rank(&mat, &RankMode::Exact).unwrap().rank;
        let md = matrix_rank(&mat, &RankMode::ModularSeeded(9)).unwrap().rank;
        assert_eq!(ex, md);
        assert_eq!(ex, dense_rank(&prod));
    }
}
