use super::poly::Monomial;
use num_bigint::BigInt;

/// C(n, k) as a big integer; zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Dimension of the space of m-variate forms of degree d, C(m+d-1, d).
pub fn dim_forms(m: u64, d: u64) -> BigInt {
    if m == 0 {
        return BigInt::from(u64::from(d == 0));
    }
    binomial(m + d - 1, d)
}

/// All exponent vectors of total degree `d` in `m` variables, descending
/// graded-lex (x1^d first).
pub fn monomials(m: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let m = cur.len();
        if i + 1 == m {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if m == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(dim_forms(3, 2), BigInt::from(6));
        assert_eq!(dim_forms(16, 3), BigInt::from(816));
        assert_eq!(dim_forms(16, 4), BigInt::from(3876));
        assert_eq!(dim_forms(16, 6), BigInt::from(54264));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn monomial_listing_matches_count() {
        for m in 1..5 {
            for d in 0..5 {
                let ms = monomials(m, d);
                assert_eq!(BigInt::from(ms.len()), dim_forms(m as u64, d as u64));
                assert!(ms.windows(2).all(|w| w[0] > w[1]));
            }
        }
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }
}
