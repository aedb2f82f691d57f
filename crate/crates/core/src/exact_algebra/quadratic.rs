use super::{dense_inverse, HomogeneousPoly, Rational, WeightedSos};
use crate::error::{pre_err, Error, Result};
use num_traits::{One, Signed, Zero};

/// q = sum_i weights[i] * (forms[i] . x)^2 with `forms` an invertible square
/// matrix (rows are the linear forms). Equivalently L^T diag(w) L = Gram(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFormDiag {
    pub forms: Vec<Vec<Rational>>,
    pub weights: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Lagrange's completion of squares over Q.
pub fn lagrange_diagonalize(q: &HomogeneousPoly) -> Result<QuadraticFormDiag> {
    if !q.is_zero() && q.degree() != 2 {
        return pre_err(format!("expected a quadratic form, got degree {}", q.degree()));
    }
    let n = q.nvars();
    let mut a = q.gram();
    let mut forms = Vec::new();
    let mut weights = Vec::new();
    let mut pivoted = vec![false; n];
    loop {
        if let Some(i) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let w = a[i][i].clone();
            let row = a[i].clone();
            for r in 0..n {
                for c in 0..n {
                    if !row[r].is_zero() && !row[c].is_zero() {
                        let delta = &row[r] * &row[c] / &w;
                        a[r][c] -= delta;
                    }
                }
            }
            forms.push(row.iter().map(|x| x / &w).collect::<Vec<_>>());
            weights.push(w);
            pivoted[i] = true;
            continue;
        }
        let off = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| i != j && !a[i][j].is_zero());
        let Some((i, j)) = off else { break };
        let c = a[i][j].clone();
        let (ri, rj) = (a[i].clone(), a[j].clone());
        for r in 0..n {
            for s in 0..n {
                let delta = (&ri[r] * &rj[s] + &rj[r] * &ri[s]) / &c;
                a[r][s] -= delta;
            }
        }
        let half = Rational::one() / (Rational::from_integer(2.into()) * &c);
        forms.push(ri.iter().zip(&rj).map(|(x, y)| x + y).collect());
        weights.push(half.clone());
        forms.push(ri.iter().zip(&rj).map(|(x, y)| x - y).collect());
        weights.push(-half);
        pivoted[i] = true;
        pivoted[j] = true;
    }
    for (v, done) in pivoted.iter().enumerate() {
        if !done {
            let mut e = vec![Rational::zero(); n];
            e[v] = Rational::one();
            forms.push(e);
            weights.push(Rational::zero());
        }
    }
    Ok(QuadraticFormDiag { forms, weights })
}

impl QuadraticFormDiag {
    pub fn signature(&self) -> Signature {
        let positive = self.weights.iter().filter(|w| w.is_positive()).count();
        let negative = self.weights.iter().filter(|w| w.is_negative()).count();
        Signature { positive, negative, zero: self.weights.len() - positive - negative }
    }

    pub fn is_psd(&self) -> bool {
        self.signature().negative == 0
    }

    pub fn nvars(&self) -> usize {
        self.forms.len()
    }

    pub fn to_poly(&self) -> HomogeneousPoly {
        let n = self.nvars();
        let mut acc = HomogeneousPoly::zero(n, 2);
        for (w, l) in self.weights.iter().zip(&self.forms) {
            if !w.is_zero() {
                acc = acc.add(&HomogeneousPoly::linear(l).square().scale(w));
            }
        }
        acc.with_degree(2)
    }

    /// A point where the form equals the given weight: the solution of
    /// L x = e_i.
    pub fn point_for(&self, i: usize) -> Vec<Rational> {
        let inv = dense_inverse(&self.forms).expect("diagonalizing transform is invertible");
        inv.iter().map(|row| row[i].clone()).collect()
    }

    /// A point where the form is negative, if any.
    pub fn negative_witness(&self) -> Option<Vec<Rational>> {
        let i = self.weights.iter().position(|w| w.is_negative())?;
        Some(self.point_for(i))
    }

    /// The positive part as a weighted sum of squares of linear forms; fails
    /// with a witness when the form is indefinite.
    pub fn to_weighted_sos(&self) -> Result<WeightedSos> {
        if let Some(x) = self.negative_witness() {
            return Err(Error::NotPsd { message: "quadratic form takes a negative value".into(), witness: x });
        }
        let n = self.nvars();
        WeightedSos::new(
            n,
            1,
            self.weights
                .iter()
                .zip(&self.forms)
                .filter(|(w, _)| w.is_positive())
                .map(|(w, l)| (w.clone(), HomogeneousPoly::linear(l)))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, rat};

    fn quad(terms: &[(Vec<u32>, Rational)]) -> HomogeneousPoly {
        HomogeneousPoly::from_terms(terms[0].0.len(), 2, terms.to_vec()).unwrap()
    }

    #[test]
    fn lorentz_signature() {
        let q = quad(&[(vec![2, 0, 0], int(1)), (vec![0, 2, 0], int(-1)), (vec![0, 0, 2], int(-1))]);
        let d = lagrange_diagonalize(&q).unwrap();
        assert_eq!(d.signature(), Signature { positive: 1, negative: 2, zero: 0 });
        assert_eq!(d.to_poly(), q);
    }

    #[test]
    fn cross_term_only() {
        let q = quad(&[(vec![1, 1], int(1))]);
        let d = lagrange_diagonalize(&q).unwrap();
        assert_eq!(d.signature(), Signature { positive: 1, negative: 1, zero: 0 });
        assert_eq!(d.to_poly(), q);
        let w = d.negative_witness().unwrap();
        assert!(q.eval(&w).is_negative());
    }

    #[test]
    fn rank_deficient_has_zero_weights() {
        // (x + y)^2 in three variables
        let q = quad(&[(vec![2, 0, 0], int(1)), (vec![1, 1, 0], int(2)), (vec![0, 2, 0], int(1))]);
        let d = lagrange_diagonalize(&q).unwrap();
        assert_eq!(d.signature(), Signature { positive: 1, negative: 0, zero: 2 });
        assert_eq!(d.to_poly(), q);
        assert!(dense_inverse(&d.forms).is_some());
        let s = d.to_weighted_sos().unwrap();
        assert_eq!(s.to_poly(), q);
    }

    #[test]
    fn rational_weights_survive() {
        let q = quad(&[(vec![2, 0], rat(2, 3)), (vec![1, 1], rat(1, 5)), (vec![0, 2], rat(7, 2))]);
        let d = lagrange_diagonalize(&q).unwrap();
        assert_eq!(d.to_poly(), q);
        assert!(d.is_psd());
    }
}
