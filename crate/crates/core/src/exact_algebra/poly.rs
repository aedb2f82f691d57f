use super::{combinatorics::monomials, modular::ModElem, Rational, Ring, UnivariatePoly};
use crate::error::{dim_err, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A homogeneous form over Q in a fixed number of variables.
///
/// Terms are keyed by exponent vector. For a fixed total degree, descending
/// lex order on exponent vectors is graded-lex order, which is the order used
/// for printing and iteration. The zero polynomial keeps whatever degree it was
/// created with and is compatible with any degree in sums.
#[derive(Clone, Debug)]
pub struct HomogeneousPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

/// How a form is restricted to a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineOrientation {
    /// t -> p(t e - x), the eigenvalue convention.
    Eigen,
    /// t -> p(x + t e), the derivative convention.
    Shift,
}

impl PartialEq for HomogeneousPoly {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.terms == o.terms && (self.degree == o.degree || self.terms.is_empty())
    }
}
impl Eq for HomogeneousPoly {}

impl HomogeneousPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogeneousPoly { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars, 0);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The coordinate x_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Monomial, c: Rational) -> Self {
        let degree = exps.iter().sum();
        let mut p = Self::zero(exps.len(), degree);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The linear form sum c_i x_i.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    /// The quadratic form x^T G x for a symmetric matrix G.
    pub fn from_gram(g: &[Vec<Rational>]) -> Self {
        let n = g.len();
        let mut p = Self::zero(n, 2);
        for i in 0..n {
            for j in i..n {
                let c = if i == j { g[i][i].clone() } else { &g[i][j] + &g[j][i] };
                let mut e = vec![0; n];
                e[i] += 1;
                e[j] += 1;
                p.add_term(e, c);
            }
        }
        p
    }

    /// Builds a form from terms, checking lengths and degrees. Repeated
    /// monomials are summed.
    pub fn from_terms(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars, degree);
        for (e, c) in terms {
            if e.len() != nvars {
                return dim_err(format!("monomial has {} exponents, expected {nvars}", e.len()));
            }
            if e.iter().sum::<u32>() != degree {
                return dim_err(format!("monomial {e:?} has degree {}, expected {degree}", e.iter().sum::<u32>()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Same polynomial viewed with a different nominal degree; only allowed
    /// for the zero polynomial or when the degree already matches.
    pub fn with_degree(mut self, degree: u32) -> Self {
        assert!(self.is_zero() || self.degree == degree, "with_degree on a nonzero form of another degree");
        self.degree = degree;
        self
    }

    fn merge_degree(&self, o: &Self) -> u32 {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        if self.is_zero() {
            o.degree
        } else if o.is_zero() {
            self.degree
        } else {
            assert_eq!(self.degree, o.degree, "adding forms of different degree");
            self.degree
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.degree = self.merge_degree(o);
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.degree = self.merge_degree(o);
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        HomogeneousPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let degree = self.degree + o.degree;
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        HomogeneousPoly { nvars: self.nvars, degree, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars, "point has wrong dimension");
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Sign-faithful evaluation at an integer point after clearing
    /// denominators; the returned integer is a positive multiple of p(x).
    pub fn eval_scaled_integer(&self, x: &[BigInt]) -> BigInt {
        let l = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.numer() * (&l / c.denom());
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Evaluation modulo a prime; `None` when a denominator vanishes mod p.
    pub fn eval_mod(&self, x: &[ModElem]) -> Option<ModElem> {
        let p = x.first().map(|v| v.p)?;
        let mut total = ModElem::new(0, p);
        for (e, c) in &self.terms {
            let mut t = ModElem::from_rational(c, p)?;
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&xi.pow(k as u64));
                }
            }
            total = total.add(&t);
        }
        Some(total)
    }

    /// Partial derivative in variable i.
    pub fn partial(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                r.add_term(f, c * Rational::from_integer(e[i].into()));
            }
        }
        r
    }

    /// D_u^k p. Past the degree this is the zero form of degree 0.
    pub fn directional(&self, u: &[Rational], k: u32) -> Self {
        assert_eq!(u.len(), self.nvars, "direction has wrong dimension");
        if k > self.degree {
            return Self::zero(self.nvars, 0);
        }
        let mut cur = self.clone();
        for _ in 0..k {
            let mut next = Self::zero(self.nvars, cur.degree.saturating_sub(1));
            for (i, ui) in u.iter().enumerate() {
                if !ui.is_zero() {
                    next = next.add(&cur.partial(i).scale(ui));
                }
            }
            cur = next;
        }
        cur
    }

    /// All partial derivatives.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Substitute x_i -> phi_i(y). The result has degree deg(p) * deg(phi).
    pub fn compose(&self, phi: &super::PolyMap) -> Self {
        assert_eq!(phi.len(), self.nvars, "map has wrong number of components");
        let m = phi.nvars_in();
        let out_deg = self.degree * phi.degree();
        let mut cache: HashMap<(usize, u32), HomogeneousPoly> = HashMap::new();
        let mut acc = Self::zero(m, out_deg);
        for (e, c) in &self.terms {
            let mut t = Self::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = cache.entry((i, k)).or_insert_with(|| phi.component(i).pow(k));
                t = t.mul(pw);
                if t.is_zero() {
                    break;
                }
            }
            if !t.is_zero() {
                acc = acc.add(&t);
            }
        }
        acc.with_degree(out_deg)
    }

    /// Restriction to a line, as a univariate polynomial in t.
    pub fn restrict_line(&self, x: &[Rational], e: &[Rational], orient: LineOrientation) -> UnivariatePoly {
        assert_eq!(x.len(), self.nvars);
        assert_eq!(e.len(), self.nvars);
        // coordinate i is a_i + b_i t
        let lines: Vec<UnivariatePoly> = x
            .iter()
            .zip(e)
            .map(|(xi, ei)| match orient {
                LineOrientation::Eigen => UnivariatePoly::new(vec![-xi.clone(), ei.clone()]),
                LineOrientation::Shift => UnivariatePoly::new(vec![xi.clone(), ei.clone()]),
            })
            .collect();
        let mut cache: HashMap<(usize, u32), UnivariatePoly> = HashMap::new();
        let mut acc = UnivariatePoly::zero();
        for (ex, c) in &self.terms {
            let mut t = UnivariatePoly::constant(c.clone());
            for (i, &k) in ex.iter().enumerate() {
                if k > 0 {
                    let pw = cache.entry((i, k)).or_insert_with(|| lines[i].pow(k));
                    t = t.mul(pw);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Coefficients of a linear form.
    pub fn linear_coeffs(&self) -> Vec<Rational> {
        assert!(self.degree == 1 || self.is_zero(), "not a linear form");
        (0..self.nvars)
            .map(|i| {
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                self.coeff(&e)
            })
            .collect()
    }

    /// Symmetric Gram matrix of a quadratic form.
    pub fn gram(&self) -> Vec<Vec<Rational>> {
        assert!(self.degree == 2 || self.is_zero(), "not a quadratic form");
        let n = self.nvars;
        let half = Rational::new(1.into(), 2.into());
        let mut g = vec![vec![Rational::zero(); n]; n];
        for (e, c) in &self.terms {
            let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                g[i][i] = c.clone();
            } else {
                g[i][j] = c * &half;
                g[j][i] = c * &half;
            }
        }
        g
    }

    /// Dense coefficient vector in the descending graded-lex basis.
    pub fn dense_coeffs(&self) -> Vec<Rational> {
        monomials(self.nvars, self.degree).iter().map(|e| self.coeff(e)).collect()
    }

    /// Largest absolute coefficient, handy for sizing diagnostics.
    pub fn height(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl Ring for HomogeneousPoly {
    fn add(&self, o: &Self) -> Self {
        HomogeneousPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        HomogeneousPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        HomogeneousPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        HomogeneousPoly::neg(self)
    }
}

const VAR_NAMES: [&str; 4] = ["x", "y", "z", "w"];

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let v = if self.nvars <= 4 { VAR_NAMES[i].to_string() } else { format!("x{}", i + 1) };
                factors.push(if k == 1 { v } else { format!("{v}^{k}") });
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, rvec, PolyMap};

    fn xy() -> HomogeneousPoly {
        HomogeneousPoly::var(2, 0).mul(&HomogeneousPoly::var(2, 1))
    }

    #[test]
    fn directional_derivatives() {
        let p = xy();
        assert_eq!(p.directional(&rvec(&[1, 1]), 1), HomogeneousPoly::linear(&rvec(&[1, 1])));
        assert_eq!(p.directional(&rvec(&[1, 1]), 2), HomogeneousPoly::constant(2, int(2)));
        let z = p.directional(&rvec(&[1, 1]), 3);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn restriction_orientations() {
        let p = xy();
        let e = rvec(&[1, 1]);
        let x = rvec(&[2, 3]);
        // (t-2)(t-3)
        assert_eq!(p.restrict_line(&x, &e, LineOrientation::Eigen), UnivariatePoly::from_ints(&[6, -5, 1]));
        // (2+t)(3+t)
        assert_eq!(p.restrict_line(&x, &e, LineOrientation::Shift), UnivariatePoly::from_ints(&[6, 5, 1]));
    }

    #[test]
    fn composition_with_squares() {
        // (x^2, y^2) into xy gives x^2 y^2
        let phi =
            PolyMap::new(2, 2, vec![HomogeneousPoly::var(2, 0).square(), HomogeneousPoly::var(2, 1).square()]).unwrap();
        let r = xy().compose(&phi);
        assert_eq!(r, HomogeneousPoly::monomial(vec![2, 2], int(1)));
        assert_eq!(r.degree(), 4);
    }

    #[test]
    fn gram_round_trip() {
        let q =
            HomogeneousPoly::from_terms(2, 2, vec![(vec![2, 0], int(1)), (vec![1, 1], int(3)), (vec![0, 2], int(-2))])
                .unwrap();
        assert_eq!(HomogeneousPoly::from_gram(&q.gram()), q);
    }

    #[test]
    fn zero_is_degree_agnostic_in_sums() {
        let z = HomogeneousPoly::zero(2, 0);
        assert_eq!(z.add(&xy()), xy());
        assert_eq!(xy().sub(&xy()).degree(), 2);
        assert!(HomogeneousPoly::from_terms(2, 2, vec![(vec![1, 0], int(1))]).is_err());
    }

    #[test]
    fn scaled_integer_eval_keeps_sign() {
        let q = HomogeneousPoly::from_terms(
            2,
            2,
            vec![(vec![2, 0], crate::exact_algebra::rat(1, 3)), (vec![0, 2], crate::exact_algebra::rat(-1, 2))],
        )
        .unwrap();
        let v = q.eval_scaled_integer(&[BigInt::from(1), BigInt::from(1)]);
        assert!(v < BigInt::zero());
        assert_eq!(Rational::from_integer(v) / int(6), q.eval(&rvec(&[1, 1])));
    }
}
