use super::Rational;
use crate::error::{pre_err, Result};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Dense univariate polynomial over Q, coefficients from t^0 upward, no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

/// One end of an interval on the real line. `Infinite` means -inf on the low
/// side and +inf on the high side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Infinite,
    Open(Rational),
    Closed(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn real_line() -> Self {
        Interval { lo: Bound::Infinite, hi: Bound::Infinite }
    }
    pub fn open(a: Rational, b: Rational) -> Self {
        Interval { lo: Bound::Open(a), hi: Bound::Open(b) }
    }
    pub fn closed(a: Rational, b: Rational) -> Self {
        Interval { lo: Bound::Closed(a), hi: Bound::Closed(b) }
    }
    /// (a, b]
    pub fn half_open(a: Rational, b: Rational) -> Self {
        Interval { lo: Bound::Open(a), hi: Bound::Closed(b) }
    }
    pub fn below(b: Rational) -> Self {
        Interval { lo: Bound::Infinite, hi: Bound::Open(b) }
    }
    pub fn above(a: Rational) -> Self {
        Interval { lo: Bound::Open(a), hi: Bound::Infinite }
    }
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| super::int(x)).collect())
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// t - a
    pub fn linear_root(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// f / gcd(f, f'), monic. Same distinct roots as f, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Multiplicity of 0 as a root.
    pub fn order_at_zero(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Sturm chain f, f', -rem, ..., each rescaled by a positive constant.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let prev = seq.last().unwrap().clone();
            let lc = next.leading().abs();
            next = next.scale(&(Rational::one() / lc));
            seq.push(next.clone());
            let r = prev.div_rem(&next).1;
            next = r.scale(&-Rational::one());
        }
        seq
    }

    fn sign_at(&self, b: &Bound, low: bool) -> i32 {
        match b {
            Bound::Infinite => {
                let s = sign(&self.leading());
                let deg = self.degree().unwrap_or(0);
                if low && deg % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
            Bound::Open(a) | Bound::Closed(a) => sign(&self.eval(a)),
        }
    }

    /// Number of distinct real roots in the interval.
    pub fn sturm_count(&self, iv: &Interval) -> Result<usize> {
        if self.is_zero() {
            return pre_err("root count of the zero polynomial");
        }
        if let (Some(a), Some(b)) = (bound_value(&iv.lo), bound_value(&iv.hi)) {
            match a.cmp(b) {
                Ordering::Greater => return pre_err("empty interval with lo > hi"),
                Ordering::Equal => {
                    let both_closed = matches!(iv.lo, Bound::Closed(_)) && matches!(iv.hi, Bound::Closed(_));
                    return Ok(usize::from(both_closed && self.eval(a).is_zero()));
                }
                Ordering::Less => {}
            }
        }
        let g = self.squarefree_part();
        if g.degree() == Some(0) {
            return Ok(0);
        }
        let seq = g.sturm_sequence();
        let var = |b: &Bound, low: bool| variations(seq.iter().map(|p| p.sign_at(b, low)));
        let mut count = var(&iv.lo, true) as i64 - var(&iv.hi, false) as i64;
        if let Bound::Closed(a) = &iv.lo {
            if g.eval(a).is_zero() {
                count += 1;
            }
        }
        if let Bound::Open(b) = &iv.hi {
            if g.eval(b).is_zero() {
                count -= 1;
            }
        }
        Ok(count.max(0) as usize)
    }

    /// True when every root is real (multiplicities allowed). Constants count
    /// as real-rooted; the zero polynomial does not.
    pub fn is_real_rooted(&self) -> bool {
        let g = self.squarefree_part();
        match g.degree() {
            None => false,
            Some(0) => true,
            Some(d) => g.sturm_count(&Interval::real_line()).map(|c| c == d).unwrap_or(false),
        }
    }

    /// Cauchy bound: every root has absolute value below it.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let n = self.coeffs.len().saturating_sub(1);
        let m = self.coeffs[..n].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(Rational::zero);
        m + Rational::one()
    }
}

/// Disjoint half-open intervals (a, b], one around each distinct real root.
pub fn real_roots_isolated(f: &UnivariatePoly) -> Result<Vec<(Rational, Rational)>> {
    if f.is_zero() {
        return pre_err("root isolation of the zero polynomial");
    }
    let g = f.squarefree_part();
    if g.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let b = g.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let c = g.sturm_count(&Interval::half_open(lo.clone(), hi.clone()))?;
        match c {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

fn bound_value(b: &Bound) -> Option<&Rational> {
    match b {
        Bound::Infinite => None,
        Bound::Open(a) | Bound::Closed(a) => Some(a),
    }
}

fn sign(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, neg) => write!(f, " {} ", if neg { "-" } else { "+" })?,
            }
            first = false;
            let power = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "{power}")?,
                _ => write!(f, "{a}*{power}")?,
            }
        }
        Ok(())
    }
}
