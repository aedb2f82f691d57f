use super::{rational_sqrt, HomogeneousPoly, Rational};
use crate::error::{dim_err, pre_err, Result};
use num_traits::{One, Signed, Zero};

/// A tuple of forms of common degree k in m variables, x -> (phi_1(x), ..., phi_n(x)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    m: usize,
    k: u32,
    comps: Vec<HomogeneousPoly>,
}

impl PolyMap {
    pub fn new(m: usize, k: u32, comps: Vec<HomogeneousPoly>) -> Result<Self> {
        for (i, c) in comps.iter().enumerate() {
            if c.nvars() != m {
                return dim_err(format!("component {i} has {} variables, expected {m}", c.nvars()));
            }
            if !c.is_zero() && c.degree() != k {
                return dim_err(format!("component {i} has degree {}, expected {k}", c.degree()));
            }
        }
        let comps = comps.into_iter().map(|c| c.with_degree(k)).collect();
        Ok(PolyMap { m, k, comps })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap { m: n, k: 1, comps: (0..n).map(|i| HomogeneousPoly::var(n, i)).collect() }
    }

    /// Linear map y -> A y with A given by rows (n rows of length m).
    pub fn linear(rows: &[Vec<Rational>]) -> Result<Self> {
        let m = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != m) {
            return dim_err("ragged linear map");
        }
        PolyMap::new(m, 1, rows.iter().map(|r| HomogeneousPoly::linear(r)).collect())
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn nvars_in(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn component(&self, i: usize) -> &HomogeneousPoly {
        &self.comps[i]
    }

    pub fn components(&self) -> &[HomogeneousPoly] {
        &self.comps
    }

    pub fn eval(&self, x: &[Rational]) -> Vec<Rational> {
        self.comps.iter().map(|c| c.eval(x)).collect()
    }
}

/// An element of the graded space used by Bezoutian certificates: d slots,
/// the first d - mu identically zero, then forms of degree 0, k, ..., (mu-1)k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTuple {
    m: usize,
    d: usize,
    mu: usize,
    k: u32,
    slots: Vec<HomogeneousPoly>,
}

impl GradedTuple {
    pub fn new(m: usize, d: usize, mu: usize, k: u32, slots: Vec<HomogeneousPoly>) -> Result<Self> {
        if mu < 2 || mu > d {
            return pre_err(format!("need 2 <= mu <= d, got mu = {mu}, d = {d}"));
        }
        if slots.len() != d {
            return dim_err(format!("graded tuple needs {d} slots, got {}", slots.len()));
        }
        let mut fixed = Vec::with_capacity(d);
        for (j, s) in slots.into_iter().enumerate() {
            if s.nvars() != m {
                return dim_err(format!("slot {j} has {} variables, expected {m}", s.nvars()));
            }
            if j < d - mu {
                if !s.is_zero() {
                    return dim_err(format!("slot {j} must be zero when mu = {mu}"));
                }
                fixed.push(s.with_degree(0));
            } else {
                let want = (j - (d - mu)) as u32 * k;
                if !s.is_zero() && s.degree() != want {
                    return dim_err(format!("slot {j} must have degree {want}, has {}", s.degree()));
                }
                fixed.push(s.with_degree(want));
            }
        }
        Ok(GradedTuple { m, d, mu, k, slots: fixed })
    }

    /// Builds the tuple from its mu live slots (degrees 0, k, ..., (mu-1)k).
    pub fn from_live(m: usize, d: usize, k: u32, live: Vec<HomogeneousPoly>) -> Result<Self> {
        let mu = live.len();
        if mu > d {
            return pre_err(format!("mu = {mu} exceeds d = {d}"));
        }
        let mut slots: Vec<HomogeneousPoly> = (0..d - mu).map(|_| HomogeneousPoly::zero(m, 0)).collect();
        slots.extend(live);
        GradedTuple::new(m, d, mu, k, slots)
    }

    /// The first live slot set to 1 and everything else zero: gives back the
    /// Wronskian entry.
    pub fn unit(m: usize, d: usize, k: u32) -> Self {
        let mut live = vec![HomogeneousPoly::constant(m, Rational::one())];
        live.extend((1..d).map(|i| HomogeneousPoly::zero(m, i as u32 * k)));
        GradedTuple::from_live(m, d, k, live).expect("unit tuple is well formed")
    }

    pub fn nvars(&self) -> usize {
        self.m
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn mu(&self) -> usize {
        self.mu
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn slot(&self, j: usize) -> &HomogeneousPoly {
        &self.slots[j]
    }
    pub fn slots(&self) -> &[HomogeneousPoly] {
        &self.slots
    }
}

/// sum_i w_i g_i^2 with positive rational weights and forms g_i of a common
/// degree (the half degree).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightedSos {
    nvars: usize,
    half_degree: u32,
    terms: Vec<(Rational, HomogeneousPoly)>,
}

impl WeightedSos {
    pub fn new(nvars: usize, half_degree: u32, terms: Vec<(Rational, HomogeneousPoly)>) -> Result<Self> {
        let mut kept = Vec::with_capacity(terms.len());
        for (i, (w, g)) in terms.into_iter().enumerate() {
            if w.is_negative() {
                return pre_err(format!("weight {i} is negative ({w})"));
            }
            if g.nvars() != nvars {
                return dim_err(format!("square {i} has {} variables, expected {nvars}", g.nvars()));
            }
            if !g.is_zero() && g.degree() != half_degree {
                return dim_err(format!("square {i} has degree {}, expected {half_degree}", g.degree()));
            }
            if !w.is_zero() && !g.is_zero() {
                kept.push((w, g));
            }
        }
        Ok(WeightedSos { nvars, half_degree, terms: kept })
    }

    pub fn zero(nvars: usize, half_degree: u32) -> Self {
        WeightedSos { nvars, half_degree, terms: Vec::new() }
    }

    /// Plain sum of squares, all weights one.
    pub fn unit(nvars: usize, half_degree: u32, squares: Vec<HomogeneousPoly>) -> Result<Self> {
        Self::new(nvars, half_degree, squares.into_iter().map(|g| (Rational::one(), g)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn half_degree(&self) -> u32 {
        self.half_degree
    }
    pub fn terms(&self) -> &[(Rational, HomogeneousPoly)] {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_poly(&self) -> HomogeneousPoly {
        let mut acc = HomogeneousPoly::zero(self.nvars, 2 * self.half_degree);
        for (w, g) in &self.terms {
            acc = acc.add(&g.square().scale(w));
        }
        acc.with_degree(2 * self.half_degree)
    }

    pub fn compose(&self, phi: &super::PolyMap) -> Self {
        WeightedSos {
            nvars: phi.nvars_in(),
            half_degree: self.half_degree * phi.degree(),
            terms: self.terms.iter().map(|(w, g)| (w.clone(), g.compose(phi))).filter(|(_, g)| !g.is_zero()).collect(),
        }
    }

    /// Absorbs square weights into the forms. Fails listing the weights that
    /// are not rational squares.
    pub fn unweighted(&self) -> std::result::Result<Vec<HomogeneousPoly>, Vec<Rational>> {
        let mut bad = Vec::new();
        let mut out = Vec::new();
        for (w, g) in &self.terms {
            match rational_sqrt(w) {
                Some(r) => out.push(g.scale(&r)),
                None => bad.push(w.clone()),
            }
        }
        if bad.is_empty() {
            Ok(out)
        } else {
            Err(bad)
        }
    }

    pub fn scale(&self, s: &Rational) -> Result<Self> {
        if s.is_negative() {
            return pre_err("negative scaling of a sum of squares");
        }
        Self::new(self.nvars, self.half_degree, self.terms.iter().map(|(w, g)| (w * s, g.clone())).collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.iter().all(|(w, g)| w.is_zero() || g.is_zero())
    }
}
