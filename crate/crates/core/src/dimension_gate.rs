//! Dimension counts comparing the space of forms of degree 2y in m variables
//! against the images of the hyperwron and degree-restricted hyperzout maps.
//! When the space of forms is strictly bigger than every image bound, some
//! non-negative form escapes the certificate family.

use crate::error::{pre_err, Result};
use crate::exact_algebra::{binomial, Rational};
use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use std::fmt;

/// (d, k) with (d - 1) k = y: hyperbolic degree d, map degree k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProfileW {
    pub d: u64,
    pub k: u64,
}

/// (d, k, mu) with either mu = 2, k = y, or mu <= d <= 2 mu - 3, (mu - 1) k = y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProfileB {
    pub d: u64,
    pub k: u64,
    pub mu: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    W(ProfileW),
    B(ProfileB),
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::W(p) => write!(f, "(d={},k={})", p.d, p.k),
            Profile::B(p) => write!(f, "(d={},k={},mu={})", p.d, p.k, p.mu),
        }
    }
}

pub fn omega_w(y: u64) -> Vec<ProfileW> {
    (1..=y).rev().filter(|k| y.is_multiple_of(*k)).map(|k| ProfileW { d: y / k + 1, k }).collect()
}

/// Profiles entering the hyperwron count: d = 2 is dropped since those
/// hyperwrons are sums of squares.
pub fn omega_w_tilde(y: u64) -> Vec<ProfileW> {
    omega_w(y).into_iter().filter(|p| p.d != 2).collect()
}

/// Profiles with mu >= 3; always finite.
pub fn omega_b_tilde(y: u64) -> Vec<ProfileB> {
    let mut out = Vec::new();
    for mu in 3..=y + 1 {
        if !y.is_multiple_of(mu - 1) {
            continue;
        }
        let k = y / (mu - 1);
        for d in mu..=2 * mu - 3 {
            out.push(ProfileB { d, k, mu });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaB {
    pub profiles: Vec<ProfileB>,
    /// The mu = 2 branch continues past d_max.
    pub truncated: bool,
}

/// All profiles, with the infinite mu = 2 branch cut at `d_max`.
pub fn omega_b(y: u64, d_max: Option<u64>) -> Result<OmegaB> {
    let Some(d_max) = d_max else {
        return pre_err("the mu = 2 branch is infinite; supply a maximal degree");
    };
    let mut profiles: Vec<ProfileB> = (2..=d_max).map(|d| ProfileB { d, k: y, mu: 2 }).collect();
    profiles.extend(omega_b_tilde(y));
    Ok(OmegaB { profiles, truncated: true })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    Wronskian,
    Bezoutian,
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateKind::Wronskian => "hyperwron",
            GateKind::Bezoutian => "hyperzout",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateRow {
    pub profile: Profile,
    pub rhs: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateReport {
    pub kind: GateKind,
    pub m: u64,
    pub y: u64,
    /// Outside m > 2, y > 1, (m, 2y) != (3, 4) non-negative forms are all
    /// sums of squares and the count says nothing.
    pub applicable: bool,
    pub lhs: BigInt,
    pub rows: Vec<GateRow>,
}

impl GateReport {
    pub fn max_row(&self) -> Option<&GateRow> {
        self.rows.iter().max_by(|a, b| a.rhs.cmp(&b.rhs))
    }

    pub fn max_rhs(&self) -> BigInt {
        self.max_row().map(|r| r.rhs.clone()).unwrap_or_default()
    }

    pub fn margin(&self) -> BigInt {
        &self.lhs - self.max_rhs()
    }

    pub fn verdict(&self) -> bool {
        self.margin().is_positive()
    }

    /// No profiles at all, so the verdict holds for free.
    pub fn vacuous(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rhs_for(&self, profile: Profile) -> Option<&BigInt> {
        self.rows.iter().find(|r| r.profile == profile).map(|r| &r.rhs)
    }
}

fn applicable(m: u64, y: u64) -> bool {
    m > 2 && y >= 2 && (m, y) != (3, 2)
}

fn c(n: u64, k: u64) -> BigInt {
    binomial(n, k)
}

fn lhs(m: u64, y: u64) -> BigInt {
    c(2 * y + m - 1, 2 * y)
}

fn wronskian_rhs(m: u64, p: ProfileW) -> BigInt {
    let (d, k) = (p.d, p.k);
    let t = |j: u64| c(m + j * k - 1, j * k);
    BigInt::from(2) * t(d - 1) + t(d) + t(d - 2)
}

fn bezoutian_rhs(m: u64, p: ProfileB) -> BigInt {
    let s = |top: u64| (0..=top).map(|i| c(m + i * p.k - 1, m - 1)).sum::<BigInt>();
    s(p.mu - 1) + s(p.d) + s(p.d - 1)
}

pub fn wronskian_gate(m: u64, y: u64) -> GateReport {
    let rows =
        omega_w_tilde(y).into_iter().map(|p| GateRow { profile: Profile::W(p), rhs: wronskian_rhs(m, p) }).collect();
    GateReport { kind: GateKind::Wronskian, m, y, applicable: applicable(m, y), lhs: lhs(m, y), rows }
}

pub fn bezoutian_gate(m: u64, y: u64) -> GateReport {
    let rows =
        omega_b_tilde(y).into_iter().map(|p| GateRow { profile: Profile::B(p), rhs: bezoutian_rhs(m, p) }).collect();
    GateReport { kind: GateKind::Bezoutian, m, y, applicable: applicable(m, y), lhs: lhs(m, y), rows }
}

pub fn gate(kind: GateKind, m: u64, y: u64) -> GateReport {
    match kind {
        GateKind::Wronskian => wronskian_gate(m, y),
        GateKind::Bezoutian => bezoutian_gate(m, y),
    }
}

/// lhs minus the hyperwron bound of the profile with (d - 1) k = y, written
/// through y and k only.
pub fn g_binomial(m: u64, k: u64, y: u64) -> BigInt {
    assert!(k >= 1 && k <= y, "need 1 <= k <= y");
    let t = |j: u64| c(j + m - 1, m - 1);
    t(2 * y) - BigInt::from(2) * t(y) - t(y + k) - t(y - k)
}

/// The polynomial form of `g_binomial` for m = 4 and m = 5, valid for
/// rational k and y.
pub fn closed_form_g(m: u64, k: &Rational, y: &Rational) -> Result<Rational> {
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let (k2, y2) = (k * k, y * y);
    match m {
        4 => Ok(r(2, 3) * &y2 * y - &k2 * y - r(11, 3) * y - r(2, 1) * &k2 - r(3, 1)),
        5 => Ok(r(1, 2) * &y2 * &y2 + r(5, 3) * &y2 * y
            - r(1, 2) * &k2 * &y2
            - r(5, 2) * &k2 * y
            - r(25, 6) * y
            - r(1, 12) * &k2 * &k2
            - r(35, 12) * &k2
            - r(3, 1)),
        _ => pre_err(format!("closed form known only for m = 4 and m = 5, got {m}")),
    }
}

/// F(l, a) = C(l + a, l).
pub fn binom_f(l: u64, a: u64) -> BigInt {
    c(l + a, l)
}

/// Checks F(l', a) / F(l', b) < 1 and F(l', a) / F(l, a) > F(l', b) / F(l, b)
/// exactly, for 1 <= l' < l and a < b.
pub fn binom_ratio_lemma_check(lp: u64, l: u64, a: u64, b: u64) -> Result<bool> {
    if !(1 <= lp && lp < l && a < b) {
        return pre_err(format!("need 1 <= l' < l and a < b, got ({lp}, {l}, {a}, {b})"));
    }
    let f = |l, a| Rational::from_integer(binom_f(l, a));
    let first = f(lp, a) / f(lp, b) < Rational::from_integer(1.into());
    let second = f(lp, a) / f(l, a) > f(lp, b) / f(l, b);
    Ok(first && second)
}

/// (m, y) where the hyperwron count guarantees a non-negative form of degree
/// 2y that is not a hyperwron.
pub fn non_hyperwron_region(m: u64, y: u64) -> bool {
    (m == 4 && y >= 4) || (m == 5 && y >= 3) || (m >= 6 && y >= 2)
}

/// Cases with m >= 3 and y >= 2 outside the region above (and not Hilbert's
/// (3, 2)) where the question stays open.
pub fn unsettled_case(m: u64, y: u64) -> bool {
    (m == 3 && y >= 3) || (m == 4 && (y == 2 || y == 3)) || (m == 5 && y == 2)
}

/// Degree-restricted hyperzouts miss some non-negative form once m exceeds
/// this value.
pub fn restricted_hyperzout_bound(y: u64) -> u64 {
    10 * y * y - 2 * y + 1
}

/// Gate reports over a grid, computed in parallel, in row-major order.
pub fn gate_grid(kind: GateKind, ms: &[u64], ys: &[u64]) -> Vec<GateReport> {
    let cells: Vec<(u64, u64)> = ms.iter().flat_map(|&m| ys.iter().map(move |&y| (m, y))).collect();
    cells.par_iter().map(|&(m, y)| gate(kind, m, y)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Tsv,
    Aligned,
}

const HEADER: [&str; 8] = ["m", "2y", "lhs", "argmax", "max_rhs", "margin", "verdict", "note"];

fn row_cells(r: &GateReport) -> [String; 8] {
    let note = if !r.applicable {
        "inapplicable"
    } else if r.vacuous() {
        "vacuous"
    } else {
        ""
    };
    [
        r.m.to_string(),
        (2 * r.y).to_string(),
        r.lhs.to_string(),
        r.max_row().map(|x| x.profile.to_string()).unwrap_or_else(|| "-".into()),
        r.max_rhs().to_string(),
        r.margin().to_string(),
        r.verdict().to_string(),
        note.to_string(),
    ]
}

pub fn format_table(reports: &[GateReport], format: TableFormat) -> String {
    let mut rows: Vec<[String; 8]> = vec![HEADER.map(String::from)];
    rows.extend(reports.iter().map(row_cells));
    let mut out = String::new();
    match format {
        TableFormat::Tsv => {
            for r in rows {
                out.push_str(r.join("\t").trim_end());
                out.push('\n');
            }
        }
        TableFormat::Aligned => {
            let widths: Vec<usize> = (0..8).map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0)).collect();
            for r in rows {
                let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
        }
    }
    out
}

/// Per-profile breakdown of one report.
pub fn format_rows(r: &GateReport) -> String {
    let mut out = format!("{} gate m={} 2y={} lhs={}\n", r.kind, r.m, 2 * r.y, r.lhs);
    for row in &r.rows {
        out.push_str(&format!("  {}\t{}\t{}\n", row.profile, row.rhs, &r.lhs - &row.rhs));
    }
    if r.rows.is_empty() {
        out.push_str("  no profiles\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::int;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn omega_sets() {
        assert_eq!(omega_w(4), vec![ProfileW { d: 2, k: 4 }, ProfileW { d: 3, k: 2 }, ProfileW { d: 5, k: 1 }]);
        assert_eq!(omega_w_tilde(4), vec![ProfileW { d: 3, k: 2 }, ProfileW { d: 5, k: 1 }]);
        assert_eq!(omega_w(1), vec![ProfileW { d: 2, k: 1 }]);
        assert_eq!(omega_b_tilde(2), vec![ProfileB { d: 3, k: 1, mu: 3 }]);
        assert!(omega_b_tilde(1).is_empty());
        let b = omega_b(2, Some(4)).unwrap();
        assert!(b.truncated);
        let want = [(2, 2, 2), (3, 2, 2), (4, 2, 2), (3, 1, 3)].map(|(d, k, mu)| ProfileB { d, k, mu });
        assert_eq!(b.profiles, want);
        assert!(omega_b(2, None).is_err());
    }

    #[test]
    fn wronskian_examples() {
        let r = wronskian_gate(4, 4);
        assert_eq!(r.lhs, big(165));
        assert_eq!(r.rhs_for(Profile::W(ProfileW { d: 3, k: 2 })), Some(&big(164)));
        assert_eq!(r.rhs_for(Profile::W(ProfileW { d: 5, k: 1 })), Some(&big(146)));
        assert!(r.verdict() && r.margin() == big(1));
        let r = wronskian_gate(4, 3);
        assert_eq!((r.lhs.clone(), r.max_rhs()), (big(84), big(85)));
        assert!(!r.verdict());
        let r = wronskian_gate(5, 2);
        assert_eq!((r.lhs.clone(), r.max_rhs()), (big(70), big(70)));
        assert!(!r.verdict());
        assert!(!wronskian_gate(3, 2).applicable);
    }

    #[test]
    fn bezoutian_examples() {
        let r = bezoutian_gate(8, 2);
        assert_eq!((r.lhs.clone(), r.max_rhs()), (big(330), big(255)));
        assert!(r.verdict());
        let r = bezoutian_gate(3, 2);
        assert_eq!((r.lhs.clone(), r.max_rhs()), (big(15), big(40)));
        assert!(!r.verdict());
        assert!(bezoutian_gate(38, 2).verdict());
        assert!(bezoutian_gate(6, 1).vacuous());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_g(4, &int(2), &int(4)).unwrap(), int(1));
        assert_eq!(closed_form_g(5, &int(1), &int(2)).unwrap(), int(0));
        assert_eq!(closed_form_g(4, &int(2), &int(4)).unwrap(), Rational::from_integer(g_binomial(4, 2, 4)));
        assert!(closed_form_g(6, &int(1), &int(2)).is_err());
    }

    #[test]
    fn binomial_ratio_and_region() {
        assert!(binom_ratio_lemma_check(1, 2, 0, 1).unwrap());
        assert!(binom_ratio_lemma_check(2, 5, 3, 7).unwrap());
        assert!(binom_ratio_lemma_check(2, 2, 0, 1).is_err());
        assert!(non_hyperwron_region(6, 2));
        assert!(!non_hyperwron_region(4, 3));
        assert_eq!(restricted_hyperzout_bound(2), 37);
    }

    #[test]
    fn tables() {
        let reports = gate_grid(GateKind::Wronskian, &[4, 5], &[3, 4]);
        assert_eq!(reports.len(), 4);
        let tsv = format_table(&reports, TableFormat::Tsv);
        assert!(tsv.starts_with("m\t2y\tlhs"));
        assert!(tsv.contains("4\t8\t165\t(d=3,k=2)\t164\t1\ttrue"));
        let aligned = format_table(&reports, TableFormat::Aligned);
        assert_eq!(aligned.lines().count(), 5);
    }
}
