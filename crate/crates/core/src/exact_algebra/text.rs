//! Plain-text polynomial format.
//!
//! ```text
//! # comment
//! poly m=3 deg=2
//! 1/1 [2,0,0]
//! -1/2 [0,1,1]
//! ```
//!
//! A file may hold several `poly` blocks. Coefficients are exact rationals
//! (`a/b` or `a`), exponent lists have exactly m entries summing to deg.

use super::{HomogeneousPoly, Monomial, Rational};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::str::FromStr;

fn perr<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = num_bigint::BigInt::from_str(n.trim()).ok()?;
        let d = num_bigint::BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        num_bigint::BigInt::from_str(s).ok().map(Rational::from_integer)
    }
}

/// Whitespace- or comma-separated rationals.
pub fn parse_vector(s: &str) -> Option<Vec<Rational>> {
    s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(parse_rational).collect()
}

fn parse_header(line_no: usize, line: &str) -> Result<(usize, u32)> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some("poly") {
        return perr(line_no, "expected header `poly m=<int> deg=<int>`");
    }
    let (mut m, mut d) = (None, None);
    for p in parts {
        match p.split_once('=') {
            Some(("m", v)) => m = v.parse::<usize>().ok(),
            Some(("deg", v)) => d = v.parse::<u32>().ok(),
            _ => return perr(line_no, format!("unexpected header field `{p}`")),
        }
    }
    match (m, d) {
        (Some(m), Some(d)) if m > 0 => Ok((m, d)),
        _ => perr(line_no, "header needs positive m and a degree"),
    }
}

fn parse_term(line_no: usize, line: &str, m: usize, deg: u32) -> Result<(Monomial, Rational)> {
    let Some(open) = line.find('[') else { return perr(line_no, "term needs an exponent list `[e1,...,em]`") };
    let Some(close) = line.rfind(']') else { return perr(line_no, "unterminated exponent list") };
    if close < open || !line[close + 1..].trim().is_empty() {
        return perr(line_no, "malformed exponent list");
    }
    let Some(c) = parse_rational(&line[..open]) else {
        return perr(line_no, format!("bad coefficient `{}`", line[..open].trim()));
    };
    let exps: Option<Vec<u32>> = line[open + 1..close].split(',').map(|t| t.trim().parse::<u32>().ok()).collect();
    let Some(exps) = exps else { return perr(line_no, "exponents must be nonnegative integers") };
    if exps.len() != m {
        return perr(line_no, format!("exponent list has {} entries, expected {m}", exps.len()));
    }
    if exps.iter().sum::<u32>() != deg {
        return perr(line_no, format!("monomial degree {} does not match deg={deg}", exps.iter().sum::<u32>()));
    }
    Ok((exps, c))
}

/// A `poly` block being read: (m, deg, terms so far).
type Block = (usize, u32, Vec<(Monomial, Rational)>);

pub fn parse_polys(text: &str) -> Result<Vec<HomogeneousPoly>> {
    let mut out = Vec::new();
    let mut cur: Option<Block> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with("poly") {
            if let Some((m, d, terms)) = cur.take() {
                out.push(HomogeneousPoly::from_terms(m, d, terms)?);
            }
            let (m, d) = parse_header(line_no, line)?;
            cur = Some((m, d, Vec::new()));
            continue;
        }
        match cur.as_mut() {
            None => return perr(line_no, "term before any `poly` header"),
            Some((m, d, terms)) => terms.push(parse_term(line_no, line, *m, *d)?),
        }
    }
    if let Some((m, d, terms)) = cur {
        out.push(HomogeneousPoly::from_terms(m, d, terms)?);
    }
    if out.is_empty() {
        return perr(1, "no `poly` block found");
    }
    Ok(out)
}

pub fn parse_poly(text: &str) -> Result<HomogeneousPoly> {
    let mut v = parse_polys(text)?;
    if v.len() != 1 {
        return perr(1, format!("expected one polynomial, found {}", v.len()));
    }
    Ok(v.pop().unwrap())
}

/// Space-separated, readable back by `parse_vector`.
pub fn format_vector(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn format_poly(p: &HomogeneousPoly) -> String {
    let mut s = format!("poly m={} deg={}\n", p.nvars(), p.degree());
    for (e, c) in p.terms() {
        let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("{}/{} [{}]\n", c.numer(), c.denom(), exps.join(",")));
    }
    s
}

pub fn format_polys(ps: &[HomogeneousPoly]) -> String {
    ps.iter().map(format_poly).collect::<Vec<_>>().join("")
}
