//! Certificate manifests: `key: value` lines naming the data of a hyperwron,
//! hyperzout or interlacer certificate. Polynomials live in sibling files in
//! the polynomial text format; paths are relative to the manifest.
//!
//! ```text
//! type: hyperwron
//! p: cert.p.poly
//! e: 1 1 0
//! u: 1 1 0
//! v: 1 1 0
//! phi: identity
//! claim: cert.claim.poly
//! verdict: {"kind":"certified","reason":"Lorentzian quadratic"}
//! seed: 0
//! samples: 10000
//! ```
//!
//! Hyperzouts add `mu:` and `xi:` (a file of the mu live slots, lowest slot
//! first); interlacers give `interlacer:` instead of `u:` and `v:`.

use crate::error::{Error, Result};
use crate::exact_algebra::{
    format_poly, format_polys, format_vector, parse_poly, parse_polys, parse_vector, HomogeneousPoly, PolyMap, Rational,
};
use crate::hyperbolic::Verdict;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifestKind {
    Hyperwron,
    Hyperzout,
    Interlacer,
}

impl fmt::Display for ManifestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ManifestKind::Hyperwron => "hyperwron",
            ManifestKind::Hyperzout => "hyperzout",
            ManifestKind::Interlacer => "interlacer",
        })
    }
}

impl FromStr for ManifestKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "hyperwron" => Ok(ManifestKind::Hyperwron),
            "hyperzout" => Ok(ManifestKind::Hyperzout),
            "interlacer" => Ok(ManifestKind::Interlacer),
            _ => Err(format!("unknown certificate type `{s}`")),
        }
    }
}

/// Serialized hyperbolicity evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VerdictRecord {
    Certified { reason: String },
    Sampled { n: usize, seed: u64 },
    Refuted { witness: Vec<String> },
}

impl From<&Verdict> for VerdictRecord {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::Certified(r) => VerdictRecord::Certified { reason: r.clone() },
            Verdict::Sampled { trials, seed } => VerdictRecord::Sampled { n: *trials, seed: *seed },
            Verdict::Refuted(w) => VerdictRecord::Refuted { witness: w.iter().map(|x| x.to_string()).collect() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub kind: ManifestKind,
    pub p: HomogeneousPoly,
    pub e: Vec<Rational>,
    pub u: Option<Vec<Rational>>,
    pub v: Option<Vec<Rational>>,
    pub phi: PolyMap,
    pub mu: Option<usize>,
    pub xi: Option<Vec<HomogeneousPoly>>,
    pub interlacer: Option<HomogeneousPoly>,
    pub claim: HomogeneousPoly,
    pub verdict: Option<VerdictRecord>,
    pub seed: u64,
    pub samples: usize,
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, message: msg.into() }
}

fn io_at(path: &Path, e: std::io::Error) -> Error {
    Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn read_file(base: &Path, rel: &str) -> Result<String> {
    let path = base.join(rel);
    std::fs::read_to_string(&path).map_err(|e| io_at(&path, e))
}

impl Manifest {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| io_at(path, e))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Parses manifest text, loading referenced files relative to `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut fields: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once(':') else {
                return Err(bad(i + 1, "expected `key: value`"));
            };
            if fields.insert(k.trim().to_string(), (i + 1, v.trim().to_string())).is_some() {
                return Err(bad(i + 1, format!("duplicate key `{}`", k.trim())));
            }
        }
        let get = |k: &str| fields.get(k).map(|(l, v)| (*l, v.as_str()));
        let need = |k: &str| get(k).ok_or_else(|| bad(0, format!("missing key `{k}`")));
        let vector = |k: &str| -> Result<Option<Vec<Rational>>> {
            get(k)
                .map(|(l, v)| parse_vector(v).ok_or_else(|| bad(l, format!("`{k}` is not a rational vector"))))
                .transpose()
        };
        let poly_file = |k: &str| -> Result<Option<HomogeneousPoly>> {
            get(k).map(|(_, v)| parse_poly(&read_file(base, v)?)).transpose()
        };

        let (l, kind) = need("type")?;
        let kind: ManifestKind = kind.parse().map_err(|m: String| bad(l, m))?;
        let p = poly_file("p")?.ok_or_else(|| bad(0, "missing key `p`"))?;
        let e = vector("e")?.ok_or_else(|| bad(0, "missing key `e`"))?;
        let (l, phi_ref) = need("phi")?;
        let phi = if phi_ref == "identity" {
            PolyMap::identity(p.nvars())
        } else {
            let comps = parse_polys(&read_file(base, phi_ref)?)?;
            let m = comps[0].nvars();
            let k = comps[0].degree();
            PolyMap::new(m, k, comps).map_err(|e| bad(l, e.to_string()))?
        };
        let claim = poly_file("claim")?.ok_or_else(|| bad(0, "missing key `claim`"))?;
        let mu = get("mu")
            .map(|(l, v)| v.parse::<usize>().map_err(|_| bad(l, "`mu` must be a positive integer")))
            .transpose()?;
        let xi = get("xi").map(|(_, v)| parse_polys(&read_file(base, v)?)).transpose()?;
        let verdict = get("verdict")
            .map(|(l, v)| serde_json::from_str::<VerdictRecord>(v).map_err(|e| bad(l, format!("bad verdict: {e}"))))
            .transpose()?;
        let seed = get("seed").map(|(l, v)| v.parse::<u64>().map_err(|_| bad(l, "bad seed"))).transpose()?.unwrap_or(0);
        let samples = get("samples")
            .map(|(l, v)| v.parse::<usize>().map_err(|_| bad(l, "bad sample count")))
            .transpose()?
            .unwrap_or(10_000);
        let m = Manifest {
            kind,
            p,
            e,
            u: vector("u")?,
            v: vector("v")?,
            phi,
            mu,
            xi,
            interlacer: poly_file("interlacer")?,
            claim,
            verdict,
            seed,
            samples,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let n = self.p.nvars();
        let dim = |what: &str| Err(Error::Dimension(format!("{what} does not match the {n} variables of p")));
        if self.e.len() != n {
            return dim("e");
        }
        if self.phi.len() != n {
            return dim("phi");
        }
        let both = self.u.as_ref().zip(self.v.as_ref());
        match self.kind {
            ManifestKind::Hyperwron | ManifestKind::Hyperzout => {
                let Some((u, v)) = both else { return Err(bad(0, "u and v are required")) };
                if u.len() != n || v.len() != n {
                    return dim("u or v");
                }
            }
            ManifestKind::Interlacer => {
                if self.interlacer.is_none() {
                    return Err(bad(0, "missing key `interlacer`"));
                }
            }
        }
        if self.kind == ManifestKind::Hyperzout {
            let (Some(mu), Some(xi)) = (self.mu, &self.xi) else { return Err(bad(0, "hyperzout needs `mu` and `xi`")) };
            if xi.len() != mu {
                return Err(Error::Dimension(format!("xi lists {} slots, mu = {mu}", xi.len())));
            }
        }
        Ok(())
    }

    /// Writes `<dir>/<stem>.manifest` and its polynomial files. Returns the
    /// manifest path.
    pub fn write(&self, dir: &Path, stem: &str) -> Result<PathBuf> {
        std::fs::create_dir_all(dir).map_err(|e| io_at(dir, e))?;
        let mut out = String::new();
        let mut put = |k: &str, v: String| out.push_str(&format!("{k}: {v}\n"));
        let mut files: Vec<(String, String)> = Vec::new();
        let mut file = |suffix: &str, body: String| {
            let name = format!("{stem}.{suffix}.poly");
            files.push((name.clone(), body));
            name
        };
        put("type", self.kind.to_string());
        put("p", file("p", format_poly(&self.p)));
        put("e", format_vector(&self.e));
        if let Some(u) = &self.u {
            put("u", format_vector(u));
        }
        if let Some(v) = &self.v {
            put("v", format_vector(v));
        }
        if self.phi == PolyMap::identity(self.p.nvars()) {
            put("phi", "identity".into());
        } else {
            put("phi", file("phi", format_polys(self.phi.components())));
        }
        if let Some(mu) = self.mu {
            put("mu", mu.to_string());
        }
        if let Some(xi) = &self.xi {
            put("xi", file("xi", format_polys(xi)));
        }
        if let Some(q) = &self.interlacer {
            put("interlacer", file("interlacer", format_poly(q)));
        }
        put("claim", file("claim", format_poly(&self.claim)));
        if let Some(v) = &self.verdict {
            put("verdict", serde_json::to_string(v).expect("verdict serializes"));
        }
        put("seed", self.seed.to_string());
        put("samples", self.samples.to_string());
        for (name, body) in files {
            let target = dir.join(name);
            std::fs::write(&target, body).map_err(|e| io_at(&target, e))?;
        }
        let path = dir.join(format!("{stem}.manifest"));
        std::fs::write(&path, out).map_err(|e| io_at(&path, e))?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, rvec};

    fn sample() -> Manifest {
        let x = |i| HomogeneousPoly::var(2, i);
        Manifest {
            kind: ManifestKind::Hyperwron,
            p: x(0).mul(&x(1)),
            e: rvec(&[1, 1]),
            u: Some(rvec(&[1, 1])),
            v: Some(vec![int(1), Rational::new(1.into(), 2.into())]),
            phi: PolyMap::identity(2),
            mu: None,
            xi: None,
            interlacer: None,
            claim: x(0).square().add(&x(1).square()),
            verdict: Some(VerdictRecord::Sampled { n: 200, seed: 4 }),
            seed: 7,
            samples: 500,
        }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let m = sample();
        let path = m.write(dir.path(), "cert").unwrap();
        assert_eq!(Manifest::read(&path).unwrap(), m);
        let mut m2 = m.clone();
        m2.phi = PolyMap::linear(&[rvec(&[1, 2]), rvec(&[0, 1])]).unwrap();
        let path = m2.write(dir.path(), "lin").unwrap();
        assert_eq!(Manifest::read(&path).unwrap(), m2);
    }

    #[test]
    fn verdict_json() {
        let s = serde_json::to_string(&VerdictRecord::Sampled { n: 200, seed: 3 }).unwrap();
        assert_eq!(s, r#"{"kind":"sampled","n":200,"seed":3}"#);
    }

    #[test]
    fn errors() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(Manifest::read(&dir.path().join("none.manifest")), Err(Error::Io(_))));
        let err = Manifest::parse("type: nonsense\n", dir.path()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
