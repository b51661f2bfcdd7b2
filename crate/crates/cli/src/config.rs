//! Run configuration: a TOML file with optional sections, every number
//! that enters a computation given as an exact rational string.

use std::path::Path;

use parind::arith::rational::{is_padic_unit, is_prime, parse_rational};
use parind::saturation::Universe;
use parind::{Orientation, Rational, DEFAULT_GUARD};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    p: Option<u64>,
    m: Option<u32>,
    n: Option<usize>,
    blocks: Option<Vec<usize>>,
    orientations: Option<Vec<String>>,
    characters: Option<Vec<Vec<String>>>,
    guard: Option<u64>,
    orbital: Option<RawOrbital>,
    unipotent: Option<RawUnipotent>,
    saturation: Option<RawSaturation>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrbital {
    window: Option<[i64; 2]>,
    unit: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUnipotent {
    cases: Option<Vec<[u32; 2]>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSaturation {
    degree: Option<usize>,
    height: Option<u64>,
    max_candidates: Option<u64>,
}

/// A validated configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub p: u64,
    pub m: u32,
    pub n: usize,
    pub blocks: Vec<usize>,
    pub orientations: Vec<Orientation>,
    pub characters: Vec<Vec<Rational>>,
    pub guard: u64,
    /// Valuations `lo..=hi` of the γ grid `diag(p^i, u·p^j)`.
    pub window: (i64, i64),
    pub unit: Rational,
    /// `(n, q)` pairs for the finite-field suite.
    pub fields: Vec<(usize, u32)>,
    pub universe: Universe,
    /// Test mode: replace `|Δ|^{1/2}` by `|Δ|` in the descent check.
    pub corrupt_normalization: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let r = |s: &str| parse_rational(s).expect("literal");
        RunConfig {
            p: 2,
            m: 1,
            n: 2,
            blocks: vec![1, 1],
            orientations: vec![Orientation::Upper, Orientation::Lower],
            characters: vec![
                vec![r("1"), r("1")],
                vec![r("3"), r("5")],
                vec![r("-2"), r("7")],
                vec![r("1/3"), r("5/2")],
            ],
            guard: DEFAULT_GUARD,
            window: (-2, 2),
            unit: r("-1"),
            fields: vec![(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)],
            universe: Universe::default(),
            corrupt_normalization: false,
        }
    }
}

fn line_of(text: &str, key: &str) -> Option<usize> {
    text.lines()
        .position(|l| {
            let l = l.trim_start();
            l.strip_prefix(key)
                .is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map(|i| i + 1)
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| {
            let line = e.span().map(|s| text[..s.start].lines().count().max(1));
            CliError::Config {
                field: "(syntax)".into(),
                line,
                message: e.message().to_string(),
            }
        })?;
        let err = |field: &str, message: String| CliError::Config {
            field: field.into(),
            line: line_of(text, field.rsplit('.').next().unwrap()),
            message,
        };
        let mut cfg = RunConfig::default();
        if let Some(p) = raw.p {
            cfg.p = p;
        }
        if !is_prime(cfg.p) {
            return Err(err("p", format!("{} is not prime", cfg.p)));
        }
        if let Some(m) = raw.m {
            cfg.m = m;
        }
        if cfg.m < 1 {
            return Err(err("m", "level must be at least 1".into()));
        }
        if let Some(n) = raw.n {
            cfg.n = n;
            if raw.blocks.is_none() {
                cfg.blocks = vec![1; n];
            }
            if raw.characters.is_none() {
                cfg.characters = default_characters(cfg.blocks.len());
            }
        }
        if cfg.n == 0 {
            return Err(err("n", "dimension must be positive".into()));
        }
        if let Some(b) = raw.blocks {
            if raw.characters.is_none() {
                cfg.characters = default_characters(b.len());
            }
            cfg.blocks = b;
        }
        if cfg.blocks.contains(&0) || cfg.blocks.iter().sum::<usize>() != cfg.n {
            return Err(err(
                "blocks",
                format!("{:?} is not a composition of n = {}", cfg.blocks, cfg.n),
            ));
        }
        if let Some(os) = raw.orientations {
            cfg.orientations = os
                .iter()
                .map(|o| match o.as_str() {
                    "upper" => Ok(Orientation::Upper),
                    "lower" => Ok(Orientation::Lower),
                    other => Err(err(
                        "orientations",
                        format!("unknown orientation {other:?}"),
                    )),
                })
                .collect::<Result<_, _>>()?;
            if cfg.orientations.is_empty() {
                return Err(err(
                    "orientations",
                    "at least one orientation is needed".into(),
                ));
            }
        }
        if let Some(cs) = raw.characters {
            cfg.characters = cs
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|x| parse_rational(x).map_err(|e| err("characters", e.to_string())))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?;
        }
        for c in &cfg.characters {
            if c.len() != cfg.blocks.len() {
                return Err(err(
                    "characters",
                    format!(
                        "character with {} parameters for {} blocks",
                        c.len(),
                        cfg.blocks.len()
                    ),
                ));
            }
            if c.iter().any(|x| x == &Rational::from_integer(0.into())) {
                return Err(err(
                    "characters",
                    "character parameters must be nonzero".into(),
                ));
            }
        }
        if let Some(g) = raw.guard {
            cfg.guard = g;
        }
        if cfg.guard == 0 {
            return Err(err("guard", "guard must be positive".into()));
        }
        if let Some(o) = raw.orbital {
            if let Some([lo, hi]) = o.window {
                if lo > hi {
                    return Err(err("orbital.window", format!("empty window [{lo}, {hi}]")));
                }
                cfg.window = (lo, hi);
            }
            if let Some(u) = o.unit {
                cfg.unit = parse_rational(&u).map_err(|e| err("orbital.unit", e.to_string()))?;
            }
        }
        if !is_padic_unit(&cfg.unit, cfg.p) || cfg.unit == Rational::from_integer(1.into()) {
            return Err(err(
                "orbital.unit",
                format!("{} must be a {}-adic unit other than 1", cfg.unit, cfg.p),
            ));
        }
        if let Some(u) = raw.unipotent {
            if let Some(cases) = u.cases {
                cfg.fields = cases.iter().map(|&[n, q]| (n as usize, q)).collect();
            }
        }
        for &(n, q) in &cfg.fields {
            if n == 0 || !is_prime(q as u64) {
                return Err(err(
                    "unipotent.cases",
                    format!("({n}, {q}) needs n ≥ 1 and q prime"),
                ));
            }
        }
        if let Some(s) = raw.saturation {
            if let Some(d) = s.degree {
                cfg.universe.degree = d;
            }
            if let Some(h) = s.height {
                if h == 0 {
                    return Err(err("saturation.height", "height must be positive".into()));
                }
                cfg.universe.height = h;
            }
            if let Some(c) = s.max_candidates {
                cfg.universe.max_candidates = c;
            }
        }
        Ok(cfg)
    }
}

fn default_characters(k: usize) -> Vec<Vec<Rational>> {
    let seeds = [[1i64, 1, 1, 1], [3, 5, 7, 11], [-2, 7, 3, -5]];
    seeds
        .iter()
        .map(|s| {
            (0..k)
                .map(|i| Rational::from_integer(s[i % 4].into()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn overrides_and_sections() {
        let cfg = RunConfig::from_toml("p = 3\nn = 3\nblocks = [2, 1]\n[orbital]\nwindow = [0, 1]\nunit = \"2\"\n[saturation]\ndegree = 1\n").unwrap();
        assert_eq!((cfg.p, cfg.n), (3, 3));
        assert_eq!(cfg.characters[0].len(), 2);
        assert_eq!(cfg.window, (0, 1));
        assert_eq!(cfg.universe.degree, 1);
    }

    #[test]
    fn diagnostics_name_field_and_line() {
        match RunConfig::from_toml("n = 2\nblocks = [2, 1]\n") {
            Err(CliError::Config { field, line, .. }) => {
                assert_eq!(field, "blocks");
                assert_eq!(line, Some(2));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            RunConfig::from_toml("p = 4"),
            Err(CliError::Config { .. })
        ));
        assert!(matches!(
            RunConfig::from_toml("bogus = 1"),
            Err(CliError::Config { .. })
        ));
        assert!(matches!(
            RunConfig::from_toml("characters = [[\"1\", \"x\"]]"),
            Err(CliError::Config { .. })
        ));
        assert!(matches!(
            RunConfig::from_toml("[orbital]\nunit = \"1\""),
            Err(CliError::Config { .. })
        ));
    }
}
