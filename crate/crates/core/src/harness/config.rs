use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mincut::DEFAULT_BUDGET;

/// A campaign check. Reports and configs name each check by its short
/// identifier (`as_str`); the descriptive `alias` is accepted on input too.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Check {
    /// Closed-form κ'(G × H) against the oracle.
    #[serde(rename = "theorem1")]
    KappaFormula,
    /// The `K_n` form against the general form and the oracle.
    #[serde(rename = "corollary1")]
    CompleteFactor,
    /// Every enumerated minimum cut classifies.
    #[serde(rename = "theorem2")]
    CutStructure,
    /// Super edge connectivity criterion for `G × K_n` against brute force.
    #[serde(rename = "corollary2")]
    SuperEdge,
    /// Product connectivity criterion against traversal.
    #[serde(rename = "weichsel")]
    Connectivity,
    /// Random cuts below `δ(G)δ(H)` leave every H-fiber whole.
    #[serde(rename = "lemma2")]
    FiberContainment,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::KappaFormula,
        Check::CompleteFactor,
        Check::CutStructure,
        Check::SuperEdge,
        Check::Connectivity,
        Check::FiberContainment,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::KappaFormula => "theorem1",
            Check::CompleteFactor => "corollary1",
            Check::CutStructure => "theorem2",
            Check::SuperEdge => "corollary2",
            Check::Connectivity => "weichsel",
            Check::FiberContainment => "lemma2",
        }
    }

    pub fn alias(self) -> &'static str {
        match self {
            Check::KappaFormula => "kappa-formula",
            Check::CompleteFactor => "complete-factor",
            Check::CutStructure => "cut-structure",
            Check::SuperEdge => "super-edge",
            Check::Connectivity => "connectivity",
            Check::FiberContainment => "fiber-containment",
        }
    }

    /// Checks that only make sense for a second factor with `2δ(H) > |H|`.
    pub fn needs_dense_h(self) -> bool {
        self != Check::Connectivity
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim() || c.alias() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown check {s:?}")))
    }
}

pub fn parse_checks(s: &str) -> Result<BTreeSet<Check>> {
    let checks = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            if t == "all" {
                Ok(Check::ALL.to_vec())
            } else {
                t.parse().map(|c| vec![c])
            }
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<BTreeSet<_>>();
    if checks.is_empty() {
        return Err(Error::Config("checks must be nonempty".into()));
    }
    Ok(checks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    MaxFlow,
    Subset,
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "maxflow" => Ok(Oracle::MaxFlow),
            "subset" => Ok(Oracle::Subset),
            other => Err(Error::Config(format!("unknown oracle {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

/// Where one factor's graphs come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    /// Every isomorphism class in the order range.
    Enumerate,
    /// A graph6 corpus, one graph per line.
    File(PathBuf),
    /// `count` seeded random graphs; `min_degree` defaults to 1 for G and to
    /// the smallest dense value `⌊n/2⌋+1` for H.
    Random { count: usize, min_degree: Option<usize> },
}

impl FromStr for GraphSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "enumerate" {
            return Ok(GraphSource::Enumerate);
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(GraphSource::File(PathBuf::from(path)));
        }
        if let Some(rest) = s.strip_prefix("random:") {
            let bad = || Error::Config(format!("expected random:<count>[:<min_degree>], got {s:?}"));
            let mut parts = rest.split(':');
            let count = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let min_degree = match parts.next() {
                Some(d) => Some(d.parse().map_err(|_| bad())?),
                None => None,
            };
            if parts.next().is_some() {
                return Err(bad());
            }
            return Ok(GraphSource::Random { count, min_degree });
        }
        Err(Error::Config(format!(
            "graph source must be enumerate, file:<path> or random:<count>[:<min_degree>], got {s:?}"
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub g_source: GraphSource,
    pub h_source: GraphSource,
    pub min_g_order: usize,
    pub max_g_order: usize,
    pub min_h_order: usize,
    pub max_h_order: usize,
    pub enumeration_budget: u64,
    pub seed: u64,
    pub checks: BTreeSet<Check>,
    pub oracle: Oracle,
    pub format: Format,
    /// Random cuts drawn per pair by the fiber-containment check.
    pub fiber_samples: usize,
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
    /// Record per-instance wall-clock milliseconds. Off gives byte-stable
    /// reports.
    pub timings: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            g_source: GraphSource::Enumerate,
            h_source: GraphSource::Enumerate,
            min_g_order: 2,
            max_g_order: 5,
            min_h_order: 3,
            max_h_order: 5,
            enumeration_budget: DEFAULT_BUDGET,
            seed: 0,
            checks: [Check::KappaFormula].into_iter().collect(),
            oracle: Oracle::MaxFlow,
            format: Format::Jsonl,
            fiber_samples: 32,
            workers: 1,
            timings: true,
        }
    }
}

impl CampaignConfig {
    /// Parses flat `key = value` text on top of the defaults. `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = CampaignConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::Config(format!("{key}: expected a nonnegative integer, got {v:?}")))
        }
        match key {
            "g_source" => self.g_source = value.parse()?,
            "h_source" => self.h_source = value.parse()?,
            "min_g_order" => self.min_g_order = num(key, value)?,
            "max_g_order" => self.max_g_order = num(key, value)?,
            "min_h_order" => self.min_h_order = num(key, value)?,
            "max_h_order" => self.max_h_order = num(key, value)?,
            "budget" | "enumeration_budget" => self.enumeration_budget = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "checks" => self.checks = parse_checks(value)?,
            "oracle" => self.oracle = value.parse()?,
            "format" => self.format = value.parse()?,
            "fiber_samples" => self.fiber_samples = num(key, value)?,
            "workers" => self.workers = num(key, value)?,
            "timings" => {
                self.timings = match value {
                    "true" | "on" | "1" => true,
                    "false" | "off" | "0" => false,
                    _ => return Err(Error::Config(format!("timings: expected true/false, got {value:?}"))),
                }
            }
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_g_order < 2 || self.min_g_order < 2 {
            return Err(Error::Config("G orders must be >= 2".into()));
        }
        if self.max_h_order < 3 || self.min_h_order < 3 {
            return Err(Error::Config("H orders must be >= 3".into()));
        }
        if self.min_g_order > self.max_g_order || self.min_h_order > self.max_h_order {
            return Err(Error::Config("min order exceeds max order".into()));
        }
        if self.checks.is_empty() {
            return Err(Error::Config("checks must be nonempty".into()));
        }
        Ok(())
    }

    /// Connectivity-only campaigns also range over disconnected and
    /// bipartite factors.
    pub fn connectivity_only(&self) -> bool {
        self.checks.iter().all(|c| !c.needs_dense_h())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_key_values() {
        let cfg = CampaignConfig::parse(
            "# desk run\nmax_g_order = 4\nchecks = theorem1, theorem2\nbudget=1000\nh_source = random:3:2\ntimings = off\n",
        )
        .unwrap();
        assert_eq!(cfg.max_g_order, 4);
        assert_eq!(cfg.enumeration_budget, 1000);
        assert_eq!(cfg.checks, [Check::KappaFormula, Check::CutStructure].into_iter().collect());
        assert_eq!(cfg.h_source, GraphSource::Random { count: 3, min_degree: Some(2) });
        assert!(!cfg.timings);
    }

    #[test]
    fn names_and_identifiers_parse_alike() {
        for c in Check::ALL {
            assert_eq!(c.as_str().parse::<Check>().unwrap(), c);
            assert_eq!(c.alias().parse::<Check>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.as_str()));
        }
        assert_eq!(parse_checks("all").unwrap().len(), 6);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(CampaignConfig::parse("max_g_order = 1").is_err());
        assert!(CampaignConfig::parse("max_h_order = 2").is_err());
        assert!(CampaignConfig::parse("checks = ").is_err());
        assert!(CampaignConfig::parse("checks = theorem9").is_err());
        assert!(CampaignConfig::parse("budget = -1").is_err());
        assert!(CampaignConfig::parse("colour = blue").is_err());
        assert!(CampaignConfig::parse("just text").is_err());
        assert!(CampaignConfig::parse("g_source = somewhere").is_err());
    }

    #[test]
    fn all_expands() {
        assert_eq!(parse_checks("all").unwrap().len(), 6);
    }
}
