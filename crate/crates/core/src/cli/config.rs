//! Flat `key = value` experiment configs, one experiment per file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::resolutions::ResolutionName;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    VerifyResolutions,
    VerifyHomotopy,
    ClassSumHomotopy,
    PairingAdjointness,
    DistanceCurve,
    TranslationDecay,
    FiniteHomology,
    FiniteIndex,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::VerifyResolutions,
        Experiment::VerifyHomotopy,
        Experiment::ClassSumHomotopy,
        Experiment::PairingAdjointness,
        Experiment::DistanceCurve,
        Experiment::TranslationDecay,
        Experiment::FiniteHomology,
        Experiment::FiniteIndex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::VerifyResolutions => "verify-resolutions",
            Experiment::VerifyHomotopy => "verify-homotopy",
            Experiment::ClassSumHomotopy => "class-sum-homotopy",
            Experiment::PairingAdjointness => "pairing-adjointness",
            Experiment::DistanceCurve => "distance-curve",
            Experiment::TranslationDecay => "translation-decay",
            Experiment::FiniteHomology => "finite-homology",
            Experiment::FiniteIndex => "finite-index",
        }
    }

    /// Parameter syntax, as printed by `lab list`.
    pub fn usage(self) -> &'static str {
        match self {
            Experiment::VerifyResolutions => "[resolution=<name>]",
            Experiment::VerifyHomotopy => "group=<g> h=<element> degree=<d,..> R=<r> [samples=20] [seed]",
            Experiment::ClassSumHomotopy => "group=<g> class=<representative> degree=<d,..> R=<r> [samples=20] [seed]",
            Experiment::PairingAdjointness => "resolution=<name> degree=<i> R=<list> p=<list> [samples=1000] [seed]",
            Experiment::DistanceCurve => "resolution=<name> degree=<i> R=<list> p=<list> [x=<ring element>;..] [max_iterations=500]",
            Experiment::TranslationDecay => "group=<g> R=<support radius> p=<list> [count=<k> | indices=<list>] [eps=0.1] [seed]",
            Experiment::FiniteHomology => "n=<order> N=<top degree> p=<list>",
            Experiment::FiniteIndex => "n=<order> m=<subgroup order> p=<list>",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| config_err("experiment", format!("unknown experiment `{s}`")))
    }
}

pub(crate) fn config_err(field: &str, message: impl Into<String>) -> Error {
    Error::Config { field: field.to_string(), message: message.into() }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub group: Option<GroupSpec>,
    pub resolution: Option<ResolutionName>,
    pub degrees: Vec<usize>,
    pub p: Vec<f64>,
    pub radii: Vec<usize>,
    pub indices: Option<Vec<i64>>,
    pub count: Option<usize>,
    /// `h` for verify-homotopy, `class` for class-sum-homotopy.
    pub element: Option<String>,
    /// Chain for distance-curve: one ring element per copy, separated by `;`.
    pub x: Option<String>,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub top: Option<usize>,
    pub eps: f64,
    pub seed: u64,
    pub samples: Option<usize>,
    pub max_ball: Option<usize>,
    pub max_iterations: usize,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        ExperimentConfig {
            experiment,
            group: None,
            resolution: None,
            degrees: Vec::new(),
            p: Vec::new(),
            radii: Vec::new(),
            indices: None,
            count: None,
            element: None,
            x: None,
            n: None,
            m: None,
            top: None,
            eps: 0.1,
            seed: 0,
            samples: None,
            max_ball: None,
            max_iterations: 500,
            output: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs: Vec<(String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| config_err("line", format!("line {} is not `key = value`", lineno + 1)))?;
            let k = k.trim().to_string();
            if pairs.iter().any(|(seen, _)| *seen == k) {
                return Err(config_err(&k, "given twice"));
            }
            pairs.push((k, v.trim().to_string()));
        }
        let experiment = pairs
            .iter()
            .find(|(k, _)| k == "experiment")
            .ok_or_else(|| config_err("experiment", "missing"))?
            .1
            .parse()?;
        let mut cfg = ExperimentConfig::new(experiment);
        for (k, v) in &pairs {
            let field = k.as_str();
            let wrap = |e: Error| match e {
                Error::Config { .. } => e,
                other => config_err(field, other.to_string()),
            };
            match field {
                "experiment" => {}
                "group" => cfg.group = Some(v.parse().map_err(wrap)?),
                "resolution" => cfg.resolution = Some(v.parse().map_err(wrap)?),
                "degree" => cfg.degrees = parse_list(field, v)?,
                "p" => cfg.p = parse_list(field, v)?,
                "R" => cfg.radii = parse_list(field, v)?,
                "indices" => cfg.indices = Some(parse_list(field, v)?),
                "count" => cfg.count = Some(parse_one(field, v)?),
                "h" | "class" => cfg.element = Some(v.clone()),
                "x" => cfg.x = Some(v.clone()),
                "n" => cfg.n = Some(parse_one(field, v)?),
                "m" => cfg.m = Some(parse_one(field, v)?),
                "N" => cfg.top = Some(parse_one(field, v)?),
                "eps" => cfg.eps = parse_one(field, v)?,
                "seed" => cfg.seed = parse_one(field, v)?,
                "samples" => cfg.samples = Some(parse_one(field, v)?),
                "max_ball" => cfg.max_ball = Some(parse_one(field, v)?),
                "max_iterations" => cfg.max_iterations = parse_one(field, v)?,
                "output" => cfg.output = Some(PathBuf::from(v)),
                _ => return Err(config_err(field, "unknown key")),
            }
        }
        cfg.check()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| config_err("path", format!("{}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        if let Some(out) = &cfg.output {
            if out.is_relative() {
                cfg.output = Some(path.parent().unwrap_or(Path::new(".")).join(out));
            }
        } else {
            cfg.output = Some(path.with_extension("csv"));
        }
        Ok(cfg)
    }

    /// Preconditions shared by all experiments.
    pub fn check(&self) -> Result<()> {
        if let Some(p) = self.p.iter().find(|p| p.is_nan() || **p <= 1.0) {
            return Err(config_err("p", format!("p must exceed 1 (got {p})")));
        }
        if self.p.iter().any(|p| !p.is_finite()) {
            return Err(config_err("p", "p must be finite"));
        }
        if !(self.eps > 0.0) {
            return Err(config_err("eps", "eps must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(config_err("max_iterations", "must be positive"));
        }
        Ok(())
    }

    pub(crate) fn need<'a, T>(&self, field: &str, v: &'a Option<T>) -> Result<&'a T> {
        v.as_ref().ok_or_else(|| config_err(field, format!("required by {}", self.experiment)))
    }

    pub(crate) fn need_list<'a, T>(&self, field: &str, v: &'a [T]) -> Result<&'a [T]> {
        if v.is_empty() {
            return Err(config_err(field, format!("required by {}", self.experiment)));
        }
        Ok(v)
    }
}

fn parse_one<T: FromStr>(field: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| config_err(field, format!("cannot parse `{v}`")))
}

/// Comma-separated values; integer ranges may be written `a..b` (inclusive).
fn parse_list<T: FromStr>(field: &str, v: &str) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for part in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: i64 = parse_one(field, a)?;
            let b: i64 = parse_one(field, b)?;
            if b < a {
                return Err(config_err(field, format!("empty range `{part}`")));
            }
            for k in a..=b {
                out.push(parse_one(field, &k.to_string())?);
            }
        } else {
            out.push(parse_one(field, part)?);
        }
    }
    if out.is_empty() {
        return Err(config_err(field, "empty list"));
    }
    Ok(out)
}
