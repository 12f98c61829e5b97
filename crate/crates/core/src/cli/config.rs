//! Versioned JSON sweep configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analytic::{AtomicInputs, DEFAULT_HIERARCHY_THRESHOLD, MIN_POINTS_PER_PERIOD};
use crate::error::{Error, Result};
use crate::lattice::{Boundary, ChargeConfig, LatticeSpec, Vertex};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    E1Curves,
    Plg,
    Emergence,
    Theorem,
    Params,
    Potential,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::E1Curves => "e1_curves",
            Experiment::Plg => "plg",
            Experiment::Emergence => "emergence",
            Experiment::Theorem => "theorem",
            Experiment::Params => "params",
            Experiment::Potential => "potential",
        }
    }

    /// Extension of the primary output file.
    pub fn extension(self) -> &'static str {
        match self {
            Experiment::Theorem | Experiment::Params => "json",
            _ => "csv",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Logspace {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Logspace {
    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.start > 0.0 && self.stop > 0.0) || self.points == 0 {
            return Err(Error::Config(format!(
                "logspace needs positive bounds and at least one point, got {self:?}"
            )));
        }
        if self.points == 1 {
            return Ok(vec![self.start]);
        }
        let (a, b) = (self.start.log10(), self.stop.log10());
        let last = self.points - 1;
        Ok((0..self.points)
            .map(|i| match i {
                0 => self.start,
                i if i == last => self.stop,
                i => 10f64.powf(a + (b - a) * i as f64 / last as f64),
            })
            .collect())
    }
}

/// A parameter grid: an explicit list or `{"logspace": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    List(Vec<f64>),
    Log { logspace: Logspace },
}

impl Grid {
    pub fn values(&self) -> Result<Vec<f64>> {
        match self {
            Grid::List(v) => Ok(v.clone()),
            Grid::Log { logspace } => logspace.values(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub n1: usize,
    pub n2: usize,
    #[serde(default = "open")]
    pub boundary: Boundary,
}

fn open() -> Boundary {
    Boundary::Open
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChargeEntry {
    pub n1: usize,
    pub n2: usize,
    pub q: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremCase {
    #[serde(default)]
    pub charges: Vec<ChargeEntry>,
    pub l_small: u32,
    pub order: usize,
    /// Defaults to `l_small + order + 2`.
    #[serde(default)]
    pub l_large_proxy: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub v0: f64,
    pub k: f64,
    pub points_per_period: usize,
}

/// On-disk configuration. Every field but `schema_version` is optional.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub schema_version: u32,
    pub experiment: Option<Experiment>,
    pub g: Option<Grid>,
    pub l: Option<Vec<u32>>,
    pub lambda: Option<Grid>,
    pub lattice: Option<LatticeConfig>,
    pub charges: Option<Vec<ChargeEntry>>,
    pub e1_link: Option<usize>,
    pub tracked_links: Option<Vec<usize>>,
    pub tracked_vertices: Option<Vec<[usize; 2]>>,
    pub mu: Option<f64>,
    pub omega: Option<f64>,
    pub theorem: Option<Vec<TheoremCase>>,
    pub atomic: Option<AtomicInputs>,
    pub hierarchy_threshold: Option<f64>,
    pub potential: Option<PotentialConfig>,
    pub tol: Option<f64>,
    pub workers: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid JSON: {e}")))?;
        match value.get("schema_version").and_then(|v| v.as_u64()) {
            Some(v) if v == SCHEMA_VERSION as u64 => {}
            Some(v) => {
                return Err(Error::Config(format!(
                    "unsupported schema_version {v}, expected {SCHEMA_VERSION}"
                )))
            }
            None => return Err(Error::Config("missing integer field schema_version".into())),
        }
        serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Flags given on the command line; these win over the file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Fully defaulted and validated configuration for one experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub experiment: Experiment,
    pub g: Vec<f64>,
    pub l: Vec<u32>,
    pub lambda: Vec<f64>,
    pub lattice: LatticeSpec,
    pub charges: ChargeConfig,
    pub e1_link: usize,
    pub tracked_links: Vec<usize>,
    pub tracked_vertices: Vec<Vertex>,
    pub mu: f64,
    pub omega: f64,
    pub theorem: Vec<TheoremCase>,
    pub atomic: AtomicInputs,
    pub hierarchy_threshold: f64,
    pub potential: PotentialConfig,
    pub tol: f64,
    pub workers: usize,
    pub seed: u64,
    pub out: PathBuf,
}

fn charges_from(entries: &[ChargeEntry]) -> ChargeConfig {
    ChargeConfig::from_pairs(entries.iter().map(|c| (Vertex::new(c.n1, c.n2), c.q)))
}

fn default_charges(experiment: Experiment) -> ChargeConfig {
    match experiment {
        Experiment::E1Curves => ChargeConfig::charged_plaquette(),
        // simulation variables: the staggered image of the charged plaquette
        Experiment::Emergence => ChargeConfig::charged_plaquette().staggered(),
        _ => ChargeConfig::neutral(),
    }
}

fn default_theorem_cases() -> Vec<TheoremCase> {
    let charged = vec![
        ChargeEntry { n1: 0, n2: 0, q: 1 },
        ChargeEntry { n1: 1, n2: 0, q: -1 },
    ];
    vec![
        TheoremCase { charges: Vec::new(), l_small: 1, order: 2, l_large_proxy: None },
        TheoremCase { charges: charged.clone(), l_small: 1, order: 1, l_large_proxy: None },
        TheoremCase { charges: charged, l_small: 2, order: 2, l_large_proxy: None },
    ]
}

pub fn default_g_grid() -> Vec<f64> {
    Logspace { start: 0.1, stop: 10.0, points: 60 }.values().expect("valid default")
}

pub fn default_lambda_grid() -> Vec<f64> {
    Logspace { start: 0.1, stop: 1000.0, points: 40 }.values().expect("valid default")
}

impl SweepConfig {
    pub fn resolve(experiment: Experiment, file: Option<ConfigFile>, flags: &Overrides) -> Result<Self> {
        let file = file.unwrap_or(ConfigFile {
            schema_version: SCHEMA_VERSION,
            ..Default::default()
        });
        if let Some(e) = file.experiment {
            if e != experiment {
                return Err(Error::Config(format!(
                    "config is for experiment {}, not {}",
                    e.name(),
                    experiment.name()
                )));
            }
        }
        let g = match &file.g {
            Some(grid) => grid.values()?,
            None => default_g_grid(),
        };
        let lambda = match &file.lambda {
            Some(grid) => grid.values()?,
            None => default_lambda_grid(),
        };
        let l = file.l.clone().unwrap_or_else(|| (1..=20).collect());
        let lattice = match &file.lattice {
            Some(c) => LatticeSpec::new(c.n1, c.n2, c.boundary)?,
            None => LatticeSpec::single_plaquette(),
        };
        let charges = match &file.charges {
            Some(c) => charges_from(c),
            None => default_charges(experiment),
        };
        let tracked_vertices = match &file.tracked_vertices {
            Some(vs) => vs.iter().map(|v| Vertex::new(v[0], v[1])).collect(),
            None => vec![Vertex::new(0, 0), Vertex::new(1, 0)],
        };
        let cfg = Self {
            experiment,
            g,
            l,
            lambda,
            charges,
            e1_link: file.e1_link.unwrap_or(0),
            // bottom and left links of the first plaquette
            tracked_links: file.tracked_links.clone().unwrap_or_else(|| vec![0, 1]),
            tracked_vertices,
            mu: file.mu.unwrap_or(1.0),
            omega: file.omega.unwrap_or(0.1),
            theorem: file.theorem.clone().unwrap_or_else(default_theorem_cases),
            atomic: file.atomic.unwrap_or(AtomicInputs {
                lambda: 1.0,
                mu: 0.01,
                omega: 0.1,
                epsilon: 0.02,
                u0: 1000.0,
            }),
            hierarchy_threshold: file.hierarchy_threshold.unwrap_or(DEFAULT_HIERARCHY_THRESHOLD),
            potential: file.potential.clone().unwrap_or(PotentialConfig {
                v0: 1.0,
                k: 1.0,
                points_per_period: 128,
            }),
            tol: flags.tol.or(file.tol).unwrap_or(DEFAULT_TOL),
            workers: flags
                .workers
                .or(file.workers)
                .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            out: flags
                .out
                .clone()
                .or(file.out.clone())
                .unwrap_or_else(|| PathBuf::from(format!("{}.{}", experiment.name(), experiment.extension()))),
            lattice,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.g.is_empty() || self.l.is_empty() || self.lambda.is_empty() {
            return bad("parameter grids must be non-empty".into());
        }
        if let Some(g) = self.g.iter().find(|g| !(g.is_finite() && **g > 0.0)) {
            return bad(format!("g must be positive, got {g}"));
        }
        if self.l.contains(&0) {
            return bad("l must be at least 1".into());
        }
        if let Some(x) = self.lambda.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return bad(format!("lambda must be non-negative, got {x}"));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return bad(format!("tolerance must be positive, got {}", self.tol));
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        if self.e1_link >= self.lattice.num_links() {
            return bad(format!("e1_link {} is not a link of the lattice", self.e1_link));
        }
        if let Some(l) = self.tracked_links.iter().find(|&&l| l >= self.lattice.num_links()) {
            return bad(format!("tracked link {l} is not a link of the lattice"));
        }
        if let Some(v) = self.tracked_vertices.iter().find(|v| !self.lattice.contains(**v)) {
            return bad(format!("tracked vertex {v} is not on the lattice"));
        }
        if self.potential.points_per_period < MIN_POINTS_PER_PERIOD {
            return bad(format!(
                "potential grid needs at least {MIN_POINTS_PER_PERIOD} points per period"
            ));
        }
        self.charges.validate(&self.lattice)?;
        for case in &self.theorem {
            if case.l_small == 0 {
                return bad("theorem cases need l_small >= 1".into());
            }
        }
        Ok(())
    }

    pub fn theorem_charges(case: &TheoremCase) -> ChargeConfig {
        charges_from(&case.charges)
    }
}
