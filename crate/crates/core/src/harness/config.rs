use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::base::{Domain, NoahParams, Vector};
use crate::baselines::BaselineConfig;
use crate::error::NoahError;
use crate::fields::FlowField;
use crate::grid::RegularGrid;
use crate::objectives::Objective;
use crate::result::Method;

/// Ambient current selected in a campaign file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FlowSpec {
    Zero,
    /// Rotation about the box centre at `flow_speed`.
    Circular,
    Uniform {
        velocity: Vec<f64>,
    },
    /// Two-channel CSV grid (`x,y,u,v`).
    Grid {
        path: PathBuf,
    },
}

impl std::str::FromStr for FlowSpec {
    type Err = NoahError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("uniform:") {
            let velocity = rest
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| {
                    NoahError::Config(format!("flow `{s}`: expected uniform:<vx>,<vy>,..."))
                })?;
            return Ok(Self::Uniform { velocity });
        }
        if let Some(rest) = s.strip_prefix("grid:") {
            return Ok(Self::Grid {
                path: PathBuf::from(rest.trim()),
            });
        }
        match s {
            "zero" | "none" => Ok(Self::Zero),
            "circular" => Ok(Self::Circular),
            other => Err(NoahError::Config(format!(
                "unknown flow `{other}` (valid: zero, circular, uniform:<vx>,<vy>, grid:<path>)"
            ))),
        }
    }
}

/// Everything a campaign needs. Serialised verbatim into `summary.json`
/// apart from the output directory, so that reports from different
/// directories compare byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub objectives: Vec<String>,
    pub flow: FlowSpec,
    pub flow_speed: f64,
    pub methods: Vec<Method>,
    pub n_agents: usize,
    pub max_iterations: usize,
    pub n_seeds: usize,
    pub base_seed: u64,
    pub success_radius: f64,
    pub domain_lo: f64,
    pub domain_hi: f64,
    pub dim: usize,
    #[serde(skip)]
    pub out: PathBuf,
    pub params: NoahParams<f64>,
    pub baselines: BaselineConfig<f64>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            objectives: vec!["anchoring_bowl".into()],
            flow: FlowSpec::Circular,
            flow_speed: 0.05,
            methods: Method::ALL.to_vec(),
            n_agents: 50,
            max_iterations: 200,
            n_seeds: 30,
            base_seed: 0,
            success_radius: 0.5,
            domain_lo: -2.0,
            domain_hi: 2.0,
            dim: 2,
            out: PathBuf::from("out"),
            params: NoahParams::default(),
            baselines: BaselineConfig::default(),
        }
    }
}

const CAMPAIGN_KEYS: &[&str] = &[
    "boundary_mode",
    "objective",
    "objectives",
    "flow",
    "flow_speed",
    "methods",
    "n_agents",
    "max_iterations",
    "n_seeds",
    "base_seed",
    "success_radius",
    "domain_lo",
    "domain_hi",
    "dim",
    "out",
];

fn list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

impl CampaignConfig {
    /// Every key accepted in a campaign file.
    pub fn keys() -> Vec<&'static str> {
        let mut keys = CAMPAIGN_KEYS.to_vec();
        keys.extend(
            NoahParams::<f64>::keys()
                .into_iter()
                .filter(|k| !CAMPAIGN_KEYS.contains(k)),
        );
        keys.extend(BaselineConfig::<f64>::keys());
        keys
    }

    /// Parses flat `key = value` text; `#` starts a comment. Unknown and
    /// repeated keys are rejected. The result is validated.
    pub fn parse(text: &str) -> Result<Self, NoahError> {
        let mut cfg = Self::default();
        let mut seen: Vec<String> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                NoahError::Config(format!("line {}: expected key = value", n + 1))
            })?;
            let key = key.trim();
            if seen.iter().any(|k| k == key) {
                return Err(NoahError::Config(format!(
                    "line {}: duplicate key `{key}`",
                    n + 1
                )));
            }
            seen.push(key.to_string());
            cfg.set(key, value.trim())
                .map_err(|e| NoahError::Config(format!("line {}: {}", n + 1, strip_prefix(&e))))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, NoahError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| NoahError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), NoahError> {
        let int = |v: &str| -> Result<usize, NoahError> {
            v.parse()
                .map_err(|_| NoahError::Config(format!("`{key}`: expected an integer (got `{v}`)")))
        };
        let real = |v: &str| -> Result<f64, NoahError> {
            v.parse()
                .map_err(|_| NoahError::Config(format!("`{key}`: expected a number (got `{v}`)")))
        };
        match key {
            "objective" | "objectives" => self.objectives = list(value),
            "flow" => self.flow = value.parse()?,
            "flow_speed" => self.flow_speed = real(value)?,
            "methods" => {
                self.methods = list(value)
                    .iter()
                    .map(|m| m.parse())
                    .collect::<Result<_, _>>()?
            }
            "n_agents" => {
                self.n_agents = int(value)?;
                self.params.n_agents = self.n_agents;
                self.baselines.n_agents = self.n_agents;
            }
            "max_iterations" => {
                self.max_iterations = int(value)?;
                self.params.max_iterations = self.max_iterations;
                self.baselines.max_iterations = self.max_iterations;
            }
            "boundary_mode" => {
                self.params.boundary_mode = value.parse()?;
                self.baselines.boundary_mode = self.params.boundary_mode;
            }
            "n_seeds" => self.n_seeds = int(value)?,
            "base_seed" => {
                self.base_seed = value.parse().map_err(|_| {
                    NoahError::Config(format!("`base_seed`: expected an integer (got `{value}`)"))
                })?
            }
            "success_radius" => self.success_radius = real(value)?,
            "domain_lo" => self.domain_lo = real(value)?,
            "domain_hi" => self.domain_hi = real(value)?,
            "dim" => self.dim = int(value)?,
            "out" => self.out = PathBuf::from(value),
            k if BaselineConfig::<f64>::keys().contains(&k) => self.baselines.set(k, value)?,
            k if NoahParams::<f64>::keys().contains(&k) => self.params.set(k, value)?,
            k => return Err(NoahError::Config(format!("unknown key `{k}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), NoahError> {
        if self.objectives.is_empty() {
            return Err(NoahError::Config("objective list is empty".into()));
        }
        if self.methods.is_empty() {
            return Err(NoahError::Config("method list is empty".into()));
        }
        if self.n_seeds == 0 {
            return Err(NoahError::Config("n_seeds must be >= 1".into()));
        }
        if !(self.success_radius > 0.0) {
            return Err(NoahError::Config("success_radius must be > 0".into()));
        }
        if !(self.flow_speed.is_finite()) {
            return Err(NoahError::Config("flow_speed must be finite".into()));
        }
        let domain = self.domain()?;
        for name in &self.objectives {
            Objective::by_name(name, domain)?;
        }
        if let FlowSpec::Uniform { velocity } = &self.flow {
            if velocity.len() != self.dim {
                return Err(NoahError::Dimension {
                    expected: self.dim,
                    got: velocity.len(),
                });
            }
        }
        self.noah_params().validate()?;
        self.baseline_config(None).validate()?;
        Ok(())
    }

    pub fn domain(&self) -> Result<Domain<f64>, NoahError> {
        Domain::new(self.domain_lo, self.domain_hi, self.dim)
    }

    /// Copies the campaign-level swarm size, horizon and boundary rule into
    /// the nested parameter sets so the echoed config is self-consistent.
    pub fn synced(mut self) -> Self {
        self.params.n_agents = self.n_agents;
        self.params.max_iterations = self.max_iterations;
        self.baselines.n_agents = self.n_agents;
        self.baselines.max_iterations = self.max_iterations;
        self.baselines.boundary_mode = self.params.boundary_mode;
        self
    }

    pub fn noah_params(&self) -> NoahParams<f64> {
        NoahParams {
            n_agents: self.n_agents,
            max_iterations: self.max_iterations,
            ..self.params.clone()
        }
    }

    pub fn baseline_config(&self, eval_budget: Option<usize>) -> BaselineConfig<f64> {
        BaselineConfig {
            n_agents: self.n_agents,
            max_iterations: self.max_iterations,
            eval_budget,
            boundary_mode: self.params.boundary_mode,
            ..self.baselines.clone()
        }
    }

    /// Builds the current. Grid files are read here.
    pub fn flow_field(&self) -> Result<FlowField<f64>, NoahError> {
        let domain = self.domain()?;
        Ok(match &self.flow {
            FlowSpec::Zero => FlowField::Zero,
            FlowSpec::Circular => FlowField::circular_about(&domain, self.flow_speed),
            FlowSpec::Uniform { velocity } => FlowField::Uniform {
                velocity: Vector::new(velocity.clone()),
            },
            FlowSpec::Grid { path } => FlowField::Grid {
                grid: RegularGrid::load_csv(path, 2)?,
            },
        })
    }

    pub fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.n_seeds as u64).map(move |i| self.base_seed + i)
    }
}

fn strip_prefix(e: &NoahError) -> String {
    match e {
        NoahError::Config(msg) => msg.clone(),
        other => other.to_string(),
    }
}
