//! Comparison methods run under the same evaluation budget as the optimizer.

mod cvt;
mod greedy;
mod pso;
mod vfa;

pub use cvt::{lloyd, run_cvt};
pub use greedy::run_greedy;
pub use pso::{run_pso, run_pso_from};
pub use vfa::{run_vfa, run_vfa_from, virtual_force};

use serde::{Deserialize, Serialize};

use crate::base::{BoundaryMode, Real};
use crate::error::NoahError;
use crate::fields::FlowField;
use crate::objectives::Objective;
use crate::result::{Method, RunResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct PsoSettings<T> {
    pub inertia: T,
    pub cognitive: T,
    pub social: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvtSettings {
    pub lloyd_iterations: usize,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct VfaSettings<T> {
    pub repulsion_gain: T,
    pub attraction_gain: T,
    /// Preferred spacing, as a fraction of the box extent.
    pub threshold: T,
    pub descent_gain: T,
    pub fd_step: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct GreedySettings<T> {
    /// Minimum spacing between picks, as a fraction of the box extent.
    pub min_separation: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BaselineConfig<T> {
    pub n_agents: usize,
    pub max_iterations: usize,
    /// Objective evaluations allowed; `None` means `n_agents * max_iterations`.
    pub eval_budget: Option<usize>,
    /// Speed limit per iteration, in domain units.
    pub v_max: T,
    /// Weight of the current on mobile methods (PSO, VFA).
    pub flow_gain: T,
    pub boundary_mode: BoundaryMode,
    pub pso: PsoSettings<T>,
    pub cvt: CvtSettings,
    pub vfa: VfaSettings<T>,
    pub greedy: GreedySettings<T>,
}

impl<T: Real> Default for BaselineConfig<T> {
    fn default() -> Self {
        Self {
            n_agents: 50,
            max_iterations: 200,
            eval_budget: None,
            v_max: T::lit(0.2),
            flow_gain: T::lit(0.6),
            boundary_mode: BoundaryMode::Reflect,
            pso: PsoSettings {
                inertia: T::lit(0.7),
                cognitive: T::lit(1.5),
                social: T::lit(1.5),
            },
            cvt: CvtSettings {
                lloyd_iterations: 50,
                samples: 10_000,
            },
            vfa: VfaSettings {
                repulsion_gain: T::lit(0.5),
                attraction_gain: T::lit(0.05),
                threshold: T::lit(0.1),
                descent_gain: T::lit(0.1),
                fd_step: T::lit(1e-3),
            },
            greedy: GreedySettings {
                min_separation: T::lit(0.05),
            },
        }
    }
}

impl<T: Real> BaselineConfig<T> {
    pub fn budget(&self) -> usize {
        self.eval_budget
            .unwrap_or(self.n_agents.saturating_mul(self.max_iterations))
    }

    /// Names accepted by [`BaselineConfig::set`].
    pub fn keys() -> &'static [&'static str] {
        &[
            "baseline.v_max",
            "baseline.flow_gain",
            "pso.inertia",
            "pso.cognitive",
            "pso.social",
            "cvt.lloyd_iterations",
            "cvt.samples",
            "vfa.repulsion_gain",
            "vfa.attraction_gain",
            "vfa.threshold",
            "vfa.descent_gain",
            "vfa.fd_step",
            "greedy.min_separation",
        ]
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), NoahError> {
        let value = value.trim();
        let real = |v: &str| -> Result<T, NoahError> {
            v.parse::<f64>().map(T::lit).map_err(|_| {
                NoahError::Config(format!("parameter `{key}`: expected a number (got `{v}`)"))
            })
        };
        let int = |v: &str| -> Result<usize, NoahError> {
            v.parse().map_err(|_| {
                NoahError::Config(format!(
                    "parameter `{key}`: expected an integer (got `{v}`)"
                ))
            })
        };
        match key {
            "baseline.v_max" => self.v_max = real(value)?,
            "baseline.flow_gain" => self.flow_gain = real(value)?,
            "pso.inertia" => self.pso.inertia = real(value)?,
            "pso.cognitive" => self.pso.cognitive = real(value)?,
            "pso.social" => self.pso.social = real(value)?,
            "cvt.lloyd_iterations" => self.cvt.lloyd_iterations = int(value)?,
            "cvt.samples" => self.cvt.samples = int(value)?,
            "vfa.repulsion_gain" => self.vfa.repulsion_gain = real(value)?,
            "vfa.attraction_gain" => self.vfa.attraction_gain = real(value)?,
            "vfa.threshold" => self.vfa.threshold = real(value)?,
            "vfa.descent_gain" => self.vfa.descent_gain = real(value)?,
            "vfa.fd_step" => self.vfa.fd_step = real(value)?,
            "greedy.min_separation" => self.greedy.min_separation = real(value)?,
            _ => return Err(NoahError::Config(format!("unknown parameter `{key}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), NoahError> {
        if self.n_agents == 0 {
            return Err(NoahError::invalid_param("n_agents", "must be >= 1"));
        }
        if !(self.v_max > T::zero()) {
            return Err(NoahError::invalid_param("baseline.v_max", "must be > 0"));
        }
        if !(self.vfa.threshold > T::zero()) || !(self.vfa.fd_step > T::zero()) {
            return Err(NoahError::invalid_param(
                "vfa",
                "threshold and fd_step must be > 0",
            ));
        }
        if self.greedy.min_separation < T::zero() {
            return Err(NoahError::invalid_param(
                "greedy.min_separation",
                "must be >= 0",
            ));
        }
        Ok(())
    }
}

/// Runs the named baseline. `Method::Noah` is not a baseline.
pub fn run_baseline<T: Real>(
    method: Method,
    objective: &Objective<T>,
    flow: &FlowField<T>,
    config: &BaselineConfig<T>,
    seed: u64,
) -> Result<RunResult<T>, NoahError> {
    config.validate()?;
    match method {
        Method::Pso => Ok(run_pso(objective, flow, config, seed)),
        Method::Cvt => Ok(run_cvt(objective, config, seed)),
        Method::Vfa => Ok(run_vfa(objective, flow, config, seed)),
        Method::Greedy => run_greedy(objective, config, seed),
        Method::Noah => Err(NoahError::Config("noah is not a baseline".into())),
    }
}

/// Bookkeeping shared by the baselines: running best and evaluation count.
pub(crate) struct Tracker<T> {
    pub best_fitness: T,
    pub best_position: crate::base::Vector<T>,
    pub evaluations: usize,
    pub gradient_evaluations: usize,
}

impl<T: Real> Tracker<T> {
    pub fn new(dim: usize) -> Self {
        Self {
            best_fitness: T::infinity(),
            best_position: crate::base::Vector::zeros(dim),
            evaluations: 0,
            gradient_evaluations: 0,
        }
    }

    pub fn eval(&mut self, objective: &Objective<T>, x: &crate::base::Vector<T>) -> T {
        let f = crate::objectives::evaluate(objective, x);
        self.evaluations += 1;
        if f < self.best_fitness {
            self.best_fitness = f;
            self.best_position = x.clone();
        }
        f
    }

    pub fn row(&self, iteration: usize, free_agents: usize) -> crate::result::TraceRow<T> {
        crate::result::TraceRow {
            iteration,
            best_fitness: self.best_fitness,
            free_agents,
            active_colonies: 0,
        }
    }
}
