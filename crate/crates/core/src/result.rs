use serde::{Deserialize, Serialize};

use crate::base::{Real, Vector};
use crate::colony::ColonySnapshot;
use crate::error::NoahError;

/// Optimizer family that produced a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Noah,
    Pso,
    Cvt,
    Vfa,
    Greedy,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Noah,
        Method::Pso,
        Method::Cvt,
        Method::Vfa,
        Method::Greedy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Noah => "noah",
            Method::Pso => "pso",
            Method::Cvt => "cvt",
            Method::Vfa => "vfa",
            Method::Greedy => "greedy",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = NoahError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                NoahError::Config(format!(
                    "unknown method `{s}` (valid: noah, pso, cvt, vfa, greedy)"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// Every agent settled.
    AllAnchored,
    MaxIterations,
    /// Evaluation budget spent (baselines).
    BudgetExhausted,
    /// Static placement finished (CVT, greedy).
    Placed,
}

/// State after `iteration` completed iterations; row 0 is the initial population.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct TraceRow<T> {
    pub iteration: usize,
    pub best_fitness: T,
    pub free_agents: usize,
    pub active_colonies: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct RunResult<T> {
    pub method: Method,
    pub objective: String,
    pub seed: u64,
    pub best_position: Vector<T>,
    pub best_fitness: T,
    pub trace: Vec<TraceRow<T>>,
    /// Final colonies, culled ones included.
    pub colonies: Vec<ColonySnapshot<T>>,
    /// Colony snapshot after each completed iteration.
    pub colony_history: Vec<Vec<ColonySnapshot<T>>>,
    /// Anchored positions (NOAH settled agents, or a baseline's final nodes).
    pub placements: Vec<Vector<T>>,
    /// Iteration at which each agent settled.
    pub settlement_times: Vec<Option<usize>>,
    pub termination: Termination,
    /// Objective evaluations used to score positions.
    pub evaluations: usize,
    /// Extra evaluations spent on finite-difference gradient probes.
    pub gradient_evaluations: usize,
}

impl<T: Real> RunResult<T> {
    /// Best fitness of the initial population (first trace row).
    pub fn initial_best(&self) -> Option<T> {
        self.trace.first().map(|r| r.best_fitness)
    }

    /// Relative improvement from the initial best to the final best.
    pub fn improvement(&self) -> Option<T> {
        let first = self.initial_best()?;
        if first == T::zero() {
            return None;
        }
        Some((first - self.best_fitness) / first.abs())
    }

    /// Distance from `target` to the nearest placement.
    pub fn nearest_placement_distance(&self, target: &Vector<T>) -> Option<T> {
        self.placements
            .iter()
            .map(|p| p.distance(target))
            .fold(None, |m: Option<T>, d| Some(m.map_or(d, |m| m.min(d))))
    }

    pub fn settled_count(&self) -> usize {
        self.settlement_times.iter().filter(|t| t.is_some()).count()
    }
}
