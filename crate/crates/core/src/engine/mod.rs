//! The optimizer loop: drift, irreversible anchoring, colony communication.
//!
//! Random draws come from one per-run stream in a fixed order: initial
//! positions (agent ascending, `dim` uniforms each), then per iteration the
//! Phase 1 noise vectors (free agents ascending, `dim` normals each) and the
//! Phase 2 settlement draws (free agents ascending, one uniform each).

mod motion;
mod settlement;

pub use motion::{state_update, tentative_velocity, velocity_update};
pub use settlement::{
    settlement_features, settlement_features_all, settlement_logit, settlement_probability,
    sigmoid, SettlementFeatures,
};

use serde::{Deserialize, Serialize};

use crate::base::{Agent, NoahParams, Real, RngStream, Vector};
use crate::colony::{cull, spawn_colony, update_strengths, ColonySet};
use crate::error::NoahError;
use crate::fields::FlowField;
use crate::objectives::{evaluate, Objective};
use crate::result::{Method, RunResult, Termination, TraceRow};

/// Complete swarm state between iterations.
#[derive(Clone, Debug)]
pub struct SwarmState<T> {
    pub agents: Vec<Agent<T>>,
    pub colonies: ColonySet<T>,
    pub iteration: usize,
    pub best_position: Vector<T>,
    pub best_fitness: T,
    pub rng: RngStream,
    /// `f` at each agent's current position.
    pub fitness: Vec<T>,
    pub settled_at: Vec<Option<usize>>,
    pub evaluations: usize,
    pub gradient_evaluations: usize,
}

/// Outcome of one iteration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct PhaseReport<T> {
    pub iteration: usize,
    pub free_agents: usize,
    pub settlements: usize,
    pub culls: usize,
    pub best_fitness: T,
}

impl<T: Real> SwarmState<T> {
    /// Scatters `params.n_agents` agents uniformly over the box with zero
    /// velocity and full energy, and evaluates them.
    pub fn init(objective: &Objective<T>, params: &NoahParams<T>, seed: u64) -> Self {
        let mut rng = RngStream::new(seed);
        let d = &objective.domain;
        let agents = (0..params.n_agents)
            .map(|i| Agent::new(i, rng.uniform_vector(d.dim, d.lo, d.hi), params.energy_max))
            .collect();
        Self::from_agents(agents, objective, rng)
    }

    /// Starts from explicit agents; evaluates every one.
    pub fn from_agents(agents: Vec<Agent<T>>, objective: &Objective<T>, rng: RngStream) -> Self {
        let dim = objective.dim();
        let mut state = Self {
            fitness: vec![T::infinity(); agents.len()],
            settled_at: agents.iter().map(|a| a.is_settled().then_some(0)).collect(),
            agents,
            colonies: ColonySet::new(),
            iteration: 0,
            best_position: Vector::zeros(dim),
            best_fitness: T::infinity(),
            rng,
            evaluations: 0,
            gradient_evaluations: 0,
        };
        for i in 0..state.agents.len() {
            state.evaluate_agent(i, objective);
        }
        state
    }

    fn evaluate_agent(&mut self, i: usize, objective: &Objective<T>) {
        let f = evaluate(objective, &self.agents[i].position);
        self.evaluations += 1;
        self.fitness[i] = f;
        if f < self.best_fitness {
            self.best_fitness = f;
            self.best_position = self.agents[i].position.clone();
        }
    }

    pub fn free_count(&self) -> usize {
        self.agents.iter().filter(|a| a.is_free()).count()
    }

    pub fn settled_count(&self) -> usize {
        self.agents.len() - self.free_count()
    }

    fn trace_row(&self) -> TraceRow<T> {
        TraceRow {
            iteration: self.iteration,
            best_fitness: self.best_fitness,
            free_agents: self.free_count(),
            active_colonies: self.colonies.active_count(),
        }
    }
}

/// Runs one iteration. `params` must be in absolute domain units.
pub fn step<T: Real>(
    state: &mut SwarmState<T>,
    objective: &Objective<T>,
    flow: &FlowField<T>,
    params: &NoahParams<T>,
) -> Result<PhaseReport<T>, NoahError> {
    let domain = &objective.domain;
    let t = state.iteration + 1;
    let free: Vec<usize> = (0..state.agents.len())
        .filter(|&i| state.agents[i].is_free())
        .collect();

    // Phase 1: drift. Velocities depend only on the agent itself and the
    // colony set, which does not change during this phase.
    let probes = if params.beta != T::zero() {
        2 * domain.dim
    } else {
        0
    };
    for &i in &free {
        let v = velocity_update(
            &state.agents[i],
            objective,
            flow,
            &state.colonies,
            params,
            &mut state.rng,
        );
        state.gradient_evaluations += probes;
        state_update(&mut state.agents[i], &v, params, domain);
    }
    for &i in &free {
        state.evaluate_agent(i, objective);
    }

    // Phase 2: anchoring against a snapshot of the moved swarm.
    let features = settlement_features_all(
        &state.agents,
        &state.fitness,
        &state.colonies,
        flow,
        domain,
        params,
    )?;
    let population_fitness = state.fitness.clone();
    let mut settlements = 0;
    for (i, feat) in features {
        let u = T::lit(state.rng.uniform());
        if u >= settlement_probability(&feat, params) {
            continue;
        }
        let x = state.agents[i].position.clone();
        match spawn_colony(&mut state.colonies, &x, &population_fitness, i, params, t) {
            Ok(_) => {
                state.agents[i].settle();
                state.settled_at[i] = Some(t);
                settlements += 1;
            }
            // an active colony already sits exactly here; stay free
            Err(NoahError::ColonyExists) => {}
            Err(e) => return Err(e),
        }
    }

    // Phase 3: colony communication.
    update_strengths(&mut state.colonies, &state.agents, &state.fitness, params)?;
    let culls = cull(&mut state.colonies, params);

    state.iteration = t;
    Ok(PhaseReport {
        iteration: t,
        free_agents: state.free_count(),
        settlements,
        culls,
        best_fitness: state.best_fitness,
    })
}

/// Full optimisation run. `params` uses extent fractions for length-type
/// constants; `flow` is in absolute units.
pub fn run<T: Real>(
    objective: &Objective<T>,
    flow: &FlowField<T>,
    params: &NoahParams<T>,
    seed: u64,
) -> Result<RunResult<T>, NoahError> {
    params.validate()?;
    let abs = params.in_domain(&objective.domain);
    let state = SwarmState::init(objective, &abs, seed);
    run_from(state, objective, flow, &abs, seed)
}

/// Drives an existing state to termination. `params` in absolute units.
pub fn run_from<T: Real>(
    mut state: SwarmState<T>,
    objective: &Objective<T>,
    flow: &FlowField<T>,
    params: &NoahParams<T>,
    seed: u64,
) -> Result<RunResult<T>, NoahError> {
    let mut trace = vec![state.trace_row()];
    let mut colony_history = Vec::new();
    let termination = loop {
        if state.free_count() == 0 {
            break Termination::AllAnchored;
        }
        if state.iteration >= params.max_iterations {
            break Termination::MaxIterations;
        }
        step(&mut state, objective, flow, params)?;
        trace.push(state.trace_row());
        colony_history.push(state.colonies.snapshot());
    };
    let placements = state
        .agents
        .iter()
        .filter(|a| a.is_settled())
        .map(|a| a.position.clone())
        .collect();
    Ok(RunResult {
        method: Method::Noah,
        objective: objective.name().to_string(),
        seed,
        best_position: state.best_position,
        best_fitness: state.best_fitness,
        trace,
        colonies: state.colonies.snapshot(),
        colony_history,
        placements,
        settlement_times: state.settled_at,
        termination,
        evaluations: state.evaluations,
        gradient_evaluations: state.gradient_evaluations,
    })
}
