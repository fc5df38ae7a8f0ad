use super::{BaselineConfig, Tracker};
use crate::base::{Real, RngStream, Vector};
use crate::fields::{sample_flow, FlowField};
use crate::objectives::Objective;
use crate::result::{Method, RunResult, Termination};

/// Global-best PSO with the current added to each velocity update.
pub fn run_pso<T: Real>(
    objective: &Objective<T>,
    flow: &FlowField<T>,
    config: &BaselineConfig<T>,
    seed: u64,
) -> RunResult<T> {
    let mut rng = RngStream::new(seed);
    let d = &objective.domain;
    let init = (0..config.n_agents)
        .map(|_| rng.uniform_vector(d.dim, d.lo, d.hi))
        .collect();
    swarm(objective, flow, config, init, rng, seed)
}

/// PSO from explicit starting positions (zero initial velocity).
pub fn run_pso_from<T: Real>(
    objective: &Objective<T>,
    flow: &FlowField<T>,
    config: &BaselineConfig<T>,
    initial: Vec<Vector<T>>,
    seed: u64,
) -> RunResult<T> {
    swarm(objective, flow, config, initial, RngStream::new(seed), seed)
}

fn swarm<T: Real>(
    objective: &Objective<T>,
    flow: &FlowField<T>,
    config: &BaselineConfig<T>,
    mut pos: Vec<Vector<T>>,
    mut rng: RngStream,
    seed: u64,
) -> RunResult<T> {
    let d = &objective.domain;
    let n = pos.len();
    let v_max = config.v_max;
    let budget = config.budget();
    let s = &config.pso;
    let mut tr = Tracker::new(d.dim);
    let mut vel: Vec<Vector<T>> = vec![Vector::zeros(d.dim); n];
    let mut pbest_f: Vec<T> = pos.iter().map(|x| tr.eval(objective, x)).collect();
    let mut pbest = pos.clone();
    let mut trace = vec![tr.row(0, n)];

    let mut iteration = 0;
    'outer: while tr.evaluations < budget {
        iteration += 1;
        for i in 0..n {
            if tr.evaluations >= budget {
                break 'outer;
            }
            let gbest = tr.best_position.clone();
            let mut v = vel[i].scaled(s.inertia);
            for k in 0..d.dim {
                let r1 = T::lit(rng.uniform());
                let r2 = T::lit(rng.uniform());
                v[k] = v[k]
                    + s.cognitive * r1 * (pbest[i][k] - pos[i][k])
                    + s.social * r2 * (gbest[k] - pos[i][k]);
            }
            v.add_scaled(config.flow_gain, &sample_flow(flow, &pos[i]));
            v.clip_norm(v_max);
            pos[i] += &v;
            d.apply_boundary(config.boundary_mode, &mut pos[i], &mut v);
            vel[i] = v;
            let f = tr.eval(objective, &pos[i]);
            if f < pbest_f[i] {
                pbest_f[i] = f;
                pbest[i] = pos[i].clone();
            }
        }
        trace.push(tr.row(iteration, n));
    }
    // partial final sweep
    if trace.last().map(|r| r.iteration) != Some(iteration) {
        trace.push(tr.row(iteration, n));
    }

    RunResult {
        method: Method::Pso,
        objective: objective.name().to_string(),
        seed,
        best_position: tr.best_position,
        best_fitness: tr.best_fitness,
        trace,
        colonies: Vec::new(),
        colony_history: Vec::new(),
        placements: pos,
        settlement_times: vec![None; n],
        termination: Termination::BudgetExhausted,
        evaluations: tr.evaluations,
        gradient_evaluations: 0,
    }
}
