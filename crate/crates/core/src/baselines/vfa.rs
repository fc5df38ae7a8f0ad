use super::{BaselineConfig, Tracker};
use crate::base::{Real, RngStream, Vector};
use crate::fields::{sample_flow, FlowField};
use crate::objectives::{gradient_surrogate, Objective};
use crate::result::{Method, RunResult, Termination};

/// Pairwise virtual force on node `i`: repulsion from nodes closer than
/// `threshold`, attraction (averaged over the swarm) towards farther ones.
pub fn virtual_force<T: Real>(
    nodes: &[Vector<T>],
    i: usize,
    threshold: T,
    repulsion_gain: T,
    attraction_gain: T,
) -> Vector<T> {
    let xi = &nodes[i];
    let mut force = Vector::zeros(xi.dim());
    let n = T::from_usize_lossy(nodes.len().max(1));
    for (j, xj) in nodes.iter().enumerate() {
        if j == i {
            continue;
        }
        let diff = xj - xi;
        let dist = diff.norm();
        if dist == T::zero() {
            continue;
        }
        let unit = diff.scaled(T::one() / dist);
        if dist < threshold {
            force.add_scaled(-repulsion_gain * (threshold - dist) / threshold, &unit);
        } else {
            force.add_scaled(attraction_gain * (dist - threshold) / n, &unit);
        }
    }
    force
}

/// Virtual-force deployment with a finite-difference descent nudge.
pub fn run_vfa<T: Real>(
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
    run_vfa_from(objective, flow, config, init, seed)
}

pub fn run_vfa_from<T: Real>(
    objective: &Objective<T>,
    flow: &FlowField<T>,
    config: &BaselineConfig<T>,
    mut nodes: Vec<Vector<T>>,
    seed: u64,
) -> RunResult<T> {
    let d = &objective.domain;
    let n = nodes.len();
    let s = &config.vfa;
    let threshold = d.length(s.threshold);
    let v_max = config.v_max;
    let budget = config.budget();
    let mut tr = Tracker::new(d.dim);
    for x in &nodes {
        tr.eval(objective, x);
    }
    let mut trace = vec![tr.row(0, n)];

    let mut iteration = 0;
    'outer: while tr.evaluations < budget {
        iteration += 1;
        // forces from the positions at the start of the sweep
        let snapshot = nodes.clone();
        for i in 0..n {
            if tr.evaluations >= budget {
                break 'outer;
            }
            let mut v = virtual_force(&snapshot, i, threshold, s.repulsion_gain, s.attraction_gain);
            if s.descent_gain != T::zero() {
                let g = gradient_surrogate(objective, &nodes[i], s.fd_step);
                tr.gradient_evaluations += 2 * d.dim;
                v.add_scaled(-s.descent_gain, &g);
            }
            v.add_scaled(config.flow_gain, &sample_flow(flow, &nodes[i]));
            v.clip_norm(v_max);
            nodes[i] += &v;
            d.apply_boundary(config.boundary_mode, &mut nodes[i], &mut v);
            tr.eval(objective, &nodes[i]);
        }
        trace.push(tr.row(iteration, n));
    }
    if trace.last().map(|r| r.iteration) != Some(iteration) {
        trace.push(tr.row(iteration, n));
    }

    RunResult {
        method: Method::Vfa,
        objective: objective.name().to_string(),
        seed,
        best_position: tr.best_position,
        best_fitness: tr.best_fitness,
        trace,
        colonies: Vec::new(),
        colony_history: Vec::new(),
        placements: nodes,
        settlement_times: vec![None; n],
        termination: Termination::BudgetExhausted,
        evaluations: tr.evaluations,
        gradient_evaluations: tr.gradient_evaluations,
    }
}
