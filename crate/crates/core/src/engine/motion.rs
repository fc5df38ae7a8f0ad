use crate::base::{Agent, Domain, NoahParams, Real, RngStream, Vector};
use crate::colony::{field_gradient, ColonySet};
use crate::fields::{sample_flow, FlowField};
use crate::objectives::{gradient_surrogate, Objective};

/// Unclipped tentative velocity for a given noise draw:
/// `omega v + eta xi - beta grad f + gamma U(x) + delta grad Phi(x)`.
pub fn tentative_velocity<T: Real>(
    agent: &Agent<T>,
    noise: &Vector<T>,
    objective: &Objective<T>,
    flow: &FlowField<T>,
    colonies: &ColonySet<T>,
    params: &NoahParams<T>,
) -> Vector<T> {
    let x = &agent.position;
    let mut v = agent.velocity.scaled(params.omega);
    v.add_scaled(params.eta, noise);
    if params.beta != T::zero() {
        let g = gradient_surrogate(objective, x, params.fd_step);
        v.add_scaled(-params.beta, &g);
    }
    if params.gamma != T::zero() {
        v.add_scaled(params.gamma, &sample_flow(flow, x));
    }
    if params.delta != T::zero() && colonies.active_count() > 0 {
        v.add_scaled(params.delta, &field_gradient(colonies, x, params));
    }
    v
}

/// Draws the agent's noise vector and returns the tentative velocity clipped
/// to `v_max`. Consumes exactly `dim` normals from `rng`.
pub fn velocity_update<T: Real>(
    agent: &Agent<T>,
    objective: &Objective<T>,
    flow: &FlowField<T>,
    colonies: &ColonySet<T>,
    params: &NoahParams<T>,
    rng: &mut RngStream,
) -> Vector<T> {
    let noise = rng.normal_vector(agent.position.dim());
    let mut v = tentative_velocity(agent, &noise, objective, flow, colonies, params);
    v.clip_norm(params.v_max);
    v
}

/// Applies the tentative velocity with the `(1 - a)` freeze prefactor, then
/// the boundary rule, then drains energy in proportion to speed.
pub fn state_update<T: Real>(
    agent: &mut Agent<T>,
    tentative: &Vector<T>,
    params: &NoahParams<T>,
    domain: &Domain<T>,
) {
    if agent.is_settled() {
        return;
    }
    agent.velocity = tentative.clone();
    agent.position += tentative;
    domain.apply_boundary(
        params.boundary_mode,
        &mut agent.position,
        &mut agent.velocity,
    );
    let drain = params.energy_drain * agent.velocity.norm();
    agent.energy_current = (agent.energy_current - drain).max(T::zero());
}
