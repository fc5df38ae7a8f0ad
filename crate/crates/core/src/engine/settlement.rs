use serde::{Deserialize, Serialize};

use crate::base::{normalized_ranks, Agent, Domain, NoahParams, Real, Vector};
use crate::colony::{crowding, ColonySet};
use crate::error::NoahError;
use crate::fields::{shear, FlowField};

/// Inputs of the settlement logit for one free agent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct SettlementFeatures<T> {
    /// Rank of the neighbourhood fitness advantage among free agents, in `[0, 1]`.
    pub fitness_advantage_rank: T,
    /// Distance to the nearest active colony (`d0` when there is none).
    pub colony_distance: T,
    pub shear: T,
    /// Agents per unit volume within `r_settle`, self included.
    pub crowding: T,
    /// `crowding` over its maximum across the whole population.
    pub relative_crowding: T,
    /// Remaining energy fraction.
    pub energy: T,
}

pub fn sigmoid<T: Real>(z: T) -> T {
    T::one() / (T::one() + (-z).exp())
}

/// `sigma(l1 rank + l2 d/d0 - l3 kappa/kappa0 - l4 rho_rel + l5 E)`
pub fn settlement_probability<T: Real>(
    features: &SettlementFeatures<T>,
    params: &NoahParams<T>,
) -> T {
    sigmoid(settlement_logit(features, params))
}

pub fn settlement_logit<T: Real>(f: &SettlementFeatures<T>, params: &NoahParams<T>) -> T {
    params.lambda1 * f.fitness_advantage_rank + params.lambda2 * f.colony_distance / params.d0
        - params.lambda3 * f.shear / params.kappa0
        - params.lambda4 * f.relative_crowding
        + params.lambda5 * f.energy
}

/// Features for every free agent, as `(agent index, features)` in index order.
///
/// `fitness[j]` must be `f` at agent `j`'s current position. Neighbourhoods
/// and crowding count all agents, free or settled.
pub fn settlement_features_all<T: Real>(
    agents: &[Agent<T>],
    fitness: &[T],
    colonies: &ColonySet<T>,
    flow: &FlowField<T>,
    domain: &Domain<T>,
    params: &NoahParams<T>,
) -> Result<Vec<(usize, SettlementFeatures<T>)>, NoahError> {
    if fitness.len() != agents.len() {
        return Err(NoahError::Dimension {
            expected: agents.len(),
            got: fitness.len(),
        });
    }
    let free: Vec<usize> = (0..agents.len()).filter(|&i| agents[i].is_free()).collect();
    if free.is_empty() {
        return Ok(Vec::new());
    }
    let positions: Vec<&Vector<T>> = agents.iter().map(|a| &a.position).collect();
    let density = crowding(&positions, params.r_settle);
    let max_density = density.iter().fold(T::zero(), |m, &v| m.max(v));
    let r2 = params.r_neigh * params.r_neigh;

    let advantage: Vec<T> = free
        .iter()
        .map(|&i| {
            let (sum, n) = positions
                .iter()
                .zip(fitness)
                .filter(|(xj, _)| positions[i].distance_squared(xj) <= r2)
                .fold((T::zero(), 0usize), |(s, n), (_, &f)| (s + f, n + 1));
            sum / T::from_usize_lossy(n) - fitness[i]
        })
        .collect();
    let adv_rank = normalized_ranks(&advantage)?;

    Ok(free
        .iter()
        .zip(adv_rank)
        .map(|(&i, rank)| {
            let x = &agents[i].position;
            let colony_distance = colonies
                .active()
                .map(|c| x.distance(c.location()))
                .fold(None, |m: Option<T>, d| Some(m.map_or(d, |m| m.min(d))))
                .unwrap_or(params.d0);
            let features = SettlementFeatures {
                fitness_advantage_rank: rank,
                colony_distance,
                shear: shear(flow, x, params.fd_step, domain),
                crowding: density[i],
                relative_crowding: density[i] / max_density,
                energy: agents[i].energy_fraction(),
            };
            (i, features)
        })
        .collect())
}

/// Features of free agent `i`; `None` if it is settled.
pub fn settlement_features<T: Real>(
    i: usize,
    agents: &[Agent<T>],
    fitness: &[T],
    colonies: &ColonySet<T>,
    flow: &FlowField<T>,
    domain: &Domain<T>,
    params: &NoahParams<T>,
) -> Result<Option<SettlementFeatures<T>>, NoahError> {
    Ok(
        settlement_features_all(agents, fitness, colonies, flow, domain, params)?
            .into_iter()
            .find(|(j, _)| *j == i)
            .map(|(_, f)| f),
    )
}
