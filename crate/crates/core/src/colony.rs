//! Colony influence field, communication model, and colony life cycle.
//!
//! All functions take parameters already converted to absolute domain units
//! (see [`NoahParams::in_domain`]).

use serde::{Deserialize, Serialize};

use crate::base::{ball_volume, normalized_ranks, Agent, Colony, NoahParams, Real, Vector};
use crate::error::NoahError;

/// Every colony ever created; culled ones stay listed but inactive.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ColonySet<T> {
    colonies: Vec<Colony<T>>,
    next_id: usize,
}

/// Serialisable per-iteration view of a colony.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ColonySnapshot<T> {
    pub id: usize,
    pub location: Vector<T>,
    pub strength: T,
    pub active: bool,
}

impl<T: Real> ColonySet<T> {
    pub fn new() -> Self {
        Self {
            colonies: Vec::new(),
            next_id: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.colonies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colonies.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Colony<T>> {
        self.colonies.iter()
    }

    pub fn active(&self) -> impl Iterator<Item = &Colony<T>> {
        self.colonies.iter().filter(|c| c.is_active())
    }

    pub fn active_count(&self) -> usize {
        self.active().count()
    }

    pub fn get(&self, id: usize) -> Option<&Colony<T>> {
        self.colonies.iter().find(|c| c.id == id)
    }

    /// Deactivates colony `id`; returns whether it was active.
    pub fn deactivate(&mut self, id: usize) -> bool {
        match self.colonies.iter_mut().find(|c| c.id == id) {
            Some(c) if c.is_active() => {
                c.deactivate();
                true
            }
            _ => false,
        }
    }

    pub fn set_strength(&mut self, id: usize, strength: T) {
        if let Some(c) = self.colonies.iter_mut().find(|c| c.id == id) {
            c.strength = strength;
        }
    }

    /// Adds an active colony as-is. Fails if an active colony already sits at
    /// exactly the same location.
    pub fn insert(
        &mut self,
        agent: usize,
        location: Vector<T>,
        strength: T,
        comm_range: T,
        t: usize,
    ) -> Result<&Colony<T>, NoahError> {
        if self.active().any(|c| *c.location() == location) {
            return Err(NoahError::ColonyExists);
        }
        let id = self.next_id;
        self.next_id += 1;
        self.colonies
            .push(Colony::new(id, agent, location, strength, comm_range, t));
        Ok(self.colonies.last().expect("just pushed"))
    }

    pub fn snapshot(&self) -> Vec<ColonySnapshot<T>> {
        self.colonies
            .iter()
            .map(|c| ColonySnapshot {
                id: c.id,
                location: c.location().clone(),
                strength: c.strength,
                active: c.is_active(),
            })
            .collect()
    }
}

/// Link success probability between `x` and the colony: 1 inside the
/// reliable range, exponential decay beyond it.
pub fn comm_probability<T: Real>(colony: &Colony<T>, x: &Vector<T>, params: &NoahParams<T>) -> T {
    let r = x.distance(colony.location());
    if r <= colony.comm_range {
        T::one()
    } else {
        (-params.attenuation * (r - colony.comm_range)).exp()
    }
}

/// Difference-of-Gaussians profile and its radial factor `g'(r) / r`.
fn profile<T: Real>(r2: T, params: &NoahParams<T>) -> (T, T) {
    let two = T::lit(2.0);
    let (sa2, sr2) = (
        params.sigma_a * params.sigma_a,
        params.sigma_r * params.sigma_r,
    );
    let ea = params.amp_attract * (-r2 / (two * sa2)).exp();
    let er = params.amp_repel * (-r2 / (two * sr2)).exp();
    (ea - er, -ea / sa2 + er / sr2)
}

/// Colony field at `x`, summed over active colonies.
pub fn field_value<T: Real>(colonies: &ColonySet<T>, x: &Vector<T>, params: &NoahParams<T>) -> T {
    colonies.active().fold(T::zero(), |acc, c| {
        let r2 = x.distance_squared(c.location());
        let (g, _) = profile(r2, params);
        acc + comm_probability(c, x, params) * g
    })
}

/// Analytic gradient of [`field_value`]. On the range sphere the inner
/// (constant-probability) branch is used.
pub fn field_gradient<T: Real>(
    colonies: &ColonySet<T>,
    x: &Vector<T>,
    params: &NoahParams<T>,
) -> Vector<T> {
    let mut grad = Vector::zeros(x.dim());
    for c in colonies.active() {
        let diff = x - c.location();
        let r2 = diff.norm_squared();
        let r = r2.sqrt();
        let (g, radial) = profile(r2, params);
        let p = comm_probability(c, x, params);
        // d(p g) = p g'(r)/r * diff + g * dp, with dp = -alpha p diff / r outside the range
        let mut coeff = p * radial;
        if r > c.comm_range {
            coeff = coeff - g * params.attenuation * p / r;
        }
        grad.add_scaled(coeff, &diff);
    }
    grad
}

/// Local density `|{j : |x_i - x_j| <= r}| / V(r)` for every position.
pub fn crowding<T: Real>(positions: &[&Vector<T>], radius: T) -> Vec<T> {
    let Some(first) = positions.first() else {
        return Vec::new();
    };
    let volume = ball_volume(first.dim(), radius);
    let r2 = radius * radius;
    positions
        .iter()
        .map(|xi| {
            let n = positions
                .iter()
                .filter(|xj| xi.distance_squared(xj) <= r2)
                .count();
            T::from_usize_lossy(n) / volume
        })
        .collect()
}

/// Crowding divided by its maximum over the same population, in `[0, 1]`.
pub fn relative_crowding<T: Real>(positions: &[&Vector<T>], radius: T) -> Vec<T> {
    let raw = crowding(positions, radius);
    let max = raw.iter().fold(T::zero(), |m, &v| m.max(v));
    if max <= T::zero() {
        return raw;
    }
    raw.into_iter().map(|v| v / max).collect()
}

/// Birth strength `alpha0 + alpha1 * normalized_rank(-f)`; the best agent
/// of the population gets the full `alpha1` bonus.
pub fn birth_strength<T: Real>(
    population_fitness: &[T],
    agent_index: usize,
    params: &NoahParams<T>,
) -> Result<T, NoahError> {
    if agent_index >= population_fitness.len() {
        return Err(NoahError::IndexOutOfRange {
            index: agent_index,
            len: population_fitness.len(),
        });
    }
    let neg: Vec<T> = population_fitness.iter().map(|&f| -f).collect();
    let nr = normalized_ranks(&neg)?;
    Ok(params.alpha0 + params.alpha1 * nr[agent_index])
}

/// Creates an active colony for the agent settling at `x`.
pub fn spawn_colony<'a, T: Real>(
    set: &'a mut ColonySet<T>,
    x: &Vector<T>,
    population_fitness: &[T],
    agent_index: usize,
    params: &NoahParams<T>,
    t: usize,
) -> Result<&'a Colony<T>, NoahError> {
    let strength = birth_strength(population_fitness, agent_index, params)?;
    set.insert(agent_index, x.clone(), strength, params.comm_range, t)
}

/// One learning-rate step towards `p_comm * (mean_rank - nu * mean_crowding)`.
pub fn reinforce<T: Real>(
    strength: T,
    p_comm: T,
    mean_rank: T,
    mean_crowding: T,
    params: &NoahParams<T>,
) -> T {
    (T::one() - params.mu) * strength + params.mu * p_comm * (mean_rank - params.nu * mean_crowding)
}

/// Updates every active colony from the agents within `2 sigma_a` of it.
/// Colonies with no such agent decay by `(1 - mu)`.
pub fn update_strengths<T: Real>(
    set: &mut ColonySet<T>,
    agents: &[Agent<T>],
    fitness: &[T],
    params: &NoahParams<T>,
) -> Result<(), NoahError> {
    if fitness.len() != agents.len() {
        return Err(NoahError::Dimension {
            expected: agents.len(),
            got: fitness.len(),
        });
    }
    if set.active_count() == 0 {
        return Ok(());
    }
    let neg: Vec<T> = fitness.iter().map(|&f| -f).collect();
    let ranks = if agents.is_empty() {
        Vec::new()
    } else {
        normalized_ranks(&neg)?
    };
    let positions: Vec<&Vector<T>> = agents.iter().map(|a| &a.position).collect();
    let dens = relative_crowding(&positions, params.r_settle);
    let reach = T::lit(2.0) * params.sigma_a;
    let reach2 = reach * reach;

    for c in set.colonies.iter_mut().filter(|c| c.is_active()) {
        let mut n = 0usize;
        let (mut p_sum, mut r_sum, mut d_sum) = (T::zero(), T::zero(), T::zero());
        for (j, a) in agents.iter().enumerate() {
            if a.position.distance_squared(c.location()) <= reach2 {
                n += 1;
                p_sum = p_sum + comm_probability(c, &a.position, params);
                r_sum = r_sum + ranks[j];
                d_sum = d_sum + dens[j];
            }
        }
        c.strength = if n == 0 {
            (T::one() - params.mu) * c.strength
        } else {
            let k = T::from_usize_lossy(n);
            reinforce(c.strength, p_sum / k, r_sum / k, d_sum / k, params)
        };
    }
    Ok(())
}

/// Deactivates every active colony with strength strictly below `tau`.
pub fn cull<T: Real>(set: &mut ColonySet<T>, params: &NoahParams<T>) -> usize {
    let mut culled = 0;
    for c in set.colonies.iter_mut() {
        if c.is_active() && c.strength < params.tau {
            c.deactivate();
            culled += 1;
        }
    }
    culled
}
