use serde::{Deserialize, Serialize};

use super::real::Real;
use super::vector::Vector;

/// One swarm member. Settlement is one-way: once `settled` is set the agent
/// keeps its position and a zero velocity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Agent<T> {
    pub id: usize,
    pub position: Vector<T>,
    pub velocity: Vector<T>,
    settled: bool,
    pub energy_current: T,
    pub energy_max: T,
}

impl<T: Real> Agent<T> {
    pub fn new(id: usize, position: Vector<T>, energy_max: T) -> Self {
        let dim = position.dim();
        Self {
            id,
            position,
            velocity: Vector::zeros(dim),
            settled: false,
            energy_current: energy_max,
            energy_max,
        }
    }

    pub fn is_settled(&self) -> bool {
        self.settled
    }

    pub fn is_free(&self) -> bool {
        !self.settled
    }

    /// Anchors the agent in place. There is no inverse operation.
    pub fn settle(&mut self) {
        self.settled = true;
        self.velocity = Vector::zeros(self.position.dim());
    }

    /// Normalised remaining energy in `[0, 1]`.
    pub fn energy_fraction(&self) -> T {
        (self.energy_current / self.energy_max)
            .max(T::zero())
            .min(T::one())
    }
}

/// A settled agent's fixed beacon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Colony<T> {
    pub id: usize,
    /// Index of the anchored agent.
    pub agent: usize,
    location: Vector<T>,
    pub strength: T,
    pub comm_range: T,
    pub created_at: usize,
    active: bool,
}

impl<T: Real> Colony<T> {
    pub fn new(
        id: usize,
        agent: usize,
        location: Vector<T>,
        strength: T,
        comm_range: T,
        created_at: usize,
    ) -> Self {
        Self {
            id,
            agent,
            location,
            strength,
            comm_range,
            created_at,
            active: true,
        }
    }

    pub fn location(&self) -> &Vector<T> {
        &self.location
    }

    pub fn is_active(&self) -> bool {
        self.active
    }

    pub(crate) fn deactivate(&mut self) {
        self.active = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn settle_zeroes_velocity() {
        let mut a = Agent::new(0, Vector::<f64>::from_f64(&[0.2, 0.3]), 1.0);
        a.velocity = Vector::from_f64(&[0.1, -0.1]);
        a.settle();
        assert!(a.is_settled());
        assert!(a.velocity.is_zero());
        assert_eq!(a.energy_fraction(), 1.0);
    }
}
