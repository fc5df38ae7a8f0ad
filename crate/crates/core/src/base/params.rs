use serde::{Deserialize, Serialize};

use super::bounds::{BoundaryMode, Domain};
use super::real::Real;
use crate::error::NoahError;

/// Every tuning constant of the optimizer.
///
/// Radius-type fields (`sigma_a`, `sigma_r`, `comm_range`, `r_neigh`,
/// `r_settle`, `d0`) are fractions of the search-box extent;
/// [`NoahParams::in_domain`] turns them into absolute units for a concrete
/// box. `v_max`, `attenuation` and `fd_step` are already absolute.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct NoahParams<T> {
    // velocity weights
    pub omega: T,
    pub eta: T,
    pub beta: T,
    pub gamma: T,
    pub delta: T,
    // settlement logit weights
    pub lambda1: T,
    pub lambda2: T,
    pub lambda3: T,
    pub lambda4: T,
    pub lambda5: T,
    // colony birth, reinforcement and culling
    pub alpha0: T,
    pub alpha1: T,
    pub mu: T,
    pub nu: T,
    pub tau: T,
    // colony field
    pub amp_attract: T,
    pub amp_repel: T,
    pub sigma_a: T,
    pub sigma_r: T,
    pub comm_range: T,
    pub attenuation: T,
    // feature normalisers and radii
    pub d0: T,
    pub kappa0: T,
    pub r_neigh: T,
    pub r_settle: T,
    // motion and energy
    pub energy_drain: T,
    pub energy_max: T,
    pub v_max: T,
    pub fd_step: T,
    pub boundary_mode: BoundaryMode,
    // budget
    pub max_iterations: usize,
    pub n_agents: usize,
}

macro_rules! real_fields {
    ($mac:ident) => {
        $mac!(
            omega,
            eta,
            beta,
            gamma,
            delta,
            lambda1,
            lambda2,
            lambda3,
            lambda4,
            lambda5,
            alpha0,
            alpha1,
            mu,
            nu,
            tau,
            amp_attract,
            amp_repel,
            sigma_a,
            sigma_r,
            comm_range,
            attenuation,
            d0,
            kappa0,
            r_neigh,
            r_settle,
            energy_drain,
            energy_max,
            v_max,
            fd_step
        )
    };
}

/// Default configuration. Settlement fires readily with these weights: a
/// median-rank agent at the neutral colony distance with full energy has
/// probability `sigmoid(3)`.
pub fn default_params<T: Real>() -> NoahParams<T> {
    NoahParams {
        omega: T::lit(0.9),
        eta: T::lit(0.3),
        beta: T::lit(0.8),
        gamma: T::lit(0.6),
        delta: T::lit(0.4),
        lambda1: T::lit(2.0),
        lambda2: T::lit(1.0),
        lambda3: T::lit(0.5),
        lambda4: T::lit(1.0),
        lambda5: T::lit(1.0),
        alpha0: T::lit(1.0),
        alpha1: T::lit(0.5),
        mu: T::lit(0.1),
        nu: T::lit(0.5),
        tau: T::lit(0.1),
        amp_attract: T::lit(0.5),
        amp_repel: T::lit(0.3),
        sigma_a: T::lit(0.5),
        sigma_r: T::lit(0.15),
        comm_range: T::lit(0.3),
        attenuation: T::lit(3.0),
        d0: T::lit(0.25),
        kappa0: T::lit(1.0),
        r_neigh: T::lit(0.15),
        r_settle: T::lit(0.1),
        energy_drain: T::lit(0.005),
        energy_max: T::lit(1.0),
        v_max: T::lit(0.2),
        fd_step: T::lit(1e-3),
        boundary_mode: BoundaryMode::Reflect,
        max_iterations: 200,
        n_agents: 50,
    }
}

impl<T: Real> Default for NoahParams<T> {
    fn default() -> Self {
        default_params()
    }
}

impl<T: Real> NoahParams<T> {
    /// Names accepted by [`NoahParams::set`].
    pub fn keys() -> Vec<&'static str> {
        macro_rules! names {
            ($($f:ident),*) => { vec![$(stringify!($f)),*] };
        }
        let mut keys = real_fields!(names);
        keys.extend(["boundary_mode", "max_iterations", "n_agents"]);
        keys
    }

    /// Sets one parameter from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), NoahError> {
        let bad =
            |why: &str| NoahError::Config(format!("parameter `{key}`: {why} (got `{value}`)"));
        macro_rules! assign {
            ($($f:ident),*) => {
                match key {
                    $(stringify!($f) => {
                        let v: f64 = value.trim().parse().map_err(|_| bad("expected a number"))?;
                        self.$f = T::lit(v);
                        return Ok(());
                    })*
                    _ => {}
                }
            };
        }
        real_fields!(assign);
        match key {
            "boundary_mode" => self.boundary_mode = value.trim().parse()?,
            "max_iterations" => {
                self.max_iterations = value
                    .trim()
                    .parse()
                    .map_err(|_| bad("expected an integer"))?
            }
            "n_agents" => {
                self.n_agents = value
                    .trim()
                    .parse()
                    .map_err(|_| bad("expected an integer"))?
            }
            _ => {
                return Err(NoahError::Config(format!("unknown parameter `{key}`")));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), NoahError> {
        macro_rules! finite {
            ($($f:ident),*) => {
                $(if !self.$f.is_finite() {
                    return Err(NoahError::invalid_param(stringify!($f), "must be finite"));
                })*
            };
        }
        real_fields!(finite);
        let zero = T::zero();
        let positive = [
            ("amp_attract", self.amp_attract),
            ("amp_repel", self.amp_repel),
            ("sigma_r", self.sigma_r),
            ("comm_range", self.comm_range),
            ("attenuation", self.attenuation),
            ("d0", self.d0),
            ("kappa0", self.kappa0),
            ("r_neigh", self.r_neigh),
            ("r_settle", self.r_settle),
            ("energy_max", self.energy_max),
            ("v_max", self.v_max),
            ("fd_step", self.fd_step),
        ];
        for (name, v) in positive {
            if v <= zero {
                return Err(NoahError::invalid_param(name, "must be > 0"));
            }
        }
        if self.sigma_a <= self.sigma_r {
            return Err(NoahError::invalid_param("sigma_a", "must exceed sigma_r"));
        }
        if self.mu <= zero || self.mu > T::one() {
            return Err(NoahError::invalid_param("mu", "must lie in (0, 1]"));
        }
        if self.nu < zero {
            return Err(NoahError::invalid_param("nu", "must be >= 0"));
        }
        if self.energy_drain < zero {
            return Err(NoahError::invalid_param("energy_drain", "must be >= 0"));
        }
        if self.n_agents == 0 {
            return Err(NoahError::invalid_param("n_agents", "must be >= 1"));
        }
        Ok(())
    }

    /// Copy with length-type constants converted to absolute units of `domain`.
    pub fn in_domain(&self, domain: &Domain<T>) -> Self {
        let l = |f: T| domain.length(f);
        Self {
            sigma_a: l(self.sigma_a),
            sigma_r: l(self.sigma_r),
            comm_range: l(self.comm_range),
            d0: l(self.d0),
            r_neigh: l(self.r_neigh),
            r_settle: l(self.r_settle),
            ..self.clone()
        }
    }

    /// Multiplies all five settlement logit weights by `factor`.
    pub fn scale_settlement_weights(&mut self, factor: T) {
        self.lambda1 = self.lambda1 * factor;
        self.lambda2 = self.lambda2 * factor;
        self.lambda3 = self.lambda3 * factor;
        self.lambda4 = self.lambda4 * factor;
        self.lambda5 = self.lambda5 * factor;
    }
}
