//! Ambient current models and the flow-shear feature.

use serde::{Deserialize, Serialize};

use crate::base::{Domain, Real, Vector};
use crate::grid::RegularGrid;

const CENTER_EPS: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", tag = "kind", rename_all = "lowercase")]
pub enum FlowField<T> {
    Zero,
    Uniform {
        velocity: Vector<T>,
    },
    /// Unit-normalised rigid rotation about `center` in the first two axes.
    Circular {
        center: Vector<T>,
        speed: T,
    },
    /// Two-channel (u, v) grid over the first two axes.
    Grid {
        grid: RegularGrid<T>,
    },
}

impl<T: Real> FlowField<T> {
    /// Whether the Jacobian is identically zero.
    pub fn is_constant(&self) -> bool {
        matches!(self, Self::Zero | Self::Uniform { .. })
    }

    pub fn circular_about(domain: &Domain<T>, speed: T) -> Self {
        Self::Circular {
            center: domain.center(),
            speed,
        }
    }
}

/// Current velocity `U(x)`.
pub fn sample_flow<T: Real>(field: &FlowField<T>, x: &Vector<T>) -> Vector<T> {
    let dim = x.dim();
    match field {
        FlowField::Zero => Vector::zeros(dim),
        FlowField::Uniform { velocity } => velocity.clone(),
        FlowField::Circular { center, speed } => {
            let mut out = Vector::zeros(dim);
            if dim < 2 {
                return out;
            }
            let dx = x[0] - center[0];
            let dy = x[1] - center[1];
            let r = (dx * dx + dy * dy).sqrt();
            if r == T::zero() {
                return out;
            }
            let s = *speed / r.max(T::lit(CENTER_EPS));
            out[0] = -dy * s;
            out[1] = dx * s;
            out
        }
        FlowField::Grid { grid } => {
            let mut out = Vector::zeros(dim);
            if dim >= 2 {
                out[0] = grid.sample(0, x[0], x[1]);
                out[1] = grid.sample(1, x[0], x[1]);
            }
            out
        }
    }
}

/// Frobenius norm of the flow Jacobian at `x`, by central differences with
/// step `h`. Probe points are clamped to `domain`, giving one-sided
/// differences at the faces.
pub fn shear<T: Real>(field: &FlowField<T>, x: &Vector<T>, h: T, domain: &Domain<T>) -> T {
    if field.is_constant() {
        return T::zero();
    }
    let mut sum = T::zero();
    for k in 0..x.dim() {
        let mut plus = x.clone();
        let mut minus = x.clone();
        plus[k] = domain.clamp_scalar(x[k] + h);
        minus[k] = domain.clamp_scalar(x[k] - h);
        let span = plus[k] - minus[k];
        if span <= T::zero() {
            continue;
        }
        let up = sample_flow(field, &plus);
        let um = sample_flow(field, &minus);
        for j in 0..x.dim() {
            let d = (up[j] - um[j]) / span;
            sum = sum + d * d;
        }
    }
    sum.sqrt()
}
