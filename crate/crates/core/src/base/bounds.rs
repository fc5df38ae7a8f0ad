use serde::{Deserialize, Serialize};

use super::real::Real;
use super::vector::Vector;
use crate::error::NoahError;

/// How a position that leaves the box is brought back inside.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryMode {
    Reflect,
    Wrap,
    Clamp,
}

impl std::str::FromStr for BoundaryMode {
    type Err = NoahError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reflect" => Ok(Self::Reflect),
            "wrap" => Ok(Self::Wrap),
            "clamp" => Ok(Self::Clamp),
            other => Err(NoahError::Config(format!(
                "unknown boundary mode `{other}` (valid: reflect, wrap, clamp)"
            ))),
        }
    }
}

/// Axis-aligned search box `[lo, hi]^dim`.
///
/// Length-type tuning constants are expressed as fractions of the box extent
/// `hi - lo`; [`Domain::length`] converts them to absolute units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Domain<T> {
    pub lo: T,
    pub hi: T,
    pub dim: usize,
}

impl<T: Real> Domain<T> {
    pub fn new(lo: T, hi: T, dim: usize) -> Result<Self, NoahError> {
        if dim == 0 {
            return Err(NoahError::Config("dimension must be at least 1".into()));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(NoahError::Config(format!(
                "domain bounds must be finite with lo < hi (got [{lo}, {hi}])"
            )));
        }
        Ok(Self { lo, hi, dim })
    }

    pub fn unit(dim: usize) -> Self {
        Self {
            lo: T::zero(),
            hi: T::one(),
            dim,
        }
    }

    pub fn extent(&self) -> T {
        self.hi - self.lo
    }

    pub fn center(&self) -> Vector<T> {
        Vector::new(vec![(self.lo + self.hi) / T::lit(2.0); self.dim])
    }

    /// Converts a fraction of the extent to absolute length.
    pub fn length(&self, fraction: T) -> T {
        fraction * self.extent()
    }

    pub fn contains(&self, x: &Vector<T>) -> bool {
        x.dim() == self.dim && x.iter().all(|&c| c >= self.lo && c <= self.hi)
    }

    pub fn clamp_scalar(&self, c: T) -> T {
        c.max(self.lo).min(self.hi)
    }

    pub fn clamp(&self, x: &Vector<T>) -> Vector<T> {
        Vector::new(x.iter().map(|&c| self.clamp_scalar(c)).collect())
    }

    /// Brings `position` back into the box. Under `Reflect` the matching
    /// `velocity` component is negated for every folded axis.
    pub fn apply_boundary(
        &self,
        mode: BoundaryMode,
        position: &mut Vector<T>,
        velocity: &mut Vector<T>,
    ) {
        let (lo, hi, ext) = (self.lo, self.hi, self.extent());
        for k in 0..position.dim() {
            let c = position[k];
            if c >= lo && c <= hi {
                continue;
            }
            match mode {
                BoundaryMode::Reflect => {
                    let folded = if c > hi { hi + hi - c } else { lo + lo - c };
                    // a step longer than the box can overshoot the opposite face
                    position[k] = self.clamp_scalar(folded);
                    velocity[k] = -velocity[k];
                }
                BoundaryMode::Wrap => {
                    let mut r = (c - lo) % ext;
                    if r < T::zero() {
                        r = r + ext;
                    }
                    position[k] = self.clamp_scalar(lo + r);
                }
                BoundaryMode::Clamp => {
                    position[k] = self.clamp_scalar(c);
                }
            }
        }
    }
}

/// Volume of the d-ball of radius `r` (area in 2D, length-2r interval in 1D).
pub fn ball_volume<T: Real>(dim: usize, r: T) -> T {
    let pi = T::PI();
    match dim {
        1 => T::lit(2.0) * r,
        2 => pi * r * r,
        3 => T::lit(4.0 / 3.0) * pi * r * r * r,
        d => {
            // V_d = pi^(d/2) / Gamma(d/2 + 1) r^d, via the two-step recurrence
            let mut v = if d % 2 == 0 { T::one() } else { T::lit(2.0) };
            let mut k = if d % 2 == 0 { 2 } else { 3 };
            while k <= d {
                v = v * T::lit(2.0) * pi / T::from_usize_lossy(k);
                k += 2;
            }
            v * r.powi(d as i32)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit2() -> Domain<f64> {
        Domain::unit(2)
    }

    #[test]
    fn reflect_mirrors_and_negates() {
        let d = unit2();
        let mut x = Vector::from_f64(&[1.1, 0.5]);
        let mut v = Vector::from_f64(&[0.3, 0.0]);
        d.apply_boundary(BoundaryMode::Reflect, &mut x, &mut v);
        assert!((x[0] - 0.9).abs() < 1e-12);
        assert_eq!(v[0], -0.3);
        assert_eq!(x[1], 0.5);
    }

    #[test]
    fn wrap_and_clamp() {
        let d = unit2();
        let mut x = Vector::from_f64(&[1.25, -0.25]);
        let mut v = Vector::zeros(2);
        d.apply_boundary(BoundaryMode::Wrap, &mut x, &mut v);
        assert!((x[0] - 0.25).abs() < 1e-12 && (x[1] - 0.75).abs() < 1e-12);
        let mut y = Vector::from_f64(&[1.25, -0.25]);
        d.apply_boundary(BoundaryMode::Clamp, &mut y, &mut v);
        assert_eq!(y.as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn ball_volumes() {
        let pi = std::f64::consts::PI;
        assert!((ball_volume(2, 0.1_f64) - pi * 0.01).abs() < 1e-15);
        assert!((ball_volume(3, 1.0_f64) - 4.0 / 3.0 * pi).abs() < 1e-12);
        assert!((ball_volume(4, 1.0_f64) - pi * pi / 2.0).abs() < 1e-12);
        assert!((ball_volume(5, 1.0_f64) - 8.0 * pi * pi / 15.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_degenerate_box() {
        assert!(Domain::new(1.0_f64, 1.0, 2).is_err());
        assert!(Domain::new(0.0_f64, 1.0, 0).is_err());
    }
}
