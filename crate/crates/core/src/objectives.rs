//! Benchmark objectives and the finite-difference gradient surrogate.

use serde::{Deserialize, Serialize};

use crate::base::{Domain, Real, Vector};
use crate::error::NoahError;
use crate::grid::RegularGrid;

/// Scalar component map of the mission objective.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "T: Real", tag = "kind", rename_all = "lowercase")]
pub enum ScalarMap<T> {
    #[default]
    Zero,
    Constant {
        value: T,
    },
    /// Single-channel grid over the first two axes.
    Grid {
        grid: RegularGrid<T>,
    },
}

impl<T: Real> ScalarMap<T> {
    pub fn value(&self, x: &Vector<T>) -> T {
        match self {
            Self::Zero => T::zero(),
            Self::Constant { value } => *value,
            Self::Grid { grid } => {
                let y = if x.dim() > 1 { x[1] } else { T::zero() };
                grid.sample(0, x[0], y)
            }
        }
    }
}

/// `w1 Energy + w2 Risk - w3 Coverage - w4 InfoGain + Penalties`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct MissionObjective<T> {
    pub weights: [T; 4],
    pub energy: ScalarMap<T>,
    pub risk: ScalarMap<T>,
    pub coverage: ScalarMap<T>,
    pub info_gain: ScalarMap<T>,
    pub penalties: ScalarMap<T>,
}

impl<T: Real> Default for MissionObjective<T> {
    fn default() -> Self {
        Self {
            weights: [T::one(); 4],
            energy: ScalarMap::Zero,
            risk: ScalarMap::Zero,
            coverage: ScalarMap::Zero,
            info_gain: ScalarMap::Zero,
            penalties: ScalarMap::Zero,
        }
    }
}

impl<T: Real> MissionObjective<T> {
    pub fn evaluate(&self, x: &Vector<T>) -> T {
        let [w1, w2, w3, w4] = self.weights;
        w1 * self.energy.value(x) + w2 * self.risk.value(x)
            - w3 * self.coverage.value(x)
            - w4 * self.info_gain.value(x)
            + self.penalties.value(x)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", tag = "kind", rename_all = "snake_case")]
pub enum ObjectiveKind<T> {
    Rastrigin,
    Ackley,
    Rosenbrock,
    AnchoringBowl,
    Mission(MissionObjective<T>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct KnownOptimum<T> {
    pub location: Vector<T>,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Objective<T> {
    pub kind: ObjectiveKind<T>,
    pub domain: Domain<T>,
    pub known_optimum: Option<KnownOptimum<T>>,
}

pub const BENCHMARK_NAMES: [&str; 4] = ["rastrigin", "ackley", "rosenbrock", "anchoring_bowl"];

impl<T: Real> Objective<T> {
    fn with_optimum(kind: ObjectiveKind<T>, domain: Domain<T>, at: T, value: T) -> Self {
        let location = Vector::new(vec![at; domain.dim]);
        let known_optimum = domain
            .contains(&location)
            .then_some(KnownOptimum { location, value });
        Self {
            kind,
            domain,
            known_optimum,
        }
    }

    pub fn rastrigin(domain: Domain<T>) -> Self {
        Self::with_optimum(ObjectiveKind::Rastrigin, domain, T::zero(), T::zero())
    }

    pub fn ackley(domain: Domain<T>) -> Self {
        Self::with_optimum(ObjectiveKind::Ackley, domain, T::zero(), T::zero())
    }

    pub fn rosenbrock(domain: Domain<T>) -> Self {
        Self::with_optimum(ObjectiveKind::Rosenbrock, domain, T::one(), T::zero())
    }

    /// `||x||^2 - 1`, minimum -1 at the origin.
    pub fn anchoring_bowl(domain: Domain<T>) -> Self {
        Self::with_optimum(ObjectiveKind::AnchoringBowl, domain, T::zero(), -T::one())
    }

    pub fn mission(mission: MissionObjective<T>, domain: Domain<T>) -> Self {
        Self {
            kind: ObjectiveKind::Mission(mission),
            domain,
            known_optimum: None,
        }
    }

    /// Looks up a benchmark by name.
    pub fn by_name(name: &str, domain: Domain<T>) -> Result<Self, NoahError> {
        match name {
            "rastrigin" => Ok(Self::rastrigin(domain)),
            "ackley" => Ok(Self::ackley(domain)),
            "rosenbrock" => Ok(Self::rosenbrock(domain)),
            "anchoring_bowl" | "bowl" => Ok(Self::anchoring_bowl(domain)),
            "mission" => Ok(Self::mission(MissionObjective::default(), domain)),
            other => Err(NoahError::Config(format!(
                "unknown objective `{other}` (valid: {}, mission)",
                BENCHMARK_NAMES.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ObjectiveKind::Rastrigin => "rastrigin",
            ObjectiveKind::Ackley => "ackley",
            ObjectiveKind::Rosenbrock => "rosenbrock",
            ObjectiveKind::AnchoringBowl => "anchoring_bowl",
            ObjectiveKind::Mission(_) => "mission",
        }
    }

    pub fn dim(&self) -> usize {
        self.domain.dim
    }
}

/// Objective value at `x`.
pub fn evaluate<T: Real>(obj: &Objective<T>, x: &Vector<T>) -> T {
    let two = T::lit(2.0);
    let tau = two * T::PI();
    match &obj.kind {
        ObjectiveKind::AnchoringBowl => x.norm_squared() - T::one(),
        ObjectiveKind::Rastrigin => {
            let a = T::lit(10.0);
            x.iter().fold(a * T::from_usize_lossy(x.dim()), |acc, &c| {
                acc + c * c - a * (tau * c).cos()
            })
        }
        ObjectiveKind::Ackley => {
            let n = T::from_usize_lossy(x.dim());
            let sq = x.norm_squared() / n;
            let cos = x.iter().fold(T::zero(), |acc, &c| acc + (tau * c).cos()) / n;
            let a = T::lit(20.0);
            -a * (-T::lit(0.2) * sq.sqrt()).exp() - cos.exp() + a + T::E()
        }
        ObjectiveKind::Rosenbrock => {
            let s = x.as_slice();
            let hundred = T::lit(100.0);
            s.windows(2).fold(T::zero(), |acc, w| {
                let (a, b) = (T::one() - w[0], w[1] - w[0] * w[0]);
                acc + a * a + hundred * b * b
            })
        }
        ObjectiveKind::Mission(m) => m.evaluate(x),
    }
}

/// Central-difference gradient estimate with step `h`; probes are clamped to
/// the objective's box (one-sided at the faces). Costs `2 * dim` evaluations.
pub fn gradient_surrogate<T: Real>(obj: &Objective<T>, x: &Vector<T>, h: T) -> Vector<T> {
    let domain = &obj.domain;
    let mut grad = Vector::zeros(x.dim());
    let mut probe = x.clone();
    for k in 0..x.dim() {
        let hi = domain.clamp_scalar(x[k] + h);
        let lo = domain.clamp_scalar(x[k] - h);
        if hi <= lo {
            continue;
        }
        probe[k] = hi;
        let fp = evaluate(obj, &probe);
        probe[k] = lo;
        let fm = evaluate(obj, &probe);
        probe[k] = x[k];
        grad[k] = (fp - fm) / (hi - lo);
    }
    grad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx() -> Domain<f64> {
        Domain::new(-2.0, 2.0, 2).unwrap()
    }

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_f64(c)
    }

    #[test]
    fn canonical_minima() {
        let bowl = Objective::anchoring_bowl(bx());
        assert_eq!(evaluate(&bowl, &v(&[0.0, 0.0])), -1.0);
        assert_eq!(evaluate(&Objective::rastrigin(bx()), &v(&[0.0, 0.0])), 0.0);
        assert_eq!(evaluate(&Objective::rosenbrock(bx()), &v(&[1.0, 1.0])), 0.0);
        assert!(evaluate(&Objective::ackley(bx()), &v(&[0.0, 0.0])).abs() < 1e-12);
    }

    #[test]
    fn known_optima_consistent() {
        for name in BENCHMARK_NAMES {
            let o = Objective::by_name(name, bx()).unwrap();
            let k = o.known_optimum.as_ref().unwrap();
            assert!(
                (evaluate(&o, &k.location) - k.value).abs() < 1e-12,
                "{name}"
            );
        }
        // optimum outside the box is not advertised
        let shifted = Domain::new(2.0, 3.0, 2).unwrap();
        assert!(Objective::<f64>::rosenbrock(shifted)
            .known_optimum
            .is_none());
    }

    #[test]
    fn reference_values() {
        // rastrigin at (1,1): 20 + 2*(1 - 10) = 2
        assert!((evaluate(&Objective::rastrigin(bx()), &v(&[1.0, 1.0])) - 2.0).abs() < 1e-12);
        // rosenbrock at (0,0): 1
        assert_eq!(evaluate(&Objective::rosenbrock(bx()), &v(&[0.0, 0.0])), 1.0);
        // ackley at (1,0): -20 exp(-0.2 sqrt(0.5)) - exp((1 + 1)/2) + 20 + e
        let want = -20.0 * (-0.2 * 0.5f64.sqrt()).exp() - 1.0f64.exp() + 20.0 + std::f64::consts::E;
        assert!((evaluate(&Objective::ackley(bx()), &v(&[1.0, 0.0])) - want).abs() < 1e-12);
    }

    #[test]
    fn unknown_name_lists_valid() {
        let err = Objective::<f64>::by_name("sphere", bx())
            .unwrap_err()
            .to_string();
        assert!(err.contains("rastrigin") && err.contains("anchoring_bowl"));
    }

    #[test]
    fn surrogate_examples() {
        let bowl = Objective::anchoring_bowl(bx());
        let g = gradient_surrogate(&bowl, &v(&[1.0, 0.0]), 1e-3);
        assert!((g[0] - 2.0).abs() < 1e-6 && g[1].abs() < 1e-6);
        let g0 = gradient_surrogate(&bowl, &v(&[0.0, 0.0]), 1e-3);
        assert!(g0.norm() < 1e-6);
        let rosen = Objective::rosenbrock(bx());
        let g = gradient_surrogate(&rosen, &v(&[0.0, 0.0]), 1e-3);
        assert!((g[0] + 2.0).abs() < 1e-5 && g[1].abs() < 1e-5);
        let g1 = gradient_surrogate(&rosen, &v(&[1.0, 1.0]), 1e-3);
        assert!(g1.norm() < 1e-3);
    }

    #[test]
    fn surrogate_one_sided_at_face() {
        let bowl = Objective::anchoring_bowl(bx());
        // at x=2 the probe pair is (2 - h, 2): slope of x^2 over that span is 4 - h
        let g = gradient_surrogate(&bowl, &v(&[2.0, 0.0]), 1e-3);
        assert!((g[0] - (4.0 - 1e-3)).abs() < 1e-9);
    }

    #[test]
    fn bowl_bounded_below() {
        let bowl = Objective::anchoring_bowl(bx());
        for p in [[0.1, 0.0], [-1.0, 2.0], [1e-8, 0.0]] {
            assert!(evaluate(&bowl, &v(&p)) > -1.0);
        }
    }

    #[test]
    fn mission_linear_in_weights() {
        let mut m = MissionObjective::<f64> {
            energy: ScalarMap::Constant { value: 0.7 },
            risk: ScalarMap::Constant { value: 0.2 },
            coverage: ScalarMap::Constant { value: 0.4 },
            info_gain: ScalarMap::Constant { value: 0.1 },
            penalties: ScalarMap::Constant { value: 0.05 },
            weights: [1.0, 1.0, 1.0, 1.0],
        };
        let x = v(&[0.0, 0.0]);
        let base = m.evaluate(&x);
        assert!((base - (0.7 + 0.2 - 0.4 - 0.1 + 0.05)).abs() < 1e-15);
        m.weights[0] = 2.0;
        assert!((m.evaluate(&x) - base - 0.7).abs() < 1e-15);
        let zero = Objective::<f64>::mission(MissionObjective::default(), bx());
        assert_eq!(evaluate(&zero, &x), 0.0);
    }

    #[test]
    fn mission_grid_component() {
        let csv = "x,y,e\n-2,-2,0\n2,-2,4\n-2,2,0\n2,2,4\n";
        let grid = RegularGrid::read_csv(csv.as_bytes(), 1).unwrap();
        let m = MissionObjective::<f64> {
            energy: ScalarMap::Grid { grid },
            ..Default::default()
        };
        assert!((m.evaluate(&v(&[0.0, 1.0])) - 2.0).abs() < 1e-12);
    }
}
