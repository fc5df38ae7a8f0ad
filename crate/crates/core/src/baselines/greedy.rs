use super::{BaselineConfig, Tracker};
use crate::base::{Real, Vector};
use crate::error::NoahError;
use crate::objectives::Objective;
use crate::result::{Method, RunResult, Termination};

/// Largest `k` with `k^dim <= budget`.
fn resolution(budget: usize, dim: usize) -> usize {
    let mut k = (budget as f64).powf(1.0 / dim as f64).round() as usize + 1;
    while k > 0 && k.checked_pow(dim as u32).is_none_or(|p| p > budget) {
        k -= 1;
    }
    k
}

/// Scores a uniform grid sized to the evaluation budget and keeps the best
/// `n_agents` points that respect the minimum separation. Deterministic; the
/// seed is only recorded.
pub fn run_greedy<T: Real>(
    objective: &Objective<T>,
    config: &BaselineConfig<T>,
    seed: u64,
) -> Result<RunResult<T>, NoahError> {
    let d = &objective.domain;
    let k = resolution(config.budget(), d.dim);
    if k == 0 {
        return Err(NoahError::NoCandidates);
    }
    let coord = |i: usize| -> T {
        if k == 1 {
            (d.lo + d.hi) / T::lit(2.0)
        } else {
            d.lo + d.extent() * T::from_usize_lossy(i) / T::from_usize_lossy(k - 1)
        }
    };
    let mut tr = Tracker::new(d.dim);
    let total = k.pow(d.dim as u32);
    let mut scored: Vec<(T, usize, Vector<T>)> = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rem = idx;
        let x = Vector::new(
            (0..d.dim)
                .map(|_| {
                    let c = coord(rem % k);
                    rem /= k;
                    c
                })
                .collect(),
        );
        let f = tr.eval(objective, &x);
        scored.push((f, idx, x));
    }
    scored.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.1.cmp(&b.1))
    });

    let sep = d.length(config.greedy.min_separation);
    let sep2 = sep * sep;
    let mut picks: Vec<Vector<T>> = Vec::with_capacity(config.n_agents);
    for (_, _, x) in scored {
        if picks.len() == config.n_agents {
            break;
        }
        if picks.iter().all(|p| p.distance_squared(&x) >= sep2) {
            picks.push(x);
        }
    }
    let n = picks.len();
    Ok(RunResult {
        method: Method::Greedy,
        objective: objective.name().to_string(),
        seed,
        best_position: tr.best_position.clone(),
        best_fitness: tr.best_fitness,
        trace: vec![tr.row(0, 0)],
        colonies: Vec::new(),
        colony_history: Vec::new(),
        placements: picks,
        settlement_times: vec![None; n],
        termination: Termination::Placed,
        evaluations: tr.evaluations,
        gradient_evaluations: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Domain;

    fn bx() -> Domain<f64> {
        Domain::new(-2.0, 2.0, 2).unwrap()
    }

    #[test]
    fn resolution_is_integer_root() {
        assert_eq!(resolution(10_000, 2), 100);
        assert_eq!(resolution(9_999, 2), 99);
        assert_eq!(resolution(27, 3), 3);
        assert_eq!(resolution(0, 2), 0);
        assert_eq!(resolution(1, 2), 1);
    }

    #[test]
    fn grid_through_origin_hits_bowl_minimum() {
        let cfg = BaselineConfig::<f64> {
            n_agents: 5,
            eval_budget: Some(101 * 101),
            ..Default::default()
        };
        let r = run_greedy(&Objective::anchoring_bowl(bx()), &cfg, 0).unwrap();
        assert_eq!(r.best_fitness, -1.0);
        assert_eq!(r.evaluations, 101 * 101);
        assert_eq!(r.placements.len(), 5);
        let sep = bx().length(cfg.greedy.min_separation);
        for i in 0..5 {
            for j in 0..i {
                assert!(r.placements[i].distance(&r.placements[j]) >= sep);
            }
        }
    }

    #[test]
    fn empty_budget() {
        let cfg = BaselineConfig::<f64> {
            eval_budget: Some(0),
            ..Default::default()
        };
        let err = run_greedy(&Objective::anchoring_bowl(bx()), &cfg, 0).unwrap_err();
        assert_eq!(err.to_string(), "no candidates");
    }

    #[test]
    fn rosenbrock_full_budget() {
        let cfg = BaselineConfig::<f64>::default();
        let r = run_greedy(&Objective::rosenbrock(bx()), &cfg, 0).unwrap();
        assert!(r.best_fitness <= 0.2, "{}", r.best_fitness);
    }
}
