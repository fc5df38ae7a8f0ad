use super::{BaselineConfig, Tracker};
use crate::base::{Domain, Real, RngStream, Vector};
use crate::objectives::Objective;
use crate::result::{Method, RunResult, Termination};

/// Lloyd iterations on the uniform density, with Monte Carlo centroids.
pub fn lloyd<T: Real>(
    domain: &Domain<T>,
    mut generators: Vec<Vector<T>>,
    iterations: usize,
    samples: usize,
    rng: &mut RngStream,
) -> Vec<Vector<T>> {
    let n = generators.len();
    if n == 0 {
        return generators;
    }
    let dim = domain.dim;
    let mut sums = vec![Vector::zeros(dim); n];
    let mut counts = vec![0usize; n];
    let mut sample = Vector::zeros(dim);
    for _ in 0..iterations {
        sums.iter_mut().for_each(|s| *s = Vector::zeros(dim));
        counts.iter_mut().for_each(|c| *c = 0);
        for _ in 0..samples {
            for k in 0..dim {
                sample[k] = rng.uniform_in(domain.lo, domain.hi);
            }
            let mut nearest = 0;
            let mut best = T::infinity();
            for (g, gen) in generators.iter().enumerate() {
                let d2 = sample.distance_squared(gen);
                if d2 < best {
                    best = d2;
                    nearest = g;
                }
            }
            sums[nearest] += &sample;
            counts[nearest] += 1;
        }
        for g in 0..n {
            if counts[g] > 0 {
                generators[g] = sums[g].scaled(T::one() / T::from_usize_lossy(counts[g]));
            }
        }
    }
    generators
}

/// Objective-blind coverage placement; scored by the best generator.
pub fn run_cvt<T: Real>(
    objective: &Objective<T>,
    config: &BaselineConfig<T>,
    seed: u64,
) -> RunResult<T> {
    let d = &objective.domain;
    let mut rng = RngStream::new(seed);
    let init = (0..config.n_agents)
        .map(|_| rng.uniform_vector(d.dim, d.lo, d.hi))
        .collect();
    let generators = lloyd(
        d,
        init,
        config.cvt.lloyd_iterations,
        config.cvt.samples,
        &mut rng,
    );
    let mut tr = Tracker::new(d.dim);
    for g in &generators {
        tr.eval(objective, g);
    }
    let n = generators.len();
    RunResult {
        method: Method::Cvt,
        objective: objective.name().to_string(),
        seed,
        best_position: tr.best_position.clone(),
        best_fitness: tr.best_fitness,
        trace: vec![tr.row(config.cvt.lloyd_iterations, 0)],
        colonies: Vec::new(),
        colony_history: Vec::new(),
        placements: generators,
        settlement_times: vec![None; n],
        termination: Termination::Placed,
        evaluations: tr.evaluations,
        gradient_evaluations: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_generator_goes_to_centre() {
        let domain = Domain::<f64>::new(-2.0, 2.0, 2).unwrap();
        let obj = Objective::anchoring_bowl(domain);
        let cfg = BaselineConfig::<f64> {
            n_agents: 1,
            ..Default::default()
        };
        let r = run_cvt(&obj, &cfg, 11);
        assert!(r.placements[0].norm() < 0.05, "{:?}", r.placements[0]);
    }

    #[test]
    fn deterministic() {
        let domain = Domain::<f64>::new(0.0, 1.0, 2).unwrap();
        let obj = Objective::rastrigin(domain);
        let cfg = BaselineConfig::<f64> {
            n_agents: 8,
            cvt: super::super::CvtSettings {
                lloyd_iterations: 5,
                samples: 500,
            },
            ..Default::default()
        };
        assert_eq!(run_cvt(&obj, &cfg, 2), run_cvt(&obj, &cfg, 2));
    }
}
