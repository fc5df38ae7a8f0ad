use noah::baselines::{run_baseline, run_cvt, run_greedy, run_pso, run_pso_from, run_vfa};
use noah::{BaselineConfig, Domain, FlowField, Method, Objective, Vector};

fn square() -> Domain {
    Domain::new(-2.0, 2.0, 2).unwrap()
}

fn flow() -> FlowField {
    FlowField::circular_about(&square(), 0.05)
}

fn mean_best(method: Method, objective: &Objective, seeds: u64) -> f64 {
    let cfg = BaselineConfig::default();
    (0..seeds)
        .map(|s| {
            run_baseline(method, objective, &flow(), &cfg, s)
                .unwrap()
                .best_fitness
        })
        .sum::<f64>()
        / seeds as f64
}

#[test]
fn pso_on_bowl() {
    let m = mean_best(Method::Pso, &Objective::anchoring_bowl(square()), 30);
    assert!(m <= -0.97, "pso bowl mean {m}");
}

#[test]
fn vfa_on_bowl() {
    let m = mean_best(Method::Vfa, &Objective::anchoring_bowl(square()), 30);
    assert!(m <= -0.85, "vfa bowl mean {m}");
}

#[test]
fn greedy_on_rosenbrock() {
    let m = mean_best(Method::Greedy, &Objective::rosenbrock(square()), 30);
    assert!(m <= 0.2, "greedy rosenbrock mean {m}");
}

#[test]
fn cvt_is_poor_on_rastrigin() {
    let o = Objective::rastrigin(square());
    let cvt = mean_best(Method::Cvt, &o, 30);
    let pso = mean_best(Method::Pso, &o, 30);
    assert!(cvt > pso, "cvt {cvt} pso {pso}");
}

#[test]
fn pso_single_agent_at_optimum() {
    let cfg = BaselineConfig {
        n_agents: 1,
        eval_budget: Some(20),
        ..Default::default()
    };
    let o = Objective::anchoring_bowl(square());
    let r = run_pso_from(&o, &FlowField::Zero, &cfg, vec![Vector::zeros(2)], 0);
    assert_eq!(r.best_fitness, -1.0);
    assert_eq!(r.trace[0].best_fitness, -1.0);
}

#[test]
fn budgets_are_spent_exactly() {
    let o = Objective::ackley(square());
    for budget in [1, 49, 50, 51, 137, 1000] {
        let cfg = BaselineConfig {
            eval_budget: Some(budget),
            ..Default::default()
        };
        let pso = run_pso(&o, &flow(), &cfg, 3);
        let vfa = run_vfa(&o, &flow(), &cfg, 3);
        let greedy = run_greedy(&o, &cfg, 3).unwrap();
        // the swarm always scores its initial positions
        assert_eq!(pso.evaluations, budget.max(50));
        assert_eq!(vfa.evaluations, budget.max(50));
        assert!(greedy.evaluations <= budget);
        assert!(greedy.evaluations + 2 * budget.isqrt() + 1 > budget);
    }
    let cvt = run_cvt(&o, &BaselineConfig::default(), 3);
    assert_eq!(cvt.evaluations, 50);
}

#[test]
fn best_traces_never_rise() {
    let o = Objective::rastrigin(square());
    let cfg = BaselineConfig {
        n_agents: 20,
        max_iterations: 40,
        ..Default::default()
    };
    for method in [Method::Pso, Method::Cvt, Method::Vfa, Method::Greedy] {
        let r = run_baseline(method, &o, &flow(), &cfg, 8).unwrap();
        for w in r.trace.windows(2) {
            assert!(w[1].best_fitness <= w[0].best_fitness, "{method}");
        }
        assert_eq!(
            r.trace.last().unwrap().best_fitness,
            r.best_fitness,
            "{method}"
        );
        assert!(
            r.placements.iter().all(|p| o.domain.contains(p)),
            "{method}"
        );
    }
}

#[test]
fn static_placers_are_reproducible() {
    let o = Objective::rosenbrock(square());
    let cfg = BaselineConfig {
        n_agents: 10,
        ..Default::default()
    };
    assert_eq!(run_cvt(&o, &cfg, 5), run_cvt(&o, &cfg, 5));
    assert_eq!(
        run_greedy(&o, &cfg, 5).unwrap(),
        run_greedy(&o, &cfg, 5).unwrap()
    );
    assert_eq!(run_pso(&o, &flow(), &cfg, 5), run_pso(&o, &flow(), &cfg, 5));
}

#[test]
fn noah_is_not_a_baseline() {
    let err = run_baseline(
        Method::Noah,
        &Objective::rastrigin(square()),
        &flow(),
        &BaselineConfig::default(),
        0,
    );
    assert!(err.is_err());
}
