use noah::engine::{run, step};
use noah::{
    default_params, BoundaryMode, Domain, FlowField, NoahError, NoahParams, Objective, SwarmState,
    Termination, Vector,
};

fn bowl() -> Objective {
    Objective::anchoring_bowl(Domain::new(-2.0, 2.0, 2).unwrap())
}

fn circular(domain: &Domain) -> FlowField {
    FlowField::circular_about(domain, 0.05)
}

/// Slow settlers so that runs last long enough to be interesting.
fn patient(n_agents: usize, max_iterations: usize) -> NoahParams {
    let mut p = NoahParams {
        n_agents,
        max_iterations,
        ..default_params()
    };
    p.scale_settlement_weights(0.2);
    p.lambda1 = -1.0;
    p
}

#[test]
fn settled_agents_never_move_or_unsettle() {
    let objective = Objective::rastrigin(Domain::new(-2.0, 2.0, 2).unwrap());
    let flow = circular(&objective.domain);
    let params = patient(15, 40).in_domain(&objective.domain);
    let mut state = SwarmState::init(&objective, &params, 9);
    let mut frozen: Vec<Option<Vector>> = vec![None; 15];
    let mut free_before = state.free_count();
    for _ in 0..40 {
        let report = step(&mut state, &objective, &flow, &params).unwrap();
        for (i, a) in state.agents.iter().enumerate() {
            match &frozen[i] {
                Some(pos) => {
                    assert!(a.is_settled());
                    assert_eq!(&a.position, pos);
                }
                None if a.is_settled() => frozen[i] = Some(a.position.clone()),
                None => {}
            }
            if a.is_settled() {
                assert!(a.velocity.is_zero());
            }
        }
        assert!(report.free_agents <= free_before);
        free_before = report.free_agents;
        assert_eq!(state.colonies.len(), state.settled_count());
    }
}

#[test]
fn trace_invariants_hold_across_seeds() {
    let objective = Objective::ackley(Domain::new(-2.0, 2.0, 2).unwrap());
    let flow = circular(&objective.domain);
    for seed in 0..10 {
        let r = run(&objective, &flow, &patient(20, 60), seed).unwrap();
        for w in r.trace.windows(2) {
            assert!(w[1].best_fitness <= w[0].best_fitness);
            assert!(w[1].free_agents <= w[0].free_agents);
            assert_eq!(w[1].iteration, w[0].iteration + 1);
        }
        assert_eq!(r.colonies.len(), r.settled_count());
        assert_eq!(r.placements.len(), r.settled_count());
        assert_eq!(r.best_fitness, r.trace.last().unwrap().best_fitness);
        match r.termination {
            Termination::AllAnchored => assert_eq!(r.trace.last().unwrap().free_agents, 0),
            Termination::MaxIterations => assert_eq!(r.trace.len(), 61),
            other => panic!("unexpected termination {other:?}"),
        }
        // colony history only ever adds entries and never revives one
        for w in r.colony_history.windows(2) {
            assert!(w[1].len() >= w[0].len());
            for (a, b) in w[0].iter().zip(&w[1]) {
                assert_eq!(a.location, b.location);
                assert!(a.active || !b.active);
            }
        }
    }
}

#[test]
fn noiseless_descent_on_bowl_does_not_get_worse() {
    let objective = bowl();
    let mut p = NoahParams {
        n_agents: 10,
        max_iterations: 50,
        eta: 0.0,
        delta: 0.0,
        ..default_params()
    };
    p.scale_settlement_weights(0.0);
    p.lambda5 = -20.0;
    let r = run(&objective, &FlowField::Zero, &p, 3).unwrap();
    assert_eq!(r.trace.len(), 51);
    assert!(r.best_fitness <= r.trace[1].best_fitness);
    assert!(r.best_fitness < -0.999, "{}", r.best_fitness);
}

#[test]
fn huge_weights_anchor_everyone_at_once() {
    let mut p = NoahParams {
        n_agents: 12,
        ..default_params()
    };
    p.scale_settlement_weights(100.0);
    let r = run(&bowl(), &FlowField::Zero, &p, 0).unwrap();
    assert_eq!(r.termination, Termination::AllAnchored);
    assert_eq!(r.trace.len(), 2);
    assert!(r.settlement_times.iter().all(|t| *t == Some(1)));
}

#[test]
fn invalid_parameters_fail_before_running() {
    let p = NoahParams {
        sigma_a: 0.1,
        sigma_r: 0.2,
        ..default_params()
    };
    let err = run(&bowl(), &FlowField::Zero, &p, 0).unwrap_err();
    assert!(
        matches!(
            err,
            NoahError::InvalidParam {
                name: "sigma_a",
                ..
            }
        ),
        "{err}"
    );
}

#[test]
fn identical_seeds_give_identical_results() {
    let o = bowl();
    let flow = circular(&o.domain);
    let a = run(&o, &flow, &patient(20, 50), 17).unwrap();
    let b = run(&o, &flow, &patient(20, 50), 17).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    let c = run(&o, &flow, &patient(20, 50), 18).unwrap();
    assert_ne!(a.trace, c.trace);
}

#[test]
fn wrap_boundary_keeps_agents_inside() {
    let o = Objective::rastrigin(Domain::new(-2.0, 2.0, 2).unwrap());
    let p = NoahParams {
        boundary_mode: BoundaryMode::Wrap,
        ..patient(20, 30)
    };
    let flow = FlowField::Uniform {
        velocity: Vector::from_f64(&[0.3, -0.2]),
    };
    let abs = p.in_domain(&o.domain);
    let mut state = SwarmState::init(&o, &abs, 2);
    for _ in 0..30 {
        step(&mut state, &o, &flow, &abs).unwrap();
        assert!(state.agents.iter().all(|a| o.domain.contains(&a.position)));
    }
}

#[test]
fn single_precision_run() {
    let domain = noah::Domain32::new(-2.0, 2.0, 2).unwrap();
    let o = noah::Objective32::anchoring_bowl(domain);
    let flow = noah::FlowField32::circular_about(&domain, 0.05f32);
    let p = noah::NoahParams32 {
        n_agents: 20,
        max_iterations: 50,
        ..default_params()
    };
    let r: noah::RunResult32 = run(&o, &flow, &p, 1).unwrap();
    assert!(r.best_fitness < 0.0);
    assert!(r.best_position.is_finite());
    let again = run(&o, &flow, &p, 1).unwrap();
    assert_eq!(r, again);
}

#[test]
fn three_dimensional_run() {
    let o = Objective::rosenbrock(Domain::new(-2.0, 2.0, 3).unwrap());
    let r = run(&o, &FlowField::Zero, &patient(30, 40), 5).unwrap();
    assert_eq!(r.best_position.dim(), 3);
    assert!(r.best_fitness.is_finite());
}
