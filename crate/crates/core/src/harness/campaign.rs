use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::CampaignConfig;
use super::stats::{compute_rankings, mean, Stats};
use crate::baselines::run_baseline;
use crate::engine;
use crate::error::NoahError;
use crate::fields::FlowField;
use crate::objectives::Objective;
use crate::result::{Method, RunResult, Termination};

/// Per-run figures kept in the summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub seed: u64,
    pub best_fitness: f64,
    pub initial_best: f64,
    pub improvement: Option<f64>,
    pub iterations: usize,
    pub evaluations: usize,
    pub gradient_evaluations: usize,
    pub placements: usize,
    pub active_colonies: usize,
    pub colonies_formed: usize,
    /// Nearest placement (settled agent or final node) to the known optimum.
    pub settled_distance: Option<f64>,
    /// Best position found to the known optimum.
    pub best_distance: Option<f64>,
    pub success: Option<bool>,
    pub termination: Termination,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    pub method: Method,
    /// Final best fitness over the seeds.
    pub fitness: Stats,
    pub successes: Option<usize>,
    pub success_rate: Option<f64>,
    /// Active colonies at the end of a run.
    pub mean_colonies: f64,
    pub mean_colonies_formed: f64,
    /// Over successful runs only.
    pub mean_settled_distance: Option<f64>,
    pub std_settled_distance: Option<f64>,
    /// Over every run with at least one placement.
    pub mean_settled_distance_all: Option<f64>,
    pub mean_best_distance: Option<f64>,
    pub mean_initial_best: f64,
    pub mean_improvement: Option<f64>,
    pub mean_iterations: f64,
    pub mean_evaluations: f64,
    pub runs: Vec<RunSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub objective: String,
    pub known_optimum: Option<Vec<f64>>,
    pub methods: Vec<MethodReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankingTable {
    pub methods: Vec<Method>,
    pub benchmarks: Vec<String>,
    /// `means[method][benchmark]`.
    pub means: Vec<Vec<f64>>,
    /// `ranks[method][benchmark]`, 1 = worst, M = best.
    pub ranks: Vec<Vec<usize>>,
    pub average_rank: Vec<f64>,
    /// Benchmarks whose ranking needed the name tie-break.
    pub ties: Vec<String>,
    /// Benchmarks where NOAH is outside the top two.
    pub noah_outside_top_two: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub benchmarks: Vec<BenchmarkReport>,
    pub ranking: RankingTable,
    pub flags: Vec<String>,
}

impl CampaignReport {
    pub fn benchmark(&self, objective: &str) -> Option<&BenchmarkReport> {
        self.benchmarks.iter().find(|b| b.objective == objective)
    }

    pub fn method(&self, objective: &str, method: Method) -> Option<&MethodReport> {
        self.benchmark(objective)?
            .methods
            .iter()
            .find(|m| m.method == method)
    }

    pub fn average_rank(&self, method: Method) -> Option<f64> {
        let i = self.ranking.methods.iter().position(|&m| m == method)?;
        Some(self.ranking.average_rank[i])
    }
}

/// A finished campaign: the aggregate report plus every run, ordered by
/// objective, then method, then seed.
#[derive(Clone, Debug)]
pub struct CampaignOutcome {
    pub report: CampaignReport,
    pub runs: Vec<RunResult<f64>>,
}

struct Job<'a> {
    objective: &'a Objective<f64>,
    method: Method,
    seed: u64,
    budget: Option<usize>,
}

fn execute(
    job: &Job<'_>,
    config: &CampaignConfig,
    flow: &FlowField<f64>,
) -> Result<RunResult<f64>, NoahError> {
    match job.method {
        Method::Noah => engine::run(job.objective, flow, &config.noah_params(), job.seed),
        m => run_baseline(
            m,
            job.objective,
            flow,
            &config.baseline_config(job.budget),
            job.seed,
        ),
    }
}

fn run_jobs(
    jobs: &[Job<'_>],
    config: &CampaignConfig,
    flow: &FlowField<f64>,
) -> Result<Vec<RunResult<f64>>, NoahError> {
    jobs.par_iter().map(|j| execute(j, config, flow)).collect()
}

/// Runs every (objective, method, seed) triple and aggregates the results.
/// NOAH runs go first; each baseline run then receives the evaluation count
/// of the NOAH run with the same objective and seed (or
/// `n_agents * max_iterations` when NOAH is not part of the campaign).
/// `threads = None` lets the pool pick; results never depend on it.
pub fn run_campaign(
    config: &CampaignConfig,
    threads: Option<usize>,
) -> Result<CampaignOutcome, NoahError> {
    config.validate()?;
    let config = config.clone().synced();
    let domain = config.domain()?;
    let flow = config.flow_field()?;
    let objectives = config
        .objectives
        .iter()
        .map(|name| Objective::by_name(name, domain))
        .collect::<Result<Vec<_>, _>>()?;
    let seeds: Vec<u64> = config.seeds().collect();

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| NoahError::Config(format!("thread pool: {e}")))?;

    let has_noah = config.methods.contains(&Method::Noah);
    let noah_jobs: Vec<Job> = if has_noah {
        objectives
            .iter()
            .flat_map(|o| {
                seeds.iter().map(move |&seed| Job {
                    objective: o,
                    method: Method::Noah,
                    seed,
                    budget: None,
                })
            })
            .collect()
    } else {
        Vec::new()
    };
    let noah_runs = pool.install(|| run_jobs(&noah_jobs, &config, &flow))?;

    let mut baseline_jobs = Vec::new();
    for (oi, o) in objectives.iter().enumerate() {
        for &method in config.methods.iter().filter(|&&m| m != Method::Noah) {
            for (si, &seed) in seeds.iter().enumerate() {
                let budget = has_noah.then(|| noah_runs[oi * seeds.len() + si].evaluations);
                baseline_jobs.push(Job {
                    objective: o,
                    method,
                    seed,
                    budget,
                });
            }
        }
    }
    let baseline_runs = pool.install(|| run_jobs(&baseline_jobs, &config, &flow))?;

    // reorder into objective, method (config order), seed
    let mut runs = Vec::with_capacity(noah_runs.len() + baseline_runs.len());
    let mut noah_iter = noah_runs.into_iter();
    let mut base_iter = baseline_runs.into_iter();
    for _ in &objectives {
        for &method in &config.methods {
            let source: &mut dyn Iterator<Item = RunResult<f64>> = if method == Method::Noah {
                &mut noah_iter
            } else {
                &mut base_iter
            };
            runs.extend(source.take(seeds.len()));
        }
    }

    let report = aggregate(config, &objectives, &runs);
    Ok(CampaignOutcome { report, runs })
}

fn summarise_run(
    run: &RunResult<f64>,
    objective: &Objective<f64>,
    success_radius: f64,
) -> RunSummary {
    let target = objective.known_optimum.as_ref().map(|k| &k.location);
    let settled_distance = target.and_then(|t| run.nearest_placement_distance(t));
    let success = target.map(|_| settled_distance.is_some_and(|d| d <= success_radius));
    RunSummary {
        seed: run.seed,
        best_fitness: run.best_fitness,
        initial_best: run.initial_best().unwrap_or(run.best_fitness),
        improvement: run.improvement(),
        iterations: run.trace.last().map_or(0, |r| r.iteration),
        evaluations: run.evaluations,
        gradient_evaluations: run.gradient_evaluations,
        placements: run.placements.len(),
        active_colonies: run.colonies.iter().filter(|c| c.active).count(),
        colonies_formed: run.colonies.len(),
        settled_distance,
        best_distance: target.map(|t| run.best_position.distance(t)),
        success,
        termination: run.termination,
    }
}

fn summarise_method(method: Method, runs: Vec<RunSummary>) -> MethodReport {
    let col = |f: &dyn Fn(&RunSummary) -> f64| runs.iter().map(f).collect::<Vec<f64>>();
    let opt =
        |f: &dyn Fn(&RunSummary) -> Option<f64>| runs.iter().filter_map(f).collect::<Vec<f64>>();
    let fitness = Stats::of(&col(&|r| r.best_fitness)).expect("at least one seed");
    let successes = runs
        .iter()
        .map(|r| r.success)
        .collect::<Option<Vec<bool>>>();
    let successful = opt(&|r| r.success.filter(|&s| s).and(r.settled_distance));
    let success_stats = Stats::of(&successful);
    MethodReport {
        method,
        fitness,
        successes: successes.as_ref().map(|s| s.iter().filter(|&&x| x).count()),
        success_rate: successes
            .as_ref()
            .map(|s| s.iter().filter(|&&x| x).count() as f64 / s.len() as f64),
        mean_colonies: mean(&col(&|r| r.active_colonies as f64)).unwrap_or(0.0),
        mean_colonies_formed: mean(&col(&|r| r.colonies_formed as f64)).unwrap_or(0.0),
        mean_settled_distance: success_stats.as_ref().map(|s| s.mean),
        std_settled_distance: success_stats.as_ref().map(|s| s.std),
        mean_settled_distance_all: mean(&opt(&|r| r.settled_distance)),
        mean_best_distance: mean(&opt(&|r| r.best_distance)),
        mean_initial_best: mean(&col(&|r| r.initial_best)).unwrap_or(0.0),
        mean_improvement: mean(&opt(&|r| r.improvement)),
        mean_iterations: mean(&col(&|r| r.iterations as f64)).unwrap_or(0.0),
        mean_evaluations: mean(&col(&|r| r.evaluations as f64)).unwrap_or(0.0),
        runs,
    }
}

fn aggregate(
    config: CampaignConfig,
    objectives: &[Objective<f64>],
    runs: &[RunResult<f64>],
) -> CampaignReport {
    let n = config.n_seeds;
    let mut benchmarks = Vec::new();
    let mut chunks = runs.chunks(n);
    for o in objectives {
        let methods = config
            .methods
            .iter()
            .map(|&m| {
                let chunk = chunks.next().expect("one chunk per method");
                summarise_method(
                    m,
                    chunk
                        .iter()
                        .map(|r| summarise_run(r, o, config.success_radius))
                        .collect(),
                )
            })
            .collect();
        benchmarks.push(BenchmarkReport {
            objective: o.name().to_string(),
            known_optimum: o.known_optimum.as_ref().map(|k| k.location.to_f64()),
            methods,
        });
    }

    let names: Vec<&str> = config.methods.iter().map(|m| m.name()).collect();
    let means: Vec<Vec<f64>> = (0..config.methods.len())
        .map(|mi| {
            benchmarks
                .iter()
                .map(|b| b.methods[mi].fitness.mean)
                .collect()
        })
        .collect();
    let rankings = compute_rankings(&means, &names);
    let bench_names: Vec<String> = benchmarks.iter().map(|b| b.objective.clone()).collect();
    let noah_outside_top_two = match config.methods.iter().position(|&m| m == Method::Noah) {
        Some(ni) => bench_names
            .iter()
            .enumerate()
            .filter(|&(bi, _)| rankings.ranks[ni][bi] + 1 < config.methods.len())
            .map(|(_, b)| b.clone())
            .collect(),
        None => Vec::new(),
    };

    let mut flags = Vec::new();
    if n == 1 {
        flags.push("n_seeds = 1: standard deviations are reported as 0".to_string());
    }
    let ties: Vec<String> = rankings
        .tied_benchmarks
        .iter()
        .map(|&b| bench_names[b].clone())
        .collect();
    for b in &ties {
        flags.push(format!(
            "{b}: equal mean fitness, ranks broken by method name"
        ));
    }
    for b in &noah_outside_top_two {
        flags.push(format!("{b}: noah is not in the top two"));
    }

    CampaignReport {
        ranking: RankingTable {
            methods: config.methods.clone(),
            benchmarks: bench_names,
            means,
            ranks: rankings.ranks,
            average_rank: rankings.average,
            ties,
            noah_outside_top_two,
        },
        config,
        benchmarks,
        flags,
    }
}
