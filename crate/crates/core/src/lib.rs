//! Current-aware swarm optimisation with irreversible settlement.
//!
//! Free agents drift under inertia, noise, a finite-difference descent
//! direction, the ambient current, and the field emitted by settled
//! colonies. Each iteration every free agent may anchor for good; anchored
//! agents become colonies whose strength is reinforced by nearby success
//! and culled when it decays. The crate also ships four baseline placers
//! (PSO, CVT, virtual forces, greedy grid) and a seeded campaign harness.
//!
//! Numerics are generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.

pub mod base;
pub mod baselines;
pub mod colony;
pub mod engine;
pub mod error;
pub mod fields;
pub mod grid;
pub mod harness;
pub mod objectives;
pub mod result;

pub use base::{default_params, normalized_rank, rank_ascending, BoundaryMode, Real, RngStream};
pub use error::NoahError;
pub use result::{Method, Termination};

pub type Vector = base::Vector<f64>;
pub type Domain = base::Domain<f64>;
pub type Agent = base::Agent<f64>;
pub type Colony = base::Colony<f64>;
pub type NoahParams = base::NoahParams<f64>;
pub type ColonySet = colony::ColonySet<f64>;
pub type FlowField = fields::FlowField<f64>;
pub type Objective = objectives::Objective<f64>;
pub type SwarmState = engine::SwarmState<f64>;
pub type SettlementFeatures = engine::SettlementFeatures<f64>;
pub type RunResult = result::RunResult<f64>;
pub type TraceRow = result::TraceRow<f64>;
pub type BaselineConfig = baselines::BaselineConfig<f64>;

pub type Vector32 = base::Vector<f32>;
pub type Domain32 = base::Domain<f32>;
pub type NoahParams32 = base::NoahParams<f32>;
pub type Objective32 = objectives::Objective<f32>;
pub type FlowField32 = fields::FlowField<f32>;
pub type RunResult32 = result::RunResult<f32>;
