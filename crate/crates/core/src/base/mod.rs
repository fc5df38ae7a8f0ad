//! Domain types shared by every other module: vectors, the search box,
//! agents and colonies, the parameter set, ranking, and the seeded stream.

mod agent;
mod bounds;
mod params;
mod rank;
mod real;
mod rng;
mod vector;

pub use agent::{Agent, Colony};
pub use bounds::{ball_volume, BoundaryMode, Domain};
pub use params::{default_params, NoahParams};
pub use rank::{normalized_rank, normalized_ranks, rank_ascending};
pub use real::Real;
pub use rng::RngStream;
pub use vector::Vector;
