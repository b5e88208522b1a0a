//! Random K-out graph laboratory.
//!
//! Each of `n` nodes selects `K` distinct other nodes uniformly at random and
//! the union of the selections, with orientation dropped, forms the graph
//! `H(n; K)`. This crate samples such graphs reproducibly, measures their
//! connectivity exactly (by exhaustive enumeration for tiny `n`) and
//! empirically (seeded parallel Monte Carlo), and evaluates the closed-form
//! upper and lower bounds on the connectivity probability `P(n; K)`.

pub mod bounds;
pub mod connectivity;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod montecarlo;
pub mod numeric;
pub mod oracle;
pub mod params;
pub mod profile;
pub mod seed;
pub mod stats;
pub mod unionfind;

pub use bounds::{
    a_factor, asymptotic_upper_constant, b_factor, bound_report, c_factor, lower_bound,
    prob_isolated_set, q_factor, union_bound_disconnect, upper_bound_bonferroni, BoundReport,
    LowerBound, LowerBoundKind, PairMode, UpperBound,
};
pub use connectivity::{census, components, CensusResult, ComponentPartition};
pub use error::{Error, Result};
pub use graph::{build_graph, KOutGraph};
pub use montecarlo::{estimate, ConnectivityEstimate, TrialPlan};
pub use oracle::{exact_connectivity, exact_isolated_set_probability, ExactResult};
pub use params::KOutParams;
pub use profile::{sample_profile, ProfileSampler, SelectionProfile};
pub use seed::Seed;
