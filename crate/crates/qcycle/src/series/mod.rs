//! Truncated formal power series over exact rationals, and the cycle-index
//! machinery built on them: factorized generating functions per family,
//! finite-n probabilities, limiting probabilities with certified error,
//! Rogers-Ramanujan/Gordon identity checks, characteristic-polynomial counts,
//! irreducible-factor-count means, factorization-type distributions, and
//! average-order lower bounds.

mod avg_order;
mod charpoly;
mod cycle_index;
mod gordon;
mod limits;
mod trunc;
mod weyl;

pub use avg_order::{avg_order_lower_bound, AvgOrderFamily};
pub use charpoly::{charpoly_count, CharpolyFamily};
pub use cycle_index::{
    cycle_index_series, finite_n_probability, jordan_block_mean, marked_cycle_index_series,
    MarkedSeries, PartPredicate, SeriesFamily, WeightSpec,
};
pub use gordon::{gordon_check, gordon_corollary_check, GordonReport};
pub use limits::{limit_probability, rational_to_f64, Interval, LimitKind};
pub use trunc::TruncSeries;
pub use weyl::{factorization_type_distribution, symmetric_cycle_type_prob, weyl_limit_distance};
