//! Finite linearly ordered structures, relations, and the
//! interval-preservation checker.

mod generators;
mod interval;
mod ip;
mod model;
mod pointset;
mod relation;

pub use generators::{
    enumerate_ip_relations, gen_monotone, gen_random_ip, gen_succ, gen_until, monotone_with,
    non_ip_relation, random_ip_with, random_points, random_structure, rng_from_seed, Monotonicity,
};
pub use interval::Interval;
pub use ip::{
    is_interval_preserving, is_interval_preserving_naive, Direction, IpVerdict, IpWitness,
};
pub use model::{Assignment, Structure, StructureError};
pub use pointset::{PointSet, Points, MAX_SIZE};
pub use relation::Relation;
