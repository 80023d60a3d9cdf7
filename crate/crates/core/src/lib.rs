//! t-core towers of integer partitions and exact verification of their
//! generating functions.
//!
//! The crate is organized bottom-up:
//!
//! - [`partition`]: partitions, hook lengths, enumeration, p(n)
//! - [`tower`]: the t-abacus, cores, quotients, towers and defects
//! - [`series`]: exact truncated q-series over big integers
//! - [`genfun`]: closed-form and brute-force generating functions and the checks comparing them
//! - [`asymptotics`]: high-precision evaluation of the asymptotic statements
//! - [`cli`]: the command-line driver behind the `coretower` binary

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod genfun;
pub mod partition;
pub mod series;
pub mod tower;

pub use error::{Error, PartitionError, Result, SeriesError, TowerError};
pub use genfun::{Mismatch, Status, VerificationReport};
pub use partition::{enumerate_partitions, partition_count, partition_counts, Partition};
pub use series::IntSeries;
pub use tower::{
    core_tower, defect, is_generalized_core, reconstruct, row_size, t_core, t_quotient, CoreTower,
    Modulus,
};
