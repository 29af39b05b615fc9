//! Permutations, signed permutations and colored permutations, their
//! statistics, and exhaustive enumerators.

mod checks;
mod colored;
mod enumerate;
mod perm;
mod signed;

use thiserror::Error;

pub use checks::{
    fixed_set_vs_succession_set, p_triangle, pstar_triangle, q_triangle, roselle_checks, s_triangle,
    w_triangle, StatTriangle, TriangleKey,
};
pub use colored::{ColoredPerm, ColoredStat};
pub use enumerate::{
    colored_distribution, colored_perms, perm_distribution, perms, signed_distribution, signed_perms,
    tally_colored, tally_perms, tally_signed, Bounds, ColoredClass, PermClass, SignedClass,
};
pub use perm::{Perm, PermStat};
pub use signed::{CycleForm, SignedPerm, SignedStat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("{group} with n = {n} exceeds the enumeration bound n <= {limit}")]
    BoundExceeded { group: String, n: usize, limit: usize },
    #[error("{group} with n = {n} has {count} elements, above the cap of {cap}")]
    ElementCap { group: String, n: usize, count: u128, cap: u128 },
    #[error("unknown statistic '{0}'")]
    UnknownStatistic(String),
}
