//! Exact computation with codes in Hamming graphs H(m,q).
//!
//! The crate provides four layers:
//!
//! * [`perm`] — permutations on a finite point set, full group enumeration,
//!   subgroup lattices of symmetric groups, normalizers, transitivity tests;
//! * [`hamming`] — vertices of H(m,q), the Hamming metric, composition
//!   profiles, and the automorphism action of S_q^m ⋊ S_m with its diagonal
//!   subgroups;
//! * [`code`] — codes as vertex sets with their metric invariants (minimum
//!   distance, covering radius, distance partition), regularity and design
//!   tests, stabilizers, and orbit-based neighbour-transitivity certificates;
//! * [`families`] — the built-in code families (repetition, injection,
//!   middle-weight binary, frequency permutation arrays, permutation codes),
//!   the block-repetition blow-up, and the family classifier.
//!
//! [`suites`] bundles the batch verification suites used by the `hamnt` CLI
//! and the acceptance tests.
//!
//! Everything is exact and enumerative. Sizes are guarded by [`Caps`]; when a
//! computation would exceed a cap the operation fails loudly instead of
//! sampling.

pub mod code;
pub mod error;
pub mod families;
pub mod hamming;
pub mod perm;
pub mod suites;

pub use error::{Error, Result};

/// Capacity limits for the enumerative operations.
///
/// `max_vertices` bounds q^m wherever a full vertex sweep is required;
/// `max_group` bounds enumerated automorphism groups; `max_sym_points` bounds
/// the point count for sweeps over a full symmetric group (element
/// enumeration, subgroup lattices, normalizers).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_vertices: usize,
    pub max_group: usize,
    pub max_sym_points: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_vertices: 10_000_000,
            max_group: 1_000_000,
            max_sym_points: 8,
        }
    }
}

impl Caps {
    pub(crate) fn check_vertices(&self, m: usize, q: usize) -> Result<usize> {
        let count = (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if count > self.max_vertices as u128 {
            return Err(Error::Capacity {
                what: format!("q^m for H({m},{q})"),
                requested: count,
                cap_name: "HAMNT_MAX_VERTICES",
                limit: self.max_vertices as u128,
            });
        }
        Ok(count as usize)
    }

    pub(crate) fn check_group(&self, what: &str, order: u128) -> Result<usize> {
        if order > self.max_group as u128 {
            return Err(Error::Capacity {
                what: what.to_string(),
                requested: order,
                cap_name: "HAMNT_MAX_GROUP",
                limit: self.max_group as u128,
            });
        }
        Ok(order as usize)
    }

    pub(crate) fn check_sym_points(&self, n: usize) -> Result<()> {
        if n > self.max_sym_points {
            return Err(Error::Capacity {
                what: format!("symmetric group sweep on {n} points"),
                requested: n as u128,
                cap_name: "max_sym_points",
                limit: self.max_sym_points as u128,
            });
        }
        Ok(())
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
