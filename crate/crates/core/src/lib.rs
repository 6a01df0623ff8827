//! Exact nilpotency probabilities of finite permutation groups.
//!
//! `ν(G)` is the probability that two uniformly random elements of `G`
//! generate a nilpotent subgroup. This crate computes it exactly, together
//! with the coset-relative variant `ν_{g1,g2}(G,N)` over a normal subgroup,
//! its maximum `ν̃(S)` over automorphism cosets of a simple group, and
//! Monte Carlo estimates for cross-checking.
//!
//! Permutations compose left to right throughout: `p.compose(&q)` applies
//! `p` first.

mod arith;
pub mod catalog;
pub mod error;
pub mod field;
pub mod fraction;
pub mod group;
pub mod nilpotency;
pub mod nu;
pub mod perm;
pub mod structure;
pub mod tables;

pub use catalog::{build, build_aut_pair, load_generator_file, AlmostSimplePair, GroupSpec};
pub use error::{Error, Result};
pub use fraction::ExactFraction;
pub use group::{ElementTable, FiniteGroup};
pub use perm::{CycleDecomposition, Permutation};
