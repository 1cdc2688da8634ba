//! Exact combinatorics of finite posets: dimension via alternating-cycle
//! analysis, the unfolding decomposition of minimal/maximal points, and a
//! two-phase procedure that extracts clique subdivisions from cover graphs
//! of posets of large dimension, with full invariant instrumentation and
//! certificate verification.

pub mod bits;
pub mod dim;
pub mod dot;
pub mod extract;
pub mod gens;
pub mod io;
pub mod kk;
pub mod minor;
pub mod poset;
pub mod unfold;

pub use poset::{CoverDigraph, PointSet, Poset, PosetError};
