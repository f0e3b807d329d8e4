//! Construction and certification of one-sided Ramanujan group-coverings of
//! finite graphs, together with the exact polynomial algebra the method needs.
//!
//! The pipeline: a base multigraph is labeled by elements of a group carrying a
//! unitary representation; the twisted adjacency matrix of a labeling has an
//! exact characteristic polynomial; the expected characteristic polynomial over
//! a product of rank-1 edge factors is real-rooted, which lets a greedy walk
//! fix one factor at a time without ever increasing the largest root. The final
//! labeling comes with exact root brackets against the d-matching polynomial
//! and the spectral radius of the universal covering tree.

pub mod config;
pub mod corpus;
pub mod cover;
pub mod cyclo;
pub mod graph;
pub mod linalg;
pub mod matching;
pub mod perm;
pub mod poly;
pub mod ratio;
pub mod repgroup;
pub mod search;

pub use config::Config;
pub use graph::{GraphReport, OrientedMultigraph};
pub use poly::{RatPoly, RootBracket};
pub use search::{LiftCertificate, RhoBracket};
