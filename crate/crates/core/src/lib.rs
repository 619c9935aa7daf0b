//! Substructure counting features, Weisfeiler-Leman refinement and a
//! random-weight substructure network for graph isomorphism experiments.

pub mod bench;
pub mod catalog;
pub mod encoder;
pub mod error;
pub mod features;
pub mod generators;
pub mod graph;
pub mod io;
pub mod iso;
pub mod rng;
pub mod sr;
pub mod verify;
pub mod wl;

pub use error::*;
pub use graph::{check_strongly_regular, Graph, SrParameters};
pub use iso::{
    are_isomorphic, compute_orbits, count_distinct_subgraphs, enumerate_matches, Match,
    MatchOptions, OrbitPartition,
};
