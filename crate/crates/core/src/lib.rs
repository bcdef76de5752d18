//! Omega-periodic graphs on the integers.
//!
//! A graph here is a finite union of periodic edge layers over `Z`, queried
//! implicitly: nothing is materialized beyond what a traversal touches. On
//! top of that sit the two dyadic families (intermediate and polynomial
//! growth), the prime-power family (exponential growth), and a brute-force
//! BFS oracle used to check every closed form against the actual graph.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod adjacency;
pub mod dyadic;
mod error;
pub mod fit;
pub mod graph;
pub mod metrics;
pub mod prime;

pub use adjacency::{Adjacency, Label};
pub use error::{Error, Result};
pub use graph::{
    degree, edges_in_window, incidence_degree, make_unit_layer, neighbors, EdgeTemplate,
    GraphSpec, LayerSpec, Vertex,
};
pub use metrics::{FolnerRow, GrowthCurve, DEFAULT_CAP};

pub use num_bigint::BigInt;
pub use num_rational::Ratio;
