//! Ordered bipartite decompositions of small template graphs, and an
//! unbiased randomized estimator for the number of copies of a template in
//! a large graph.
//!
//! A decomposition of a template `H` is an ordered partition
//! `V_1, ..., V_l` of its vertices into independent sets such that, for
//! every vertex `v` in `V_i`, all neighbours of `v` outside
//! `V_1 ∪ ... ∪ V_i` lie in one later part. Stage `i` is the bipartite
//! graph between `V_i` and its earlier neighbours; the width is the largest
//! stage edge count.
//!
//! The estimator embeds `H` into a base graph `G` one part at a time,
//! choosing each stage embedding uniformly among those consistent with the
//! previous ones. The product of the per-stage counts, divided by the number
//! of automorphisms of `H`, is an unbiased estimate of the number of copies.
//!
//! ```
//! use obd::decomposers::decompose_cycle;
//! use obd::decomposition::{verify, width};
//! use obd::generators::cycle;
//!
//! let c4 = cycle(4)?;
//! let d = decompose_cycle(&c4)?;
//! assert_eq!(d.parts(), &[vec![0], vec![1, 3], vec![2]]);
//! assert!(verify(&c4, &d)?.valid);
//! assert_eq!(width(&c4, &d)?, 2);
//! # Ok::<(), obd::Error>(())
//! ```

pub mod decomposers;
pub mod decomposition;
pub mod error;
pub mod estimator;
pub mod generators;
pub mod graph;
pub mod grid_negative;
pub mod oracle;
pub mod search;

pub use decomposition::{verify, width, Decomposition, ValidityReport};
pub use error::{Error, ErrorKind, Result};
pub use graph::{read_graph, write_graph, Graph};
