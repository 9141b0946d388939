//! Cobweb posets and their KoDAG Hasse digraphs.
//!
//! A cobweb poset is a graded poset whose Hasse digraph is the natural join
//! of complete bipartite digraphs (di-bicliques) between consecutive levels.
//! This crate provides:
//!
//! * [`fseq`]: level-size sequences (naturals, Fibonacci, Gaussian, ...);
//! * [`boolmat`]: dense bit-packed Boolean matrices with the Boolean product,
//!   closure series and block assembly, plus checked integer path counting;
//! * [`digraph`]: graded digraphs, transitive closure and reduction, DOT output;
//! * [`njoin`]: the natural-join operator on adjacency matrices, digraphs and
//!   relations, and the encoding of n-ary relations as relation chains;
//! * [`cobweb`]: cobweb construction, Hasse and zeta matrices, the dimension-two
//!   realizer, path counting and the Fibonacci tree;
//! * [`ferrers`]: Ferrers (dimension one) recognition and staircase profiles.
//!
//! With the default `parallel` feature the row-wise matrix kernels run on the
//! rayon thread pool; without it the same code runs sequentially.

pub mod boolmat;
pub mod cobweb;
pub mod digraph;
mod error;
pub mod ferrers;
pub mod fseq;
pub mod njoin;
mod par;

pub use boolmat::{BoolMatrix, IntMatrix};
pub use cobweb::{CobwebPoset, Realizer, Vertex};
pub use digraph::{GradedDigraph, Poset};
pub use error::{Error, Result};
pub use ferrers::{ChainFerrersReport, Perm2x2, StaircaseProfile};
pub use fseq::FSequence;
pub use njoin::{AdjacencyMatrix, BinaryRelation, FiniteSet, NaryRelation, RelationChain};
