//! Perfect tilings of graphs and digraphs.
//!
//! The crate collects the pieces needed to experiment with degree-sequence
//! conditions for perfect `H`-packings:
//!
//! - [`graph`]: graphs, digraphs, dominant degrees and blow-ups;
//! - [`degseq`]: the degree-sequence conditions themselves, in exact
//!   rational arithmetic;
//! - [`packing`]: an exact perfect/maximum packing solver, greedy packing
//!   and a verifier;
//! - [`constructions`]: patterns, an extremal graph with no perfect
//!   `K_{t_1..t_r}`-packing, explicit packings of blown-up tournaments;
//! - [`exchange`]: greedy `T_r` construction and the exchange argument that
//!   grows a `T_r`-packing into a `{T_r, T_{r+1}}`-packing;
//! - [`absorbing`]: `H`-paths, absorbing families and the absorb-then-pack
//!   pipeline.
//!
//! ```
//! use tiling::{find_perfect_packing, is_perfect_packing, Graph, Pattern};
//!
//! let g = Graph::complete(6);
//! let p = find_perfect_packing(&g, &Pattern::clique(3)).unwrap();
//! assert!(is_perfect_packing(&g, &p).is_ok());
//! assert_eq!(p.parts().len(), 2);
//! ```

pub mod absorbing;
pub mod bitset;
pub mod chromatic;
pub mod constructions;
pub mod degseq;
pub mod embed;
pub mod error;
pub mod exchange;
pub mod experiment;
pub mod graph;
pub mod io;
pub mod packing;
pub mod pattern;
pub mod random;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::{
    blow_up, degree_sequence, dominant_degree_sequence, symmetrize, Adjacency, BlowUp, Digraph, DominantDegree,
    Graph, Orientation,
};
pub use io::AnyGraph;
pub use packing::{
    find_perfect_packing, is_perfect_packing, max_packing, verify_packing, Packing, PackingViolation,
};
pub use pattern::Pattern;
