//! Unimodal decompositions of edge-linear functions on graphs.
//!
//! The crate decides unimodality (weak and strong), computes minimal
//! decompositions on trees, computes exact values on small general graphs by
//! enumerating rooted induced subtrees and solving exact rational LPs, and
//! builds the coloring and vertex-cover reduction instances together with a
//! harness that checks them against brute-force oracles.
//!
//! The checkers and the tree solver are generic over [`Scalar`]; everything
//! that produces certificates works in [`Rational`].

pub mod decomposition;
pub mod error;
pub mod exact;
pub mod families;
pub mod function;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod lp;
pub mod oracles;
pub mod scalar;
pub mod subtrees;
pub mod tree_solver;
pub mod unimodality;

pub use decomposition::{CertificateError, Component, Decomposition, Mode};
pub use error::{Error, Result};
pub use function::{subdivide, Subdivision, VertexFunction, VertexOrigin};
pub use graph::{Graph, VertexSubset};
pub use scalar::{format_rational, parse_rational, Rational, Scalar};

/// Exact vertex function, the type every certificate is expressed in.
pub type ExactFunction = VertexFunction<Rational>;
/// Floating-point vertex function for quick, non-certified experiments.
pub type FloatFunction = VertexFunction<f64>;
pub type ExactDecomposition = Decomposition<Rational>;
pub type ExactComponent = Component<Rational>;
