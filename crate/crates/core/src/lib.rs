//! Stabilizing index `s(G)` and cyclic index `c(G)` of connected `m`-uniform
//! hypergraphs, computed from Smith normal forms of incidence matrices over
//! `Z_m`, with closed-form predictors for coalescences and Cartesian
//! products and independent brute-force and numeric oracles.

pub mod error;
pub mod format;
pub mod hypergraph;
pub mod indices;
pub mod modring;
pub mod oracle;

pub use error::{Error, Result};
pub use hypergraph::{
    blocks, cartesian_product, cartesian_product_n, coalesce, generate, BlockDecomposition, GeneratorKind,
    GeneratorSpec, UniformHypergraph,
};
pub use indices::{
    check_coloring, cyclic_index, predict_blocks, predict_cartesian, predict_cartesian_n, predict_coalescence,
    stabilizing_index, ColoringWitness, IndexReport, Method,
};
pub use modring::{snf, Modulus, ModuleDecomposition, SmithDecomposition, ZmMatrix};
