//! Random simplicial complexes: level-wise Bernoulli sampling, reduced
//! Betti numbers over prime fields, up-Laplacian spectra, breadth-first
//! neighborhoods and their Poisson-tree limits, collapses, and the
//! closed-form limiting constants they converge to.

pub mod betti;
pub mod codec;
pub mod collapse;
pub mod combin;
pub mod complex;
pub mod constants;
pub mod error;
pub mod harness;
pub mod poisson_tree;
pub mod sampler;
pub mod spectra;
pub mod traversal;

pub use complex::{RootedComplex, Simplex, SimplicialComplex};
pub use error::{Error, Result};
