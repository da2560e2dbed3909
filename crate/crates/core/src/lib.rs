//! Exact Hopf-equivariant cyclic cohomology, equivariant K-theory and index
//! computations over structure-constant presentations.

pub mod actions;
pub mod cocyclic;
pub mod equivariant;
pub mod error;
pub mod fixtures;
pub mod homogeneous;
pub mod hopf;
pub mod index;
pub mod io;
pub mod ktheory;
pub mod linalg;
pub mod par;
pub mod report;

pub use error::{EngineError, Result};
