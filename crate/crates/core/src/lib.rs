//! Exact computations on toric rings of stable set polytopes.

pub mod error;
pub mod graph;
pub mod groebner;
pub mod hilbert;
pub mod koszul;
pub mod linalg;
pub mod poly;
pub mod qgb;
pub mod report;
pub mod suite;
pub mod toric;

pub use error::{Error, Result};
