//! Persistent homology of finite point sets and metric spaces, with the
//! power-weighted interval sums and dimension estimators built on top of it.

pub mod delaunay;
pub mod dimension;
pub mod error;
pub mod extremal;
pub mod filtration;
pub mod generators;
pub mod io;
pub mod meb;
pub mod metric;
pub mod mst;
pub mod persistence;
pub mod rng;

pub use error::{Error, Result};
