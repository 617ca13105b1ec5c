//! Sorting networks for small fixed-size sorts: representation, 0/1
//! verification, layer compression, straight-line code synthesis, and their
//! use as the base case of Quicksort, together with the average-case cost
//! model of that hybrid and a small timing harness.

pub mod analysis;
pub mod bench;
pub mod codegen;
pub mod error;
pub mod generators;
pub mod network;
pub mod sort;

pub use error::{Error, Result};
