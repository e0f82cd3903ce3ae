//! Maximal planar graphs, Kempe-chain algebra and wheel operators.

pub mod base_module;
pub mod ce_ops;
pub mod coloring;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod generator;
pub mod kempe;
pub mod transform;
pub mod ubcycle;
pub mod vset;

pub use coloring::{BichromaticCycle, Coloring, PartialColoring};
pub use embedding::{cycle_sides, validate_mpg, validate_smpg, Cycle, PlaneGraph, SmpgView};
pub use error::{Error, Result};
pub use vset::VertexSet;
