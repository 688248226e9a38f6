//! Farey-tessellation filling of kernel loops and the resulting area
//! accounting, with pluggable Dehn-function models.
//!
//! A loop of length between `3·2^{k−1}` and `3·2^k` is padded with stays to
//! `3·2^k`, its disk is cut into thirds and subdivided by reflection, every
//! non-degenerate triangle is tiled by an actualization, and each boundary
//! step closes off a bigon of perimeter at most 7.

mod dehn;
mod farey;
mod fill;
mod kloop;

use kerphi_lattice::LatticeError;
use kerphi_triangle::TriangleError;
use thiserror::Error;

pub use dehn::{dominance_check, equivalence_check, superadditive_closure, DehnKind, DehnModel, Dominance};
pub use farey::{tessellate, Bigon, Census, FareyDiagram, FareyTriangle, VertexLabel, QUARTER};
pub use fill::{AreaReport, BigonArea, Branch, Filler, TriangleArea, BIGON_PERIMETER};
pub use kloop::{pad_loop, random_kernel_loop, KernelLoop};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FillerError {
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("loop: {0}")]
    Loop(String),
    #[error("dehn model: {0}")]
    Dehn(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("inconsistent diagram at {context}: {witness}")]
    Consistency { context: String, witness: String },
}

pub type Result<T> = std::result::Result<T, FillerError>;
