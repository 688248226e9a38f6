//! The algebraic triangle `Δ` and its actualizations `Δ(a, b, c)`.
//!
//! A [`Triangle`] binds the fixed [`TriangleTemplate`] to one instance. It
//! builds 7-segment spanning paths between two kernel elements and full
//! actualizations: 36 vertex values, 60 edge-group words and 25 face loops,
//! each checked for closure, alphabet and length.

mod actual;
mod formula;
mod report;
mod template;

use kerphi_abelian::AbelianError;
use kerphi_factor::FactorError;
use kerphi_lattice::LatticeError;
use kerphi_product::ProductError;
use thiserror::Error;

pub use actual::{
    area_bound, spanning_bound_expression, Actualization, AreaBound, RegionLoop, Segment, SpanningPath, Triangle,
};
pub use formula::{Formula, FORMULAS};
pub use report::{ActualizationReport, RegionReport, SegmentReport, SpanningReport};
pub use template::{BoundExpr, BoundTerm, EdgeInfo, FaceInfo, Local, TriangleTemplate, VertexId, VertexSpec, LOCALS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("{0} is not in the kernel")]
    NotInKernel(String),
    #[error("verification failed at {context}: {witness}")]
    Verification { context: String, witness: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

pub type Result<T> = std::result::Result<T, TriangleError>;

pub(crate) fn fail<T>(context: impl Into<String>, witness: impl Into<String>) -> Result<T> {
    Err(TriangleError::Verification {
        context: context.into(),
        witness: witness.into(),
    })
}
