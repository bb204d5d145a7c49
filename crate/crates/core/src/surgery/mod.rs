//! Topology-changing constructions: connected sum along congruent faces and
//! drilling prism tunnels between parallel faces.

mod connect;
mod drill;
mod retile;

pub use connect::{connect_sum, FaceCorrespondence};
pub use drill::{choose_prism_order, drill, drill_repeat, DrillSpec};
pub use retile::{retile_pierced_face, RingVertex};

use thiserror::Error;

use crate::poly::{FaceId, MeshError, VertexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurgeryError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("face {0} does not exist")]
    NoSuchFace(FaceId),
    #[error("glued faces differ in size ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("correspondence is not an isometry (residual {0:e})")]
    NotIsometric(f64),
    #[error("correspondence is not a cyclic bijection of the face cycles")]
    BadBijection,
    #[error("{0} isometric correspondences exist; pass an explicit bijection")]
    Ambiguous(usize),
    #[error("cannot decide which side of the glued face each part lies on")]
    Placement,
    #[error("seam edge {a}-{b} became flat")]
    FlatSeam { a: VertexId, b: VertexId },
    #[error("chi = {chi} does not divide |V| = {v}")]
    NotInteger { v: usize, chi: i64 },
    #[error("chi = {0} is not negative")]
    NonNegativeChi(i64),
    #[error("prism order {0} is below 3")]
    BadOrder(usize),
    #[error("drill count must be at least 1")]
    BadCount,
    #[error("faces {0} and {1} are not parallel and distinct")]
    NotParallel(FaceId, FaceId),
    #[error("drill axis meets other faces")]
    AxisObstructed,
    #[error("prism footprint does not fit")]
    FootprintTooLarge,
    #[error("hole is not strictly inside the face")]
    HoleNotInside,
    #[error("retiling produced crossing or overlapping pieces")]
    SelfCrossingPartition,
}

impl SurgeryError {
    /// Variant name, for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            SurgeryError::Mesh(_) => "InvalidMesh",
            SurgeryError::NoSuchFace(_) => "NoSuchFace",
            SurgeryError::SizeMismatch(..) => "SizeMismatch",
            SurgeryError::NotIsometric(_) => "NotIsometric",
            SurgeryError::BadBijection => "BadBijection",
            SurgeryError::Ambiguous(_) => "Ambiguous",
            SurgeryError::Placement => "Placement",
            SurgeryError::FlatSeam { .. } => "FlatSeam",
            SurgeryError::NotInteger { .. } => "NotInteger",
            SurgeryError::NonNegativeChi(_) => "NonNegativeChi",
            SurgeryError::BadOrder(_) => "BadOrder",
            SurgeryError::BadCount => "BadCount",
            SurgeryError::NotParallel(..) => "NotParallel",
            SurgeryError::AxisObstructed => "AxisObstructed",
            SurgeryError::FootprintTooLarge => "FootprintTooLarge",
            SurgeryError::HoleNotInside => "HoleNotInside",
            SurgeryError::SelfCrossingPartition => "SelfCrossingPartition",
        }
    }
}
