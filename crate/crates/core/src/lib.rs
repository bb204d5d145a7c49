//! Constant-curvature polyhedra: mesh model, metrics, surgery, generators,
//! verification and file formats.

// negated float comparisons double as NaN checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod generators;
pub mod geom;
pub mod intersect;
pub mod io;
pub mod metrics;
pub mod poly;
pub mod surgery;
pub mod tolerance;
pub mod verify;

pub use geom::{P3, V3};
pub use intersect::{self_intersections, ContactKind, IntersectionWitness};
pub use metrics::{
    angular_defect, corner_angle, defect_profile, descartes_residual, dihedral_angle, edge_length,
    DefectProfile, MetricError,
};
pub use poly::{build_polyhedron, MeshError, Metadata, Polyhedron, Side, TopologyClass};
pub use tolerance::ToleranceSet;
