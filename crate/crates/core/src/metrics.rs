//! Lengths, corner angles, angular defects and dihedral angles.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{EdgeId, FaceId, Polyhedron, VertexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("vertex {vertex} is not on face {face}")]
    VertexNotOnFace { face: FaceId, vertex: VertexId },
    #[error("vertex {0} has fewer than three corners")]
    IsolatedVertex(VertexId),
    #[error("edge {a}-{b} is flat")]
    FlatEdge { a: VertexId, b: VertexId },
}

/// Per-vertex defects with constancy statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectProfile {
    pub per_vertex: Vec<f64>,
    pub mean: f64,
    pub max_abs_deviation: f64,
    pub is_constant: bool,
    pub tolerance: f64,
}

pub fn edge_length(p: &Polyhedron, e: EdgeId) -> f64 {
    let [a, b] = p.edges()[e].v;
    (p.vertices()[a] - p.vertices()[b]).norm()
}

/// Interior angle at slot `slot` of face `f`, in (0, 2π).
pub fn corner_angle_at(p: &Polyhedron, f: FaceId, slot: usize) -> f64 {
    let face = &p.faces()[f];
    let n = p.face_normal(f);
    let k = face.len();
    let v = p.vertices();
    let here = v[face[slot]];
    let a = v[face[(slot + k - 1) % k]] - here;
    let b = v[face[(slot + 1) % k]] - here;
    let ang = b.cross(&a).dot(&n).atan2(a.dot(&b));
    if ang < 0.0 {
        ang + TAU
    } else {
        ang
    }
}

pub fn corner_angle(p: &Polyhedron, f: FaceId, v: VertexId) -> Result<f64, MetricError> {
    let slot = p.faces()[f]
        .iter()
        .position(|&x| x == v)
        .ok_or(MetricError::VertexNotOnFace { face: f, vertex: v })?;
    Ok(corner_angle_at(p, f, slot))
}

/// Angle sums of all vertices, in one pass over the corners.
fn angle_sums(p: &Polyhedron) -> (Vec<f64>, Vec<usize>) {
    let mut sums = vec![0.0; p.num_vertices()];
    let mut counts = vec![0usize; p.num_vertices()];
    for (f, face) in p.faces().iter().enumerate() {
        for (slot, &v) in face.iter().enumerate() {
            sums[v] += corner_angle_at(p, f, slot);
            counts[v] += 1;
        }
    }
    (sums, counts)
}

pub fn angular_defect(p: &Polyhedron, v: VertexId) -> Result<f64, MetricError> {
    let mut sum = 0.0;
    let mut count = 0;
    for (f, face) in p.faces().iter().enumerate() {
        if let Some(slot) = face.iter().position(|&x| x == v) {
            sum += corner_angle_at(p, f, slot);
            count += 1;
        }
    }
    if count < 3 {
        return Err(MetricError::IsolatedVertex(v));
    }
    Ok(TAU - sum)
}

pub fn defects(p: &Polyhedron) -> Result<Vec<f64>, MetricError> {
    let (sums, counts) = angle_sums(p);
    sums.iter()
        .zip(&counts)
        .enumerate()
        .map(|(v, (s, &c))| {
            if c < 3 {
                Err(MetricError::IsolatedVertex(v))
            } else {
                Ok(TAU - s)
            }
        })
        .collect()
}

pub fn defect_profile(p: &Polyhedron, tolerance: f64) -> Result<DefectProfile, MetricError> {
    let per_vertex = defects(p)?;
    let mean = per_vertex.iter().sum::<f64>() / per_vertex.len() as f64;
    let max_abs_deviation = per_vertex
        .iter()
        .map(|d| (d - mean).abs())
        .fold(0.0, f64::max);
    Ok(DefectProfile {
        is_constant: max_abs_deviation < tolerance,
        per_vertex,
        mean,
        max_abs_deviation,
        tolerance,
    })
}

/// |Σδ − 2πχ|.
pub fn descartes_residual(p: &Polyhedron) -> f64 {
    let (sums, _) = angle_sums(p);
    let total: f64 = sums.iter().map(|s| TAU - s).sum();
    (total - TAU * p.euler_characteristic() as f64).abs()
}

/// Dihedral angle of edge `e`, measured on the side opposite the normal of
/// the first incident face. Orientable meshes oriented outward get interior
/// angles; otherwise the value is defined up to θ ↔ 2π − θ.
pub fn dihedral_angle(p: &Polyhedron, e: EdgeId, angle_tol: f64) -> Result<f64, MetricError> {
    let edge = &p.edges()[e];
    let (u1, n1) = p.inward(edge.sides[0]);
    let (u2, _) = p.inward(edge.sides[1]);
    let theta = u1.cross(&u2).norm().atan2(u1.dot(&u2));
    if (theta - PI).abs() < angle_tol {
        return Err(MetricError::FlatEdge {
            a: edge.v[0],
            b: edge.v[1],
        });
    }
    Ok(if n1.dot(&u2) <= 0.0 {
        theta
    } else {
        TAU - theta
    })
}

/// Edges whose dihedral angle is within tolerance of π.
pub fn flat_edges(p: &Polyhedron, angle_tol: f64) -> Vec<EdgeId> {
    (0..p.num_edges())
        .filter(|&e| dihedral_angle(p, e, angle_tol).is_err())
        .collect()
}

/// `x` as a multiple of π when the ratio is a fraction with denominator ≤ 120.
pub fn pi_fraction(x: f64) -> Option<(i64, i64)> {
    for q in 1..=120i64 {
        let r = x * q as f64 / PI;
        if (r - r.round()).abs() < 1e-6 {
            return Some((r.round() as i64, q));
        }
    }
    None
}

/// Render a radian value as "pπ/q" when it is a simple multiple of π.
pub fn format_pi(x: f64) -> String {
    match pi_fraction(x) {
        Some((0, _)) => "0·π".to_string(),
        Some((p, q)) => {
            let num = match p {
                1 => "π".to_string(),
                -1 => "-π".to_string(),
                _ => format!("{p}π"),
            };
            if q == 1 {
                num
            } else {
                format!("{num}/{q}")
            }
        }
        None => format!("{x:.12}"),
    }
}
