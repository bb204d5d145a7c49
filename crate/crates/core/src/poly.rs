//! Polyhedral surface model: vertex coordinates, face cycles and 1-cells,
//! with structural validation and topological classification.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use nalgebra::Point3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{self, Frame, P3, V3};
use crate::tolerance::ToleranceSet;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// One side of a 1-cell: the edge leaving `faces[face][slot]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Side {
    pub face: FaceId,
    pub slot: usize,
}

impl Side {
    pub fn new(face: FaceId, slot: usize) -> Side {
        Side { face, slot }
    }
}

/// A 1-cell. `v` is the sorted endpoint pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub v: [VertexId; 2],
    pub sides: [Side; 2],
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientable: Option<bool>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        rename = "expected_defect_radians"
    )]
    pub expected_defect: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
    /// Number of surgery steps that produced the mesh.
    #[serde(default)]
    pub surgeries: u32,
    /// Vertex pairs whose edges may be flat (internal cuts of a retiled face).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub seams: Vec<[VertexId; 2]>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("need at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("face {face} references vertex {index}, but there are {count} vertices")]
    IndexOutOfRange {
        face: FaceId,
        index: usize,
        count: usize,
    },
    #[error("degenerate face {face}: {reason}")]
    DegenerateFace { face: FaceId, reason: String },
    #[error("edge {a}-{b} is used {uses} times")]
    NonManifoldEdge {
        a: VertexId,
        b: VertexId,
        uses: usize,
    },
    #[error("vertex {0} has a disconnected link")]
    NonManifoldVertex(VertexId),
    #[error("vertex {0} is not on any face")]
    IsolatedVertex(VertexId),
    #[error("edge {a}-{b} has dihedral angle pi")]
    FlatEdge { a: VertexId, b: VertexId },
    #[error("surface has {0} connected components")]
    DisconnectedSurface(usize),
    #[error("orientable surface with odd Euler characteristic {0}")]
    InconsistentTopology(i64),
    #[error("invalid edge links: {0}")]
    BadLinks(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyClass {
    pub orientable: bool,
    pub genus: u32,
    pub euler_characteristic: i64,
}

#[derive(Debug, Clone)]
pub struct Polyhedron {
    vertices: Vec<P3>,
    faces: Vec<Vec<VertexId>>,
    edges: Vec<Edge>,
    face_edges: Vec<Vec<EdgeId>>,
    pub metadata: Metadata,
}

pub fn build_polyhedron(
    vertices: Vec<Point3<f64>>,
    faces: Vec<Vec<VertexId>>,
    tol: &ToleranceSet,
) -> Result<Polyhedron, MeshError> {
    Polyhedron::from_parts(vertices, faces, None, Metadata::default(), tol)
}

fn key(a: VertexId, b: VertexId) -> [VertexId; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

impl Polyhedron {
    /// Validating constructor. With `links = None` sides are paired by
    /// endpoint pair and every pair must occur exactly twice. Explicit links
    /// allow several 1-cells with the same endpoints.
    pub fn from_parts(
        vertices: Vec<P3>,
        faces: Vec<Vec<VertexId>>,
        links: Option<&[[Side; 2]]>,
        metadata: Metadata,
        tol: &ToleranceSet,
    ) -> Result<Polyhedron, MeshError> {
        if vertices.len() < 4 {
            return Err(MeshError::TooFewVertices(vertices.len()));
        }
        for (fi, f) in faces.iter().enumerate() {
            if f.len() < 3 {
                return Err(MeshError::DegenerateFace {
                    face: fi,
                    reason: format!("only {} vertices", f.len()),
                });
            }
            for &v in f {
                if v >= vertices.len() {
                    return Err(MeshError::IndexOutOfRange {
                        face: fi,
                        index: v,
                        count: vertices.len(),
                    });
                }
            }
            let distinct: BTreeSet<_> = f.iter().collect();
            if distinct.len() != f.len() {
                return Err(MeshError::DegenerateFace {
                    face: fi,
                    reason: "repeated vertex".into(),
                });
            }
        }
        let edges = match links {
            None => pair_by_key(&faces)?,
            Some(l) => check_links(&faces, l)?,
        };
        let mut face_edges: Vec<Vec<EdgeId>> =
            faces.iter().map(|f| vec![usize::MAX; f.len()]).collect();
        for (ei, e) in edges.iter().enumerate() {
            for s in &e.sides {
                face_edges[s.face][s.slot] = ei;
            }
        }
        let p = Polyhedron {
            vertices,
            faces,
            edges,
            face_edges,
            metadata,
        };
        p.check_vertices()?;
        p.check_components()?;
        for fi in 0..p.faces.len() {
            p.check_face(fi, tol)?;
        }
        let seams: BTreeSet<[VertexId; 2]> =
            p.metadata.seams.iter().map(|s| key(s[0], s[1])).collect();
        for e in &p.edges {
            if seams.contains(&e.v) {
                continue;
            }
            if p.is_flat(e, tol.angle) {
                return Err(MeshError::FlatEdge {
                    a: e.v[0],
                    b: e.v[1],
                });
            }
        }
        Ok(p)
    }

    fn check_vertices(&self) -> Result<(), MeshError> {
        let mut corners: Vec<Vec<Side>> = vec![Vec::new(); self.vertices.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            for (s, &v) in f.iter().enumerate() {
                corners[v].push(Side::new(fi, s));
            }
        }
        for (v, cs) in corners.iter().enumerate() {
            if cs.is_empty() {
                return Err(MeshError::IsolatedVertex(v));
            }
            // corners around v are linked through the edges incident to v
            let mut seen = vec![false; cs.len()];
            let index: BTreeMap<FaceId, usize> =
                cs.iter().enumerate().map(|(i, c)| (c.face, i)).collect();
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            let mut count = 1;
            while let Some(i) = queue.pop_front() {
                let c = cs[i];
                let n = self.faces[c.face].len();
                for slot in [c.slot, (c.slot + n - 1) % n] {
                    let e = &self.edges[self.face_edges[c.face][slot]];
                    for s in &e.sides {
                        if let Some(&j) = index.get(&s.face) {
                            if !seen[j] {
                                seen[j] = true;
                                count += 1;
                                queue.push_back(j);
                            }
                        }
                    }
                }
            }
            if count != cs.len() {
                return Err(MeshError::NonManifoldVertex(v));
            }
        }
        Ok(())
    }

    fn check_components(&self) -> Result<(), MeshError> {
        let comps = self.face_components();
        if comps > 1 {
            return Err(MeshError::DisconnectedSurface(comps));
        }
        Ok(())
    }

    fn face_components(&self) -> usize {
        let mut comp = vec![usize::MAX; self.faces.len()];
        let mut count = 0;
        for start in 0..self.faces.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            while let Some(f) = stack.pop() {
                for &e in &self.face_edges[f] {
                    for s in &self.edges[e].sides {
                        if comp[s.face] == usize::MAX {
                            comp[s.face] = count;
                            stack.push(s.face);
                        }
                    }
                }
            }
            count += 1;
        }
        count
    }

    fn check_face(&self, fi: FaceId, tol: &ToleranceSet) -> Result<(), MeshError> {
        let pts = self.face_points(fi);
        let degenerate = |reason: String| MeshError::DegenerateFace { face: fi, reason };
        let mut diam = 0.0f64;
        for a in &pts {
            for b in &pts {
                diam = diam.max((a - b).norm());
            }
        }
        let scale = diam.max(1.0);
        for i in 0..pts.len() {
            if (pts[(i + 1) % pts.len()] - pts[i]).norm() <= tol.length * scale {
                return Err(degenerate("coincident vertices".into()));
            }
        }
        let n = geom::newell(&pts);
        if n.norm() * 0.5 <= tol.length * scale * scale {
            return Err(degenerate("zero area".into()));
        }
        let frame = Frame::of_polygon(&pts);
        let residual = pts
            .iter()
            .map(|p| frame.height(p).abs())
            .fold(0.0, f64::max);
        if residual > tol.planarity * scale {
            return Err(degenerate(format!("non-planar, residual {residual:e}")));
        }
        let flat: Vec<_> = pts.iter().map(|p| frame.to_2d(p)).collect();
        if !geom::is_simple_polygon(&flat, 1e-12 * scale) {
            return Err(degenerate("polygon is not simple".into()));
        }
        Ok(())
    }

    fn is_flat(&self, e: &Edge, angle_tol: f64) -> bool {
        let (u1, _) = self.inward(e.sides[0]);
        let (u2, _) = self.inward(e.sides[1]);
        let theta = u1.cross(&u2).norm().atan2(u1.dot(&u2));
        (theta - std::f64::consts::PI).abs() < angle_tol
    }

    /// Unit vector in the face plane, perpendicular to the side's edge and
    /// pointing into the face, together with the face's unit normal.
    pub(crate) fn inward(&self, s: Side) -> (V3, V3) {
        let f = &self.faces[s.face];
        let a = self.vertices[f[s.slot]];
        let b = self.vertices[f[(s.slot + 1) % f.len()]];
        let n = geom::newell(&self.face_points(s.face)).normalize();
        (n.cross(&(b - a)).normalize(), n)
    }

    pub fn vertices(&self) -> &[P3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn face_points(&self, f: FaceId) -> Vec<P3> {
        self.faces[f].iter().map(|&v| self.vertices[v]).collect()
    }

    /// Edge id of the side leaving `faces[f][slot]`.
    pub fn face_edge(&self, f: FaceId, slot: usize) -> EdgeId {
        self.face_edges[f][slot]
    }

    /// The side on the other face of the same 1-cell.
    pub fn twin(&self, s: Side) -> Side {
        let e = &self.edges[self.face_edges[s.face][s.slot]];
        if e.sides[0] == s {
            e.sides[1]
        } else {
            e.sides[0]
        }
    }

    /// Explicit side pairing, usable with [`Polyhedron::from_parts`].
    pub fn links(&self) -> Vec<[Side; 2]> {
        self.edges.iter().map(|e| e.sides).collect()
    }

    /// True when two distinct 1-cells share their endpoints.
    pub fn has_multi_edges(&self) -> bool {
        let keys: BTreeSet<_> = self.edges.iter().map(|e| e.v).collect();
        keys.len() != self.edges.len()
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let k = key(a, b);
        self.edges.iter().position(|e| e.v == k)
    }

    pub fn face_normal(&self, f: FaceId) -> V3 {
        geom::newell(&self.face_points(f)).normalize()
    }

    /// Largest distance of a face vertex from its face plane.
    pub fn max_planarity_residual(&self) -> f64 {
        (0..self.faces.len())
            .map(|f| {
                let pts = self.face_points(f);
                let frame = Frame::of_polygon(&pts);
                pts.iter()
                    .map(|p| frame.height(p).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Face signs (+1 keep, -1 flip) of a consistent orientation, if any.
    pub fn orientation_signs(&self) -> Option<Vec<i8>> {
        let mut sign = vec![0i8; self.faces.len()];
        sign[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            for slot in 0..self.faces[f].len() {
                let here = Side::new(f, slot);
                let there = self.twin(here);
                let a = self.faces[f][slot];
                let c = self.faces[there.face][there.slot];
                // same traversal direction across the edge needs opposite signs
                let want = if a == c { -sign[f] } else { sign[f] };
                if sign[there.face] == 0 {
                    sign[there.face] = want;
                    queue.push_back(there.face);
                } else if sign[there.face] != want {
                    return None;
                }
            }
        }
        Some(sign)
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation_signs().is_some()
    }

    pub fn classify(&self) -> Result<TopologyClass, MeshError> {
        let chi = self.euler_characteristic();
        let orientable = self.is_orientable();
        let genus = if orientable {
            if chi % 2 != 0 {
                return Err(MeshError::InconsistentTopology(chi));
            }
            (2 - chi) / 2
        } else {
            2 - chi
        };
        Ok(TopologyClass {
            orientable,
            genus: genus.max(0) as u32,
            euler_characteristic: chi,
        })
    }

    /// Reverse the listed faces, keeping 1-cells intact.
    pub fn with_faces_reversed(
        &self,
        flip: &[bool],
        tol: &ToleranceSet,
    ) -> Result<Polyhedron, MeshError> {
        let faces: Vec<Vec<VertexId>> = self
            .faces
            .iter()
            .zip(flip)
            .map(|(f, &r)| {
                if r {
                    let mut g = vec![f[0]];
                    g.extend(f[1..].iter().rev());
                    g
                } else {
                    f.clone()
                }
            })
            .collect();
        let remap = |s: Side| {
            if flip[s.face] {
                let n = self.faces[s.face].len();
                Side::new(s.face, (2 * n - 1 - s.slot) % n)
            } else {
                s
            }
        };
        let links: Vec<[Side; 2]> = self
            .edges
            .iter()
            .map(|e| [remap(e.sides[0]), remap(e.sides[1])])
            .collect();
        Polyhedron::from_parts(
            self.vertices.clone(),
            faces,
            Some(&links),
            self.metadata.clone(),
            tol,
        )
    }

    /// Consistently oriented copy (face 0 keeps its cycle), or `None`.
    pub fn oriented(&self, tol: &ToleranceSet) -> Option<Result<Polyhedron, MeshError>> {
        let signs = self.orientation_signs()?;
        let flip: Vec<bool> = signs.iter().map(|&s| s < 0).collect();
        Some(self.with_faces_reversed(&flip, tol))
    }

    /// Copy with new coordinates and the same combinatorics, revalidated.
    pub fn with_vertices(
        &self,
        vertices: Vec<P3>,
        tol: &ToleranceSet,
    ) -> Result<Polyhedron, MeshError> {
        Polyhedron::from_parts(
            vertices,
            self.faces.clone(),
            Some(&self.links()),
            self.metadata.clone(),
            tol,
        )
    }

    /// Apply a point map to every vertex.
    pub fn map_points(
        &self,
        f: impl Fn(&P3) -> P3,
        tol: &ToleranceSet,
    ) -> Result<Polyhedron, MeshError> {
        self.with_vertices(self.vertices.iter().map(f).collect(), tol)
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Polyhedron {
        self.metadata = metadata;
        self
    }
}

fn pair_by_key(faces: &[Vec<VertexId>]) -> Result<Vec<Edge>, MeshError> {
    let mut groups: BTreeMap<[VertexId; 2], Vec<Side>> = BTreeMap::new();
    let mut order = Vec::new();
    for (fi, f) in faces.iter().enumerate() {
        for s in 0..f.len() {
            let k = key(f[s], f[(s + 1) % f.len()]);
            let g = groups.entry(k).or_default();
            if g.is_empty() {
                order.push(k);
            }
            g.push(Side::new(fi, s));
        }
    }
    let mut edges = Vec::with_capacity(order.len());
    for k in order {
        let g = &groups[&k];
        if g.len() != 2 {
            return Err(MeshError::NonManifoldEdge {
                a: k[0],
                b: k[1],
                uses: g.len(),
            });
        }
        edges.push(Edge {
            v: k,
            sides: [g[0], g[1]],
        });
    }
    Ok(edges)
}

fn check_links(faces: &[Vec<VertexId>], links: &[[Side; 2]]) -> Result<Vec<Edge>, MeshError> {
    let total: usize = faces.iter().map(|f| f.len()).sum();
    let mut used: BTreeSet<Side> = BTreeSet::new();
    let mut edges = Vec::with_capacity(links.len());
    for l in links {
        let mut ends = [[0usize; 2]; 2];
        for (i, s) in l.iter().enumerate() {
            let f = faces
                .get(s.face)
                .ok_or_else(|| MeshError::BadLinks(format!("face {} out of range", s.face)))?;
            if s.slot >= f.len() {
                return Err(MeshError::BadLinks(format!(
                    "slot {} out of range in face {}",
                    s.slot, s.face
                )));
            }
            if !used.insert(*s) {
                return Err(MeshError::BadLinks(format!(
                    "side {}:{} linked twice",
                    s.face, s.slot
                )));
            }
            ends[i] = key(f[s.slot], f[(s.slot + 1) % f.len()]);
        }
        if ends[0] != ends[1] {
            return Err(MeshError::BadLinks(format!(
                "linked sides {:?} and {:?} have different ends",
                l[0], l[1]
            )));
        }
        let sides = if l[0] <= l[1] { *l } else { [l[1], l[0]] };
        edges.push(Edge { v: ends[0], sides });
    }
    if used.len() != total {
        return Err(MeshError::BadLinks(format!(
            "{} of {} sides unlinked",
            total - used.len(),
            total
        )));
    }
    edges.sort_by_key(|e| e.sides[0]);
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> (Vec<P3>, Vec<Vec<usize>>) {
        let v = vec![
            P3::new(1.0, 1.0, 1.0),
            P3::new(1.0, -1.0, -1.0),
            P3::new(-1.0, 1.0, -1.0),
            P3::new(-1.0, -1.0, 1.0),
        ];
        let f = vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]];
        (v, f)
    }

    fn cube() -> (Vec<P3>, Vec<Vec<usize>>) {
        let mut v = Vec::new();
        for i in 0..8 {
            v.push(P3::new(
                (i & 1) as f64,
                ((i >> 1) & 1) as f64,
                ((i >> 2) & 1) as f64,
            ));
        }
        let f = vec![
            vec![0, 2, 3, 1],
            vec![4, 5, 7, 6],
            vec![0, 1, 5, 4],
            vec![2, 6, 7, 3],
            vec![0, 4, 6, 2],
            vec![1, 3, 7, 5],
        ];
        (v, f)
    }

    #[test]
    fn tetrahedron_is_a_sphere() {
        let (v, f) = tetra();
        let p = build_polyhedron(v, f, &ToleranceSet::default()).unwrap();
        assert_eq!(p.num_edges(), 6);
        assert_eq!(p.euler_characteristic(), 2);
        let c = p.classify().unwrap();
        assert!(c.orientable);
        assert_eq!(c.genus, 0);
    }

    #[test]
    fn open_cube_is_rejected() {
        let (v, mut f) = cube();
        f.pop();
        let err = build_polyhedron(v, f, &ToleranceSet::default()).unwrap_err();
        assert!(matches!(err, MeshError::NonManifoldEdge { uses: 1, .. }));
    }

    #[test]
    fn bad_index() {
        let (v, mut f) = tetra();
        f[0][1] = 9;
        let err = build_polyhedron(v, f, &ToleranceSet::default()).unwrap_err();
        assert!(matches!(err, MeshError::IndexOutOfRange { index: 9, .. }));
    }

    #[test]
    fn repeated_vertex() {
        let (v, mut f) = cube();
        f[0] = vec![0, 2, 0, 1];
        let err = build_polyhedron(v, f, &ToleranceSet::default()).unwrap_err();
        assert!(matches!(err, MeshError::DegenerateFace { face: 0, .. }));
    }

    #[test]
    fn non_planar_face() {
        let (mut v, f) = cube();
        v[0].z = -0.01;
        let err = build_polyhedron(v, f, &ToleranceSet::default()).unwrap_err();
        assert!(matches!(err, MeshError::DegenerateFace { .. }));
    }

    #[test]
    fn split_cube_face_is_flat() {
        let (v, mut f) = cube();
        f[0] = vec![0, 2, 3];
        f.push(vec![0, 3, 1]);
        let err = build_polyhedron(v.clone(), f.clone(), &ToleranceSet::default()).unwrap_err();
        assert_eq!(err, MeshError::FlatEdge { a: 0, b: 3 });
        let meta = Metadata {
            seams: vec![[3, 0]],
            ..Default::default()
        };
        assert!(Polyhedron::from_parts(v, f, None, meta, &ToleranceSet::default()).is_ok());
    }

    #[test]
    fn two_tetrahedra_are_disconnected() {
        let (mut v, mut f) = tetra();
        let (v2, f2) = tetra();
        v.extend(v2.iter().map(|p| p + V3::new(5.0, 0.0, 0.0)));
        f.extend(f2.iter().map(|c| c.iter().map(|i| i + 4).collect()));
        let err = build_polyhedron(v, f, &ToleranceSet::default()).unwrap_err();
        assert_eq!(err, MeshError::DisconnectedSurface(2));
    }

    #[test]
    fn orientation_fix_and_reverse() {
        let (v, mut f) = cube();
        f[2].reverse();
        f[5].reverse();
        let tol = ToleranceSet::default();
        let p = build_polyhedron(v, f, &tol).unwrap();
        assert!(p.is_orientable());
        let o = p.oriented(&tol).unwrap().unwrap();
        assert_eq!(o.orientation_signs().unwrap(), vec![1; 6]);
        let all = vec![true; 6];
        assert!(o.with_faces_reversed(&all, &tol).unwrap().is_orientable());
    }

    #[test]
    fn explicit_links_round_trip() {
        let (v, f) = cube();
        let tol = ToleranceSet::default();
        let p = build_polyhedron(v.clone(), f.clone(), &tol).unwrap();
        let q = Polyhedron::from_parts(v, f, Some(&p.links()), Metadata::default(), &tol).unwrap();
        assert_eq!(q.num_edges(), 12);
        assert!(!q.has_multi_edges());
    }
}
