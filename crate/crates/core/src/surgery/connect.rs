use std::collections::{BTreeMap, BTreeSet};

use nalgebra::Matrix3;

use super::SurgeryError;
use crate::geom::{self, P3, V3};
use crate::poly::{FaceId, MeshError, Metadata, Polyhedron, Side, VertexId};
use crate::tolerance::ToleranceSet;

/// Which faces to glue and how their vertices correspond.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceCorrespondence {
    pub face1: FaceId,
    pub face2: FaceId,
    /// (vertex of `face1`, vertex of `face2`) pairs. `None` searches all
    /// cyclic shifts in both directions for a congruence.
    pub pairs: Option<Vec<(VertexId, VertexId)>>,
}

impl FaceCorrespondence {
    pub fn auto(face1: FaceId, face2: FaceId) -> Self {
        FaceCorrespondence {
            face1,
            face2,
            pairs: None,
        }
    }

    pub fn explicit(face1: FaceId, face2: FaceId, pairs: Vec<(VertexId, VertexId)>) -> Self {
        FaceCorrespondence {
            face1,
            face2,
            pairs: Some(pairs),
        }
    }
}

fn scale_of(p: &Polyhedron) -> f64 {
    p.vertices()
        .iter()
        .map(|v| v.coords.amax())
        .fold(1.0, f64::max)
}

/// For each position of `c1`, the matching vertex of P2.
fn resolve_map(
    p1: &Polyhedron,
    p2: &Polyhedron,
    c1: &[VertexId],
    c2: &[VertexId],
    corr: &FaceCorrespondence,
    tol: f64,
) -> Result<Vec<VertexId>, SurgeryError> {
    let n = c1.len();
    let congruence_residual = |m: &[VertexId]| -> f64 {
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                let d1 = (p1.vertices()[c1[i]] - p1.vertices()[c1[j]]).norm();
                let d2 = (p2.vertices()[m[i]] - p2.vertices()[m[j]]).norm();
                worst = worst.max((d1 - d2).abs());
            }
        }
        worst
    };
    match &corr.pairs {
        Some(pairs) => {
            let lookup: BTreeMap<VertexId, VertexId> = pairs.iter().copied().collect();
            let m: Vec<VertexId> = c1
                .iter()
                .map(|v| lookup.get(v).copied().ok_or(SurgeryError::BadBijection))
                .collect::<Result<_, _>>()?;
            let targets: BTreeSet<_> = m.iter().collect();
            if pairs.len() != n || targets.len() != n || !m.iter().all(|v| c2.contains(v)) {
                return Err(SurgeryError::BadBijection);
            }
            // consecutive in c1 must be consecutive in c2
            let pos = |v: VertexId| c2.iter().position(|&x| x == v).unwrap();
            for i in 0..n {
                let d = (pos(m[(i + 1) % n]) + n - pos(m[i])) % n;
                if d != 1 && d != n - 1 {
                    return Err(SurgeryError::BadBijection);
                }
            }
            let r = congruence_residual(&m);
            if r > tol {
                return Err(SurgeryError::NotIsometric(r));
            }
            Ok(m)
        }
        None => {
            let mut found = Vec::new();
            let mut best = f64::INFINITY;
            for shift in 0..n {
                for rev in [false, true] {
                    let m: Vec<VertexId> = (0..n)
                        .map(|i| {
                            if rev {
                                c2[(shift + n - i) % n]
                            } else {
                                c2[(shift + i) % n]
                            }
                        })
                        .collect();
                    let r = congruence_residual(&m);
                    best = best.min(r);
                    if r <= tol {
                        found.push(m);
                    }
                }
            }
            match found.len() {
                0 => Err(SurgeryError::NotIsometric(best)),
                1 => Ok(found.pop().unwrap()),
                k => Err(SurgeryError::Ambiguous(k)),
            }
        }
    }
}

/// Summed height, above the plane (`o`, `n`), of the faces hanging off the
/// edges of face `f` (their vertices not on `f`).
fn side_of(p: &Polyhedron, pts: &[P3], f: FaceId, o: &P3, n: &V3) -> f64 {
    let cycle = &p.faces()[f];
    let mut s = 0.0;
    for slot in 0..cycle.len() {
        let t = p.twin(Side::new(f, slot));
        for &v in &p.faces()[t.face] {
            if !cycle.contains(&v) {
                s += (pts[v] - o).dot(n);
            }
        }
    }
    s
}

/// Glue P2 onto P1 along the corresponding faces. P2 is moved by an
/// isometry (possibly orientation reversing) so it lands on the far side of
/// the glued face; both copies of the face are removed.
pub fn connect_sum(
    p1: &Polyhedron,
    p2: &Polyhedron,
    corr: &FaceCorrespondence,
    tol: &ToleranceSet,
) -> Result<Polyhedron, SurgeryError> {
    let (f1, f2) = (corr.face1, corr.face2);
    let c1 = p1
        .faces()
        .get(f1)
        .ok_or(SurgeryError::NoSuchFace(f1))?
        .clone();
    let c2 = p2
        .faces()
        .get(f2)
        .ok_or(SurgeryError::NoSuchFace(f2))?
        .clone();
    if c1.len() != c2.len() {
        return Err(SurgeryError::SizeMismatch(c1.len(), c2.len()));
    }
    let n = c1.len();
    let scale = scale_of(p1).max(scale_of(p2));
    let iso_tol = 1e-8 * scale;
    let m = resolve_map(p1, p2, &c1, &c2, corr, iso_tol)?;

    let dst: Vec<P3> = c1.iter().map(|&v| p1.vertices()[v]).collect();
    let src: Vec<P3> = m.iter().map(|&v| p2.vertices()[v]).collect();
    let (r, t) = geom::kabsch(&src, &dst);
    let residual = src
        .iter()
        .zip(&dst)
        .map(|(s, d)| (r * s.coords + t - d.coords).norm())
        .fold(0.0, f64::max);
    if residual > iso_tol {
        return Err(SurgeryError::NotIsometric(residual));
    }
    let o = geom::centroid(&dst);
    let normal = geom::newell(&dst).normalize();
    let (h, ht) = geom::plane_reflection(&o, &normal);
    let s1 = side_of(p1, p1.vertices(), f1, &o, &normal);
    let apply = |lin: &Matrix3<f64>, tr: &V3| -> Vec<P3> {
        p2.vertices()
            .iter()
            .map(|q| P3::from(lin * q.coords + tr))
            .collect()
    };
    let proper = apply(&r, &t);
    let improper = apply(&(h * r), &(h * t + ht));
    let mut placed = None;
    for cand in [proper, improper] {
        let s2 = side_of(p2, &cand, f2, &o, &normal);
        if s1 * s2 < 0.0 {
            placed = Some(cand);
            break;
        }
    }
    let placed = placed.ok_or(SurgeryError::Placement)?;

    // vertices: all of P1, then the unglued vertices of P2
    let glued: BTreeMap<VertexId, VertexId> = m.iter().zip(&c1).map(|(&b, &a)| (b, a)).collect();
    let mut vertices = p1.vertices().to_vec();
    let mut vmap2 = vec![usize::MAX; p2.num_vertices()];
    for (v, q) in placed.iter().enumerate() {
        vmap2[v] = match glued.get(&v) {
            Some(&a) => a,
            None => {
                vertices.push(*q);
                vertices.len() - 1
            }
        };
    }
    let mut fmap1 = vec![usize::MAX; p1.num_faces()];
    let mut fmap2 = vec![usize::MAX; p2.num_faces()];
    let mut faces = Vec::with_capacity(p1.num_faces() + p2.num_faces() - 2);
    for (fi, f) in p1.faces().iter().enumerate() {
        if fi != f1 {
            fmap1[fi] = faces.len();
            faces.push(f.clone());
        }
    }
    for (fi, f) in p2.faces().iter().enumerate() {
        if fi != f2 {
            fmap2[fi] = faces.len();
            faces.push(f.iter().map(|&v| vmap2[v]).collect());
        }
    }
    let mut links = Vec::new();
    for e in p1.edges() {
        if e.sides.iter().all(|s| s.face != f1) {
            links.push([
                Side::new(fmap1[e.sides[0].face], e.sides[0].slot),
                Side::new(fmap1[e.sides[1].face], e.sides[1].slot),
            ]);
        }
    }
    for e in p2.edges() {
        if e.sides.iter().all(|s| s.face != f2) {
            links.push([
                Side::new(fmap2[e.sides[0].face], e.sides[0].slot),
                Side::new(fmap2[e.sides[1].face], e.sides[1].slot),
            ]);
        }
    }
    let mut seam_keys = Vec::new();
    for slot in 0..n {
        let (a, b) = (c1[slot], c1[(slot + 1) % n]);
        let outer1 = p1.twin(Side::new(f1, slot));
        let slot2 = (0..n)
            .find(|&s| {
                let (x, y) = (vmap2[c2[s]], vmap2[c2[(s + 1) % n]]);
                (x == a && y == b) || (x == b && y == a)
            })
            .ok_or(SurgeryError::BadBijection)?;
        let outer2 = p2.twin(Side::new(f2, slot2));
        links.push([
            Side::new(fmap1[outer1.face], outer1.slot),
            Side::new(fmap2[outer2.face], outer2.slot),
        ]);
        seam_keys.push(if a < b { [a, b] } else { [b, a] });
    }
    let mut seams = p1.metadata.seams.clone();
    seams.extend(p2.metadata.seams.iter().map(|s| [vmap2[s[0]], vmap2[s[1]]]));
    let mut provenance = p1.metadata.provenance.clone();
    provenance.extend(p2.metadata.provenance.iter().cloned());
    provenance.push(format!("connect_sum({n}-gon)"));
    let metadata = Metadata {
        provenance,
        surgeries: p1.metadata.surgeries + p2.metadata.surgeries + 1,
        seams,
        ..Default::default()
    };
    let out = Polyhedron::from_parts(vertices, faces, Some(&links), metadata, tol).map_err(
        |e| match e {
            MeshError::FlatEdge { a, b } if seam_keys.contains(&[a, b]) => {
                SurgeryError::FlatSeam { a, b }
            }
            other => SurgeryError::Mesh(other),
        },
    )?;
    match out.oriented(tol) {
        Some(o) => Ok(o?),
        None => Ok(out),
    }
}
