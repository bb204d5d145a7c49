//! Global self-intersection detection between distinct faces.
//!
//! Faces are ear-clipped into triangles. Non-coplanar face pairs are tested
//! triangle by triangle: each triangle is cut by the other face's plane and
//! the two cut segments are overlapped along the planes' common line.
//! Coplanar pairs are tested for positive overlap area. Contacts confined to
//! a shared edge or a shared vertex are legitimate and ignored.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::geom::{self, Frame, P2, P3, V3};
use crate::poly::{FaceId, Polyhedron, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactKind {
    TransversalCrossing,
    CoplanarOverlap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntersectionWitness {
    pub faces: (FaceId, FaceId),
    pub point: [f64; 3],
    pub kind: ContactKind,
}

struct FaceData {
    frame: Frame,
    tris: Vec<[P3; 3]>,
    tris2: Vec<[P2; 3]>,
    lo: V3,
    hi: V3,
}

fn bounds(points: &[P3]) -> (V3, V3) {
    let mut lo = V3::repeat(f64::INFINITY);
    let mut hi = V3::repeat(f64::NEG_INFINITY);
    for p in points {
        lo = lo.inf(&p.coords);
        hi = hi.sup(&p.coords);
    }
    (lo, hi)
}

fn boxes_overlap(a: (&V3, &V3), b: (&V3, &V3), pad: f64) -> bool {
    (0..3).all(|k| a.0[k] <= b.1[k] + pad && b.0[k] <= a.1[k] + pad)
}

fn face_data(p: &Polyhedron, f: FaceId) -> FaceData {
    let pts = p.face_points(f);
    let frame = Frame::of_polygon(&pts);
    let flat: Vec<P2> = pts.iter().map(|q| frame.to_2d(q)).collect();
    let idx = geom::triangulate(&flat);
    let tris = idx
        .iter()
        .map(|t| [pts[t[0]], pts[t[1]], pts[t[2]]])
        .collect();
    let tris2 = idx
        .iter()
        .map(|t| [flat[t[0]], flat[t[1]], flat[t[2]]])
        .collect();
    let (lo, hi) = bounds(&pts);
    FaceData {
        frame,
        tris,
        tris2,
        lo,
        hi,
    }
}

/// Points where triangle `t` meets the plane (`o`, `n`), as parameters
/// along `dir` from `base`, with the extreme 3D points.
fn cut(t: &[P3; 3], o: &P3, n: &V3, tol: f64, base: &P3, dir: &V3) -> Option<(f64, f64, P3, P3)> {
    let d: Vec<f64> = t.iter().map(|p| (p - o).dot(n)).collect();
    if d.iter().all(|&x| x > tol) || d.iter().all(|&x| x < -tol) {
        return None;
    }
    let mut pts: Vec<P3> = Vec::with_capacity(4);
    for i in 0..3 {
        if d[i].abs() <= tol {
            pts.push(t[i]);
        }
        let j = (i + 1) % 3;
        if (d[i] > tol && d[j] < -tol) || (d[i] < -tol && d[j] > tol) {
            let s = d[i] / (d[i] - d[j]);
            pts.push(t[i] + (t[j] - t[i]) * s);
        }
    }
    let mut best: Option<(f64, f64, P3, P3)> = None;
    for q in pts {
        let s = (q - base).dot(dir);
        best = Some(match best {
            None => (s, s, q, q),
            Some((lo, hi, qlo, qhi)) => {
                let (lo, qlo) = if s < lo { (s, q) } else { (lo, qlo) };
                let (hi, qhi) = if s > hi { (s, q) } else { (hi, qhi) };
                (lo, hi, qlo, qhi)
            }
        });
    }
    best
}

fn lerp_on(lo: f64, hi: f64, qlo: &P3, qhi: &P3, s: f64) -> P3 {
    if hi - lo <= 0.0 {
        return *qlo;
    }
    qlo + (qhi - qlo) * ((s - lo) / (hi - lo))
}

/// Area of the intersection of two triangles (Sutherland–Hodgman).
fn triangle_overlap_area(a: &[P2; 3], b: &[P2; 3]) -> (f64, P2) {
    let mut poly: Vec<P2> = a.to_vec();
    let ccw = geom::orient2(&b[0], &b[1], &b[2]) > 0.0;
    for i in 0..3 {
        let (c, d) = if ccw {
            (b[i], b[(i + 1) % 3])
        } else {
            (b[(i + 1) % 3], b[i])
        };
        let inside = |p: &P2| geom::orient2(&c, &d, p) >= 0.0;
        let mut next = Vec::with_capacity(poly.len() + 2);
        for k in 0..poly.len() {
            let p = poly[k];
            let q = poly[(k + 1) % poly.len()];
            let (ip, iq) = (inside(&p), inside(&q));
            if ip {
                next.push(p);
            }
            if ip != iq {
                let dp = geom::orient2(&c, &d, &p);
                let dq = geom::orient2(&c, &d, &q);
                next.push(p + (q - p) * (dp / (dp - dq)));
            }
        }
        poly = next;
        if poly.len() < 3 {
            return (0.0, P2::origin());
        }
    }
    let area = geom::signed_area(&poly).abs();
    let mut c = nalgebra::Vector2::zeros();
    for p in &poly {
        c += p.coords;
    }
    (area, P2::from(c / poly.len() as f64))
}

/// Vertex pairs that are edges of both faces.
fn shared_edges(fa: &[VertexId], fb: &[VertexId]) -> Vec<[VertexId; 2]> {
    let edges = |f: &[VertexId]| -> BTreeSet<[VertexId; 2]> {
        (0..f.len())
            .map(|i| {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                if a < b {
                    [a, b]
                } else {
                    [b, a]
                }
            })
            .collect()
    };
    edges(fa).intersection(&edges(fb)).copied().collect()
}

/// All witnessed contacts between distinct faces, one per face pair, sorted.
pub fn self_intersections(p: &Polyhedron) -> Vec<IntersectionWitness> {
    let scale = p
        .vertices()
        .iter()
        .map(|v| v.coords.amax())
        .fold(1.0f64, f64::max);
    let tol = 1e-9 * scale;
    let data: Vec<FaceData> = (0..p.num_faces()).map(|f| face_data(p, f)).collect();
    let mut out = Vec::new();
    for i in 0..data.len() {
        for j in i + 1..data.len() {
            if !boxes_overlap((&data[i].lo, &data[i].hi), (&data[j].lo, &data[j].hi), tol) {
                continue;
            }
            if let Some(w) = face_pair(p, &data, i, j, tol) {
                out.push(w);
            }
        }
    }
    out.sort_by_key(|w| w.faces);
    out
}

fn face_pair(
    p: &Polyhedron,
    data: &[FaceData],
    i: FaceId,
    j: FaceId,
    tol: f64,
) -> Option<IntersectionWitness> {
    let (a, b) = (&data[i], &data[j]);
    let na = a.frame.normal;
    let nb = b.frame.normal;
    let fa = &p.faces()[i];
    let fb = &p.faces()[j];
    let dir = na.cross(&nb);
    if dir.norm() < 1e-12 {
        let coplanar = p
            .face_points(j)
            .iter()
            .all(|q| a.frame.height(q).abs() <= tol);
        if !coplanar {
            return None;
        }
        return coplanar_overlap(a, b, i, j);
    }
    let dir = dir.normalize();
    let shared: Vec<VertexId> = fa.iter().filter(|v| fb.contains(v)).copied().collect();
    let edges = shared_edges(fa, fb);
    let verts = p.vertices();
    let base = a.frame.origin;
    for ta in &a.tris {
        let (la, ha) = bounds(ta);
        for tb in &b.tris {
            let (lb, hb) = bounds(tb);
            if !boxes_overlap((&la, &ha), (&lb, &hb), tol) {
                continue;
            }
            let Some((lo1, hi1, q1lo, q1hi)) = cut(ta, &b.frame.origin, &nb, tol, &base, &dir)
            else {
                continue;
            };
            let Some((lo2, hi2, _, _)) = cut(tb, &a.frame.origin, &na, tol, &base, &dir) else {
                continue;
            };
            let lo = lo1.max(lo2);
            let hi = hi1.min(hi2);
            if lo > hi + tol {
                continue;
            }
            let e0 = lerp_on(lo1, hi1, &q1lo, &q1hi, lo.min(hi));
            let e1 = lerp_on(lo1, hi1, &q1lo, &q1hi, hi.max(lo));
            if !shared.is_empty() {
                let on_edge = edges.iter().any(|[u, v]| {
                    geom::dist_point_segment3(&e0, &verts[*u], &verts[*v]) <= tol
                        && geom::dist_point_segment3(&e1, &verts[*u], &verts[*v]) <= tol
                });
                if on_edge {
                    continue;
                }
                let at_vertex = shared
                    .iter()
                    .any(|&v| (e0 - verts[v]).norm() <= tol && (e1 - verts[v]).norm() <= tol);
                if at_vertex {
                    continue;
                }
            }
            let m = P3::from((e0.coords + e1.coords) * 0.5);
            return Some(IntersectionWitness {
                faces: (i, j),
                point: [m.x, m.y, m.z],
                kind: ContactKind::TransversalCrossing,
            });
        }
    }
    None
}

fn coplanar_overlap(
    a: &FaceData,
    b: &FaceData,
    i: FaceId,
    j: FaceId,
) -> Option<IntersectionWitness> {
    // express b's triangles in a's frame
    let to_a = |t: &[P3; 3]| -> [P2; 3] {
        [
            a.frame.to_2d(&t[0]),
            a.frame.to_2d(&t[1]),
            a.frame.to_2d(&t[2]),
        ]
    };
    let mut total = 0.0;
    let mut best = (0.0, P2::origin());
    for ta in &a.tris2 {
        for tb in &b.tris {
            let (area, c) = triangle_overlap_area(ta, &to_a(tb));
            total += area;
            if area > best.0 {
                best = (area, c);
            }
        }
    }
    if total > 1e-12 {
        let q = a.frame.to_3d(&best.1);
        return Some(IntersectionWitness {
            faces: (i, j),
            point: [q.x, q.y, q.z],
            kind: ContactKind::CoplanarOverlap,
        });
    }
    None
}

pub fn is_embedded(p: &Polyhedron) -> bool {
    self_intersections(p).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::build_polyhedron;
    use crate::tolerance::ToleranceSet;

    fn octahedron_thh() -> Polyhedron {
        // tetrahemihexahedron on the octahedron vertices
        let v = vec![
            P3::new(1.0, 0.0, 0.0),
            P3::new(-1.0, 0.0, 0.0),
            P3::new(0.0, 1.0, 0.0),
            P3::new(0.0, -1.0, 0.0),
            P3::new(0.0, 0.0, 1.0),
            P3::new(0.0, 0.0, -1.0),
        ];
        let f = vec![
            vec![0, 2, 4],
            vec![0, 3, 5],
            vec![1, 2, 5],
            vec![1, 3, 4],
            vec![0, 2, 1, 3],
            vec![0, 4, 1, 5],
            vec![2, 4, 3, 5],
        ];
        build_polyhedron(v, f, &ToleranceSet::default()).unwrap()
    }

    #[test]
    fn cube_is_embedded() {
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
        let p = build_polyhedron(v, f, &ToleranceSet::default()).unwrap();
        assert!(self_intersections(&p).is_empty());
    }

    #[test]
    fn hemi_squares_cross() {
        let p = octahedron_thh();
        let w = self_intersections(&p);
        let pairs: BTreeSet<_> = w.iter().map(|w| w.faces).collect();
        assert!(pairs.contains(&(4, 5)));
        assert!(pairs.contains(&(4, 6)));
        assert!(pairs.contains(&(5, 6)));
        assert!(w.iter().all(|w| w.kind == ContactKind::TransversalCrossing));
    }

    #[test]
    fn overlap_area() {
        let a = [P2::new(0.0, 0.0), P2::new(2.0, 0.0), P2::new(0.0, 2.0)];
        let b = [P2::new(0.0, 0.0), P2::new(1.0, 0.0), P2::new(0.0, 1.0)];
        assert!((triangle_overlap_area(&a, &b).0 - 0.5).abs() < 1e-15);
        let c = [P2::new(5.0, 5.0), P2::new(6.0, 5.0), P2::new(5.0, 6.0)];
        assert_eq!(triangle_overlap_area(&a, &c).0, 0.0);
    }
}
