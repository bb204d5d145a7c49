use crate::geom::{self, Frame, P2};
use crate::poly::Polyhedron;

pub const STL_HEADER: &[u8] = b"ccp-forge";

fn face_triangles(p: &Polyhedron, f: usize) -> Vec<[usize; 3]> {
    let pts = p.face_points(f);
    let frame = Frame::of_polygon(&pts);
    let flat: Vec<P2> = pts.iter().map(|q| frame.to_2d(q)).collect();
    let face = &p.faces()[f];
    geom::triangulate(&flat)
        .into_iter()
        .map(|t| [face[t[0]], face[t[1]], face[t[2]]])
        .collect()
}

pub fn stl_triangle_count(p: &Polyhedron) -> usize {
    p.faces().iter().map(|f| f.len() - 2).sum()
}

/// Binary little-endian STL. Faces are ear-clipped in their own winding
/// and each normal follows its triangle's winding.
pub fn to_stl(p: &Polyhedron) -> Vec<u8> {
    let tris: Vec<[usize; 3]> = (0..p.num_faces())
        .flat_map(|f| face_triangles(p, f))
        .collect();
    let mut out = Vec::with_capacity(84 + 50 * tris.len());
    let mut header = [0u8; 80];
    header[..STL_HEADER.len()].copy_from_slice(STL_HEADER);
    out.extend_from_slice(&header);
    out.extend_from_slice(&(tris.len() as u32).to_le_bytes());
    let v = p.vertices();
    for t in tris {
        let n = (v[t[1]] - v[t[0]]).cross(&(v[t[2]] - v[t[0]])).normalize();
        for x in [n.x, n.y, n.z] {
            out.extend_from_slice(&(x as f32).to_le_bytes());
        }
        for i in t {
            for x in [v[i].x, v[i].y, v[i].z] {
                out.extend_from_slice(&(x as f32).to_le_bytes());
            }
        }
        out.extend_from_slice(&0u16.to_le_bytes());
    }
    out
}
