//! Uniform hemi-polyhedra built from the vertex sets of their convex hulls.

use super::{finish, mesh, plane_face, GeneratorError};
use crate::geom::{P3, V3};
use crate::poly::Polyhedron;

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 2, 0],
    [2, 0, 1],
    [0, 2, 1],
    [2, 1, 0],
    [1, 0, 2],
];

/// All sign changes of the coordinate permutations of `p` (only the cyclic
/// ones when `even_only`), without duplicates.
fn signed_perms(p: [f64; 3], even_only: bool) -> Vec<P3> {
    let perms = if even_only { &PERMS[..3] } else { &PERMS[..] };
    let mut out: Vec<P3> = Vec::new();
    for pr in perms {
        for s in 0..8 {
            let sign = |i: usize| if s >> i & 1 == 1 { -1.0 } else { 1.0 };
            let q = P3::new(sign(0) * p[pr[0]], sign(1) * p[pr[1]], sign(2) * p[pr[2]]);
            if !out.iter().any(|o| (o - q).norm() < 1e-12) {
                out.push(q);
            }
        }
    }
    out
}

fn axis(i: usize, s: f64) -> V3 {
    let mut n = V3::zeros();
    n[i] = s;
    n
}

/// Squares on the cube planes (faces 0..6, z = ±1 at 4 and 5) and four
/// hexagons through the centre.
pub fn gen_cubohemioctahedron() -> Result<Polyhedron, GeneratorError> {
    let v = signed_perms([1.0, 1.0, 0.0], false);
    let mut f = Vec::new();
    for i in 0..3 {
        for s in [1.0, -1.0] {
            f.push(plane_face(&v, axis(i, s), 1.0));
        }
    }
    for n in [
        V3::new(1.0, 1.0, 1.0),
        V3::new(1.0, 1.0, -1.0),
        V3::new(1.0, -1.0, 1.0),
        V3::new(-1.0, 1.0, 1.0),
    ] {
        f.push(plane_face(&v, n, 0.0));
    }
    finish(mesh(v, f)?, "cho")
}

/// Octagons on the cube planes (z = ±1 at faces 4 and 5) and twelve squares.
pub fn gen_rhombihexahedron() -> Result<Polyhedron, GeneratorError> {
    let q = 1.0 + 2f64.sqrt();
    let v = signed_perms([1.0, 1.0, q], false);
    let mut f = Vec::new();
    for i in 0..3 {
        for s in [1.0, -1.0] {
            f.push(plane_face(&v, axis(i, s), 1.0));
        }
    }
    let offset = (2.0 + 2f64.sqrt()) / 2f64.sqrt();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        for sa in [1.0, -1.0] {
            for sb in [1.0, -1.0] {
                f.push(plane_face(&v, axis(a, sa) + axis(b, sb), offset));
            }
        }
    }
    finish(mesh(v, f)?, "rhh")
}

/// Six decagons through the centre and twelve pentagons, on the vertices of
/// the icosidodecahedron.
pub fn gen_small_dodecahemidodecahedron() -> Result<Polyhedron, GeneratorError> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = signed_perms([0.0, 0.0, phi], false);
    v.extend(signed_perms([0.5, phi / 2.0, phi * phi / 2.0], true));
    let mut f = Vec::new();
    for pr in &PERMS[..3] {
        for s in [1.0, -1.0] {
            let a = [0.0, phi, s];
            let n = V3::new(a[pr[0]], a[pr[1]], a[pr[2]]).normalize();
            let heights: Vec<f64> = v.iter().map(|p| p.coords.dot(&n)).collect();
            let top = heights.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let bottom = heights.iter().cloned().fold(f64::INFINITY, f64::min);
            f.push(plane_face(&v, n, 0.0));
            f.push(plane_face(&v, n, top));
            f.push(plane_face(&v, n, bottom));
        }
    }
    finish(mesh(v, f)?, "sdhd")
}
