use std::f64::consts::PI;

use super::hemi::{gen_cubohemioctahedron, gen_rhombihexahedron, gen_small_dodecahemidodecahedron};
use super::{find_face, finish, mesh, ring, GeneratorError};
use crate::geom::P3;
use crate::poly::{Polyhedron, VertexId};
use crate::surgery::{connect_sum, drill_repeat, DrillSpec, FaceCorrespondence};
use crate::tolerance::ToleranceSet;

fn r_block(r: f64, h: f64) -> Result<Polyhedron, GeneratorError> {
    let s3 = 3f64.sqrt();
    let v = vec![
        P3::new(1.0, 0.0, 0.0),
        P3::new(-0.5, s3 / 2.0, 0.0),
        P3::new(-0.5, -s3 / 2.0, 0.0),
        P3::new(-r, 0.0, h),
        P3::new(r / 2.0, -s3 * r / 2.0, h),
        P3::new(r / 2.0, s3 * r / 2.0, h),
    ];
    let f = vec![
        vec![0, 1, 2],
        vec![4, 5, 0],
        vec![3, 5, 1],
        vec![3, 4, 2],
        vec![0, 5, 3, 2],
        vec![1, 5, 4, 2],
        vec![0, 4, 3, 1],
    ];
    mesh(v, f)
}

/// Tetrahemihexahedron with a stretched top: bottom triangle of circumradius
/// 1 at z = 0, top triangle of circumradius `r` at height `h`. Face 0 is the
/// bottom triangle.
pub fn gen_r_block(r: f64, h: f64) -> Result<Polyhedron, GeneratorError> {
    if !(r > 0.0 && r < 1.0 && h > 0.0) {
        return Err(GeneratorError::BadParameters(format!(
            "r-block needs 0 < r < 1 and h > 0 (got r={r}, h={h})"
        )));
    }
    let p = finish(r_block(r, h)?, "r-block")?;
    // top and bottom defects differ; only glued copies have a constant one
    let mut meta = p.metadata.clone();
    meta.expected_defect = None;
    Ok(p.with_metadata(meta))
}

/// The uniform tetrahemihexahedron: the block with r = 1, h = √2.
pub fn gen_tetrahemihexahedron() -> Polyhedron {
    finish(r_block(1.0, 2f64.sqrt()).expect("thh"), "thh").expect("thh")
}

pub fn gen_q2_9() -> Result<Polyhedron, GeneratorError> {
    let r = r_block(0.5, 0.5 * (3.0 * (1.0 + 3f64.sqrt())).sqrt())?;
    let corr = FaceCorrespondence::explicit(0, 0, vec![(0, 0), (1, 1), (2, 2)]);
    finish(
        connect_sum(&r, &r, &corr, &ToleranceSet::default())?,
        "q2-9",
    )
}

/// Sphere with a hexagonal base, a triangular top and three triangles
/// v1,k v2,k v3,k for gluing. Vertex i of rotation k is `(i - 1) + 3k`.
pub fn gen_s_base() -> Result<Polyhedron, GeneratorError> {
    let s = (PI / 18.0).sin();
    let h2 = (-4.0 * s * s + 2.0 * s + 2.0).sqrt();
    let k = 1.5 - (2.25 - h2 * h2).sqrt();
    let s3 = 3f64.sqrt();
    let base = [
        P3::new(k, 0.0, h2),
        P3::new(1.5, -s3 / 2.0, 0.0),
        P3::new(1.5, s3 / 2.0, 0.0),
    ];
    let v = ring(&base, 3, 2.0 * PI / 3.0);
    let id = |i: usize, k: usize| (i - 1) + 3 * (k % 3);
    let mut hex = vec![id(2, 0), id(3, 0), id(2, 1), id(3, 1), id(2, 2), id(3, 2)];
    hex.reverse();
    let mut f = vec![hex, vec![id(1, 0), id(1, 1), id(1, 2)]];
    for k in 0..3 {
        f.push(vec![id(1, k), id(2, k), id(3, k)]);
        f.push(vec![id(1, k), id(3, k), id(2, k + 1), id(1, k + 1)]);
    }
    finish(mesh(v, f)?, "s-base")
}

const S_TOP: [VertexId; 3] = [0, 3, 6];
const S_HEX: [VertexId; 6] = [1, 2, 4, 5, 7, 8];

pub fn gen_q3_18() -> Result<Polyhedron, GeneratorError> {
    let tol = ToleranceSet::default();
    let s = (PI / 9.0).sin();
    let r = 2.0 * s / (1.0 + 2.0 * s);
    let h = (-4.0 * s * s - 2.0 * s + 2.0).sqrt() / (1.0 + 2.0 * s);
    let block = r_block(r, h)?;
    let mut p = gen_s_base()?;
    for k in 0..3 {
        let tri = [3 * k, 3 * k + 1, 3 * k + 2];
        let f = find_face(&p, &tri).expect("S gluing face");
        let corr = FaceCorrespondence::explicit(
            f,
            0,
            tri.iter().enumerate().map(|(i, &v)| (v, i)).collect(),
        );
        p = connect_sum(&p, &block, &corr, &tol)?;
    }
    finish(p, "q3-18")
}

/// Odd non-orientable genus g with 5g vertices: a g-fold antiprism-like
/// drum with an R(r, 1) block on each of its g triangles.
pub fn gen_n5g_odd(g: u32) -> Result<Polyhedron, GeneratorError> {
    if g % 2 == 0 || !(3..=11).contains(&g) {
        return Err(GeneratorError::GenusOutOfRange {
            family: "n5g".into(),
            genus: g,
        });
    }
    let n = g as usize;
    let gf = g as f64;
    let a = (2.0 * gf - 4.0) * PI / (5.0 * gf);
    let h2 = (-3.0 + 6.0 * a.cos() + 6.0 * (a / 2.0).cos() - 6.0 * (1.5 * a).cos()
        + 6.0 * (2.5 * a).cos())
    .sqrt()
        / (2.0 * (1.25 * a).cos());
    let s3 = 3f64.sqrt();
    let x = s3 / 2.0 * (1.25 * a).tan();
    let base = [
        P3::new(x - (2.25 - h2 * h2).sqrt(), 0.0, h2),
        P3::new(x, -s3 / 2.0, 0.0),
    ];
    let v = ring(&base, n, 2.0 * PI / gf);
    let id = |i: usize, k: usize| (i - 1) + 2 * (k % n);
    let mut bottom: Vec<VertexId> = (0..n).map(|k| id(2, k)).collect();
    bottom.reverse();
    let mut f = vec![(0..n).map(|k| id(1, k)).collect(), bottom];
    for k in 0..n {
        f.push(vec![id(1, k), id(2, k), id(2, k + 1)]);
        f.push(vec![id(1, k), id(2, k + 1), id(1, k + 1)]);
    }
    let c = (a / 2.0).cos();
    let r = 0.5 * (1.0 - ((11.0 + 14.0 * c) / (1.0 + 2.0 * c)).sqrt() * (a / 4.0).tan());
    let block = r_block(r, 1.0)?;
    let tol = ToleranceSet::default();
    let mut p = mesh(v, f)?;
    for k in 0..n {
        let tri = [id(1, k), id(2, k), id(2, k + 1)];
        let fi = find_face(&p, &tri).expect("drum triangle");
        let corr = FaceCorrespondence::explicit(
            fi,
            0,
            tri.iter().enumerate().map(|(i, &v)| (v, i)).collect(),
        );
        p = connect_sum(&p, &block, &corr, &tol)?;
    }
    finish(p, "n5g")
}

fn drill_between(
    p: &Polyhedron,
    a: &[VertexId],
    b: &[VertexId],
    spec: DrillSpec,
    k: usize,
) -> Result<Polyhedron, GeneratorError> {
    if k == 0 {
        return Ok(p.clone());
    }
    let fa = find_face(p, a).expect("drill face");
    let fb = find_face(p, b).expect("drill face");
    let spec = DrillSpec {
        face_a: fa,
        face_b: fb,
        ..spec
    };
    Ok(drill_repeat(p, &spec, k, &ToleranceSet::default())?)
}

/// Q³₁₈ with k 18-gonal tunnels: genus 3 + 2k.
fn q3_18_drilled(k: usize) -> Result<Polyhedron, GeneratorError> {
    drill_between(&gen_q3_18()?, &S_TOP, &S_HEX, DrillSpec::new(0, 0, 18), k)
}

fn face_vertices(p: &Polyhedron, f: usize) -> Vec<VertexId> {
    p.faces()[f].clone()
}

/// Hemi-polyhedron drilled through its z = ±1 faces (faces 4 and 5).
fn hemi_drilled(p: Polyhedron, n: usize, k: usize) -> Result<Polyhedron, GeneratorError> {
    let (a, b) = (face_vertices(&p, 4), face_vertices(&p, 5));
    drill_between(&p, &a, &b, DrillSpec::new(0, 0, n).pass_through(), k)
}

/// Non-orientable genus g. With `prefer_fewest` the construction with the
/// fewest known vertices is used; otherwise the chain built from Q¹₆, Q²₉,
/// Q³₁₈ and the cubohemioctahedron, the latter two drilled as needed.
pub fn gen_nonorientable(g: u32, prefer_fewest: bool) -> Result<Polyhedron, GeneratorError> {
    if g == 0 {
        return Err(GeneratorError::GenusOutOfRange {
            family: "nonorientable".into(),
            genus: g,
        });
    }
    let p = match (g, prefer_fewest) {
        (1, _) => gen_tetrahemihexahedron(),
        (2, _) => gen_q2_9()?,
        (3..=11, true) if g % 2 == 1 => gen_n5g_odd(g)?,
        (_, true) if g % 2 == 1 => {
            let base = gen_n5g_odd(7)?;
            let top: Vec<VertexId> = (0..7).map(|k| 2 * k).collect();
            let bottom: Vec<VertexId> = (0..7).map(|k| 2 * k + 1).collect();
            drill_between(
                &base,
                &top,
                &bottom,
                DrillSpec::new(0, 0, 7),
                ((g - 7) / 2) as usize,
            )?
        }
        (4, _) => gen_cubohemioctahedron()?,
        (6, _) => hemi_drilled(gen_cubohemioctahedron()?, 6, 1)?,
        (14, true) => gen_small_dodecahemidodecahedron()?,
        (_, true) if g >= 8 => hemi_drilled(gen_rhombihexahedron()?, 4, ((g - 8) / 2) as usize)?,
        (_, _) if g % 2 == 1 => q3_18_drilled(((g - 3) / 2) as usize)?,
        _ => hemi_drilled(gen_cubohemioctahedron()?, 6, ((g - 4) / 2) as usize)?,
    };
    finish(p, "nonorientable")
}
