use std::f64::consts::PI;

use super::{finish, mesh, ring, GeneratorError};
use crate::geom::P3;
use crate::poly::{Polyhedron, VertexId};
use crate::surgery::{drill_repeat, DrillSpec};
use crate::tolerance::ToleranceSet;

pub fn gen_tetrahedron() -> Polyhedron {
    let v = vec![
        P3::new(1.0, 1.0, 1.0),
        P3::new(1.0, -1.0, -1.0),
        P3::new(-1.0, 1.0, -1.0),
        P3::new(-1.0, -1.0, 1.0),
    ];
    let f = vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]];
    finish(mesh(v, f).expect("tetrahedron"), "tetrahedron").expect("tetrahedron")
}

/// Nine-vertex flat torus with three-fold symmetry about z.
pub fn gen_flat_torus9() -> Polyhedron {
    let base = [
        P3::new(1.0, 0.0, 0.0),
        P3::new((PI / 8.0).cos(), (PI / 8.0).sin(), 0.5),
        P3::new((PI / 4.0).cos(), (PI / 4.0).sin(), 1.0),
    ];
    let v = ring(&base, 3, 2.0 * PI / 3.0);
    let tris: [[VertexId; 3]; 18] = [
        [0, 2, 6],
        [0, 3, 5],
        [3, 6, 8],
        [1, 2, 8],
        [2, 4, 5],
        [5, 7, 8],
        [4, 6, 7],
        [1, 3, 4],
        [0, 1, 7],
        [2, 6, 8],
        [3, 5, 8],
        [0, 2, 5],
        [4, 5, 7],
        [1, 7, 8],
        [1, 2, 4],
        [0, 1, 3],
        [0, 6, 7],
        [3, 4, 6],
    ];
    let p = mesh(v, tris.iter().map(|t| t.to_vec()).collect()).expect("flat torus");
    let p = p
        .oriented(&ToleranceSet::default())
        .expect("orientable")
        .expect("valid");
    finish(p, "flat-torus-9").expect("flat torus")
}

pub const P2_24_DEFAULT: (f64, f64) = (0.25, 1.0 / 32.0);

/// Genus-2 cube modification with 24 vertices. Faces 0 and 1 are the
/// parallel octagons at z = ±1.
pub fn gen_p2_24(b: f64, c: f64) -> Result<Polyhedron, GeneratorError> {
    let s3 = 3f64.sqrt();
    if !(b > c && c > 0.0 && 1.0 > s3 * b && 1.0 > 4.0 * s3 * c) {
        return Err(GeneratorError::BadParameters(format!(
            "p2-24 needs b > c > 0, sqrt(3) b < 1, 4 sqrt(3) c < 1 (got b={b}, c={c})"
        )));
    }
    let base = [
        P3::new(1.0, 1.0, 1.0),
        P3::new(1.0 - s3 * b, 1.0 - b, 1.0),
        P3::new(1.0 - s3 * c, 1.0 - c, 1.0 - 4.0 * s3 * c),
    ];
    let mut v = Vec::with_capacity(24);
    for p in &base {
        for sx in [1.0, -1.0] {
            for sy in [1.0, -1.0] {
                for sz in [1.0, -1.0] {
                    v.push(P3::new(sx * p.x, sy * p.y, sz * p.z));
                }
            }
        }
    }
    let id = |j: usize, sx: i32, sy: i32, sz: i32| -> VertexId {
        (j - 1) * 8 + usize::from(sx < 0) * 4 + usize::from(sy < 0) * 2 + usize::from(sz < 0)
    };
    let mut f = Vec::new();
    for sz in [1, -1] {
        f.push(vec![
            id(1, 1, 1, sz),
            id(2, 1, 1, sz),
            id(2, -1, 1, sz),
            id(1, -1, 1, sz),
            id(1, -1, -1, sz),
            id(2, -1, -1, sz),
            id(2, 1, -1, sz),
            id(1, 1, -1, sz),
        ]);
    }
    for sx in [1, -1] {
        for sy in [1, -1] {
            f.push(vec![
                id(1, sx, sy, 1),
                id(2, sx, sy, 1),
                id(2, sx, sy, -1),
                id(1, sx, sy, -1),
                id(3, sx, sy, -1),
                id(3, sx, sy, 1),
            ]);
        }
    }
    for sy in [1, -1] {
        f.push(vec![
            id(2, 1, sy, 1),
            id(2, -1, sy, 1),
            id(2, -1, sy, -1),
            id(2, 1, sy, -1),
        ]);
        f.push(vec![
            id(3, 1, sy, 1),
            id(3, -1, sy, 1),
            id(3, -1, sy, -1),
            id(3, 1, sy, -1),
        ]);
        for sz in [1, -1] {
            f.push(vec![
                id(1, 1, sy, sz),
                id(3, 1, sy, sz),
                id(3, -1, sy, sz),
                id(1, -1, sy, sz),
            ]);
        }
        f.push(vec![
            id(1, 1, sy, 1),
            id(1, -1, sy, 1),
            id(1, -1, sy, -1),
            id(1, 1, sy, -1),
        ]);
    }
    for sx in [1, -1] {
        f.push(vec![
            id(1, sx, 1, 1),
            id(1, sx, -1, 1),
            id(1, sx, -1, -1),
            id(1, sx, 1, -1),
        ]);
    }
    let p = mesh(v, f)?;
    let p = p.oriented(&ToleranceSet::default()).expect("orientable")?;
    finish(p, "p2-24")
}

/// Embedded orientable chain: tetrahedron, flat torus, P²₂₄, then P²₂₄
/// drilled g−2 times with 12-gonal prisms.
pub fn gen_orientable(g: u32) -> Result<Polyhedron, GeneratorError> {
    let p = match g {
        0 => gen_tetrahedron(),
        1 => gen_flat_torus9(),
        _ => {
            let (b, c) = P2_24_DEFAULT;
            let base = gen_p2_24(b, c)?;
            if g == 2 {
                base
            } else {
                drill_repeat(
                    &base,
                    &DrillSpec::new(0, 1, 12),
                    (g - 2) as usize,
                    &ToleranceSet::default(),
                )?
            }
        }
    };
    finish(p, "orientable")
}

/// Fewest known vertices without self-intersection for each genus.
pub fn gen_orientable_fewest(g: u32) -> Result<Polyhedron, GeneratorError> {
    let p = match g {
        0 => gen_tetrahedron(),
        1 => gen_flat_torus9(),
        2 | 3 => gen_appendix_orientable(g, AppendixFamily::V8g)?,
        4..=6 => gen_appendix_orientable(g, AppendixFamily::V7gm7)?,
        _ => gen_appendix_orientable(g, AppendixFamily::V6g)?,
    };
    finish(p, "orientable")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AppendixFamily {
    V8g,
    V6g,
    V7gm7,
}

impl AppendixFamily {
    pub fn id(self) -> &'static str {
        match self {
            AppendixFamily::V8g => "v8g",
            AppendixFamily::V6g => "v6g",
            AppendixFamily::V7gm7 => "v7gm7",
        }
    }

    pub fn accepts(self, g: u32) -> bool {
        match self {
            AppendixFamily::V8g => g >= 2,
            AppendixFamily::V6g => g >= 5,
            AppendixFamily::V7gm7 => (4..=6).contains(&g),
        }
    }
}

/// Rotationally symmetric embedded families: 8g, 6g and 7g−7 vertices.
pub fn gen_appendix_orientable(
    g: u32,
    family: AppendixFamily,
) -> Result<Polyhedron, GeneratorError> {
    if !family.accepts(g) {
        return Err(GeneratorError::GenusOutOfRange {
            family: family.id().into(),
            genus: g,
        });
    }
    let gf = g as f64;
    let (v, f) = match family {
        AppendixFamily::V8g => v8g(g as usize, gf),
        AppendixFamily::V6g => v6g(g as usize, gf),
        AppendixFamily::V7gm7 => v7gm7(g as usize, gf),
    };
    let p = mesh(v, f)?;
    let p = p.oriented(&ToleranceSet::default()).expect("orientable")?;
    finish(p, family.id())
}

/// Window points shared by the 8g and 6g families.
fn window(c: f64, a: f64) -> [P3; 6] {
    let (t, s) = (a.tan(), a.sin());
    [
        P3::new(c, -1.0, 1.0),
        P3::new(c, -1.0, -1.0),
        P3::new(c - t, 0.0, 1.0),
        P3::new(c - t, 0.0, -1.0),
        P3::new(c - 0.5 * s * t, -1.0 + 0.5 * s, 0.0),
        P3::new(c - 0.5 * s * t, 1.0 - 0.5 * s, 0.0),
    ]
}

fn v8g(g: usize, gf: f64) -> (Vec<P3>, Vec<Vec<VertexId>>) {
    let c = 1.0 / (PI / (2.0 * gf)).tan();
    let delta = PI * (1.0 - gf) / (2.0 * gf);
    let w = window(c, -delta / 2.0);
    let base = [
        w[0],
        w[1],
        w[2],
        w[3],
        w[4],
        w[5],
        P3::new(c, 1.0, 1.0),
        P3::new(c, 1.0, -1.0),
    ];
    let v = ring(&base, g, 2.0 * PI / gf);
    let id = |i: usize, k: usize| (i - 1) + 8 * (k % g);
    let mut top: Vec<VertexId> = (0..g)
        .flat_map(|k| [id(1, k), id(3, k), id(7, k)])
        .collect();
    top.reverse();
    let mut f = vec![
        top,
        (0..g)
            .flat_map(|k| [id(2, k), id(4, k), id(8, k)])
            .collect(),
    ];
    for k in 0..g {
        f.push(vec![id(1, k), id(3, k), id(4, k), id(2, k), id(5, k)]);
        f.push(vec![id(7, k), id(3, k), id(4, k), id(8, k), id(6, k)]);
        f.push(vec![id(1, k), id(7, k), id(6, k), id(5, k)]);
        f.push(vec![id(2, k), id(8, k), id(6, k), id(5, k)]);
        f.push(vec![id(1, k), id(2, k), id(8, k), id(7, k)]);
        f.push(vec![id(7, k), id(8, k), id(2, k + 1), id(1, k + 1)]);
    }
    (v, f)
}

fn v6g(g: usize, gf: f64) -> (Vec<P3>, Vec<Vec<VertexId>>) {
    let c = 1.0 / (PI / gf).tan();
    let delta = 2.0 * PI * (1.0 - gf) / (3.0 * gf);
    let base = window(c, -delta / 2.0);
    let v = ring(&base, g, 2.0 * PI / gf);
    let id = |i: usize, k: usize| (i - 1) + 6 * (k % g);
    let mut f = vec![
        (0..g).flat_map(|k| [id(1, k), id(3, k)]).collect(),
        (0..g)
            .flat_map(|k| [id(2, k), id(4, k)])
            .collect::<Vec<_>>(),
    ];
    for k in 0..g {
        f.push(vec![id(1, k), id(3, k), id(4, k), id(2, k), id(5, k)]);
        f.push(vec![
            id(1, k + 1),
            id(3, k),
            id(4, k),
            id(2, k + 1),
            id(6, k),
        ]);
        f.push(vec![id(1, k), id(5, k), id(6, k), id(1, k + 1)]);
        f.push(vec![id(2, k), id(5, k), id(6, k), id(2, k + 1)]);
        f.push(vec![id(1, k), id(2, k), id(2, k + 1), id(1, k + 1)]);
    }
    (v, f)
}

/// g−1 rotated copies of a seven-point window.
fn v7gm7(g: usize, gf: f64) -> (Vec<P3>, Vec<Vec<VertexId>>) {
    let n = g - 1;
    let a = PI / (gf - 1.0);
    let t = (a + PI / 14.0).tan();
    let x0 =
        2f64.sqrt() * (PI / 7.0).sin() / (3.0 * ((2.0 * PI / 7.0).cos() - (2.0 * a).cos()).sqrt());
    let y0 = 1.0
        - (3.0 * PI / 14.0).cos() * (a + PI / 14.0).sin()
            / (3.0 * ((a + PI / 14.0).sin() + (3.0 * PI / 14.0).sin()));
    let c = 1.0 / a.tan();
    let third = 1.0 / 3.0;
    let base = [
        P3::new(c, -1.0, third),
        P3::new(c, -1.0, -third),
        P3::new(c - 1.0 / t, 0.0, third),
        P3::new(c - 1.0 / t, 0.0, -third),
        P3::new(c - (1.0 - y0) / t, -y0, 0.0),
        P3::new(c - (1.0 - y0) / t, y0, 0.0),
        P3::new(c - 1.0 / t - x0, 0.0, 0.0),
    ];
    let v = ring(&base, n, 2.0 * PI / n as f64);
    let id = |i: usize, k: usize| (i - 1) + 7 * (k % n);
    let mut f = Vec::new();
    for k in 0..n {
        let km = k + n - 1;
        f.push(vec![id(1, k), id(2, k), id(2, k + 1), id(1, k + 1)]);
        f.push(vec![id(1, k), id(3, k), id(3, km)]);
        f.push(vec![id(2, k), id(4, k), id(4, km)]);
        f.push(vec![id(1, k), id(5, k), id(6, k), id(1, k + 1)]);
        f.push(vec![id(2, k), id(5, k), id(6, k), id(2, k + 1)]);
        f.push(vec![id(1, k), id(3, k), id(4, k), id(2, k), id(5, k)]);
        f.push(vec![
            id(1, k + 1),
            id(3, k),
            id(4, k),
            id(2, k + 1),
            id(6, k),
        ]);
        f.push(vec![id(3, k), id(7, k), id(7, k + 1), id(3, k + 1)]);
        f.push(vec![id(4, k), id(7, k), id(7, k + 1), id(4, k + 1)]);
    }
    (v, f)
}
