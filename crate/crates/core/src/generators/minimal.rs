//! The 2g+4-vertex orientable family: chains of T(l, d) blocks glued along
//! their rectangular sides, with block parameters solved so every vertex has
//! the same defect.

use std::f64::consts::PI;

use super::{find_face, finish, mesh, GeneratorError};
use crate::geom::{P3, V3};
use crate::poly::{FaceId, Polyhedron, VertexId};
use crate::surgery::{connect_sum, FaceCorrespondence};
use crate::tolerance::ToleranceSet;

const R1: FaceId = 6;
const R2: FaceId = 7;

/// Genus-1 block with 6 vertices and 9 faces. v1..v3 sit at z = −½ and
/// v4..v6 at z = ½; the edges v1v2 and v1v3 have length `l` and |v2v3| = d.
/// Faces 6, 7, 8 are the rectangles v1v4v5v2, v1v4v6v3 and v6v5v2v3.
pub fn gen_t_block(l: f64, d: f64) -> Result<Polyhedron, GeneratorError> {
    if !(l > 0.0 && d > 0.0 && d < 2.0 * l) {
        return Err(GeneratorError::BadParameters(format!(
            "t-block needs l > 0 and 0 < d < 2l (got l={l}, d={d})"
        )));
    }
    let theta = 2.0 * (d / (2.0 * l)).asin();
    let u = V3::x();
    let w = V3::new(theta.cos(), theta.sin(), 0.0);
    let v1 = P3::new(0.0, 0.0, -0.5);
    let v4 = P3::new(0.0, 0.0, 0.5);
    let v = vec![v1, v1 + u * l, v1 + w * l, v4, v4 + u * l, v4 + w * l];
    let f = vec![
        vec![2, 3, 4],
        vec![1, 2, 3],
        vec![1, 3, 5],
        vec![0, 2, 4],
        vec![0, 4, 5],
        vec![0, 1, 5],
        vec![0, 3, 4, 1],
        vec![0, 3, 5, 2],
        vec![5, 4, 1, 2],
    ];
    let p = mesh(v, f)?;
    let p = p.oriented(&ToleranceSet::default()).expect("orientable")?;
    finish(p, "t-block")
}

/// a_{k,g} = 4(3k + 1 − 1/(−2)^k) π / (3(g + 2)).
pub fn a_coeff(k: u32, g: u32) -> f64 {
    let alt = 1.0 / (-2f64).powi(k as i32);
    4.0 * (3.0 * k as f64 + 1.0 - alt) / (3.0 * (g as f64 + 2.0)) * PI
}

/// Angle sum at v4 of T(l, d).
pub fn f_angle_sum(l: f64, d: f64) -> Result<f64, GeneratorError> {
    if !(l > 0.0) || !(0.0..=2.0 * l).contains(&d) {
        return Err(GeneratorError::DomainError);
    }
    let l2 = l * l;
    let a = ((2.0 * l2 - d * d) / (2.0 * l * (l2 + 1.0).sqrt())).clamp(-1.0, 1.0);
    let b = ((2.0 * (l2 + 1.0) - d * d) / (2.0 * (l2 + 1.0))).clamp(-1.0, 1.0);
    Ok(2.0 * a.acos() + b.acos())
}

/// Solved (l_k, d_k) for the chain blocks, and the centre block when g is odd.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockParams {
    pub blocks: Vec<(f64, f64)>,
    pub terminal: Option<(f64, f64)>,
}

/// Root of f_l(d) = target on [lo, hi], where f_l is increasing.
fn bisect(
    l: f64,
    target: f64,
    mut lo: f64,
    mut hi: f64,
    root_tol: f64,
    which: usize,
) -> Result<f64, GeneratorError> {
    let g = |d: f64| f_angle_sum(l, d).map(|v| v - target);
    if !(g(lo)? < 0.0 && g(hi)? > 0.0) {
        return Err(GeneratorError::BracketFailure(which));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = g(mid)?;
        if v.abs() <= root_tol * 1e-3 || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn solve_block_params(g: u32, l1: f64, root_tol: f64) -> Result<BlockParams, GeneratorError> {
    if g == 0 {
        return Err(GeneratorError::GenusOutOfRange {
            family: "minimal".into(),
            genus: g,
        });
    }
    if !(l1 > 0.0) {
        return Err(GeneratorError::BadParameters(format!(
            "l1 must be positive (got {l1})"
        )));
    }
    let m = g / 2;
    let terminal_target = |g: u32| 3.0 * PI - a_coeff((g - 1) / 2, g) - 6.0 * PI / (g as f64 + 2.0);
    let mut l = l1;
    for _ in 0..64 {
        let first_ok = m == 0 || f_angle_sum(l, 2.0 * l)? > 3.0 * PI - a_coeff(1, g);
        let last_ok = g % 2 == 0 || f_angle_sum(l, 0.0)? < terminal_target(g);
        if first_ok && last_ok {
            break;
        }
        l *= 2.0;
    }
    let mut blocks = Vec::with_capacity(m as usize);
    for k in 1..=m {
        let d = bisect(
            l,
            3.0 * PI - a_coeff(k, g),
            l,
            2.0 * l,
            root_tol,
            k as usize,
        )?;
        blocks.push((l, d));
        l = d;
    }
    let terminal = if g % 2 == 1 {
        Some((
            l,
            bisect(l, terminal_target(g), 0.0, 2.0 * l, root_tol, g as usize)?,
        ))
    } else {
        None
    };
    Ok(BlockParams { blocks, terminal })
}

/// v4 ↦ v1, v5 ↦ v2, v6 ↦ v3.
fn below(v: usize) -> usize {
    v - 3
}

struct Chain {
    p: Polyhedron,
    /// Global id of each local vertex of the last block.
    gid: [VertexId; 6],
    apex: usize,
    other: usize,
}

impl Chain {
    fn end_face(&self) -> FaceId {
        let g = &self.gid;
        find_face(&self.p, &[g[5], g[4], g[1], g[2]]).expect("end rectangle")
    }

    /// Pair the end rectangle's (other, apex, below other, below apex) with
    /// the given vertices of the first polyhedron.
    fn pairs(&self, onto: [VertexId; 4]) -> Vec<(VertexId, VertexId)> {
        let g = &self.gid;
        let (a, o) = (self.apex, self.other);
        let mine = [g[o], g[a], g[below(o)], g[below(a)]];
        onto.into_iter().zip(mine).collect()
    }
}

/// Blocks T_1 … T_m glued end to end; each new block takes the previous
/// block's end rectangle on whichever of its side rectangles keeps the apex
/// alternating between v5 and v6.
fn chain(blocks: &[(f64, f64)], tol: &ToleranceSet) -> Result<Chain, GeneratorError> {
    let (l, d) = blocks[0];
    let mut c = Chain {
        p: gen_t_block(l, d)?,
        gid: [0, 1, 2, 3, 4, 5],
        apex: 4,
        other: 5,
    };
    for &(l, d) in &blocks[1..] {
        let b = gen_t_block(l, d)?;
        let g = c.gid;
        let (face, map, apex, other): (FaceId, [(usize, VertexId); 4], usize, usize) =
            if c.apex == 4 {
                (R2, [(3, g[4]), (5, g[5]), (0, g[1]), (2, g[2])], 5, 4)
            } else {
                (R1, [(3, g[5]), (4, g[4]), (0, g[2]), (1, g[1])], 4, 5)
            };
        let n0 = c.p.num_vertices();
        let corr = FaceCorrespondence::explicit(
            c.end_face(),
            face,
            map.iter().map(|&(x, y)| (y, x)).collect(),
        );
        let p = connect_sum(&c.p, &b, &corr, tol)?;
        let mut gid = [0; 6];
        let mut next = n0;
        for (i, slot) in gid.iter_mut().enumerate() {
            *slot = match map.iter().find(|m| m.0 == i) {
                Some(m) => m.1,
                None => {
                    next += 1;
                    next - 1
                }
            };
        }
        c = Chain {
            p,
            gid,
            apex,
            other,
        };
    }
    Ok(c)
}

pub fn gen_minimal(g: u32) -> Result<Polyhedron, GeneratorError> {
    gen_minimal_with(g, 2.0)
}

/// Even g: the chain glued to a copy of itself through a point reflection
/// of the end rectangle. Odd g: two copies of the chain on two rectangles
/// of a centre block.
pub fn gen_minimal_with(g: u32, l1: f64) -> Result<Polyhedron, GeneratorError> {
    let tol = ToleranceSet::default();
    if g == 1 {
        let mut p = gen_t_block(l1, l1)?;
        p.metadata.provenance.push("t-block d=l".into());
        return finish(p, "minimal");
    }
    let params = solve_block_params(g, l1, 1e-12)?;
    let h = chain(&params.blocks, &tol)?;
    let end = h.end_face();
    let p = match params.terminal {
        None => {
            let (a, o) = (h.gid[h.apex], h.gid[h.other]);
            let (ba, bo) = (h.gid[below(h.apex)], h.gid[below(h.other)]);
            let corr =
                FaceCorrespondence::explicit(end, end, vec![(o, a), (a, o), (bo, ba), (ba, bo)]);
            connect_sum(&h.p, &h.p, &corr, &tol)?
        }
        Some((l, d)) => {
            let centre = gen_t_block(l, d)?;
            let corr = FaceCorrespondence::explicit(R1, end, h.pairs([3, 4, 0, 1]));
            let half = connect_sum(&centre, &h.p, &corr, &tol)?;
            let r2 = find_face(&half, &[0, 3, 5, 2]).expect("centre rectangle");
            let corr = FaceCorrespondence::explicit(r2, end, h.pairs([3, 5, 0, 2]));
            connect_sum(&half, &h.p, &corr, &tol)?
        }
    };
    finish(p, "minimal")
}
