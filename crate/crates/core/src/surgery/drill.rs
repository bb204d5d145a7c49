use std::collections::BTreeMap;
use std::f64::consts::TAU;

use super::retile::{retile_pierced_face, RingVertex};
use super::SurgeryError;
use crate::geom::{self, Frame, P2, P3};
use crate::poly::{FaceId, Polyhedron, Side, VertexId};
use crate::tolerance::ToleranceSet;

/// Where and how to drill a prism tunnel between two parallel faces.
#[derive(Debug, Clone, PartialEq)]
pub struct DrillSpec {
    pub face_a: FaceId,
    pub face_b: FaceId,
    /// Axis base point on `face_a`; the centroid (or the most open interior
    /// point) when absent.
    pub base: Option<P3>,
    pub n: usize,
    /// Prism radius; chosen automatically when absent.
    pub radius: Option<f64>,
    pub phase: f64,
    /// Skip the obstruction test, for immersed constructions whose tunnel
    /// is meant to cross other faces.
    pub allow_pass_through: bool,
}

impl DrillSpec {
    pub fn new(face_a: FaceId, face_b: FaceId, n: usize) -> Self {
        DrillSpec {
            face_a,
            face_b,
            base: None,
            n,
            radius: None,
            phase: 0.0,
            allow_pass_through: false,
        }
    }

    pub fn pass_through(mut self) -> Self {
        self.allow_pass_through = true;
        self
    }
}

/// The order n = −|V|/χ that keeps the defect constant.
pub fn choose_prism_order(p: &Polyhedron) -> Result<usize, SurgeryError> {
    let chi = p.euler_characteristic();
    if chi >= 0 {
        return Err(SurgeryError::NonNegativeChi(chi));
    }
    let v = p.num_vertices();
    if v as i64 % -chi != 0 {
        return Err(SurgeryError::NotInteger { v, chi });
    }
    Ok(v / (-chi) as usize)
}

pub fn drill(
    p: &Polyhedron,
    spec: &DrillSpec,
    tol: &ToleranceSet,
) -> Result<Polyhedron, SurgeryError> {
    drill_repeat(p, spec, 1, tol)
}

/// Keep the part of `poly` where `f >= 0`.
fn clip(poly: &[P3], f: impl Fn(&P3) -> f64) -> Vec<P3> {
    let mut out = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let (fa, fb) = (f(&a), f(&b));
        if fa >= 0.0 {
            out.push(a);
        }
        if (fa >= 0.0) != (fb >= 0.0) {
            let t = fa / (fa - fb);
            out.push(a + (b - a) * t);
        }
    }
    out
}

struct Site {
    frame: Frame,
    height: f64,
    outer_a: Vec<P2>,
    outer_b: Vec<P2>,
    obstacles: Vec<Vec<P2>>,
}

impl Site {
    fn clearance(&self, q: &P2) -> f64 {
        if !geom::point_in_polygon(q, &self.outer_a) || !geom::point_in_polygon(q, &self.outer_b) {
            return 0.0;
        }
        let mut r = geom::boundary_distance2(q, &self.outer_a)
            .min(geom::boundary_distance2(q, &self.outer_b));
        for o in &self.obstacles {
            r = r.min(geom::dist_point_polygon2(q, o));
        }
        r
    }
}

fn site(p: &Polyhedron, spec: &DrillSpec, tol: &ToleranceSet) -> Result<Site, SurgeryError> {
    let (fa, fb) = (spec.face_a, spec.face_b);
    for f in [fa, fb] {
        if f >= p.num_faces() {
            return Err(SurgeryError::NoSuchFace(f));
        }
    }
    let pa = p.face_points(fa);
    let pb = p.face_points(fb);
    let frame = Frame::of_polygon(&pa);
    let nb = p.face_normal(fb);
    let scale = p
        .vertices()
        .iter()
        .map(|v| v.coords.amax())
        .fold(1.0, f64::max);
    let height = frame.height(&geom::centroid(&pb));
    if fa == fb
        || frame.normal.cross(&nb).norm() > tol.angle
        || height.abs() <= tol.planarity * scale
    {
        return Err(SurgeryError::NotParallel(fa, fb));
    }
    let outer_a: Vec<P2> = pa.iter().map(|q| frame.to_2d(q)).collect();
    let outer_b: Vec<P2> = pb.iter().map(|q| frame.to_2d(q)).collect();
    let mut obstacles = Vec::new();
    if !spec.allow_pass_through {
        let eps = tol.planarity * scale;
        let (lo, hi) = if height > 0.0 {
            (eps, height - eps)
        } else {
            (height + eps, -eps)
        };
        for f in 0..p.num_faces() {
            if f == fa || f == fb {
                continue;
            }
            let pts = p.face_points(f);
            let c = clip(&pts, |q| frame.height(q) - lo);
            let c = clip(&c, |q| hi - frame.height(q));
            if !c.is_empty() {
                obstacles.push(c.iter().map(|q| frame.to_2d(q)).collect());
            }
        }
    }
    Ok(Site {
        frame,
        height,
        outer_a,
        outer_b,
        obstacles,
    })
}

/// Interior point of face a with the most room, on a coarse grid.
fn open_point(s: &Site) -> P2 {
    let origin = P2::origin();
    if s.clearance(&origin) > 0.0 {
        return origin;
    }
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for q in &s.outer_a {
        x0 = x0.min(q.x);
        x1 = x1.max(q.x);
        y0 = y0.min(q.y);
        y1 = y1.max(q.y);
    }
    let mut best = (0.0, origin);
    for i in 0..21 {
        for j in 0..21 {
            let q = P2::new(
                x0 + (x1 - x0) * i as f64 / 20.0,
                y0 + (y1 - y0) * j as f64 / 20.0,
            );
            let r = s.clearance(&q);
            if r > best.0 {
                best = (r, q);
            }
        }
    }
    best.1
}

/// Drill `k` parallel prisms of order `spec.n` between the two faces at
/// once. Axes are spread along the frame's first axis around the base point.
pub fn drill_repeat(
    p: &Polyhedron,
    spec: &DrillSpec,
    k: usize,
    tol: &ToleranceSet,
) -> Result<Polyhedron, SurgeryError> {
    let n = spec.n;
    if n < 3 {
        return Err(SurgeryError::BadOrder(n));
    }
    if k == 0 {
        return Err(SurgeryError::BadCount);
    }
    let s = site(p, spec, tol)?;
    let scale = p
        .vertices()
        .iter()
        .map(|v| v.coords.amax())
        .fold(1.0, f64::max);
    let base = match spec.base {
        Some(b) => {
            if s.frame.height(&b).abs() > tol.planarity * scale {
                return Err(SurgeryError::AxisObstructed);
            }
            s.frame.to_2d(&b)
        }
        None => open_point(&s),
    };
    let room = s.clearance(&base);
    if room <= tol.length * scale {
        return Err(SurgeryError::AxisObstructed);
    }
    let spacing = room / k as f64;
    let centers: Vec<P2> = (0..k)
        .map(|i| {
            P2::new(
                base.x + (i as f64 - (k as f64 - 1.0) / 2.0) * spacing,
                base.y,
            )
        })
        .collect();
    let min_room = centers
        .iter()
        .map(|c| s.clearance(c))
        .fold(f64::INFINITY, f64::min);
    let half_gap = if k > 1 { spacing / 2.0 } else { f64::INFINITY };
    let eps = match spec.radius {
        Some(r) => {
            if !(r > 0.0) || r >= min_room || r >= half_gap {
                return Err(SurgeryError::FootprintTooLarge);
            }
            r
        }
        None => 0.25 * min_room.min(half_gap),
    };
    if eps <= tol.length * scale {
        return Err(SurgeryError::FootprintTooLarge);
    }

    let rings: Vec<Vec<P2>> = centers
        .iter()
        .map(|c| {
            (0..n)
                .map(|j| {
                    let t = spec.phase + TAU * j as f64 / n as f64;
                    P2::new(c.x + eps * t.cos(), c.y + eps * t.sin())
                })
                .collect()
        })
        .collect();
    let pieces_a = retile_pierced_face(&s.outer_a, &rings)?;
    let pieces_b = retile_pierced_face(&s.outer_b, &rings)?;

    let nv = p.num_vertices();
    let mut vertices = p.vertices().to_vec();
    let shift = s.frame.normal * s.height;
    for ring in &rings {
        let top: Vec<P3> = ring.iter().map(|q| s.frame.to_3d(q)).collect();
        vertices.extend(top.iter().copied());
        vertices.extend(top.iter().map(|q| q + shift));
    }
    let top = |i: usize, j: usize| nv + i * 2 * n + j % n;
    let bot = |i: usize, j: usize| nv + i * 2 * n + n + j % n;

    let (fa, fb) = (spec.face_a, spec.face_b);
    let mut fmap = vec![usize::MAX; p.num_faces()];
    let mut faces: Vec<Vec<VertexId>> = Vec::new();
    for (f, cyc) in p.faces().iter().enumerate() {
        if f != fa && f != fb {
            fmap[f] = faces.len();
            faces.push(cyc.clone());
        }
    }
    let first_new = faces.len();
    // piece faces keep their ring references for the boundary links
    let mut piece_refs: Vec<(FaceId, Vec<RingVertex>)> = Vec::new();
    for (old, pieces, lift) in [
        (fa, &pieces_a, &top as &dyn Fn(usize, usize) -> usize),
        (fb, &pieces_b, &bot),
    ] {
        let cyc = &p.faces()[old];
        for piece in pieces {
            let ids = piece
                .iter()
                .map(|r| {
                    if r.ring == 0 {
                        cyc[r.index]
                    } else {
                        lift(r.ring - 1, r.index)
                    }
                })
                .collect();
            piece_refs.push((old, piece.clone()));
            faces.push(ids);
        }
    }
    for i in 0..k {
        for j in 0..n {
            faces.push(vec![top(i, j), top(i, j + 1), bot(i, j + 1), bot(i, j)]);
        }
    }

    let mut links: Vec<[Side; 2]> = Vec::new();
    let mut taken = vec![Vec::new(); faces.len()];
    for e in p.edges() {
        let [s0, s1] = e.sides;
        let on_old = |x: Side| x.face != fa && x.face != fb;
        match (on_old(s0), on_old(s1)) {
            (true, true) => links.push([
                Side::new(fmap[s0.face], s0.slot),
                Side::new(fmap[s1.face], s1.slot),
            ]),
            (false, false) => return Err(SurgeryError::NotParallel(fa, fb)),
            _ => {
                let (keep, cut) = if on_old(s0) { (s0, s1) } else { (s1, s0) };
                let m = p.faces()[cut.face].len();
                let want = [cut.slot, (cut.slot + 1) % m];
                let (pf, slot) = piece_refs
                    .iter()
                    .enumerate()
                    .filter(|(_, (old, _))| *old == cut.face)
                    .find_map(|(pi, (_, refs))| {
                        let l = refs.len();
                        (0..l).find_map(|t| {
                            let (x, y) = (refs[t], refs[(t + 1) % l]);
                            let hit = x.ring == 0
                                && y.ring == 0
                                && ((x.index == want[0] && y.index == want[1])
                                    || (x.index == want[1] && y.index == want[0]));
                            hit.then_some((first_new + pi, t))
                        })
                    })
                    .ok_or(SurgeryError::SelfCrossingPartition)?;
                taken[pf].push(slot);
                links.push([Side::new(fmap[keep.face], keep.slot), Side::new(pf, slot)]);
            }
        }
    }
    let mut open: BTreeMap<[VertexId; 2], Vec<Side>> = BTreeMap::new();
    for (f, cyc) in faces.iter().enumerate().skip(first_new) {
        let l = cyc.len();
        for t in 0..l {
            if taken[f].contains(&t) {
                continue;
            }
            let (a, b) = (cyc[t], cyc[(t + 1) % l]);
            open.entry(if a < b { [a, b] } else { [b, a] })
                .or_default()
                .push(Side::new(f, t));
        }
    }
    let mut seams = p.metadata.seams.clone();
    for (key, sides) in &open {
        if sides.len() != 2 {
            return Err(SurgeryError::SelfCrossingPartition);
        }
        links.push([sides[0], sides[1]]);
        // cuts inside a retiled face may be flat
        if sides.iter().all(|x| x.face < first_new + piece_refs.len()) {
            seams.push(*key);
        }
    }

    let mut metadata = p.metadata.clone();
    metadata.genus = None;
    metadata.orientable = None;
    metadata.seams = seams;
    metadata.surgeries += k as u32;
    metadata.provenance.push(format!("drill n={n} k={k}"));
    if let Some(d) = metadata.expected_defect {
        if (d + TAU / n as f64).abs() > 1e-9 {
            metadata.expected_defect = None;
        }
    }
    let out = Polyhedron::from_parts(vertices, faces, Some(&links), metadata, tol)?;
    match out.oriented(tol) {
        Some(o) => Ok(o?),
        None => Ok(out),
    }
}
