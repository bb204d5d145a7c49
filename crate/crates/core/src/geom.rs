//! Low-level geometry: plane frames, 2D polygon predicates, ear clipping,
//! hole bridging and rigid fits.

use nalgebra::{Matrix3, Point2, Point3, Vector2, Vector3};

pub type P3 = Point3<f64>;
pub type V3 = Vector3<f64>;
pub type P2 = Point2<f64>;

/// Newell normal of a closed polygon (length = twice the vector area).
pub fn newell(points: &[P3]) -> V3 {
    let mut n = V3::zeros();
    for i in 0..points.len() {
        let a = points[i];
        let b = points[(i + 1) % points.len()];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    n
}

pub fn centroid(points: &[P3]) -> P3 {
    let mut c = V3::zeros();
    for p in points {
        c += p.coords;
    }
    P3::from(c / points.len() as f64)
}

/// Orthonormal frame of a plane; `to_2d` maps into (u, w) coordinates.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub origin: P3,
    pub u: V3,
    pub w: V3,
    pub normal: V3,
}

impl Frame {
    /// Frame with the given unit normal. `u` is the projection of +x (or +y if
    /// the normal is nearly parallel to x), so frames are deterministic.
    pub fn new(origin: P3, normal: V3) -> Frame {
        let n = normal.normalize();
        let mut seed = V3::x();
        if n.x.abs() > 0.9 {
            seed = V3::y();
        }
        let u = (seed - n * n.dot(&seed)).normalize();
        let w = n.cross(&u);
        Frame {
            origin,
            u,
            w,
            normal: n,
        }
    }

    pub fn of_polygon(points: &[P3]) -> Frame {
        Frame::new(centroid(points), newell(points))
    }

    pub fn to_2d(&self, p: &P3) -> P2 {
        let d = p - self.origin;
        P2::new(d.dot(&self.u), d.dot(&self.w))
    }

    pub fn to_3d(&self, q: &P2) -> P3 {
        self.origin + self.u * q.x + self.w * q.y
    }

    pub fn height(&self, p: &P3) -> f64 {
        (p - self.origin).dot(&self.normal)
    }
}

pub fn cross2(a: &Vector2<f64>, b: &Vector2<f64>) -> f64 {
    a.x * b.y - a.y * b.x
}

pub fn orient2(a: &P2, b: &P2, c: &P2) -> f64 {
    cross2(&(b - a), &(c - a))
}

pub fn signed_area(poly: &[P2]) -> f64 {
    let mut s = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        s += a.x * b.y - b.x * a.y;
    }
    0.5 * s
}

/// Even-odd point in polygon; boundary points count as outside.
pub fn point_in_polygon(p: &P2, poly: &[P2]) -> bool {
    let mut inside = false;
    let n = poly.len();
    let mut j = n - 1;
    for i in 0..n {
        let a = poly[i];
        let b = poly[j];
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

pub fn dist_point_segment2(p: &P2, a: &P2, b: &P2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    let t = if len2 > 0.0 {
        ((p - a).dot(&ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p - (a + ab * t)).norm()
}

pub fn dist_point_segment3(p: &P3, a: &P3, b: &P3) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    let t = if len2 > 0.0 {
        ((p - a).dot(&ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p - (a + ab * t)).norm()
}

/// Distance from `p` to the closed polygon region (0 when inside).
pub fn dist_point_polygon2(p: &P2, poly: &[P2]) -> f64 {
    if poly.len() >= 3 && point_in_polygon(p, poly) {
        return 0.0;
    }
    boundary_distance2(p, poly)
}

pub fn boundary_distance2(p: &P2, poly: &[P2]) -> f64 {
    let n = poly.len();
    if n == 1 {
        return (p - poly[0]).norm();
    }
    (0..n)
        .map(|i| dist_point_segment2(p, &poly[i], &poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

/// Proper crossing of two closed segments, excluding shared endpoints.
pub fn segments_cross2(a: &P2, b: &P2, c: &P2, d: &P2, eps: f64) -> bool {
    let d1 = orient2(a, b, c);
    let d2 = orient2(a, b, d);
    let d3 = orient2(c, d, a);
    let d4 = orient2(c, d, b);
    ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps))
        && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
}

/// True when the polygon has no two non-adjacent edges that touch or cross.
pub fn is_simple_polygon(poly: &[P2], eps: f64) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (c, d) = (poly[j], poly[(j + 1) % n]);
            if segments_cross2(&a, &b, &c, &d, eps) {
                return false;
            }
            if dist_point_segment2(&c, &a, &b) <= eps || dist_point_segment2(&a, &c, &d) <= eps {
                return false;
            }
        }
    }
    true
}

fn in_triangle(p: &P2, a: &P2, b: &P2, c: &P2, eps: f64) -> bool {
    orient2(a, b, p) >= -eps && orient2(b, c, p) >= -eps && orient2(c, a, p) >= -eps
}

fn min_angle(a: &P2, b: &P2, c: &P2) -> f64 {
    let ang = |p: &P2, q: &P2, r: &P2| {
        let u = q - p;
        let v = r - p;
        cross2(&u, &v).abs().atan2(u.dot(&v))
    };
    ang(a, b, c).min(ang(b, c, a)).min(ang(c, a, b))
}

/// Ear clipping over a ring of indices into `pts`. The ring may repeat an
/// index (bridged holes). The ring is treated as counter-clockwise.
/// `prefer(a, c)` marks diagonals the caller would rather create; among
/// admissible ears the preferred ones with the best minimum angle win.
/// Collinear leftovers are dropped without emitting a triangle.
pub fn ear_clip_ring(
    pts: &[P2],
    ring: &[usize],
    prefer: &dyn Fn(usize, usize) -> bool,
) -> Vec<[usize; 3]> {
    let mut ring: Vec<usize> = ring.to_vec();
    let mut out = Vec::with_capacity(ring.len().saturating_sub(2));
    let scale = ring
        .iter()
        .map(|&i| pts[i].coords.norm())
        .fold(1.0f64, f64::max);
    let eps = 1e-12 * scale * scale;
    while ring.len() > 3 {
        let n = ring.len();
        let mut best: Option<(bool, f64, usize)> = None;
        for k in 0..n {
            let (ia, ib, ic) = (ring[(k + n - 1) % n], ring[k], ring[(k + 1) % n]);
            let (a, b, c) = (pts[ia], pts[ib], pts[ic]);
            if orient2(&a, &b, &c) <= eps || ia == ic {
                continue;
            }
            let blocked = ring.iter().enumerate().any(|(m, &ip)| {
                if m == k || m == (k + n - 1) % n || m == (k + 1) % n {
                    return false;
                }
                let p = pts[ip];
                if ip == ia || ip == ib || ip == ic || p == a || p == b || p == c {
                    return false;
                }
                in_triangle(&p, &a, &b, &c, eps)
            });
            if blocked {
                continue;
            }
            let key = (prefer(ia, ic), min_angle(&a, &b, &c), k);
            let better = match best {
                None => true,
                Some((bp, bq, _)) => (key.0 && !bp) || (key.0 == bp && key.1 > bq + 1e-12),
            };
            if better {
                best = Some(key);
            }
        }
        match best {
            Some((_, _, k)) => {
                let n = ring.len();
                out.push([ring[(k + n - 1) % n], ring[k], ring[(k + 1) % n]]);
                ring.remove(k);
            }
            None => {
                // only reflex or collinear corners remain; drop a collinear one
                let n = ring.len();
                let flat = (0..n).find(|&k| {
                    let (a, b, c) = (
                        pts[ring[(k + n - 1) % n]],
                        pts[ring[k]],
                        pts[ring[(k + 1) % n]],
                    );
                    orient2(&a, &b, &c).abs() <= eps
                });
                match flat {
                    Some(k) => {
                        ring.remove(k);
                    }
                    None => break,
                }
            }
        }
    }
    if ring.len() == 3 {
        let (a, b, c) = (pts[ring[0]], pts[ring[1]], pts[ring[2]]);
        if orient2(&a, &b, &c) > eps {
            out.push([ring[0], ring[1], ring[2]]);
        }
    }
    out
}

/// Triangulate a simple polygon given in either orientation. Returned
/// triangles index into `poly` and follow its orientation.
pub fn triangulate(poly: &[P2]) -> Vec<[usize; 3]> {
    let ccw = signed_area(poly) >= 0.0;
    let mut ring: Vec<usize> = (0..poly.len()).collect();
    if !ccw {
        ring.reverse();
    }
    let mut tris = ear_clip_ring(poly, &ring, &|_, _| true);
    if !ccw {
        for t in &mut tris {
            t.swap(1, 2);
        }
    }
    tris
}

/// Splice holes into the outer ring (Eberly bridging). `outer` must be CCW
/// and each hole CW, all as index lists into `pts`.
pub fn bridge_holes(pts: &[P2], outer: &[usize], holes: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut ring = outer.to_vec();
    let mut order: Vec<usize> = (0..holes.len()).collect();
    let max_x = |h: &Vec<usize>| {
        h.iter()
            .map(|&i| pts[i].x)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    order.sort_by(|&a, &b| max_x(&holes[b]).total_cmp(&max_x(&holes[a])));
    for hi in order {
        let hole = &holes[hi];
        let (mpos, &m) = hole.iter().enumerate().max_by(|a, b| {
            pts[*a.1]
                .x
                .total_cmp(&pts[*b.1].x)
                .then(pts[*b.1].y.total_cmp(&pts[*a.1].y))
        })?;
        let mp = pts[m];
        // nearest ring edge hit by the ray +x from m
        let n = ring.len();
        let mut hit: Option<(f64, usize)> = None;
        for k in 0..n {
            let a = pts[ring[k]];
            let b = pts[ring[(k + 1) % n]];
            if (a.y > mp.y) == (b.y > mp.y) && a.y != mp.y && b.y != mp.y {
                continue;
            }
            if a.y == b.y {
                continue;
            }
            let t = (mp.y - a.y) / (b.y - a.y);
            if !(0.0..=1.0).contains(&t) {
                continue;
            }
            let x = a.x + t * (b.x - a.x);
            if x < mp.x {
                continue;
            }
            if hit.map_or(true, |(hx, _)| x < hx) {
                hit = Some((x, k));
            }
        }
        let (hx, k) = hit?;
        let ia = ring[k];
        let ib = ring[(k + 1) % n];
        let cand = if pts[ia].x > pts[ib].x {
            k
        } else {
            (k + 1) % n
        };
        let ip = P2::new(hx, mp.y);
        let cp = pts[ring[cand]];
        // reflex ring vertices inside triangle (m, ip, cand) take precedence
        let mut best = cand;
        let mut best_key = (f64::INFINITY, f64::INFINITY);
        let (t0, t1, t2) = if orient2(&mp, &ip, &cp) >= 0.0 {
            (mp, ip, cp)
        } else {
            (mp, cp, ip)
        };
        for j in 0..n {
            let q = pts[ring[j]];
            if j == cand {
                continue;
            }
            let prev = pts[ring[(j + n - 1) % n]];
            let next = pts[ring[(j + 1) % n]];
            let reflex = orient2(&prev, &q, &next) <= 0.0;
            if reflex && q.x >= mp.x && in_triangle(&q, &t0, &t1, &t2, 0.0) {
                let d = q - mp;
                let key = (d.y.abs().atan2(d.x), d.norm());
                if key < best_key {
                    best_key = key;
                    best = j;
                }
            }
        }
        let mut spliced = Vec::with_capacity(ring.len() + hole.len() + 2);
        spliced.extend_from_slice(&ring[..=best]);
        for s in 0..hole.len() {
            spliced.push(hole[(mpos + s) % hole.len()]);
        }
        spliced.push(m);
        spliced.extend_from_slice(&ring[best..]);
        ring = spliced;
    }
    Some(ring)
}

/// Best proper rotation and translation taking `src` onto `dst` (Kabsch).
pub fn kabsch(src: &[P3], dst: &[P3]) -> (Matrix3<f64>, V3) {
    let cs = centroid(src);
    let cd = centroid(dst);
    let mut h = Matrix3::zeros();
    for (s, d) in src.iter().zip(dst) {
        h += (s - cs) * (d - cd).transpose();
    }
    let svd = h.svd(true, true);
    let u = svd.u.unwrap();
    let vt = svd.v_t.unwrap();
    let mut r = vt.transpose() * u.transpose();
    if r.determinant() < 0.0 {
        let mut fix = Matrix3::identity();
        fix[(2, 2)] = -1.0;
        r = vt.transpose() * fix * u.transpose();
    }
    let t = cd.coords - r * cs.coords;
    (r, t)
}

/// Householder reflection through the plane with unit normal `n` through `o`,
/// as a linear part and translation.
pub fn plane_reflection(o: &P3, n: &V3) -> (Matrix3<f64>, V3) {
    let m = Matrix3::identity() - 2.0 * n * n.transpose();
    let t = o.coords - m * o.coords;
    (m, t)
}
