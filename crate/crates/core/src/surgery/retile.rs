use std::f64::consts::TAU;

use super::SurgeryError;
use crate::geom::{self, P2};

/// A vertex of the outer ring (`ring == 0`) or of hole `ring - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingVertex {
    pub ring: usize,
    pub index: usize,
}

fn rv(ring: usize, index: usize) -> RingVertex {
    RingVertex { ring, index }
}

/// Partition the region between `outer` and the `holes` into simple
/// polygons that use only the given vertices. Pieces are returned
/// counter-clockwise in the plane of the input coordinates when `outer` is
/// counter-clockwise, and clockwise otherwise.
pub fn retile_pierced_face(
    outer: &[P2],
    holes: &[Vec<P2>],
) -> Result<Vec<Vec<RingVertex>>, SurgeryError> {
    let flip = geom::signed_area(outer) < 0.0;
    let mut o: Vec<P2> = outer.to_vec();
    if flip {
        o.reverse();
    }
    let mut hs: Vec<Vec<P2>> = holes.to_vec();
    let mut hole_flip = vec![false; hs.len()];
    for (h, f) in hs.iter_mut().zip(hole_flip.iter_mut()) {
        if geom::signed_area(h) < 0.0 {
            h.reverse();
            *f = true;
        }
    }
    check_inside(&o, &hs)?;
    let pieces = if hs.len() == 1 {
        spokes(&o, &hs[0])
            .filter(|p| valid_partition(&o, &hs, p))
            .or_else(|| Some(zip(&o, &hs[0])).filter(|p| valid_partition(&o, &hs, p)))
    } else {
        None
    };
    let pieces = match pieces {
        Some(p) => p,
        None => {
            let p = bridged(&o, &hs).ok_or(SurgeryError::SelfCrossingPartition)?;
            if !valid_partition(&o, &hs, &p) {
                return Err(SurgeryError::SelfCrossingPartition);
            }
            p
        }
    };
    // undo the normalisation of ring directions
    let map = |v: RingVertex| -> RingVertex {
        if v.ring == 0 {
            if flip {
                rv(0, outer.len() - 1 - v.index)
            } else {
                v
            }
        } else if hole_flip[v.ring - 1] {
            rv(v.ring, holes[v.ring - 1].len() - 1 - v.index)
        } else {
            v
        }
    };
    Ok(pieces
        .into_iter()
        .map(|p| {
            let mut q: Vec<RingVertex> = p.into_iter().map(map).collect();
            if flip {
                q.reverse();
            }
            q
        })
        .collect())
}

fn check_inside(outer: &[P2], holes: &[Vec<P2>]) -> Result<(), SurgeryError> {
    let scale = outer.iter().map(|p| p.coords.amax()).fold(1.0, f64::max);
    for (i, h) in holes.iter().enumerate() {
        for p in h {
            if !geom::point_in_polygon(p, outer)
                || geom::boundary_distance2(p, outer) <= 1e-12 * scale
            {
                return Err(SurgeryError::HoleNotInside);
            }
        }
        for (j, g) in holes.iter().enumerate() {
            if i != j
                && (h
                    .iter()
                    .any(|p| geom::dist_point_polygon2(p, g) <= 1e-12 * scale))
            {
                return Err(SurgeryError::HoleNotInside);
            }
        }
    }
    Ok(())
}

fn hole_center(h: &[P2]) -> P2 {
    let mut c = nalgebra::Vector2::zeros();
    for p in h {
        c += p.coords;
    }
    P2::from(c / h.len() as f64)
}

fn angle_from(c: &P2, p: &P2) -> f64 {
    let a = (p.y - c.y).atan2(p.x - c.x);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// Quads between equal-size rings: hole vertex j is tied to the outer
/// vertex nearest in angle, which must give an order-preserving bijection.
fn spokes(outer: &[P2], hole: &[P2]) -> Option<Vec<Vec<RingVertex>>> {
    let n = outer.len();
    if hole.len() != n {
        return None;
    }
    let c = hole_center(hole);
    let ang_o: Vec<f64> = outer.iter().map(|p| angle_from(&c, p)).collect();
    let nearest = |a: f64| -> usize {
        let mut best = (f64::INFINITY, 0);
        for (i, &b) in ang_o.iter().enumerate() {
            let d = (a - b).rem_euclid(TAU);
            let d = d.min(TAU - d);
            if d < best.0 - 1e-12 {
                best = (d, i);
            }
        }
        best.1
    };
    let tie: Vec<usize> = hole.iter().map(|p| nearest(angle_from(&c, p))).collect();
    for j in 0..n {
        if tie[(j + 1) % n] != (tie[j] + 1) % n {
            return None;
        }
    }
    Some(
        (0..n)
            .map(|j| {
                let k = (j + 1) % n;
                vec![rv(0, tie[j]), rv(0, tie[k]), rv(1, k), rv(1, j)]
            })
            .collect(),
    )
}

/// Radial sweep: walk both rings counter-clockwise around the hole centre
/// and emit triangles, always advancing the ring whose next vertex comes
/// first in angle.
fn zip(outer: &[P2], hole: &[P2]) -> Vec<Vec<RingVertex>> {
    let (no, nh) = (outer.len(), hole.len());
    let c = hole_center(hole);
    let h0 = angle_from(&c, &hole[0]);
    let rel = |p: &P2| (angle_from(&c, p) - h0).rem_euclid(TAU);
    let i0 = (0..no)
        .min_by(|&a, &b| {
            let da = rel(&outer[a]).min(TAU - rel(&outer[a]));
            let db = rel(&outer[b]).min(TAU - rel(&outer[b]));
            da.total_cmp(&db)
        })
        .unwrap();
    // unwrapped angles along each ring
    let unwrap = |ring: &[P2], start: usize, count: usize| -> Vec<f64> {
        let mut out = Vec::with_capacity(count + 1);
        let mut prev = rel(&ring[start]);
        if prev > std::f64::consts::PI {
            prev -= TAU;
        }
        out.push(prev);
        for k in 1..=count {
            let a = rel(&ring[(start + k) % count]);
            let mut step = (a - prev.rem_euclid(TAU)).rem_euclid(TAU);
            if k == count {
                step = TAU - (out[k - 1] - out[0]);
            }
            prev += step;
            out.push(prev);
        }
        out
    };
    let ao = unwrap(outer, i0, no);
    let ah = unwrap(hole, 0, nh);
    let (mut ko, mut kh) = (0, 0);
    let mut tris = Vec::with_capacity(no + nh);
    while ko < no || kh < nh {
        let advance_outer = if ko == no {
            false
        } else if kh == nh {
            true
        } else {
            ao[ko + 1] < ah[kh + 1]
        };
        let o_here = rv(0, (i0 + ko) % no);
        let h_here = rv(1, kh % nh);
        if advance_outer {
            tris.push(vec![o_here, rv(0, (i0 + ko + 1) % no), h_here]);
            ko += 1;
        } else {
            tris.push(vec![o_here, rv(1, (kh + 1) % nh), h_here]);
            kh += 1;
        }
    }
    tris
}

/// Splice the holes into the outer ring and ear-clip, preferring cuts that
/// touch a hole so no new outer-to-outer diagonals appear unless needed.
fn bridged(outer: &[P2], holes: &[Vec<P2>]) -> Option<Vec<Vec<RingVertex>>> {
    let mut pts: Vec<P2> = outer.to_vec();
    let mut refs: Vec<RingVertex> = (0..outer.len()).map(|i| rv(0, i)).collect();
    let mut hole_idx = Vec::new();
    for (h, hole) in holes.iter().enumerate() {
        // holes must run clockwise for bridging
        let ids: Vec<usize> = (0..hole.len())
            .rev()
            .map(|j| {
                pts.push(hole[j]);
                refs.push(rv(h + 1, j));
                pts.len() - 1
            })
            .collect();
        hole_idx.push(ids);
    }
    let outer_idx: Vec<usize> = (0..outer.len()).collect();
    let ring = geom::bridge_holes(&pts, &outer_idx, &hole_idx)?;
    let n_outer = outer.len();
    let tris = geom::ear_clip_ring(&pts, &ring, &|a, c| a >= n_outer || c >= n_outer);
    Some(
        tris.into_iter()
            .map(|t| t.iter().map(|&i| refs[i]).collect())
            .collect(),
    )
}

fn locate(outer: &[P2], holes: &[Vec<P2>], v: RingVertex) -> P2 {
    if v.ring == 0 {
        outer[v.index]
    } else {
        holes[v.ring - 1][v.index]
    }
}

/// Pieces are simple, positively oriented, distinct-vertex polygons whose
/// areas add up to the annulus and whose edges do not cross.
fn valid_partition(outer: &[P2], holes: &[Vec<P2>], pieces: &[Vec<RingVertex>]) -> bool {
    let scale = outer.iter().map(|p| p.coords.amax()).fold(1.0, f64::max);
    let target = geom::signed_area(outer) - holes.iter().map(|h| geom::signed_area(h)).sum::<f64>();
    let mut total = 0.0;
    let mut segs: Vec<(P2, P2)> = Vec::new();
    for piece in pieces {
        let mut ids = piece.clone();
        ids.sort();
        ids.dedup();
        if ids.len() != piece.len() {
            return false;
        }
        let poly: Vec<P2> = piece.iter().map(|&v| locate(outer, holes, v)).collect();
        let a = geom::signed_area(&poly);
        if a <= 1e-12 * scale * scale || !geom::is_simple_polygon(&poly, 1e-12 * scale) {
            return false;
        }
        // every corner must be a proper turn, or a straight angle of an input ring
        total += a;
        for i in 0..poly.len() {
            segs.push((poly[i], poly[(i + 1) % poly.len()]));
        }
    }
    if (total - target).abs() > 1e-9 * target.abs().max(1e-300) {
        return false;
    }
    let eps = 1e-12 * scale * scale;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if geom::segments_cross2(&segs[i].0, &segs[i].1, &segs[j].0, &segs[j].1, eps) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ngon(n: usize, r: f64, phase: f64) -> Vec<P2> {
        (0..n)
            .map(|j| {
                let t = phase + TAU * j as f64 / n as f64;
                P2::new(r * t.cos(), r * t.sin())
            })
            .collect()
    }

    fn area_of(outer: &[P2], holes: &[Vec<P2>], pieces: &[Vec<RingVertex>]) -> f64 {
        pieces
            .iter()
            .map(|p| {
                geom::signed_area(
                    &p.iter()
                        .map(|&v| locate(outer, holes, v))
                        .collect::<Vec<_>>(),
                )
            })
            .sum()
    }

    #[test]
    fn square_annulus_gives_four_trapezoids() {
        let outer = ngon(4, 2.0, 0.25 * std::f64::consts::PI);
        let hole = ngon(4, 0.5, 0.25 * std::f64::consts::PI);
        let pieces = retile_pierced_face(&outer, std::slice::from_ref(&hole)).unwrap();
        assert_eq!(pieces.len(), 4);
        assert!(pieces.iter().all(|p| p.len() == 4));
        assert!((area_of(&outer, &[hole], &pieces) - (8.0 - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn twelve_gon_spokes() {
        let outer = ngon(12, 3.0, 0.0);
        let hole = ngon(12, 1.0, 0.1);
        let pieces = retile_pierced_face(&outer, &[hole]).unwrap();
        assert_eq!(pieces.len(), 12);
        assert!(pieces.iter().all(|p| p.len() == 4));
    }

    #[test]
    fn unequal_rings_use_triangles() {
        let outer = ngon(8, 3.0, 0.0);
        let hole = ngon(12, 0.4, 0.0);
        let pieces = retile_pierced_face(&outer, std::slice::from_ref(&hole)).unwrap();
        assert_eq!(pieces.len(), 20);
        assert!(
            (area_of(&outer, std::slice::from_ref(&hole), &pieces)
                - (geom::signed_area(&outer) - geom::signed_area(&hole)))
            .abs()
                < 1e-12
        );
    }

    #[test]
    fn clockwise_outer_keeps_orientation() {
        let mut outer = ngon(6, 3.0, 0.0);
        outer.reverse();
        let hole = ngon(5, 0.4, 0.0);
        let pieces = retile_pierced_face(&outer, std::slice::from_ref(&hole)).unwrap();
        assert!(area_of(&outer, &[hole], &pieces) < 0.0);
    }

    #[test]
    fn several_holes() {
        let outer = ngon(8, 3.0, 0.0);
        let holes: Vec<Vec<P2>> = [-1.2, 0.0, 1.2]
            .iter()
            .map(|&x| {
                ngon(6, 0.3, 0.0)
                    .into_iter()
                    .map(|p| P2::new(p.x + x, p.y))
                    .collect()
            })
            .collect();
        let pieces = retile_pierced_face(&outer, &holes).unwrap();
        let expected =
            geom::signed_area(&outer) - holes.iter().map(|h| geom::signed_area(h)).sum::<f64>();
        assert!((area_of(&outer, &holes, &pieces) - expected).abs() < 1e-9);
    }

    #[test]
    fn hole_touching_boundary() {
        let outer = ngon(4, 1.0, 0.0);
        let hole = vec![P2::new(1.0, 0.0), P2::new(0.0, 0.2), P2::new(0.0, -0.2)];
        assert_eq!(
            retile_pierced_face(&outer, &[hole]),
            Err(SurgeryError::HoleNotInside)
        );
    }
}
