//! Ear-clipping triangulation of a simple polygon with holes.
//!
//! Holes are merged into the outer ring through bridge edges (a visible
//! outer vertex is connected to a hole vertex, duplicating both), producing
//! one simple counterclockwise ring that is then ear-clipped. Bridge edges
//! appear twice with identical coordinates, so they cancel in the soup's
//! edge-multiplicity boundary computation, preserving the polygon's true
//! boundary length.

use probmatch::geometry::{Point2, Triangle};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TriangulateError {
    #[error("ring {0} has fewer than 3 vertices")]
    TooFewVertices(usize),
    #[error("ring {0} is self-intersecting")]
    SelfIntersecting(usize),
    #[error("ring 0 (outer) must be counterclockwise")]
    OuterNotCcw,
    #[error("ring {0} (hole) must be clockwise")]
    HoleNotCw(usize),
    #[error("no visible bridge vertex found for hole ring {0}")]
    NoBridge(usize),
    #[error("ear clipping failed to make progress (degenerate input?)")]
    Stuck,
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn signed_area(ring: &[Point2]) -> f64 {
    let mut acc = 0.0;
    for i in 0..ring.len() {
        let a = ring[i];
        let b = ring[(i + 1) % ring.len()];
        acc += a.x * b.y - b.x * a.y;
    }
    0.5 * acc
}

/// Proper (interior) crossing of open segments ab and cd.
fn segments_cross(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

fn is_self_intersecting(ring: &[Point2]) -> bool {
    let n = ring.len();
    for i in 0..n {
        for j in i + 1..n {
            // Skip adjacent edges (sharing a vertex).
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            if segments_cross(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n]) {
                return true;
            }
        }
    }
    false
}

/// Even-odd point-in-polygon over a set of rings.
fn inside_rings(rings: &[Vec<Point2>], p: Point2) -> bool {
    let mut inside = false;
    for ring in rings {
        let n = ring.len();
        for i in 0..n {
            let a = ring[i];
            let b = ring[(i + 1) % n];
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
    }
    inside
}

/// True when the open segment pq crosses no ring edge and its midpoint lies
/// inside the polygon (inside the outer ring, outside the holes).
fn visible(rings: &[Vec<Point2>], p: Point2, q: Point2) -> bool {
    for ring in rings {
        let n = ring.len();
        for i in 0..n {
            let (a, b) = (ring[i], ring[(i + 1) % n]);
            if segments_cross(p, q, a, b) {
                return false;
            }
            // A third vertex exactly on the open segment blocks it.
            let v = ring[i];
            if v != p && v != q && cross(p, q, v).abs() < 1e-12 {
                let t = ((v.x - p.x) * (q.x - p.x) + (v.y - p.y) * (q.y - p.y))
                    / ((q.x - p.x).powi(2) + (q.y - p.y).powi(2));
                if t > 1e-9 && t < 1.0 - 1e-9 {
                    return false;
                }
            }
        }
    }
    let mid = Point2 { x: 0.5 * (p.x + q.x), y: 0.5 * (p.y + q.y) };
    inside_rings(rings, mid)
}

/// Merge a hole (CW) into the outer ring (CCW) with a bridge at the given
/// vertex indices, duplicating both endpoints.
fn splice(outer: &[Point2], oi: usize, hole: &[Point2], hi: usize) -> Vec<Point2> {
    let mut merged = Vec::with_capacity(outer.len() + hole.len() + 2);
    merged.extend_from_slice(&outer[..=oi]);
    for k in 0..=hole.len() {
        merged.push(hole[(hi + k) % hole.len()]);
    }
    merged.extend_from_slice(&outer[oi..]);
    merged
}

/// Triangulate rings: the first outer (CCW), the rest holes (CW).
pub fn triangulate(rings: &[Vec<Point2>]) -> Result<Vec<Triangle>, TriangulateError> {
    if rings.is_empty() {
        return Err(TriangulateError::TooFewVertices(0));
    }
    for (i, ring) in rings.iter().enumerate() {
        if ring.len() < 3 {
            return Err(TriangulateError::TooFewVertices(i));
        }
        if is_self_intersecting(ring) {
            return Err(TriangulateError::SelfIntersecting(i));
        }
    }
    if signed_area(&rings[0]) <= 0.0 {
        return Err(TriangulateError::OuterNotCcw);
    }
    for (i, hole) in rings.iter().enumerate().skip(1) {
        if signed_area(hole) >= 0.0 {
            return Err(TriangulateError::HoleNotCw(i));
        }
    }

    // Merge holes one by one, rightmost hole vertex first.
    let mut merged = rings[0].clone();
    let mut holes: Vec<(usize, Vec<Point2>)> =
        rings.iter().enumerate().skip(1).map(|(i, h)| (i, h.clone())).collect();
    holes.sort_by(|a, b| {
        let mx = |h: &[Point2]| h.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
        mx(&b.1).partial_cmp(&mx(&a.1)).unwrap()
    });
    for idx in 0..holes.len() {
        let (ring_index, hole) = holes[idx].clone();
        let (ring_index, hole) = (&ring_index, &hole);
        // Hole vertex with maximum x (rightmost) is guaranteed bridgeable.
        let hi = hole
            .iter()
            .enumerate()
            .max_by(|a, b| (a.1.x, a.1.y).partial_cmp(&(b.1.x, b.1.y)).unwrap())
            .map(|(k, _)| k)
            .unwrap();
        let m = hole[hi];
        // Geometry for visibility tests: the current merged ring (which
        // already contains previously spliced holes) plus the holes not yet
        // spliced in, including this one.
        let mut context: Vec<Vec<Point2>> = vec![merged.clone()];
        for (_, other) in &holes[idx..] {
            context.push(other.clone());
        }
        // Candidate outer vertices by distance from m.
        let mut candidates: Vec<usize> = (0..merged.len()).collect();
        candidates.sort_by(|&a, &b| {
            merged[a].distance(&m).partial_cmp(&merged[b].distance(&m)).unwrap()
        });
        let oi = candidates
            .into_iter()
            .find(|&k| visible(&context, m, merged[k]))
            .ok_or(TriangulateError::NoBridge(*ring_index))?;
        merged = splice(&merged, oi, hole, hi);
    }

    // Classic ear clipping on the merged simple ring.
    let mut ring = merged;
    let mut tris = Vec::with_capacity(ring.len().saturating_sub(2));
    while ring.len() > 3 {
        let n = ring.len();
        let mut clipped = false;
        for i in 0..n {
            let prev = ring[(i + n - 1) % n];
            let cur = ring[i];
            let next = ring[(i + 1) % n];
            let area2 = cross(prev, cur, next);
            if area2 <= 0.0 {
                if area2 == 0.0 {
                    // Collinear spur: drop the vertex, no triangle emitted.
                    ring.remove(i);
                    clipped = true;
                    break;
                }
                continue;
            }
            // Any other vertex inside the candidate ear blocks it. The test
            // is closed (>= 0): a vertex exactly on the ear boundary means
            // the ring touches the ear (a pinch), which also blocks.
            let mut blocked = false;
            for (j, &p) in ring.iter().enumerate() {
                if j == (i + n - 1) % n || j == i || j == (i + 1) % n {
                    continue;
                }
                if p == prev || p == cur || p == next {
                    continue;
                }
                if cross(prev, cur, p) >= 0.0
                    && cross(cur, next, p) >= 0.0
                    && cross(next, prev, p) >= 0.0
                {
                    blocked = true;
                    break;
                }
            }
            if blocked {
                continue;
            }
            tris.push(Triangle::new(prev, cur, next).expect("positive ear area"));
            ring.remove(i);
            clipped = true;
            break;
        }
        if !clipped {
            return Err(TriangulateError::Stuck);
        }
    }
    if ring.len() == 3 {
        let area2 = cross(ring[0], ring[1], ring[2]);
        if area2 > 0.0 {
            tris.push(Triangle::new(ring[0], ring[1], ring[2]).expect("positive area"));
        }
    }
    Ok(tris)
}
