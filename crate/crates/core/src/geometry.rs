//! Exact planar geometry: triangle soups, transformations, area of overlap
//! and shape statistics.
//!
//! All coordinates are `f64`; comparisons use a slack of 1e-9 in shape units
//! where a tolerance is needed at all. Triangle-triangle intersection is
//! computed by convex clipping (the intersection of two triangles is a convex
//! polygon with at most 6 vertices), so `overlap_area` is exact to floating
//! precision without a general boolean-ops dependency.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Comparison slack, in shape units.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("non-finite coordinate ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
    #[error("triangle {index} is degenerate or clockwise (signed area {area})")]
    NotCounterClockwise { index: usize, area: f64 },
    #[error("triangle soup is empty")]
    EmptySoup,
    #[error("edge occurs {count} times across the soup (self-overlapping decomposition)")]
    EdgeMultiplicity { count: usize },
    #[error("triangles overlap: sampled point ({x}, {y}) lies strictly inside {count} triangles")]
    OverlappingTriangles { x: f64, y: f64, count: usize },
    #[error("rigid-motion parameter is non-finite")]
    NonFiniteTransform,
}

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if !x.is_finite() || !y.is_finite() {
            return Err(GeometryError::NonFinite { x, y });
        }
        // Normalize -0.0 so exact edge canonicalization can compare raw bits.
        Ok(Point2 { x: x + 0.0, y: y + 0.0 })
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A counterclockwise triangle with strictly positive area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub vertices: [Point2; 3],
}

impl Triangle {
    pub fn new(a: Point2, b: Point2, c: Point2) -> Result<Self, GeometryError> {
        let t = Triangle { vertices: [a, b, c] };
        if t.signed_area() <= 0.0 {
            return Err(GeometryError::NotCounterClockwise { index: 0, area: t.signed_area() });
        }
        Ok(t)
    }

    pub fn signed_area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        0.5 * cross(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y)
    }

    pub fn area(&self) -> f64 {
        self.signed_area()
    }

    /// Boundary-inclusive point membership.
    pub fn contains(&self, p: Point2) -> bool {
        let [a, b, c] = self.vertices;
        cross(b.x - a.x, b.y - a.y, p.x - a.x, p.y - a.y) >= 0.0
            && cross(c.x - b.x, c.y - b.y, p.x - b.x, p.y - b.y) >= 0.0
            && cross(a.x - c.x, a.y - c.y, p.x - c.x, p.y - c.y) >= 0.0
    }

    /// Strict interior membership.
    fn contains_strict(&self, p: Point2) -> bool {
        let [a, b, c] = self.vertices;
        cross(b.x - a.x, b.y - a.y, p.x - a.x, p.y - a.y) > 0.0
            && cross(c.x - b.x, c.y - b.y, p.x - b.x, p.y - b.y) > 0.0
            && cross(a.x - c.x, a.y - c.y, p.x - c.x, p.y - c.y) > 0.0
    }
}

#[inline]
fn cross(ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    ax * by - ay * bx
}

/// A shape represented as a list of interior-disjoint counterclockwise
/// triangles with positive total area.
///
/// Interior-disjointness is validated probabilistically at construction:
/// 1000 area-weighted sample points are drawn with a fixed internal seed and
/// the soup is rejected if any point lies strictly inside two or more
/// triangles. Edge multiplicities above 2 are rejected outright.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleSoup {
    triangles: Vec<Triangle>,
}

impl TriangleSoup {
    pub fn new(triangles: Vec<Triangle>) -> Result<Self, GeometryError> {
        if triangles.is_empty() {
            return Err(GeometryError::EmptySoup);
        }
        let soup = TriangleSoup { triangles };
        soup.check_edge_multiplicities()?;
        soup.check_disjointness()?;
        Ok(soup)
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn total_area(&self) -> f64 {
        self.triangles.iter().map(Triangle::area).sum()
    }

    /// Boundary-inclusive membership in the union of the triangles.
    pub fn contains(&self, p: Point2) -> bool {
        self.triangles.iter().any(|t| t.contains(p))
    }

    fn check_edge_multiplicities(&self) -> Result<(), GeometryError> {
        edge_multiplicities(&self.triangles).map(|_| ())
    }

    fn check_disjointness(&self) -> Result<(), GeometryError> {
        let mut cumulative = Vec::with_capacity(self.triangles.len());
        let mut acc = 0.0;
        for t in &self.triangles {
            acc += t.area();
            cumulative.push(acc);
        }
        let total = acc;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_d15c);
        for _ in 0..1000 {
            let r = rng.gen::<f64>() * total;
            let idx = cumulative.partition_point(|&c| c < r).min(self.triangles.len() - 1);
            let tri = &self.triangles[idx];
            let (mut u, mut v) = (rng.gen::<f64>(), rng.gen::<f64>());
            if u + v > 1.0 {
                u = 1.0 - u;
                v = 1.0 - v;
            }
            let [a, b, c] = tri.vertices;
            let p = Point2 {
                x: a.x + u * (b.x - a.x) + v * (c.x - a.x),
                y: a.y + u * (b.y - a.y) + v * (c.y - a.y),
            };
            let count = self.triangles.iter().filter(|t| t.contains_strict(p)).count();
            if count >= 2 {
                return Err(GeometryError::OverlappingTriangles { x: p.x, y: p.y, count });
            }
        }
        Ok(())
    }
}

/// Exact-coordinate edge key. Coordinates are compared by raw bits; input
/// points normalize -0.0 at construction so identical coordinates collide.
type EdgeKey = ((u64, u64), (u64, u64));

fn edge_key(a: Point2, b: Point2) -> EdgeKey {
    let ka = (a.x.to_bits(), a.y.to_bits());
    let kb = (b.x.to_bits(), b.y.to_bits());
    if ka <= kb {
        (ka, kb)
    } else {
        (kb, ka)
    }
}

fn edge_multiplicities(
    triangles: &[Triangle],
) -> Result<std::collections::HashMap<EdgeKey, (usize, Point2, Point2)>, GeometryError> {
    let mut map: std::collections::HashMap<EdgeKey, (usize, Point2, Point2)> =
        std::collections::HashMap::new();
    for t in triangles {
        let [a, b, c] = t.vertices;
        for (p, q) in [(a, b), (b, c), (c, a)] {
            let entry = map.entry(edge_key(p, q)).or_insert((0, p, q));
            entry.0 += 1;
            if entry.0 > 2 {
                return Err(GeometryError::EdgeMultiplicity { count: entry.0 });
            }
        }
    }
    Ok(map)
}

/// Edges occurring exactly once across the soup; these form the shape
/// boundary for valid triangulations. Non-shared collinear adjacency only
/// overestimates the boundary, never underestimates it.
pub fn boundary_edges(soup: &TriangleSoup) -> Result<Vec<(Point2, Point2)>, GeometryError> {
    let map = edge_multiplicities(soup.triangles())?;
    let mut edges: Vec<(Point2, Point2)> =
        map.into_values().filter(|(m, _, _)| *m == 1).map(|(_, p, q)| (p, q)).collect();
    edges.sort_by(|a, b| {
        (a.0.x, a.0.y, a.1.x, a.1.y)
            .partial_cmp(&(b.0.x, b.0.y, b.1.x, b.1.y))
            .unwrap()
    });
    Ok(edges)
}

/// A translation of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Translation {
    pub tx: f64,
    pub ty: f64,
}

/// A rigid motion x -> M_alpha x + t with rotation angle 2*pi*alpha
/// (counterclockwise), alpha in revolutions over [-1/2, 1/2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidMotion {
    pub alpha: f64,
    pub tx: f64,
    pub ty: f64,
}

/// Wrap an angle in revolutions into [-1/2, 1/2).
pub fn normalize_alpha(alpha: f64) -> f64 {
    let mut a = (alpha + 0.5).rem_euclid(1.0) - 0.5;
    if a >= 0.5 {
        a = -0.5;
    }
    a
}

impl RigidMotion {
    pub fn new(alpha: f64, tx: f64, ty: f64) -> Result<Self, GeometryError> {
        if !alpha.is_finite() || !tx.is_finite() || !ty.is_finite() {
            return Err(GeometryError::NonFiniteTransform);
        }
        Ok(RigidMotion { alpha: normalize_alpha(alpha), tx, ty })
    }

    fn rotation(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI * self.alpha;
        (theta.cos(), theta.sin())
    }
}

/// Either a translation or a rigid motion of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Transform {
    Translation(Translation),
    Rigid(RigidMotion),
}

impl Transform {
    pub fn translation(tx: f64, ty: f64) -> Transform {
        Transform::Translation(Translation { tx, ty })
    }

    pub fn rigid(alpha: f64, tx: f64, ty: f64) -> Transform {
        Transform::Rigid(RigidMotion { alpha: normalize_alpha(alpha), tx, ty })
    }
}

/// Apply a transform to a point.
pub fn apply(t: &Transform, p: Point2) -> Point2 {
    match t {
        Transform::Translation(tr) => Point2 { x: p.x + tr.tx, y: p.y + tr.ty },
        Transform::Rigid(r) => {
            let (c, s) = r.rotation();
            Point2 { x: c * p.x - s * p.y + r.tx, y: s * p.x + c * p.y + r.ty }
        }
    }
}

/// Inverse transform: `apply(invert(t), apply(t, p)) == p` up to 1e-9.
pub fn invert(t: &Transform) -> Transform {
    match t {
        Transform::Translation(tr) => Transform::translation(-tr.tx, -tr.ty),
        Transform::Rigid(r) => {
            let (c, s) = r.rotation();
            // Inverse is M_{-alpha} x - M_{-alpha} t.
            Transform::rigid(-r.alpha, -(c * r.tx + s * r.ty), -(-s * r.tx + c * r.ty))
        }
    }
}

fn transform_triangle(t: &Transform, tri: &Triangle) -> [Point2; 3] {
    let [a, b, c] = tri.vertices;
    [apply(t, a), apply(t, b), apply(t, c)]
}

/// Clip a convex subject polygon against the half-plane left of edge p->q.
fn clip_halfplane(subject: &[Point2], out: &mut Vec<Point2>, p: Point2, q: Point2) {
    out.clear();
    let n = subject.len();
    if n == 0 {
        return;
    }
    let side = |v: Point2| cross(q.x - p.x, q.y - p.y, v.x - p.x, v.y - p.y);
    for i in 0..n {
        let cur = subject[i];
        let next = subject[(i + 1) % n];
        let dc = side(cur);
        let dn = side(next);
        if dc >= 0.0 {
            out.push(cur);
        }
        if (dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0) {
            let t = dc / (dc - dn);
            out.push(Point2 {
                x: cur.x + t * (next.x - cur.x),
                y: cur.y + t * (next.y - cur.y),
            });
        }
    }
}

fn polygon_area(poly: &[Point2]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        acc += a.x * b.y - b.x * a.y;
    }
    0.5 * acc
}

/// Intersection area of a (transformed, still CCW) triangle with a clip
/// triangle, by Sutherland-Hodgman against the three clip edges.
fn triangle_pair_overlap(subject: &[Point2; 3], clip: &Triangle) -> f64 {
    let [p0, p1, p2] = clip.vertices;
    let mut a: Vec<Point2> = subject.to_vec();
    let mut b: Vec<Point2> = Vec::with_capacity(8);
    clip_halfplane(&a, &mut b, p0, p1);
    clip_halfplane(&b, &mut a, p1, p2);
    clip_halfplane(&a, &mut b, p2, p0);
    polygon_area(&b).max(0.0)
}

/// The objective |t(A) ∩ B|: total area of overlap of the transformed soup A
/// with soup B. Degenerate or empty pairwise intersections contribute 0.
pub fn overlap_area(a: &TriangleSoup, b: &TriangleSoup, t: &Transform) -> f64 {
    let mut total = 0.0;
    for ta in a.triangles() {
        let moved = transform_triangle(t, ta);
        for tb in b.triangles() {
            total += triangle_pair_overlap(&moved, tb);
        }
    }
    total
}

/// Area belonging to exactly one of t(A), B: |A| + |B| - 2 |t(A) ∩ B|.
pub fn symmetric_difference_area(a: &TriangleSoup, b: &TriangleSoup, t: &Transform) -> f64 {
    a.total_area() + b.total_area() - 2.0 * overlap_area(a, b, t)
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl BoundingBox {
    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }
}

/// Area |A|, boundary length, diameter and bounding box of a soup.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeStats {
    pub area: f64,
    pub boundary_length: f64,
    pub diameter: f64,
    pub bbox: BoundingBox,
}

pub fn bounding_box(soup: &TriangleSoup) -> BoundingBox {
    let mut bb = BoundingBox {
        min_x: f64::INFINITY,
        min_y: f64::INFINITY,
        max_x: f64::NEG_INFINITY,
        max_y: f64::NEG_INFINITY,
    };
    for t in soup.triangles() {
        for v in t.vertices {
            bb.min_x = bb.min_x.min(v.x);
            bb.min_y = bb.min_y.min(v.y);
            bb.max_x = bb.max_x.max(v.x);
            bb.max_y = bb.max_y.max(v.y);
        }
    }
    bb
}

/// Shape statistics: area is the triangle-area sum; the boundary is the set
/// of edges occurring exactly once (shared edges cancel); the diameter is the
/// maximum pairwise vertex distance, which is exact for a union of triangles.
pub fn shape_stats(soup: &TriangleSoup) -> Result<ShapeStats, GeometryError> {
    let area = soup.total_area();
    let boundary_length: f64 =
        boundary_edges(soup)?.iter().map(|(p, q)| p.distance(q)).sum();
    let diameter = diameter_of_vertices(soup);
    Ok(ShapeStats { area, boundary_length, diameter, bbox: bounding_box(soup) })
}

/// Diameter via convex hull + pairwise scan over hull vertices.
fn diameter_of_vertices(soup: &TriangleSoup) -> f64 {
    let mut pts: Vec<Point2> = Vec::with_capacity(soup.triangles().len() * 3);
    for t in soup.triangles() {
        pts.extend_from_slice(&t.vertices);
    }
    let hull = convex_hull(&mut pts);
    let mut best = 0.0f64;
    for i in 0..hull.len() {
        for j in i + 1..hull.len() {
            best = best.max(hull[i].distance(&hull[j]));
        }
    }
    best
}

/// Andrew's monotone chain. Returns hull vertices (no interior points).
fn convex_hull(pts: &mut Vec<Point2>) -> Vec<Point2> {
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() <= 2 {
        return pts.clone();
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(pts.len() * 2);
    for phase in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> =
            if phase == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if cross(b.x - a.x, b.y - a.y, p.x - a.x, p.y - a.y) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}
