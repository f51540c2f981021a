//! Uniform random points from a triangle soup, and deterministic seedable
//! random substreams.
//!
//! The area index partitions [0,1] by relative triangle areas; a point is
//! drawn by binary search for a triangle followed by barycentric coordinates
//! (with the standard fold u+v>1 -> (1-u, 1-v)), consuming exactly three
//! uniforms per call. `RandomSource` wraps a stream-capable counter-based
//! generator so that substream i of a seed is reproducible regardless of
//! thread scheduling: vote i of a run is a deterministic function of
//! (seed, i).

use crate::geometry::{Point2, TriangleSoup};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic random source: a (seed, stream) pair. Identical pairs yield
/// bitwise-identical sequences across runs and platforms.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(stream);
        RandomSource { rng }
    }

    /// Uniform draw in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }
}

/// Precomputed cumulative area partition of the unit interval for one soup.
#[derive(Debug, Clone)]
pub struct AreaIndex<'a> {
    soup: &'a TriangleSoup,
    cumulative: Vec<f64>,
}

impl<'a> AreaIndex<'a> {
    pub fn soup(&self) -> &'a TriangleSoup {
        self.soup
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }
}

/// Build the area partition in one pass over the triangles.
pub fn build_area_index(soup: &TriangleSoup) -> AreaIndex<'_> {
    let total = soup.total_area();
    let mut cumulative = Vec::with_capacity(soup.triangles().len());
    let mut acc = 0.0;
    for t in soup.triangles() {
        acc += t.area();
        cumulative.push(acc / total);
    }
    // Guard against accumulated rounding leaving the last entry below 1.
    if let Some(last) = cumulative.last_mut() {
        *last = 1.0;
    }
    AreaIndex { soup, cumulative }
}

/// Draw one uniform point from the soup: binary search for the triangle,
/// then barycentric coordinates. Exactly three rng draws per call.
pub fn sample_point(idx: &AreaIndex, rng: &mut RandomSource) -> Point2 {
    let r = rng.uniform();
    let i = idx.cumulative.partition_point(|&c| c <= r).min(idx.cumulative.len() - 1);
    let (mut u, mut v) = (rng.uniform(), rng.uniform());
    if u + v > 1.0 {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    let [a, b, c] = idx.soup.triangles()[i].vertices;
    Point2 {
        x: a.x + u * (b.x - a.x) + v * (c.x - a.x),
        y: a.y + u * (b.y - a.y) + v * (c.y - a.y),
    }
}
