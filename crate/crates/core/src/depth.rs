//! Deepest-point search over vote clouds: find a transformation whose
//! delta-neighborhood (max-norm box, optionally per-axis scaled) contains the
//! most votes.
//!
//! The 2D exact method is a plane sweep over x-events with a lazy-add segment
//! tree over compressed y endpoints, O(N log N). The 3D exact method sweeps
//! angle-axis slabs; because all boxes share one width, the active set is a
//! contiguous window of the alpha-sorted votes, and a full 2D evaluation of a
//! slab runs only when an upper bound (last evaluated depth + insertions
//! since) beats the best depth found so far. The angle axis is treated
//! circularly by duplicating near-boundary votes shifted by +-1 and
//! evaluating only candidates inside [-1/2, 1/2).
//!
//! All box membership is closed (<=/>= on exactly computed endpoints), and
//! ties are broken toward the lexicographically smallest candidate event
//! point: (x, y) in 2D, (alpha, x, y) in 3D.

use crate::geometry::{RigidMotion, Transform};
use crate::votes::{Mode, VoteCloud};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DepthError {
    #[error("vote cloud is empty")]
    EmptyCloud,
    #[error("depth query for mode {mode} requires a {expected} cloud")]
    WrongMode { mode: &'static str, expected: &'static str },
    #[error("angle half-width {half_width} >= 1/4: wrapped angle boxes would self-overlap")]
    WrapTooWide { half_width: f64 },
}

/// Box half-width and per-axis scaling for a depth query. The half-width on
/// axis i is `delta * scale[i]`, axes ordered (alpha, x, y); scale[0] is
/// ignored for translation clouds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthQuery {
    pub delta: f64,
    pub scale: [f64; 3],
    pub angle_wrap: bool,
}

impl DepthQuery {
    /// Query for a translation cloud.
    pub fn translation(delta: f64) -> Self {
        DepthQuery { delta, scale: [1.0; 3], angle_wrap: false }
    }

    /// Query for a rigid-motion cloud with circular angle axis.
    pub fn rigid(delta: f64) -> Self {
        DepthQuery { delta, scale: [1.0; 3], angle_wrap: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DepthMethod {
    Exact,
    Approx,
}

/// The deepest (or approximately deepest) transformation found.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthResult {
    pub argmax: Transform,
    pub depth: u64,
    pub method: DepthMethod,
    /// 1 for exact; 0.5 for the shifted-grid approximation (the returned
    /// delta-box holds at least the best (delta/2)-box count).
    pub approx_factor: f64,
}

/// Segment tree over positions 0..n with lazy range-add, tracking the
/// maximum and the leftmost position attaining it.
struct MaxTree {
    n: usize,
    max: Vec<i64>,
    arg: Vec<u32>,
    lazy: Vec<i64>,
}

impl MaxTree {
    fn new(n: usize) -> Self {
        let size = 4 * n.max(1);
        let mut t = MaxTree { n, max: vec![0; size], arg: vec![0; size], lazy: vec![0; size] };
        t.build(1, 0, n - 1);
        t
    }

    fn build(&mut self, node: usize, lo: usize, hi: usize) {
        self.arg[node] = lo as u32;
        if lo == hi {
            return;
        }
        let mid = (lo + hi) / 2;
        self.build(2 * node, lo, mid);
        self.build(2 * node + 1, mid + 1, hi);
    }

    fn add(&mut self, l: usize, r: usize, v: i64) {
        let n = self.n;
        self.add_rec(1, 0, n - 1, l, r, v);
    }

    fn add_rec(&mut self, node: usize, lo: usize, hi: usize, l: usize, r: usize, v: i64) {
        if r < lo || hi < l {
            return;
        }
        if l <= lo && hi <= r {
            self.max[node] += v;
            self.lazy[node] += v;
            return;
        }
        let mid = (lo + hi) / 2;
        self.add_rec(2 * node, lo, mid, l, r, v);
        self.add_rec(2 * node + 1, mid + 1, hi, l, r, v);
        let (a, b) = (2 * node, 2 * node + 1);
        // Leftmost argmax: prefer the left child on ties.
        if self.max[a] >= self.max[b] {
            self.max[node] = self.max[a] + self.lazy[node];
            self.arg[node] = self.arg[a];
        } else {
            self.max[node] = self.max[b] + self.lazy[node];
            self.arg[node] = self.arg[b];
        }
    }

    fn top(&self) -> (i64, usize) {
        (self.max[1], self.arg[1] as usize)
    }
}

/// Exact max depth of closed boxes [x-hx, x+hx] x [y-hy, y+hy] around the
/// given points, with the lexicographically smallest (x, y) event point
/// attaining it. Points must be nonempty.
fn sweep_2d(pts: &[(f64, f64)], hx: f64, hy: f64) -> (u64, f64, f64) {
    debug_assert!(!pts.is_empty());
    let n = pts.len();
    let mut ys: Vec<f64> = Vec::with_capacity(2 * n);
    for &(_, y) in pts {
        ys.push(y - hy);
        ys.push(y + hy);
    }
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.dedup();
    let pos = |v: f64| ys.partition_point(|&u| u < v);

    // Events sorted by (x, kind) with insertions (0) before removals (1) at
    // equal x: closed boxes still cover x at their right edge.
    let mut events: Vec<(f64, u8, u32)> = Vec::with_capacity(2 * n);
    for (i, &(x, _)) in pts.iter().enumerate() {
        events.push((x - hx, 0, i as u32));
        events.push((x + hx, 1, i as u32));
    }
    events.sort_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap());

    let mut tree = MaxTree::new(ys.len());
    let mut best: (i64, f64, f64) = (0, f64::INFINITY, f64::INFINITY);
    let mut i = 0;
    while i < events.len() {
        let x = events[i].0;
        let mut inserted = false;
        while i < events.len() && events[i].0 == x && events[i].1 == 0 {
            let (_, y) = pts[events[i].2 as usize];
            tree.add(pos(y - hy), pos(y + hy), 1);
            inserted = true;
            i += 1;
        }
        if inserted {
            let (d, p) = tree.top();
            if d > best.0 {
                best = (d, x, ys[p]);
            }
        }
        while i < events.len() && events[i].0 == x && events[i].1 == 1 {
            let (_, y) = pts[events[i].2 as usize];
            tree.add(pos(y - hy), pos(y + hy), -1);
            i += 1;
        }
    }
    (best.0 as u64, best.1, best.2)
}

fn cloud_coords_2d(cloud: &VoteCloud) -> Result<Vec<(f64, f64)>, DepthError> {
    if cloud.mode != Mode::T {
        return Err(DepthError::WrongMode { mode: "rigid", expected: "translation" });
    }
    if cloud.votes.is_empty() {
        return Err(DepthError::EmptyCloud);
    }
    Ok(cloud
        .coords()
        .into_iter()
        .map(|(_, x, y)| (x, y))
        .collect())
}

fn cloud_coords_3d(cloud: &VoteCloud) -> Result<Vec<(f64, f64, f64)>, DepthError> {
    if cloud.mode == Mode::T {
        return Err(DepthError::WrongMode { mode: "translation", expected: "rigid" });
    }
    if cloud.votes.is_empty() {
        return Err(DepthError::EmptyCloud);
    }
    Ok(cloud.coords())
}

/// Duplicate votes within `h` of the circular boundary, shifted by -+1, so a
/// linear sweep over [-1/2 - h, 1/2 + h) sees every wrapped box in full.
fn extend_wrap(coords: &[(f64, f64, f64)], h: f64) -> Vec<(f64, f64, f64)> {
    let mut out = Vec::with_capacity(coords.len() + coords.len() / 8);
    out.extend_from_slice(coords);
    for &(a, x, y) in coords {
        if a > 0.5 - h {
            out.push((a - 1.0, x, y));
        }
        if a < -0.5 + h {
            out.push((a + 1.0, x, y));
        }
    }
    out
}

/// Exact max depth over 2-delta boxes around a translation cloud.
pub fn deepest_2d(cloud: &VoteCloud, q: &DepthQuery) -> Result<DepthResult, DepthError> {
    let pts = cloud_coords_2d(cloud)?;
    let (depth, x, y) = sweep_2d(&pts, q.delta * q.scale[1], q.delta * q.scale[2]);
    Ok(DepthResult {
        argmax: Transform::translation(x, y),
        depth,
        method: DepthMethod::Exact,
        approx_factor: 1.0,
    })
}

/// Exact max depth restricted to box centers inside the half-open cell
/// rectangle [x_lo, x_hi) x [y_lo, y_hi), over boxes around the given
/// points. Candidate x values are box left edges clipped up to x_lo;
/// candidate y values are box bottom edges clipped up to y_lo. Clipping
/// preserves the max (depth is piecewise constant, rising only at box
/// starts) and the lexicographically smallest global argmax corner is a
/// vote-derived corner inside its own cell, so cell-wise results combine
/// exactly. Returns depth 0 when no box reaches the cell.
fn sweep_cell(
    pts: &[(f64, f64)],
    hx: f64,
    hy: f64,
    rect: (f64, f64, f64, f64),
) -> (u64, f64, f64) {
    let (x_lo, x_hi, y_lo, y_hi) = rect;
    let boxed: Vec<(f64, f64)> = pts
        .iter()
        .filter(|&&(x, y)| x - hx < x_hi && x + hx >= x_lo && y - hy < y_hi && y + hy >= y_lo)
        .copied()
        .collect();
    if boxed.is_empty() {
        return (0, f64::INFINITY, f64::INFINITY);
    }
    let mut ys: Vec<f64> = boxed.iter().map(|&(_, y)| (y - hy).max(y_lo)).collect();
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.dedup();

    let mut events: Vec<(f64, u8, u32)> = Vec::with_capacity(2 * boxed.len());
    for (i, &(x, _)) in boxed.iter().enumerate() {
        events.push(((x - hx).max(x_lo), 0, i as u32));
        events.push((x + hx, 1, i as u32));
    }
    events.sort_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap());

    let mut tree = MaxTree::new(ys.len());
    let mut best: (i64, f64, f64) = (0, f64::INFINITY, f64::INFINITY);
    let mut i = 0;
    while i < events.len() {
        let x = events[i].0;
        let mut inserted = false;
        while i < events.len() && events[i].0 == x && events[i].1 == 0 {
            let (_, y) = boxed[events[i].2 as usize];
            let lo = ys.partition_point(|&u| u < (y - hy).max(y_lo));
            let hi = ys.partition_point(|&u| u <= y + hy) - 1;
            tree.add(lo, hi, 1);
            inserted = true;
            i += 1;
        }
        if inserted {
            let (d, p) = tree.top();
            if d > best.0 {
                best = (d, x, ys[p]);
            }
        }
        while i < events.len() && events[i].0 == x && events[i].1 == 1 {
            let (_, y) = boxed[events[i].2 as usize];
            let lo = ys.partition_point(|&u| u < (y - hy).max(y_lo));
            let hi = ys.partition_point(|&u| u <= y + hy) - 1;
            tree.add(lo, hi, -1);
            i += 1;
        }
    }
    (best.0 as u64, best.1, best.2)
}

#[derive(Default)]
struct CellState {
    /// Exact max depth over the cell at its last evaluation.
    last_max: i64,
    /// Boxes intersecting the cell inserted since then; an upper bound on
    /// how much the cell's max can have grown.
    pending: i64,
    queued: bool,
}

/// Exact max depth over 3D boxes around a rigid-motion cloud, the angle axis
/// circular when `angle_wrap`.
///
/// Sweeps an alpha slab window and lazily re-evaluates the inner 2D problem
/// per (x, y) cell of width 4h: a cell's max cannot exceed its last
/// evaluated max plus the boxes inserted into it since, so cells are swept
/// only when that bound beats the best depth so far (seeded from the
/// shifted-grid lower bound). The first in-range slab attaining the global
/// maximum always triggers the owning cell, preserving the lexicographic
/// (alpha, x, y) tie-break of a full sweep.
pub fn deepest_3d(cloud: &VoteCloud, q: &DepthQuery) -> Result<DepthResult, DepthError> {
    let coords = cloud_coords_3d(cloud)?;
    let ha = q.delta * q.scale[0];
    let (hx, hy) = (q.delta * q.scale[1], q.delta * q.scale[2]);
    let ext;
    let coords: &[(f64, f64, f64)] = if q.angle_wrap {
        if ha >= 0.25 {
            return Err(DepthError::WrapTooWide { half_width: ha });
        }
        ext = extend_wrap(&coords, ha);
        &ext
    } else {
        &coords
    };

    let mut sorted: Vec<(f64, f64, f64)> = coords.to_vec();
    sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let n = sorted.len();

    // Lower bound from the shifted-grid pass: a true box count somewhere.
    let (lb, _) = approx_cells_3d(&sorted, [ha, hx, hy], q.angle_wrap);
    let mut best: i64 = lb as i64 - 1;
    let mut best_arg: Option<(f64, f64, f64)> = None;

    let (cw_x, cw_y) = (4.0 * hx, 4.0 * hy);
    let mut cells: HashMap<(i64, i64), CellState> = HashMap::new();
    let mut queue: Vec<(i64, i64)> = Vec::new();

    let mut window: Vec<(f64, f64)> = Vec::new(); // (x, y) of active votes, alpha order
    let mut r = 0usize; // number of removed (window start)
    let mut i = 0usize; // next insertion
    while i < n {
        let v = sorted[i].0 - ha;
        while r < i && sorted[r].0 + ha < v {
            r += 1;
        }
        while i < n && sorted[i].0 - ha == v {
            let (x, y) = (sorted[i].1, sorted[i].2);
            window.push((x, y));
            // A 2h-wide box intersects at most two 4h cells per axis.
            let kx0 = ((x - hx) / cw_x).floor() as i64;
            let kx1 = ((x + hx) / cw_x).floor() as i64;
            let ky0 = ((y - hy) / cw_y).floor() as i64;
            let ky1 = ((y + hy) / cw_y).floor() as i64;
            for kx in kx0..=kx1 {
                for ky in ky0..=ky1 {
                    let cell = cells.entry((kx, ky)).or_default();
                    cell.pending += 1;
                    if !cell.queued && cell.last_max + cell.pending > best {
                        cell.queued = true;
                        queue.push((kx, ky));
                    }
                }
            }
            i += 1;
        }
        if q.angle_wrap && !(-0.5..0.5).contains(&v) {
            continue;
        }
        if queue.is_empty() {
            continue;
        }
        // Evaluate every queued cell that can still beat the running best,
        // then combine: deepest first, lexicographically smallest (x, y) on
        // ties, so simultaneous triggers match a monolithic sweep.
        let mut slab_best: Option<(i64, f64, f64)> = None;
        for key in queue.drain(..) {
            let cell = cells.get_mut(&key).expect("queued cells exist");
            cell.queued = false;
            if cell.last_max + cell.pending <= best {
                continue;
            }
            let rect = (
                key.0 as f64 * cw_x,
                (key.0 + 1) as f64 * cw_x,
                key.1 as f64 * cw_y,
                (key.1 + 1) as f64 * cw_y,
            );
            let (d, x, y) = sweep_cell(&window[r..], hx, hy, rect);
            cell.last_max = d as i64;
            cell.pending = 0;
            let better = match slab_best {
                None => true,
                Some((bd, bx, by)) => {
                    d as i64 > bd || (d as i64 == bd && (x, y) < (bx, by))
                }
            };
            if better {
                slab_best = Some((d as i64, x, y));
            }
        }
        if let Some((d, x, y)) = slab_best {
            if d > best {
                best = d;
                best_arg = Some((v, x, y));
            }
        }
    }
    let (a, x, y) = best_arg.expect("a maximum-depth slab is always evaluated");
    // Report the candidate coordinate exactly (no re-normalization, which
    // could perturb the last ulp); with wrap it is already in range, without
    // wrap the angle axis is linear and may sit just outside it.
    Ok(DepthResult {
        argmax: Transform::Rigid(RigidMotion { alpha: a, tx: x, ty: y }),
        depth: best as u64,
        method: DepthMethod::Exact,
        approx_factor: 1.0,
    })
}

/// Shifted-grid cell counting over cells of width 2h per axis with the 2^d
/// half-cell shifts; returns the count of votes inside the closed h-box at
/// the best cell's center, and the center. 3D variant; alpha wrapped into
/// [-1/2, 1/2) when `wrap` (input must already be wrap-extended).
fn approx_cells_3d(coords: &[(f64, f64, f64)], h: [f64; 3], wrap: bool) -> (u64, (f64, f64, f64)) {
    let mut best: (u64, (f64, f64, f64)) = (0, (0.0, 0.0, 0.0));
    for shift_mask in 0..8u32 {
        let s = [
            if shift_mask & 1 != 0 { h[0] } else { 0.0 },
            if shift_mask & 2 != 0 { h[1] } else { 0.0 },
            if shift_mask & 4 != 0 { h[2] } else { 0.0 },
        ];
        let mut cells: HashMap<(i64, i64, i64), u32> = HashMap::new();
        for &(a, x, y) in coords {
            let key = (
                ((a - s[0]) / (2.0 * h[0])).floor() as i64,
                ((x - s[1]) / (2.0 * h[1])).floor() as i64,
                ((y - s[2]) / (2.0 * h[2])).floor() as i64,
            );
            *cells.entry(key).or_insert(0) += 1;
        }
        // Deterministic selection: HashMap iteration order is randomized, so
        // break count ties toward the smallest cell key.
        let mut top: Option<((i64, i64, i64), u32)> = None;
        for (&k, &c) in &cells {
            if top.map_or(true, |(bk, bc)| c > bc || (c == bc && k < bk)) {
                top = Some((k, c));
            }
        }
        if let Some((key, cell_count)) = top {
            if (cell_count as u64) <= best.0 {
                continue;
            }
            let mut ca = s[0] + (key.0 as f64 + 0.5) * 2.0 * h[0];
            let cx = s[1] + (key.1 as f64 + 0.5) * 2.0 * h[1];
            let cy = s[2] + (key.2 as f64 + 0.5) * 2.0 * h[2];
            if wrap {
                ca = crate::geometry::normalize_alpha(ca);
            }
            let recount = coords
                .iter()
                .filter(|&&(a, x, y)| {
                    (a - ca).abs() <= h[0] && (x - cx).abs() <= h[1] && (y - cy).abs() <= h[2]
                })
                .count() as u64;
            if recount > best.0 {
                best = (recount, (ca, cx, cy));
            }
        }
    }
    best
}

fn approx_cells_2d(coords: &[(f64, f64)], h: [f64; 2]) -> (u64, (f64, f64)) {
    let mut best: (u64, (f64, f64)) = (0, (0.0, 0.0));
    for shift_mask in 0..4u32 {
        let s = [
            if shift_mask & 1 != 0 { h[0] } else { 0.0 },
            if shift_mask & 2 != 0 { h[1] } else { 0.0 },
        ];
        let mut cells: HashMap<(i64, i64), u32> = HashMap::new();
        for &(x, y) in coords {
            let key = (
                ((x - s[0]) / (2.0 * h[0])).floor() as i64,
                ((y - s[1]) / (2.0 * h[1])).floor() as i64,
            );
            *cells.entry(key).or_insert(0) += 1;
        }
        let mut top: Option<((i64, i64), u32)> = None;
        for (&k, &c) in &cells {
            if top.map_or(true, |(bk, bc)| c > bc || (c == bc && k < bk)) {
                top = Some((k, c));
            }
        }
        if let Some((key, cell_count)) = top {
            if (cell_count as u64) <= best.0 {
                continue;
            }
            let cx = s[0] + (key.0 as f64 + 0.5) * 2.0 * h[0];
            let cy = s[1] + (key.1 as f64 + 0.5) * 2.0 * h[1];
            let recount = coords
                .iter()
                .filter(|&&(x, y)| (x - cx).abs() <= h[0] && (y - cy).abs() <= h[1])
                .count() as u64;
            if recount > best.0 {
                best = (recount, (cx, cy));
            }
        }
    }
    best
}

/// Approximately deepest point by shifted-grid counting: cells of width
/// 2*delta per axis under all half-cell shifts. The returned point's
/// delta-box contains at least as many votes as any (delta/2)-box anywhere
/// (every interval of length delta fits inside some cell of some shift), and
/// the reported depth is the true recount at the returned point.
pub fn deepest_approx(cloud: &VoteCloud, q: &DepthQuery) -> Result<DepthResult, DepthError> {
    match cloud.mode {
        Mode::T => {
            let pts = cloud_coords_2d(cloud)?;
            let (depth, (x, y)) =
                approx_cells_2d(&pts, [q.delta * q.scale[1], q.delta * q.scale[2]]);
            Ok(DepthResult {
                argmax: Transform::translation(x, y),
                depth,
                method: DepthMethod::Approx,
                approx_factor: 0.5,
            })
        }
        Mode::Rmra | Mode::Rm31 => {
            let coords = cloud_coords_3d(cloud)?;
            let ha = q.delta * q.scale[0];
            let ext;
            let coords: &[(f64, f64, f64)] = if q.angle_wrap {
                if ha >= 0.25 {
                    return Err(DepthError::WrapTooWide { half_width: ha });
                }
                ext = extend_wrap(&coords, ha);
                &ext
            } else {
                &coords
            };
            let (depth, (a, x, y)) = approx_cells_3d(
                coords,
                [ha, q.delta * q.scale[1], q.delta * q.scale[2]],
                q.angle_wrap,
            );
            Ok(DepthResult {
                argmax: Transform::Rigid(RigidMotion { alpha: a, tx: x, ty: y }),
                depth,
                method: DepthMethod::Approx,
                approx_factor: 0.5,
            })
        }
    }
}

/// Dispatch on cloud mode: exact sweep in the right dimension.
pub fn deepest_exact(cloud: &VoteCloud, q: &DepthQuery) -> Result<DepthResult, DepthError> {
    match cloud.mode {
        Mode::T => deepest_2d(cloud, q),
        Mode::Rmra | Mode::Rm31 => deepest_3d(cloud, q),
    }
}

/// Count votes inside the closed per-axis box around a transform; the angle
/// axis is circular for rigid clouds when `angle_wrap`. Shared by density
/// estimation and reporting.
pub fn count_in_box(cloud: &VoteCloud, center: &Transform, q: &DepthQuery) -> u64 {
    let (ca, cx, cy) = match center {
        Transform::Translation(t) => (0.0, t.tx, t.ty),
        Transform::Rigid(r) => (r.alpha, r.tx, r.ty),
    };
    let ha = q.delta * q.scale[0];
    let (hx, hy) = (q.delta * q.scale[1], q.delta * q.scale[2]);
    cloud
        .coords()
        .iter()
        .filter(|&&(a, x, y)| {
            let da = if cloud.mode != Mode::T && q.angle_wrap {
                let d = (a - ca).abs() % 1.0;
                d.min(1.0 - d)
            } else {
                (a - ca).abs()
            };
            let angle_ok = cloud.mode == Mode::T || da <= ha;
            angle_ok && (x - cx).abs() <= hx && (y - cy).abs() <= hy
        })
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::votes::Vote;

    fn t_cloud(pts: &[(f64, f64)]) -> VoteCloud {
        VoteCloud {
            mode: Mode::T,
            votes: pts
                .iter()
                .map(|&(x, y)| Vote { transform: Transform::translation(x, y) })
                .collect(),
            attempted: pts.len() as u64,
            rejected: 0,
        }
    }

    fn r_cloud(pts: &[(f64, f64, f64)]) -> VoteCloud {
        VoteCloud {
            mode: Mode::Rmra,
            votes: pts
                .iter()
                .map(|&(a, x, y)| Vote { transform: Transform::rigid(a, x, y) })
                .collect(),
            attempted: pts.len() as u64,
            rejected: 0,
        }
    }

    #[test]
    fn identical_votes_2d() {
        let cloud = t_cloud(&vec![(1.0, 2.0); 17]);
        let r = deepest_2d(&cloud, &DepthQuery::translation(0.03)).unwrap();
        assert_eq!(r.depth, 17);
        match r.argmax {
            Transform::Translation(t) => {
                assert!((t.tx - (1.0 - 0.03)).abs() < 1e-12 || (t.tx - 1.0).abs() < 0.03 + 1e-12);
                assert!((t.tx - 1.0).abs() <= 0.03 + 1e-12 && (t.ty - 2.0).abs() <= 0.03 + 1e-12);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn disjoint_boxes_2d() {
        let d = 0.05;
        let cloud = t_cloud(&[(0.0, 0.0), (3.0 * d, 0.0)]);
        let r = deepest_2d(&cloud, &DepthQuery::translation(d)).unwrap();
        assert_eq!(r.depth, 1);
        match r.argmax {
            // Lexicographically smallest candidate: left edge of the left box.
            Transform::Translation(t) => assert_eq!(t.tx, -d),
            _ => panic!(),
        }
    }

    #[test]
    fn identical_votes_3d() {
        let cloud = r_cloud(&vec![(0.1, 1.0, 2.0); 9]);
        let r = deepest_3d(&cloud, &DepthQuery::rigid(0.02)).unwrap();
        assert_eq!(r.depth, 9);
        match r.argmax {
            Transform::Rigid(m) => {
                assert!((m.alpha - 0.1).abs() <= 0.02 + 1e-12);
                assert!((m.tx - 1.0).abs() <= 0.02 + 1e-12);
                assert!((m.ty - 2.0).abs() <= 0.02 + 1e-12);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn wraparound_merges_votes() {
        let cloud = r_cloud(&[(0.49, 0.0, 0.0), (-0.49, 0.0, 0.0)]);
        let r = deepest_3d(&cloud, &DepthQuery::rigid(0.03)).unwrap();
        assert_eq!(r.depth, 2, "circular distance 0.02 < 2*delta must merge");
    }

    #[test]
    fn wrap_too_wide_is_error() {
        let cloud = r_cloud(&[(0.0, 0.0, 0.0)]);
        assert!(matches!(
            deepest_3d(&cloud, &DepthQuery::rigid(0.25)),
            Err(DepthError::WrapTooWide { .. })
        ));
    }

    #[test]
    fn approx_identical_votes_exact() {
        let cloud = r_cloud(&vec![(-0.2, 0.5, -0.5); 11]);
        let r = deepest_approx(&cloud, &DepthQuery::rigid(0.05)).unwrap();
        assert_eq!(r.depth, 11);
        assert_eq!(r.method, DepthMethod::Approx);
        assert_eq!(r.approx_factor, 0.5);
    }

    #[test]
    fn approx_never_exceeds_exact() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let pts: Vec<(f64, f64, f64)> = (0..150)
                .map(|_| {
                    (
                        rng.gen::<f64>() - 0.5,
                        rng.gen::<f64>() * 0.4,
                        rng.gen::<f64>() * 0.4,
                    )
                })
                .collect();
            let cloud = r_cloud(&pts);
            let q = DepthQuery::rigid(0.05);
            let exact = deepest_3d(&cloud, &q).unwrap();
            let approx = deepest_approx(&cloud, &q).unwrap();
            assert!(approx.depth <= exact.depth);
            // The guarantee: approx delta-box beats any (delta/2)-box, in
            // particular the exact (delta/2)-deepest.
            let half = DepthQuery { delta: q.delta / 2.0, ..q };
            let exact_half = deepest_3d(&cloud, &half).unwrap();
            assert!(
                approx.depth >= exact_half.depth,
                "approx {} < half-box exact {}",
                approx.depth,
                exact_half.depth
            );
        }
    }

    #[test]
    fn wrong_mode_is_error() {
        let cloud = t_cloud(&[(0.0, 0.0)]);
        assert!(matches!(
            deepest_3d(&cloud, &DepthQuery::rigid(0.05)),
            Err(DepthError::WrongMode { .. })
        ));
    }

    #[test]
    fn count_in_box_wraps() {
        let cloud = r_cloud(&[(0.49, 0.0, 0.0), (-0.49, 0.0, 0.0)]);
        let q = DepthQuery::rigid(0.03);
        let c = count_in_box(&cloud, &Transform::rigid(-0.4999, 0.0, 0.0), &q);
        assert_eq!(c, 2);
    }
}
