//! Euclidean evaluation of chord-set distances.
//!
//! Chords are mapped to segments of the unit disk and compared with the
//! Hausdorff distance. Distance-to-a-set is 1-Lipschitz along a segment,
//! so sampling a chord at spacing `2·tol` certifies its supremum within
//! `tol`; the reported values are therefore lower bounds that sit within
//! the requested tolerance of the true distance. The alignment bound
//! additionally exploits that both chord families only grow along the
//! process, which collapses the per-index Hausdorff maxima onto the entry
//! time of each chord.

use super::{
    alignment_time_change, factorisation_chord, good_cord_from_rank, rank_data, Chord, Lamination,
};
use crate::perm::Factorisation;
use crate::{Error, Result};
use num_traits::ToPrimitive;

type Point = (f64, f64);

fn rational_to_f64(x: crate::Rational) -> f64 {
    x.to_f64().expect("rationals in [0, 1] convert")
}

/// Endpoints of the segment realising a chord: `t ↦ exp(-2πit)`.
fn chord_segment(c: &Chord) -> (Point, Point) {
    (circle_point(rational_to_f64(c.u())), circle_point(rational_to_f64(c.v())))
}

fn circle_point(t: f64) -> Point {
    let theta = 2.0 * std::f64::consts::PI * t;
    (theta.cos(), -theta.sin())
}

fn dist(p: Point, q: Point) -> f64 {
    (p.0 - q.0).hypot(p.1 - q.1)
}

fn lerp(a: Point, b: Point, t: f64) -> Point {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

/// Exact distance from a point to a segment.
fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
    dist(p, lerp(a, b, t))
}

fn dist_to_segments(p: Point, segs: &[(Point, Point)]) -> f64 {
    segs.iter()
        .map(|&(a, b)| dist_point_segment(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

/// Directed sup over the chords of `from`, each sampled at spacing at most
/// `2·tol` with endpoints included; the true directed distance exceeds the
/// returned value by at most `tol`.
fn directed_sampled(from: &[(Point, Point)], to: &[(Point, Point)], tol: f64) -> f64 {
    let mut sup = 0.0f64;
    for &(a, b) in from {
        let len = dist(a, b);
        let pieces = (len / (2.0 * tol)).ceil().max(1.0) as usize;
        for i in 0..=pieces {
            let p = lerp(a, b, i as f64 / pieces as f64);
            sup = sup.max(dist_to_segments(p, to));
        }
    }
    sup
}

/// Hausdorff distance between two non-empty laminations, certified within
/// `tol`: the returned value `d` satisfies `d <= d_H <= d + tol`.
pub fn hausdorff_distance(a: &Lamination, b: &Lamination, tol: f64) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyLamination);
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::BadTolerance);
    }
    let sa: Vec<_> = a.chords().iter().map(chord_segment).collect();
    let sb: Vec<_> = b.chords().iter().map(chord_segment).collect();
    Ok(directed_sampled(&sa, &sb, tol).max(directed_sampled(&sb, &sa, tol)))
}

/// Uniform grid over the disk bounding box holding segment indices, for
/// nearest-segment queries against a growing set.
struct SegGrid {
    cell: f64,
    m: usize,
    origin: f64,
    cells: Vec<Vec<u32>>,
    segs: Vec<(Point, Point)>,
}

impl SegGrid {
    fn new(expected: usize) -> Self {
        let m = ((expected as f64).sqrt().ceil() as usize).clamp(4, 128);
        let span = 2.2; // covers [-1.1, 1.1]
        Self {
            cell: span / m as f64,
            m,
            origin: -1.1,
            cells: vec![Vec::new(); m * m],
            segs: Vec::with_capacity(expected),
        }
    }

    fn cell_index(&self, x: f64) -> i64 {
        (((x - self.origin) / self.cell).floor() as i64).clamp(0, self.m as i64 - 1)
    }

    fn push(&mut self, i: i64, j: i64, idx: u32) {
        let cell = &mut self.cells[j as usize * self.m + i as usize];
        if cell.last() != Some(&idx) {
            cell.push(idx);
        }
    }

    /// Registers the segment in every cell it passes through (Amanatides-Woo
    /// traversal); on numeric trouble it conservatively falls back to the
    /// segment's whole bounding box, which only adds candidates.
    fn insert(&mut self, a: Point, b: Point) {
        let idx = self.segs.len() as u32;
        self.segs.push((a, b));
        let (mut i, mut j) = (self.cell_index(a.0), self.cell_index(a.1));
        let (ti, tj) = (self.cell_index(b.0), self.cell_index(b.1));
        self.push(i, j, idx);
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let step_i: i64 = if dx > 0.0 { 1 } else { -1 };
        let step_j: i64 = if dy > 0.0 { 1 } else { -1 };
        let boundary = |k: i64, step: i64| -> f64 {
            self.origin + (k + i64::from(step > 0)) as f64 * self.cell
        };
        let mut t_max_x = if dx != 0.0 { (boundary(i, step_i) - a.0) / dx } else { f64::INFINITY };
        let mut t_max_y = if dy != 0.0 { (boundary(j, step_j) - a.1) / dy } else { f64::INFINITY };
        let t_delta_x = if dx != 0.0 { (self.cell / dx).abs() } else { f64::INFINITY };
        let t_delta_y = if dy != 0.0 { (self.cell / dy).abs() } else { f64::INFINITY };
        let mut steps = 0usize;
        let max_steps = 4 * self.m + 4;
        while (i, j) != (ti, tj) {
            steps += 1;
            if steps > max_steps {
                for bi in i.min(ti)..=i.max(ti) {
                    for bj in j.min(tj)..=j.max(tj) {
                        self.push(bi, bj, idx);
                    }
                }
                return;
            }
            if t_max_x <= t_max_y {
                i += step_i;
                t_max_x += t_delta_x;
            } else {
                j += step_j;
                t_max_y += t_delta_y;
            }
            if i < 0 || j < 0 || i >= self.m as i64 || j >= self.m as i64 {
                break;
            }
            self.push(i, j, idx);
        }
    }

    /// Exact distance from `p` to the nearest registered segment, by ring
    /// search: a cell in Chebyshev ring `r` cannot hold points closer than
    /// `(r-1)·cell`.
    fn min_dist(&self, p: Point) -> f64 {
        debug_assert!(!self.segs.is_empty());
        let (ci, cj) = (self.cell_index(p.0), self.cell_index(p.1));
        let mut best = f64::INFINITY;
        let m = self.m as i64;
        for r in 0..self.m as i64 {
            if best <= (r - 1).max(0) as f64 * self.cell {
                break;
            }
            let scan = |i: i64, j: i64, best: &mut f64| {
                if i < 0 || j < 0 || i >= m || j >= m {
                    return;
                }
                for &idx in &self.cells[j as usize * self.m + i as usize] {
                    let (a, b) = self.segs[idx as usize];
                    let d = dist_point_segment(p, a, b);
                    if d < *best {
                        *best = d;
                    }
                }
            };
            if r == 0 {
                scan(ci, cj, &mut best);
            } else {
                for i in (ci - r)..=(ci + r) {
                    scan(i, cj - r, &mut best);
                    scan(i, cj + r, &mut best);
                }
                for j in (cj - r + 1)..(cj + r) {
                    scan(ci - r, j, &mut best);
                    scan(ci + r, j, &mut best);
                }
            }
        }
        // Points never sit farther than a ring beyond the grid.
        debug_assert!(best.is_finite());
        best
    }
}

/// Raises `best` towards `sup_{x in seg} d(x, grid)`, certified within
/// `tol`: every sub-segment is either refined to half-length `tol` or
/// discarded because its midpoint bound cannot beat the running maximum.
fn refine_sup(seg: (Point, Point), grid: &SegGrid, tol: f64, best: &mut f64) {
    let (a, b) = seg;
    *best = best.max(grid.min_dist(a));
    let len = dist(a, b);
    if len == 0.0 {
        return;
    }
    *best = best.max(grid.min_dist(b));
    let mut stack = vec![(0.0f64, 1.0f64)];
    while let Some((t0, t1)) = stack.pop() {
        let mid = 0.5 * (t0 + t1);
        let dm = grid.min_dist(lerp(a, b, mid));
        if dm > *best {
            *best = dm;
        }
        let half = 0.5 * (t1 - t0) * len;
        if half <= tol || dm + half <= *best {
            continue;
        }
        stack.push((t0, mid));
        stack.push((mid, t1));
    }
}

/// Result of [`alignment_bound`]: the exact time-deviation term, the
/// certified Hausdorff term and their maximum.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AlignmentBound {
    pub time_term: f64,
    pub hausdorff_term: f64,
    pub value: f64,
}

/// The alignment diagnostic `D_n` of a decreasing factorisation: the
/// maximum of `max |φ_n - Id|` (exact, evaluated at the breakpoints) and
/// `max_i d_H(L_i, G_{φ_n(i/n)})`, where `G_s` is the good-cord lamination
/// at level `s`. The Hausdorff part is certified within `tol`.
///
/// Both chord families grow along the process and distance to a growing
/// set only shrinks, so each chord attains its supremum at its entry
/// index; it suffices to evaluate every process chord against the good
/// cords present when it appears, and vice versa.
pub fn alignment_bound(f: &Factorisation, tol: f64) -> Result<AlignmentBound> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::BadTolerance);
    }
    let n = f.n();
    if n < 2 {
        return Err(Error::SizeOutOfRange { n, lo: 2, hi: usize::MAX });
    }
    let rd = rank_data(f)?;
    let tc = alignment_time_change(f)?;
    let time_term = rational_to_f64(tc.sup_dev_from_identity());

    let mut grid_a = SegGrid::new(n);
    let mut grid_b = SegGrid::new(n);
    let one_zero: Point = (1.0, 0.0);
    grid_b.insert(one_zero, one_zero); // the [[1, 1]] anchor

    let mut best = 0.0f64;
    for idx in 0..n - 1 {
        let c = chord_segment(&factorisation_chord(f, idx)?);
        grid_a.insert(c.0, c.1);
        if idx == 0 {
            best = best.max(grid_a.min_dist(one_zero));
        }
        let partner = if rd.h(idx).is_some() {
            let gc = chord_segment(&good_cord_from_rank(n, &rd, idx)?);
            grid_b.insert(gc.0, gc.1);
            Some(gc)
        } else {
            None
        };
        // process chord against the good cords present at its entry
        let skip = partner.map(|gc| {
            dist_point_segment(c.0, gc.0, gc.1).max(dist_point_segment(c.1, gc.0, gc.1))
        });
        if skip.is_none_or(|ub| ub > best) {
            refine_sup(c, &grid_b, tol, &mut best);
        }
        // good cord against the process chords present at its entry
        if let Some(gc) = partner {
            let ub = dist_point_segment(gc.0, c.0, c.1).max(dist_point_segment(gc.1, c.0, c.1));
            if ub > best {
                refine_sup(gc, &grid_a, tol, &mut best);
            }
        }
    }
    Ok(AlignmentBound { time_term, hausdorff_term: best, value: time_term.max(best) })
}
