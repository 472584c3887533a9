//! Chord laminations of the unit disk and the processes built from them.
//!
//! A chord `[[u, v]]` with rational endpoints `0 <= u <= v <= 1` is the
//! segment of the closed unit disk joining `exp(-2πiu)` to `exp(-2πiv)`;
//! it is trivial when it degenerates to a boundary point (`u = v`, or
//! `u = 0, v = 1`). A lamination is a finite set of pairwise non-crossing
//! chords. The step lamination process of a factorisation adds the chord
//! `[[a_k/n, b_k/n]]` at time `k/n`.
//!
//! The interpolated Łukasiewicz excursion of the underlying tree drives
//! everything asymptotic: its good cords (maximal cords with right
//! endpoint on the lattice `i/(n-1)`) admit a closed form indexed by the
//! repeated smaller endpoints of the factorisation, and the induced time
//! change aligns the step process with the good-cord process. Endpoints,
//! walk values and breakpoints are exact rationals throughout; only the
//! final Hausdorff evaluations (see [`hausdorff_distance`] and
//! [`alignment_bound`]) round to floating point, with a certified
//! sampling tolerance.

mod geometry;
mod svg;

pub use geometry::{alignment_bound, hausdorff_distance, AlignmentBound};
pub use svg::{render_svg, SvgOptions};

use crate::perm::{is_cycle_factorisation, monotone_class, Factorisation};
use crate::tree::{lukasiewicz_path, LukaPath, PlaneTree};
use crate::{Error, Rational, Result};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

fn rat(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

/// A chord of the unit disk with exact rational endpoints `u <= v` in
/// `[0, 1]`, realised as the segment from `exp(-2πiu)` to `exp(-2πiv)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[[i128; 2]; 2]", into = "[[i128; 2]; 2]")]
pub struct Chord {
    u: Rational,
    v: Rational,
}

impl Chord {
    /// Builds `[[u, v]]`, swapping endpoints if necessary.
    pub fn new(u: Rational, v: Rational) -> Result<Self> {
        for x in [u, v] {
            if x < Rational::zero() || x > Rational::one() {
                return Err(Error::ChordOutOfRange(Box::new(x)));
            }
        }
        Ok(Self { u: u.min(v), v: u.max(v) })
    }

    /// Left endpoint (smaller parameter).
    pub fn u(&self) -> Rational {
        self.u
    }

    /// Right endpoint (larger parameter).
    pub fn v(&self) -> Rational {
        self.v
    }

    /// A chord is trivial when it is a single boundary point: `u = v`, or
    /// the full turn `u = 0, v = 1`.
    pub fn is_trivial(&self) -> bool {
        self.u == self.v || (self.u.is_zero() && self.v.is_one())
    }

    /// The boundary point `[[t, t]]`.
    pub fn point(t: Rational) -> Result<Self> {
        Self::new(t, t)
    }
}

impl TryFrom<[[i128; 2]; 2]> for Chord {
    type Error = Error;
    fn try_from(raw: [[i128; 2]; 2]) -> Result<Self> {
        for pair in raw {
            if pair[1] == 0 {
                return Err(Error::ChordOutOfRange(Box::new(Rational::zero())));
            }
        }
        Chord::new(rat(raw[0][0], raw[0][1]), rat(raw[1][0], raw[1][1]))
    }
}

impl From<Chord> for [[i128; 2]; 2] {
    fn from(c: Chord) -> Self {
        [[*c.u.numer(), *c.u.denom()], [*c.v.numer(), *c.v.denom()]]
    }
}

/// Do two chords cross in the open disk, i.e. do their endpoints strictly
/// interleave around the circle? Shared endpoints do not cross.
pub fn chords_cross(c1: &Chord, c2: &Chord) -> bool {
    (c1.u < c2.u && c2.u < c1.v && c1.v < c2.v)
        || (c2.u < c1.u && c1.u < c2.v && c2.v < c1.v)
}

/// A finite set of pairwise non-crossing chords, kept sorted and
/// deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Chord>", into = "Vec<Chord>")]
pub struct Lamination {
    chords: Vec<Chord>,
}

impl Lamination {
    /// Validates pairwise non-crossing and canonicalises the chord list.
    pub fn new(mut chords: Vec<Chord>) -> Result<Self> {
        chords.sort_unstable_by_key(|c| (c.u, std::cmp::Reverse(c.v)));
        chords.dedup();
        // Sorted by (u asc, v desc), non-crossing means every chord is
        // nested in or disjoint from the currently open ones.
        let mut open: Vec<Chord> = Vec::new();
        for c in &chords {
            while let Some(top) = open.last() {
                if top.v <= c.u {
                    open.pop();
                } else {
                    break;
                }
            }
            if let Some(top) = open.last() {
                if top.u < c.u && c.v > top.v {
                    return Err(Error::CrossingChords(Box::new([top.u, top.v, c.u, c.v])));
                }
            }
            open.push(*c);
        }
        chords.sort_unstable();
        Ok(Self { chords })
    }

    /// The chords in sorted order.
    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }
}

impl TryFrom<Vec<Chord>> for Lamination {
    type Error = Error;
    fn try_from(chords: Vec<Chord>) -> Result<Self> {
        Self::new(chords)
    }
}

impl From<Lamination> for Vec<Chord> {
    fn from(l: Lamination) -> Self {
        l.chords
    }
}

/// The step lamination process `L_0, …, L_n` of a minimal factorisation:
/// `L_0 = {[[0, 0]]}`, `L_k` adds the chord `[[a_k/n, b_k/n]]`, and
/// `L_n = L_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepLaminationProcess {
    pub n: usize,
    pub snapshots: Vec<Lamination>,
}

impl StepLaminationProcess {
    /// Snapshot at continuous time `t` in `[0, 1]`, i.e. `L_{⌊nt⌋}`.
    pub fn at_time(&self, t: f64) -> Option<&Lamination> {
        if !(0.0..=1.0).contains(&t) {
            return None;
        }
        let k = ((self.n as f64 * t).floor() as usize).min(self.n);
        self.snapshots.get(k)
    }
}

/// Chord of the `k`-th transposition (0-based), `[[a/n, b/n]]`.
pub fn factorisation_chord(f: &Factorisation, idx: usize) -> Result<Chord> {
    let t = f.taus().get(idx).ok_or(Error::IndexOutOfRange(idx))?;
    let n = f.n() as i128;
    Chord::new(rat(t.a() as i128, n), rat(t.b() as i128, n))
}

/// Snapshot `L_k` of the step process without building every stage.
pub fn lamination_snapshot(f: &Factorisation, k: usize) -> Result<Lamination> {
    if !is_cycle_factorisation(f) {
        return Err(Error::NotCycle);
    }
    if k > f.n() {
        return Err(Error::IndexOutOfRange(k));
    }
    if k == 0 {
        return Lamination::new(vec![Chord::point(Rational::zero())?]);
    }
    let upto = k.min(f.n() - 1);
    let chords = (0..upto).map(|i| factorisation_chord(f, i)).collect::<Result<Vec<_>>>()?;
    Lamination::new(chords)
}

/// The full step lamination process; every snapshot is validated
/// non-crossing (the final one suffices, the others are subsets).
pub fn discrete_lamination_process(f: &Factorisation) -> Result<StepLaminationProcess> {
    if !is_cycle_factorisation(f) {
        return Err(Error::NotCycle);
    }
    let n = f.n();
    let mut snapshots = Vec::with_capacity(n + 1);
    snapshots.push(Lamination::new(vec![Chord::point(Rational::zero())?])?);
    let mut acc: Vec<Chord> = Vec::new();
    for idx in 0..n.saturating_sub(1) {
        acc.push(factorisation_chord(f, idx)?);
        let mut sorted = acc.clone();
        sorted.sort_unstable();
        snapshots.push(Lamination { chords: sorted });
    }
    // Validate the largest snapshot once; crossing chords would already be
    // present there.
    Lamination::new(acc)?;
    if n >= 2 {
        snapshots.push(snapshots[n - 1].clone());
    } else {
        snapshots.push(snapshots[0].clone());
    }
    Ok(StepLaminationProcess { n, snapshots })
}

/// The interpolated Łukasiewicz excursion `f_n(t) = S_{(n-1)t}` of a tree
/// with `n` vertices, with exact rational interpolation queries.
///
/// Only `S_0, …, S_{n-1}` enter the excursion (the final step to `-1` lies
/// outside its domain); `f_n(0) = f_n(1) = 0` and `f_n >= 0`. Degenerate
/// flat stretches are legal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkExcursion {
    values: Vec<i64>,
}

impl WalkExcursion {
    pub fn from_tree(t: &PlaneTree) -> Self {
        Self::from_path(&lukasiewicz_path(t))
    }

    pub fn from_path(path: &LukaPath) -> Self {
        let n = path.n();
        Self { values: path.values()[..n].to_vec() }
    }

    /// Number of tree vertices; the walk has lattice points `0, …, n-1`.
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Walk values at the lattice points.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `f_n(t)` for `t` in `[0, 1]`, by linear interpolation between
    /// lattice points `j/(n-1)`.
    pub fn query(&self, t: Rational) -> Rational {
        assert!(t >= Rational::zero() && t <= Rational::one(), "query outside [0, 1]");
        let n = self.n();
        if n == 1 {
            return Rational::zero();
        }
        let x = t * rat((n - 1) as i128, 1);
        let j = x.floor().to_integer();
        let ju = j as usize;
        if Rational::from_integer(j) == x {
            return Rational::from_integer(self.values[ju] as i128);
        }
        let s0 = self.values[ju] as i128;
        let s1 = self.values[ju + 1] as i128;
        Rational::from_integer(s0) + (x - Rational::from_integer(j)) * rat(s1 - s0, 1)
    }

    /// Exact minimum of the excursion over `[u, v]`.
    pub fn min_on(&self, u: Rational, v: Rational) -> Rational {
        let n = self.n();
        let mut best = self.query(u).min(self.query(v));
        if n >= 2 {
            let scale = rat((n - 1) as i128, 1);
            let lo = (u * scale).floor().to_integer() + 1;
            let hi = (v * scale).ceil().to_integer() - 1;
            for j in lo..=hi {
                best = best.min(Rational::from_integer(self.values[j as usize] as i128));
            }
        }
        best
    }
}

/// Per-index sibling and rank counts of a decreasing factorisation:
/// `s(i)` is the number of transpositions sharing the smaller endpoint
/// `a_i`, `r(i)` how many of them occur at or before `i`, and
/// `h(i) = (r(i)-2)/(s(i)-1)` once `r(i) >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankData {
    entries: Vec<RankEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankEntry {
    pub a: usize,
    pub b: usize,
    pub siblings: usize,
    pub rank: usize,
}

impl RankData {
    pub fn entries(&self) -> &[RankEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `h(i) = (r(i)-2)/(s(i)-1)`, defined when `r(i) >= 2`; lies in `[0, 1)`.
    pub fn h(&self, idx: usize) -> Option<Rational> {
        let e = self.entries.get(idx)?;
        if e.rank < 2 {
            return None;
        }
        Some(rat(e.rank as i128 - 2, e.siblings as i128 - 1))
    }
}

/// Sibling and rank counts for every index of a decreasing factorisation.
pub fn rank_data(f: &Factorisation) -> Result<RankData> {
    if !monotone_class(f).is_decreasing() {
        return Err(Error::NotMonotone { expected: "decreasing" });
    }
    let a = f.a_values();
    let b = f.b_values();
    let m = a.len();
    let mut entries = Vec::with_capacity(m);
    let mut start = 0;
    while start < m {
        let mut end = start;
        while end < m && a[end] == a[start] {
            end += 1;
        }
        for idx in start..end {
            entries.push(RankEntry {
                a: a[idx],
                b: b[idx],
                siblings: end - start,
                rank: idx - start + 1,
            });
        }
        start = end;
    }
    Ok(RankData { entries })
}

/// The good cord `c'_i = [[(a_i - h(i))/(n-1), (b_i - 2)/(n-1)]]` of the
/// excursion, defined for 0-based indices with `r(i) >= 2`.
pub fn good_cord_for_index(f: &Factorisation, idx: usize) -> Result<Chord> {
    let rd = rank_data(f)?;
    good_cord_from_rank(f.n(), &rd, idx)
}

fn good_cord_from_rank(n: usize, rd: &RankData, idx: usize) -> Result<Chord> {
    let e = *rd.entries().get(idx).ok_or(Error::IndexOutOfRange(idx))?;
    let h = rd.h(idx).ok_or(Error::RankTooSmall)?;
    let den = rat((n - 1) as i128, 1);
    Chord::new(
        (Rational::from_integer(e.a as i128) - h) / den,
        rat(e.b as i128 - 2, (n - 1) as i128),
    )
}

/// All `(index, c'_index)` pairs of a decreasing factorisation, in index
/// order.
pub fn good_cord_family(f: &Factorisation) -> Result<Vec<(usize, Chord)>> {
    let rd = rank_data(f)?;
    let mut out = Vec::new();
    for idx in 0..rd.len() {
        if rd.h(idx).is_some() {
            out.push((idx, good_cord_from_rank(f.n(), &rd, idx)?));
        }
    }
    Ok(out)
}

/// Is `[[u, v]]` a good cord of the excursion: a cord (`w(u) = w(v) =` the
/// minimum over `[u, v]`) that extends neither left nor right and whose
/// right endpoint lies on the lattice `i/(n-1)`?
pub fn is_good_cord(w: &WalkExcursion, c: &Chord) -> bool {
    let n = w.n();
    if n == 1 {
        return c.u.is_zero() && c.v.is_zero();
    }
    let scale = rat((n - 1) as i128, 1);
    let m = w.query(c.u);
    if w.query(c.v) != m || w.min_on(c.u, c.v) != m {
        return false;
    }
    // right endpoint on the lattice
    let xv = c.v * scale;
    let iv = xv.floor().to_integer();
    if Rational::from_integer(iv) != xv {
        return false;
    }
    // no right extension: the walk must leave level m downwards at v
    let iv = iv as usize;
    if iv < n - 1 && self_at(w, iv + 1) >= m {
        return false;
    }
    // no left extension: the walk must sit strictly below m just left of u
    let xu = c.u * scale;
    let ju = xu.floor().to_integer();
    if Rational::from_integer(ju) == xu {
        let ju = ju as usize;
        if ju > 0 && self_at(w, ju - 1) >= m {
            return false;
        }
    } else {
        let ju = ju as usize;
        if w.values()[ju + 1] <= w.values()[ju] {
            return false; // flat or falling segment through u
        }
    }
    true
}

fn self_at(w: &WalkExcursion, j: usize) -> Rational {
    Rational::from_integer(w.values()[j] as i128)
}

/// All good cords of the excursion, sorted by left endpoint.
///
/// Right endpoints of good cords are exactly the lattice points followed
/// by a down-step, plus the endpoint `1`; for each the left endpoint is
/// where the walk last rose through the level, located via a
/// previous-smaller-value scan. The degenerate single-vertex excursion
/// yields `{[[0, 0]]}`.
pub fn enumerate_good_cords(w: &WalkExcursion) -> Vec<Chord> {
    let n = w.n();
    if n == 1 {
        return vec![Chord::point(Rational::zero()).expect("0 in range")];
    }
    let s = w.values();
    // prev_smaller[y]: nearest p < y with S_p < S_y
    let mut prev_smaller: Vec<Option<usize>> = vec![None; n];
    let mut stack: Vec<usize> = Vec::new();
    for y in 0..n {
        while let Some(&top) = stack.last() {
            if s[top] >= s[y] {
                stack.pop();
            } else {
                break;
            }
        }
        prev_smaller[y] = stack.last().copied();
        stack.push(y);
    }
    let den = (n - 1) as i128;
    let mut out = Vec::new();
    for y in 0..n {
        let is_candidate = if y + 1 < n { s[y + 1] == s[y] - 1 } else { true };
        if !is_candidate {
            continue;
        }
        let m = s[y];
        let u = match prev_smaller[y] {
            None => Rational::zero(),
            Some(p) => {
                let cross = rat((m - s[p]) as i128, (s[p + 1] - s[p]) as i128);
                (Rational::from_integer(p as i128) + cross) / rat(den, 1)
            }
        };
        let c = Chord::new(u, rat(y as i128, den)).expect("walk endpoints lie in [0, 1]");
        debug_assert!(is_good_cord(w, &c));
        out.push(c);
    }
    out.sort_unstable();
    out
}

/// The good-cord lamination at level `s`: `{[[1, 1]]}` together with every
/// good cord whose left endpoint is at least `1 - s`.
pub fn good_cord_lamination(w: &WalkExcursion, s: Rational) -> Result<Lamination> {
    let threshold = Rational::one() - s;
    let mut chords = vec![Chord::point(Rational::one())?];
    chords.extend(enumerate_good_cords(w).into_iter().filter(|c| c.u >= threshold));
    Lamination::new(chords)
}

/// The piecewise-linear alignment time change of a decreasing
/// factorisation: breakpoints `(i/n, 1 - (a_i - h(i))/(n-1))` at the
/// 1-based indices with `r(i) >= 2`, pinned to `(0,0)` and `(1,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[[i128; 2]; 2]>", into = "Vec<[[i128; 2]; 2]>")]
pub struct TimeChange {
    breakpoints: Vec<(Rational, Rational)>,
}

impl TryFrom<Vec<[[i128; 2]; 2]>> for TimeChange {
    type Error = Error;
    fn try_from(raw: Vec<[[i128; 2]; 2]>) -> Result<Self> {
        let mut breakpoints = Vec::with_capacity(raw.len());
        for bp in raw {
            if bp[0][1] == 0 || bp[1][1] == 0 {
                return Err(Error::BadConfig("zero denominator in time change".into()));
            }
            breakpoints.push((rat(bp[0][0], bp[0][1]), rat(bp[1][0], bp[1][1])));
        }
        if breakpoints.len() < 2 {
            return Err(Error::BadConfig("time change needs both endpoints".into()));
        }
        for w in breakpoints.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::TimeChangeNotIncreasing(Box::new(w[1].0)));
            }
        }
        Ok(Self { breakpoints })
    }
}

impl From<TimeChange> for Vec<[[i128; 2]; 2]> {
    fn from(tc: TimeChange) -> Self {
        tc.breakpoints
            .iter()
            .map(|&(t, y)| [[*t.numer(), *t.denom()], [*y.numer(), *y.denom()]])
            .collect()
    }
}

impl TimeChange {
    /// Breakpoints `(t, φ(t))`, strictly increasing in both coordinates.
    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    /// `φ(t)` by linear interpolation.
    pub fn eval(&self, t: Rational) -> Rational {
        assert!(t >= Rational::zero() && t <= Rational::one(), "eval outside [0, 1]");
        let pts = &self.breakpoints;
        let hi = pts.partition_point(|&(x, _)| x < t);
        if hi < pts.len() && pts[hi].0 == t {
            return pts[hi].1;
        }
        let (x0, y0) = pts[hi - 1];
        let (x1, y1) = pts[hi];
        y0 + (t - x0) * (y1 - y0) / (x1 - x0)
    }

    /// Exact `max |φ - Id|`; for a piecewise-linear φ against the identity
    /// the maximum sits at a breakpoint.
    pub fn sup_dev_from_identity(&self) -> Rational {
        self.breakpoints
            .iter()
            .map(|&(x, y)| (y - x).abs())
            .max()
            .expect("breakpoints include the endpoints")
    }
}

/// Builds the alignment time change of a decreasing factorisation,
/// reporting (never repairing) any monotonicity violation.
pub fn alignment_time_change(f: &Factorisation) -> Result<TimeChange> {
    let rd = rank_data(f)?;
    let n = f.n() as i128;
    let mut breakpoints = vec![(Rational::zero(), Rational::zero())];
    for idx in 0..rd.len() {
        if let Some(h) = rd.h(idx) {
            let e = rd.entries()[idx];
            let t = rat(idx as i128 + 1, n);
            let phi = Rational::one()
                - (Rational::from_integer(e.a as i128) - h) / rat(n - 1, 1);
            breakpoints.push((t, phi));
        }
    }
    breakpoints.push((Rational::one(), Rational::one()));
    for w in breakpoints.windows(2) {
        if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
            return Err(Error::TimeChangeNotIncreasing(Box::new(w[1].0)));
        }
    }
    Ok(TimeChange { breakpoints })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::{decreasing_factorisation_of_tree, tree_of_decreasing_factorisation};
    use crate::tree::{enumerate_plane_trees, sample_uniform_plane_tree};

    fn r(n: i128, d: i128) -> Rational {
        rat(n, d)
    }

    fn chord(un: i128, ud: i128, vn: i128, vd: i128) -> Chord {
        Chord::new(r(un, ud), r(vn, vd)).unwrap()
    }

    fn size10_decreasing() -> Factorisation {
        Factorisation::from_pairs(
            10,
            &[(8, 9), (8, 10), (7, 8), (2, 3), (2, 4), (2, 5), (1, 2), (1, 6), (1, 7)],
        )
        .unwrap()
    }

    #[test]
    fn crossing_predicate() {
        assert!(chords_cross(&chord(0, 1, 1, 2), &chord(1, 4, 3, 4)));
        assert!(!chords_cross(&chord(0, 1, 1, 2), &chord(1, 8, 1, 4)));
        assert!(!chords_cross(&chord(0, 1, 1, 2), &chord(1, 2, 3, 4)));
        assert!(!chords_cross(&chord(1, 4, 3, 4), &chord(1, 4, 3, 4)));
        assert!(!chords_cross(&chord(0, 1, 1, 2), &chord(0, 1, 1, 4)));
        assert!(!chords_cross(&chord(1, 4, 1, 2), &chord(1, 8, 1, 2)));
    }

    #[test]
    fn lamination_rejects_crossing() {
        let good = Lamination::new(vec![chord(0, 1, 1, 2), chord(1, 8, 1, 4)]);
        assert!(good.is_ok());
        let bad = Lamination::new(vec![chord(0, 1, 1, 2), chord(1, 4, 3, 4)]);
        assert!(matches!(bad, Err(Error::CrossingChords(..))));
    }

    #[test]
    fn trivial_chords() {
        assert!(chord(1, 2, 1, 2).is_trivial());
        assert!(chord(0, 1, 1, 1).is_trivial());
        assert!(!chord(0, 1, 1, 2).is_trivial());
    }

    #[test]
    fn process_small_example() {
        let f = Factorisation::from_pairs(3, &[(2, 3), (1, 2)]).unwrap();
        let p = discrete_lamination_process(&f).unwrap();
        assert_eq!(p.snapshots.len(), 4);
        assert_eq!(p.snapshots[0].chords(), &[chord(0, 1, 0, 1)]);
        assert_eq!(p.snapshots[1].chords(), &[chord(2, 3, 1, 1)]);
        assert_eq!(p.snapshots[2].chords(), &[chord(1, 3, 2, 3), chord(2, 3, 1, 1)]);
        assert_eq!(p.snapshots[3], p.snapshots[2]);
        assert_eq!(p.at_time(0.0).unwrap(), &p.snapshots[0]);
        assert_eq!(p.at_time(1.0).unwrap(), &p.snapshots[3]);
    }

    #[test]
    fn process_size10_contains_expected_chords() {
        let p = discrete_lamination_process(&size10_decreasing()).unwrap();
        let l9 = &p.snapshots[9];
        assert!(l9.chords().contains(&chord(1, 10, 2, 10)));
        assert!(l9.chords().contains(&chord(8, 10, 1, 1)));
    }

    #[test]
    fn process_rejects_non_cycle() {
        let f = Factorisation::from_pairs(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(discrete_lamination_process(&f), Err(Error::NotCycle));
    }

    #[test]
    fn rank_data_examples() {
        let f = Factorisation::from_pairs(3, &[(1, 2), (1, 3)]).unwrap();
        let rd = rank_data(&f).unwrap();
        assert_eq!(rd.entries()[0], RankEntry { a: 1, b: 2, siblings: 2, rank: 1 });
        assert_eq!(rd.entries()[1], RankEntry { a: 1, b: 3, siblings: 2, rank: 2 });
        assert_eq!(rd.h(0), None);
        assert_eq!(rd.h(1), Some(Rational::zero()));

        let g = Factorisation::from_pairs(3, &[(2, 3), (1, 2)]).unwrap();
        let rd = rank_data(&g).unwrap();
        assert!(rd.entries().iter().all(|e| e.siblings == 1 && e.rank == 1));
        assert!(rd.h(0).is_none() && rd.h(1).is_none());

        let rd = rank_data(&size10_decreasing()).unwrap();
        assert_eq!(rd.entries()[5], RankEntry { a: 2, b: 5, siblings: 3, rank: 3 });
        assert_eq!(rd.h(5), Some(r(1, 2)));
    }

    #[test]
    fn good_cord_formula_examples() {
        let cherry = Factorisation::from_pairs(3, &[(1, 2), (1, 3)]).unwrap();
        assert_eq!(good_cord_for_index(&cherry, 1).unwrap(), chord(1, 2, 1, 2));
        assert_eq!(good_cord_for_index(&cherry, 0), Err(Error::RankTooSmall));
        assert_eq!(
            good_cord_for_index(&size10_decreasing(), 5).unwrap(),
            chord(1, 6, 1, 3)
        );
    }

    #[test]
    fn good_cord_predicate_examples() {
        let cherry = PlaneTree::from_children_counts(vec![2, 0, 0]).unwrap();
        let w = WalkExcursion::from_tree(&cherry);
        assert!(is_good_cord(&w, &chord(0, 1, 1, 1)));
        assert!(is_good_cord(&w, &chord(1, 2, 1, 2)));
        assert!(!is_good_cord(&w, &chord(1, 4, 3, 4)));

        let path = PlaneTree::from_children_counts(vec![1, 1, 0]).unwrap();
        let w = WalkExcursion::from_tree(&path);
        assert!(is_good_cord(&w, &chord(0, 1, 1, 1)));
        assert!(!is_good_cord(&w, &chord(0, 1, 1, 2)));
    }

    #[test]
    fn good_cord_scan_examples() {
        let cherry = PlaneTree::from_children_counts(vec![2, 0, 0]).unwrap();
        let w = WalkExcursion::from_tree(&cherry);
        assert_eq!(
            enumerate_good_cords(&w),
            vec![chord(0, 1, 1, 1), chord(1, 2, 1, 2)]
        );
        let single = PlaneTree::from_children_counts(vec![0]).unwrap();
        let w1 = WalkExcursion::from_tree(&single);
        assert_eq!(enumerate_good_cords(&w1), vec![chord(0, 1, 0, 1)]);
    }

    /// Non-trivial good cords from the walk scan coincide with the
    /// non-trivial formula family; in the trivial class the scan holds
    /// exactly one extra cord, `[[0, 1]]`.
    fn check_scan_formula_agreement(f: &Factorisation) {
        let t = tree_of_decreasing_factorisation(f).unwrap();
        let w = WalkExcursion::from_tree(&t);
        let scan = enumerate_good_cords(&w);
        let family: Vec<Chord> = good_cord_family(f).unwrap().into_iter().map(|(_, c)| c).collect();
        for c in &family {
            assert!(is_good_cord(&w, c), "formula cord fails the predicate: {c:?}");
        }
        let mut scan_nontrivial: Vec<_> = scan.iter().copied().filter(|c| !c.is_trivial()).collect();
        let mut family_nontrivial: Vec<_> = family.iter().copied().filter(|c| !c.is_trivial()).collect();
        scan_nontrivial.sort_unstable();
        family_nontrivial.sort_unstable();
        assert_eq!(scan_nontrivial, family_nontrivial);
        let mut scan_trivial: Vec<_> = scan.iter().copied().filter(|c| c.is_trivial()).collect();
        let mut family_trivial: Vec<_> = family.iter().copied().filter(|c| c.is_trivial()).collect();
        family_trivial.push(Chord::new(Rational::zero(), Rational::one()).unwrap());
        scan_trivial.sort_unstable();
        family_trivial.sort_unstable();
        assert_eq!(scan_trivial, family_trivial);
    }

    #[test]
    fn scan_matches_formula_exhaustively() {
        for n in 2..=8 {
            for t in enumerate_plane_trees(n).unwrap() {
                check_scan_formula_agreement(&decreasing_factorisation_of_tree(&t));
            }
        }
    }

    #[test]
    fn scan_matches_formula_random() {
        for seed in 0..30 {
            let n = 20 + (seed as usize * 13) % 180;
            let t = sample_uniform_plane_tree(n, 9000 + seed).unwrap();
            check_scan_formula_agreement(&decreasing_factorisation_of_tree(&t));
        }
    }

    #[test]
    fn excursion_cords_do_not_cross() {
        for seed in 0..10 {
            let t = sample_uniform_plane_tree(60, 333 + seed).unwrap();
            let w = WalkExcursion::from_tree(&t);
            let cords = enumerate_good_cords(&w);
            Lamination::new(cords).expect("good cords must be non-crossing");
        }
    }

    #[test]
    fn time_change_cherry() {
        let f = Factorisation::from_pairs(3, &[(1, 2), (1, 3)]).unwrap();
        let tc = alignment_time_change(&f).unwrap();
        assert_eq!(
            tc.breakpoints(),
            &[
                (Rational::zero(), Rational::zero()),
                (r(2, 3), r(1, 2)),
                (Rational::one(), Rational::one()),
            ]
        );
        assert_eq!(tc.eval(r(1, 3)), r(1, 4));
        assert_eq!(tc.sup_dev_from_identity(), r(1, 6));
    }

    #[test]
    fn time_change_rank_one_is_identity_segment() {
        let f = Factorisation::from_pairs(3, &[(2, 3), (1, 2)]).unwrap();
        let tc = alignment_time_change(&f).unwrap();
        assert_eq!(tc.breakpoints().len(), 2);
        assert_eq!(tc.sup_dev_from_identity(), Rational::zero());
    }

    #[test]
    fn time_change_fifteen_vertex_example() {
        // Fifteen-vertex worked example: root with children of counts
        // (1, 4, 0); the second child carries a 3-branch, a singleton
        // chain and a cherry. Breakpoints land at every repeated smaller
        // endpoint.
        let t = PlaneTree::from_children_counts(vec![3, 1, 0, 4, 3, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0])
            .unwrap();
        let f = decreasing_factorisation_of_tree(&t);
        assert_eq!(
            f.taus().iter().map(|tau| (tau.a(), tau.b())).collect::<Vec<_>>(),
            vec![
                (12, 13), (12, 14), (8, 9), (5, 6), (5, 7), (5, 8), (4, 5),
                (4, 10), (4, 11), (4, 12), (2, 3), (1, 2), (1, 4), (1, 15),
            ]
        );
        let tc = alignment_time_change(&f).unwrap();
        let expected = [
            (r(0, 1), r(0, 1)),
            (r(2, 15), r(1, 7)),
            (r(5, 15), r(9, 14)),
            (r(6, 15), r(19, 28)),
            (r(8, 15), r(5, 7)),
            (r(9, 15), r(31, 42)),
            (r(10, 15), r(16, 21)),
            (r(13, 15), r(13, 14)),
            (r(14, 15), r(27, 28)),
            (r(1, 1), r(1, 1)),
        ];
        assert_eq!(tc.breakpoints(), &expected);
    }

    #[test]
    fn time_change_stays_near_identity_on_large_samples() {
        // Diagnostic scale check, not a contract: deviations at n = 1000
        // sit well below 0.2 for typical draws.
        for seed in 0..5 {
            let t = sample_uniform_plane_tree(1000, 2024 + seed).unwrap();
            let f = decreasing_factorisation_of_tree(&t);
            let sup = alignment_time_change(&f).unwrap().sup_dev_from_identity();
            assert!(sup < r(1, 5), "sup deviation {sup} at seed {seed}");
        }
    }

    #[test]
    fn time_change_strictly_increasing_on_samples() {
        for seed in 0..20 {
            let t = sample_uniform_plane_tree(300, 71 + seed).unwrap();
            let f = decreasing_factorisation_of_tree(&t);
            let tc = alignment_time_change(&f).unwrap();
            assert!(tc
                .breakpoints()
                .windows(2)
                .all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
        }
    }

    #[test]
    fn excursion_query_is_exact() {
        let t = PlaneTree::from_children_counts(vec![2, 0, 0]).unwrap();
        let w = WalkExcursion::from_tree(&t);
        assert_eq!(w.query(Rational::zero()), Rational::zero());
        assert_eq!(w.query(r(1, 2)), Rational::one());
        assert_eq!(w.query(r(1, 4)), r(1, 2));
        assert_eq!(w.query(Rational::one()), Rational::zero());
        assert_eq!(w.min_on(r(1, 4), r(3, 4)), r(1, 2));
        assert_eq!(w.min_on(Rational::zero(), Rational::one()), Rational::zero());
    }

    #[test]
    fn good_cords_under_time_change_match_prefixes() {
        // G at φ((idx+1)/n) holds exactly the formula cords up to idx.
        let t = sample_uniform_plane_tree(40, 5).unwrap();
        let f = decreasing_factorisation_of_tree(&t);
        let w = WalkExcursion::from_tree(&t);
        let tc = alignment_time_change(&f).unwrap();
        let family = good_cord_family(&f).unwrap();
        let n = f.n() as i128;
        for i in 1..f.n() {
            let s = tc.eval(rat(i as i128, n));
            let g = good_cord_lamination(&w, s).unwrap();
            let mut expected: Vec<Chord> =
                family.iter().filter(|(idx, _)| *idx < i).map(|&(_, c)| c).collect();
            expected.push(Chord::point(Rational::one()).unwrap());
            let expected = Lamination::new(expected).unwrap();
            assert_eq!(g, expected, "i = {i}");
        }
    }
}
