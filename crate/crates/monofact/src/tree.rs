//! Plane trees in canonical children-count form.
//!
//! A plane tree on `n` vertices is stored as the sequence of children
//! counts of its vertices in lexicographic (depth-first) order. This makes
//! equality, hashing and sampling trivial; parent arrays, children lists
//! and heights are derived views. The associated Łukasiewicz path is the
//! walk `S_k = (c_1 + … + c_k) - k`, so `S_0 = 0`, `S_n = -1` and
//! `S_k >= 0` before the end.
//!
//! The number of plane trees with `n` vertices is the Catalan number
//! `C(n-1) = 1, 1, 2, 5, 14, …`; equivalently `(2n)!/(n!(n+1)!)` counts the
//! trees with `n + 1` vertices, so the two closed forms differ by an index
//! shift. Enumeration here follows `C(n-1)`, which the exhaustive counts
//! confirm.

use crate::rng::{rng_from_seed, shuffle};
use crate::{Error, Result};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A plane tree, canonically the children counts in depth-first order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PlaneTree {
    counts: Vec<usize>,
}

impl PlaneTree {
    /// Validates the Łukasiewicz positivity condition: counts sum to `n-1`
    /// and every strict prefix of `(c_i - 1)` sums to at least 0.
    pub fn from_children_counts(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::BadChildrenCounts);
        }
        let n = counts.len();
        let mut walk: i64 = 0;
        for (k, &c) in counts.iter().enumerate() {
            walk += c as i64 - 1;
            if k + 1 < n && walk < 0 {
                return Err(Error::BadChildrenCounts);
            }
        }
        if walk != -1 {
            return Err(Error::BadChildrenCounts);
        }
        Ok(Self { counts })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.counts.len()
    }

    /// Children counts in lexicographic order.
    pub fn children_counts(&self) -> &[usize] {
        &self.counts
    }

    /// Parent of each vertex in lexicographic order; the root has none.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut parents = vec![None; self.n()];
        let mut stack: Vec<(usize, usize)> = vec![(0, self.counts[0])];
        for v in 1..self.n() {
            while let Some(&(_, 0)) = stack.last() {
                stack.pop();
            }
            let top = stack.last_mut().expect("prefix condition guarantees a parent");
            parents[v] = Some(top.0);
            top.1 -= 1;
            stack.push((v, self.counts[v]));
        }
        parents
    }

    /// Children of each vertex, left to right in plane order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children: Vec<Vec<usize>> =
            self.counts.iter().map(|&c| Vec::with_capacity(c)).collect();
        for (v, p) in self.parents().into_iter().enumerate() {
            if let Some(p) = p {
                children[p].push(v);
            }
        }
        children
    }

    /// Height of each vertex in lexicographic order, the root at height 0.
    pub fn heights(&self) -> Vec<usize> {
        let mut heights = vec![0usize; self.n()];
        for (v, p) in self.parents().into_iter().enumerate() {
            if let Some(p) = p {
                heights[v] = heights[p] + 1; // parents precede children in lex order
            }
        }
        heights
    }

    /// Size of the fringe subtree rooted at each vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let parents = self.parents();
        let mut sizes = vec![1usize; self.n()];
        for v in (1..self.n()).rev() {
            let p = parents[v].expect("non-root");
            sizes[p] += sizes[v];
        }
        sizes
    }
}

impl TryFrom<Vec<usize>> for PlaneTree {
    type Error = Error;
    fn try_from(counts: Vec<usize>) -> Result<Self> {
        Self::from_children_counts(counts)
    }
}

impl From<PlaneTree> for Vec<usize> {
    fn from(t: PlaneTree) -> Self {
        t.counts
    }
}

/// The walk `S_0, …, S_n` associated with a plane tree: `S_k + k` is the
/// number of edges stemming from the first `k` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct LukaPath {
    values: Vec<i64>,
}

impl LukaPath {
    /// Validates `S_0 = 0`, `S_n = -1`, `S_k >= 0` for `k < n` and steps
    /// at least `-1`.
    pub fn from_values(values: Vec<i64>) -> Result<Self> {
        let n = values.len().checked_sub(1).ok_or(Error::BadLukaPath)?;
        if n == 0 || values[0] != 0 || values[n] != -1 {
            return Err(Error::BadLukaPath);
        }
        if values[..n].iter().any(|&s| s < 0) {
            return Err(Error::BadLukaPath);
        }
        if values.windows(2).any(|w| w[1] - w[0] < -1) {
            return Err(Error::BadLukaPath);
        }
        Ok(Self { values })
    }

    /// The values `S_0, …, S_n`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Number of tree vertices (`values` has length `n + 1`).
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    /// Inverse of [`lukasiewicz_path`]: children counts are the step sizes
    /// plus one.
    pub fn to_plane_tree(&self) -> PlaneTree {
        let counts = self
            .values
            .windows(2)
            .map(|w| (w[1] - w[0] + 1) as usize)
            .collect();
        PlaneTree::from_children_counts(counts).expect("validated on construction")
    }
}

impl TryFrom<Vec<i64>> for LukaPath {
    type Error = Error;
    fn try_from(values: Vec<i64>) -> Result<Self> {
        Self::from_values(values)
    }
}

impl From<LukaPath> for Vec<i64> {
    fn from(p: LukaPath) -> Self {
        p.values
    }
}

/// Łukasiewicz path of a plane tree.
pub fn lukasiewicz_path(t: &PlaneTree) -> LukaPath {
    let mut values = Vec::with_capacity(t.n() + 1);
    let mut s: i64 = 0;
    values.push(s);
    for &c in t.children_counts() {
        s += c as i64 - 1;
        values.push(s);
    }
    LukaPath { values }
}

/// Largest size accepted by [`enumerate_plane_trees`].
pub const MAX_ENUMERATE_N: usize = 12;

/// Calls `visit` once per plane tree with `n` vertices, in lexicographic
/// order of the children-count sequences.
pub fn for_each_plane_tree(n: usize, mut visit: impl FnMut(&PlaneTree)) -> Result<()> {
    if !(1..=MAX_ENUMERATE_N).contains(&n) {
        return Err(Error::SizeOutOfRange { n, lo: 1, hi: MAX_ENUMERATE_N });
    }
    let mut counts = vec![0usize; n];
    descend(n, 0, 0, &mut counts, &mut visit);
    Ok(())
}

fn descend(n: usize, k: usize, assigned: usize, counts: &mut Vec<usize>, visit: &mut impl FnMut(&PlaneTree)) {
    if k == n {
        visit(&PlaneTree { counts: counts.clone() });
        return;
    }
    // After k+1 vertices the walk sits at assigned + c - (k+1); it must stay
    // non-negative before the last vertex and the total must reach n-1.
    let walk_floor = if k + 1 < n { k + 1 } else { k };
    for c in 0..=(n - 1 - assigned) {
        if assigned + c < walk_floor {
            continue;
        }
        counts[k] = c;
        descend(n, k + 1, assigned + c, counts, visit);
    }
    counts[k] = 0;
}

/// All plane trees with `n` vertices, `1 <= n <= 12`; the count is the
/// Catalan number `C(n-1)`.
pub fn enumerate_plane_trees(n: usize) -> Result<Vec<PlaneTree>> {
    let mut out = Vec::new();
    for_each_plane_tree(n, |t| out.push(t.clone()))?;
    Ok(out)
}

/// Exactly uniform plane tree with `n` vertices from a caller-provided
/// generator.
///
/// Samples a uniform arrangement of `n-1` up-steps and `n` down-steps and
/// applies the cycle-lemma rotation: exactly one cyclic rotation of a
/// `±1`-word with sum `-1` first hits `-1` at its end, namely the one
/// starting just after the first position where the prefix sum attains its
/// minimum. Runs of up-steps before each down-step are the children counts.
pub fn sample_uniform_plane_tree_with(n: usize, rng: &mut ChaCha8Rng) -> Result<PlaneTree> {
    if n == 0 {
        return Err(Error::SizeOutOfRange { n, lo: 1, hi: usize::MAX });
    }
    if n == 1 {
        return Ok(PlaneTree { counts: vec![0] });
    }
    let len = 2 * n - 1;
    let mut word = vec![false; len];
    for slot in word.iter_mut().take(n - 1) {
        *slot = true; // up-step
    }
    shuffle(rng, &mut word);

    let mut sum: i64 = 0;
    let mut min_sum = i64::MAX;
    let mut min_pos = 0;
    for (i, &up) in word.iter().enumerate() {
        sum += if up { 1 } else { -1 };
        if sum < min_sum {
            min_sum = sum;
            min_pos = i;
        }
    }
    let start = (min_pos + 1) % len;

    let mut counts = Vec::with_capacity(n);
    let mut ups = 0usize;
    for i in 0..len {
        if word[(start + i) % len] {
            ups += 1;
        } else {
            counts.push(ups);
            ups = 0;
        }
    }
    debug_assert_eq!(counts.len(), n);
    let tree = PlaneTree::from_children_counts(counts).expect("cycle lemma rotation is valid");
    Ok(tree)
}

/// Exactly uniform plane tree with `n` vertices, deterministic in `seed`.
pub fn sample_uniform_plane_tree(n: usize, seed: u64) -> Result<PlaneTree> {
    sample_uniform_plane_tree_with(n, &mut rng_from_seed(seed))
}

/// Height of each vertex in lexicographic order.
pub fn vertex_heights(t: &PlaneTree) -> Vec<usize> {
    t.heights()
}

/// Number of vertices with at least one child.
pub fn count_non_leaves(t: &PlaneTree) -> usize {
    t.children_counts().iter().filter(|&&c| c > 0).count()
}

/// Catalan number `C(m)` as u128; exact for every `m` this crate enumerates.
pub fn catalan(m: usize) -> u128 {
    let mut c: u128 = 1;
    for k in 0..m {
        c = c * 2 * (2 * k as u128 + 1) / (k as u128 + 2);
    }
    c
}
