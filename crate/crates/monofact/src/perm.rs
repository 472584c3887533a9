//! Transposition algebra and validation of minimal factorisations.
//!
//! A [`Factorisation`] is an ordered sequence of `n-1` transpositions that
//! claims to multiply to the full cycle `(1 2 … n)`, the first listed
//! transposition being applied first. This module validates that claim,
//! classifies the monotonicity of the smaller endpoints, performs the
//! reductions to increasing parking functions and to 231-avoiding words,
//! and provides a brute-force enumeration oracle for small sizes.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A transposition `(a b)` on positive integers, normalised so `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize)", into = "(usize, usize)")]
pub struct Transposition {
    a: usize,
    b: usize,
}

impl Transposition {
    /// Builds `(a b)`, swapping the endpoints if needed so `a < b`.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a == b {
            return Err(Error::BadTransposition(a, b));
        }
        Ok(Self { a: a.min(b), b: a.max(b) })
    }

    /// Smaller endpoint.
    pub fn a(&self) -> usize {
        self.a
    }

    /// Larger endpoint.
    pub fn b(&self) -> usize {
        self.b
    }

    /// Image of `x` under the transposition.
    pub fn apply(&self, x: usize) -> usize {
        if x == self.a {
            self.b
        } else if x == self.b {
            self.a
        } else {
            x
        }
    }
}

impl TryFrom<(usize, usize)> for Transposition {
    type Error = Error;
    fn try_from(p: (usize, usize)) -> Result<Self> {
        Self::new(p.0, p.1)
    }
}

impl From<Transposition> for (usize, usize) {
    fn from(t: Transposition) -> Self {
        (t.a, t.b)
    }
}

/// Monotonicity class of the smaller endpoints `a_1, …, a_{n-1}`.
///
/// Monotonicity is weak: repeated values are allowed, and a constant
/// sequence is classified as [`MonotoneClass::Both`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonotoneClass {
    Decreasing,
    Increasing,
    Both,
    Neither,
}

impl MonotoneClass {
    /// True for `Decreasing` and `Both`.
    pub fn is_decreasing(self) -> bool {
        matches!(self, MonotoneClass::Decreasing | MonotoneClass::Both)
    }

    /// True for `Increasing` and `Both`.
    pub fn is_increasing(self) -> bool {
        matches!(self, MonotoneClass::Increasing | MonotoneClass::Both)
    }
}

/// An ordered sequence of `n-1` transpositions on `{1, …, n}`.
///
/// Construction only checks well-formedness (length and endpoint range).
/// Whether the product is the full cycle is a separate, total predicate,
/// [`is_cycle_factorisation`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factorisation {
    n: usize,
    taus: Vec<Transposition>,
}

impl Factorisation {
    /// Builds a well-formed candidate factorisation of size `n >= 1`.
    pub fn new(n: usize, taus: Vec<Transposition>) -> Result<Self> {
        if n == 0 {
            return Err(Error::SizeOutOfRange { n, lo: 1, hi: usize::MAX });
        }
        if taus.len() != n - 1 {
            return Err(Error::BadLength { n, got: taus.len() });
        }
        for t in &taus {
            if t.b() > n {
                return Err(Error::EndpointOutOfRange(t.b(), n));
            }
        }
        Ok(Self { n, taus })
    }

    /// Convenience constructor from `(a, b)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let taus = pairs
            .iter()
            .map(|&(a, b)| Transposition::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, taus)
    }

    /// Size of the ground set `{1, …, n}`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The transpositions, first applied first.
    pub fn taus(&self) -> &[Transposition] {
        &self.taus
    }

    /// Smaller endpoints `a_1, …, a_{n-1}`.
    pub fn a_values(&self) -> Vec<usize> {
        self.taus.iter().map(|t| t.a()).collect()
    }

    /// Larger endpoints `b_1, …, b_{n-1}`.
    pub fn b_values(&self) -> Vec<usize> {
        self.taus.iter().map(|t| t.b()).collect()
    }
}

/// Does `τ_{n-1} ∘ … ∘ τ_1` equal the cyclic permutation `i ↦ i + 1 (mod n)`?
///
/// The product is evaluated with `τ_1` applied first. Total on well-formed
/// input; the empty factorisation of size 1 is the identity on `{1}`, which
/// is the full cycle there.
pub fn is_cycle_factorisation(f: &Factorisation) -> bool {
    let n = f.n();
    // img[x-1] is the image of x under the product applied so far; pos[y-1]
    // is the preimage of y. Left-multiplying by (a b) swaps which inputs map
    // to a and b, an O(1) update.
    let mut img: Vec<usize> = (1..=n).collect();
    let mut pos: Vec<usize> = (1..=n).collect();
    for t in f.taus() {
        let (a, b) = (t.a(), t.b());
        let (pa, pb) = (pos[a - 1], pos[b - 1]);
        img[pa - 1] = b;
        img[pb - 1] = a;
        pos[a - 1] = pb;
        pos[b - 1] = pa;
    }
    (1..=n).all(|x| img[x - 1] == x % n + 1)
}

/// Classifies the weak monotonicity of the smaller endpoints.
pub fn monotone_class(f: &Factorisation) -> MonotoneClass {
    let a = f.a_values();
    let dec = a.windows(2).all(|w| w[0] >= w[1]);
    let inc = a.windows(2).all(|w| w[0] <= w[1]);
    match (dec, inc) {
        (true, true) => MonotoneClass::Both,
        (true, false) => MonotoneClass::Decreasing,
        (false, true) => MonotoneClass::Increasing,
        (false, false) => MonotoneClass::Neither,
    }
}

/// Reduction of a decreasing factorisation to its parking word
/// `(a_{n-1}, a_{n-2}, …, a_1)`.
///
/// For decreasing input the result is weakly increasing and is a parking
/// function; rejects non-decreasing input.
pub fn to_parking_word(f: &Factorisation) -> Result<Vec<usize>> {
    if !monotone_class(f).is_decreasing() {
        return Err(Error::NotMonotone { expected: "decreasing" });
    }
    Ok(f.taus.iter().rev().map(|t| t.a()).collect())
}

/// Reduction of a decreasing factorisation to the word
/// `(b_{n-1}, …, b_1)`, a 231-avoiding permutation of `{2, …, n}`.
pub fn to_231_word(f: &Factorisation) -> Result<Vec<usize>> {
    if !monotone_class(f).is_decreasing() {
        return Err(Error::NotMonotone { expected: "decreasing" });
    }
    Ok(f.taus.iter().rev().map(|t| t.b()).collect())
}

/// Does the word avoid the pattern 231, i.e. is there no `i < j < k` with
/// `w_k < w_i < w_j`? Entries must be distinct.
///
/// Runs in `O(len)`: `w` avoids 231 exactly when its reversal avoids 132,
/// which a single right-to-left stack scan detects.
pub fn is_231_avoiding(w: &[usize]) -> Result<bool> {
    let mut seen = w.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::DuplicateEntries);
    }
    // Scan the reversal from its right end (= w from its left end), keeping
    // a decreasing stack and the largest value popped below some stack top.
    let mut stack: Vec<usize> = Vec::new();
    let mut middle: Option<usize> = None;
    for &x in w {
        if let Some(m) = middle {
            if x < m {
                return Ok(false);
            }
        }
        while let Some(&top) = stack.last() {
            if top < x {
                stack.pop();
                middle = Some(middle.map_or(top, |m| m.max(top)));
            } else {
                break;
            }
        }
        stack.push(x);
    }
    Ok(true)
}

/// Is `w` weakly increasing with `w_i <= i` (1-based)?
pub fn is_increasing_parking_function(w: &[usize]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1]) && w.iter().enumerate().all(|(i, &x)| x >= 1 && x <= i + 1)
}

/// Largest size accepted by [`enumerate_minimal_factorisations`]; the count
/// grows as `n^(n-2)`, so the oracle is capped to keep test runs short.
pub const MAX_ORACLE_N: usize = 7;

/// Brute-force oracle: all minimal factorisations of size `n`, in
/// lexicographic order of their transposition sequences.
///
/// Searches every sequence of `n-1` transpositions whose endpoint graph can
/// still become a spanning tree (a product of `n-1` transpositions is the
/// full cycle only if every element appears and the endpoint graph is
/// connected, hence a tree) and keeps those whose product is the cycle.
/// Supported for `2 <= n <= 7`.
pub fn enumerate_minimal_factorisations(n: usize) -> Result<Vec<Factorisation>> {
    if !(2..=MAX_ORACLE_N).contains(&n) {
        return Err(Error::SizeOutOfRange { n, lo: 2, hi: MAX_ORACLE_N });
    }
    let mut all_taus = Vec::new();
    for a in 1..=n {
        for b in (a + 1)..=n {
            all_taus.push(Transposition::new(a, b).expect("a < b"));
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n - 1);
    let mut dsu: Vec<usize> = (0..=n).collect();
    search(n, &all_taus, &mut chosen, &mut dsu, &mut out);
    Ok(out)
}

fn dsu_find(dsu: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while dsu[r] != r {
        r = dsu[r];
    }
    let mut c = x;
    while dsu[c] != r {
        let next = dsu[c];
        dsu[c] = r;
        c = next;
    }
    r
}

fn search(
    n: usize,
    all_taus: &[Transposition],
    chosen: &mut Vec<Transposition>,
    dsu: &mut Vec<usize>,
    out: &mut Vec<Factorisation>,
) {
    if chosen.len() == n - 1 {
        let f = Factorisation::new(n, chosen.clone()).expect("well-formed by construction");
        if is_cycle_factorisation(&f) {
            out.push(f);
        }
        return;
    }
    for &t in all_taus {
        let ra = dsu_find(dsu, t.a());
        let rb = dsu_find(dsu, t.b());
        if ra == rb {
            continue; // would close a cycle in the endpoint graph
        }
        let saved = dsu.clone();
        dsu[ra] = rb;
        chosen.push(t);
        search(n, all_taus, chosen, dsu, out);
        chosen.pop();
        *dsu = saved;
    }
}
