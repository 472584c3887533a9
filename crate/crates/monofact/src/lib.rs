//! Monotone minimal factorisations of the full cycle `(1 2 … n)`.
//!
//! A minimal factorisation writes the cycle `(1 2 … n)` as an ordered product
//! of `n-1` transpositions, the first listed transposition being applied
//! first. When the smaller endpoints of the transpositions are weakly
//! decreasing (resp. increasing) the factorisation is called decreasing
//! (resp. increasing). Both families are in bijection with plane trees on
//! `n` vertices, and this crate implements those bijections together with:
//!
//! - transposition algebra, monotonicity classification and the reductions
//!   to increasing parking functions and 231-avoiding words ([`perm`]);
//! - plane trees, Łukasiewicz paths, exhaustive enumeration and an exactly
//!   uniform seeded sampler ([`tree`]);
//! - the edge-labelled tree encoding, the `Next` relabelling walk and the
//!   explicit decreasing/increasing labelling constructions ([`bijection`]);
//! - chord laminations of the unit disk, the step lamination process, good
//!   cords of the interpolated walk, the alignment time change and certified
//!   Hausdorff distances ([`lamination`]);
//! - statistical verification harnesses with exact small-size distribution
//!   tables ([`stats`]).
//!
//! Everything combinatorial is exact: chord endpoints, walk interpolation
//! and time-change breakpoints are rational numbers, and only final
//! Euclidean distance evaluations use floating point (with an explicit
//! sampling tolerance). All randomness is drawn from a fixed-stream ChaCha8
//! generator, so outputs are reproducible from `(seed, trial)` alone.

// index loops here usually walk several parallel per-vertex arrays
#![allow(clippy::needless_range_loop)]

pub mod bijection;
pub mod json;
pub mod lamination;
pub mod perm;
pub mod rng;
pub mod stats;
pub mod tree;

use thiserror::Error;

/// Exact rational scalar used for chord endpoints, walk values and
/// time-change breakpoints. `i128` keeps cross-multiplied comparisons with
/// denominators up to `n(n-1)(s-1)` far away from overflow.
pub type Rational = num_rational::Ratio<i128>;

/// Errors shared by all modules of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("transposition endpoints must be distinct and at least 1, got ({0}, {1})")]
    BadTransposition(usize, usize),
    #[error("factorisation of size {n} needs exactly {} transpositions, got {got}", n.saturating_sub(1))]
    BadLength { n: usize, got: usize },
    #[error("transposition endpoint {0} exceeds ground set size {1}")]
    EndpointOutOfRange(usize, usize),
    #[error("operation requires a {expected} factorisation")]
    NotMonotone { expected: &'static str },
    #[error("sequence is not a product representation of the full cycle")]
    NotCycle,
    #[error("transposition graph is not a tree")]
    NotATree,
    #[error("size {n} outside supported range {lo}..={hi}")]
    SizeOutOfRange { n: usize, lo: usize, hi: usize },
    #[error("sequence contains duplicate entries")]
    DuplicateEntries,
    #[error("children counts do not describe a plane tree")]
    BadChildrenCounts,
    #[error("walk is not a Łukasiewicz path")]
    BadLukaPath,
    #[error("edge labels are not a plane-order compatible bijection onto 1..n-1")]
    IncompatibleEdgeLabels,
    #[error("label stage {0} out of range")]
    BadStage(usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("good cord is only defined for indices of rank at least 2")]
    RankTooSmall,
    #[error("chord endpoint {0} outside [0, 1]")]
    ChordOutOfRange(Box<Rational>),
    #[error("chords cross: [[{}, {}]] and [[{}, {}]]", .0[0], .0[1], .0[2], .0[3])]
    CrossingChords(Box<[Rational; 4]>),
    #[error("lamination must be non-empty")]
    EmptyLamination,
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("time change breakpoints not strictly increasing at t = {0}")]
    TimeChangeNotIncreasing(Box<Rational>),
    #[error("invalid run configuration: {0}")]
    BadConfig(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub use bijection::LabeledTree;
pub use lamination::{Chord, Lamination, StepLaminationProcess, WalkExcursion};
pub use perm::{Factorisation, MonotoneClass, Transposition};
pub use tree::{LukaPath, PlaneTree};
