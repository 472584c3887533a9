//! Statistical verification harnesses.
//!
//! Exact small-size distribution tables, Monte Carlo checks of the
//! normal fluctuation of the number of distinct smaller endpoints, the
//! parking-function CDF fluctuation, and the exact per-index identities
//! tying a decreasing factorisation to its Łukasiewicz walk. Every Monte
//! Carlo report is reproducible from `(seed, trials, n)`; trials run in
//! parallel but are reduced in trial order.

use crate::bijection::{enumerate_decreasing, t1_forward, tree_of_decreasing_factorisation};
use crate::lamination::rank_data;
use crate::perm::{enumerate_minimal_factorisations, monotone_class, Factorisation};
use crate::rng::rng_for_trial;
use crate::tree::{
    catalan, count_non_leaves, enumerate_plane_trees, lukasiewicz_path, sample_uniform_plane_tree_with,
};
use crate::{Error, Rational, Result};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Acceptance bands for the Monte Carlo checks, sized by standard-error
/// pilots at the reference configuration (n = 10^4, 2000 trials).
pub mod thresholds {
    /// Bound on |mean| of the standardised statistic.
    pub const CLT_MEAN_ABS: f64 = 0.1;
    /// Variance band for the standardised statistic.
    pub const CLT_VAR_LO: f64 = 0.9;
    pub const CLT_VAR_HI: f64 = 1.1;
    /// Kolmogorov-Smirnov distance to the standard normal.
    pub const CLT_KS: f64 = 0.05;
    /// Relative agreement of parking-statistic medians across sizes.
    pub const PARKING_MEDIAN_REL: f64 = 0.10;
}

/// One named probability column over a common support.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionColumn {
    pub name: String,
    pub probabilities: Vec<f64>,
    /// Columns reported verbatim even though they do not sum to one.
    pub normalised: bool,
}

/// A named check with its observed value and verdict.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: String,
    pub passed: bool,
}

/// Report of an exact or Monte Carlo distribution study.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub sample_size: u64,
    pub support: Vec<i64>,
    pub columns: Vec<DistributionColumn>,
    pub stats: Vec<(String, f64)>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl DistributionReport {
    fn finish(mut self) -> Result<Self> {
        for col in &self.columns {
            if col.normalised {
                let sum: f64 = col.probabilities.iter().sum();
                if (sum - 1.0).abs() > 1e-12 {
                    return Err(Error::BadConfig(format!(
                        "column {} sums to {sum}, expected 1",
                        col.name
                    )));
                }
            }
        }
        self.passed = self.checks.iter().all(|c| c.passed);
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Aligned-column text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "report: {}", self.name);
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let _ = writeln!(out, "  sample_size = {}", self.sample_size);
        if !self.support.is_empty() {
            let _ = write!(out, "{:>8}", "value");
            for col in &self.columns {
                let _ = write!(out, " {:>22}", col.name);
            }
            out.push('\n');
            for (row, &v) in self.support.iter().enumerate() {
                let _ = write!(out, "{v:>8}");
                for col in &self.columns {
                    let _ = write!(out, " {:>22.12}", col.probabilities[row]);
                }
                out.push('\n');
            }
        }
        for (name, value) in &self.stats {
            let _ = writeln!(out, "  {name:<28} {value:.9}");
        }
        for check in &self.checks {
            let _ = writeln!(
                out,
                "  check {:<32} value {:>14.9}  bound {:<18} {}",
                check.name,
                check.value,
                check.bound,
                if check.passed { "pass" } else { "FAIL" }
            );
        }
        let _ = writeln!(out, "overall: {}", if self.passed { "pass" } else { "FAIL" });
        out
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Exact counts of trees with a given non-leaf count: the Narayana number
/// `N(m, k) = (1/m) C(m, k) C(m, k-1)` counts plane trees with `m` edges
/// and `k` leaves, so `j` non-leaves out of `n` vertices has weight
/// `N(n-1, n-j)`.
fn narayana(m: u64, k: u64) -> u128 {
    if m == 0 || k == 0 || k > m {
        return u128::from(m == 0 && k == 0);
    }
    binomial(m, k) * binomial(m, k - 1) / m as u128
}

/// Exact distribution of the number of distinct smaller endpoints of a
/// uniform decreasing factorisation of size `n <= 10`, computed three
/// ways: non-leaf counts over all plane trees, distinct-endpoint counts
/// over the factorisation family itself (the brute-force oracle up to
/// size 7, the tree bijection beyond), and the closed-form Narayana law.
/// All three must agree exactly. An unnormalised shifted-binomial closed
/// form is reported alongside for comparison; it is not used as ground
/// truth.
pub fn distinct_a_distribution_exact(n: usize) -> Result<DistributionReport> {
    if !(2..=10).contains(&n) {
        return Err(Error::SizeOutOfRange { n, lo: 2, hi: 10 });
    }
    let total = catalan(n - 1);
    let mut tree_counts = vec![0u128; n];
    for t in enumerate_plane_trees(n)? {
        tree_counts[count_non_leaves(&t)] += 1;
    }
    let mut fact_counts = vec![0u128; n];
    let decreasing: Vec<Factorisation> = if n <= 7 {
        enumerate_minimal_factorisations(n)?
            .into_iter()
            .filter(|f| monotone_class(f).is_decreasing())
            .collect()
    } else {
        enumerate_decreasing(n)?
    };
    for f in &decreasing {
        let mut a = f.a_values();
        a.sort_unstable();
        a.dedup();
        fact_counts[a.len()] += 1;
    }
    let narayana_counts: Vec<u128> =
        (0..n).map(|j| narayana(n as u64 - 1, (n - j) as u64)).collect();

    let support: Vec<i64> = (1..n).map(|k| k as i64).collect();
    let to_probs = |counts: &[u128]| -> Vec<f64> {
        (1..n).map(|k| counts[k] as f64 / total as f64).collect()
    };
    // (n+1)/(n-1) C(n-1,k) C(n-1,k-1) / C(2n,n), reported as printed even
    // though its mass differs from 1.
    let shifted: Vec<f64> = (1..n)
        .map(|k| {
            let num = binomial(n as u64 - 1, k as u64) * binomial(n as u64 - 1, k as u64 - 1);
            (n as f64 + 1.0) / (n as f64 - 1.0) * num as f64 / binomial(2 * n as u64, n as u64) as f64
        })
        .collect();

    let routes_agree = tree_counts == fact_counts && tree_counts == narayana_counts;
    let report = DistributionReport {
        name: "distinct_a_exact".into(),
        params: BTreeMap::from([("n".to_string(), n.to_string())]),
        sample_size: total as u64,
        support,
        columns: vec![
            DistributionColumn {
                name: "tree_non_leaves".into(),
                probabilities: to_probs(&tree_counts),
                normalised: true,
            },
            DistributionColumn {
                name: "factorisation_distinct_a".into(),
                probabilities: to_probs(&fact_counts),
                normalised: true,
            },
            DistributionColumn {
                name: "narayana".into(),
                probabilities: to_probs(&narayana_counts),
                normalised: true,
            },
            DistributionColumn {
                name: "shifted_binomial_form".into(),
                probabilities: shifted,
                normalised: false,
            },
        ],
        stats: vec![],
        checks: vec![Check {
            name: "routes_agree_exactly".into(),
            value: if routes_agree { 1.0 } else { 0.0 },
            bound: "= 1".into(),
            passed: routes_agree,
        }],
        passed: false,
    };
    report.finish()
}

/// Kolmogorov-Smirnov distance between a sample and the standard normal.
pub fn ks_distance_to_std_normal(samples: &[f64]) -> f64 {
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let cdf = normal.cdf(x);
            (cdf - i as f64 / n).max((i as f64 + 1.0) / n - cdf)
        })
        .fold(0.0, f64::max)
}

/// Chi-square statistic of observed counts against expected counts.
pub fn chi_square_stat(observed: &[u64], expected: &[f64]) -> f64 {
    observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum()
}

/// Monte Carlo check of the normal fluctuation of the number of distinct
/// smaller endpoints: standardises `(#distinct a - n/2) / sqrt(n/8)` over
/// uniform decreasing factorisations (sampled as trees; the distinct
/// smaller endpoints of a decreasing factorisation are its tree's
/// non-leaf vertices) and reports mean, variance and KS distance.
pub fn distinct_a_clt(n: usize, trials: u64, seed: u64) -> Result<DistributionReport> {
    if n < 100 || trials < 100 {
        return Err(Error::BadConfig("requires n >= 100 and trials >= 100".into()));
    }
    let samples: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng_for_trial(seed, trial);
            let t = sample_uniform_plane_tree_with(n, &mut rng).expect("n >= 1");
            (count_non_leaves(&t) as f64 - n as f64 / 2.0) / (n as f64 / 8.0).sqrt()
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / trials as f64;
    let variance =
        samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials as f64 - 1.0);
    let ks = ks_distance_to_std_normal(&samples);
    let report = DistributionReport {
        name: "distinct_a_clt".into(),
        params: BTreeMap::from([
            ("n".to_string(), n.to_string()),
            ("trials".to_string(), trials.to_string()),
            ("seed".to_string(), seed.to_string()),
        ]),
        sample_size: trials,
        support: vec![],
        columns: vec![],
        stats: vec![
            ("mean".into(), mean),
            ("variance".into(), variance),
            ("ks_distance".into(), ks),
        ],
        checks: vec![
            Check {
                name: "abs_mean".into(),
                value: mean.abs(),
                bound: format!("< {}", thresholds::CLT_MEAN_ABS),
                passed: mean.abs() < thresholds::CLT_MEAN_ABS,
            },
            Check {
                name: "variance".into(),
                value: variance,
                bound: format!("in [{}, {}]", thresholds::CLT_VAR_LO, thresholds::CLT_VAR_HI),
                passed: (thresholds::CLT_VAR_LO..=thresholds::CLT_VAR_HI).contains(&variance),
            },
            Check {
                name: "ks_to_normal".into(),
                value: ks,
                bound: format!("< {}", thresholds::CLT_KS),
                passed: ks < thresholds::CLT_KS,
            },
        ],
        passed: false,
    };
    report.finish()
}

/// Exact value of `sup_x |F_w(x) - x|` for the empirical CDF
/// `F_w(x) = (1/m) #{i : w_i <= mx}` of a word with `m` entries in
/// `1..=m`, scanning the right-continuity points and their left limits.
pub fn parking_sup_deviation(word: &[usize]) -> Rational {
    let m = word.len();
    let mut counts = vec![0i128; m + 1];
    for &w in word {
        counts[w] += 1;
    }
    let mut cum = 0i128;
    let mut sup_num = 0i128; // m * sup
    for a in 0..=m {
        let prev = cum;
        cum += counts[a];
        let here = (cum - a as i128).abs().max((prev - a as i128).abs());
        sup_num = sup_num.max(here);
    }
    Rational::new(sup_num, m as i128)
}

/// The same supremum read off the Łukasiewicz walk `S_0, …, S_n` of the
/// generating tree: the word has `m = n - 1` entries and
/// `m * sup = max(max_{k <= n-1} S_k, 1)`.
pub fn parking_sup_deviation_from_walk(walk_values: &[i64]) -> Rational {
    let m = walk_values.len() as i128 - 2;
    let max_s = walk_values[..walk_values.len() - 1].iter().copied().max().unwrap_or(0) as i128;
    Rational::new(max_s.max(1), m)
}

/// Monte Carlo study of the scaled parking CDF deviation
/// `sqrt(m/2) * sup_x |F_π(x) - x|` over uniform decreasing
/// factorisations of size `n` (so the parking word has `m = n-1`
/// entries). The supremum is evaluated exactly at the jump points; the
/// identical walk-based evaluation is cross-checked on every trial.
pub fn parking_cdf_fluctuation(n: usize, trials: u64, seed: u64) -> Result<DistributionReport> {
    if n < 100 || trials == 0 {
        return Err(Error::BadConfig("requires n >= 100 and trials >= 1".into()));
    }
    let m = n - 1;
    let scale = (m as f64 / 2.0).sqrt();
    let stats: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng_for_trial(seed, trial);
            let t = sample_uniform_plane_tree_with(n, &mut rng).expect("n >= 1");
            // parking word = smaller endpoints reversed; as a multiset the
            // vertex labelled w contributes its children count at w.
            let mut word = Vec::with_capacity(m);
            for (v, &c) in t.children_counts().iter().enumerate() {
                word.extend(std::iter::repeat_n(v + 1, c));
            }
            let sup = parking_sup_deviation(&word);
            let from_walk = parking_sup_deviation_from_walk(lukasiewicz_path(&t).values());
            let diff = (sup - from_walk).to_f64().expect("small rational").abs();
            (scale * sup.to_f64().expect("small rational"), diff)
        })
        .collect();
    let mut values: Vec<f64> = stats.iter().map(|s| s.0).collect();
    let max_route_diff = stats.iter().map(|s| s.1).fold(0.0, f64::max);
    values.sort_by(f64::total_cmp);
    let quantile = |q: f64| values[((values.len() - 1) as f64 * q).round() as usize];
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let max = values[values.len() - 1];
    let report = DistributionReport {
        name: "parking_cdf_fluctuation".into(),
        params: BTreeMap::from([
            ("n".to_string(), n.to_string()),
            ("trials".to_string(), trials.to_string()),
            ("seed".to_string(), seed.to_string()),
        ]),
        sample_size: trials,
        support: vec![],
        columns: vec![],
        stats: vec![
            ("mean".into(), mean),
            ("median".into(), quantile(0.5)),
            ("q25".into(), quantile(0.25)),
            ("q75".into(), quantile(0.75)),
            ("max".into(), max),
        ],
        checks: vec![
            Check {
                name: "walk_route_agrees".into(),
                value: max_route_diff,
                bound: "= 0 (exact)".into(),
                passed: max_route_diff == 0.0,
            },
            Check {
                name: "deterministic_bound".into(),
                value: max,
                bound: format!("< sqrt(m/2) = {scale:.6}"),
                passed: max < scale,
            },
        ],
        passed: false,
    };
    report.finish()
}

/// Exact per-index sandwich identity of a decreasing factorisation
/// against its Łukasiewicz walk: with `a = a_i` (1-based `i`),
/// `S_{a-1} <= n - i - a = S_{a-1} + (s(i) - r(i)) <= S_a`.
pub fn profile_identity_check(f: &Factorisation) -> Result<bool> {
    let rd = rank_data(f)?;
    let t = tree_of_decreasing_factorisation(f)?;
    let s = lukasiewicz_path(&t);
    let values = s.values();
    let n = f.n() as i64;
    for (idx, e) in rd.entries().iter().enumerate() {
        let i = idx as i64 + 1;
        let a = e.a as i64;
        let middle = n - i - a;
        let lower = values[e.a - 1];
        let upper = values[e.a];
        let shifted = lower + (e.siblings as i64 - e.rank as i64);
        if !(lower <= middle && middle == shifted && middle <= upper) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Partition check for an increasing factorisation: smaller and larger
/// endpoints are disjoint and cover `{1, …, n}`, and the smaller
/// endpoints are exactly the labels of the even-height vertices of its
/// tree.
pub fn increasing_partition_check(f: &Factorisation) -> Result<bool> {
    if !monotone_class(f).is_increasing() {
        return Err(Error::NotMonotone { expected: "increasing" });
    }
    let n = f.n();
    let mut a_set = f.a_values();
    let mut b_set = f.b_values();
    a_set.sort_unstable();
    a_set.dedup();
    b_set.sort_unstable();
    b_set.dedup();
    if a_set.iter().any(|x| b_set.binary_search(x).is_ok()) {
        return Ok(false);
    }
    let mut union = a_set.clone();
    union.extend(&b_set);
    union.sort_unstable();
    if union != (1..=n).collect::<Vec<_>>() {
        return Ok(false);
    }
    let lt = t1_forward(f)?;
    let heights = lt.shape.heights();
    let mut evens: Vec<usize> = (0..n)
        .filter(|&v| heights[v] % 2 == 0)
        .map(|v| lt.vertex_labels[v])
        .collect();
    evens.sort_unstable();
    Ok(evens == a_set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::{decreasing_factorisation_of_tree, enumerate_increasing};
    use crate::tree::sample_uniform_plane_tree;

    #[test]
    fn exact_distribution_small_sizes() {
        let r3 = distinct_a_distribution_exact(3).unwrap();
        assert!(r3.passed);
        assert_eq!(r3.support, vec![1, 2]);
        assert_eq!(r3.columns[0].probabilities, vec![0.5, 0.5]);
        let r4 = distinct_a_distribution_exact(4).unwrap();
        assert!(r4.passed);
        assert_eq!(r4.columns[0].probabilities, vec![0.2, 0.6, 0.2]);
        let r2 = distinct_a_distribution_exact(2).unwrap();
        assert_eq!(r2.columns[0].probabilities, vec![1.0]);
        assert!(distinct_a_distribution_exact(11).is_err());
    }

    #[test]
    fn shifted_form_mass_is_not_one_at_n3() {
        let r3 = distinct_a_distribution_exact(3).unwrap();
        let shifted = &r3.columns[3];
        assert!(!shifted.normalised);
        let mass: f64 = shifted.probabilities.iter().sum();
        assert!((mass - 0.4).abs() < 1e-12, "mass = {mass}");
    }

    #[test]
    fn narayana_values() {
        assert_eq!(narayana(3, 1), 1);
        assert_eq!(narayana(3, 2), 3);
        assert_eq!(narayana(3, 3), 1);
        assert_eq!((1..=4).map(|k| narayana(4, k)).sum::<u128>(), catalan(4));
    }

    #[test]
    fn clt_report_reproducible() {
        let a = distinct_a_clt(200, 200, 9).unwrap();
        let b = distinct_a_clt(200, 200, 9).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(distinct_a_clt(50, 200, 9).is_err());
    }

    #[test]
    fn clt_ks_distance_improves_with_size() {
        let ks = |n: usize| {
            distinct_a_clt(n, 400, 77)
                .unwrap()
                .stats
                .into_iter()
                .find(|s| s.0 == "ks_distance")
                .unwrap()
                .1
        };
        assert!(ks(100) >= ks(10_000));
    }

    #[test]
    fn parking_sup_examples() {
        // word (1, 1): F jumps to 1 at x = 1/2; sup is 1/2 at the jump.
        assert_eq!(parking_sup_deviation(&[1, 1]), Rational::new(1, 2));
        // identity word: F(x) = floor(mx)/m, sup = 1/m.
        assert_eq!(parking_sup_deviation(&[1, 2, 3]), Rational::new(1, 3));
    }

    #[test]
    fn parking_routes_agree_exactly() {
        for seed in 0..20 {
            let n = 50 + 37 * seed as usize;
            let t = sample_uniform_plane_tree(n, 1000 + seed).unwrap();
            let mut word = Vec::new();
            for (v, &c) in t.children_counts().iter().enumerate() {
                word.extend(std::iter::repeat_n(v + 1, c));
            }
            assert_eq!(
                parking_sup_deviation(&word),
                parking_sup_deviation_from_walk(lukasiewicz_path(&t).values())
            );
        }
    }

    #[test]
    fn parking_report_has_median() {
        let r = parking_cdf_fluctuation(200, 50, 4).unwrap();
        assert!(r.passed);
        let median = r.stats.iter().find(|s| s.0 == "median").unwrap().1;
        assert!(median > 0.0 && median < 10.0);
    }

    #[test]
    fn sandwich_identity_examples() {
        let cherry = Factorisation::from_pairs(3, &[(1, 2), (1, 3)]).unwrap();
        assert!(profile_identity_check(&cherry).unwrap());
        for n in 2..=8 {
            for t in enumerate_plane_trees(n).unwrap() {
                assert!(profile_identity_check(&decreasing_factorisation_of_tree(&t)).unwrap());
            }
        }
    }

    #[test]
    fn sandwich_identity_large_sample() {
        let t = sample_uniform_plane_tree(100_000, 5).unwrap();
        assert!(profile_identity_check(&decreasing_factorisation_of_tree(&t)).unwrap());
    }

    #[test]
    fn partition_check_examples() {
        let f = Factorisation::from_pairs(3, &[(1, 3), (2, 3)]).unwrap();
        assert!(increasing_partition_check(&f).unwrap());
        let f6 = Factorisation::from_pairs(6, &[(1, 4), (1, 6), (2, 4), (3, 4), (5, 6)]).unwrap();
        assert!(increasing_partition_check(&f6).unwrap());
        for n in 2..=8 {
            for f in enumerate_increasing(n).unwrap() {
                assert!(increasing_partition_check(&f).unwrap());
            }
        }
        let dec = Factorisation::from_pairs(3, &[(2, 3), (1, 2)]).unwrap();
        assert!(increasing_partition_check(&dec).is_err());
    }

    #[test]
    fn ks_of_normal_quantiles_is_small() {
        let normal = Normal::new(0.0, 1.0).unwrap();
        let samples: Vec<f64> =
            (0..1000).map(|i| normal.inverse_cdf((i as f64 + 0.5) / 1000.0)).collect();
        assert!(ks_distance_to_std_normal(&samples) < 0.002);
    }

    #[test]
    fn text_rendering_mentions_checks() {
        let r = distinct_a_distribution_exact(4).unwrap();
        let text = r.to_text();
        assert!(text.contains("routes_agree_exactly"));
        assert!(text.contains("narayana"));
        assert!(text.contains("pass"));
    }
}
