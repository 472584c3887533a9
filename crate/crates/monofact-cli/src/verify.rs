//! Invariant suite for serialized objects.
//!
//! Each applicable invariant is evaluated independently and failures are
//! reported as a machine-readable list; an empty list means the object
//! passes. Parse-level problems (unreadable JSON, unknown schema) are not
//! invariant failures and are handled by the caller.

use monofact::bijection::{factorisation_from_edge_labels, t1_forward};
use monofact::json::{Document, Payload};
use monofact::lamination::{
    alignment_time_change, enumerate_good_cords, good_cord_family, is_good_cord,
    lamination_snapshot, Lamination, WalkExcursion,
};
use monofact::perm::{
    is_231_avoiding, is_cycle_factorisation, is_increasing_parking_function, monotone_class,
    to_231_word, to_parking_word, Factorisation, MonotoneClass,
};
use monofact::stats::{increasing_partition_check, profile_identity_check};
use monofact::tree::lukasiewicz_path;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Failure {
    pub invariant: String,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyOutcome {
    pub object: String,
    pub checked: Vec<String>,
    pub failures: Vec<Failure>,
    pub status: String,
}

struct Suite {
    checked: Vec<String>,
    failures: Vec<Failure>,
}

impl Suite {
    fn new() -> Self {
        Self { checked: Vec::new(), failures: Vec::new() }
    }

    fn check(&mut self, name: &str, outcome: Result<(), String>) {
        self.checked.push(name.to_string());
        if let Err(detail) = outcome {
            self.failures.push(Failure { invariant: name.to_string(), detail });
        }
    }

    fn require(ok: bool, detail: &str) -> Result<(), String> {
        if ok {
            Ok(())
        } else {
            Err(detail.to_string())
        }
    }

    fn finish(self, object: &str) -> VerifyOutcome {
        let status = if self.failures.is_empty() { "pass" } else { "fail" };
        VerifyOutcome {
            object: object.to_string(),
            checked: self.checked,
            failures: self.failures,
            status: status.to_string(),
        }
    }
}

pub fn verify_document(doc: &Document) -> VerifyOutcome {
    match &doc.payload {
        Payload::Factorisation(fd) => {
            let mut suite = Suite::new();
            match fd.to_factorisation() {
                Err(e) => {
                    suite.check("well_formed", Err(e.to_string()));
                    suite.finish("factorisation")
                }
                Ok(f) => {
                    suite.check("well_formed", Ok(()));
                    verify_factorisation(&mut suite, &f, fd.kind.as_deref(), fd.tree.as_deref());
                    suite.finish("factorisation")
                }
            }
        }
        Payload::PlaneTree(td) => {
            let mut suite = Suite::new();
            match td.to_tree() {
                Err(e) => suite.check("children_counts_valid", Err(e.to_string())),
                Ok(t) => {
                    suite.check("children_counts_valid", Ok(()));
                    let path = lukasiewicz_path(&t);
                    suite.check(
                        "luka_roundtrip",
                        Suite::require(path.to_plane_tree() == t, "walk does not reproduce the tree"),
                    );
                    if let Some(parents) = &td.parents {
                        let expected: Vec<i64> =
                            t.parents().iter().map(|p| p.map_or(-1, |v| v as i64)).collect();
                        suite.check(
                            "parent_array_consistent",
                            Suite::require(parents == &expected, "parent array mismatch"),
                        );
                    }
                }
            }
            suite.finish("plane_tree")
        }
        Payload::LabeledTree(ld) => {
            let mut suite = Suite::new();
            match ld.to_labeled() {
                Err(e) => suite.check("well_formed", Err(e.to_string())),
                Ok(lt) => {
                    suite.check("well_formed", Ok(()));
                    suite.check(
                        "edge_labels_compatible",
                        Suite::require(
                            lt.edge_labels_compatible(),
                            "edge labels not an increasing left-to-right injection",
                        ),
                    );
                    let full_edges = lt.edge_labels[1..].iter().all(|&l| l != 0);
                    if full_edges {
                        suite.check(
                            "next_relabeling_recovers_cycle",
                            match factorisation_from_edge_labels(&lt.strip_vertex_labels()) {
                                Err(e) => Err(e.to_string()),
                                Ok(f) => Suite::require(
                                    is_cycle_factorisation(&f),
                                    "recovered product is not the full cycle",
                                ),
                            },
                        );
                    }
                }
            }
            suite.finish("labeled_tree")
        }
        Payload::Lamination(ld) => {
            let mut suite = Suite::new();
            suite.check(
                "chords_noncrossing",
                ld.to_lamination().map(|_| ()).map_err(|e| e.to_string()),
            );
            suite.finish("lamination")
        }
        Payload::LaminationProcess(pd) => {
            let mut suite = Suite::new();
            let mut parsed = Vec::new();
            let mut ok = Ok(());
            for (k, chords) in pd.snapshots.iter().enumerate() {
                match Lamination::new(chords.clone()) {
                    Ok(l) => parsed.push(l),
                    Err(e) => {
                        ok = Err(format!("snapshot {k}: {e}"));
                        break;
                    }
                }
            }
            suite.check("snapshots_noncrossing", ok);
            if parsed.len() == pd.snapshots.len() && !parsed.is_empty() {
                let nested = parsed.windows(2).all(|w| {
                    w[1].chords().len() >= w[0].chords().len()
                        && w[0].chords().iter().all(|c| c.is_trivial() || w[1].chords().contains(c))
                });
                suite.check(
                    "snapshots_nested",
                    Suite::require(nested, "later snapshots must contain earlier chords"),
                );
            }
            suite.finish("lamination_process")
        }
    }
}

fn verify_factorisation(suite: &mut Suite, f: &Factorisation, kind: Option<&str>, tree: Option<&[usize]>) {
    let cycle = is_cycle_factorisation(f);
    suite.check(
        "cycle_product",
        Suite::require(cycle, "composition is not the full cycle"),
    );
    let class = monotone_class(f);
    if let Some(kind) = kind {
        let matches = match kind {
            "decreasing" => class.is_decreasing(),
            "increasing" => class.is_increasing(),
            other => return suite.check("kind_known", Err(format!("unknown kind {other:?}"))),
        };
        suite.check(
            "kind_matches_endpoints",
            Suite::require(matches, &format!("declared {kind} but classified {class:?}")),
        );
    }
    if !cycle {
        return;
    }
    if class.is_decreasing() {
        verify_decreasing(suite, f);
    }
    if class.is_increasing() && f.n() > 1 {
        suite.check(
            "increasing_partition",
            match increasing_partition_check(f) {
                Err(e) => Err(e.to_string()),
                Ok(ok) => Suite::require(ok, "endpoint sets do not partition {1..n}"),
            },
        );
    }
    if class == MonotoneClass::Neither {
        suite.check("monotone", Err("endpoints are neither decreasing nor increasing".into()));
    }
    suite.check(
        "lamination_noncrossing",
        lamination_snapshot(f, f.n()).map(|_| ()).map_err(|e| e.to_string()),
    );
    match t1_forward(f) {
        Err(e) => suite.check("transposition_graph_is_tree", Err(e.to_string())),
        Ok(lt) => {
            suite.check("transposition_graph_is_tree", Ok(()));
            suite.check(
                "next_relabeling_roundtrip",
                match factorisation_from_edge_labels(&lt.strip_vertex_labels()) {
                    Err(e) => Err(e.to_string()),
                    Ok(g) => Suite::require(&g == f, "edge labels do not recover the factorisation"),
                },
            );
            if let Some(counts) = tree {
                suite.check(
                    "attached_tree_matches",
                    Suite::require(
                        lt.shape.children_counts() == counts,
                        "attached tree differs from the transposition tree",
                    ),
                );
            }
        }
    }
}

fn verify_decreasing(suite: &mut Suite, f: &Factorisation) {
    let n = f.n();
    let mut bs = f.b_values();
    bs.sort_unstable();
    suite.check(
        "b_multiset_is_2_to_n",
        Suite::require(bs == (2..=n).collect::<Vec<_>>(), "larger endpoints must be 2..n exactly"),
    );
    suite.check(
        "parking_word_is_increasing_parking_function",
        match to_parking_word(f) {
            Err(e) => Err(e.to_string()),
            Ok(w) => Suite::require(is_increasing_parking_function(&w), "parking predicate fails"),
        },
    );
    suite.check(
        "b_word_is_231_avoiding",
        match to_231_word(f).and_then(|w| is_231_avoiding(&w)) {
            Err(e) => Err(e.to_string()),
            Ok(ok) => Suite::require(ok, "231 pattern found"),
        },
    );
    if n == 1 {
        return;
    }
    suite.check(
        "walk_sandwich_identity",
        match profile_identity_check(f) {
            Err(e) => Err(e.to_string()),
            Ok(ok) => Suite::require(ok, "sandwich identity violated"),
        },
    );
    suite.check(
        "time_change_strictly_increasing",
        alignment_time_change(f).map(|_| ()).map_err(|e| e.to_string()),
    );
    match monofact::bijection::tree_of_decreasing_factorisation(f) {
        Err(e) => suite.check("good_cords", Err(e.to_string())),
        Ok(t) => {
            let w = WalkExcursion::from_tree(&t);
            match good_cord_family(f) {
                Err(e) => suite.check("good_cords", Err(e.to_string())),
                Ok(family) => {
                    let all_good = family.iter().all(|(_, c)| is_good_cord(&w, c));
                    suite.check(
                        "good_cords_valid",
                        Suite::require(all_good, "formula cord fails the good-cord predicate"),
                    );
                    let mut scan: Vec<_> = enumerate_good_cords(&w)
                        .into_iter()
                        .filter(|c| !c.is_trivial())
                        .collect();
                    let mut formula: Vec<_> =
                        family.iter().map(|&(_, c)| c).filter(|c| !c.is_trivial()).collect();
                    scan.sort_unstable();
                    formula.sort_unstable();
                    suite.check(
                        "good_cords_complete",
                        Suite::require(scan == formula, "walk scan and formula family differ"),
                    );
                }
            }
        }
    }
}
