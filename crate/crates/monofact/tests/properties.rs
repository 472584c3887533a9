//! Cross-module property tests on seeded random structures.

use monofact::bijection::{
    decreasing_factorisation_of_tree, increasing_factorisation_of_tree,
    tree_of_decreasing_factorisation, tree_of_increasing_factorisation,
};
use monofact::json::{Document, FactorisationDoc, Payload, PlaneTreeDoc};
use monofact::lamination::{
    alignment_time_change, chords_cross, discrete_lamination_process, enumerate_good_cords,
    Chord, Lamination, WalkExcursion,
};
use monofact::perm::is_cycle_factorisation;
use monofact::tree::{lukasiewicz_path, sample_uniform_plane_tree};
use monofact::Rational;
use proptest::prelude::*;

fn tree_strategy() -> impl Strategy<Value = monofact::PlaneTree> {
    (1usize..80, any::<u64>())
        .prop_map(|(n, seed)| sample_uniform_plane_tree(n, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn luka_roundtrip(t in tree_strategy()) {
        prop_assert_eq!(lukasiewicz_path(&t).to_plane_tree(), t);
    }

    #[test]
    fn monotone_roundtrips(t in tree_strategy()) {
        let dec = decreasing_factorisation_of_tree(&t);
        prop_assert!(is_cycle_factorisation(&dec));
        prop_assert_eq!(tree_of_decreasing_factorisation(&dec).unwrap(), t.clone());
        let inc = increasing_factorisation_of_tree(&t);
        prop_assert!(is_cycle_factorisation(&inc));
        prop_assert_eq!(tree_of_increasing_factorisation(&inc).unwrap(), t);
    }

    #[test]
    fn snapshots_noncrossing_both_kinds(t in tree_strategy()) {
        prop_assume!(t.n() >= 2);
        for f in [decreasing_factorisation_of_tree(&t), increasing_factorisation_of_tree(&t)] {
            let process = discrete_lamination_process(&f).unwrap();
            let last = process.snapshots.last().unwrap();
            for (i, a) in last.chords().iter().enumerate() {
                for b in &last.chords()[i + 1..] {
                    prop_assert!(!chords_cross(a, b));
                }
            }
            prop_assert_eq!(process.snapshots.len(), f.n() + 1);
        }
    }

    #[test]
    fn good_cords_are_nested_or_disjoint(t in tree_strategy()) {
        let w = WalkExcursion::from_tree(&t);
        let cords = enumerate_good_cords(&w);
        prop_assert!(Lamination::new(cords).is_ok());
    }

    #[test]
    fn time_change_sup_matches_direct_scan(t in tree_strategy()) {
        prop_assume!(t.n() >= 2);
        let f = decreasing_factorisation_of_tree(&t);
        let tc = alignment_time_change(&f).unwrap();
        let sup = tc.sup_dev_from_identity();
        // supremum via dense rational probing never exceeds the breakpoint value
        let n = 4 * t.n() as i128;
        let probed = (0..=n)
            .map(|k| {
                let x = Rational::new(k, n);
                let d = tc.eval(x) - x;
                if d < Rational::new(0, 1) { -d } else { d }
            })
            .max()
            .unwrap();
        prop_assert!(probed <= sup);
    }

    #[test]
    fn document_roundtrip(t in tree_strategy()) {
        let f = decreasing_factorisation_of_tree(&t);
        let doc = Document::new(Payload::Factorisation(FactorisationDoc::from_factorisation(&f)));
        let back = Document::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        let tdoc = Document::new(Payload::PlaneTree(PlaneTreeDoc::from_tree(&t, true)));
        let back = Document::from_json(&tdoc.to_json_pretty()).unwrap();
        prop_assert_eq!(back, tdoc);
    }

    #[test]
    fn chord_crossing_is_symmetric_and_irreflexive(
        (a, b, c, d) in (0u32..=60, 0u32..=60, 0u32..=60, 0u32..=60)
    ) {
        let c1 = Chord::new(Rational::new(a as i128, 60), Rational::new(b as i128, 60)).unwrap();
        let c2 = Chord::new(Rational::new(c as i128, 60), Rational::new(d as i128, 60)).unwrap();
        prop_assert_eq!(chords_cross(&c1, &c2), chords_cross(&c2, &c1));
        prop_assert!(!chords_cross(&c1, &c1));
    }

    #[test]
    fn lamination_validator_matches_pairwise_predicate(
        raw in proptest::collection::vec((0u32..=24, 0u32..=24), 0..12)
    ) {
        let chords: Vec<Chord> = raw
            .iter()
            .map(|&(a, b)| {
                Chord::new(Rational::new(a as i128, 24), Rational::new(b as i128, 24)).unwrap()
            })
            .collect();
        let any_crossing = chords.iter().enumerate().any(|(i, c1)| {
            chords[i + 1..].iter().any(|c2| chords_cross(c1, c2))
        });
        prop_assert_eq!(Lamination::new(chords).is_err(), any_crossing);
    }
}
