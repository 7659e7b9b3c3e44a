use proptest::prelude::*;

use polybox::cover::{are_equivalent, covers, gbar_sum, is_partition_code};
use polybox::oracle::{cells, cells_code, cells_code_with, CellBox};
use polybox::structure::iso::{canonical_form_exhaustive, LetterMap};
use polybox::structure::{apply_isomorphism, canonical_form, CodeIsomorphism};
use polybox::text::{format_code, parse_code};
use polybox::{are_dichotomous, complement, is_twin_pair, Code, Letter, Word};

fn letter(stars: bool) -> impl Strategy<Value = i8> {
    if stars {
        prop_oneof![Just(0i8), Just(1), Just(-1), Just(2), Just(-2)].boxed()
    } else {
        prop_oneof![Just(1i8), Just(-1), Just(2), Just(-2)].boxed()
    }
}

fn word(d: usize, stars: bool) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(stars), d).prop_map(|v| Word::from_values(&v).unwrap())
}

/// Greedy polybox code from a stream of words: keep each word dichotomous
/// with all kept so far.
fn greedy(d: usize, ws: Vec<Word>, max: usize, twin_free: bool) -> Code {
    let mut kept: Vec<Word> = Vec::new();
    for w in ws {
        if kept.len() == max {
            break;
        }
        if kept.iter().all(|u| {
            are_dichotomous(u, &w).unwrap() && !(twin_free && is_twin_pair(u, &w).unwrap())
        }) {
            kept.push(w);
        }
    }
    if kept.is_empty() {
        return Code::empty(d);
    }
    Code::new(kept).unwrap()
}

fn polybox(stars: bool, max: usize) -> impl Strategy<Value = Code> {
    (1usize..=5).prop_flat_map(move |d| {
        prop::collection::vec(word(d, stars), 1..40).prop_map(move |ws| greedy(d, ws, max, false))
    })
}

fn iso(d: usize) -> impl Strategy<Value = CodeIsomorphism> {
    let maps = LetterMap::all(2);
    (
        Just((0..d).collect::<Vec<usize>>()).prop_shuffle(),
        prop::collection::vec(0..maps.len(), d),
    )
        .prop_map(move |(sigma, ks)| CodeIsomorphism {
            sigma,
            letter_maps: ks.iter().map(|&k| maps[k].clone()).collect(),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_is_an_involution(v in letter(true)) {
        let l = Letter::new(v).unwrap();
        prop_assert_eq!(complement(complement(l)), l);
        prop_assert_eq!(l.is_star(), complement(l) == l);
    }

    #[test]
    fn dichotomy_is_symmetric_and_twins_are_dichotomous(
        (u, w) in (1usize..=6).prop_flat_map(|d| (word(d, true), word(d, true)))
    ) {
        prop_assert_eq!(are_dichotomous(&u, &w).unwrap(), are_dichotomous(&w, &u).unwrap());
        if is_twin_pair(&u, &w).unwrap() {
            prop_assert!(are_dichotomous(&u, &w).unwrap());
        }
        prop_assert!(!are_dichotomous(&u, &u).unwrap());
    }

    #[test]
    fn dichotomy_means_disjoint_cells(
        (u, w) in (1usize..=5).prop_flat_map(|d| (word(d, true), word(d, true)))
    ) {
        let a = cells(&u, 2).unwrap();
        let b = cells(&w, 2).unwrap();
        prop_assert_eq!(are_dichotomous(&u, &w).unwrap(), a.is_disjoint(&b));
    }

    #[test]
    fn covering_matches_cells(v in polybox(false, 16), seed in prop::collection::vec(letter(false), 5)) {
        let d = v.dim();
        prop_assume!(!v.is_empty());
        let w = Word::from_values(&seed[..d]).unwrap();
        let r = covers(&w, &v).unwrap();
        let inside = cells(&w, 2).unwrap().is_subset(&cells_code(&v).unwrap());
        prop_assert_eq!(r.covered, inside);
    }

    #[test]
    fn partition_test_matches_full_box(v in polybox(true, 16)) {
        prop_assume!(!v.is_empty());
        let full = cells_code_with(&v, 2).unwrap() == CellBox::full(v.dim(), 2);
        prop_assert_eq!(is_partition_code(&v).unwrap(), full);
        prop_assert!(gbar_sum(&v) <= 1 << v.dim());
    }

    #[test]
    fn equivalence_matches_cells(v in polybox(false, 8), w in polybox(false, 8)) {
        prop_assume!(!v.is_empty() && !w.is_empty() && v.dim() == w.dim());
        let same = cells_code_with(&v, 2).unwrap() == cells_code_with(&w, 2).unwrap();
        prop_assert_eq!(are_equivalent(&v, &w).unwrap(), same);
        prop_assert!(are_equivalent(&v, &v).unwrap());
    }

    #[test]
    fn canonical_form_is_an_isomorphism_invariant(
        (v, m) in (2usize..=4).prop_flat_map(|d| (
            prop::collection::vec(word(d, true), 1..8).prop_map(move |ws| greedy(d, ws, 6, false)),
            iso(d),
        ))
    ) {
        let w = apply_isomorphism(&m, &v).unwrap();
        prop_assert_eq!(canonical_form(&v), canonical_form(&w));
        prop_assert_eq!(canonical_form(&canonical_form(&v)), canonical_form(&v));
    }

    #[test]
    fn isomorphisms_preserve_the_predicates(
        (v, m) in (2usize..=4).prop_flat_map(|d| (
            prop::collection::vec(word(d, true), 1..8).prop_map(move |ws| greedy(d, ws, 6, false)),
            iso(d),
        ))
    ) {
        let w = apply_isomorphism(&m, &v).unwrap();
        prop_assert_eq!(v.is_polybox(), w.is_polybox());
        prop_assert_eq!(v.twin_pairs().len(), w.twin_pairs().len());
        prop_assert_eq!(gbar_sum(&v), gbar_sum(&w));
    }

    #[test]
    fn text_round_trip(v in polybox(true, 10)) {
        prop_assume!(!v.is_empty());
        prop_assert_eq!(parse_code(&format_code(&v)).unwrap(), v.clone());
        let j = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<Code>(&j).unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn greedy_canonical_form_matches_exhaustive(
        v in (2usize..=3).prop_flat_map(|d| {
            prop::collection::vec(word(d, true), 1..8).prop_map(move |ws| greedy(d, ws, 5, false))
        })
    ) {
        prop_assert_eq!(canonical_form(&v), canonical_form_exhaustive(&v));
    }
}
