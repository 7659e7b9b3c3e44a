use std::collections::BTreeSet;

use itertools::Itertools;

use polybox::search::{complete, initial_configs, run_all, InitialConfig, SearchOptions};
use polybox::structure::canonical_form;
use polybox::word::all_words;
use polybox::{are_dichotomous, is_i_siblings, is_polybox_code, is_twin_pair, Code, Letter, Word};

fn ok_pair(u: &Word, w: &Word) -> bool {
    are_dichotomous(u, w).unwrap() && !is_twin_pair(u, w).unwrap()
}

fn siblings_everywhere(v: &Code) -> bool {
    let letters = [Letter::A, Letter::A_, Letter::B, Letter::B_];
    (1..=v.dim()).all(|i| {
        letters.iter().tuple_combinations().all(|(&l, &s)| {
            l.complement() == s
                || v.iter().any(|u| {
                    v.iter().any(|w| {
                        u.get(i - 1) == l && w.get(i - 1) == s && is_i_siblings(u, w, i).unwrap()
                    })
                })
        })
    })
}

/// Every admissible choice of free rows, group by group, checked with the
/// public predicates only.
fn brute_force(c: &InitialConfig) -> BTreeSet<Code> {
    let universe = all_words(c.dim, 2, false);
    let per_group: Vec<Vec<Vec<Word>>> = c
        .remaining
        .iter()
        .map(|&(l, k)| {
            let cands: Vec<Word> = universe
                .iter()
                .copied()
                .filter(|w| w.get(0) == l && !c.fixed_words.contains(w))
                .filter(|w| c.fixed_words.iter().all(|f| ok_pair(f, w)))
                .collect();
            cands
                .into_iter()
                .combinations(k)
                .filter(|ws| ws.iter().tuple_combinations().all(|(a, b)| ok_pair(a, b)))
                .collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    for choice in per_group.iter().multi_cartesian_product() {
        let mut ws = c.fixed_words.clone();
        for g in choice {
            ws.extend(g.iter().copied());
        }
        let v = Code::new(ws).unwrap();
        if v.len() == 12 && is_polybox_code(&v) && v.twin_pairs().is_empty() && siblings_everywhere(&v)
        {
            out.insert(canonical_form(&v));
        }
    }
    out
}

fn engine(c: &InitialConfig) -> BTreeSet<Code> {
    let o = complete(c, &SearchOptions::default());
    assert!(!o.truncated);
    o.completions.into_iter().collect()
}

#[test]
fn agrees_on_a_zero_case() {
    for case in [1, 6, 7] {
        for c in initial_configs(case, 4).unwrap() {
            let b = brute_force(&c);
            assert!(b.is_empty(), "case {case}");
            assert_eq!(engine(&c), b);
        }
    }
}

#[test]
fn agrees_on_nonzero_cases() {
    let mut nonzero = 0;
    for c in initial_configs(8, 4).unwrap() {
        let b = brute_force(&c);
        nonzero += !b.is_empty() as usize;
        assert_eq!(engine(&c), b, "{}", c.label);
    }
    assert!(nonzero > 0);
    for c in initial_configs(13, 4).unwrap() {
        assert_eq!(engine(&c), brute_force(&c), "{}", c.label);
    }
}

#[test]
fn symmetry_breaking_is_neutral() {
    let base = run_all(4, &SearchOptions::default()).unwrap();
    for opts in [
        SearchOptions {
            ordered: false,
            ..SearchOptions::default()
        },
        SearchOptions {
            early_siblings: true,
            ..SearchOptions::default()
        },
    ] {
        let other = run_all(4, &opts).unwrap();
        for (a, b) in base.iter().zip(&other) {
            assert_eq!(a.completions, b.completions, "{}", a.config.label);
        }
        let n = |v: &[polybox::search::SearchOutcome]| v.iter().map(|o| o.nodes_explored).sum::<u64>();
        assert_ne!(n(&base), n(&other));
    }
}

#[test]
fn runs_are_deterministic() {
    let a = run_all(4, &SearchOptions::default()).unwrap();
    let b = run_all(
        4,
        &SearchOptions {
            jobs: 2,
            ..SearchOptions::default()
        },
    )
    .unwrap();
    let key = |v: &[polybox::search::SearchOutcome]| {
        v.iter()
            .map(|o| (o.config.clone(), o.completions.clone(), o.nodes_explored, o.leaves))
            .collect::<Vec<_>>()
    };
    assert_eq!(key(&a), key(&b));
}

#[test]
fn completions_pass_an_independent_recheck() {
    for o in run_all(4, &SearchOptions::default()).unwrap() {
        for c in &o.completions {
            assert!(is_polybox_code(c) && c.twin_pairs().is_empty() && siblings_everywhere(c));
            assert_eq!(c.len(), 12);
        }
    }
}
