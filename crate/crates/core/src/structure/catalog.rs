//! Small-code catalogs: partition codes of sizes 3 to 6 and disjoint
//! equivalent twin-free pairs of small size, each up to isomorphism.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::oracle::{cells_code, enumerate_suits_with, CellBox, CoverOptions};
use crate::structure::iso::{canonical_form, canonical_form_pinned};
use crate::text::parse_codes;
use crate::word::{all_words, dichotomous_unchecked, twin_unchecked, Letter, Word};

const LEMMA32: &str = include_str!("../../fixtures/lemma32.txt");
const LEMMA33: &str = include_str!("../../fixtures/lemma33.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwinConstraint {
    Any,
    ExactlyOne,
    Zero,
}

#[derive(Debug, Clone)]
pub struct Catalog<T> {
    pub classes: Vec<T>,
    pub truncated: bool,
    pub nodes: u64,
}

/// Partition codes of size `n` in dimension `d` (stars allowed), one
/// canonical representative per isomorphism class.
pub fn catalog_partition_codes(
    n: usize,
    d: usize,
    twins: TwinConstraint,
    budget: u64,
) -> Result<Catalog<Code>> {
    if !(3..=6).contains(&n) || !(1..=6).contains(&d) {
        return Err(Error::Unsupported(format!("partition catalog n={n}, d={d}")));
    }
    let opts = CoverOptions {
        allow_stars: true,
        exact_size: Some(n),
        twin_free: twins == TwinConstraint::Zero,
        budget,
        ..CoverOptions::default()
    };
    let e = enumerate_suits_with(&CellBox::full(d, 2), &opts);
    let classes: BTreeSet<Code> = e
        .suits
        .iter()
        .filter(|c| match twins {
            TwinConstraint::ExactlyOne => c.twin_pairs().len() == 1,
            _ => true,
        })
        .map(canonical_form)
        .collect();
    Ok(Catalog {
        classes: classes.into_iter().collect(),
        truncated: e.truncated,
        nodes: e.nodes,
    })
}

/// Pairwise dichotomous codes of size `n` over `(*S)^d` or `S^d`,
/// optionally twin-free, one canonical representative per class.
pub fn codes_up_to_iso(d: usize, n: usize, allow_stars: bool, twin_free: bool) -> Vec<Code> {
    let universe = all_words(d, 2, allow_stars);
    let mut level: BTreeSet<Code> = universe
        .iter()
        .map(|w| canonical_form(&Code::from_words_dedup(d, vec![*w])))
        .collect();
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for c in &level {
            for w in &universe {
                if c.contains(w)
                    || !c.iter().all(|u| dichotomous_unchecked(u, w))
                    || (twin_free && c.iter().any(|u| twin_unchecked(u, w)))
                {
                    continue;
                }
                let mut ws = c.words().to_vec();
                ws.push(*w);
                next.insert(canonical_form(&Code::from_words_dedup(d, ws)));
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// Deletes every coordinate on which all words of both codes agree.
pub fn strip_constant_coordinates(v: &Code, w: &Code) -> (Code, Code) {
    let d = v.dim();
    let all: Vec<&Word> = v.iter().chain(w.iter()).collect();
    let keep: Vec<usize> = (0..d)
        .filter(|&i| all.iter().any(|x| x.get(i) != all[0].get(i)))
        .collect();
    let project = |c: &Code| {
        let ws = c
            .iter()
            .map(|x| {
                let ls: Vec<Letter> = keep.iter().map(|&i| x.get(i)).collect();
                Word::new(&ls).expect("non-empty projection")
            })
            .collect();
        Code::from_words_dedup(keep.len(), ws)
    };
    (project(v), project(w))
}

fn mark(v: &Code, w: &Code) -> Code {
    let d = v.dim() + 1;
    let tag = |x: &Word, l: Letter| {
        let mut ls = vec![l];
        ls.extend_from_slice(x.letters());
        Word::new(&ls).expect("marked word fits")
    };
    let ws = v
        .iter()
        .map(|x| tag(x, Letter::A))
        .chain(w.iter().map(|x| tag(x, Letter::A_)))
        .collect();
    Code::from_words_dedup(d, ws)
}

fn unmark(c: &Code) -> (Code, Code) {
    let d = c.dim() - 1;
    let mut v = Vec::new();
    let mut w = Vec::new();
    for x in c {
        let rest = x.drop_index(0);
        if x.get(0) == Letter::A {
            v.push(rest);
        } else {
            w.push(rest);
        }
    }
    (Code::from_words_dedup(d, v), Code::from_words_dedup(d, w))
}

/// Canonical form of an ordered pair of codes; with `unordered` the pair
/// `(W, V)` is identified with `(V, W)`.
pub fn pair_canonical(v: &Code, w: &Code, unordered: bool) -> (Code, Code) {
    let a = canonical_form_pinned(&mark(v, w));
    if unordered {
        let b = canonical_form_pinned(&mark(w, v));
        if b < a {
            return unmark(&b);
        }
    }
    unmark(&a)
}

/// Normal form used to compare pairs: constant coordinates removed, then
/// the pair canonical form (unordered when both sizes agree).
pub fn normalize_pair(v: &Code, w: &Code) -> (Code, Code) {
    let (a, b) = strip_constant_coordinates(v, w);
    pair_canonical(&a, &b, a.len() == b.len())
}

/// Disjoint equivalent twin-free pairs `(V, W)` with `|V| = n`, `|W| = m`
/// in dimension `d`, normalized and deduplicated.
pub fn catalog_equivalent_pairs(
    n: usize,
    m: usize,
    d: usize,
    budget: u64,
) -> Result<Catalog<(Code, Code)>> {
    if !matches!((n, m), (2, 2) | (2, 3) | (2, 4) | (3, 3)) || !(2..=5).contains(&d) {
        return Err(Error::Unsupported(format!("pair catalog ({n},{m}) at d={d}")));
    }
    let mut out = BTreeSet::new();
    let mut truncated = false;
    let mut nodes = 0;
    for v in codes_up_to_iso(d, n, true, true) {
        let f = cells_code(&v)?;
        let opts = CoverOptions {
            allow_stars: true,
            exact_size: Some(m),
            twin_free: true,
            exclude: v.words().to_vec(),
            budget,
            ..CoverOptions::default()
        };
        let e = enumerate_suits_with(&f, &opts);
        truncated |= e.truncated;
        nodes += e.nodes;
        for w in &e.suits {
            out.insert(normalize_pair(&v, w));
        }
    }
    Ok(Catalog {
        classes: out.into_iter().collect(),
        truncated,
        nodes,
    })
}

/// Reference partition codes of sizes 3, 4, 5, 6.
pub fn lemma32_fixtures() -> Vec<Code> {
    parse_codes(LEMMA32).expect("bundled fixture parses")
}

/// Reference pairs, as `((n, m), V, W)`.
pub fn lemma33_fixtures() -> Vec<((usize, usize), Code, Code)> {
    let mut out = Vec::new();
    let mut section: Option<(usize, usize)> = None;
    let mut buf = String::new();
    let mut flush = |section: Option<(usize, usize)>, buf: &mut String| {
        if let Some(sz) = section {
            let cs = parse_codes(buf).expect("bundled fixture parses");
            assert_eq!(cs.len(), 2, "fixture section must hold V and W");
            out.push((sz, cs[0].clone(), cs[1].clone()));
        }
        buf.clear();
    };
    for line in LEMMA33.lines() {
        if let Some(rest) = line.trim().strip_prefix("# sizes") {
            flush(section, &mut buf);
            let nums: Vec<usize> = rest
                .split_whitespace()
                .map(|t| t.parse().expect("fixture size"))
                .collect();
            section = Some((nums[0], nums[1]));
        } else {
            buf.push_str(line);
            buf.push('\n');
        }
    }
    flush(section, &mut buf);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{are_equivalent, is_partition_code};
    use crate::oracle::cells_code;

    #[test]
    fn fixtures_are_well_formed() {
        let p = lemma32_fixtures();
        assert_eq!(p.iter().map(|c| c.len()).collect::<Vec<_>>(), [3, 4, 5, 6]);
        for c in &p {
            assert!(is_partition_code(c).unwrap());
        }
        assert_eq!(p[1].twin_pairs().len(), 1);
        assert!(p[2].is_twin_free() && p[3].is_twin_free());
        let q = lemma33_fixtures();
        assert_eq!(q.len(), 9);
        for ((n, m), v, w) in &q {
            assert_eq!((v.len(), w.len()), (*n, *m));
            assert!(v.is_polybox() && w.is_polybox());
            assert!(v.is_twin_free() && w.is_twin_free());
            assert!(v.is_disjoint(w));
            assert_eq!(cells_code(v).unwrap(), cells_code(w).unwrap());
            if v.is_star_free() && w.is_star_free() {
                assert!(are_equivalent(v, w).unwrap());
            }
        }
    }

    #[test]
    fn size_three_partition_class() {
        let c = catalog_partition_codes(3, 2, TwinConstraint::Any, 1_000_000).unwrap();
        assert_eq!(c.classes, vec![canonical_form(&lemma32_fixtures()[0])]);
    }

    #[test]
    fn two_two_pairs() {
        let c = catalog_equivalent_pairs(2, 2, 2, 1_000_000).unwrap();
        let q = lemma33_fixtures();
        assert_eq!(c.classes, vec![normalize_pair(&q[0].1, &q[0].2)]);
    }

    #[test]
    fn three_three_pairs() {
        // the three reference rows plus two more classes
        let c = catalog_equivalent_pairs(3, 3, 3, 10_000_000).unwrap();
        assert!(!c.truncated);
        assert_eq!(c.classes.len(), 5);
        for (_, v, w) in lemma33_fixtures().iter().filter(|f| f.0 == (3, 3)) {
            assert!(c.classes.contains(&normalize_pair(v, w)));
        }
        let extra = normalize_pair(
            &Code::new(["**a", "*aa'", "aa'a'"].map(|s| Word::parse_abc(s).unwrap()).to_vec())
                .unwrap(),
            &Code::new(["*a*", "aa'*", "a'a'a"].map(|s| Word::parse_abc(s).unwrap()).to_vec())
                .unwrap(),
        );
        assert!(c.classes.contains(&extra));
    }

    #[test]
    fn strip_constant() {
        let v = Code::new(vec![Word::parse_abc("a*b").unwrap()]).unwrap();
        let w = Code::new(vec![Word::parse_abc("a'*b").unwrap()]).unwrap();
        let (a, b) = strip_constant_coordinates(&v, &w);
        assert_eq!(a.dim(), 1);
        assert_eq!(b.words()[0], Word::parse_abc("a'").unwrap());
    }
}
