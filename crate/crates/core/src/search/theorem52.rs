//! The pair of disjoint equivalent twin-free twelve-word codes built from
//! two partition codes `W1`, `W2` of sixteen words.

use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::cover::{are_equivalent, is_partition_code};
use crate::error::{Error, Result};
use crate::oracle::{cells_code, enumerate_equivalent_disjoint, extend_to_partition, Extension};
use crate::structure::distribution::distribution;
use crate::structure::siblings::siblings_condition;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem52Codes {
    pub v: Code,
    pub w: Code,
    pub w1: Code,
    pub w2: Code,
}

fn pairs_from(l: Letter, s: Letter, spec: &[&str]) -> Vec<Word> {
    spec.iter()
        .map(|t| {
            Word::parse_named(t, &|c| match c {
                'l' => Some(l),
                's' => Some(s),
                _ => None,
            })
            .expect("template word")
        })
        .collect()
}

fn product(a: &[Word], b: &[Word]) -> Vec<Word> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.concat(y).expect("length 4")))
        .collect()
}

pub fn theorem52_codes(l: Letter, s: Letter) -> Result<Theorem52Codes> {
    if l.is_star() || s.is_star() || l == s || l == s.complement() {
        return Err(Error::BadLetterPair(l.value(), s.value()));
    }
    let set = |spec: &[&str]| pairs_from(l, s, spec);
    let a1 = set(&["ls'"]);
    let b1 = set(&["l'l'"]);
    let c1 = set(&["ls", "l'l"]);
    let a1c = set(&["ss", "l's'", "s's"]);
    let b1c = set(&["ll'", "sl", "s'l"]);
    let a2 = set(&["s'l"]);
    let b2 = set(&["ss"]);
    let c2 = set(&["ss'", "s'l'"]);
    let a2c = set(&["ll'", "l'l'", "sl"]);
    let b2c = set(&["ls'", "l's'", "s's"]);

    let mut w1 = product(&c1, &c1);
    w1.extend(product(&a1, &a1c));
    w1.extend(product(&b1, &b1c));
    w1.extend(product(&a1c, &b1));
    w1.extend(product(&b1c, &a1));
    let mut w2 = product(&c2, &c2);
    w2.extend(product(&a2c, &a2));
    w2.extend(product(&b2c, &b2));
    w2.extend(product(&a2, &b2c));
    w2.extend(product(&b2, &a2c));

    let w1 = Code::new(w1)?;
    let w2 = Code::new(w2)?;
    let both = w1.intersection(&w2);
    Ok(Theorem52Codes {
        v: w1.difference(&both),
        w: w2.difference(&both),
        w1,
        w2,
    })
}

/// The four words shared by `W1` and `W2`, as printed in the construction's
/// prose; the last one disagrees with the set computation.
pub fn prose_intersection(l: Letter, s: Letter) -> Vec<Word> {
    pairs_from(l, s, &["ls'ss", "l'l's'l", "ssl'l'", "slls'"])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem52Report {
    pub l: Letter,
    pub s: Letter,
    pub v: Code,
    pub w: Code,
    pub intersection: Vec<Word>,
    pub prose_mismatch: Vec<Word>,
    pub distribution: Vec<Vec<usize>>,
    pub clauses: Vec<Clause>,
}

impl Theorem52Report {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

fn clause(name: &str, passed: bool, detail: impl Into<String>) -> Clause {
    Clause {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

/// Checks every claim about the construction for the letters `l`, `s`.
pub fn verify_theorem52_with(l: Letter, s: Letter, budget: u64) -> Result<Theorem52Report> {
    let t = theorem52_codes(l, s)?;
    let (v, w) = (&t.v, &t.w);
    let mut cl = Vec::new();

    cl.push(clause(
        "w1_w2_sixteen_words",
        t.w1.len() == 16 && t.w2.len() == 16,
        format!("|W1| = {}, |W2| = {}", t.w1.len(), t.w2.len()),
    ));
    let p1 = is_partition_code(&t.w1).unwrap_or(false);
    let p2 = is_partition_code(&t.w2).unwrap_or(false);
    cl.push(clause(
        "w1_w2_partition_codes",
        p1 && p2,
        format!("W1 {p1}, W2 {p2}"),
    ));
    let inter = t.w1.intersection(&t.w2);
    cl.push(clause(
        "intersection_four_words",
        inter.len() == 4,
        format!("|W1 ∩ W2| = {}", inter.len()),
    ));
    cl.push(clause(
        "twelve_words",
        v.len() == 12 && w.len() == 12,
        format!("|V| = {}, |W| = {}", v.len(), w.len()),
    ));
    cl.push(clause(
        "polybox_codes",
        v.is_polybox() && w.is_polybox(),
        "",
    ));
    cl.push(clause("disjoint", v.is_disjoint(w), ""));
    let eq_g = are_equivalent(v, w)?;
    let eq_cells = cells_code(v)? == cells_code(w)?;
    cl.push(clause(
        "equivalent",
        eq_g && eq_cells,
        format!("g-test {eq_g}, cells {eq_cells}"),
    ));
    cl.push(clause(
        "twin_pair_free",
        v.is_twin_free() && w.is_twin_free(),
        format!("{} / {} twin pairs", v.twin_pairs().len(), w.twin_pairs().len()),
    ));
    let ext_v = matches!(extend_to_partition(v, budget)?, Extension::Found(_));
    let ext_w = matches!(extend_to_partition(w, budget)?, Extension::Found(_));
    let sub = t.w1.intersection(v) == *v && t.w2.intersection(w) == *w;
    cl.push(clause(
        "extensible_to_partition",
        ext_v && ext_w && sub && p1 && p2,
        format!("V {ext_v}, W {ext_w}, V ⊂ W1 and W ⊂ W2 {sub}"),
    ));
    let dist = distribution(v);
    let ok = (0..4).all(|i| dist.pair_structure(i) == vec![[5, 5], [1, 1]]);
    let shapes: Vec<String> = (0..4)
        .map(|i| format!("{:?}", dist.multiset(i)))
        .collect();
    cl.push(clause(
        "distribution_5511_every_coordinate",
        ok,
        shapes.join(" "),
    ));
    let partners = enumerate_equivalent_disjoint(v, true, budget)?;
    cl.push(clause(
        "unique_twin_free_partner",
        !partners.truncated && partners.codes == vec![w.clone()],
        format!(
            "{} partner(s), truncated {}",
            partners.codes.len(),
            partners.truncated
        ),
    ));
    let sv = siblings_condition(v);
    let sw = siblings_condition(w);
    cl.push(clause("siblings_condition", sv && sw, format!("V {sv}, W {sw}")));
    let twins1 = t.w1.twin_pairs();
    let one_each = twins1.len() == 4
        && twins1
            .iter()
            .all(|(a, b)| inter.contains(a) != inter.contains(b));
    cl.push(clause(
        "removed_words_split_twins",
        one_each,
        format!("{} twin pairs in W1", twins1.len()),
    ));

    let prose = prose_intersection(l, s);
    let prose_mismatch = prose
        .into_iter()
        .filter(|x| !inter.contains(x))
        .collect();

    Ok(Theorem52Report {
        l,
        s,
        v: v.clone(),
        w: w.clone(),
        intersection: inter.words().to_vec(),
        prose_mismatch,
        distribution: dist.counts.clone(),
        clauses: cl,
    })
}

pub fn verify_theorem52() -> Result<Theorem52Report> {
    verify_theorem52_with(Letter::A, Letter::B, crate::oracle::DEFAULT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lsw(s: &str) -> Word {
        Word::parse_named(s, &|c| match c {
            'l' => Some(Letter::A),
            's' => Some(Letter::B),
            _ => None,
        })
        .unwrap()
    }

    #[test]
    fn construction_sizes() {
        let t = theorem52_codes(Letter::A, Letter::B).unwrap();
        assert_eq!((t.w1.len(), t.w2.len(), t.v.len(), t.w.len()), (16, 16, 12, 12));
        let inter = t.w1.intersection(&t.w2);
        let expected: Vec<Word> = ["ls'ss", "l'l's'l", "ssl'l'", "s'lls'"]
            .iter()
            .map(|x| lsw(x))
            .collect();
        assert_eq!(inter, Code::new(expected).unwrap());
        assert!(theorem52_codes(Letter::A, Letter::A_).is_err());
        assert!(theorem52_codes(Letter::A, Letter::A).is_err());
    }

    #[test]
    fn v_words() {
        let t = theorem52_codes(Letter::A, Letter::B).unwrap();
        let v: Vec<Word> = [
            "abab", "aba'a", "a'aab", "a'aa'a", "ab'a'b'", "ab'b'b", "a'a'aa'", "a'a'ba",
            "a'b'a'a'", "b'ba'a'", "aa'ab'", "baab'",
        ]
        .iter()
        .map(|x| Word::parse_abc(x).unwrap())
        .collect();
        assert_eq!(t.v, Code::new(v).unwrap());
    }

    #[test]
    fn distribution_by_coordinate() {
        let t = theorem52_codes(Letter::A, Letter::B).unwrap();
        let d = distribution(&t.v);
        assert_eq!(d.pair_structure(0), vec![[5, 5], [1, 1]]);
        assert_eq!(d.pair_structure(2), vec![[5, 5], [1, 1]]);
        assert_eq!(d.pair_structure(1), vec![[3, 3], [3, 3]]);
        assert_eq!(d.pair_structure(3), vec![[3, 3], [3, 3]]);
    }

    #[test]
    fn prose_names_one_word_outside() {
        let r = verify_theorem52().unwrap();
        assert_eq!(r.prose_mismatch, vec![lsw("slls'")]);
    }
}
