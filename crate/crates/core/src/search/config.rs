//! Initial configurations: fixed rows plus first-letter counts for the rows
//! still to be chosen, one family per distribution case.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::structure::iso::{all_permutations, canonical_form_pinned};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialConfig {
    pub case_id: u8,
    /// Table (or family member) index within the case.
    pub variant: usize,
    pub dim: usize,
    pub fixed_words: Vec<Word>,
    /// First letter and number of unfixed rows starting with it.
    pub remaining: Vec<(Letter, usize)>,
    pub label: String,
}

impl InitialConfig {
    pub fn free_rows(&self) -> usize {
        self.remaining.iter().map(|r| r.1).sum()
    }

    pub fn fixed_code(&self) -> Code {
        Code::from_words_dedup(self.dim, self.fixed_words.clone())
    }

    /// Fixed rows pairwise dichotomous and twin-free, and twelve rows in all.
    pub fn is_valid(&self) -> bool {
        let c = self.fixed_code();
        c.len() == self.fixed_words.len()
            && c.is_polybox()
            && c.is_twin_free()
            && c.len() + self.free_rows() == 12
    }

    /// First-letter counts over all twelve rows.
    pub fn first_letter_counts(&self) -> BTreeMap<Letter, usize> {
        let mut m = BTreeMap::new();
        for w in &self.fixed_words {
            *m.entry(w.get(0)).or_insert(0) += 1;
        }
        for &(l, n) in &self.remaining {
            *m.entry(l).or_insert(0) += n;
        }
        m
    }
}

pub fn admissible(case_id: u8, dim: usize) -> bool {
    match case_id {
        1..=7 | 9..=12 => matches!(dim, 4 | 5),
        8 => matches!(dim, 4..=6),
        13 => dim == 4,
        _ => false,
    }
}

fn tail(values: &[i8], dim: usize) -> Vec<i8> {
    let mut t = values.to_vec();
    while t.len() + 1 < dim {
        t.push(2);
    }
    t
}

fn row(first: i8, tail_values: &[i8], dim: usize) -> Word {
    let mut v = vec![first];
    v.extend(tail(tail_values, dim));
    debug_assert_eq!(v.len(), dim);
    Word::from_values(&v).expect("table word")
}

const V_TAILS: [[i8; 3]; 4] = [[2, 1, 2], [1, -1, 2], [-1, 1, 2], [1, 2, 2]];

const W_TAILS: [[[i8; 3]; 5]; 2] = [
    [[2, 2, 1], [1, 1, -1], [1, 1, 2], [-1, 1, 1], [2, -1, 1]],
    [[2, 1, 1], [1, 2, -1], [1, 1, 2], [-1, 1, 1], [1, -1, -1]],
];

const U_TAILS_LONG: [[[i8; 4]; 6]; 2] = [
    [
        [2, 2, 2, 1],
        [1, 1, 1, -1],
        [1, 1, 1, 2],
        [-1, 1, 1, 1],
        [2, -1, 1, 1],
        [2, 2, -1, 1],
    ],
    [
        [2, 2, 1, 1],
        [1, 1, 2, -1],
        [1, 1, 1, 2],
        [-1, 1, 1, 1],
        [2, -1, 1, 1],
        [1, 1, -1, -1],
    ],
];

const U_TAILS_SHORT: [[i8; 3]; 6] = [
    [2, 2, 1],
    [1, 2, -1],
    [1, 1, 2],
    [-1, 1, 1],
    [2, -1, 1],
    [1, -1, -1],
];

const Q_TAILS: [[i8; 3]; 6] = [
    [1, 1, 1],
    [-1, -1, -1],
    [2, 1, -1],
    [-1, 2, 1],
    [1, -1, 2],
    [2, 2, 2],
];

const P_TAILS: [[[i8; 3]; 6]; 5] = [
    [[2, 1, 1], [1, 2, -1], [-1, -1, 2], [2, -1, -1], [-1, 2, 1], [1, 1, 2]],
    [[1, 2, 2], [-1, -1, 2], [-1, 1, 1], [2, -1, 2], [2, 1, 1], [1, 1, -1]],
    [[1, 2, 2], [-1, -1, 2], [-1, 1, 1], [2, 2, 1], [1, 2, -1], [-1, -1, -1]],
    [[1, 2, 2], [-1, -1, 2], [-1, 1, 1], [2, 2, 1], [2, -1, -1], [1, 1, -1]],
    [[1, 1, 2], [2, -1, -1], [-1, -1, 1], [-1, -1, 2], [1, 2, -1], [1, 1, 1]],
];

/// `(n_a, n_a', n_b, n_b')` of each case.
fn case_counts(case_id: u8) -> [usize; 4] {
    crate::structure::distribution::COROLLARY51_CASES[case_id as usize - 1].1
}

fn letter(v: i8) -> Letter {
    Letter::new(v).expect("alphabet letter")
}

fn remaining(pairs: &[(i8, usize)]) -> Vec<(Letter, usize)> {
    let mut out: Vec<(Letter, usize)> = pairs
        .iter()
        .filter(|p| p.1 > 0)
        .map(|&(v, n)| (letter(v), n))
        .collect();
    out.sort();
    out
}

fn v_rows(dim: usize) -> Vec<Word> {
    let firsts = [2, 2, -2, -2];
    firsts
        .iter()
        .zip(V_TAILS.iter())
        .map(|(&f, t)| row(f, t, dim))
        .collect()
}

fn w_rows(variant: usize, dim: usize) -> Vec<Word> {
    let firsts = [2, 2, -2, -2, -2];
    firsts
        .iter()
        .zip(W_TAILS[variant].iter())
        .map(|(&f, t)| row(f, t, dim))
        .collect()
}

fn u_rows(variant: usize, dim: usize) -> Option<Vec<Word>> {
    let firsts = [2, 2, -2, -2, -2, -2];
    match variant {
        0 | 1 if dim == 5 => Some(
            firsts
                .iter()
                .zip(U_TAILS_LONG[variant].iter())
                .map(|(&f, t)| row(f, t, dim))
                .collect(),
        ),
        2 => Some(
            firsts
                .iter()
                .zip(U_TAILS_SHORT.iter())
                .map(|(&f, t)| row(f, t, dim))
                .collect(),
        ),
        _ => None,
    }
}

fn q_rows(dim: usize) -> Vec<Word> {
    let firsts = [1, 1, 1, 1, 1, -1];
    firsts
        .iter()
        .zip(Q_TAILS.iter())
        .map(|(&f, t)| row(f, t, dim))
        .collect()
}

fn p_rows(variant: usize) -> Vec<Word> {
    let firsts = [2, 2, 2, -2, -2, -2];
    firsts
        .iter()
        .zip(P_TAILS[variant].iter())
        .map(|(&f, t)| row(f, t, 4))
        .collect()
}

fn cfg(
    case_id: u8,
    variant: usize,
    dim: usize,
    fixed: Vec<Word>,
    rem: &[(i8, usize)],
    label: String,
) -> InitialConfig {
    InitialConfig {
        case_id,
        variant,
        dim,
        fixed_words: fixed,
        remaining: remaining(rem),
        label,
    }
}

/// The literal tables, before validity filtering and deduplication.
pub fn raw_configs(case_id: u8, dim: usize) -> Result<Vec<InitialConfig>> {
    if !admissible(case_id, dim) {
        return Err(Error::Inadmissible { case: case_id, dim });
    }
    let [na, na_, _, _] = case_counts(case_id);
    let mut out = Vec::new();
    match case_id {
        1 | 2 | 4 | 9 => {
            out.push(cfg(case_id, 0, dim, v_rows(dim), &[(1, na), (-1, na_)], "v".into()));
        }
        3 | 5 | 10 => {
            for var in 0..2 {
                out.push(cfg(
                    case_id,
                    var,
                    dim,
                    w_rows(var, dim),
                    &[(1, na), (-1, na_)],
                    format!("w{}", var + 1),
                ));
            }
            out.push(cfg(
                case_id,
                2,
                dim,
                v_rows(dim),
                &[(-2, 1), (1, na), (-1, na_)],
                "v".into(),
            ));
        }
        11 | 12 => {
            let mut k = 0;
            for var in 0..3 {
                if let Some(rows) = u_rows(var, dim) {
                    out.push(cfg(
                        case_id,
                        k,
                        dim,
                        rows,
                        &[(1, na), (-1, na_)],
                        format!("u{}", var + 1),
                    ));
                    k += 1;
                }
            }
            for var in 0..2 {
                out.push(cfg(
                    case_id,
                    k,
                    dim,
                    w_rows(var, dim),
                    &[(-2, 1), (1, na), (-1, na_)],
                    format!("w{}", var + 1),
                ));
                k += 1;
            }
            out.push(cfg(
                case_id,
                k,
                dim,
                v_rows(dim),
                &[(-2, 2), (1, na), (-1, na_)],
                "v".into(),
            ));
        }
        6 | 7 => {
            let [_, _, nb, nb_] = case_counts(case_id);
            out.push(cfg(case_id, 0, dim, q_rows(dim), &[(2, nb), (-2, nb_)], "q".into()));
        }
        8 => out = case8_family(dim),
        13 => {
            for var in 0..5 {
                out.push(cfg(
                    13,
                    var,
                    4,
                    p_rows(var),
                    &[(1, 3), (-1, 3)],
                    format!("p{}", var + 1),
                ));
            }
            for var in 0..2 {
                out.push(cfg(
                    13,
                    5 + var,
                    4,
                    w_rows(var, 4),
                    &[(2, 1), (1, 3), (-1, 3)],
                    format!("w{}", var + 1),
                ));
            }
            out.push(cfg(
                13,
                7,
                4,
                v_rows(4),
                &[(2, 1), (-2, 1), (1, 3), (-1, 3)],
                "v".into(),
            ));
        }
        _ => unreachable!(),
    }
    Ok(out)
}

const SIGNED: [i8; 4] = [1, -1, 2, -2];

/// Every member of the case-8 family: five `+1` rows from the q-table and
/// five `-1` rows `x^1..x^5` under all letter choices and tail permutations.
fn case8_family(dim: usize) -> Vec<InitialConfig> {
    let mut q: Vec<Word> = Q_TAILS[..5]
        .iter()
        .map(|t| row(1, t, dim))
        .collect();
    q.sort();
    let tail_len = dim - 1;
    let extra = tail_len - 3;
    let perms = all_permutations(tail_len);
    let mut seen: BTreeSet<Vec<Word>> = BTreeSet::new();
    let mut out = Vec::new();
    let us: Vec<Vec<i8>> = match extra {
        0 => vec![vec![]],
        1 => SIGNED.iter().map(|&a| vec![a]).collect(),
        _ => SIGNED
            .iter()
            .flat_map(|&a| SIGNED.iter().map(move |&b| vec![a, b]))
            .collect(),
    };
    for &l1 in &SIGNED {
        for &l2 in &SIGNED {
            for &l3 in &SIGNED {
                let s_opts = |l: i8| -> Vec<i8> {
                    SIGNED.iter().copied().filter(|s| s.abs() != l.abs()).collect()
                };
                for &s1 in &s_opts(l1) {
                    for &s2 in &s_opts(l2) {
                        for &s3 in &s_opts(l3) {
                            for u in &us {
                                let base = [
                                    [l1, l2, l3],
                                    [-l1, -l2, -l3],
                                    [s1, l2, -l3],
                                    [-l1, s2, l3],
                                    [l1, -l2, s3],
                                ];
                                let xs: Vec<Vec<i8>> = base
                                    .iter()
                                    .map(|b| {
                                        let mut t = b.to_vec();
                                        t.extend_from_slice(u);
                                        t
                                    })
                                    .collect();
                                for sigma in &perms {
                                    let mut rows = q.clone();
                                    for x in &xs {
                                        let mut v = vec![-1i8];
                                        v.extend(sigma.iter().map(|&j| x[j]));
                                        rows.push(Word::from_values(&v).unwrap());
                                    }
                                    rows[5..].sort();
                                    if seen.insert(rows.clone()) {
                                        let label = format!(
                                            "l={l1:+},{l2:+},{l3:+} s={s1:+},{s2:+},{s3:+} u={u:?} sigma={sigma:?}"
                                        );
                                        out.push(cfg(8, out.len(), dim, rows, &[(2, 1), (-2, 1)], label));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigStats {
    pub raw: usize,
    pub invalid: usize,
    pub isomorphic_duplicates: usize,
    pub kept: usize,
}

/// Valid configurations of a case, one per class under isomorphisms that
/// fix the first coordinate and its letters.
pub fn initial_configs_with_stats(case_id: u8, dim: usize) -> Result<(Vec<InitialConfig>, ConfigStats)> {
    let raw = raw_configs(case_id, dim)?;
    let mut stats = ConfigStats {
        raw: raw.len(),
        ..ConfigStats::default()
    };
    let mut seen: BTreeSet<(Code, Vec<(Letter, usize)>)> = BTreeSet::new();
    let mut out = Vec::new();
    for c in raw {
        if !c.is_valid() {
            stats.invalid += 1;
            continue;
        }
        let key = (canonical_form_pinned(&c.fixed_code()), c.remaining.clone());
        if seen.insert(key) {
            out.push(c);
        } else {
            stats.isomorphic_duplicates += 1;
        }
    }
    stats.kept = out.len();
    Ok((out, stats))
}

pub fn initial_configs(case_id: u8, dim: usize) -> Result<Vec<InitialConfig>> {
    Ok(initial_configs_with_stats(case_id, dim)?.0)
}

/// Every admissible case at a dimension.
pub fn cases_for_dim(dim: usize) -> Vec<u8> {
    (1..=13).filter(|&c| admissible(c, dim)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::distribution::match_counts;

    #[test]
    fn admissibility() {
        assert!(matches!(
            initial_configs(13, 5),
            Err(Error::Inadmissible { case: 13, dim: 5 })
        ));
        assert!(initial_configs(1, 6).is_err());
        assert_eq!(cases_for_dim(6), vec![8]);
        assert_eq!(cases_for_dim(4).len(), 13);
    }

    #[test]
    fn case_one_table() {
        let cs = initial_configs(1, 5).unwrap();
        assert_eq!(cs.len(), 1);
        let c = &cs[0];
        assert_eq!(c.fixed_words[0], Word::from_values(&[2, 2, 1, 2, 2]).unwrap());
        assert_eq!(c.remaining, vec![(Letter::A, 7), (Letter::A_, 1)]);
    }

    #[test]
    fn tables_are_valid_and_counts_match() {
        for dim in 4..=5 {
            for case in cases_for_dim(dim) {
                if case == 8 {
                    continue;
                }
                for c in raw_configs(case, dim).unwrap() {
                    assert!(c.is_valid(), "case {case} d={dim} {}", c.label);
                    let m = c.first_letter_counts();
                    let get = |v: i8| *m.get(&Letter::new(v).unwrap()).unwrap_or(&0);
                    let counts = [get(1), get(-1), get(2), get(-2)];
                    assert_eq!(match_counts(counts, dim), Some(case), "{counts:?}");
                }
            }
        }
    }

    #[test]
    fn case_eight_family_is_reduced() {
        let (cs, st) = initial_configs_with_stats(8, 4).unwrap();
        assert!(st.kept < st.raw);
        assert_eq!(st.kept + st.invalid + st.isomorphic_duplicates, st.raw);
        assert!(cs.iter().all(|c| c.is_valid() && c.free_rows() == 2));
    }
}
