//! Code isomorphisms and canonical forms.
//!
//! An isomorphism permutes coordinates and applies, at every coordinate, a
//! letter bijection commuting with complementation. The canonical form of a
//! code is the least sorted image over all isomorphisms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::word::{Letter, Word, MAX_DIM};

/// Letter bijection fixing the star and commuting with complementation,
/// stored as the images of `+1 .. +p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LetterMap {
    pub images: Vec<i8>,
}

impl LetterMap {
    pub fn identity(pairs: u8) -> LetterMap {
        LetterMap {
            images: (1..=pairs as i8).collect(),
        }
    }

    pub fn apply(&self, l: Letter) -> Letter {
        if l.is_star() {
            return l;
        }
        let t = self.images[l.pair() as usize - 1];
        Letter::raw(if l.is_primed() { -t } else { t })
    }

    pub fn is_valid(&self) -> bool {
        let p = self.images.len();
        let mut seen = vec![false; p + 1];
        for &t in &self.images {
            let a = t.unsigned_abs() as usize;
            if a == 0 || a > p || seen[a] {
                return false;
            }
            seen[a] = true;
        }
        true
    }

    /// All `2^p p!` maps on `p` pairs.
    pub fn all(pairs: u8) -> Vec<LetterMap> {
        let mut out = Vec::new();
        let p = pairs as usize;
        let mut perm: Vec<i8> = (1..=pairs as i8).collect();
        permutations(&mut perm, 0, &mut |perm| {
            for signs in 0..(1u32 << p) {
                let images = perm
                    .iter()
                    .enumerate()
                    .map(|(k, &t)| if signs >> k & 1 == 1 { -t } else { t })
                    .collect();
                out.push(LetterMap { images });
            }
        });
        out
    }
}

fn permutations<T: Copy>(v: &mut [T], k: usize, f: &mut dyn FnMut(&[T])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Target coordinate `k` receives `letter_maps[k]` applied to source
/// coordinate `sigma[k]` (both 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeIsomorphism {
    pub sigma: Vec<usize>,
    pub letter_maps: Vec<LetterMap>,
}

impl CodeIsomorphism {
    pub fn identity(dim: usize, pairs: u8) -> CodeIsomorphism {
        CodeIsomorphism {
            sigma: (0..dim).collect(),
            letter_maps: vec![LetterMap::identity(pairs); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    pub fn apply_word(&self, v: &Word) -> Word {
        let mut out = Word::stars(v.dim());
        for (k, &c) in self.sigma.iter().enumerate() {
            out = out.with(k, self.letter_maps[k].apply(v.get(c)));
        }
        out
    }

    fn check(&self, dim: usize, pairs: u8) -> Result<()> {
        if self.dim() != dim || self.letter_maps.len() != dim {
            return Err(Error::LengthMismatch(self.dim(), dim));
        }
        let mut seen = [false; MAX_DIM];
        for &c in &self.sigma {
            if c >= dim || seen[c] {
                return Err(Error::Unsupported("sigma is not a permutation".into()));
            }
            seen[c] = true;
        }
        for m in &self.letter_maps {
            if !m.is_valid() || (m.images.len() as u8) < pairs {
                return Err(Error::Unsupported("invalid letter map".into()));
            }
        }
        Ok(())
    }
}

pub fn apply_isomorphism(m: &CodeIsomorphism, v: &Code) -> Result<Code> {
    m.check(v.dim(), v.pairs())?;
    Ok(Code::from_words_dedup(
        v.dim(),
        v.iter().map(|w| m.apply_word(w)).collect(),
    ))
}

#[inline]
fn rank_to_letter(r: u8) -> Letter {
    Letter::from_rank(r)
}

/// Partial isomorphism: target positions are grouped into consecutive blocks
/// whose internal order is still free; each source coordinate carries a
/// partial letter map.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct State {
    order: [u8; MAX_DIM],
    // bit k set: a block starts at target position k
    starts: u16,
    // maps[c][k-1]: image of +k at source coordinate c, 0 if unknown
    maps: [[i8; 3]; MAX_DIM],
    used: Vec<u64>,
}

struct Canon<'a> {
    words: &'a [Word],
    dim: usize,
    pairs: u8,
}

impl Canon<'_> {
    /// Least image of `v` over extensions of `s`, as letter ranks.
    fn image(&self, s: &State, v: &Word, out: &mut [u8; MAX_DIM]) {
        let d = self.dim;
        let mut k = 0;
        while k < d {
            let mut e = k + 1;
            while e < d && s.starts >> e & 1 == 0 {
                e += 1;
            }
            for t in k..e {
                out[t] = self.value(s, s.order[t] as usize, v);
            }
            out[k..e].sort_unstable();
            k = e;
        }
    }

    #[inline]
    fn value(&self, s: &State, c: usize, v: &Word) -> u8 {
        let x = v.get(c);
        if x.is_star() {
            return 0;
        }
        let m = s.maps[c][x.pair() as usize - 1];
        let t = if m != 0 {
            if x.is_primed() {
                -m
            } else {
                m
            }
        } else {
            self.fresh(s, c) as i8
        };
        Letter::raw(t).rank()
    }

    fn fresh(&self, s: &State, c: usize) -> u8 {
        let mut used = 0u8;
        for k in 0..self.pairs as usize {
            used |= 1 << s.maps[c][k].unsigned_abs();
        }
        (1..=self.pairs).find(|t| used >> t & 1 == 0).unwrap()
    }

    /// Commits word `wi` to `s`: fixes letter maps and splits blocks.
    fn refine(&self, s: &State, wi: usize) -> State {
        let v = &self.words[wi];
        let d = self.dim;
        let mut n = s.clone();
        n.used[wi / 64] |= 1 << (wi % 64);
        let mut k = 0;
        while k < d {
            let mut e = k + 1;
            while e < d && s.starts >> e & 1 == 0 {
                e += 1;
            }
            let mut items: Vec<(u8, u8)> = (k..e)
                .map(|t| {
                    let c = s.order[t];
                    (self.value(s, c as usize, v), c)
                })
                .collect();
            items.sort_unstable();
            for (j, &(val, c)) in items.iter().enumerate() {
                let t = k + j;
                n.order[t] = c;
                if j > 0 && items[j - 1].0 != val {
                    n.starts |= 1 << t;
                }
                let x = v.get(c as usize);
                if !x.is_star() {
                    let slot = &mut n.maps[c as usize][x.pair() as usize - 1];
                    if *slot == 0 {
                        let img = rank_to_letter(val).value();
                        *slot = if x.is_primed() { -img } else { img };
                    }
                }
            }
            k = e;
        }
        n
    }

    fn is_used(s: &State, wi: usize) -> bool {
        s.used[wi / 64] >> (wi % 64) & 1 == 1
    }

    fn run(&self, start: State) -> (Vec<Word>, State) {
        let n = self.words.len();
        let d = self.dim;
        let mut frontier: BTreeSet<State> = BTreeSet::new();
        frontier.insert(start);
        let mut result = Vec::with_capacity(n);
        let mut img = [0u8; MAX_DIM];
        for _ in 0..n {
            let mut best: Option<[u8; MAX_DIM]> = None;
            let mut ties: Vec<(&State, usize)> = Vec::new();
            for s in &frontier {
                for wi in 0..n {
                    if Self::is_used(s, wi) {
                        continue;
                    }
                    self.image(s, &self.words[wi], &mut img);
                    match best {
                        Some(b) if img[..d] > b[..d] => {}
                        Some(b) if img[..d] == b[..d] => ties.push((s, wi)),
                        _ => {
                            best = Some(img);
                            ties.clear();
                            ties.push((s, wi));
                        }
                    }
                }
            }
            let b = best.expect("frontier is never empty");
            let letters: Vec<Letter> = b[..d].iter().map(|&r| rank_to_letter(r)).collect();
            result.push(Word::new(&letters).unwrap());
            let next: BTreeSet<State> = ties.iter().map(|&(s, wi)| self.refine(s, wi)).collect();
            frontier = next;
        }
        let last = frontier.into_iter().next().unwrap();
        (result, last)
    }
}

fn start_state(dim: usize, n: usize, pinned: bool) -> State {
    let mut order = [0u8; MAX_DIM];
    for (k, o) in order.iter_mut().enumerate().take(dim) {
        *o = k as u8;
    }
    let mut maps = [[0i8; 3]; MAX_DIM];
    let mut starts = 1u16;
    if pinned {
        maps[0] = [1, 2, 3];
        if dim > 1 {
            starts |= 1 << 1;
        }
    }
    State {
        order,
        starts,
        maps,
        used: vec![0; n.div_ceil(64).max(1)],
    }
}

fn finish_iso(s: &State, dim: usize, pairs: u8) -> CodeIsomorphism {
    let sigma: Vec<usize> = s.order[..dim].iter().map(|&c| c as usize).collect();
    let letter_maps = sigma
        .iter()
        .map(|&c| {
            let mut images: Vec<i8> = s.maps[c][..pairs as usize].to_vec();
            for k in 0..pairs as usize {
                if images[k] == 0 {
                    let t = (1..=pairs as i8)
                        .find(|t| !images.iter().any(|x| x.abs() == *t))
                        .unwrap();
                    images[k] = t;
                }
            }
            LetterMap { images }
        })
        .collect();
    CodeIsomorphism { sigma, letter_maps }
}

fn canonical_impl(v: &Code, pinned: bool) -> (Code, CodeIsomorphism) {
    let d = v.dim();
    if v.is_empty() {
        return (v.clone(), CodeIsomorphism::identity(d, v.pairs()));
    }
    let canon = Canon {
        words: v.words(),
        dim: d,
        pairs: v.pairs(),
    };
    let (words, last) = canon.run(start_state(d, v.len(), pinned));
    let iso = finish_iso(&last, d, v.pairs());
    let code = Code::from_words_dedup(d, words);
    (code, iso)
}

/// Least sorted image of `v` over all isomorphisms.
pub fn canonical_form(v: &Code) -> Code {
    canonical_impl(v, false).0
}

/// Canonical form together with an isomorphism mapping `v` onto it.
pub fn canonical_form_with_iso(v: &Code) -> (Code, CodeIsomorphism) {
    canonical_impl(v, false)
}

/// Canonical form over isomorphisms that fix coordinate 1 and act as the
/// identity on its letters.
pub fn canonical_form_pinned(v: &Code) -> Code {
    canonical_impl(v, true).0
}

pub fn are_isomorphic(v: &Code, w: &Code) -> Result<bool> {
    if v.dim() != w.dim() {
        return Err(Error::LengthMismatch(v.dim(), w.dim()));
    }
    if v.len() != w.len() {
        return Ok(false);
    }
    Ok(canonical_form(v) == canonical_form(w))
}

/// Brute force over every isomorphism; for cross-checking.
pub fn canonical_form_exhaustive(v: &Code) -> Code {
    let d = v.dim();
    let maps = LetterMap::all(v.pairs());
    let mut best: Option<Code> = None;
    for sigma in all_permutations(d) {
        let mut choice = vec![0usize; d];
        loop {
            let iso = CodeIsomorphism {
                sigma: sigma.clone(),
                letter_maps: choice.iter().map(|&i| maps[i].clone()).collect(),
            };
            let img = apply_isomorphism(&iso, v).unwrap();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
            let mut k = 0;
            while k < d {
                choice[k] += 1;
                if choice[k] < maps.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == d {
                break;
            }
        }
    }
    best.unwrap_or_else(|| v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(ws: &[&str]) -> Code {
        Code::new(ws.iter().map(|s| Word::parse_abc(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let v = code(&["ab"]);
        assert_eq!(
            apply_isomorphism(&CodeIsomorphism::identity(2, 2), &v).unwrap(),
            v
        );
        let swap = CodeIsomorphism {
            sigma: vec![1, 0],
            letter_maps: vec![LetterMap::identity(2); 2],
        };
        assert_eq!(apply_isomorphism(&swap, &v).unwrap(), code(&["ba"]));
        let ab = CodeIsomorphism {
            sigma: vec![0, 1],
            letter_maps: vec![
                LetterMap { images: vec![2, 1] },
                LetterMap::identity(2),
            ],
        };
        assert_eq!(
            apply_isomorphism(&ab, &code(&["aa", "a'b"])).unwrap(),
            code(&["ba", "b'b"])
        );
        let bad = CodeIsomorphism {
            sigma: vec![0, 0],
            letter_maps: vec![LetterMap::identity(2); 2],
        };
        assert!(apply_isomorphism(&bad, &v).is_err());
    }

    #[test]
    fn letter_map_count() {
        assert_eq!(LetterMap::all(2).len(), 8);
        assert_eq!(LetterMap::all(3).len(), 48);
        assert!(LetterMap::all(2).iter().all(|m| m.is_valid()));
    }

    #[test]
    fn canonical_examples() {
        let v = code(&["ab"]);
        assert_eq!(canonical_form(&v), canonical_form(&code(&["ba"])));
        assert_eq!(canonical_form(&v), code(&["aa"]));
        let c = canonical_form(&code(&["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"]));
        assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn witness_maps_onto_canonical_form() {
        let v = code(&["a*b", "a'ab'", "ba'*", "b'b'b'"]);
        let (c, iso) = canonical_form_with_iso(&v);
        assert_eq!(apply_isomorphism(&iso, &v).unwrap(), c);
    }

    #[test]
    fn agrees_with_brute_force_on_small_codes() {
        for ws in [
            vec!["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"],
            vec!["*a", "aa'", "a'a'"],
            vec!["a*", "a'b", "a'b'"],
            vec!["ab*", "a'*b", "*a'b'", "bb'a"],
            vec!["abab", "a'a'ba", "b'ba'a'"],
        ] {
            let v = code(&ws);
            assert_eq!(canonical_form(&v), canonical_form_exhaustive(&v), "{v:?}");
        }
    }

    #[test]
    fn pinned_form_keeps_first_coordinate() {
        let v = code(&["ba", "b'a'"]);
        let c = canonical_form_pinned(&v);
        assert!(c.iter().all(|w| w.get(0).pair() == 2));
        assert_eq!(canonical_form(&v), code(&["aa", "a'a'"]));
    }
}
