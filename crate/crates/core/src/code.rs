use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{dichotomous_unchecked, twin_unchecked, Word, MAX_PAIRS};

/// A duplicate-free set of words of one length, kept in canonical order.
///
/// The polybox property (pairwise dichotomy) is evaluated once at
/// construction and carried as a flag.
#[derive(Clone)]
pub struct Code {
    words: Vec<Word>,
    dim: usize,
    pairs: u8,
    polybox: bool,
}

impl Code {
    /// Builds a code, rejecting duplicates and mixed lengths.
    pub fn new(words: Vec<Word>) -> Result<Code> {
        let dim = words.first().ok_or(Error::EmptyCode)?.dim();
        Code::with_dim(dim, words)
    }

    /// Like [`Code::new`] but also accepts the empty code.
    pub fn with_dim(dim: usize, mut words: Vec<Word>) -> Result<Code> {
        for w in &words {
            if w.dim() != dim {
                return Err(Error::LengthMismatch(dim, w.dim()));
            }
        }
        words.sort_unstable();
        if let Some(p) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::DuplicateWord(p[0]));
        }
        Ok(Code::from_sorted(dim, words))
    }

    /// Builds a code from arbitrary words, silently dropping duplicates.
    pub fn from_words_dedup(dim: usize, mut words: Vec<Word>) -> Code {
        words.sort_unstable();
        words.dedup();
        debug_assert!(words.iter().all(|w| w.dim() == dim));
        Code::from_sorted(dim, words)
    }

    pub fn empty(dim: usize) -> Code {
        Code::from_sorted(dim, Vec::new())
    }

    fn from_sorted(dim: usize, words: Vec<Word>) -> Code {
        let pairs = words.iter().map(|w| w.max_pair()).max().unwrap_or(0).max(2);
        let polybox = pairwise_dichotomous(&words);
        Code {
            words,
            dim,
            pairs,
            polybox,
        }
    }

    /// Raises the declared pair count (never below what the words use).
    pub fn with_pairs(mut self, pairs: u8) -> Result<Code> {
        if pairs > MAX_PAIRS || pairs < self.pairs {
            return Err(Error::Unsupported(format!("pair count {pairs}")));
        }
        self.pairs = pairs;
        Ok(self)
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pairs(&self) -> u8 {
        self.pairs
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.words.iter()
    }

    pub fn is_polybox(&self) -> bool {
        self.polybox
    }

    pub fn is_star_free(&self) -> bool {
        self.words.iter().all(|w| w.is_star_free())
    }

    /// First pair of words that are not dichotomous, if any.
    pub fn first_clash(&self) -> Option<(Word, Word)> {
        for (i, u) in self.words.iter().enumerate() {
            for w in &self.words[i + 1..] {
                if !dichotomous_unchecked(u, w) {
                    return Some((*u, *w));
                }
            }
        }
        None
    }

    /// All twin pairs inside the code, in canonical order.
    pub fn twin_pairs(&self) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for (i, u) in self.words.iter().enumerate() {
            for w in &self.words[i + 1..] {
                if twin_unchecked(u, w) {
                    out.push((*u, *w));
                }
            }
        }
        out
    }

    pub fn is_twin_free(&self) -> bool {
        self.twin_pairs().is_empty()
    }

    /// Words in `V^{i,l}`: those carrying letter `l` at 0-based coordinate `i`.
    pub fn at(&self, i: usize, l: crate::word::Letter) -> impl Iterator<Item = &Word> {
        self.words.iter().filter(move |w| w.get(i) == l)
    }

    pub fn union(&self, other: &Code) -> Code {
        let mut v = self.words.clone();
        v.extend_from_slice(&other.words);
        Code::from_words_dedup(self.dim, v).max_pairs(other.pairs.max(self.pairs))
    }

    pub fn intersection(&self, other: &Code) -> Code {
        let v = self
            .words
            .iter()
            .filter(|w| other.contains(w))
            .copied()
            .collect();
        Code::from_sorted(self.dim, v).max_pairs(self.pairs)
    }

    pub fn difference(&self, other: &Code) -> Code {
        let v = self
            .words
            .iter()
            .filter(|w| !other.contains(w))
            .copied()
            .collect();
        Code::from_sorted(self.dim, v).max_pairs(self.pairs)
    }

    pub fn is_disjoint(&self, other: &Code) -> bool {
        self.words.iter().all(|w| !other.contains(w))
    }

    fn max_pairs(mut self, p: u8) -> Code {
        self.pairs = self.pairs.max(p);
        self
    }
}

fn pairwise_dichotomous(words: &[Word]) -> bool {
    for (i, u) in words.iter().enumerate() {
        for w in &words[i + 1..] {
            if !dichotomous_unchecked(u, w) {
                return false;
            }
        }
    }
    true
}

/// True iff every unordered pair of distinct words is dichotomous.
pub fn is_polybox_code(v: &Code) -> bool {
    v.is_polybox()
}

impl<'a> IntoIterator for &'a Code {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;
    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.words {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.words.iter()).finish()
    }
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.words == other.words
    }
}

impl Eq for Code {}

impl std::hash::Hash for Code {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.dim.hash(h);
        self.words.hash(h);
    }
}

impl Ord for Code {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.words.cmp(&other.words))
    }
}

impl PartialOrd for Code {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Serialize, Deserialize)]
struct CodeRepr {
    dim: usize,
    words: Vec<Word>,
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CodeRepr {
            dim: self.dim,
            words: self.words.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Code {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Code, D::Error> {
        let r = CodeRepr::deserialize(d)?;
        Code::with_dim(r.dim, r.words).map_err(serde::de::Error::custom)
    }
}
