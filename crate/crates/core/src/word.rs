//! Letters, words and the basic relations between words.
//!
//! A letter is a small signed integer: `0` is the star, `+k` and `-k` are the
//! two letters of the `k`-th complementary pair, so complementation is
//! negation. Words are fixed-size arrays of at most [`MAX_DIM`] letters.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 8;
pub const MAX_PAIRS: u8 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub struct Letter(i8);

impl Letter {
    pub const STAR: Letter = Letter(0);
    pub const A: Letter = Letter(1);
    pub const A_: Letter = Letter(-1);
    pub const B: Letter = Letter(2);
    pub const B_: Letter = Letter(-2);

    pub fn new(value: i8) -> Result<Letter> {
        if value.unsigned_abs() > MAX_PAIRS {
            return Err(Error::BadLetter(value as i32));
        }
        Ok(Letter(value))
    }

    pub(crate) const fn raw(value: i8) -> Letter {
        Letter(value)
    }

    #[inline]
    pub fn value(self) -> i8 {
        self.0
    }

    #[inline]
    pub fn is_star(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn complement(self) -> Letter {
        Letter(-self.0)
    }

    /// Index of the complementary pair (1-based), 0 for the star.
    #[inline]
    pub fn pair(self) -> u8 {
        self.0.unsigned_abs()
    }

    /// The primed letter of its pair (`-k`).
    #[inline]
    pub fn is_primed(self) -> bool {
        self.0 < 0
    }

    /// Position in the total order `* < +1 < -1 < +2 < -2 < ...`.
    #[inline]
    pub fn rank(self) -> u8 {
        let v = self.0;
        if v == 0 {
            0
        } else if v > 0 {
            (2 * v - 1) as u8
        } else {
            (-2 * v) as u8
        }
    }

    pub fn from_rank(rank: u8) -> Letter {
        if rank == 0 {
            Letter(0)
        } else if rank % 2 == 1 {
            Letter(rank.div_ceil(2) as i8)
        } else {
            Letter(-((rank / 2) as i8))
        }
    }

    /// All non-star letters of an alphabet with `pairs` pairs, in rank order.
    pub fn alphabet(pairs: u8) -> impl Iterator<Item = Letter> {
        (1..=2 * pairs).map(Letter::from_rank)
    }

    /// Letter name: `a`, `a'`, `b`, `b'`, `c`, `c'`, `*`.
    pub fn name(self) -> String {
        if self.is_star() {
            return "*".into();
        }
        let base = (b'a' + self.pair() - 1) as char;
        if self.is_primed() {
            format!("{base}'")
        } else {
            base.to_string()
        }
    }
}

impl TryFrom<i8> for Letter {
    type Error = Error;
    fn try_from(v: i8) -> Result<Letter> {
        Letter::new(v)
    }
}

impl From<Letter> for i8 {
    fn from(l: Letter) -> i8 {
        l.0
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_star() {
            f.write_str("*")
        } else {
            write!(f, "{:+}", self.0)
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Free function form of [`Letter::complement`].
pub fn complement(x: Letter) -> Letter {
    x.complement()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    len: u8,
    letters: [Letter; MAX_DIM],
}

impl Word {
    pub fn new(letters: &[Letter]) -> Result<Word> {
        if letters.is_empty() || letters.len() > MAX_DIM {
            return Err(Error::BadLength(letters.len()));
        }
        let mut arr = [Letter::STAR; MAX_DIM];
        arr[..letters.len()].copy_from_slice(letters);
        Ok(Word {
            len: letters.len() as u8,
            letters: arr,
        })
    }

    pub fn from_values(values: &[i8]) -> Result<Word> {
        let letters = values
            .iter()
            .map(|&v| Letter::new(v))
            .collect::<Result<Vec<_>>>()?;
        Word::new(&letters)
    }

    pub fn stars(dim: usize) -> Word {
        assert!((1..=MAX_DIM).contains(&dim));
        Word {
            len: dim as u8,
            letters: [Letter::STAR; MAX_DIM],
        }
    }

    /// Parses compact letter notation such as `ab'a*` or `l s' s s` with
    /// `l`, `s` bound to given letters. Whitespace is ignored.
    pub fn parse_named(text: &str, bind: &dyn Fn(char) -> Option<Letter>) -> Result<Word> {
        let mut out: Vec<Letter> = Vec::new();
        for (col, ch) in text.chars().enumerate() {
            match ch {
                ' ' | '\t' => {}
                '\'' => {
                    let last = out.last_mut().ok_or_else(|| Error::Parse {
                        line: 1,
                        column: col + 1,
                        token: ch.to_string(),
                        message: "prime without a letter".into(),
                    })?;
                    *last = last.complement();
                }
                '*' => out.push(Letter::STAR),
                c => {
                    let l = bind(c).ok_or_else(|| Error::Parse {
                        line: 1,
                        column: col + 1,
                        token: c.to_string(),
                        message: "unknown letter".into(),
                    })?;
                    out.push(l);
                }
            }
        }
        Word::new(&out)
    }

    /// `a`/`b`/`c` notation: `a = +1`, `b = +2`, `c = +3`.
    pub fn parse_abc(text: &str) -> Result<Word> {
        Word::parse_named(text, &|c| match c {
            'a'..='c' => Some(Letter::raw((c as u8 - b'a' + 1) as i8)),
            _ => None,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters[..self.len as usize]
    }

    #[inline]
    pub fn get(&self, i: usize) -> Letter {
        debug_assert!(i < self.dim());
        self.letters[i]
    }

    /// Replaces the letter at 0-based position `i`.
    pub fn with(&self, i: usize, l: Letter) -> Word {
        let mut w = *self;
        w.letters[i] = l;
        w
    }

    pub fn is_star_free(&self) -> bool {
        self.letters().iter().all(|l| !l.is_star())
    }

    pub fn star_count(&self) -> usize {
        self.letters().iter().filter(|l| l.is_star()).count()
    }

    /// Largest pair index used by the word.
    pub fn max_pair(&self) -> u8 {
        self.letters().iter().map(|l| l.pair()).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        let mut v = self.letters().to_vec();
        v.extend_from_slice(other.letters());
        Word::new(&v)
    }

    /// Removes the 1-based coordinates in `coords`, keeping the order of the rest.
    pub fn drop(&self, coords: &[usize]) -> Result<Word> {
        let d = self.dim();
        let mut mask = 0u16;
        for &c in coords {
            if c == 0 || c > d {
                return Err(Error::CoordinateOutOfRange { coord: c, dim: d });
            }
            mask |= 1 << (c - 1);
        }
        let kept: Vec<Letter> = (0..d)
            .filter(|i| mask & (1 << i) == 0)
            .map(|i| self.letters[i])
            .collect();
        Word::new(&kept)
    }

    /// Drops the 0-based coordinate `i`; internal fast path.
    pub(crate) fn drop_index(&self, i: usize) -> Word {
        let d = self.dim();
        let mut out = Word::stars(d - 1);
        let mut k = 0;
        for j in 0..d {
            if j != i {
                out.letters[k] = self.letters[j];
                k += 1;
            }
        }
        out
    }

    pub fn names(&self) -> String {
        self.letters().iter().map(|l| l.name()).collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters()
            .iter()
            .map(|l| l.rank())
            .cmp(other.letters().iter().map(|l| l.rank()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        crate::text::parse_word(&s, 1).map_err(serde::de::Error::custom)
    }
}

fn check_len(u: &Word, w: &Word) -> Result<()> {
    if u.dim() != w.dim() {
        return Err(Error::LengthMismatch(u.dim(), w.dim()));
    }
    Ok(())
}

#[inline]
pub(crate) fn dichotomous_unchecked(u: &Word, w: &Word) -> bool {
    u.letters()
        .iter()
        .zip(w.letters())
        .any(|(a, b)| !a.is_star() && a.complement() == *b)
}

#[inline]
pub(crate) fn twin_unchecked(u: &Word, w: &Word) -> bool {
    let mut flips = 0;
    for (a, b) in u.letters().iter().zip(w.letters()) {
        if a == b {
            continue;
        }
        if a.is_star() || a.complement() != *b {
            return false;
        }
        flips += 1;
    }
    flips == 1
}

pub fn are_dichotomous(u: &Word, w: &Word) -> Result<bool> {
    check_len(u, w)?;
    Ok(dichotomous_unchecked(u, w))
}

pub fn is_twin_pair(u: &Word, w: &Word) -> Result<bool> {
    check_len(u, w)?;
    Ok(twin_unchecked(u, w))
}

#[inline]
pub(crate) fn siblings_unchecked(u: &Word, w: &Word, i: usize) -> bool {
    let (a, b) = (u.get(i), w.get(i));
    if a == b || a == b.complement() {
        return false;
    }
    twin_unchecked(&u.drop_index(i), &w.drop_index(i))
}

/// `i` is 1-based.
pub fn is_i_siblings(u: &Word, w: &Word, i: usize) -> Result<bool> {
    check_len(u, w)?;
    if i == 0 || i > u.dim() {
        return Err(Error::CoordinateOutOfRange {
            coord: i,
            dim: u.dim(),
        });
    }
    if u.dim() < 2 {
        return Ok(false);
    }
    Ok(siblings_unchecked(u, w, i - 1))
}

/// Every star-free word of length `dim` over `pairs` complementary pairs, in
/// canonical order.
pub fn all_words(dim: usize, pairs: u8, with_star: bool) -> Vec<Word> {
    let mut letters: Vec<Letter> = Vec::new();
    if with_star {
        letters.push(Letter::STAR);
    }
    letters.extend(Letter::alphabet(pairs));
    let mut out = Vec::new();
    let mut cur = Word::stars(dim);
    fn rec(pos: usize, cur: &mut Word, letters: &[Letter], out: &mut Vec<Word>) {
        if pos == cur.dim() {
            out.push(*cur);
            return;
        }
        for &l in letters {
            cur.letters[pos] = l;
            rec(pos + 1, cur, letters, out);
        }
    }
    rec(0, &mut cur, &letters, &mut out);
    out
}
