use std::fmt;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Transversal masks containing `l` at one coordinate, as a `2^p`-bit set.
///
/// A transversal is a `p`-bit mask whose bit `k-1` is set when pair `k`
/// contributes its primed letter.
pub fn letter_transversals(l: Letter, pairs: u8) -> u32 {
    let n = 1u32 << pairs;
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    if l.is_star() {
        return all;
    }
    let bit = l.pair() - 1;
    let mut m = 0u32;
    for t in 0..n {
        if ((t >> bit) & 1 == 1) == l.is_primed() {
            m |= 1 << t;
        }
    }
    m
}

/// A set of cells of the discrete box `(ES)^d`.
///
/// Cell index is base `2^p`, little-endian over coordinates: coordinate 1
/// is the least significant digit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CellBox {
    dim: usize,
    pairs: u8,
    bits: Vec<u64>,
}

impl CellBox {
    pub fn empty(dim: usize, pairs: u8) -> CellBox {
        let n = cell_count(dim, pairs);
        CellBox {
            dim,
            pairs,
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(dim: usize, pairs: u8) -> CellBox {
        let mut b = CellBox::empty(dim, pairs);
        let n = b.len();
        for i in 0..n / 64 {
            b.bits[i] = u64::MAX;
        }
        if n % 64 != 0 {
            b.bits[n / 64] = (1u64 << (n % 64)) - 1;
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pairs(&self) -> u8 {
        self.pairs
    }

    /// Number of cells in the ambient box.
    pub fn len(&self) -> usize {
        cell_count(self.dim, self.pairs)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&x| x == 0)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|x| x.count_ones() as usize).sum()
    }

    pub fn contains(&self, cell: usize) -> bool {
        (self.bits[cell / 64] >> (cell % 64)) & 1 == 1
    }

    pub fn insert(&mut self, cell: usize) {
        self.bits[cell / 64] |= 1 << (cell % 64);
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn first(&self) -> Option<usize> {
        self.bits
            .iter()
            .enumerate()
            .find(|(_, &x)| x != 0)
            .map(|(i, x)| i * 64 + x.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &x)| {
            let mut x = x;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let t = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(i * 64 + t)
            })
        })
    }

    pub fn is_subset(&self, other: &CellBox) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &CellBox) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &CellBox) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &CellBox) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &CellBox) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &CellBox) -> CellBox {
        let mut c = self.clone();
        c.intersect_with(other);
        c
    }

    pub fn complement(&self) -> CellBox {
        let mut c = CellBox::full(self.dim, self.pairs);
        c.subtract(self);
        c
    }

    /// Digits of a cell index: the transversal at each coordinate.
    pub fn digits(&self, cell: usize) -> Vec<u32> {
        let base = 1usize << self.pairs;
        let mut c = cell;
        (0..self.dim)
            .map(|_| {
                let t = (c % base) as u32;
                c /= base;
                t
            })
            .collect()
    }

    /// Hex dump, least significant cell first in each nibble, most
    /// significant cell last in the string.
    pub fn hex(&self) -> String {
        let n = self.len();
        let nibbles = n.div_ceil(4);
        (0..nibbles)
            .map(|k| {
                let mut v = 0u32;
                for b in 0..4 {
                    let cell = 4 * k + b;
                    if cell < n && self.contains(cell) {
                        v |= 1 << b;
                    }
                }
                char::from_digit(v, 16).unwrap()
            })
            .collect()
    }

    /// True iff every axis-`i` line lies entirely inside or outside the set.
    /// `i` is 1-based.
    pub fn is_i_cylinder(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.dim {
            return Err(Error::CoordinateOutOfRange {
                coord: i,
                dim: self.dim,
            });
        }
        let base = 1usize << self.pairs;
        let stride = base.pow((i - 1) as u32);
        for cell in 0..self.len() {
            if (cell / stride) % base != 0 {
                continue;
            }
            let first = self.contains(cell);
            if (1..base).any(|t| self.contains(cell + t * stride) != first) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for CellBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CellBox(d={}, p={}, {} cells, {})",
            self.dim,
            self.pairs,
            self.count(),
            self.hex()
        )
    }
}

pub fn cell_count(dim: usize, pairs: u8) -> usize {
    1usize << (pairs as usize * dim)
}

fn check_budget(w: &Word, pairs: u8) -> Result<()> {
    if let Some(l) = w.letters().iter().find(|l| l.pair() > pairs) {
        return Err(Error::PairBudget {
            word: *w,
            letter: l.value(),
            needed: l.pair(),
            pairs,
        });
    }
    Ok(())
}

/// The product box of a word.
pub fn cells(w: &Word, pairs: u8) -> Result<CellBox> {
    check_budget(w, pairs)?;
    let mut b = CellBox::empty(w.dim(), pairs);
    fill_cells(w, &mut b);
    Ok(b)
}

pub(crate) fn fill_cells(w: &Word, b: &mut CellBox) {
    let pairs = b.pairs;
    let shift = pairs as usize;
    let masks: Vec<u32> = w
        .letters()
        .iter()
        .map(|&l| letter_transversals(l, pairs))
        .collect();
    // Walk the product from the most significant coordinate down.
    fn rec(masks: &[u32], pos: usize, prefix: usize, shift: usize, b: &mut CellBox) {
        if pos == 0 {
            b.insert(prefix);
            return;
        }
        let mut m = masks[pos - 1];
        while m != 0 {
            let t = m.trailing_zeros() as usize;
            m &= m - 1;
            rec(masks, pos - 1, (prefix << shift) | t, shift, b);
        }
    }
    rec(&masks, masks.len(), 0, shift, b);
}

/// Union of the boxes of a code.
pub fn cells_code(v: &Code) -> Result<CellBox> {
    cells_code_with(v, v.pairs())
}

pub fn cells_code_with(v: &Code, pairs: u8) -> Result<CellBox> {
    let mut b = CellBox::empty(v.dim(), pairs);
    for w in v {
        check_budget(w, pairs)?;
        fill_cells(w, &mut b);
    }
    if v.is_polybox() {
        debug_assert_eq!(
            b.count(),
            v.iter()
                .map(|w| box_size(w, pairs))
                .sum::<usize>()
        );
    }
    Ok(b)
}

/// Number of cells in the box of `w`.
pub fn box_size(w: &Word, pairs: u8) -> usize {
    let half = 1usize << (pairs - 1);
    let full = 1usize << pairs;
    w.letters()
        .iter()
        .map(|l| if l.is_star() { full } else { half })
        .product()
}

/// Words (restricted to coordinate `i`) whose box meets the slice
/// `x` at coordinate `i`, with coordinate `i` dropped. `i` is 1-based.
pub fn slice(v: &Code, i: usize, x: u32) -> Result<Code> {
    if i == 0 || i > v.dim() {
        return Err(Error::CoordinateOutOfRange {
            coord: i,
            dim: v.dim(),
        });
    }
    if x >= 1 << v.pairs() {
        return Err(Error::Unsupported(format!("transversal {x}")));
    }
    if v.dim() < 2 {
        return Err(Error::Unsupported("slice of a one-dimensional code".into()));
    }
    let words = v
        .iter()
        .filter(|w| letter_transversals(w.get(i - 1), v.pairs()) >> x & 1 == 1)
        .map(|w| w.drop_index(i - 1))
        .collect();
    Ok(Code::from_words_dedup(v.dim() - 1, words))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_abc(s).unwrap()
    }

    fn code(ws: &[&str]) -> Code {
        Code::new(ws.iter().map(|s| w(s)).collect()).unwrap()
    }

    #[test]
    fn single_letter_boxes() {
        let a = cells(&w("a"), 2).unwrap();
        // transversals {a,b} = 0 and {a,b'} = 2
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(cells(&w("*"), 2).unwrap().count(), 4);
        assert_eq!(cells(&w("ab'a"), 2).unwrap().count(), 8);
        assert_eq!(cells(&w("c"), 3).unwrap().count(), 4);
        assert!(matches!(cells(&w("c"), 2), Err(Error::PairBudget { .. })));
    }

    #[test]
    fn letter_intersections() {
        // Two distinct non-complementary letters share a quarter of ES.
        for p in 2..=3u8 {
            for x in Letter::alphabet(p) {
                for y in Letter::alphabet(p) {
                    if x == y || x == y.complement() {
                        continue;
                    }
                    let m = letter_transversals(x, p) & letter_transversals(y, p);
                    assert_eq!(m.count_ones(), 1 << (p - 2));
                }
            }
        }
    }

    #[test]
    fn code_boxes() {
        let v = code(&["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"]);
        assert_eq!(cells_code(&v).unwrap().count(), 40);
        assert!(cells_code(&Code::empty(3)).unwrap().is_empty());
    }

    #[test]
    fn cylinders() {
        let full = CellBox::full(3, 2);
        for i in 1..=3 {
            assert!(full.is_i_cylinder(i).unwrap());
        }
        let one = cells(&w("aba'"), 2).unwrap();
        for i in 1..=3 {
            assert!(!one.is_i_cylinder(i).unwrap());
        }
        let pair = cells_code(&code(&["ab", "a'b"])).unwrap();
        assert!(pair.is_i_cylinder(1).unwrap());
        assert!(!pair.is_i_cylinder(2).unwrap());
    }

    #[test]
    fn slices() {
        let v = code(&["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"]);
        // transversal 0 contains a and b
        let s = slice(&v, 3, 0).unwrap();
        assert_eq!(s, code(&["aa", "a'b", "aa'"]));
        let all_a = code(&["aa", "ba", "a'a"]);
        // transversal 1 holds a'
        assert!(slice(&all_a, 2, 1).unwrap().is_empty());
    }

    #[test]
    fn hex_dump() {
        let b = cells(&w("a"), 2).unwrap();
        assert_eq!(b.hex(), "5");
        assert_eq!(CellBox::full(2, 2).hex(), "ffff");
    }
}
