//! Keller graphs: vertices are the star-free words of `S^d`, two of them
//! adjacent when dichotomous and not a twin pair.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::search::theorem52::theorem52_codes;
use crate::structure::iso::canonical_form;
use crate::word::{all_words, dichotomous_unchecked, twin_unchecked, Letter, Word};

/// Exact maximum-clique search is offered up to this many vertices.
pub const EXACT_LIMIT: usize = 4096;

pub fn keller_adjacent(u: &Word, w: &Word) -> Result<bool> {
    if u.dim() != w.dim() {
        return Err(Error::LengthMismatch(u.dim(), w.dim()));
    }
    for x in [u, w] {
        if !x.is_star_free() {
            return Err(Error::StarInWord(*x));
        }
    }
    Ok(dichotomous_unchecked(u, w) && !twin_unchecked(u, w))
}

#[derive(Debug, Clone)]
pub struct KellerGraph {
    dim: usize,
    pairs: u8,
    vertices: Vec<Word>,
    adj: Vec<Vec<u64>>,
}

fn bit(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

impl KellerGraph {
    pub fn new(dim: usize, pairs: u8) -> Result<KellerGraph> {
        if dim == 0 || dim > crate::word::MAX_DIM || pairs == 0 || pairs > crate::word::MAX_PAIRS {
            return Err(Error::Unsupported(format!("Keller graph d={dim}, p={pairs}")));
        }
        let vertices = all_words(dim, pairs, false);
        let n = vertices.len();
        let words = n.div_ceil(64);
        let adj = vertices
            .par_iter()
            .map(|u| {
                let mut row = vec![0u64; words];
                for (j, w) in vertices.iter().enumerate() {
                    if dichotomous_unchecked(u, w) && !twin_unchecked(u, w) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        Ok(KellerGraph {
            dim,
            pairs,
            vertices,
            adj,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pairs(&self) -> u8 {
        self.pairs
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn index(&self, w: &Word) -> Option<usize> {
        self.vertices.binary_search(w).ok()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        bit(&self.adj[i], j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().map(|x| x.count_ones() as usize).sum()
    }

    /// Vertices outside `v` adjacent to every word of `v`.
    pub fn extenders(&self, v: &Code) -> Vec<Word> {
        let idx: Vec<usize> = v.iter().filter_map(|w| self.index(w)).collect();
        (0..self.len())
            .filter(|&j| !idx.contains(&j) && idx.iter().all(|&i| self.adjacent(i, j)))
            .map(|j| self.vertices[j])
            .collect()
    }
}

/// All pairs of `v` adjacent in `g`.
pub fn is_clique(v: &Code, g: &KellerGraph) -> Result<bool> {
    if v.is_empty() {
        return Ok(true);
    }
    if v.dim() != g.dim() {
        return Err(Error::LengthMismatch(v.dim(), g.dim()));
    }
    let mut idx = Vec::with_capacity(v.len());
    for w in v {
        match g.index(w) {
            Some(i) => idx.push(i),
            None => return Ok(false),
        }
    }
    Ok(idx
        .iter()
        .enumerate()
        .all(|(a, &i)| idx[a + 1..].iter().all(|&j| g.adjacent(i, j))))
}

pub fn is_maximal_clique(v: &Code, g: &KellerGraph) -> Result<bool> {
    Ok(is_clique(v, g)? && g.extenders(v).is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    pub dim: usize,
    pub pairs: u8,
    pub clique: Code,
    pub size: usize,
    /// The search finished, so `size` is the clique number.
    pub exact: bool,
    pub nodes: u64,
}

struct Bnb<'a> {
    g: &'a KellerGraph,
    /// Position in the search order to vertex index, and back.
    order: Vec<usize>,
    adj: Vec<Vec<u64>>,
    best: Vec<usize>,
    cur: Vec<usize>,
    nodes: u64,
    budget: u64,
    truncated: bool,
}

impl Bnb<'_> {
    /// Greedy colouring of `cand` in order; returns vertices and colour
    /// bounds sorted by increasing colour.
    fn colour(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut left = cand.to_vec();
        let mut verts = Vec::new();
        let mut bounds = Vec::new();
        let mut k = 0;
        while left.iter().any(|&x| x != 0) {
            k += 1;
            let mut q = left.clone();
            while let Some(v) = first(&q) {
                q[v / 64] &= !(1 << (v % 64));
                left[v / 64] &= !(1 << (v % 64));
                for (x, a) in q.iter_mut().zip(&self.adj[v]) {
                    *x &= !a;
                }
                verts.push(v);
                bounds.push(k);
            }
        }
        (verts, bounds)
    }

    fn expand(&mut self, mut cand: Vec<u64>) {
        let (verts, bounds) = self.colour(&cand);
        for k in (0..verts.len()).rev() {
            if self.cur.len() + bounds[k] <= self.best.len() {
                return;
            }
            if self.nodes >= self.budget {
                self.truncated = true;
                return;
            }
            self.nodes += 1;
            let v = verts[k];
            self.cur.push(v);
            let next: Vec<u64> = cand.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
            if next.iter().all(|&x| x == 0) {
                if self.cur.len() > self.best.len() {
                    self.best = self.cur.clone();
                }
            } else {
                self.expand(next);
            }
            self.cur.pop();
            if self.truncated {
                return;
            }
            cand[v / 64] &= !(1 << (v % 64));
        }
    }
}

fn first(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &x)| x != 0)
        .map(|(i, x)| i * 64 + x.trailing_zeros() as usize)
}

/// Branch and bound with a greedy-colouring bound. Vertices are ordered by
/// decreasing degree, ties in word order. Exhausting `budget` nodes returns
/// the best clique found with `exact = false`.
pub fn max_clique(g: &KellerGraph, budget: u64) -> CliqueResult {
    let n = g.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(g.degree(i)), i));
    let words = n.div_ceil(64);
    let mut pos = vec![0; n];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }
    let adj: Vec<Vec<u64>> = order
        .iter()
        .map(|&i| {
            let mut row = vec![0u64; words];
            for j in 0..n {
                if g.adjacent(i, j) {
                    row[pos[j] / 64] |= 1 << (pos[j] % 64);
                }
            }
            row
        })
        .collect();
    let mut b = Bnb {
        g,
        order,
        adj,
        best: Vec::new(),
        cur: Vec::new(),
        nodes: 0,
        budget,
        truncated: false,
    };
    let mut all = vec![0u64; words];
    for p in 0..n {
        all[p / 64] |= 1 << (p % 64);
    }
    b.expand(all);
    let ws = b.best.iter().map(|&p| b.g.vertices[b.order[p]]).collect();
    let clique = Code::from_words_dedup(g.dim(), ws);
    CliqueResult {
        dim: g.dim(),
        pairs: g.pairs(),
        size: clique.len(),
        clique,
        exact: !b.truncated && n <= EXACT_LIMIT,
        nodes: b.nodes,
    }
}

const THEOREM61_TABLE: &str = "\
l s l s l l l
l s l' l l l l
l' l l s l l l
l' l l' l l l l
l s' l' s' l l l
l s' s' s l l l
l' l' l l' l l l
l' l' s l l l l
l' s' l' l' l l l
s' s l' l' l l l
l l' l s' l l l
s l l s' l l l";

fn bind(l: Letter, s: Letter) -> impl Fn(char) -> Option<Letter> {
    move |c| match c {
        'l' => Some(l),
        's' => Some(s),
        _ => None,
    }
}

/// The twelve-row seven-letter table with `l = a`, `s = b`.
pub fn theorem61_fixture() -> Code {
    let b = bind(Letter::A, Letter::B);
    let ws = THEOREM61_TABLE
        .lines()
        .map(|r| Word::parse_named(&r.replace(' ', ""), &b).expect("table row"))
        .collect();
    Code::new(ws).expect("table rows are distinct")
}

/// The four rows `v, u, p, q` singled out in the argument.
pub fn theorem61_selected() -> Vec<Word> {
    let b = bind(Letter::A, Letter::B);
    ["lslslll", "lsl'llll", "ls'l's'lll", "s'sl'l'lll"]
        .iter()
        .map(|r| Word::parse_named(r, &b).expect("selected row"))
        .collect()
}

/// `{v lll : v in V}` for the twelve-word construction with `l = a`, `s = b`.
pub fn theorem61_expected() -> Code {
    let v = theorem52_codes(Letter::A, Letter::B)
        .expect("letters a, b")
        .v;
    let tail = Word::new(&[Letter::A; 3]).expect("three letters");
    let ws = v.iter().map(|w| w.concat(&tail).expect("seven letters")).collect();
    Code::new(ws).expect("distinct words")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corollary64 {
    pub coord: usize,
    /// Number of distinct letter pairs used at `coord`.
    pub classes: usize,
    pub holds: bool,
    /// Smallest alphabet (in pairs) on which five pairwise
    /// non-complementary distinct letters exist.
    pub min_pairs: u8,
}

/// Whether `v` holds five words whose letters at coordinate `i` (1-based)
/// are pairwise distinct and non-complementary.
pub fn corollary64_condition(v: &Code, i: usize) -> Result<Corollary64> {
    if v.is_empty() {
        return Ok(Corollary64 {
            coord: i,
            classes: 0,
            holds: false,
            min_pairs: 5,
        });
    }
    if i == 0 || i > v.dim() {
        return Err(Error::CoordinateOutOfRange {
            coord: i,
            dim: v.dim(),
        });
    }
    let mut classes: Vec<u8> = v
        .iter()
        .map(|w| w.get(i - 1))
        .filter(|l| !l.is_star())
        .map(|l| l.pair())
        .collect();
    classes.sort_unstable();
    classes.dedup();
    Ok(Corollary64 {
        coord: i,
        classes: classes.len(),
        holds: classes.len() >= 5,
        min_pairs: 5,
    })
}

/// Canonical representative of a clique, for comparing witnesses.
pub fn canonical_witness(r: &CliqueResult) -> Code {
    canonical_form(&r.clique)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_abc(s).unwrap()
    }

    #[test]
    fn adjacency() {
        assert!(!keller_adjacent(&w("aa"), &w("a'a")).unwrap());
        assert!(keller_adjacent(&w("aa"), &w("a'a'")).unwrap());
        assert!(!keller_adjacent(&w("aa"), &w("ba")).unwrap());
        assert!(keller_adjacent(&w("a*"), &w("a'a")).is_err());
    }

    #[test]
    fn construction_is_maximal_clique() {
        let g = KellerGraph::new(4, 2).unwrap();
        let v = theorem52_codes(Letter::A, Letter::B).unwrap().v;
        assert!(is_clique(&v, &g).unwrap());
        assert!(is_maximal_clique(&v, &g).unwrap());
    }

    #[test]
    fn fixture_matches() {
        let f = theorem61_fixture();
        assert_eq!(f, theorem61_expected());
        assert!(f.is_polybox() && f.is_twin_free());
        assert!(theorem61_selected().iter().all(|x| f.contains(x)));
    }

    #[test]
    fn condition_needs_five_pairs() {
        let v = theorem52_codes(Letter::A, Letter::B).unwrap().v;
        for i in 1..=4 {
            let r = corollary64_condition(&v, i).unwrap();
            assert!(!r.holds);
            assert_eq!(r.classes, 2);
        }
        let c = Code::new(vec![w("a"), w("b"), w("c")]).unwrap();
        assert!(!corollary64_condition(&c, 1).unwrap().holds);
        assert!(!corollary64_condition(&Code::empty(3), 1).unwrap().holds);
    }
}
