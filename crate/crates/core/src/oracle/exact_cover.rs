//! Exact cover of a cell set by word boxes.
//!
//! Branches on the lowest uncovered cell and tries, in canonical word order,
//! every candidate box containing it that still fits into the uncovered part.
//! Every decomposition is reached exactly once.

use std::ops::ControlFlow;

use crate::oracle::cells::{box_size, fill_cells, CellBox};
use crate::word::{all_words, twin_unchecked, Word};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverOptions {
    pub allow_stars: bool,
    pub exact_size: Option<usize>,
    pub max_size: Option<usize>,
    pub twin_free: bool,
    pub exclude: Vec<Word>,
    pub budget: u64,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            allow_stars: false,
            exact_size: None,
            max_size: None,
            twin_free: false,
            exclude: Vec::new(),
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverStats {
    pub nodes: u64,
    pub truncated: bool,
}

pub struct ExactCover {
    target: CellBox,
    words: Vec<Word>,
    boxes: Vec<CellBox>,
    sizes: Vec<usize>,
    per_cell: Vec<Vec<u32>>,
    largest: usize,
}

impl ExactCover {
    pub fn new(target: &CellBox, opts: &CoverOptions) -> ExactCover {
        let d = target.dim();
        let p = target.pairs();
        let mut words = Vec::new();
        let mut boxes = Vec::new();
        let mut sizes = Vec::new();
        let mut per_cell: Vec<Vec<u32>> = vec![Vec::new(); target.len()];
        for w in all_words(d, p, opts.allow_stars) {
            if opts.exclude.contains(&w) {
                continue;
            }
            let mut b = CellBox::empty(d, p);
            fill_cells(&w, &mut b);
            if !b.is_subset(target) {
                continue;
            }
            let idx = words.len() as u32;
            for c in b.ones() {
                per_cell[c].push(idx);
            }
            sizes.push(box_size(&w, p));
            words.push(w);
            boxes.push(b);
        }
        let largest = sizes.iter().copied().max().unwrap_or(1);
        ExactCover {
            target: target.clone(),
            words,
            boxes,
            sizes,
            per_cell,
            largest,
        }
    }

    pub fn candidate_count(&self) -> usize {
        self.words.len()
    }

    /// Calls `visit` with each suit (in search order, words in the order
    /// chosen). Returns search statistics.
    pub fn run<F>(&self, opts: &CoverOptions, mut visit: F) -> CoverStats
    where
        F: FnMut(&[Word]) -> ControlFlow<()>,
    {
        let mut st = State {
            nodes: 0,
            truncated: false,
            stopped: false,
            chosen: Vec::new(),
        };
        let limit = match (opts.exact_size, opts.max_size) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => usize::MAX,
        };
        let mut remaining = self.target.clone();
        let mut remaining_count = remaining.count();
        self.rec(
            opts,
            limit,
            &mut remaining,
            &mut remaining_count,
            &mut st,
            &mut visit,
        );
        CoverStats {
            nodes: st.nodes,
            truncated: st.truncated,
        }
    }

    fn rec<F>(
        &self,
        opts: &CoverOptions,
        limit: usize,
        remaining: &mut CellBox,
        remaining_count: &mut usize,
        st: &mut State,
        visit: &mut F,
    ) where
        F: FnMut(&[Word]) -> ControlFlow<()>,
    {
        if st.stopped {
            return;
        }
        st.nodes += 1;
        if st.nodes > opts.budget {
            st.truncated = true;
            st.stopped = true;
            return;
        }
        let Some(cell) = remaining.first() else {
            if opts.exact_size.is_none_or(|n| n == st.chosen.len())
                && visit(&st.chosen).is_break()
            {
                st.stopped = true;
            }
            return;
        };
        let slots = limit.saturating_sub(st.chosen.len());
        if slots == 0 || remaining_count.div_ceil(self.largest) > slots {
            return;
        }
        for &ci in &self.per_cell[cell] {
            let ci = ci as usize;
            let b = &self.boxes[ci];
            if !b.is_subset(remaining) {
                continue;
            }
            let w = self.words[ci];
            if opts.twin_free && st.chosen.iter().any(|u| twin_unchecked(u, &w)) {
                continue;
            }
            remaining.subtract(b);
            *remaining_count -= self.sizes[ci];
            st.chosen.push(w);
            self.rec(opts, limit, remaining, remaining_count, st, visit);
            st.chosen.pop();
            *remaining_count += self.sizes[ci];
            remaining.union_with(b);
            if st.stopped {
                return;
            }
        }
    }
}

struct State {
    nodes: u64,
    truncated: bool,
    stopped: bool,
    chosen: Vec<Word>,
}
