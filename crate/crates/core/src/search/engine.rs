//! Backtracking completion of an initial configuration to twelve-word
//! twin-pair-free polybox codes.
//!
//! Free rows are grouped by their first letter. Each candidate carries a
//! bit set of the candidates it is compatible with (dichotomous, not a twin
//! pair), so the live candidate set is an intersection of bit sets.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{is_polybox_code, Code};
use crate::error::{Error, Result};
use crate::search::config::{cases_for_dim, initial_configs, InitialConfig};
use crate::structure::iso::canonical_form;
use crate::structure::siblings::{pair_has_siblings, siblings_condition};
use crate::word::{all_words, dichotomous_unchecked, twin_unchecked, Letter, Word, MAX_DIM};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Node budget per configuration; `None` means unlimited.
    pub budget: Option<u64>,
    /// Fill rows of one group in increasing candidate order.
    pub ordered: bool,
    /// Reject partial codes once both first-coordinate groups of a letter
    /// pair are complete and hold no 1-siblings.
    pub early_siblings: bool,
    /// Worker threads for [`run_all`]; 0 uses the rayon default.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            ordered: true,
            early_siblings: false,
            jobs: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub config: InitialConfig,
    pub completions: Vec<Code>,
    pub nodes_explored: u64,
    /// Twelve-word polybox twin-free codes reached before the siblings check.
    pub leaves: u64,
    pub truncated: bool,
    #[serde(with = "duration_secs")]
    pub wall_time: Duration,
}

mod duration_secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

#[derive(Debug, Clone)]
struct Group {
    letter: Letter,
    need: usize,
    /// Candidate index range `[start, end)`.
    start: usize,
    end: usize,
    mask: Vec<u64>,
}

/// Precomputed candidate universe of one configuration.
#[derive(Debug, Clone)]
pub struct Completion {
    fixed: Vec<Word>,
    cands: Vec<Word>,
    compat: Vec<Vec<u64>>,
    groups: Vec<Group>,
    /// Slot k belongs to group `slot_group[k]`.
    slot_group: Vec<usize>,
    words: usize,
    dim: usize,
    /// Siblings table over fixed rows then candidates: 0, or
    /// `1 + 4 i + class` for i-siblings with letter-pair class `class`.
    sib: Vec<u8>,
    /// Letter-pair classes met at each coordinate by fixed rows alone.
    base: [u8; MAX_DIM],
}

/// The four non-complementary letter pairs `{x, y}`, `x` from the first
/// pair and `y` from the second.
fn pair_class(x: Letter, y: Letter) -> u8 {
    let (x, y) = if x.pair() == 1 { (x, y) } else { (y, x) };
    x.is_primed() as u8 + 2 * y.is_primed() as u8
}

fn sib_code(u: &Word, w: &Word) -> u8 {
    let mut flip = 0;
    let mut other = None;
    for (i, (a, b)) in u.letters().iter().zip(w.letters()).enumerate() {
        if a == b {
            continue;
        }
        if a.complement() == *b {
            flip += 1;
        } else if other.is_none() {
            other = Some(i);
        } else {
            return 0;
        }
    }
    match (flip, other) {
        (1, Some(i)) if u.dim() > 1 => 1 + 4 * i as u8 + pair_class(u.get(i), w.get(i)),
        _ => 0,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitResult {
    pub completions: BTreeSet<Code>,
    pub nodes: u64,
    pub leaves: u64,
    pub truncated: bool,
}

impl UnitResult {
    pub fn absorb(&mut self, other: UnitResult) {
        self.completions.extend(other.completions);
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.truncated |= other.truncated;
    }
}

fn set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

/// Clears bits `lo..hi`.
fn clear_range(bits: &mut [u64], lo: usize, hi: usize) {
    let mut j = lo;
    while j < hi {
        let w = j / 64;
        let b = j % 64;
        let n = (hi - j).min(64 - b);
        let m = if n == 64 { !0 } else { ((1u64 << n) - 1) << b };
        bits[w] &= !m;
        j += n;
    }
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

impl Completion {
    pub fn new(config: &InitialConfig) -> Completion {
        let dim = config.dim;
        let fixed = config.fixed_words.clone();
        let mut cands = Vec::new();
        let mut groups = Vec::new();
        let mut slot_group = Vec::new();
        for &(letter, need) in &config.remaining {
            let start = cands.len();
            for w in all_words(dim, 2, false) {
                if w.get(0) != letter || fixed.contains(&w) {
                    continue;
                }
                if fixed
                    .iter()
                    .all(|f| dichotomous_unchecked(f, &w) && !twin_unchecked(f, &w))
                {
                    cands.push(w);
                }
            }
            for _ in 0..need {
                slot_group.push(groups.len());
            }
            groups.push(Group {
                letter,
                need,
                start,
                end: cands.len(),
                mask: Vec::new(),
            });
        }
        let words = cands.len().div_ceil(64).max(1);
        for g in &mut groups {
            g.mask = vec![0; words];
            for i in g.start..g.end {
                set(&mut g.mask, i);
            }
        }
        let compat = cands
            .iter()
            .map(|u| {
                let mut bits = vec![0u64; words];
                for (j, w) in cands.iter().enumerate() {
                    if dichotomous_unchecked(u, w) && !twin_unchecked(u, w) {
                        set(&mut bits, j);
                    }
                }
                bits
            })
            .collect();
        let all: Vec<Word> = fixed.iter().chain(&cands).copied().collect();
        let n = all.len();
        let mut sib = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                sib[a * n + b] = sib_code(&all[a], &all[b]);
            }
        }
        let mut base = [0u8; MAX_DIM];
        for a in 0..fixed.len() {
            for b in a + 1..fixed.len() {
                let k = sib[a * n + b];
                if k > 0 {
                    base[((k - 1) / 4) as usize] |= 1 << ((k - 1) % 4);
                }
            }
        }
        Completion {
            fixed,
            cands,
            compat,
            groups,
            slot_group,
            words,
            dim,
            sib,
            base,
        }
    }

    pub fn candidate_count(&self) -> usize {
        self.cands.len()
    }

    /// Candidates for the first free row; the search splits into one unit
    /// per entry.
    pub fn unit_count(&self) -> usize {
        match self.groups.first() {
            Some(g) if g.need > 0 => g.end - g.start,
            _ => 1,
        }
    }

    fn full(&self) -> Vec<u64> {
        let mut bits = vec![0u64; self.words];
        for i in 0..self.cands.len() {
            set(&mut bits, i);
        }
        bits
    }

    /// Explores the subtree whose first free row is candidate `unit` of the
    /// first group, with at most `budget` nodes.
    pub fn run_unit(&self, unit: usize, opts: &SearchOptions, budget: Option<u64>) -> UnitResult {
        let depth = self.slot_group.len();
        let mut st = Dfs {
            c: self,
            opts,
            budget,
            chosen: Vec::with_capacity(depth),
            left: self.groups.iter().map(|g| g.need).collect(),
            stack: vec![vec![0; self.words]; depth + 1],
            out: UnitResult::default(),
        };
        if depth == 0 {
            st.leaf();
            return st.out;
        }
        st.stack[0] = self.full();
        let g = &self.groups[self.slot_group[0]];
        let i = g.start + unit;
        if i < g.end {
            st.place(0, i);
        }
        st.out
    }

    /// Every coordinate meets all four letter-pair classes with siblings.
    fn siblings_fast(&self, chosen: &[usize]) -> bool {
        let f = self.fixed.len();
        let n = f + self.cands.len();
        let mut m = self.base;
        let mut mark = |k: u8| {
            if k > 0 {
                m[((k - 1) / 4) as usize] |= 1 << ((k - 1) % 4);
            }
        };
        for (x, &a) in chosen.iter().enumerate() {
            let ra = (f + a) * n;
            for r in 0..f {
                mark(self.sib[ra + r]);
            }
            for &b in &chosen[x + 1..] {
                mark(self.sib[ra + f + b]);
            }
        }
        m[..self.dim].iter().all(|&x| x == 0xF)
    }

    /// Fixed rows plus the given free rows as a code.
    fn assemble(&self, chosen: &[usize]) -> Code {
        let mut ws = self.fixed.clone();
        ws.extend(chosen.iter().map(|&i| self.cands[i]));
        Code::from_words_dedup(self.dim, ws)
    }
}

struct Dfs<'a> {
    c: &'a Completion,
    opts: &'a SearchOptions,
    budget: Option<u64>,
    chosen: Vec<usize>,
    /// Rows still to place per group.
    left: Vec<usize>,
    /// `stack[k]`: live candidates before slot `k` is filled.
    stack: Vec<Vec<u64>>,
    out: UnitResult,
}

impl Dfs<'_> {
    fn place(&mut self, slot: usize, i: usize) {
        if self.out.truncated {
            return;
        }
        if self.budget.is_some_and(|b| self.out.nodes >= b) {
            self.out.truncated = true;
            return;
        }
        self.out.nodes += 1;
        let c = self.c;
        let gi = c.slot_group[slot];
        {
            let (lo, hi) = self.stack.split_at_mut(slot + 1);
            let next = &mut hi[0];
            for ((n, a), b) in next.iter_mut().zip(&lo[slot]).zip(&c.compat[i]) {
                *n = a & b;
            }
            if self.opts.ordered {
                // later rows of this group come after i
                clear_range(next, c.groups[gi].start, i + 1);
            }
        }
        self.chosen.push(i);
        self.left[gi] -= 1;
        if self.feasible(slot + 1) {
            self.descend(slot + 1);
        }
        self.left[gi] += 1;
        self.chosen.pop();
    }

    fn feasible(&self, slot: usize) -> bool {
        let avail = &self.stack[slot];
        for (g, &left) in self.c.groups.iter().zip(&self.left) {
            if left > 0 && and_count(avail, &g.mask) < left {
                return false;
            }
        }
        if self.opts.early_siblings && !self.early_ok() {
            return false;
        }
        true
    }

    /// First-coordinate siblings for every non-complementary letter pair
    /// whose rows are all placed.
    fn early_ok(&self) -> bool {
        let c = self.c;
        let done = |l: Letter| {
            c.groups
                .iter()
                .zip(&self.left)
                .all(|(g, &left)| g.letter != l || left == 0)
        };
        let letters: Vec<Letter> = Letter::alphabet(2).collect();
        let mut code: Option<Code> = None;
        for (a, &l) in letters.iter().enumerate() {
            for &s in &letters[a + 1..] {
                if s == l.complement() || !done(l) || !done(s) {
                    continue;
                }
                let v = code.get_or_insert_with(|| c.assemble(&self.chosen));
                if !pair_has_siblings(v, 0, l, s) {
                    return false;
                }
            }
        }
        true
    }

    fn descend(&mut self, slot: usize) {
        let c = self.c;
        if slot == c.slot_group.len() {
            self.leaf();
            return;
        }
        let g = &c.groups[c.slot_group[slot]];
        for i in g.start..g.end {
            if self.stack[slot][i / 64] >> (i % 64) & 1 == 0 {
                continue;
            }
            self.place(slot, i);
            if self.out.truncated {
                return;
            }
        }
    }

    fn leaf(&mut self) {
        if self.c.fixed.len() + self.chosen.len() != 12 {
            return;
        }
        self.out.leaves += 1;
        if !self.c.siblings_fast(&self.chosen) {
            return;
        }
        let v = self.c.assemble(&self.chosen);
        if !siblings_condition(&v) {
            return;
        }
        debug_assert!(accepts(&v));
        self.out.completions.insert(canonical_form(&v));
    }
}

/// The acceptance predicate, evaluated on the code alone: twelve words,
/// polybox, twin-pair-free, and the siblings condition at every coordinate.
pub fn accepts(v: &Code) -> bool {
    v.len() == 12 && is_polybox_code(v) && v.twin_pairs().is_empty() && siblings_condition(v)
}

/// Re-checks a candidate completion of `config` from scratch: the fixed
/// rows are present, the first-letter counts match and [`accepts`] holds.
pub fn recheck(config: &InitialConfig, v: &Code) -> bool {
    if !config.fixed_words.iter().all(|w| v.contains(w)) {
        return false;
    }
    let counts = config.first_letter_counts();
    for l in Letter::alphabet(2) {
        let n = v.iter().filter(|w| w.get(0) == l).count();
        if n != counts.get(&l).copied().unwrap_or(0) {
            return false;
        }
    }
    accepts(v)
}

/// Runs units `from..` of a configuration, calling `progress` after each.
pub fn complete_from(
    config: &InitialConfig,
    opts: &SearchOptions,
    from: usize,
    mut acc: UnitResult,
    progress: &mut dyn FnMut(usize, &UnitResult),
) -> UnitResult {
    let c = Completion::new(config);
    for unit in from..c.unit_count() {
        if acc.truncated {
            break;
        }
        let left = opts.budget.map(|b| b.saturating_sub(acc.nodes));
        let r = c.run_unit(unit, opts, left);
        acc.absorb(r);
        progress(unit + 1, &acc);
    }
    acc
}

fn outcome(config: &InitialConfig, r: UnitResult, t: Duration) -> SearchOutcome {
    SearchOutcome {
        config: config.clone(),
        completions: r.completions.into_iter().collect(),
        nodes_explored: r.nodes,
        leaves: r.leaves,
        truncated: r.truncated,
        wall_time: t,
    }
}

/// All twelve-word completions of `config`, as canonical forms.
pub fn complete(config: &InitialConfig, opts: &SearchOptions) -> SearchOutcome {
    let t = Instant::now();
    let r = complete_from(config, opts, 0, UnitResult::default(), &mut |_, _| {});
    outcome(config, r, t.elapsed())
}

pub(crate) fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Every configuration of every admissible case at `dim`.
pub fn all_configs(dim: usize) -> Result<Vec<InitialConfig>> {
    if !(4..=6).contains(&dim) {
        return Err(Error::Unsupported(format!("search at d={dim}")));
    }
    let mut out = Vec::new();
    for case in cases_for_dim(dim) {
        out.extend(initial_configs(case, dim)?);
    }
    Ok(out)
}

/// Completes the given configurations in parallel; the result keeps the
/// input order.
pub fn run_configs(configs: &[InitialConfig], opts: &SearchOptions) -> Result<Vec<SearchOutcome>> {
    with_pool(opts.jobs, || {
        configs.par_iter().map(|c| complete(c, opts)).collect()
    })
}

pub fn run_all(dim: usize, opts: &SearchOptions) -> Result<Vec<SearchOutcome>> {
    run_configs(&all_configs(dim)?, opts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub case_id: u8,
    pub configs: usize,
    pub completions: usize,
    pub distinct_completions: Vec<Code>,
    pub truncated: usize,
    pub nodes: u64,
}

/// Per-case totals, completions merged across configurations.
pub fn summarize(outcomes: &[SearchOutcome]) -> Vec<CaseSummary> {
    let mut out: Vec<CaseSummary> = Vec::new();
    for o in outcomes {
        let id = o.config.case_id;
        let pos = match out.iter().position(|s| s.case_id == id) {
            Some(p) => p,
            None => {
                out.push(CaseSummary {
                    case_id: id,
                    configs: 0,
                    completions: 0,
                    distinct_completions: Vec::new(),
                    truncated: 0,
                    nodes: 0,
                });
                out.len() - 1
            }
        };
        let s = &mut out[pos];
        s.configs += 1;
        s.completions += o.completions.len();
        s.truncated += o.truncated as usize;
        s.nodes += o.nodes_explored;
        for c in &o.completions {
            if !s.distinct_completions.contains(c) {
                s.distinct_completions.push(c.clone());
            }
        }
    }
    for s in &mut out {
        s.distinct_completions.sort();
    }
    out.sort_by_key(|s| s.case_id);
    out
}
