use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::word::{siblings_unchecked, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiblingEdge {
    pub u: Word,
    pub w: Word,
    /// 1-based coordinates `i` for which the pair are i-siblings.
    pub colors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiblingsGraph {
    pub vertices: Code,
    pub edges: Vec<SiblingEdge>,
}

impl SiblingsGraph {
    pub fn degree(&self, v: &Word) -> usize {
        self.edges
            .iter()
            .filter(|e| &e.u == v || &e.w == v)
            .count()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices
            .iter()
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    fn adjacent(&self, a: &Word, b: &Word) -> bool {
        self.edges
            .iter()
            .any(|e| (&e.u == a && &e.w == b) || (&e.u == b && &e.w == a))
    }

    pub fn has_triangle(&self) -> bool {
        let vs = self.vertices.words();
        for e in &self.edges {
            for x in vs {
                if x != &e.u && x != &e.w && self.adjacent(x, &e.u) && self.adjacent(x, &e.w) {
                    return true;
                }
            }
        }
        false
    }
}

pub fn siblings_graph(v: &Code) -> SiblingsGraph {
    let ws = v.words();
    let mut edges = Vec::new();
    for (a, u) in ws.iter().enumerate() {
        for w in &ws[a + 1..] {
            let colors: Vec<usize> = (0..v.dim())
                .filter(|&i| v.dim() > 1 && siblings_unchecked(u, w, i))
                .map(|i| i + 1)
                .collect();
            if !colors.is_empty() {
                edges.push(SiblingEdge {
                    u: *u,
                    w: *w,
                    colors,
                });
            }
        }
    }
    SiblingsGraph {
        vertices: v.clone(),
        edges,
    }
}

/// Average degree at most `m/2`, `m` the largest degree sum over an edge;
/// for twin-free vertex codes the graph must also be triangle-free.
pub fn graph_degree_bound_check(g: &SiblingsGraph) -> bool {
    if g.vertices.is_empty() {
        return true;
    }
    let m = g
        .edges
        .iter()
        .map(|e| g.degree(&e.u) + g.degree(&e.w))
        .max()
        .unwrap_or(0);
    let total_degree = 2 * g.edges.len();
    let bound_ok = 2 * total_degree <= m * g.vertices.len();
    let triangle_ok = !g.vertices.is_twin_free() || !g.has_triangle();
    bound_ok && triangle_ok
}

/// For every coordinate and every pair `{l, s}` of distinct
/// non-complementary letters, `V^{i,l} ∪ V^{i,s}` holds an i-siblings pair.
pub fn siblings_condition(v: &Code) -> bool {
    siblings_failure(v).is_none()
}

/// First `(i, l, s)` (0-based `i`) violating [`siblings_condition`].
pub fn siblings_failure(v: &Code) -> Option<(usize, Letter, Letter)> {
    let pairs = v.pairs();
    let letters: Vec<Letter> = Letter::alphabet(pairs).collect();
    for i in 0..v.dim() {
        for (a, &l) in letters.iter().enumerate() {
            for &s in &letters[a + 1..] {
                if s == l.complement() {
                    continue;
                }
                if !pair_has_siblings(v, i, l, s) {
                    return Some((i, l, s));
                }
            }
        }
    }
    None
}

pub(crate) fn pair_has_siblings(v: &Code, i: usize, l: Letter, s: Letter) -> bool {
    v.at(i, l)
        .any(|u| v.at(i, s).any(|w| siblings_unchecked(u, w, i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(ws: &[&str]) -> Code {
        Code::new(ws.iter().map(|s| Word::parse_abc(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn edgeless_and_single_edge() {
        let g = siblings_graph(&code(&["aa", "a'a'"]));
        assert!(g.edges.is_empty());
        assert!(graph_degree_bound_check(&g));
        let g = siblings_graph(&code(&["baa", "aaa'"]));
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].colors, vec![1]);
        assert!(graph_degree_bound_check(&g));
    }

    #[test]
    fn condition_fails_on_small_code() {
        assert!(!siblings_condition(&code(&["aa", "a'a'"])));
    }
}
