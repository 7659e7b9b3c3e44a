use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::word::Letter;

/// Per-coordinate letter counts `|V^{i,l}|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distribution {
    pub size: usize,
    pub pairs: u8,
    /// `counts[i][r]`: words with letter of rank `r` at coordinate `i`
    /// (rank 0 is the star, then `+1, -1, +2, -2, ...`).
    pub counts: Vec<Vec<usize>>,
}

impl Distribution {
    pub fn count(&self, i: usize, l: Letter) -> usize {
        self.counts[i][l.rank() as usize]
    }

    /// Letter counts at coordinate `i`, largest first, stars omitted.
    pub fn multiset(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.counts[i][1..].to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Counts at coordinate `i` grouped by complementary pair; each group
    /// sorted descending, groups sorted descending.
    pub fn pair_structure(&self, i: usize) -> Vec<[usize; 2]> {
        let mut groups: Vec<[usize; 2]> = (1..=self.pairs as usize)
            .map(|k| {
                let a = self.counts[i][2 * k - 1];
                let b = self.counts[i][2 * k];
                [a.max(b), a.min(b)]
            })
            .collect();
        groups.sort_unstable_by(|a, b| b.cmp(a));
        groups
    }
}

pub fn distribution(v: &Code) -> Distribution {
    let ranks = 2 * v.pairs() as usize + 1;
    let mut counts = vec![vec![0; ranks]; v.dim()];
    for w in v {
        for (i, l) in w.letters().iter().enumerate() {
            counts[i][l.rank() as usize] += 1;
        }
    }
    Distribution {
        size: v.len(),
        pairs: v.pairs(),
        counts,
    }
}

/// The thirteen distributions of a twelve-word code, as `(n_a, n_a', n_b, n_b')`.
pub const COROLLARY51_CASES: [(u8, [usize; 4]); 13] = [
    (1, [7, 1, 2, 2]),
    (2, [6, 2, 2, 2]),
    (3, [6, 1, 2, 3]),
    (4, [5, 3, 2, 2]),
    (5, [5, 2, 2, 3]),
    (6, [5, 1, 3, 3]),
    (7, [5, 1, 2, 4]),
    (8, [5, 5, 1, 1]),
    (9, [4, 4, 2, 2]),
    (10, [4, 3, 2, 3]),
    (11, [4, 2, 2, 4]),
    (12, [3, 3, 2, 4]),
    (13, [3, 3, 3, 3]),
];

fn case_structure(c: [usize; 4]) -> Vec<[usize; 2]> {
    let mut g = vec![
        [c[0].max(c[1]), c[0].min(c[1])],
        [c[2].max(c[3]), c[2].min(c[3])],
    ];
    g.sort_unstable_by(|a, b| b.cmp(a));
    g
}

/// Case number matched at each coordinate (by complementary-pair
/// structure); case 13 only in dimension 4.
pub fn match_corollary51(dist: &Distribution, d: usize) -> Result<Vec<Option<u8>>> {
    if dist.size != 12 {
        return Err(Error::WrongSize(dist.size));
    }
    Ok((0..dist.counts.len())
        .map(|i| {
            if dist.counts[i][0] != 0 || dist.counts[i].len() > 5 && dist.counts[i][5..].iter().any(|&x| x > 0) {
                return None;
            }
            let s = dist.pair_structure(i);
            COROLLARY51_CASES
                .iter()
                .find(|(case, c)| (*case != 13 || d == 4) && case_structure(*c) == s)
                .map(|(case, _)| *case)
        })
        .collect())
}

/// Matches a single coordinate given as raw counts `(n_a, n_a', n_b, n_b')`.
pub fn match_counts(counts: [usize; 4], d: usize) -> Option<u8> {
    let s = case_structure(counts);
    COROLLARY51_CASES
        .iter()
        .find(|(case, c)| (*case != 13 || d == 4) && case_structure(*c) == s)
        .map(|(case, _)| *case)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{all_words, Word};

    #[test]
    fn counts() {
        let v = Code::new(all_words(2, 2, false)).unwrap();
        let d = distribution(&v);
        assert_eq!(d.counts[0], vec![0, 4, 4, 4, 4]);
        let e = distribution(&Code::empty(3));
        assert!(e.counts.iter().all(|c| c.iter().all(|&x| x == 0)));
        let w = Code::new(vec![Word::parse_abc("ab").unwrap()]).unwrap();
        assert_eq!(distribution(&w).count(1, Letter::B), 1);
    }

    #[test]
    fn case_matching() {
        assert_eq!(match_counts([5, 5, 1, 1], 4), Some(8));
        assert_eq!(match_counts([1, 1, 5, 5], 5), Some(8));
        assert_eq!(match_counts([3, 3, 3, 3], 4), Some(13));
        assert_eq!(match_counts([3, 3, 3, 3], 5), None);
        assert_eq!(match_counts([6, 6, 0, 0], 4), None);
        // 5,1 | 5,1 has the right multiset but the wrong pairing
        assert_eq!(match_counts([5, 1, 5, 1], 4), None);
        let small = distribution(&Code::empty(4));
        assert!(matches!(match_corollary51(&small, 4), Err(Error::WrongSize(0))));
    }
}
