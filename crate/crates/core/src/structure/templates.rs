//! Recognizers for the five- and six-word twin-free codes covering a word.

use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::cover::{covers, g_unchecked};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TemplateForm {
    /// `{l1l2l3, l1'l2'l3', *l2'l3, l1*l3', l1'l2*}`
    Five,
    /// `{***l4, l1l2l3l4', l1'l2'l3'l4', *l2'l3l4', l1*l3'l4', l1'l2*l4'}`
    Six,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateMatch {
    pub form: TemplateForm,
    /// 1-based coordinates in the order of the template.
    pub coords: Vec<usize>,
    pub letters: Vec<Letter>,
}

// Template rows over the template coordinates: Some(true) = l_k,
// Some(false) = l_k', None = star (filled in from w).
type Row = [Option<bool>; 4];

const FIVE: [Row; 5] = [
    [Some(true), Some(true), Some(true), None],
    [Some(false), Some(false), Some(false), None],
    [None, Some(false), Some(true), None],
    [Some(true), None, Some(false), None],
    [Some(false), Some(true), None, None],
];

const SIX: [Row; 6] = [
    [None, None, None, Some(true)],
    [Some(true), Some(true), Some(true), Some(false)],
    [Some(false), Some(false), Some(false), Some(false)],
    [None, Some(false), Some(true), Some(false)],
    [Some(true), None, Some(false), Some(false)],
    [Some(false), Some(true), None, Some(false)],
];

fn instantiate(w: &Word, rows: &[Row], coords: &[usize], letters: &[Letter]) -> Vec<Word> {
    let mut out: Vec<Word> = rows
        .iter()
        .map(|row| {
            let mut x = *w;
            for (k, &c) in coords.iter().enumerate() {
                if let Some(pos) = row[k] {
                    x = x.with(c, if pos { letters[k] } else { letters[k].complement() });
                }
            }
            x
        })
        .collect();
    out.sort_unstable();
    out
}

fn search(w: &Word, v: &Code, rows: &[Row], k: usize) -> Option<TemplateMatch> {
    let d = w.dim();
    let target: Vec<Word> = v.words().to_vec();
    let mut coords = Vec::with_capacity(k);
    let mut found = None;
    fn choose(
        d: usize,
        k: usize,
        coords: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if coords.len() == k {
            return f(coords);
        }
        for c in 0..d {
            if coords.contains(&c) {
                continue;
            }
            coords.push(c);
            if choose(d, k, coords, f) {
                return true;
            }
            coords.pop();
        }
        false
    }
    choose(d, k, &mut coords, &mut |cs| {
        // l_k ranges over letters outside {w_c, w_c'}
        let options: Vec<Vec<Letter>> = cs
            .iter()
            .map(|&c| {
                Letter::alphabet(v.pairs())
                    .filter(|l| l.pair() != w.get(c).pair())
                    .collect()
            })
            .collect();
        let mut idx = vec![0usize; k];
        loop {
            let letters: Vec<Letter> = (0..k).map(|j| options[j][idx[j]]).collect();
            if instantiate(w, rows, cs, &letters) == target {
                found = Some(TemplateMatch {
                    form: if k == 3 {
                        TemplateForm::Five
                    } else {
                        TemplateForm::Six
                    },
                    coords: cs.iter().map(|c| c + 1).collect(),
                    letters,
                });
                return true;
            }
            let mut j = k;
            loop {
                if j == 0 {
                    return false;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < options[j].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    });
    found
}

/// Identifies a twin-free code of five (or six) words covering `w` with the
/// five-word template (or the six-word template when every word meets `w`).
/// Codes of more than six words return `None`.
pub fn classify_cover_5(w: &Word, v: &Code) -> Result<Option<TemplateMatch>> {
    let report = covers(w, v)?;
    if !report.covered {
        return Err(Error::NotCovered(*w));
    }
    if v.contains(w) {
        return Err(Error::StatementViolation(format!("{w} belongs to the code")));
    }
    if !v.is_twin_free() {
        return Err(Error::StatementViolation("code contains a twin pair".into()));
    }
    match v.len() {
        0..=4 => Err(Error::StatementViolation(format!(
            "a twin-free code covering an outside word has at least five words, got {}",
            v.len()
        ))),
        5 => search(w, v, &FIVE, 3).map(Some).ok_or_else(|| {
            Error::StatementViolation("five-word code does not fit the template".into())
        }),
        6 => {
            if v.iter().any(|x| g_unchecked(x, w) == 0) {
                return Ok(None);
            }
            search(w, v, &SIX, 4).map(Some).ok_or_else(|| {
                Error::StatementViolation("six-word code does not fit the template".into())
            })
        }
        _ => Ok(None),
    }
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
    fn example_three_four() {
        let v = code(&["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"]);
        let m = classify_cover_5(&w("bbb"), &v).unwrap().unwrap();
        assert_eq!(m.form, TemplateForm::Five);
        let mut cs = m.coords.clone();
        cs.sort();
        assert_eq!(cs, vec![1, 2, 3]);
        assert!(m.letters.iter().all(|l| l.pair() == 1));
    }

    #[test]
    fn preconditions() {
        let v = code(&["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"]);
        assert!(classify_cover_5(&w("aaa"), &v).is_err());
        assert!(matches!(
            classify_cover_5(&w("bbb"), &code(&["aaa"])),
            Err(Error::NotCovered(_))
        ));
    }
}
