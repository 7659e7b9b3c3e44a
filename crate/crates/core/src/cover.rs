//! The covering calculus on star-free words.

use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub target: Word,
    pub total: u64,
    pub required: u64,
    pub covered: bool,
    pub contributions: Vec<(Word, u64)>,
}

#[inline]
pub(crate) fn g_unchecked(v: &Word, w: &Word) -> u64 {
    let mut acc = 1u64;
    for (a, b) in v.letters().iter().zip(w.letters()) {
        if a == b {
            acc <<= 1;
        } else if *b == a.complement() {
            return 0;
        }
    }
    acc
}

fn star_free(w: &Word) -> Result<()> {
    if w.is_star_free() {
        Ok(())
    } else {
        Err(Error::StarInWord(*w))
    }
}

/// `prod_i (2[v_i = w_i] + [w_i not in {v_i, v_i'}])`.
pub fn g(v: &Word, w: &Word) -> Result<u64> {
    if v.dim() != w.dim() {
        return Err(Error::LengthMismatch(v.dim(), w.dim()));
    }
    star_free(v)?;
    star_free(w)?;
    Ok(g_unchecked(v, w))
}

pub fn gbar(v: &Word) -> u64 {
    1u64 << v.star_count()
}

fn check_star_free_polybox(v: &Code) -> Result<()> {
    if let Some(w) = v.iter().find(|w| !w.is_star_free()) {
        return Err(Error::NotStarFree(*w));
    }
    if let Some((a, b)) = v.first_clash() {
        return Err(Error::NotPolybox(a, b));
    }
    Ok(())
}

pub fn covers(w: &Word, v: &Code) -> Result<CoverReport> {
    star_free(w)?;
    if !v.is_empty() && v.dim() != w.dim() {
        return Err(Error::LengthMismatch(v.dim(), w.dim()));
    }
    check_star_free_polybox(v)?;
    Ok(covers_unchecked(w, v))
}

pub(crate) fn covers_unchecked(w: &Word, v: &Code) -> CoverReport {
    let mut total = 0;
    let mut contributions = Vec::new();
    for x in v {
        let gv = g_unchecked(x, w);
        if gv > 0 {
            total += gv;
            contributions.push((*x, gv));
        }
    }
    let required = 1u64 << w.dim();
    CoverReport {
        target: *w,
        total,
        required,
        covered: total == required,
        contributions,
    }
}

/// `V ⊑ W`: every word of `V` is covered by `W`.
pub fn code_covers(v: &Code, w: &Code) -> Result<bool> {
    check_star_free_polybox(v)?;
    check_star_free_polybox(w)?;
    if v.dim() != w.dim() {
        return Err(Error::LengthMismatch(v.dim(), w.dim()));
    }
    Ok(v.iter().all(|x| covers_unchecked(x, w).covered))
}

pub fn are_equivalent(v: &Code, w: &Code) -> Result<bool> {
    Ok(code_covers(v, w)? && code_covers(w, v)?)
}

/// Partition test `sum gbar(v) = 2^d` for polybox codes, stars allowed.
pub fn is_partition_code(v: &Code) -> Result<bool> {
    if let Some((a, b)) = v.first_clash() {
        return Err(Error::NotPolybox(a, b));
    }
    Ok(gbar_sum(v) == 1u64 << v.dim())
}

pub fn gbar_sum(v: &Code) -> u64 {
    v.iter().map(gbar).sum()
}

fn residue_of(u: &Word, v: &Code) -> Result<Code> {
    let stars: Vec<Word> = v
        .iter()
        .map(|x| {
            let mut y = *x;
            for i in 0..u.dim() {
                if x.get(i) == u.get(i) {
                    y = y.with(i, Letter::STAR);
                }
            }
            y
        })
        .collect();
    let out = Code::with_dim(u.dim(), stars)
        .map_err(|e| Error::Contradiction(format!("residue is not a set: {e}")))?;
    match is_partition_code(&out) {
        Ok(true) => Ok(out),
        Ok(false) => Err(Error::Contradiction(format!(
            "residue gbar sum {} differs from {}",
            gbar_sum(&out),
            1u64 << u.dim()
        ))),
        Err(e) => Err(Error::Contradiction(format!("residue is not polybox: {e}"))),
    }
}

/// Residue of `V` at a covered word `u`: the words of `V` meeting `u`,
/// with every coordinate equal to `u` replaced by a star. Words disjoint
/// from `u` are dropped first. The result is checked to be a partition code.
pub fn cover_residue(u: &Word, v: &Code) -> Result<Code> {
    let report = covers(u, v)?;
    if !report.covered {
        return Err(Error::NotCovered(*u));
    }
    let meeting = Code::from_words_dedup(
        u.dim(),
        report.contributions.iter().map(|(w, _)| *w).collect(),
    );
    residue_of(u, &meeting)
}

/// As [`cover_residue`] but every word of `V` must meet `u`.
pub fn cover_residue_strict(u: &Word, v: &Code) -> Result<Code> {
    let report = covers(u, v)?;
    if let Some(x) = v.iter().find(|x| g_unchecked(x, u) == 0) {
        return Err(Error::EmptyIntersection {
            word: *x,
            target: *u,
        });
    }
    if !report.covered {
        return Err(Error::NotCovered(*u));
    }
    residue_of(u, v)
}
