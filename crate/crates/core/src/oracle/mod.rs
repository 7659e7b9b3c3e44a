//! Cell realization of words over the transversals of the alphabet, and the
//! exact-cover engine built on it.

pub mod cells;
pub mod exact_cover;

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

pub use cells::{cells, cells_code, cells_code_with, slice, CellBox};
pub use exact_cover::{CoverOptions, CoverStats, ExactCover, DEFAULT_BUDGET};

use crate::code::Code;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SuitEnumeration {
    pub polybox: CellBox,
    pub suits: Vec<Code>,
    pub truncated: bool,
    pub nodes: u64,
}

/// Every suit of `f` permitted by `opts`, sorted.
pub fn enumerate_suits_with(f: &CellBox, opts: &CoverOptions) -> SuitEnumeration {
    let engine = ExactCover::new(f, opts);
    let mut suits = Vec::new();
    let stats = engine.run(opts, |ws| {
        suits.push(Code::from_words_dedup(f.dim(), ws.to_vec()));
        ControlFlow::Continue(())
    });
    suits.sort();
    SuitEnumeration {
        polybox: f.clone(),
        suits,
        truncated: stats.truncated,
        nodes: stats.nodes,
    }
}

pub fn enumerate_suits(f: &CellBox, allow_stars: bool, budget: u64) -> SuitEnumeration {
    enumerate_suits_with(
        f,
        &CoverOptions {
            allow_stars,
            budget,
            ..CoverOptions::default()
        },
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rigidity {
    Rigid,
    NotRigid { witness: Code },
    Indeterminate { nodes: u64 },
}

impl Rigidity {
    pub fn is_rigid(&self) -> Option<bool> {
        match self {
            Rigidity::Rigid => Some(true),
            Rigidity::NotRigid { .. } => Some(false),
            Rigidity::Indeterminate { .. } => None,
        }
    }
}

fn require_star_free_polybox(v: &Code) -> Result<()> {
    if let Some(w) = v.iter().find(|w| !w.is_star_free()) {
        return Err(Error::NotStarFree(*w));
    }
    if let Some((a, b)) = v.first_clash() {
        return Err(Error::NotPolybox(a, b));
    }
    Ok(())
}

/// Rigid iff no star-free suit of the polybox of `v` other than `v` exists.
pub fn is_rigid(v: &Code, budget: u64) -> Result<Rigidity> {
    require_star_free_polybox(v)?;
    let f = cells_code(v)?;
    let opts = CoverOptions {
        budget,
        ..CoverOptions::default()
    };
    let engine = ExactCover::new(&f, &opts);
    let mut witness = None;
    let mut saw_self = false;
    let stats = engine.run(&opts, |ws| {
        let c = Code::from_words_dedup(v.dim(), ws.to_vec());
        if &c == v {
            saw_self = true;
            ControlFlow::Continue(())
        } else {
            witness = Some(c);
            ControlFlow::Break(())
        }
    });
    if let Some(w) = witness {
        return Ok(Rigidity::NotRigid { witness: w });
    }
    if stats.truncated {
        return Ok(Rigidity::Indeterminate { nodes: stats.nodes });
    }
    if !saw_self {
        return Err(Error::Contradiction(
            "code is missing from the suits of its own polybox".into(),
        ));
    }
    Ok(Rigidity::Rigid)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Found(Code),
    None,
    Indeterminate,
}

/// A partition code containing `v`, from an exact cover of the complement
/// of its polybox by words with stars.
pub fn extend_to_partition(v: &Code, budget: u64) -> Result<Extension> {
    if let Some((a, b)) = v.first_clash() {
        return Err(Error::NotPolybox(a, b));
    }
    let f = cells_code(v)?.complement();
    let opts = CoverOptions {
        allow_stars: true,
        budget,
        ..CoverOptions::default()
    };
    let engine = ExactCover::new(&f, &opts);
    let mut found = None;
    let stats = engine.run(&opts, |ws| {
        found = Some(ws.to_vec());
        ControlFlow::Break(())
    });
    Ok(match found {
        Some(ws) => {
            let mut all = v.words().to_vec();
            all.extend(ws);
            Extension::Found(Code::from_words_dedup(v.dim(), all))
        }
        None if stats.truncated => Extension::Indeterminate,
        None => Extension::None,
    })
}

#[derive(Debug, Clone)]
pub struct EquivalentDisjoint {
    pub codes: Vec<Code>,
    pub truncated: bool,
    pub nodes: u64,
}

/// Star-free codes with the same polybox as `v` and no word in common with it.
pub fn enumerate_equivalent_disjoint(
    v: &Code,
    twin_free: bool,
    budget: u64,
) -> Result<EquivalentDisjoint> {
    require_star_free_polybox(v)?;
    let f = cells_code(v)?;
    let opts = CoverOptions {
        twin_free,
        exclude: v.words().to_vec(),
        budget,
        ..CoverOptions::default()
    };
    let e = enumerate_suits_with(&f, &opts);
    Ok(EquivalentDisjoint {
        codes: e.suits,
        truncated: e.truncated,
        nodes: e.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::is_partition_code;
    use crate::word::Word;

    fn code(ws: &[&str]) -> Code {
        Code::new(ws.iter().map(|s| Word::parse_abc(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn single_box_has_one_suit() {
        let w = code(&["ab'a"]);
        let e = enumerate_suits(&cells_code(&w).unwrap(), false, DEFAULT_BUDGET);
        assert_eq!(e.suits, vec![w.clone()]);
        assert!(!e.truncated);
        assert_eq!(is_rigid(&w, DEFAULT_BUDGET).unwrap(), Rigidity::Rigid);
    }

    #[test]
    fn full_square_suits() {
        let e = enumerate_suits(&CellBox::full(2, 2), true, DEFAULT_BUDGET);
        assert!(e.suits.contains(&code(&["**"])));
        assert!(e.suits.contains(&code(&["a*", "a'a", "a'a'"])));
        for s in &e.suits {
            assert!(s.is_polybox());
            assert!(is_partition_code(s).unwrap());
        }
    }

    #[test]
    fn twin_pair_is_not_rigid() {
        let v = code(&["aa", "a'a"]);
        match is_rigid(&v, DEFAULT_BUDGET).unwrap() {
            Rigidity::NotRigid { witness } => assert_ne!(witness, v),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn extensions() {
        let p = code(&["a*", "a'a", "a'a'"]);
        assert_eq!(extend_to_partition(&p, DEFAULT_BUDGET).unwrap(), Extension::Found(p));
        match extend_to_partition(&code(&["aa"]), DEFAULT_BUDGET).unwrap() {
            Extension::Found(u) => {
                assert!(u.contains(&Word::parse_abc("aa").unwrap()));
                assert!(is_partition_code(&u).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_is_reported() {
        let e = enumerate_suits(&CellBox::full(3, 2), true, 10);
        assert!(e.truncated);
        assert!(matches!(
            is_rigid(&code(&["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"]), 1).unwrap(),
            Rigidity::Indeterminate { .. } | Rigidity::NotRigid { .. }
        ));
        assert!(enumerate_equivalent_disjoint(&code(&["ab"]), true, DEFAULT_BUDGET)
            .unwrap()
            .codes
            .is_empty());
    }
}
