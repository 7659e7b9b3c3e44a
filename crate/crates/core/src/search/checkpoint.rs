//! Resumable runs. A checkpoint stores, per configuration, the next unit to
//! explore and the accumulated result. Files are only meant to be resumed by
//! the same crate version.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::config::InitialConfig;
use crate::search::engine::{complete_from, with_pool, SearchOptions, SearchOutcome, UnitResult};

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cursor {
    pub next_unit: usize,
    pub done: bool,
    pub result: UnitResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub crate_version: String,
    pub budget: Option<u64>,
    pub ordered: bool,
    pub early_siblings: bool,
    /// Keyed by `case/variant/dim`.
    pub cursors: BTreeMap<String, Cursor>,
}

pub fn config_key(c: &InitialConfig) -> String {
    format!("{}/{}/{}", c.case_id, c.variant, c.dim)
}

impl Checkpoint {
    pub fn new(opts: &SearchOptions) -> Checkpoint {
        Checkpoint {
            version: CHECKPOINT_VERSION,
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            budget: opts.budget,
            ordered: opts.ordered,
            early_siblings: opts.early_siblings,
            cursors: BTreeMap::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Checkpoint> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Checkpoint(e.to_string()))?;
        let c: Checkpoint =
            serde_json::from_str(&text).map_err(|e| Error::Checkpoint(e.to_string()))?;
        if c.version != CHECKPOINT_VERSION || c.crate_version != env!("CARGO_PKG_VERSION") {
            return Err(Error::Checkpoint(format!(
                "checkpoint written by version {} (format {})",
                c.crate_version, c.version
            )));
        }
        Ok(c)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string(self).map_err(|e| Error::Checkpoint(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, text).map_err(|e| Error::Checkpoint(e.to_string()))?;
        std::fs::rename(&tmp, path).map_err(|e| Error::Checkpoint(e.to_string()))
    }

    fn matches(&self, opts: &SearchOptions) -> bool {
        self.budget == opts.budget
            && self.ordered == opts.ordered
            && self.early_siblings == opts.early_siblings
    }
}

/// Like [`crate::search::run_configs`], saving progress to `path` after every
/// unit and resuming from it when the file exists.
pub fn run_with_checkpoint(
    configs: &[InitialConfig],
    opts: &SearchOptions,
    path: &Path,
) -> Result<Vec<SearchOutcome>> {
    let ck = if path.exists() {
        let c = Checkpoint::load(path)?;
        if !c.matches(opts) {
            return Err(Error::Checkpoint("search options differ from the checkpoint".into()));
        }
        c
    } else {
        Checkpoint::new(opts)
    };
    let shared = Mutex::new(ck);
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let outcomes = with_pool(opts.jobs, || {
        configs
            .par_iter()
            .map(|c| {
                let key = config_key(c);
                let start = shared.lock().unwrap().cursors.get(&key).cloned();
                let t = Instant::now();
                let r = match start {
                    Some(cur) if cur.done => cur.result,
                    other => {
                        let cur = other.unwrap_or_default();
                        let r = complete_from(c, opts, cur.next_unit, cur.result, &mut |next, acc| {
                            let mut ck = shared.lock().unwrap();
                            ck.cursors.insert(
                                key.clone(),
                                Cursor {
                                    next_unit: next,
                                    done: false,
                                    result: acc.clone(),
                                },
                            );
                            if let Err(e) = ck.save(path) {
                                failure.lock().unwrap().get_or_insert(e);
                            }
                        });
                        let mut ck = shared.lock().unwrap();
                        ck.cursors.insert(
                            key.clone(),
                            Cursor {
                                next_unit: usize::MAX,
                                done: true,
                                result: r.clone(),
                            },
                        );
                        if let Err(e) = ck.save(path) {
                            failure.lock().unwrap().get_or_insert(e);
                        }
                        r
                    }
                };
                SearchOutcome {
                    config: c.clone(),
                    completions: r.completions.into_iter().collect(),
                    nodes_explored: r.nodes,
                    leaves: r.leaves,
                    truncated: r.truncated,
                    wall_time: t.elapsed(),
                }
            })
            .collect::<Vec<_>>()
    })?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(outcomes)
}
