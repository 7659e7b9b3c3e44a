//! `polybox`: command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
//! 3 a budget ran out before an answer was reached.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use polybox::cover::{are_equivalent, covers, gbar_sum, is_partition_code};
use polybox::keller::{
    corollary64_condition, is_clique, is_maximal_clique, max_clique, theorem61_expected,
    theorem61_fixture, theorem61_selected, KellerGraph,
};
use polybox::oracle::{
    cells_code, enumerate_suits, extend_to_partition, is_rigid, Extension, Rigidity,
    DEFAULT_BUDGET,
};
use polybox::search::{
    all_configs, initial_configs_with_stats, run_configs, run_with_checkpoint, summarize,
    verify_theorem52_with, InitialConfig, SearchOptions, SearchOutcome,
};
use polybox::structure::{
    catalog_equivalent_pairs, catalog_partition_codes, distribution, match_corollary51,
    TwinConstraint,
};
use polybox::text::{format_code, parse_code, parse_word};
use polybox::{Code, Error, Letter};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "polybox", version, about = "Polybox codes, covers and the twelve-word search")]
struct Cli {
    /// Print the structured report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Leave timing out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Budget {
    /// Node budget for the exact-cover engine.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Polybox and partition checks, twin pairs and distribution of a code.
    Verify { file: PathBuf },
    /// Whether a star-free word is covered by a code.
    Cover { file: PathBuf, word: String },
    /// Whether two codes are equivalent.
    Equiv { a: PathBuf, b: PathBuf },
    /// Whether a code is rigid.
    Rigid {
        file: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
    /// Extend a code to a partition code.
    Extend {
        file: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
    /// All suits for the polybox of a code.
    Suits {
        file: PathBuf,
        /// Allow words with stars.
        #[arg(long)]
        stars: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Complete initial configurations to twelve-word codes.
    Search(SearchArgs),
    /// Small-code catalogs up to isomorphism.
    Catalog {
        #[arg(value_enum)]
        kind: CatalogKind,
        /// Code size (partition) or size of V (pairs).
        #[arg(long)]
        size: usize,
        /// Size of W (pairs).
        #[arg(long)]
        other: Option<usize>,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Twins::Any)]
        twins: Twins,
        #[command(flatten)]
        budget: Budget,
    },
    /// Build and check the pair of disjoint equivalent twelve-word codes.
    Theorem52 {
        #[arg(long, default_value = "a")]
        l: String,
        #[arg(long, default_value = "b")]
        s: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Check the seven-dimensional twelve-row table.
    Theorem61,
    /// Keller graph utilities.
    Keller {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        pairs: u8,
        /// Search for a maximum clique.
        #[arg(long)]
        max_clique: bool,
        /// Check a code for being a (maximal) clique.
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Case number; all admissible cases when omitted.
    #[arg(long)]
    case: Option<u8>,
    #[arg(long)]
    dim: usize,
    /// Only this configuration index within the case.
    #[arg(long, conflicts_with = "all_variants")]
    variant: Option<usize>,
    /// Every configuration of the selected cases (the default).
    #[arg(long)]
    all_variants: bool,
    /// Worker threads; 0 for the default.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Node budget per configuration.
    #[arg(long)]
    budget: Option<u64>,
    /// Resumable progress file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Keep every k-th configuration only.
    #[arg(long, default_value_t = 1)]
    sample_every: usize,
    /// Required for dimension 5.
    #[arg(long)]
    extended: bool,
    /// Fill rows of a group in any order.
    #[arg(long)]
    unordered: bool,
    /// Prune on first-coordinate siblings early.
    #[arg(long)]
    early_siblings: bool,
    /// Print the completions.
    #[arg(long)]
    show: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum CatalogKind {
    Partition,
    Pairs,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Twins {
    Any,
    One,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub version: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub seed: u64,
    pub timing_secs: Option<f64>,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Failed,
    Indeterminate,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Indeterminate => 3,
        }
    }
}

struct Out {
    inputs: Value,
    results: Value,
    status: Status,
    text: String,
}

fn ok_if(b: bool) -> Status {
    if b {
        Status::Ok
    } else {
        Status::Failed
    }
}

fn read_code(path: &Path) -> Result<Code, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Unsupported(format!("{}: {e}", path.display())))?;
    parse_code(&text)
}

fn words(c: &Code) -> Vec<String> {
    c.iter().map(|w| w.to_string()).collect()
}

fn letter(s: &str) -> Result<Letter, Error> {
    let w = parse_word(s, 1)?;
    if w.dim() != 1 {
        return Err(Error::BadLength(w.dim()));
    }
    Ok(w.get(0))
}

fn cmd_verify(file: &Path) -> Result<Out, Error> {
    let v = read_code(file)?;
    let dist = distribution(&v);
    let cases = match_corollary51(&dist, v.dim()).ok();
    let partition = if v.is_polybox() {
        Some(is_partition_code(&v)?)
    } else {
        None
    };
    let twins: Vec<[String; 2]> = v
        .twin_pairs()
        .iter()
        .map(|(a, b)| [a.to_string(), b.to_string()])
        .collect();
    let clash = v.first_clash().map(|(a, b)| [a.to_string(), b.to_string()]);
    let mut text = format!(
        "{} words, d = {}\npolybox: {}\ntwin pairs: {}\npartition code: {}\n",
        v.len(),
        v.dim(),
        v.is_polybox(),
        twins.len(),
        partition.map_or("n/a".into(), |p| p.to_string())
    );
    for (i, row) in dist.counts.iter().enumerate() {
        let case = cases
            .as_ref()
            .and_then(|c| c[i])
            .map_or("-".to_string(), |c| c.to_string());
        text.push_str(&format!("coordinate {}: counts {:?}, case {}\n", i + 1, row, case));
    }
    Ok(Out {
        inputs: json!({ "file": file.display().to_string() }),
        results: json!({
            "size": v.len(),
            "dim": v.dim(),
            "polybox": v.is_polybox(),
            "first_clash": clash,
            "twin_pairs": twins,
            "partition": partition,
            "gbar_sum": gbar_sum(&v),
            "distribution": dist.counts,
            "cases": cases,
        }),
        status: ok_if(v.is_polybox()),
        text,
    })
}

fn cmd_cover(file: &Path, word: &str) -> Result<Out, Error> {
    let v = read_code(file)?;
    let w = parse_word(word, 1)?;
    let r = covers(&w, &v)?;
    let pairs = v.pairs().max(w.max_pair());
    let wc = polybox::oracle::cells(&w, pairs)?;
    let vc = polybox::oracle::cells_code_with(&v, pairs)?;
    let subset = wc.is_subset(&vc);
    let text = format!(
        "sum g = {} of {}\ncovered: {}\ncell check: {}\n",
        r.total, r.required, r.covered, subset
    );
    Ok(Out {
        inputs: json!({ "file": file.display().to_string(), "word": w.to_string() }),
        results: json!({
            "total": r.total,
            "required": r.required,
            "covered": r.covered,
            "cells_subset": subset,
            "contributions": r.contributions.iter().map(|(x, k)| json!([x.to_string(), k])).collect::<Vec<_>>(),
        }),
        status: ok_if(r.covered && subset),
        text,
    })
}

fn cmd_equiv(a: &Path, b: &Path) -> Result<Out, Error> {
    let v = read_code(a)?;
    let w = read_code(b)?;
    let g = are_equivalent(&v, &w)?;
    let pairs = v.pairs().max(w.pairs());
    let c = polybox::oracle::cells_code_with(&v, pairs)? == polybox::oracle::cells_code_with(&w, pairs)?;
    Ok(Out {
        inputs: json!({ "a": a.display().to_string(), "b": b.display().to_string() }),
        results: json!({ "equivalent": g, "cells_equal": c, "disjoint": v.is_disjoint(&w) }),
        status: ok_if(g && c),
        text: format!("equivalent: {g}\ncell check: {c}\ndisjoint: {}\n", v.is_disjoint(&w)),
    })
}

fn cmd_rigid(file: &Path, budget: u64) -> Result<Out, Error> {
    let v = read_code(file)?;
    let r = is_rigid(&v, budget)?;
    let (status, text) = match &r {
        Rigidity::Rigid => (Status::Ok, "rigid\n".to_string()),
        Rigidity::NotRigid { witness } => (
            Status::Failed,
            format!("not rigid; another suit:\n{}", format_code(witness)),
        ),
        Rigidity::Indeterminate { nodes } => (
            Status::Indeterminate,
            format!("indeterminate after {nodes} nodes\n"),
        ),
    };
    Ok(Out {
        inputs: json!({ "file": file.display().to_string(), "budget": budget }),
        results: serde_json::to_value(&r).expect("serializable"),
        status,
        text,
    })
}

fn cmd_extend(file: &Path, budget: u64) -> Result<Out, Error> {
    let v = read_code(file)?;
    let (status, res, text) = match extend_to_partition(&v, budget)? {
        Extension::Found(p) => (
            Status::Ok,
            json!({ "extensible": true, "partition_code": words(&p) }),
            format!("extensible:\n{}", format_code(&p)),
        ),
        Extension::None => (
            Status::Failed,
            json!({ "extensible": false }),
            "not extensible\n".to_string(),
        ),
        Extension::Indeterminate => (
            Status::Indeterminate,
            json!({ "extensible": null }),
            "indeterminate\n".to_string(),
        ),
    };
    Ok(Out {
        inputs: json!({ "file": file.display().to_string(), "budget": budget }),
        results: res,
        status,
        text,
    })
}

fn cmd_suits(file: &Path, stars: bool, budget: u64) -> Result<Out, Error> {
    let v = read_code(file)?;
    let f = cells_code(&v)?;
    let e = enumerate_suits(&f, stars, budget);
    let mut text = format!("{} suit(s), {} nodes\n", e.suits.len(), e.nodes);
    for s in &e.suits {
        text.push('\n');
        text.push_str(&format_code(s));
    }
    Ok(Out {
        inputs: json!({ "file": file.display().to_string(), "stars": stars, "budget": budget }),
        results: json!({
            "suits": e.suits.iter().map(words).collect::<Vec<_>>(),
            "truncated": e.truncated,
            "nodes": e.nodes,
        }),
        status: if e.truncated {
            Status::Indeterminate
        } else {
            Status::Ok
        },
        text,
    })
}

#[derive(Serialize)]
struct OutcomeRow<'a> {
    case_id: u8,
    variant: usize,
    label: &'a str,
    fixed_words: Vec<String>,
    remaining: &'a [(Letter, usize)],
    completions: Vec<Vec<String>>,
    nodes: u64,
    leaves: u64,
    truncated: bool,
    rechecked: bool,
    wall_time: Option<f64>,
}

fn cmd_search(a: &SearchArgs, timing: bool) -> Result<Out, Error> {
    if a.dim == 5 && !a.extended {
        return Err(Error::Unsupported(
            "dimension 5 runs need --extended (and usually --budget, --checkpoint)".into(),
        ));
    }
    let mut configs: Vec<InitialConfig> = match a.case {
        Some(c) => initial_configs_with_stats(c, a.dim)?.0,
        None => all_configs(a.dim)?,
    };
    if let Some(k) = a.variant {
        configs.retain(|c| c.variant == k);
    }
    let step = a.sample_every.max(1);
    let configs: Vec<InitialConfig> = configs.into_iter().step_by(step).collect();
    let opts = SearchOptions {
        budget: a.budget,
        ordered: !a.unordered,
        early_siblings: a.early_siblings,
        jobs: a.jobs,
    };
    let outcomes: Vec<SearchOutcome> = match &a.checkpoint {
        Some(p) => run_with_checkpoint(&configs, &opts, p)?,
        None => run_configs(&configs, &opts)?,
    };
    let mut all_ok = true;
    let rows: Vec<OutcomeRow> = outcomes
        .iter()
        .map(|o| {
            let rechecked = o.completions.iter().all(|c| {
                polybox::structure::canonical_form(c) == *c && polybox::search::accepts(c)
            });
            all_ok &= rechecked;
            OutcomeRow {
                case_id: o.config.case_id,
                variant: o.config.variant,
                label: &o.config.label,
                fixed_words: o.config.fixed_words.iter().map(|w| w.to_string()).collect(),
                remaining: &o.config.remaining,
                completions: o.completions.iter().map(words).collect(),
                nodes: o.nodes_explored,
                leaves: o.leaves,
                truncated: o.truncated,
                rechecked,
                wall_time: timing.then(|| o.wall_time.as_secs_f64()),
            }
        })
        .collect();
    let summary = summarize(&outcomes);
    let mut text = format!("d = {}, {} configuration(s)\n", a.dim, outcomes.len());
    text.push_str("case  configs  completions  classes  truncated  nodes\n");
    for s in &summary {
        text.push_str(&format!(
            "{:>4}  {:>7}  {:>11}  {:>7}  {:>9}  {}\n",
            s.case_id,
            s.configs,
            s.completions,
            s.distinct_completions.len(),
            s.truncated,
            s.nodes
        ));
    }
    if a.show {
        for s in &summary {
            for c in &s.distinct_completions {
                text.push_str(&format!("\ncase {}:\n{}", s.case_id, format_code(c)));
            }
        }
    }
    let truncated = outcomes.iter().any(|o| o.truncated);
    Ok(Out {
        inputs: json!({
            "case": a.case, "dim": a.dim, "variant": a.variant, "budget": a.budget,
            "sample_every": step, "ordered": !a.unordered, "early_siblings": a.early_siblings,
        }),
        results: json!({
            "outcomes": rows,
            "summary": summary.iter().map(|s| json!({
                "case_id": s.case_id,
                "configs": s.configs,
                "completions": s.completions,
                "classes": s.distinct_completions.iter().map(words).collect::<Vec<_>>(),
                "truncated": s.truncated,
                "nodes": s.nodes,
            })).collect::<Vec<_>>(),
        }),
        status: if !all_ok {
            Status::Failed
        } else if truncated {
            Status::Indeterminate
        } else {
            Status::Ok
        },
        text,
    })
}

fn cmd_catalog(
    kind: CatalogKind,
    size: usize,
    other: Option<usize>,
    dim: usize,
    twins: Twins,
    budget: u64,
) -> Result<Out, Error> {
    let (classes, truncated, nodes) = match kind {
        CatalogKind::Partition => {
            let t = match twins {
                Twins::Any => TwinConstraint::Any,
                Twins::One => TwinConstraint::ExactlyOne,
                Twins::Zero => TwinConstraint::Zero,
            };
            let c = catalog_partition_codes(size, dim, t, budget)?;
            let cl: Vec<Value> = c.classes.iter().map(|x| json!(words(x))).collect();
            (cl, c.truncated, c.nodes)
        }
        CatalogKind::Pairs => {
            let m = other.ok_or_else(|| Error::Unsupported("pairs need --other".into()))?;
            let c = catalog_equivalent_pairs(size, m, dim, budget)?;
            let cl: Vec<Value> = c
                .classes
                .iter()
                .map(|(v, w)| json!({ "v": words(v), "w": words(w) }))
                .collect();
            (cl, c.truncated, c.nodes)
        }
    };
    let mut text = format!("{} class(es), truncated {truncated}\n", classes.len());
    for c in &classes {
        text.push_str(&format!("{c}\n"));
    }
    Ok(Out {
        inputs: json!({
            "kind": format!("{kind:?}").to_lowercase(), "size": size, "other": other,
            "dim": dim, "twins": format!("{twins:?}").to_lowercase(), "budget": budget,
        }),
        results: json!({ "classes": classes, "truncated": truncated, "nodes": nodes }),
        status: if truncated {
            Status::Indeterminate
        } else {
            Status::Ok
        },
        text,
    })
}

fn cmd_theorem52(l: &str, s: &str, budget: u64) -> Result<Out, Error> {
    let r = verify_theorem52_with(letter(l)?, letter(s)?, budget)?;
    let mut text = String::new();
    for c in &r.clauses {
        text.push_str(&format!(
            "{} {}  {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    if !r.prose_mismatch.is_empty() {
        text.push_str(&format!(
            "note: listed intersection word(s) not in W1 and W2: {}\n",
            r.prose_mismatch
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    text.push_str(&format!("\nV:\n{}\nW:\n{}", format_code(&r.v), format_code(&r.w)));
    Ok(Out {
        inputs: json!({ "l": r.l, "s": r.s, "budget": budget }),
        results: json!({
            "v": words(&r.v),
            "w": words(&r.w),
            "intersection": r.intersection.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "prose_mismatch": r.prose_mismatch.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "distribution": r.distribution,
            "clauses": r.clauses,
        }),
        status: ok_if(r.passed()),
        text,
    })
}

fn cmd_theorem61() -> Result<Out, Error> {
    let f = theorem61_fixture();
    let e = theorem61_expected();
    let selected = theorem61_selected().iter().all(|x| f.contains(x));
    let eq = f == e;
    let ok = eq && f.is_polybox() && f.is_twin_free() && f.len() == 12 && selected;
    Ok(Out {
        inputs: json!({}),
        results: json!({
            "table": words(&f),
            "equals_v_lll": eq,
            "polybox": f.is_polybox(),
            "twin_free": f.is_twin_free(),
            "selected_rows_present": selected,
            "corollary64": corollary64_condition(&f, 7)?,
        }),
        status: ok_if(ok),
        text: format!(
            "{}equals V.lll: {eq}\npolybox: {}\ntwin-free: {}\nselected rows present: {selected}\n",
            format_code(&f),
            f.is_polybox(),
            f.is_twin_free()
        ),
    })
}

fn cmd_keller(
    dim: usize,
    pairs: u8,
    want_max: bool,
    check: Option<&Path>,
    budget: u64,
) -> Result<Out, Error> {
    let g = KellerGraph::new(dim, pairs)?;
    let mut res = serde_json::Map::new();
    res.insert("vertices".into(), json!(g.len()));
    let mut text = format!("Keller graph d = {dim}, p = {pairs}: {} vertices\n", g.len());
    let mut status = Status::Ok;
    if let Some(p) = check {
        let v = read_code(p)?;
        let c = is_clique(&v, &g)?;
        let m = is_maximal_clique(&v, &g)?;
        let ext: Vec<String> = g.extenders(&v).iter().map(|w| w.to_string()).collect();
        text.push_str(&format!("clique: {c}\nmaximal: {m}\n"));
        res.insert(
            "check".into(),
            json!({ "file": p.display().to_string(), "clique": c, "maximal": m, "extenders": ext }),
        );
        if !c {
            status = Status::Failed;
        }
    }
    if want_max {
        let r = max_clique(&g, budget);
        text.push_str(&format!(
            "# keller d={} p={}\n# size {} exact {}\n{}",
            dim,
            pairs,
            r.size,
            r.exact,
            format_code(&r.clique)
        ));
        res.insert(
            "max_clique".into(),
            json!({ "size": r.size, "exact": r.exact, "nodes": r.nodes, "certificate": words(&r.clique) }),
        );
        if !r.exact && status == Status::Ok {
            status = Status::Indeterminate;
        }
    }
    Ok(Out {
        inputs: json!({
            "dim": dim, "pairs": pairs, "max_clique": want_max,
            "check": check.map(|p| p.display().to_string()), "budget": budget,
        }),
        results: Value::Object(res),
        status,
        text,
    })
}

fn name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Verify { .. } => "verify",
        Cmd::Cover { .. } => "cover",
        Cmd::Equiv { .. } => "equiv",
        Cmd::Rigid { .. } => "rigid",
        Cmd::Extend { .. } => "extend",
        Cmd::Suits { .. } => "suits",
        Cmd::Search(_) => "search",
        Cmd::Catalog { .. } => "catalog",
        Cmd::Theorem52 { .. } => "theorem52",
        Cmd::Theorem61 => "theorem61",
        Cmd::Keller { .. } => "keller",
    }
}

fn dispatch(cmd: &Cmd, timing: bool) -> Result<Out, Error> {
    match cmd {
        Cmd::Verify { file } => cmd_verify(file),
        Cmd::Cover { file, word } => cmd_cover(file, word),
        Cmd::Equiv { a, b } => cmd_equiv(a, b),
        Cmd::Rigid { file, budget } => cmd_rigid(file, budget.budget),
        Cmd::Extend { file, budget } => cmd_extend(file, budget.budget),
        Cmd::Suits {
            file,
            stars,
            budget,
        } => cmd_suits(file, *stars, budget.budget),
        Cmd::Search(a) => cmd_search(a, timing),
        Cmd::Catalog {
            kind,
            size,
            other,
            dim,
            twins,
            budget,
        } => cmd_catalog(*kind, *size, *other, *dim, *twins, budget.budget),
        Cmd::Theorem52 { l, s, budget } => cmd_theorem52(l, s, budget.budget),
        Cmd::Theorem61 => cmd_theorem61(),
        Cmd::Keller {
            dim,
            pairs,
            max_clique,
            check,
            budget,
        } => cmd_keller(*dim, *pairs, *max_clique, check.as_deref(), *budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let t = Instant::now();
    let out = match dispatch(&cli.cmd, !cli.no_timing) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = RunReport {
        schema: SCHEMA_VERSION,
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: name(&cli.cmd).to_string(),
        inputs: out.inputs,
        results: out.results,
        seed: 0,
        timing_secs: (!cli.no_timing).then(|| t.elapsed().as_secs_f64()),
        status: out.status,
    };
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        print!("{}", out.text);
        if let Some(s) = report.timing_secs {
            println!("({s:.3} s)");
        }
    }
    ExitCode::from(report.status.code())
}
