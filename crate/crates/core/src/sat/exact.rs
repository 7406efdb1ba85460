//! Exact stack numbers by iterated SAT calls.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::graph::Dag;
use crate::layout::{validate_layout, StackLayout};
use crate::order::LinearOrder;

use super::cnf::{encode_with, CnfFormula, EncodeError, EncodeOptions};
use super::dimacs::{export_dimacs, solve_external, DimacsError};
use super::solver::{solve_cnf, SatOutcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Builtin,
    /// Program and arguments; the DIMACS file path is appended.
    External(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub backend: Backend,
    /// Conflict budget per call of the built-in solver.
    pub budget: Option<u64>,
    pub symmetry_breaking: bool,
    /// Directory that receives every formula as DIMACS.
    pub dimacs_out: Option<PathBuf>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            backend: Backend::Builtin,
            budget: None,
            symmetry_breaking: true,
            dimacs_out: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Dimacs(#[from] DimacsError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("solver gave up at k = {0}")]
    Budget(usize),
    #[error("model does not decode to a valid layout: {0}")]
    Unsound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub model: Option<Vec<bool>>,
    pub decoded: Option<StackLayout>,
}

/// Runs the configured back-end and decodes a satisfying model.
pub fn solve(f: &CnfFormula, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    let keep = match &cfg.dimacs_out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let g = &f.graph;
            let path = dir.join(format!("n{}_m{}_k{}.cnf", g.n(), g.m(), f.k));
            if cfg.backend == Backend::Builtin {
                export_dimacs(f.num_vars, &f.clauses, io::BufWriter::new(std::fs::File::create(&path)?))?;
            }
            Some(path)
        }
        None => None,
    };
    let outcome = match &cfg.backend {
        Backend::Builtin => solve_cnf(f.num_vars, &f.clauses, cfg.budget),
        Backend::External(cmd) => solve_external(cmd, f.num_vars, &f.clauses, keep.as_deref())?,
    };
    Ok(match outcome {
        SatOutcome::Sat(model) => {
            let layout = decode(f, &model)?;
            SolveResult {
                status: SolveStatus::Sat,
                model: Some(model),
                decoded: Some(layout),
            }
        }
        SatOutcome::Unsat => SolveResult {
            status: SolveStatus::Unsat,
            model: None,
            decoded: None,
        },
        SatOutcome::Unknown => SolveResult {
            status: SolveStatus::Unknown,
            model: None,
            decoded: None,
        },
    })
}

/// Reads the order (by counting predecessors) and pages from a model, and
/// validates the result.
pub fn decode(f: &CnfFormula, model: &[bool]) -> Result<StackLayout, SolveError> {
    let g = &f.graph;
    let n = g.n();
    let truth = |lit: i32| model.get(lit.unsigned_abs() as usize).is_some_and(|&b| b == (lit > 0));
    let mut rank: Vec<(usize, usize)> = (0..n)
        .map(|v| ((0..n).filter(|&u| u != v && truth(f.before(u, v))).count(), v))
        .collect();
    rank.sort_unstable();
    let unsound = |m: String| SolveError::Unsound(m);
    if rank.iter().enumerate().any(|(i, &(r, _))| r != i) {
        return Err(unsound("order variables are not a total order".into()));
    }
    let order = LinearOrder::from_sequence(rank.into_iter().map(|(_, v)| v).collect())
        .map_err(|e| unsound(e.to_string()))?;
    let page_of = (0..g.m())
        .map(|e| (0..f.k).find(|&i| truth(f.page_var(e, i))))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| unsound("edge without page".into()))?;
    let layout = StackLayout::new(order, page_of);
    validate_layout(g, &layout).map_err(|e| unsound(e.to_string()))?;
    Ok(layout)
}

fn formula(g: &Dag, k: usize, cfg: &SolverConfig, fixed: Option<&LinearOrder>) -> Result<CnfFormula, SolveError> {
    let opts = EncodeOptions {
        symmetry_breaking: cfg.symmetry_breaking,
    };
    Ok(encode_with(g, k, &opts, fixed)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StackNumber {
    Exact { k: usize, layout: StackLayout },
    Exceeds(usize),
}

fn empty_layout(g: &Dag, fixed: Option<&LinearOrder>) -> StackLayout {
    let order = fixed
        .cloned()
        .unwrap_or_else(|| LinearOrder::from_sequence(g.topological_order()).expect("topological order"));
    StackLayout::new(order, Vec::new())
}

fn search(g: &Dag, k_max: usize, cfg: &SolverConfig, fixed: Option<&LinearOrder>) -> Result<StackNumber, SolveError> {
    if g.m() == 0 {
        return Ok(StackNumber::Exact {
            k: 0,
            layout: empty_layout(g, fixed),
        });
    }
    for k in 1..=k_max {
        let r = solve(&formula(g, k, cfg, fixed)?, cfg)?;
        match r.status {
            SolveStatus::Sat => {
                return Ok(StackNumber::Exact {
                    k,
                    layout: r.decoded.expect("sat results are decoded"),
                })
            }
            SolveStatus::Unsat => {}
            SolveStatus::Unknown => return Err(SolveError::Budget(k)),
        }
    }
    Ok(StackNumber::Exceeds(k_max))
}

/// Smallest `k <= k_max` with a `k`-stack layout, searching upwards from 1.
pub fn stack_number(g: &Dag, k_max: usize, cfg: &SolverConfig) -> Result<StackNumber, SolveError> {
    search(g, k_max, cfg, None)
}

/// As [`stack_number`] with the order fixed to `order`.
pub fn stack_number_fixed_order(
    g: &Dag,
    order: &LinearOrder,
    k_max: usize,
    cfg: &SolverConfig,
) -> Result<StackNumber, SolveError> {
    search(g, k_max, cfg, Some(order))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Stack number is at least the requested value; `witness` is a layout
    /// with exactly that many pages when one was found.
    AtLeast { witness: Option<StackLayout> },
    /// A layout with fewer pages exists.
    Refuted(StackLayout),
}

/// Certifies `stack number >= k` by unsatisfiability with `k - 1` pages.
pub fn verify_at_least(g: &Dag, k: usize, cfg: &SolverConfig) -> Result<Verdict, SolveError> {
    let witness_at = |k: usize| -> Result<Option<StackLayout>, SolveError> {
        if k == 0 {
            return Ok((g.m() == 0).then(|| empty_layout(g, None)));
        }
        Ok(solve(&formula(g, k, cfg, None)?, cfg)?.decoded)
    };
    if k == 0 {
        return Ok(Verdict::AtLeast { witness: witness_at(0)? });
    }
    if k == 1 {
        return Ok(if g.m() >= 1 {
            Verdict::AtLeast { witness: witness_at(1)? }
        } else {
            Verdict::Refuted(empty_layout(g, None))
        });
    }
    let r = solve(&formula(g, k - 1, cfg, None)?, cfg)?;
    match r.status {
        SolveStatus::Sat => Ok(Verdict::Refuted(r.decoded.expect("sat results are decoded"))),
        SolveStatus::Unsat => Ok(Verdict::AtLeast { witness: witness_at(k)? }),
        SolveStatus::Unknown => Err(SolveError::Budget(k - 1)),
    }
}
