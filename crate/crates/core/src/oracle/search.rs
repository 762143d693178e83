use crate::model::{signature_of, Formula, PlainAxiom, PlainKb, Signature, StandpointKb};
use crate::normalizer::{count_precisifications, normalize_kb, resolve_refs, to_nnf};
use crate::par::{self, Parallelism};
use crate::translator::translate_kb;

use super::ground::{Grounder, Layout};
use super::interp::{kb_holds, plain_kb_holds, PlainInterpretation, StandpointStructure, MAX_DOMAIN};
use super::sat::{self, SatResult};
use super::OracleError;

/// Guards on a single bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest number of primary variables (interpretation bits) per
    /// domain size and precisification count.
    pub max_bits: usize,
    /// Conflicts the solver may spend on one configuration.
    pub max_conflicts: u64,
    pub parallelism: Parallelism,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_bits: 512,
            max_conflicts: 1_000_000,
            parallelism: Parallelism::default(),
        }
    }
}

impl SearchLimits {
    pub fn sequential(self) -> Self {
        SearchLimits {
            parallelism: Parallelism::Sequential,
            ..self
        }
    }
}

fn solve_layout<'l>(
    layout: &'l Layout,
    limits: &SearchLimits,
    build: impl FnOnce(&mut Grounder<'l>) -> Result<(), OracleError>,
) -> Result<Option<Vec<bool>>, OracleError> {
    let bits = layout.bits();
    if bits > limits.max_bits {
        return Err(OracleError::SearchSpaceTooLarge {
            bits,
            limit: limits.max_bits,
        });
    }
    let mut g = Grounder::new(layout);
    build(&mut g)?;
    let Some(cnf) = g.circuit.to_cnf(g.roots()) else {
        return Ok(None);
    };
    let mut solver = sat::Solver::new(&cnf);
    match solver.solve(limits.max_conflicts) {
        SatResult::Sat(mut model) => {
            model.truncate(bits);
            Ok(Some(model))
        }
        SatResult::Unsat => Ok(None),
        SatResult::Unknown => Err(OracleError::BudgetExhausted {
            conflicts: solver.conflicts(),
        }),
    }
}

fn check_domain(n: usize) -> Result<(), OracleError> {
    if n > MAX_DOMAIN {
        Err(OracleError::DomainTooLarge(n))
    } else {
        Ok(())
    }
}

fn plain_at(kb: &PlainKb, sig: &Signature, n: usize, limits: &SearchLimits) -> Result<Option<PlainInterpretation>, OracleError> {
    let layout = Layout::new(sig, n, 1, false);
    let bits = solve_layout(&layout, limits, |g| {
        for a in &kb.axioms {
            let l = match a {
                PlainAxiom::TBox(t) => g.tbox(0, t)?,
                PlainAxiom::Ria(r) => g.ria(0, r)?,
            };
            g.assert(l);
        }
        Ok(())
    })?;
    let Some(bits) = bits else { return Ok(None) };
    let i = layout.decode_layer(&bits, 0);
    if !plain_kb_holds(&i, kb)? {
        return Err(OracleError::WitnessRejected);
    }
    Ok(Some(i))
}

fn standpoint_at(
    kb: &StandpointKb,
    sig: &Signature,
    n: usize,
    m: usize,
    limits: &SearchLimits,
) -> Result<Option<StandpointStructure>, OracleError> {
    let layout = Layout::new(sig, n, m, true);
    let bits = solve_layout(&layout, limits, |g| {
        for pi in 0..m {
            for a in &kb.axioms {
                let l = g.tbox(pi, a)?;
                g.assert(l);
            }
            for r in &kb.rias {
                let l = g.ria(pi, r)?;
                g.assert(l);
            }
            for f in &kb.formulas {
                let l = g.formula(pi, f)?;
                g.assert(l);
            }
        }
        Ok(())
    })?;
    let Some(bits) = bits else { return Ok(None) };
    let d = layout.decode_structure(&bits);
    if !kb_holds(&d, kb)? {
        return Err(OracleError::WitnessRejected);
    }
    Ok(Some(d))
}

/// Runs `job` over `grid` and returns the outcome of the first point, in
/// grid order, that found a model or failed.
fn first_outcome<P: Sync, T: Send>(
    grid: &[P],
    mode: Parallelism,
    job: impl Fn(&P) -> Result<Option<T>, OracleError> + Sync + Send,
) -> Result<Option<T>, OracleError> {
    par::find_map_first(grid, mode, |p| job(p).transpose()).transpose()
}

/// First model with at most `max_domain` elements: domain sizes ascending,
/// then interpretations in canonical order. `None` only means that no
/// model exists within the bound.
pub fn find_plain_model(kb: &PlainKb, max_domain: usize) -> Result<Option<PlainInterpretation>, OracleError> {
    find_plain_model_with(kb, max_domain, &SearchLimits::default())
}

pub fn find_plain_model_with(
    kb: &PlainKb,
    max_domain: usize,
    limits: &SearchLimits,
) -> Result<Option<PlainInterpretation>, OracleError> {
    check_domain(max_domain)?;
    let sig = Signature::of_plain(kb);
    let grid: Vec<usize> = (1..=max_domain).collect();
    first_outcome(&grid, limits.parallelism, |&n| plain_at(kb, &sig, n, limits))
}

/// First standpoint structure with at most `max_domain` elements and
/// `max_prec` precisifications, ordered by domain size, then number of
/// precisifications, then canonically. References are resolved first.
pub fn find_standpoint_model(
    kb: &StandpointKb,
    max_domain: usize,
    max_prec: usize,
) -> Result<Option<StandpointStructure>, OracleError> {
    find_standpoint_model_with(kb, max_domain, max_prec, &SearchLimits::default())
}

pub fn find_standpoint_model_with(
    kb: &StandpointKb,
    max_domain: usize,
    max_prec: usize,
    limits: &SearchLimits,
) -> Result<Option<StandpointStructure>, OracleError> {
    check_domain(max_domain)?;
    check_domain(max_prec)?;
    let kb = resolve_refs(kb)?;
    let sig = signature_of(&kb);
    let grid: Vec<(usize, usize)> = (1..=max_domain)
        .flat_map(|n| (1..=max_prec).map(move |m| (n, m)))
        .collect();
    first_outcome(&grid, limits.parallelism, |&(n, m)| standpoint_at(&kb, &sig, n, m, limits))
}

/// Outcome of a bounded entailment check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No countermodel within the bounds. Evidence, not a proof.
    EntailedWithinBounds,
    NotEntailed(StandpointStructure),
    /// A guard tripped before the bounds were exhausted.
    Inconclusive(OracleError),
}

/// Looks for a model of the knowledge base together with the negated
/// query.
pub fn check_entailment_bounded(
    kb: &StandpointKb,
    query: &Formula,
    max_domain: usize,
    max_prec: usize,
    limits: &SearchLimits,
) -> Verdict {
    let mut kb = kb.clone();
    kb.formulas.push(to_nnf(&Formula::not(query.clone())));
    match find_standpoint_model_with(&kb, max_domain, max_prec, limits) {
        Ok(Some(d)) => Verdict::NotEntailed(d),
        Ok(None) => Verdict::EntailedWithinBounds,
        Err(e) => Verdict::Inconclusive(e),
    }
}

/// Satisfiability of a knowledge base and of its translation, each within
/// the same domain bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agreement {
    pub precisifications: usize,
    pub standpoint: bool,
    pub plain: bool,
}

impl Agreement {
    pub fn agrees(&self) -> bool {
        self.standpoint == self.plain
    }
}

/// Searches the knowledge base with up to `p` precisifications and its
/// translation with the same domain bound.
pub fn equisatisfiability(kb: &StandpointKb, max_domain: usize, limits: &SearchLimits) -> Result<Agreement, OracleError> {
    let kb = normalize_kb(kb)?;
    let p = count_precisifications(&kb);
    let plain = translate_kb(&kb)?;
    let standpoint = find_standpoint_model_with(&kb, max_domain, p, limits)?.is_some();
    let plain = find_plain_model_with(&plain, max_domain, limits)?.is_some();
    Ok(Agreement {
        precisifications: p,
        standpoint,
        plain,
    })
}

/// [`equisatisfiability`] over many knowledge bases, spread over threads
/// according to `limits.parallelism`. Each individual search runs
/// sequentially.
pub fn equisatisfiability_batch(
    kbs: &[StandpointKb],
    max_domain: usize,
    limits: &SearchLimits,
) -> Vec<Result<Agreement, OracleError>> {
    let inner = limits.sequential();
    par::map(kbs, limits.parallelism, |kb| equisatisfiability(kb, max_domain, &inner))
}
