//! Distance-based revision and Harper-identity contraction.
//!
//! Both operands are put in negation-free DNF over their shared variables;
//! every pair of disjuncts is revised with [`revise_qa`] under one shared
//! incumbent, and the pairs reaching the overall minimum distance make up
//! the result.

mod compact;
mod distance;
mod search;

use crate::algebra::Algebra;
use crate::solver::{first_scenario, models, models_of_dnf, ScenarioSet};
use crate::syntax::{to_dnf_wo_neg, ConjunctiveFormula, Formula, Vars};
use crate::Result;

pub use compact::{compact_dnf, simplify_conjunct};
pub use distance::{scenario_distance, set_distance};
pub use search::{
    lower_bound, revise_qa, revise_qa_with, QaOutcome, SearchBound, SearchConfig, TraceNode,
};

/// How a revision terminated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RevisionStatus {
    Normal,
    /// The old beliefs have no model; the result is the new belief itself.
    InconsistentPsi,
    /// The new belief has no model; the result is inconsistent.
    InconsistentMu,
    /// Contraction by a tautology: the result is the old beliefs unchanged.
    TautologyNotContracted,
}

/// Outcome of one disjunct pair `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    /// `None` when the pair was cut or has no model.
    pub delta: Option<u32>,
    pub pruned: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionResult {
    /// `None` when undefined (no model of the new belief).
    pub delta: Option<u32>,
    pub status: RevisionStatus,
    pub result_scenarios: ScenarioSet,
    pub result_dnf: Vec<ConjunctiveFormula>,
    pub pair_report: Vec<PairReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RevisionOptions {
    /// Share an incumbent across pairs and cut dominated subtrees.
    pub prune: bool,
}

impl Default for RevisionOptions {
    fn default() -> Self {
        Self { prune: true }
    }
}

/// `psi ∘ mu` over the union of their variables.
pub fn revise(algebra: &Algebra, psi: &Formula, mu: &Formula) -> Result<RevisionResult> {
    revise_with(algebra, psi, mu, RevisionOptions::default())
}

pub fn revise_with(
    algebra: &Algebra,
    psi: &Formula,
    mu: &Formula,
    options: RevisionOptions,
) -> Result<RevisionResult> {
    let vars = Vars::of([psi, mu]);
    revise_over(algebra, psi, mu, &vars, options)
}

/// Revision over an explicit variable list covering both operands.
pub fn revise_over(
    algebra: &Algebra,
    psi: &Formula,
    mu: &Formula,
    vars: &Vars,
    options: RevisionOptions,
) -> Result<RevisionResult> {
    let psi_dnf = to_dnf_wo_neg(algebra, psi, vars)?;
    let mu_dnf = to_dnf_wo_neg(algebra, mu, vars)?;
    let psi_live: Vec<bool> = psi_dnf.iter().map(|cf| first_scenario(algebra, cf).is_some()).collect();
    let mu_live: Vec<bool> = mu_dnf.iter().map(|cf| first_scenario(algebra, cf).is_some()).collect();

    if !mu_live.contains(&true) {
        return Ok(RevisionResult {
            delta: None,
            status: RevisionStatus::InconsistentMu,
            result_scenarios: ScenarioSet::new(vars.clone()),
            result_dnf: Vec::new(),
            pair_report: Vec::new(),
        });
    }
    if !psi_live.contains(&true) {
        let result_scenarios = models_of_dnf(algebra, &mu_dnf, vars);
        return Ok(RevisionResult {
            delta: Some(0),
            status: RevisionStatus::InconsistentPsi,
            result_dnf: compact_dnf(algebra, &result_scenarios),
            result_scenarios,
            pair_report: Vec::new(),
        });
    }

    // Live pairs, cheapest root bound first.
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
    for (i, p) in psi_dnf.iter().enumerate() {
        for (j, m) in mu_dnf.iter().enumerate() {
            if psi_live[i] && mu_live[j] {
                pairs.push((lower_bound(algebra, p, m), i, j));
            }
        }
    }
    pairs.sort_unstable();

    let config = SearchConfig {
        prune: options.prune,
    };
    let mut shared = SearchBound::unbounded();
    let mut outcomes = Vec::with_capacity(pairs.len());
    for &(_, i, j) in &pairs {
        let mut unshared = SearchBound::unbounded();
        let bound = if options.prune { &mut shared } else { &mut unshared };
        let outcome = revise_qa_with(algebra, &psi_dnf[i], &mu_dnf[j], bound, config, None)?;
        outcomes.push((i, j, outcome));
    }

    let delta = outcomes
        .iter()
        .filter_map(|(_, _, o)| match o {
            QaOutcome::Found { delta, .. } => Some(*delta),
            _ => None,
        })
        .min()
        .expect("some live pair has a model at finite distance");

    let mut result_scenarios = ScenarioSet::new(vars.clone());
    let mut pair_report = Vec::with_capacity(outcomes.len());
    for (i, j, outcome) in outcomes {
        let report = match outcome {
            QaOutcome::Found { delta: d, scenarios } => {
                if d == delta {
                    result_scenarios.extend_from(&scenarios)?;
                }
                PairReport { i, j, delta: Some(d), pruned: false }
            }
            QaOutcome::Pruned => PairReport { i, j, delta: None, pruned: true },
            QaOutcome::Empty => PairReport { i, j, delta: None, pruned: false },
        };
        pair_report.push(report);
    }
    pair_report.sort_by_key(|r| (r.i, r.j));

    Ok(RevisionResult {
        delta: Some(delta),
        status: RevisionStatus::Normal,
        result_dnf: compact_dnf(algebra, &result_scenarios),
        result_scenarios,
        pair_report,
    })
}

/// `psi ⊖ mu = psi ∨ (psi ∘ ¬mu)`. The revision fields describe the inner
/// revision by `¬mu`; the scenarios and DNF are those of the contraction.
pub fn contract(algebra: &Algebra, psi: &Formula, mu: &Formula) -> Result<RevisionResult> {
    contract_with(algebra, psi, mu, RevisionOptions::default())
}

pub fn contract_with(
    algebra: &Algebra,
    psi: &Formula,
    mu: &Formula,
    options: RevisionOptions,
) -> Result<RevisionResult> {
    let vars = Vars::of([psi, mu]);
    let not_mu = Formula::not(mu.clone());
    let psi_models = models(algebra, psi, &vars)?;
    let inner = revise_over(algebra, psi, &not_mu, &vars, options)?;

    let (scenarios, status) = match inner.status {
        RevisionStatus::InconsistentMu => (psi_models, RevisionStatus::TautologyNotContracted),
        status => (psi_models.union(&inner.result_scenarios)?, status),
    };
    Ok(RevisionResult {
        delta: inner.delta,
        status,
        result_dnf: compact_dnf(algebra, &scenarios),
        result_scenarios: scenarios,
        pair_report: inner.pair_report,
    })
}
