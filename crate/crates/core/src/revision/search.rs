//! Revision of one conjunctive formula by another, by joint branch-and-bound
//! over the scenario searches of both operands.
//!
//! A node holds a closed refinement of `psi` and one of `mu`. Its lower
//! bound sums, over ordered pairs, the smallest base-relation distance
//! between the two candidate relations; at a leaf both sides are scenarios
//! and the bound is exactly their distance. Nodes whose bound exceeds the
//! incumbent are cut. Ties are never cut, so every minimizer is kept.

use crate::algebra::{Algebra, Relation};
use crate::solver::{close, ScenarioSet};
use crate::syntax::ConjunctiveFormula;
use crate::{Error, Result};

/// Best distance known so far across the pair searches of one revision.
/// Only ever decreases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchBound {
    incumbent: Option<u32>,
}

impl SearchBound {
    /// No incumbent yet (+∞).
    pub fn unbounded() -> Self {
        Self { incumbent: None }
    }

    pub fn incumbent(&self) -> Option<u32> {
        self.incumbent
    }

    /// Lowers the incumbent to `d` if `d` is better.
    pub fn offer(&mut self, d: u32) {
        self.incumbent = Some(self.incumbent.map_or(d, |i| i.min(d)));
    }

    fn admits(&self, lower_bound: u32) -> bool {
        self.incumbent.is_none_or(|i| lower_bound <= i)
    }
}

/// Outcome of [`revise_qa`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QaOutcome {
    /// The pair distance and the models of `mu` at that distance from `psi`.
    Found { delta: u32, scenarios: ScenarioSet },
    /// Every branch was cut by the incumbent.
    Pruned,
    /// `psi` or `mu` has no model.
    Empty,
}

/// One expanded node of a traced search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceNode {
    pub depth: usize,
    pub lower_bound: u32,
    /// Smallest leaf distance reached below this node.
    pub subtree_min: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Cut nodes whose bound exceeds the incumbent.
    pub prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { prune: true }
    }
}

/// `Δ = d(Mod(psi), Mod(mu))` and `{ω ∈ Mod(mu) | d(Mod(psi), ω) = Δ}`.
pub fn revise_qa(
    algebra: &Algebra,
    psi: &ConjunctiveFormula,
    mu: &ConjunctiveFormula,
    bound: &mut SearchBound,
) -> Result<QaOutcome> {
    revise_qa_with(algebra, psi, mu, bound, SearchConfig::default(), None)
}

/// As [`revise_qa`], with explicit pruning control and an optional trace of
/// every expanded node.
pub fn revise_qa_with(
    algebra: &Algebra,
    psi: &ConjunctiveFormula,
    mu: &ConjunctiveFormula,
    bound: &mut SearchBound,
    config: SearchConfig,
    trace: Option<&mut Vec<TraceNode>>,
) -> Result<QaOutcome> {
    if psi.vars() != mu.vars() {
        return Err(Error::VariableMismatch);
    }
    let (Some(psi), Some(mu)) = (closed(algebra, psi), closed(algebra, mu)) else {
        return Ok(QaOutcome::Empty);
    };
    let mut search = Search {
        algebra,
        config,
        bound: *bound,
        best: None,
        found: ScenarioSet::new(psi.vars().clone()),
        pruned_any: false,
        trace,
    };
    search.expand(&psi, &mu, 0);

    Ok(match search.best {
        Some(delta) => {
            bound.offer(delta);
            QaOutcome::Found {
                delta,
                scenarios: search.found,
            }
        }
        None if search.pruned_any => QaOutcome::Pruned,
        None => QaOutcome::Empty,
    })
}

fn closed(algebra: &Algebra, cf: &ConjunctiveFormula) -> Option<ConjunctiveFormula> {
    if cf.is_syntactically_inconsistent() {
        return None;
    }
    let mut out = cf.clone();
    let n = out.vars().len();
    let pairs: Vec<_> = out.vars().pairs().collect();
    close(algebra, out.raw_mut(), n, pairs).then_some(out)
}

/// Admissible bound: each ordered pair contributes the smallest distance
/// between a candidate of `psi` and one of `mu`.
pub fn lower_bound(algebra: &Algebra, psi: &ConjunctiveFormula, mu: &ConjunctiveFormula) -> u32 {
    psi.vars()
        .pairs()
        .map(|(i, j)| {
            pair_bound(algebra, psi.get(i, j), mu.get(i, j))
                + pair_bound(algebra, psi.get(j, i), mu.get(j, i))
        })
        .sum()
}

fn pair_bound(algebra: &Algebra, r: Relation, s: Relation) -> u32 {
    algebra.min_distance(r, s).expect("closed networks have no empty pair")
}

struct Search<'a, 't> {
    algebra: &'a Algebra,
    config: SearchConfig,
    /// Incumbent inherited from earlier pair searches.
    bound: SearchBound,
    best: Option<u32>,
    found: ScenarioSet,
    pruned_any: bool,
    trace: Option<&'t mut Vec<TraceNode>>,
}

#[derive(Clone, Copy)]
enum Side {
    Psi,
    Mu,
}

impl Search<'_, '_> {
    fn limit_admits(&self, lower_bound: u32) -> bool {
        if !self.config.prune {
            return true;
        }
        self.bound.admits(lower_bound) && self.best.is_none_or(|b| lower_bound <= b)
    }

    /// Explores the subtree under `(psi, mu)`; returns the smallest leaf
    /// distance reached.
    fn expand(&mut self, psi: &ConjunctiveFormula, mu: &ConjunctiveFormula, depth: usize) -> Option<u32> {
        let lb = lower_bound(self.algebra, psi, mu);
        if !self.limit_admits(lb) {
            self.pruned_any = true;
            return None;
        }
        let slot = self.trace.as_mut().map(|t| {
            t.push(TraceNode {
                depth,
                lower_bound: lb,
                subtree_min: None,
            });
            t.len() - 1
        });

        let subtree_min = match self.pick(psi, mu) {
            None => {
                self.leaf(mu, lb);
                Some(lb)
            }
            Some((side, i, j)) => self.split(psi, mu, side, i, j, depth),
        };

        if let (Some(slot), Some(trace)) = (slot, self.trace.as_mut()) {
            trace[slot].subtree_min = subtree_min;
        }
        subtree_min
    }

    fn leaf(&mut self, mu: &ConjunctiveFormula, distance: u32) {
        let scenario = mu.to_scenario().expect("atomic leaf");
        match self.best {
            Some(b) if distance > b => {}
            Some(b) if distance == b => {
                self.found.insert(scenario);
            }
            _ => {
                self.best = Some(distance);
                self.found = ScenarioSet::new(mu.vars().clone());
                self.found.insert(scenario);
            }
        }
    }

    /// Smallest non-singleton entry over both sides, `psi` first on ties.
    fn pick(&self, psi: &ConjunctiveFormula, mu: &ConjunctiveFormula) -> Option<(Side, usize, usize)> {
        let mut choice: Option<(usize, Side, usize, usize)> = None;
        for (side, cf) in [(Side::Psi, psi), (Side::Mu, mu)] {
            for (i, j) in cf.vars().pairs() {
                let size = cf.get(i, j).len();
                if size > 1 && choice.is_none_or(|(best, ..)| size < best) {
                    choice = Some((size, side, i, j));
                }
            }
        }
        choice.map(|(_, side, i, j)| (side, i, j))
    }

    fn split(
        &mut self,
        psi: &ConjunctiveFormula,
        mu: &ConjunctiveFormula,
        side: Side,
        i: usize,
        j: usize,
        depth: usize,
    ) -> Option<u32> {
        let algebra = self.algebra;
        let (target, other) = match side {
            Side::Psi => (psi, mu),
            Side::Mu => (mu, psi),
        };
        // Closest candidates first so the incumbent drops early.
        let mut candidates: Vec<_> = target.get(i, j).iter().collect();
        candidates.sort_by_key(|&b| {
            pair_bound(algebra, Relation::singleton(b), other.get(i, j))
                + pair_bound(
                    algebra,
                    Relation::singleton(algebra.inverse_base(b)),
                    other.get(j, i),
                )
        });

        let n = target.vars().len();
        let mut subtree_min: Option<u32> = None;
        for b in candidates {
            let mut child = target.clone();
            child.set(algebra, i, j, Relation::singleton(b));
            if !close(algebra, child.raw_mut(), n, [(i, j)]) {
                continue;
            }
            let reached = match side {
                Side::Psi => self.expand(&child, mu, depth + 1),
                Side::Mu => self.expand(psi, &child, depth + 1),
            };
            if let Some(d) = reached {
                subtree_min = Some(subtree_min.map_or(d, |m| m.min(d)));
            }
        }
        subtree_min
    }
}
