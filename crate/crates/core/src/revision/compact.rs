use std::collections::BTreeMap;

use crate::algebra::{Algebra, Relation};
use crate::solver::{close, ScenarioSet};
use crate::syntax::{ConjunctiveFormula, Constraint, Formula};

/// A disjunction of normal forms with exactly the models in `set`.
///
/// Scenarios that differ in one unordered pair are merged into a single
/// conjunction carrying the union on that pair, repeatedly until nothing
/// merges. Every merged conjunction is a product of sets whose tuples are
/// all members of `set`, so no model is gained or lost. Greedy, not minimal.
pub fn compact_dnf(algebra: &Algebra, set: &ScenarioSet) -> Vec<ConjunctiveFormula> {
    let vars = set.vars().clone();
    let width = vars.pair_count();
    let mut boxes: Vec<Vec<Relation>> = set
        .iter()
        .map(|s| s.labels().iter().map(|&b| Relation::singleton(b)).collect())
        .collect();

    loop {
        let mut merged_any = false;
        for k in 0..width {
            let mut groups: BTreeMap<Vec<Relation>, Relation> = BTreeMap::new();
            for b in &boxes {
                let mut key = b.clone();
                key[k] = Relation::EMPTY;
                let slot = groups.entry(key).or_default();
                if !slot.is_empty() {
                    merged_any = true;
                }
                *slot = *slot | b[k];
            }
            boxes = groups
                .into_iter()
                .map(|(mut key, rel)| {
                    key[k] = rel;
                    key
                })
                .collect();
        }
        if !merged_any {
            break;
        }
    }
    boxes.sort();

    boxes
        .into_iter()
        .map(|b| {
            let mut cf = ConjunctiveFormula::universal(algebra, vars.clone());
            for ((i, j), rel) in vars.pairs().zip(b) {
                cf.set(algebra, i, j, rel);
            }
            cf
        })
        .collect()
}

/// A short conjunction of constraints equivalent to `cf`: universal pairs
/// are omitted, and a pair is dropped when the closure of the constraints
/// kept so far already implies it. Pairs are tried last to first.
pub fn simplify_conjunct(algebra: &Algebra, cf: &ConjunctiveFormula) -> Formula {
    let vars = cf.vars().clone();
    let n = vars.len();
    let universal = algebra.universal();
    let mut kept = cf.clone();
    let pairs: Vec<(usize, usize)> = vars.pairs().collect();
    for &(i, j) in pairs.iter().rev() {
        let target = kept.get(i, j);
        if target == universal {
            continue;
        }
        let mut trial = kept.clone();
        trial.set(algebra, i, j, universal);
        let mut probe = trial.clone();
        let implied = !close(algebra, probe.raw_mut(), n, pairs.iter().copied())
            || probe.get(i, j).is_subset(target);
        if implied {
            kept = trial;
        }
    }

    let atoms: Vec<Formula> = pairs
        .iter()
        .filter(|&&(i, j)| kept.get(i, j) != universal)
        .map(|&(i, j)| {
            Formula::Atom(Constraint {
                left: vars.get(i).clone(),
                rel: kept.get(i, j),
                right: vars.get(j).clone(),
            })
        })
        .collect();
    if atoms.is_empty() {
        let (i, j) = pairs[0];
        return Formula::Atom(Constraint {
            left: vars.get(i).clone(),
            rel: universal,
            right: vars.get(j).clone(),
        });
    }
    Formula::and(atoms)
}
