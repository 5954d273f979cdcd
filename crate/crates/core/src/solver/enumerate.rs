use crate::algebra::{Algebra, Relation};
use crate::syntax::{ConjunctiveFormula, Scenario};

use super::closure::close;
use super::ScenarioSet;

/// All consistent scenarios entailing `cf`.
///
/// Backtracking over closed networks: the pair with the fewest remaining
/// base relations (above one) is split, base relations are tried in
/// algebra order, and every atomic closed leaf is emitted.
pub fn enumerate_scenarios(algebra: &Algebra, cf: &ConjunctiveFormula) -> ScenarioSet {
    let mut out = ScenarioSet::new(cf.vars().clone());
    walk(algebra, cf, &mut |s| {
        out.insert(s);
        true
    });
    out
}

/// The first scenario in enumeration order, if any.
pub fn first_scenario(algebra: &Algebra, cf: &ConjunctiveFormula) -> Option<Scenario> {
    let mut found = None;
    walk(algebra, cf, &mut |s| {
        found = Some(s);
        false
    });
    found
}

/// Drives the search, handing each leaf to `emit`; stops once `emit`
/// returns false.
fn walk(algebra: &Algebra, cf: &ConjunctiveFormula, emit: &mut dyn FnMut(Scenario) -> bool) {
    if cf.is_syntactically_inconsistent() {
        return;
    }
    let mut root = cf.clone();
    let n = root.vars().len();
    let pairs: Vec<(usize, usize)> = root.vars().pairs().collect();
    if !close(algebra, root.raw_mut(), n, pairs) {
        return;
    }
    branch(algebra, &root, emit);
}

fn branch(algebra: &Algebra, node: &ConjunctiveFormula, emit: &mut dyn FnMut(Scenario) -> bool) -> bool {
    let n = node.vars().len();
    let split = node
        .vars()
        .pairs()
        .filter(|&(i, j)| node.get(i, j).len() > 1)
        .min_by_key(|&(i, j)| node.get(i, j).len());
    let Some((i, j)) = split else {
        let scenario = node.to_scenario().expect("atomic network");
        return emit(scenario);
    };
    for b in node.get(i, j).iter() {
        let mut child = node.clone();
        child.set(algebra, i, j, Relation::singleton(b));
        if close(algebra, child.raw_mut(), n, [(i, j)]) && !branch(algebra, &child, emit) {
            return false;
        }
    }
    true
}
