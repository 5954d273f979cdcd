use crate::algebra::Algebra;
use crate::solver::ScenarioSet;
use crate::syntax::Scenario;
use crate::{Error, Result};

/// Sum over ordered pairs `x != y` of the base-relation distance between
/// the two scenarios' relations on `(x, y)`.
pub fn scenario_distance(algebra: &Algebra, s: &Scenario, t: &Scenario) -> Result<u32> {
    if s.vars() != t.vars() {
        return Err(Error::VariableMismatch);
    }
    Ok(s.labels()
        .iter()
        .zip(t.labels())
        .map(|(&a, &b)| {
            algebra.distance(a, b)
                + algebra.distance(algebra.inverse_base(a), algebra.inverse_base(b))
        })
        .sum())
}

/// Distance from the closest member of `set` to `t`.
pub fn set_distance(algebra: &Algebra, set: &ScenarioSet, t: &Scenario) -> Result<u32> {
    if set.vars() != t.vars() {
        return Err(Error::VariableMismatch);
    }
    let mut best = None;
    for s in set {
        let d = scenario_distance(algebra, s, t)?;
        best = Some(best.map_or(d, |b: u32| b.min(d)));
        if d == 0 {
            break;
        }
    }
    best.ok_or(Error::EmptyScenarioSet)
}
