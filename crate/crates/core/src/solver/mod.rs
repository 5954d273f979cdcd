//! Consistency, scenario enumeration and model sets.

mod closure;
mod enumerate;
mod realize;

use std::collections::BTreeSet;

use crate::algebra::Algebra;
use crate::syntax::{to_dnf_wo_neg, ConjunctiveFormula, Formula, Scenario, Vars};
use crate::{Error, Result};

pub use closure::algebraic_closure;
pub(crate) use closure::close;
pub use enumerate::{enumerate_scenarios, first_scenario};
pub use realize::{realize_scenario, Realization};

/// A set of consistent scenarios over one variable list, kept in canonical
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScenarioSet {
    vars: Vars,
    members: BTreeSet<Scenario>,
}

impl ScenarioSet {
    pub fn new(vars: Vars) -> Self {
        Self {
            vars,
            members: BTreeSet::new(),
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Scenario) -> bool {
        self.members.contains(s)
    }

    /// Adds a scenario; it must be built over this set's variables.
    pub fn insert(&mut self, s: Scenario) -> bool {
        assert_eq!(s.vars(), &self.vars, "scenario over a different variable list");
        self.members.insert(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Scenario> {
        self.members.iter()
    }

    pub fn extend_from(&mut self, other: &ScenarioSet) -> Result<()> {
        self.check(other)?;
        self.members.extend(other.members.iter().cloned());
        Ok(())
    }

    pub fn union(&self, other: &ScenarioSet) -> Result<ScenarioSet> {
        let mut out = self.clone();
        out.extend_from(other)?;
        Ok(out)
    }

    pub fn intersection(&self, other: &ScenarioSet) -> Result<ScenarioSet> {
        self.check(other)?;
        Ok(Self {
            vars: self.vars.clone(),
            members: self.members.intersection(&other.members).cloned().collect(),
        })
    }

    pub fn difference(&self, other: &ScenarioSet) -> Result<ScenarioSet> {
        self.check(other)?;
        Ok(Self {
            vars: self.vars.clone(),
            members: self.members.difference(&other.members).cloned().collect(),
        })
    }

    pub fn is_subset(&self, other: &ScenarioSet) -> bool {
        self.vars == other.vars && self.members.is_subset(&other.members)
    }

    fn check(&self, other: &ScenarioSet) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }
}

impl<'a> IntoIterator for &'a ScenarioSet {
    type Item = &'a Scenario;
    type IntoIter = std::collections::btree_set::Iter<'a, Scenario>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Ω: every consistent scenario over `vars`.
pub fn omega(algebra: &Algebra, vars: &Vars) -> ScenarioSet {
    enumerate_scenarios(algebra, &ConjunctiveFormula::universal(algebra, vars.clone()))
}

/// `Mod(f)` over `vars`: the union of the scenarios of the disjuncts of the
/// negation-free DNF of `f`.
pub fn models(algebra: &Algebra, f: &Formula, vars: &Vars) -> Result<ScenarioSet> {
    let disjuncts = to_dnf_wo_neg(algebra, f, vars)?;
    Ok(models_of_dnf(algebra, &disjuncts, vars))
}

/// Scenarios of a disjunction of normal forms over `vars`.
pub fn models_of_dnf(algebra: &Algebra, disjuncts: &[ConjunctiveFormula], vars: &Vars) -> ScenarioSet {
    let mut out = ScenarioSet::new(vars.clone());
    for cf in disjuncts {
        out.members.extend(enumerate_scenarios(algebra, cf).members);
    }
    out
}

/// True iff `f` has a model over its own variables.
pub fn is_consistent(algebra: &Algebra, f: &Formula) -> Result<bool> {
    let vars = f.variables();
    let disjuncts = to_dnf_wo_neg(algebra, f, &vars)?;
    Ok(disjuncts
        .iter()
        .any(|cf| first_scenario(algebra, cf).is_some()))
}
