use std::cmp::Ordering;
use std::fmt;

use super::{Constraint, Formula, Vars};
use crate::algebra::{Algebra, BaseRelation, Relation};
use crate::{Error, Result};

/// A conjunction in normal form: exactly one relation per ordered pair of
/// distinct variables, coherent under inverses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConjunctiveFormula {
    vars: Vars,
    /// Row-major `n x n`; the diagonal holds the identity relation.
    rels: Vec<Relation>,
}

impl ConjunctiveFormula {
    /// Every pair related by the universal relation.
    pub fn universal(algebra: &Algebra, vars: Vars) -> Self {
        let n = vars.len();
        let mut rels = vec![algebra.universal(); n * n];
        let id = Relation::singleton(algebra.identity());
        for i in 0..n {
            rels[i * n + i] = id;
        }
        Self { vars, rels }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> Relation {
        self.rels[i * self.vars.len() + j]
    }

    /// Relation between two named variables.
    pub fn rel_of(&self, x: &super::Variable, y: &super::Variable) -> Option<Relation> {
        Some(self.get(self.vars.index_of(x)?, self.vars.index_of(y)?))
    }

    /// Sets the pair `(i, j)` to `rel` and `(j, i)` to its inverse.
    pub fn set(&mut self, algebra: &Algebra, i: usize, j: usize, rel: Relation) {
        debug_assert!(i != j);
        let n = self.vars.len();
        self.rels[i * n + j] = rel;
        self.rels[j * n + i] = algebra.inverse(rel);
    }

    /// Intersects the pair `(i, j)` with `rel`, keeping inverse coherence.
    pub fn restrict(&mut self, algebra: &Algebra, i: usize, j: usize, rel: Relation) {
        let narrowed = self.get(i, j) & rel;
        self.set(algebra, i, j, narrowed);
    }

    /// Pairwise intersection with another formula over the same variables.
    pub fn conjoin(&self, other: &ConjunctiveFormula) -> Result<ConjunctiveFormula> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        let rels = self
            .rels
            .iter()
            .zip(&other.rels)
            .map(|(&a, &b)| a & b)
            .collect();
        Ok(Self {
            vars: self.vars.clone(),
            rels,
        })
    }

    /// True if some pair carries the empty relation.
    pub fn is_syntactically_inconsistent(&self) -> bool {
        self.vars.pairs().any(|(i, j)| self.get(i, j).is_empty())
    }

    pub fn is_scenario(&self) -> bool {
        self.vars.pairs().all(|(i, j)| self.get(i, j).len() == 1)
    }


    pub(crate) fn raw_mut(&mut self) -> &mut [Relation] {
        &mut self.rels
    }

    /// One constraint per unordered pair, universal pairs included.
    pub fn constraints(&self) -> Vec<Constraint> {
        self.vars
            .pairs()
            .map(|(i, j)| Constraint {
                left: self.vars.get(i).clone(),
                rel: self.get(i, j),
                right: self.vars.get(j).clone(),
            })
            .collect()
    }

    /// The formula as a conjunction of its non-universal pair constraints.
    /// A formula with no such pair renders its first pair.
    pub fn to_formula(&self, algebra: &Algebra) -> Formula {
        let universal = algebra.universal();
        let mut atoms: Vec<Formula> = self
            .constraints()
            .into_iter()
            .filter(|c| c.rel != universal)
            .map(Formula::Atom)
            .collect();
        if atoms.is_empty() {
            atoms.extend(self.constraints().into_iter().take(1).map(Formula::Atom));
        }
        Formula::and(atoms)
    }

    pub fn to_scenario(&self) -> Option<Scenario> {
        let labels = self
            .vars
            .pairs()
            .map(|(i, j)| self.get(i, j).as_base())
            .collect::<Option<Vec<_>>>()?;
        Some(Scenario {
            vars: self.vars.clone(),
            labels,
        })
    }
}

/// Builds the normal form of a conjunction of constraints over `vars`.
/// Unconstrained pairs get the universal relation and repeated pairs are
/// intersected. An empty intersection is kept, not reported.
pub fn normalize(
    algebra: &Algebra,
    constraints: &[Constraint],
    vars: &Vars,
) -> Result<ConjunctiveFormula> {
    let mut cf = ConjunctiveFormula::universal(algebra, vars.clone());
    for c in constraints {
        let i = index(vars, &c.left)?;
        let j = index(vars, &c.right)?;
        if i == j {
            return Err(Error::SelfConstraint(c.left.name().to_string()));
        }
        cf.restrict(algebra, i, j, c.rel);
    }
    Ok(cf)
}

fn index(vars: &Vars, v: &super::Variable) -> Result<usize> {
    vars.index_of(v)
        .ok_or_else(|| Error::UnknownVariable(v.name().to_string()))
}

/// A normal form whose every pair is a single base relation. Stored as the
/// base relations of the unordered pairs `(i, j)`, `i < j`, in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scenario {
    vars: Vars,
    labels: Vec<BaseRelation>,
}

impl Scenario {
    /// Builds a scenario from the labels of the unordered pairs.
    pub fn new(vars: Vars, labels: Vec<BaseRelation>) -> Self {
        assert_eq!(labels.len(), vars.pair_count(), "one label per unordered pair");
        Self { vars, labels }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn labels(&self) -> &[BaseRelation] {
        &self.labels
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        let n = self.vars.len();
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// The base relation between variables `i` and `j`, `i != j`.
    pub fn base(&self, algebra: &Algebra, i: usize, j: usize) -> BaseRelation {
        match i.cmp(&j) {
            Ordering::Less => self.labels[self.pair_index(i, j)],
            Ordering::Greater => algebra.inverse_base(self.labels[self.pair_index(j, i)]),
            Ordering::Equal => algebra.identity(),
        }
    }

    pub fn to_conjunctive(&self, algebra: &Algebra) -> ConjunctiveFormula {
        let mut cf = ConjunctiveFormula::universal(algebra, self.vars.clone());
        for ((i, j), &b) in self.vars.pairs().zip(&self.labels) {
            cf.set(algebra, i, j, Relation::singleton(b));
        }
        cf
    }

    pub fn to_formula(&self, algebra: &Algebra) -> Formula {
        self.to_conjunctive(algebra).to_formula(algebra)
    }

    /// Renders as `x REL y; x REL z; ...` over the unordered pairs.
    pub fn display<'a>(&'a self, algebra: &'a Algebra) -> ScenarioDisplay<'a> {
        ScenarioDisplay {
            scenario: self,
            algebra,
        }
    }
}

impl PartialOrd for Scenario {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scenario {
    fn cmp(&self, other: &Self) -> Ordering {
        self.labels
            .cmp(&other.labels)
            .then_with(|| self.vars.cmp(&other.vars))
    }
}

pub struct ScenarioDisplay<'a> {
    scenario: &'a Scenario,
    algebra: &'a Algebra,
}

impl fmt::Display for ScenarioDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = &self.scenario.vars;
        for (k, ((i, j), &b)) in vars.pairs().zip(&self.scenario.labels).enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} {} {}", vars.get(i), self.algebra.name_of(b), vars.get(j))?;
        }
        Ok(())
    }
}
