//! Formulas of the propositional closure: constraints combined with
//! negation, conjunction and disjunction.

mod dnf;
mod normal;
mod parser;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Relation};

pub use dnf::{negate_atom, to_dnf_formula, to_dnf_wo_neg, to_dnf_wo_neg_with, DnfOptions};
pub use normal::{normalize, ConjunctiveFormula, Scenario};
pub use parser::{parse, ParseError, ParseErrorKind};

/// A qualitative variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Self {
        Self(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Variable {
    fn from(name: &str) -> Self {
        Self::new(name)
    }
}

/// A sorted, duplicate-free list of variables shared by the normal forms
/// built over it. Cloning is cheap.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vars(Arc<[Variable]>);

impl Vars {
    pub fn new<I: IntoIterator<Item = Variable>>(vars: I) -> Self {
        let set: BTreeSet<Variable> = vars.into_iter().collect();
        Self(set.into_iter().collect())
    }

    /// The union of the variables of the given formulas.
    pub fn of<'a, I: IntoIterator<Item = &'a Formula>>(formulas: I) -> Self {
        let mut set = BTreeSet::new();
        for f in formulas {
            f.collect_variables(&mut set);
        }
        Self(set.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, v: &Variable) -> Option<usize> {
        self.0.binary_search(v).ok()
    }

    pub fn get(&self, i: usize) -> &Variable {
        &self.0[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Variable> {
        self.0.iter()
    }

    /// Number of unordered pairs of distinct variables.
    pub fn pair_count(&self) -> usize {
        let n = self.len();
        n * n.saturating_sub(1) / 2
    }

    /// Unordered pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }
}

/// An atomic formula `left rel right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub left: Variable,
    pub rel: Relation,
    pub right: Variable,
}

impl Constraint {
    pub fn new(left: impl Into<Variable>, rel: Relation, right: impl Into<Variable>) -> Self {
        Self {
            left: left.into(),
            rel,
            right: right.into(),
        }
    }
}

impl From<String> for Variable {
    fn from(name: String) -> Self {
        Self(name)
    }
}

/// A formula of the propositional closure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Constraint),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn atom(c: Constraint) -> Self {
        Formula::Atom(c)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; a single child is returned as is.
    pub fn and(mut children: Vec<Formula>) -> Self {
        assert!(!children.is_empty(), "a conjunction needs at least one child");
        if children.len() == 1 {
            children.pop().unwrap()
        } else {
            Formula::And(children)
        }
    }

    /// Disjunction; a single child is returned as is.
    pub fn or(mut children: Vec<Formula>) -> Self {
        assert!(!children.is_empty(), "a disjunction needs at least one child");
        if children.len() == 1 {
            children.pop().unwrap()
        } else {
            Formula::Or(children)
        }
    }

    pub fn variables(&self) -> Vars {
        Vars::of([self])
    }

    fn collect_variables(&self, out: &mut BTreeSet<Variable>) {
        match self {
            Formula::Atom(c) => {
                out.insert(c.left.clone());
                out.insert(c.right.clone());
            }
            Formula::Not(f) => f.collect_variables(out),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().for_each(|f| f.collect_variables(out))
            }
        }
    }

    /// Number of `Not` nodes in the tree.
    pub fn negation_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(f) => 1 + f.negation_count(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::negation_count).sum(),
        }
    }

    /// Renders the formula in the input grammar.
    pub fn display<'a>(&'a self, algebra: &'a Algebra) -> FormulaDisplay<'a> {
        FormulaDisplay {
            formula: self,
            algebra,
        }
    }
}

/// Writes `{r1, r2, ...}` using the algebra's relation names.
pub(crate) fn write_relation(
    f: &mut fmt::Formatter<'_>,
    algebra: &Algebra,
    rel: Relation,
) -> fmt::Result {
    f.write_str("{")?;
    for (k, b) in rel.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        f.write_str(algebra.name_of(b))?;
    }
    f.write_str("}")
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    algebra: &'a Algebra,
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, node: &Formula) -> fmt::Result {
        match node {
            Formula::Atom(c) => {
                write!(f, "{} ", c.left)?;
                write_relation(f, self.algebra, c.rel)?;
                write!(f, " {}", c.right)
            }
            Formula::Not(inner) => {
                f.write_str("!")?;
                self.write_operand(f, inner, |n| !matches!(n, Formula::Atom(_) | Formula::Not(_)))
            }
            Formula::And(children) => {
                for (k, child) in children.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" & ")?;
                    }
                    self.write_operand(f, child, |n| matches!(n, Formula::Or(_) | Formula::And(_)))?;
                }
                Ok(())
            }
            Formula::Or(children) => {
                for (k, child) in children.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" | ")?;
                    }
                    self.write_operand(f, child, |n| matches!(n, Formula::Or(_)))?;
                }
                Ok(())
            }
        }
    }

    fn write_operand(
        &self,
        f: &mut fmt::Formatter<'_>,
        node: &Formula,
        needs_parens: impl Fn(&Formula) -> bool,
    ) -> fmt::Result {
        if needs_parens(node) {
            f.write_str("(")?;
            self.write(f, node)?;
            f.write_str(")")
        } else {
            self.write(f, node)
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula)
    }
}
