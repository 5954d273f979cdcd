//! Negation-free disjunctive normal form.
//!
//! Negation is pushed down to the atoms (De Morgan, double negation), each
//! negated atom `x r y` becomes `x (B \ r) y`, conjunction is distributed
//! over disjunction, and each disjunct is kept in normal form over the
//! shared variable list. Conjunction of two normal forms is their pairwise
//! intersection, so disjuncts are normalized as they are built.

use std::collections::BTreeSet;

use super::{normalize, ConjunctiveFormula, Constraint, Formula, Vars};
use crate::algebra::Algebra;
use crate::solver::algebraic_closure;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DnfOptions {
    /// Drop disjuncts whose algebraic closure is inconsistent. Such
    /// disjuncts have no models, so this never changes the model set.
    pub drop_closure_inconsistent: bool,
}

impl Default for DnfOptions {
    fn default() -> Self {
        Self {
            drop_closure_inconsistent: true,
        }
    }
}

/// The complement of an atom within the base relations: `x (B \ r) y`.
pub fn negate_atom(algebra: &Algebra, c: &Constraint) -> Constraint {
    Constraint {
        left: c.left.clone(),
        rel: algebra.complement(c.rel),
        right: c.right.clone(),
    }
}

/// Rewrites `f` as a disjunction of normal-form conjunctions over `vars`
/// with the default options.
pub fn to_dnf_wo_neg(
    algebra: &Algebra,
    f: &Formula,
    vars: &Vars,
) -> Result<Vec<ConjunctiveFormula>> {
    to_dnf_wo_neg_with(algebra, f, vars, DnfOptions::default())
}

/// As [`to_dnf_wo_neg`]. Disjuncts with an empty pair are always dropped;
/// the output is duplicate-free and sorted.
pub fn to_dnf_wo_neg_with(
    algebra: &Algebra,
    f: &Formula,
    vars: &Vars,
    options: DnfOptions,
) -> Result<Vec<ConjunctiveFormula>> {
    let builder = Builder {
        algebra,
        vars,
        options,
    };
    Ok(builder.dnf(f, true)?.into_iter().collect())
}

/// The DNF as a formula tree: a disjunction of conjunctions of atoms, with
/// no negation. `None` when the DNF has no disjunct (an inconsistent input).
pub fn to_dnf_formula(
    algebra: &Algebra,
    f: &Formula,
    vars: &Vars,
) -> Result<Option<Formula>> {
    let disjuncts = to_dnf_wo_neg(algebra, f, vars)?;
    if disjuncts.is_empty() {
        return Ok(None);
    }
    let children = disjuncts
        .iter()
        .map(|cf| {
            Formula::and(
                cf.constraints()
                    .into_iter()
                    .map(Formula::Atom)
                    .collect(),
            )
        })
        .collect();
    Ok(Some(Formula::or(children)))
}

type Disjuncts = BTreeSet<ConjunctiveFormula>;

struct Builder<'a> {
    algebra: &'a Algebra,
    vars: &'a Vars,
    options: DnfOptions,
}

impl Builder<'_> {
    fn keep(&self, cf: &ConjunctiveFormula) -> bool {
        if cf.is_syntactically_inconsistent() {
            return false;
        }
        !self.options.drop_closure_inconsistent || algebraic_closure(self.algebra, cf).is_some()
    }

    /// DNF of `f` when `positive`, of `!f` otherwise.
    fn dnf(&self, f: &Formula, positive: bool) -> Result<Disjuncts> {
        match f {
            Formula::Atom(c) => {
                let literal = if positive {
                    c.clone()
                } else {
                    negate_atom(self.algebra, c)
                };
                let cf = normalize(self.algebra, &[literal], self.vars)?;
                Ok(if self.keep(&cf) {
                    Disjuncts::from([cf])
                } else {
                    Disjuncts::new()
                })
            }
            Formula::Not(inner) => self.dnf(inner, !positive),
            Formula::And(children) if positive => self.product(children, true),
            Formula::Or(children) if !positive => self.product(children, false),
            Formula::And(children) | Formula::Or(children) => {
                let mut out = Disjuncts::new();
                for child in children {
                    out.extend(self.dnf(child, positive)?);
                }
                Ok(out)
            }
        }
    }

    /// Distributes the conjunction of the children's DNFs.
    fn product(&self, children: &[Formula], positive: bool) -> Result<Disjuncts> {
        let mut acc = Disjuncts::from([ConjunctiveFormula::universal(
            self.algebra,
            self.vars.clone(),
        )]);
        for child in children {
            let rhs = self.dnf(child, positive)?;
            let mut next = Disjuncts::new();
            for a in &acc {
                for b in &rhs {
                    let cf = a.conjoin(b)?;
                    if self.keep(&cf) {
                        next.insert(cf);
                    }
                }
            }
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        Ok(acc)
    }
}
