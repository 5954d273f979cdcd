use std::collections::VecDeque;

use crate::algebra::{Algebra, Relation};
use crate::syntax::ConjunctiveFormula;

/// Path-consistency filtering: refines `R(x, y)` by `R(x, z) ∘ R(z, y)`
/// over all triples until a fixpoint is reached. Returns `None` if some
/// pair becomes empty. The result has the same models as the input.
pub fn algebraic_closure(algebra: &Algebra, cf: &ConjunctiveFormula) -> Option<ConjunctiveFormula> {
    let mut out = cf.clone();
    let n = out.vars().len();
    if cf.is_syntactically_inconsistent() {
        return None;
    }
    let pairs: Vec<(usize, usize)> = out.vars().pairs().collect();
    close(algebra, out.raw_mut(), n, pairs).then_some(out)
}

/// Closure of a raw row-major relation matrix, starting from the pairs in
/// `changed`. Returns false on inconsistency.
pub(crate) fn close(
    algebra: &Algebra,
    rels: &mut [Relation],
    n: usize,
    changed: impl IntoIterator<Item = (usize, usize)>,
) -> bool {
    let mut queued = vec![false; n * n];
    let mut queue = VecDeque::new();
    let push = |queue: &mut VecDeque<(usize, usize)>, queued: &mut [bool], i: usize, j: usize| {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if !queued[i * n + j] {
            queued[i * n + j] = true;
            queue.push_back((i, j));
        }
    };
    for (i, j) in changed {
        push(&mut queue, &mut queued, i, j);
    }

    while let Some((i, j)) = queue.pop_front() {
        queued[i * n + j] = false;
        for k in 0..n {
            if k == i || k == j {
                continue;
            }
            // R(i, k) through j.
            let via = algebra.compose(rels[i * n + j], rels[j * n + k]);
            let old = rels[i * n + k];
            let new = old & via;
            if new != old {
                if new.is_empty() {
                    return false;
                }
                rels[i * n + k] = new;
                rels[k * n + i] = algebra.inverse(new);
                push(&mut queue, &mut queued, i, k);
            }
            // R(k, j) through i.
            let via = algebra.compose(rels[k * n + i], rels[i * n + j]);
            let old = rels[k * n + j];
            let new = old & via;
            if new != old {
                if new.is_empty() {
                    return false;
                }
                rels[k * n + j] = new;
                rels[j * n + k] = algebra.inverse(new);
                push(&mut queue, &mut queued, k, j);
            }
        }
    }
    true
}
