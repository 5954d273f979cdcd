//! Interval semantics for the Allen algebra: a scenario is satisfiable iff
//! its endpoint order constraints are.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::Algebra;
use crate::syntax::{Scenario, Vars};
use crate::{Error, Result};

/// Rational endpoints for every variable, scaled to small integers; `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    vars: Vars,
    endpoints: Vec<(u32, u32)>,
}

impl Realization {
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// `(lo, hi)` of the `i`-th variable.
    pub fn interval(&self, i: usize) -> (u32, u32) {
        self.endpoints[i]
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, (lo, hi))) in self.vars.iter().zip(&self.endpoints).enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}=[{lo},{hi}]")?;
        }
        Ok(())
    }
}

/// Endpoint comparisons `(a?c, a?d, b?c, b?d)` for `[a, b] r [c, d]`, for
/// the relations whose converse is listed by swapping the intervals.
const ENDPOINT_ORDER: [(&str, [Ordering; 4]); 7] = {
    use Ordering::{Equal as E, Greater as G, Less as L};
    [
        ("b", [L, L, L, L]),
        ("m", [L, L, E, L]),
        ("o", [L, L, G, L]),
        ("s", [E, L, G, L]),
        ("d", [G, L, G, L]),
        ("f", [G, L, G, E]),
        ("eq", [E, L, G, E]),
    ]
};

/// Finds interval endpoints satisfying every constraint of an Allen
/// scenario, or `None` when the scenario is inconsistent.
pub fn realize_scenario(algebra: &Algebra, s: &Scenario) -> Result<Option<Realization>> {
    if !algebra.has_allen_signature() {
        return Err(Error::NotAllen);
    }
    let vars = s.vars().clone();
    let n = vars.len();
    let lo = |i: usize| 2 * i;
    let hi = |i: usize| 2 * i + 1;

    let mut less: Vec<(usize, usize)> = (0..n).map(|i| (lo(i), hi(i))).collect();
    let mut equal: Vec<(usize, usize)> = Vec::new();
    for (i, j) in vars.pairs() {
        let b = s.base(algebra, i, j);
        let name = algebra.name_of(b);
        let (x, y, name) = match ENDPOINT_ORDER.iter().find(|(n, _)| *n == name) {
            Some(_) => (i, j, name),
            None => (j, i, algebra.name_of(algebra.inverse_base(b))),
        };
        let (_, order) = ENDPOINT_ORDER
            .iter()
            .find(|(n, _)| *n == name)
            .expect("Allen relation or its converse is tabulated");
        let points = [(lo(x), lo(y)), (lo(x), hi(y)), (hi(x), lo(y)), (hi(x), hi(y))];
        for ((p, q), ord) in points.into_iter().zip(order) {
            match ord {
                Ordering::Less => less.push((p, q)),
                Ordering::Greater => less.push((q, p)),
                Ordering::Equal => equal.push((p, q)),
            }
        }
    }

    let Some(values) = solve_point_network(2 * n, &less, &equal) else {
        return Ok(None);
    };
    let endpoints = (0..n).map(|i| (values[lo(i)], values[hi(i)])).collect();
    Ok(Some(Realization { vars, endpoints }))
}

/// Assigns integers to `count` points so that every `(p, q)` in `less`
/// has `p < q` and every pair in `equal` shares a value. Equality classes
/// are merged first, then classes are layered by longest strict path.
fn solve_point_network(
    count: usize,
    less: &[(usize, usize)],
    equal: &[(usize, usize)],
) -> Option<Vec<u32>> {
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(p, q) in equal {
        let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
        if rp != rq {
            parent[rp] = rq;
        }
    }

    let mut successors = vec![Vec::new(); count];
    let mut indegree = vec![0usize; count];
    for &(p, q) in less {
        let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
        if rp == rq {
            return None;
        }
        successors[rp].push(rq);
        indegree[rq] += 1;
    }

    let roots: Vec<usize> = (0..count).filter(|&p| find(&mut parent, p) == p).collect();
    let mut level = vec![0u32; count];
    let mut ready: Vec<usize> = roots.iter().copied().filter(|&r| indegree[r] == 0).collect();
    let mut visited = 0;
    while let Some(u) = ready.pop() {
        visited += 1;
        for &v in &successors[u] {
            level[v] = level[v].max(level[u] + 1);
            indegree[v] -= 1;
            if indegree[v] == 0 {
                ready.push(v);
            }
        }
    }
    if visited != roots.len() {
        return None;
    }
    Some((0..count).map(|p| level[find(&mut parent, p)]).collect())
}
