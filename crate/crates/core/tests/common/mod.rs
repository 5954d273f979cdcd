//! Oracles shared by the integration tests. Nothing here calls the solver:
//! scenario sets come from enumerating interval endpoints, distances from a
//! fresh breadth-first search, and satisfaction from direct evaluation.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use qarev_core::solver::ScenarioSet;
use qarev_core::syntax::{Constraint, Formula, Scenario, Variable, Vars};
use qarev_core::{Algebra, BaseRelation, Relation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const NAMES: [&str; 3] = ["X", "Y", "Z"];

pub fn allen() -> &'static Algebra {
    Algebra::allen()
}

/// Allen relation of `[a, b]` to `[c, d]`, straight from the endpoint
/// definitions.
pub fn endpoint_relation((a, b): (i32, i32), (c, d): (i32, i32)) -> &'static str {
    use std::cmp::Ordering::*;
    match (a.cmp(&c), b.cmp(&d), b.cmp(&c), a.cmp(&d)) {
        (_, _, Less, _) => "b",
        (_, _, Equal, _) => "m",
        (_, _, _, Greater) => "bi",
        (_, _, _, Equal) => "mi",
        (Equal, Equal, _, _) => "eq",
        (Equal, Less, _, _) => "s",
        (Equal, Greater, _, _) => "si",
        (Greater, Equal, _, _) => "f",
        (Less, Equal, _, _) => "fi",
        (Greater, Less, _, _) => "d",
        (Less, Greater, _, _) => "di",
        (Less, Less, _, _) => "o",
        (Greater, Greater, _, _) => "oi",
    }
}

/// Every assignment of `n` intervals with endpoints in `0..2n`.
pub fn interval_tuples(n: usize) -> Vec<Vec<(i32, i32)>> {
    let m = 2 * n as i32;
    let single: Vec<(i32, i32)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                single.iter().map(move |&iv| {
                    let mut t = t.clone();
                    t.push(iv);
                    t
                })
            })
            .collect();
    }
    out
}

/// Ω over `vars` for Allen: the distinct relation patterns of all endpoint
/// assignments. `2n` endpoint values suffice for any order type.
pub fn omega_by_endpoints(vars: &Vars) -> ScenarioSet {
    let a = allen();
    let mut set = ScenarioSet::new(vars.clone());
    for tuple in interval_tuples(vars.len()) {
        let labels = vars
            .pairs()
            .map(|(i, j)| a.base(endpoint_relation(tuple[i], tuple[j])).unwrap())
            .collect();
        set.insert(Scenario::new(vars.clone(), labels));
    }
    set
}

/// Composition by endpoints: every `t` with `X r Y`, `Y s Z`, `X t Z`.
pub fn composition_by_endpoints() -> HashMap<(String, String), BTreeSet<String>> {
    let mut table: HashMap<(String, String), BTreeSet<String>> = HashMap::new();
    for t in interval_tuples(3) {
        let r = endpoint_relation(t[0], t[1]).to_string();
        let s = endpoint_relation(t[1], t[2]).to_string();
        let u = endpoint_relation(t[0], t[2]).to_string();
        table.entry((r, s)).or_default().insert(u);
    }
    table
}

/// All-pairs shortest paths over the neighborhood edges.
pub fn bfs_distances(a: &Algebra) -> Vec<Vec<u32>> {
    let n = a.len();
    let mut adj = vec![Vec::new(); n];
    for &(x, y) in a.neighbor_edges() {
        adj[x.id()].push(y.id());
        adj[y.id()].push(x.id());
    }
    (0..n)
        .map(|src| {
            let mut dist = vec![u32::MAX; n];
            dist[src] = 0;
            let mut queue = VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == u32::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            dist
        })
        .collect()
}

fn label(a: &Algebra, s: &Scenario, x: &Variable, y: &Variable) -> BaseRelation {
    let vars = s.vars();
    let (i, j) = (vars.index_of(x).unwrap(), vars.index_of(y).unwrap());
    let k = vars.pairs().position(|p| p == (i.min(j), i.max(j))).unwrap();
    let b = s.labels()[k];
    if i < j {
        b
    } else {
        a.inverse_base(b)
    }
}

pub fn satisfies(a: &Algebra, s: &Scenario, f: &Formula) -> bool {
    match f {
        Formula::Atom(c) => c.rel.contains(label(a, s, &c.left, &c.right)),
        Formula::Not(g) => !satisfies(a, s, g),
        Formula::And(gs) => gs.iter().all(|g| satisfies(a, s, g)),
        Formula::Or(gs) => gs.iter().any(|g| satisfies(a, s, g)),
    }
}

pub fn models_by_evaluation(a: &Algebra, f: &Formula, omega: &ScenarioSet) -> ScenarioSet {
    let mut out = ScenarioSet::new(omega.vars().clone());
    for s in omega {
        if satisfies(a, s, f) {
            out.insert(s.clone());
        }
    }
    out
}

pub fn oracle_distance(a: &Algebra, d: &[Vec<u32>], s: &Scenario, t: &Scenario) -> u32 {
    let vars = s.vars();
    let mut total = 0;
    for x in vars.iter() {
        for y in vars.iter() {
            if x != y {
                total += d[label(a, s, x, y).id()][label(a, t, x, y).id()];
            }
        }
    }
    total
}

/// `{ω ∈ Mod(mu) | d(Mod(psi), ω) = Δ}` with `Δ = d(Mod(psi), Mod(mu))`,
/// evaluated over the whole of `omega`. `None` when a side has no model.
pub fn revision_by_definition(
    a: &Algebra,
    psi: &Formula,
    mu: &Formula,
    omega: &ScenarioSet,
) -> Option<(u32, ScenarioSet)> {
    let d = bfs_distances(a);
    let mod_psi = models_by_evaluation(a, psi, omega);
    let mod_mu = models_by_evaluation(a, mu, omega);
    if mod_psi.is_empty() || mod_mu.is_empty() {
        return None;
    }
    let scored: Vec<(u32, &Scenario)> = mod_mu
        .iter()
        .map(|w| {
            let best = mod_psi.iter().map(|s| oracle_distance(a, &d, s, w)).min().unwrap();
            (best, w)
        })
        .collect();
    let delta = scored.iter().map(|(d, _)| *d).min().unwrap();
    let mut out = ScenarioSet::new(omega.vars().clone());
    for (dist, w) in scored {
        if dist == delta {
            out.insert(w.clone());
        }
    }
    Some((delta, out))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_relation(a: &Algebra, rng: &mut impl Rng) -> Relation {
    // Mostly small relations, sometimes wide ones.
    let n = a.len();
    let size = if rng.gen_bool(0.7) {
        rng.gen_range(1..=3)
    } else {
        rng.gen_range(1..=n)
    };
    let mut ids: Vec<usize> = (0..n).collect();
    for k in 0..size {
        let pick = rng.gen_range(k..n);
        ids.swap(k, pick);
    }
    ids[..size]
        .iter()
        .map(|&id| Relation::singleton(BaseRelation::new(id)))
        .fold(Relation::EMPTY, |acc, r| acc | r)
}

pub fn random_atom(a: &Algebra, rng: &mut impl Rng, nvars: usize) -> Formula {
    let i = rng.gen_range(0..nvars);
    let mut j = rng.gen_range(0..nvars - 1);
    if j >= i {
        j += 1;
    }
    Formula::Atom(Constraint::new(NAMES[i], random_relation(a, rng), NAMES[j]))
}

/// Random closure formula over the first `nvars` of X, Y, Z with nesting
/// depth at most `depth`.
pub fn random_formula(a: &Algebra, rng: &mut impl Rng, nvars: usize, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return random_atom(a, rng, nvars);
    }
    match rng.gen_range(0..3) {
        0 => Formula::Not(Box::new(random_formula(a, rng, nvars, depth - 1))),
        k => {
            let width = rng.gen_range(2..=3);
            let children = (0..width).map(|_| random_formula(a, rng, nvars, depth - 1)).collect();
            if k == 1 {
                Formula::And(children)
            } else {
                Formula::Or(children)
            }
        }
    }
}

/// Conjunction of one to three atoms over all of X, Y, Z.
pub fn random_conjunction(a: &Algebra, rng: &mut impl Rng) -> Formula {
    let width = rng.gen_range(1..=3);
    Formula::and((0..width).map(|_| random_atom(a, rng, 3)).collect())
}

/// Disjunction of two or three random conjunctions.
pub fn random_dnf(a: &Algebra, rng: &mut impl Rng) -> Formula {
    let width = rng.gen_range(2..=3);
    Formula::or((0..width).map(|_| random_conjunction(a, rng)).collect())
}

pub fn xyz() -> Vars {
    Vars::new(NAMES.map(Variable::from))
}

/// Random pair over all three variables: a small conjunct pins every
/// variable so both operands share the same vocabulary.
pub fn random_pair(a: &Algebra, rng: &mut impl Rng, depth: u32) -> (Formula, Formula) {
    let anchor = Formula::Atom(Constraint::new("X", a.universal(), "Y"));
    let anchor2 = Formula::Atom(Constraint::new("Y", a.universal(), "Z"));
    let psi = Formula::And(vec![random_formula(a, rng, 3, depth), anchor.clone(), anchor2.clone()]);
    let mu = Formula::And(vec![random_formula(a, rng, 3, depth), anchor, anchor2]);
    (psi, mu)
}
