//! Qualitative algebras: base relations, converse and weak-composition
//! tables, and the neighborhood-graph distance between base relations.
//!
//! Algebras are loaded from a JSON document and validated before use. Two
//! algebras ship with the crate: `allen` (13 interval relations) and `rcc8`
//! (8 region relations).

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::relation::{BaseRelation, Relation, MAX_BASE_RELATIONS};

const ALLEN_JSON: &str = include_str!("../data/allen.json");
const RCC8_JSON: &str = include_str!("../data/rcc8.json");

/// Marks an unreachable pair in the distance matrix of a disconnected graph.
const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed algebra document at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("an algebra needs at least 2 base relations, found {0}")]
    TooFewRelations(usize),
    #[error("at most {MAX_BASE_RELATIONS} base relations are supported, found {0}")]
    TooManyRelations(usize),
    #[error("duplicate relation name `{0}`")]
    DuplicateRelation(String),
    #[error("unknown relation name `{name}` in {context}")]
    UnknownRelation { context: String, name: String },
    #[error("inverse table has no entry for `{0}`")]
    InverseNotTotal(String),
    #[error("inverse table is not an involution at `{0}`")]
    InverseNotInvolution(String),
    #[error("composition table is missing the entry ({0}, {1})")]
    MissingComposition(String, String),
    #[error("identity law violated at `{0}`")]
    IdentityLaw(String),
    #[error("inverse of composition ({0}, {1}) differs from the composition of the inverses")]
    InverseDuality(String, String),
    #[error("neighborhood graph has a self-loop at `{0}`")]
    SelfLoop(String),
    #[error("neighborhood graph disconnected")]
    Disconnected,
    #[error("distance between `{0}` and `{1}` violates the metric axioms")]
    NotAMetric(String, String),
}

impl AlgebraError {
    /// True when the document could not be read as an algebra file at all,
    /// as opposed to describing an algebra that breaks a law.
    pub fn is_syntax(&self) -> bool {
        matches!(self, AlgebraError::Syntax { .. })
    }
}

impl From<serde_json::Error> for AlgebraError {
    fn from(e: serde_json::Error) -> Self {
        AlgebraError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// On-disk layout of an algebra document.
#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    relations: Vec<String>,
    identity: String,
    inverse: BTreeMap<String, String>,
    composition: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    neighborhood: Vec<[String; 2]>,
}

/// A validated qualitative algebra. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    names: Vec<String>,
    inverse: Vec<BaseRelation>,
    identity: BaseRelation,
    /// Row-major `|B| x |B|` weak-composition table.
    composition: Vec<Relation>,
    edges: Vec<(BaseRelation, BaseRelation)>,
    /// Row-major `|B| x |B|` shortest-path lengths in the neighborhood graph.
    distances: Vec<u32>,
}

/// Result of one law check run by [`Algebra::law_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: &'static str,
    pub violation: Option<AlgebraError>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub checks: Vec<LawOutcome>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violation.is_none())
    }

    pub fn first_violation(&self) -> Option<&AlgebraError> {
        self.checks.iter().find_map(|c| c.violation.as_ref())
    }
}

/// Parses and validates an algebra document.
pub fn load_algebra(text: &str) -> Result<Algebra, AlgebraError> {
    let algebra = Algebra::from_json_unchecked(text)?;
    match algebra.law_report().first_violation() {
        Some(err) => Err(err.clone()),
        None => Ok(algebra),
    }
}

impl Algebra {
    /// The Allen interval algebra shipped with the crate.
    pub fn allen() -> &'static Algebra {
        static ALLEN: OnceLock<Algebra> = OnceLock::new();
        ALLEN.get_or_init(|| load_algebra(ALLEN_JSON).expect("shipped Allen tables are valid"))
    }

    /// The RCC8 region algebra shipped with the crate.
    pub fn rcc8() -> &'static Algebra {
        static RCC8: OnceLock<Algebra> = OnceLock::new();
        RCC8.get_or_init(|| load_algebra(RCC8_JSON).expect("shipped RCC8 tables are valid"))
    }

    pub fn builtin(name: &str) -> Option<&'static Algebra> {
        match name {
            "allen" => Some(Self::allen()),
            "rcc8" => Some(Self::rcc8()),
            _ => None,
        }
    }

    /// Resolves names and fills in the tables without checking the algebra
    /// laws. Structural problems (unknown names, missing entries) are still
    /// rejected since no table could be built from them.
    pub fn from_json_unchecked(text: &str) -> Result<Algebra, AlgebraError> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        Self::from_file(file)
    }

    fn from_file(file: AlgebraFile) -> Result<Algebra, AlgebraError> {
        let n = file.relations.len();
        if n < 2 {
            return Err(AlgebraError::TooFewRelations(n));
        }
        if n > MAX_BASE_RELATIONS {
            return Err(AlgebraError::TooManyRelations(n));
        }
        for (i, name) in file.relations.iter().enumerate() {
            if file.relations[..i].contains(name) {
                return Err(AlgebraError::DuplicateRelation(name.clone()));
            }
        }
        let names = file.relations;
        let resolve = |name: &str, context: &str| -> Result<BaseRelation, AlgebraError> {
            names
                .iter()
                .position(|n| n == name)
                .map(BaseRelation::new)
                .ok_or_else(|| AlgebraError::UnknownRelation {
                    context: context.to_string(),
                    name: name.to_string(),
                })
        };

        let identity = resolve(&file.identity, "identity")?;

        for key in file.inverse.keys() {
            resolve(key, "inverse")?;
        }
        let mut inverse = Vec::with_capacity(n);
        for name in &names {
            let target = file
                .inverse
                .get(name)
                .ok_or_else(|| AlgebraError::InverseNotTotal(name.clone()))?;
            inverse.push(resolve(target, "inverse")?);
        }

        for (row, cells) in &file.composition {
            resolve(row, "composition")?;
            for col in cells.keys() {
                resolve(col, "composition")?;
            }
        }
        let mut composition = Vec::with_capacity(n * n);
        for r in &names {
            for s in &names {
                let cell = file
                    .composition
                    .get(r)
                    .and_then(|row| row.get(s))
                    .ok_or_else(|| AlgebraError::MissingComposition(r.clone(), s.clone()))?;
                let mut rel = Relation::EMPTY;
                for t in cell {
                    rel = rel | Relation::singleton(resolve(t, "composition")?);
                }
                composition.push(rel);
            }
        }

        let mut edges = Vec::with_capacity(file.neighborhood.len());
        for [a, b] in &file.neighborhood {
            edges.push((resolve(a, "neighborhood")?, resolve(b, "neighborhood")?));
        }
        let distances = shortest_paths(n, &edges);

        Ok(Algebra {
            name: file.name,
            names,
            inverse,
            identity,
            composition,
            edges,
            distances,
        })
    }

    /// Runs every algebra law check and collects the outcomes.
    pub fn law_report(&self) -> LawReport {
        let checks = vec![
            LawOutcome {
                law: "inverse-involution",
                violation: self.check_involution().err(),
            },
            LawOutcome {
                law: "identity",
                violation: self.check_identity().err(),
            },
            LawOutcome {
                law: "inverse-composition-duality",
                violation: self.check_duality().err(),
            },
            LawOutcome {
                law: "neighborhood-connectivity",
                violation: self.check_graph().err(),
            },
            LawOutcome {
                law: "distance-metric",
                violation: self.check_metric().err(),
            },
        ];
        LawReport { checks }
    }

    fn check_involution(&self) -> Result<(), AlgebraError> {
        for r in self.base_relations() {
            if self.inverse_base(self.inverse_base(r)) != r {
                return Err(AlgebraError::InverseNotInvolution(self.name_of(r).to_string()));
            }
        }
        Ok(())
    }

    fn check_identity(&self) -> Result<(), AlgebraError> {
        for r in self.base_relations() {
            let single = Relation::singleton(r);
            if self.compose_base(self.identity, r) != single
                || self.compose_base(r, self.identity) != single
            {
                return Err(AlgebraError::IdentityLaw(self.name_of(r).to_string()));
            }
        }
        Ok(())
    }

    fn check_duality(&self) -> Result<(), AlgebraError> {
        for r in self.base_relations() {
            for s in self.base_relations() {
                let lhs = self.inverse(self.compose_base(r, s));
                let rhs = self.compose_base(self.inverse_base(s), self.inverse_base(r));
                if lhs != rhs {
                    return Err(AlgebraError::InverseDuality(
                        self.name_of(r).to_string(),
                        self.name_of(s).to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_graph(&self) -> Result<(), AlgebraError> {
        if let Some(&(a, _)) = self.edges.iter().find(|(a, b)| a == b) {
            return Err(AlgebraError::SelfLoop(self.name_of(a).to_string()));
        }
        if self.distances.contains(&UNREACHABLE) {
            return Err(AlgebraError::Disconnected);
        }
        Ok(())
    }

    fn check_metric(&self) -> Result<(), AlgebraError> {
        let fail = |r: BaseRelation, s: BaseRelation| {
            AlgebraError::NotAMetric(self.name_of(r).to_string(), self.name_of(s).to_string())
        };
        for r in self.base_relations() {
            for s in self.base_relations() {
                let d = self.distance(r, s);
                if d == UNREACHABLE {
                    // Reported by the connectivity check.
                    continue;
                }
                if d != self.distance(s, r) || (d == 0) != (r == s) {
                    return Err(fail(r, s));
                }
                for t in self.base_relations() {
                    let (d1, d2) = (self.distance(s, t), self.distance(r, t));
                    if d1 != UNREACHABLE && d2 != UNREACHABLE && d2 > d + d1 {
                        return Err(fail(r, t));
                    }
                }
            }
        }
        Ok(())
    }

    /// Serializes back to the algebra document format.
    pub fn to_json(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("string serializes");
        let list = |r: Relation| {
            let items: Vec<String> = r.iter().map(|b| q(self.name_of(b))).collect();
            format!("[{}]", items.join(", "))
        };
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"name\": {},", q(&self.name));
        let rels: Vec<String> = self.names.iter().map(|n| q(n)).collect();
        let _ = writeln!(out, "  \"relations\": [{}],", rels.join(", "));
        let _ = writeln!(out, "  \"identity\": {},", q(self.name_of(self.identity)));
        let inv: Vec<String> = self
            .base_relations()
            .map(|r| format!("{}: {}", q(self.name_of(r)), q(self.name_of(self.inverse_base(r)))))
            .collect();
        let _ = writeln!(out, "  \"inverse\": {{{}}},", inv.join(", "));
        out.push_str("  \"composition\": {\n");
        let rows: Vec<String> = self
            .base_relations()
            .map(|r| {
                let cells: Vec<String> = self
                    .base_relations()
                    .map(|s| format!("{}: {}", q(self.name_of(s)), list(self.compose_base(r, s))))
                    .collect();
                format!("    {}: {{{}}}", q(self.name_of(r)), cells.join(", "))
            })
            .collect();
        out.push_str(&rows.join(",\n"));
        out.push_str("\n  },\n");
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(a, b)| format!("[{}, {}]", q(self.name_of(a)), q(self.name_of(b))))
            .collect();
        let _ = writeln!(out, "  \"neighborhood\": [{}]", edges.join(", "));
        out.push_str("}\n");
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of base relations, `|B|`.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn base_relations(&self) -> impl Iterator<Item = BaseRelation> {
        (0..self.names.len()).map(BaseRelation::new)
    }

    pub fn base(&self, name: &str) -> Option<BaseRelation> {
        self.names.iter().position(|n| n == name).map(BaseRelation::new)
    }

    pub fn name_of(&self, b: BaseRelation) -> &str {
        &self.names[b.id()]
    }

    pub fn relation_names(&self) -> &[String] {
        &self.names
    }

    pub fn identity(&self) -> BaseRelation {
        self.identity
    }

    pub fn neighbor_edges(&self) -> &[(BaseRelation, BaseRelation)] {
        &self.edges
    }

    /// The universal relation `B`.
    pub fn universal(&self) -> Relation {
        Relation::full(self.names.len())
    }

    /// `B \ r`.
    pub fn complement(&self, r: Relation) -> Relation {
        Relation::from_bits(self.universal().bits() & !r.bits())
    }

    /// Builds a relation from base-relation names.
    pub fn relation<'a, I>(&self, names: I) -> Result<Relation, AlgebraError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names.into_iter().try_fold(Relation::EMPTY, |acc, name| {
            let b = self.base(name).ok_or_else(|| AlgebraError::UnknownRelation {
                context: "relation".to_string(),
                name: name.to_string(),
            })?;
            Ok(acc | Relation::singleton(b))
        })
    }

    pub fn inverse_base(&self, b: BaseRelation) -> BaseRelation {
        self.inverse[b.id()]
    }

    /// Elementwise inverse of a relation.
    pub fn inverse(&self, r: Relation) -> Relation {
        r.iter().map(|b| self.inverse_base(b)).collect()
    }

    pub fn compose_base(&self, r: BaseRelation, s: BaseRelation) -> Relation {
        self.composition[r.id() * self.names.len() + s.id()]
    }

    /// Weak composition of two relations: the union of the table entries
    /// over all member pairs.
    pub fn compose(&self, r: Relation, s: Relation) -> Relation {
        let full = self.universal();
        let mut acc = Relation::EMPTY;
        for a in r.iter() {
            let row = &self.composition[a.id() * self.names.len()..];
            for b in s.iter() {
                acc = acc | row[b.id()];
            }
            if acc == full {
                break;
            }
        }
        acc
    }

    /// Shortest-path length between two base relations in the neighborhood graph.
    pub fn distance(&self, r: BaseRelation, s: BaseRelation) -> u32 {
        self.distances[r.id() * self.names.len() + s.id()]
    }

    /// Smallest distance between a member of `r` and a member of `s`, or
    /// `None` if either relation is empty.
    pub fn min_distance(&self, r: Relation, s: Relation) -> Option<u32> {
        if !r.intersection(s).is_empty() {
            return Some(0);
        }
        r.iter()
            .flat_map(|a| s.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.distance(a, b))
            .min()
    }

    /// True when this algebra carries the Allen relation symbols with the
    /// Allen converse table, so interval semantics apply.
    pub fn has_allen_signature(&self) -> bool {
        let allen = Algebra::allen();
        self.names == allen.names && self.inverse == allen.inverse
    }
}

fn shortest_paths(n: usize, edges: &[(BaseRelation, BaseRelation)]) -> Vec<u32> {
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in edges {
        adjacency[a.id()].push(b.id());
        adjacency[b.id()].push(a.id());
    }
    let mut dist = vec![UNREACHABLE; n * n];
    for source in 0..n {
        let row = &mut dist[source * n..(source + 1) * n];
        row[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                if row[v] == UNREACHABLE {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    dist
}
