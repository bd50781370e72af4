//! Colorings, neighbor sums, the majority additive verifier and the goodness test.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::hash::Hash;
use std::ops::Index;

use serde::Serialize;

use crate::color::{self, Color};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Positive integer color per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring<T> {
    values: Vec<T>,
}

impl<T: Color> Coloring<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some(v) = values.iter().position(|c| c.is_zero()) {
            return Err(Error::InvalidColoring(format!("vertex {v} has color 0")));
        }
        Ok(Coloring { values })
    }

    /// The constant coloring `c = 1`.
    pub fn ones(n: usize) -> Self {
        Coloring {
            values: vec![T::one(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    /// Sets the color of `v`. Panics on a zero color.
    pub fn set(&mut self, v: usize, color: T) {
        assert!(!color.is_zero(), "colors are positive integers");
        self.values[v] = color;
    }

    /// The largest color used, `None` on an empty coloring.
    pub fn max_color(&self) -> Option<&T> {
        self.values.iter().max()
    }

    pub fn cast<U: Color>(&self) -> Option<Coloring<U>> {
        let values = self.values.iter().map(Color::cast).collect::<Option<Vec<U>>>()?;
        Some(Coloring { values })
    }

    /// Fails unless the coloring has exactly one color per vertex of `g`.
    pub fn check_domain(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::InvalidColoring(format!(
                "coloring covers {} vertices, graph has {}",
                self.len(),
                g.n()
            )));
        }
        Ok(())
    }

    /// Parses `vertexIndex color` lines (0-indexed, `#` comments allowed).
    /// Every index in `0..n` must appear exactly once.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<Option<T>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = content.split_whitespace().collect();
            let (vertex, value) = match fields.as_slice() {
                [] => continue,
                [vertex, value] => (*vertex, *value),
                _ => return Err(Error::parse(line, "expected `vertexIndex color`")),
            };
            let vertex: usize = vertex
                .parse()
                .map_err(|_| Error::parse(line, format!("bad vertex index {vertex:?}")))?;
            let value = T::parse_decimal(value)
                .ok_or_else(|| Error::parse(line, format!("bad color {value:?}")))?;
            if value.is_zero() {
                return Err(Error::parse(line, "colors must be positive"));
            }
            if vertex >= entries.len() {
                entries.resize(vertex + 1, None);
            }
            if entries[vertex].replace(value).is_some() {
                return Err(Error::parse(line, format!("vertex {vertex} colored twice")));
            }
        }
        let values = entries
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or_else(|| Error::InvalidColoring(format!("vertex {v} has no color"))))
            .collect::<Result<Vec<T>>>()?;
        Ok(Coloring { values })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.values.iter().enumerate() {
            writeln!(out, "{v} {c}").unwrap();
        }
        out
    }
}

impl<T> Index<usize> for Coloring<T> {
    type Output = T;

    fn index(&self, v: usize) -> &T {
        &self.values[v]
    }
}

/// `s_c(v)`: the sum of the colors of the neighbors of `v`.
pub fn neighbor_sum<T: Color>(g: &Graph, c: &Coloring<T>, v: usize) -> T {
    g.neighbors(v)
        .iter()
        .fold(T::zero(), |acc, &x| color::add(&acc, &c[x]))
}

pub fn neighbor_sums<T: Color>(g: &Graph, c: &Coloring<T>) -> Vec<T> {
    (0..g.n()).map(|v| neighbor_sum(g, c, v)).collect()
}

/// A vertex `u` with more than half of its neighbors sharing the key `sum`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation<S> {
    pub vertex: usize,
    pub sum: S,
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport<S> {
    pub violations: Vec<Violation<S>>,
}

impl<S> ViolationReport<S> {
    /// True iff no violation was found.
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn at(&self, vertex: usize) -> Option<&Violation<S>> {
        self.violations.iter().find(|x| x.vertex == vertex)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.violations.iter().map(|x| x.vertex)
    }
}

/// Majority check at a single vertex: returns the class of neighbors sharing
/// a key when it holds strictly more than half of them.
pub(crate) fn majority_at<S>(g: &Graph, keys: &[S], u: usize) -> Option<Violation<S>>
where
    S: Clone + Eq + Hash,
{
    let d = g.degree(u);
    if d < 2 {
        return None;
    }
    let mut classes: HashMap<&S, Vec<usize>> = HashMap::with_capacity(d);
    for &v in g.neighbors(u) {
        classes.entry(&keys[v]).or_default().push(v);
    }
    // at most one class can exceed d/2
    classes
        .into_iter()
        .find(|(_, members)| 2 * members.len() > d)
        .map(|(key, witnesses)| Violation {
            vertex: u,
            sum: key.clone(),
            witnesses,
        })
}

pub(crate) fn majority_violations<S>(g: &Graph, keys: &[S]) -> ViolationReport<S>
where
    S: Clone + Eq + Hash,
{
    ViolationReport {
        violations: (0..g.n()).filter_map(|u| majority_at(g, keys, u)).collect(),
    }
}

/// Lists every vertex of degree at least two at which more than half of the
/// neighbors share a neighbor sum. Empty iff `c` is majority additive.
pub fn verify<T: Color>(g: &Graph, c: &Coloring<T>) -> ViolationReport<T> {
    assert_eq!(c.len(), g.n(), "coloring must cover every vertex");
    majority_violations(g, &neighbor_sums(g, c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GoodnessWitness {
    Good,
    /// `class` is a set of more than `d(vertex)/2` neighbors of `vertex`
    /// with pairwise identical neighborhoods.
    Bad { vertex: usize, class: Vec<usize> },
}

impl GoodnessWitness {
    pub fn is_good(&self) -> bool {
        matches!(self, GoodnessWitness::Good)
    }
}

/// Tests whether `g` admits some majority additive coloring. A vertex whose
/// neighbors contain a majority with identical neighborhoods is the only
/// obstruction; the first such vertex is reported.
pub fn is_good(g: &Graph) -> GoodnessWitness {
    for u in 0..g.n() {
        let d = g.degree(u);
        if d < 2 {
            continue;
        }
        let mut groups: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for &v in g.neighbors(u) {
            groups.entry(g.neighbors(v)).or_default().push(v);
        }
        let largest = groups.into_values().max_by_key(Vec::len).unwrap_or_default();
        if 2 * largest.len() > d {
            return GoodnessWitness::Bad {
                vertex: u,
                class: largest,
            };
        }
    }
    GoodnessWitness::Good
}

/// `c(v) = 2^v`: distinct subset sums make it majority additive on every
/// good graph.
pub fn powers_init<T: Color>(g: &Graph) -> Result<Coloring<T>> {
    let values = (0..g.n())
        .map(|v| T::checked_pow2(v).ok_or(Error::ColorOverflow))
        .collect::<Result<Vec<T>>>()?;
    Ok(Coloring { values })
}

/// Whether the all-ones coloring is majority additive, i.e. no vertex of
/// degree at least two has more than half of its neighbors of equal degree.
pub fn one_mac_check(g: &Graph) -> bool {
    let degrees: Vec<usize> = g.degrees().collect();
    majority_violations(g, &degrees).is_valid()
}
