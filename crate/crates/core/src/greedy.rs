//! Greedy recoloring with the quadratic color bound.
//!
//! Starting from the powers-of-two coloring, every vertex in turn receives
//! the smallest positive color that keeps the coloring majority additive.
//! Changing `c(u)` by `delta` shifts `s_c` on `N(u)` only, so it can break
//! the majority condition only at vertices `w` whose neighborhood splits into
//! a non-empty shifted part `A = N(u) ∩ N(w)` and a non-empty fixed part
//! `B = N(w) \ A`. Grouping `A` and `B` by current sums, a violation at `w`
//! needs a pair of classes `(A_i, B_j)` with `|A_i| + |B_j| > d(w)/2`, and
//! each such pair forbids exactly one shift `delta = s(B_j) - s(A_i)`.
//! At most `2Δ(Δ-1)` shifts are forbidden, which bounds every final color by
//! `2Δ(Δ-1) + 1`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::color::{self, Color};
use crate::coloring::{is_good, neighbor_sums, powers_init, verify, Coloring, GoodnessWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A signed change of a color.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Shift<T> {
    Down(T),
    Up(T),
}

impl<T: Color> Shift<T> {
    fn between(from: &T, to: &T) -> Self {
        if to >= from {
            Shift::Up(to.clone() - from.clone())
        } else {
            Shift::Down(from.clone() - to.clone())
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Shift::Down(x) | Shift::Up(x) => x.is_zero(),
        }
    }

    /// `color + self` when the result is positive.
    pub fn apply(&self, color: &T) -> Option<T> {
        let out = match self {
            Shift::Up(x) => color::add(color, x),
            Shift::Down(x) => color.checked_sub(x)?,
        };
        (!out.is_zero()).then_some(out)
    }
}

impl<T: Ord> Ord for Shift<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Shift::Down(a), Shift::Down(b)) => b.cmp(a),
            (Shift::Up(a), Shift::Up(b)) => a.cmp(b),
            (Shift::Down(_), Shift::Up(_)) => Ordering::Less,
            (Shift::Up(_), Shift::Down(_)) => Ordering::Greater,
        }
    }
}

impl<T: Ord> PartialOrd for Shift<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shape of the violating pair set at an affected vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessType {
    /// Every violating pair uses the largest class of `A`.
    One,
    /// Every violating pair uses the largest class of `B`, and the pairs are
    /// not just the two largest classes.
    Two,
}

/// A pair of sum classes that merges into a majority under one shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenPair<T> {
    /// Index into [`AffectedVertex::a_classes`].
    pub i: usize,
    /// Index into [`AffectedVertex::b_classes`].
    pub j: usize,
    pub shift: Shift<T>,
}

/// Analysis of one vertex `w` whose neighborhood meets `N(u)` partially.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffectedVertex<T> {
    pub w: usize,
    /// Classes of `A = N(u) ∩ N(w)` by current sum, largest first.
    pub a_classes: Vec<Vec<usize>>,
    /// Classes of `B = N(w) \ A` by current sum, largest first.
    pub b_classes: Vec<Vec<usize>>,
    pub pairs: Vec<ForbiddenPair<T>>,
    /// `None` iff `pairs` is empty.
    pub kind: Option<WitnessType>,
}

impl<T> AffectedVertex<T> {
    pub fn a_len(&self) -> usize {
        self.a_classes.iter().map(Vec::len).sum()
    }
}

/// Every shift of `c(u)` that breaks the majority condition, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenSet<T> {
    pub vertex: usize,
    pub current: T,
    pub affected: Vec<AffectedVertex<T>>,
    pub deltas: BTreeSet<Shift<T>>,
}

impl<T: Color> ForbiddenSet<T> {
    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn contains(&self, shift: &Shift<T>) -> bool {
        self.deltas.contains(shift)
    }

    /// New colors for `u` that are ruled out, i.e. the positive values of
    /// `c(u) + delta`.
    pub fn forbidden_colors(&self) -> BTreeSet<T> {
        self.deltas.iter().filter_map(|s| s.apply(&self.current)).collect()
    }

    /// The least positive color not ruled out.
    pub fn smallest_allowed(&self) -> T {
        let mut candidate = T::one();
        for f in self.forbidden_colors() {
            match f.cmp(&candidate) {
                Ordering::Less => {}
                Ordering::Equal => candidate = color::add(&candidate, &T::one()),
                Ordering::Greater => break,
            }
        }
        candidate
    }
}

/// `2Δ(Δ-1) + 1`.
pub fn quadratic_bound(max_degree: usize) -> u128 {
    let d = max_degree as u128;
    2 * d * d.saturating_sub(1) + 1
}

/// Vertices `w` for which both `N(u) ∩ N(w)` and `N(w) \ N(u)` are non-empty;
/// only these can gain a violation when `c(u)` changes. Sorted ascending.
pub fn affected_vertices(g: &Graph, u: usize) -> Vec<usize> {
    let mut in_nu = vec![false; g.n()];
    for &v in g.neighbors(u) {
        in_nu[v] = true;
    }
    let candidates: BTreeSet<usize> = g
        .neighbors(u)
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .collect();
    candidates
        .into_iter()
        .filter(|&w| g.neighbors(w).iter().any(|&x| !in_nu[x]))
        .collect()
}

fn classes_by_sum<T: Color>(members: impl Iterator<Item = usize>, sums: &[T]) -> Vec<(T, Vec<usize>)> {
    let mut map: HashMap<&T, Vec<usize>> = HashMap::new();
    for v in members {
        map.entry(&sums[v]).or_default().push(v);
    }
    let mut classes: Vec<(T, Vec<usize>)> = map.into_iter().map(|(s, m)| (s.clone(), m)).collect();
    classes.sort_by(|(sa, a), (sb, b)| b.len().cmp(&a.len()).then_with(|| sa.cmp(sb)));
    classes
}

fn classify<T>(pairs: &[ForbiddenPair<T>]) -> Option<WitnessType> {
    if pairs.is_empty() {
        None
    } else if pairs.iter().all(|p| p.i == 0) {
        Some(WitnessType::One)
    } else if pairs.iter().all(|p| p.j == 0) {
        Some(WitnessType::Two)
    } else {
        unreachable!("violating pairs share a largest class on one side")
    }
}

/// Forbidden shifts for `u`, given the current sums of a valid coloring.
fn analyze<T: Color>(g: &Graph, c: &Coloring<T>, sums: &[T], u: usize) -> ForbiddenSet<T> {
    let mut in_nu = vec![false; g.n()];
    for &v in g.neighbors(u) {
        in_nu[v] = true;
    }
    let mut affected = Vec::new();
    let mut deltas = BTreeSet::new();
    for w in affected_vertices(g, u) {
        let d = g.degree(w);
        let nw = g.neighbors(w);
        let a = classes_by_sum(nw.iter().copied().filter(|&x| in_nu[x]), sums);
        let b = classes_by_sum(nw.iter().copied().filter(|&x| !in_nu[x]), sums);
        let mut pairs = Vec::new();
        for (i, (sa, ca)) in a.iter().enumerate() {
            for (j, (sb, cb)) in b.iter().enumerate() {
                if 2 * (ca.len() + cb.len()) > d {
                    let shift = Shift::between(sa, sb);
                    debug_assert!(!shift.is_zero(), "input coloring must be valid");
                    deltas.insert(shift.clone());
                    pairs.push(ForbiddenPair { i, j, shift });
                }
            }
        }
        let kind = classify(&pairs);
        affected.push(AffectedVertex {
            w,
            a_classes: a.into_iter().map(|(_, m)| m).collect(),
            b_classes: b.into_iter().map(|(_, m)| m).collect(),
            pairs,
            kind,
        });
    }
    ForbiddenSet {
        vertex: u,
        current: c[u].clone(),
        affected,
        deltas,
    }
}

/// The set of shifts of `c(u)` that make the valid coloring `c` invalid.
pub fn forbidden_deltas<T: Color>(g: &Graph, c: &Coloring<T>, u: usize) -> Result<ForbiddenSet<T>> {
    c.check_domain(g)?;
    if !verify(g, c).is_valid() {
        return Err(Error::Precondition("forbidden_deltas needs a valid coloring".into()));
    }
    Ok(analyze(g, c, &neighbor_sums(g, c), u))
}

/// One recoloring step, reported to the observer of [`greedy_recolor_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyStep<T> {
    pub vertex: usize,
    pub old_color: T,
    pub new_color: T,
    pub forbidden: usize,
}

pub fn greedy_recolor<T: Color>(g: &Graph, order: Option<&[usize]>) -> Result<Coloring<T>> {
    greedy_recolor_with(g, order, |_, _| {})
}

/// Greedy recoloring in `order` (ascending index when `None`). The observer
/// sees every step together with the coloring after it.
pub fn greedy_recolor_with<T, F>(g: &Graph, order: Option<&[usize]>, mut observer: F) -> Result<Coloring<T>>
where
    T: Color,
    F: FnMut(&GreedyStep<T>, &Coloring<T>),
{
    if let GoodnessWitness::Bad { vertex, class } = is_good(g) {
        return Err(Error::NotGood {
            vertex,
            size: class.len(),
        });
    }
    let default_order: Vec<usize>;
    let order = match order {
        Some(order) => {
            check_permutation(order, g.n())?;
            order
        }
        None => {
            default_order = (0..g.n()).collect();
            &default_order
        }
    };
    let mut c: Coloring<T> = powers_init(g)?;
    let mut sums = neighbor_sums(g, &c);
    for &u in order {
        let forbidden = analyze(g, &c, &sums, u);
        let new_color = forbidden.smallest_allowed();
        let old_color = c[u].clone();
        for &v in g.neighbors(u) {
            sums[v] = color::add(&sums[v], &new_color)
                .checked_sub(&old_color)
                .expect("sum contains the old color");
        }
        c.set(u, new_color.clone());
        observer(
            &GreedyStep {
                vertex: u,
                old_color,
                new_color,
                forbidden: forbidden.len(),
            },
            &c,
        );
    }
    Ok(c)
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::Precondition(format!(
                "order is not a permutation of 0..{n}"
            )));
        }
    }
    if order.len() != n {
        return Err(Error::Precondition(format!("order is not a permutation of 0..{n}")));
    }
    Ok(())
}

/// A uniformly random vertex order, reproducible from `seed`.
pub fn random_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}
