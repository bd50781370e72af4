//! Exact decision of k-MAC and the majority additive chromatic number.
//!
//! Validity depends only on equalities `s(a) = s(b)` between two neighbors
//! of a common vertex `u` with `d(u) >= 2`, and such an equality depends only
//! on the colors in the symmetric difference `N(a) Δ N(b)`. The search keeps,
//! per pair, how many of those vertices are still uncolored; once a pair is
//! fully determined and equal it joins a union-find over `N(u)`, and a class
//! larger than `d(u)/2` prunes the branch. Pairs with undetermined sums never
//! prune. Vertices outside every symmetric difference cannot influence
//! validity and only receive color 1.

use std::collections::VecDeque;

use serde::Serialize;

use crate::coloring::{is_good, one_mac_check, verify, Coloring, GoodnessWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const BRUTE_FORCE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(Coloring<u64>),
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub nodes_explored: u64,
    pub budget_hit: bool,
}

impl SearchOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self.verdict, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        self.verdict == Verdict::No
    }

    pub fn witness(&self) -> Option<&Coloring<u64>> {
        match &self.verdict {
            Verdict::Yes(c) => Some(c),
            _ => None,
        }
    }
}

/// Vertices by decreasing degree; ties keep breadth-first order, where each
/// component is explored from its highest-degree vertex.
pub fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut bfs_rank = vec![usize::MAX; n];
    let mut rank = 0;
    for &root in &by_degree {
        if bfs_rank[root] != usize::MAX {
            continue;
        }
        bfs_rank[root] = rank;
        rank += 1;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if bfs_rank[y] == usize::MAX {
                    bfs_rank[y] = rank;
                    rank += 1;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), bfs_rank[v]));
    order
}

struct Pair {
    center: usize,
    a: usize,
    b: usize,
    /// `s(a) - s(b)` as a signed sum over the symmetric difference.
    terms: Vec<(usize, i64)>,
}

struct Search<'g> {
    g: &'g Graph,
    k: u64,
    pairs: Vec<Pair>,
    pairs_of_var: Vec<Vec<usize>>,
    pairs_at: Vec<Vec<usize>>,
    remaining: Vec<usize>,
    equal: Vec<bool>,
    color: Vec<u64>,
    relevant: Vec<bool>,
    touched: Vec<usize>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, k: u64) -> Self {
        let n = g.n();
        let mut pairs = Vec::new();
        let mut pairs_at = vec![Vec::new(); n];
        for u in (0..n).filter(|&u| g.degree(u) >= 2) {
            let nu = g.neighbors(u);
            for a in 0..nu.len() {
                for b in a + 1..nu.len() {
                    pairs_at[u].push(pairs.len());
                    pairs.push(Pair {
                        center: u,
                        a,
                        b,
                        terms: symmetric_difference(g.neighbors(nu[a]), g.neighbors(nu[b])),
                    });
                }
            }
        }
        let mut pairs_of_var = vec![Vec::new(); n];
        let mut relevant = vec![false; n];
        for (pid, pair) in pairs.iter().enumerate() {
            for &(x, _) in &pair.terms {
                pairs_of_var[x].push(pid);
                relevant[x] = true;
            }
        }
        let remaining: Vec<usize> = pairs.iter().map(|p| p.terms.len()).collect();
        let equal = remaining.iter().map(|&r| r == 0).collect();
        Search {
            g,
            k,
            pairs,
            pairs_of_var,
            pairs_at,
            remaining,
            equal,
            color: vec![0; n],
            relevant,
            touched: Vec::new(),
        }
    }

    /// Whether the determined equalities at `u` form a majority class.
    fn majority_at(&self, u: usize) -> bool {
        let d = self.g.degree(u);
        let mut parent: Vec<usize> = (0..d).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &pid in &self.pairs_at[u] {
            if self.equal[pid] {
                let (ra, rb) = (find(&mut parent, self.pairs[pid].a), find(&mut parent, self.pairs[pid].b));
                parent[ra] = rb;
            }
        }
        let mut size = vec![0usize; d];
        for x in 0..d {
            let r = find(&mut parent, x);
            size[r] += 1;
            if 2 * size[r] > d {
                return true;
            }
        }
        false
    }

    fn any_violation(&self) -> bool {
        (0..self.g.n()).any(|u| self.g.degree(u) >= 2 && self.majority_at(u))
    }

    /// Colors `x`; false if some neighborhood now has a determined majority.
    fn assign(&mut self, x: usize, col: u64) -> bool {
        self.color[x] = col;
        self.touched.clear();
        for i in 0..self.pairs_of_var[x].len() {
            let pid = self.pairs_of_var[x][i];
            self.remaining[pid] -= 1;
            if self.remaining[pid] == 0 {
                let diff: i64 = self.pairs[pid]
                    .terms
                    .iter()
                    .map(|&(v, sign)| sign * self.color[v] as i64)
                    .sum();
                if diff == 0 {
                    self.equal[pid] = true;
                    self.touched.push(self.pairs[pid].center);
                }
            }
        }
        let mut centers = std::mem::take(&mut self.touched);
        centers.sort_unstable();
        centers.dedup();
        let ok = centers.iter().all(|&u| !self.majority_at(u));
        self.touched = centers;
        ok
    }

    fn unassign(&mut self, x: usize) {
        for &pid in &self.pairs_of_var[x] {
            if self.remaining[pid] == 0 {
                self.equal[pid] = false;
            }
            self.remaining[pid] += 1;
        }
        self.color[x] = 0;
    }

    fn run(&mut self, budget: u64) -> SearchOutcome {
        let mut nodes = 0;
        if self.any_violation() {
            return SearchOutcome {
                verdict: Verdict::No,
                nodes_explored: 0,
                budget_hit: false,
            };
        }
        let order = search_order(self.g);
        let n = order.len();
        let mut next = vec![1u64; n];
        let mut pos = 0;
        loop {
            if pos == n {
                let coloring = Coloring::new(self.color.clone()).expect("all vertices colored");
                debug_assert!(verify(self.g, &coloring).is_valid());
                return SearchOutcome {
                    verdict: Verdict::Yes(coloring),
                    nodes_explored: nodes,
                    budget_hit: false,
                };
            }
            let x = order[pos];
            if self.color[x] != 0 {
                self.unassign(x);
            }
            let limit = if self.relevant[x] { self.k } else { 1 };
            let mut advanced = false;
            while next[pos] <= limit {
                let col = next[pos];
                next[pos] += 1;
                nodes += 1;
                if nodes > budget {
                    return SearchOutcome {
                        verdict: Verdict::Unknown,
                        nodes_explored: nodes - 1,
                        budget_hit: true,
                    };
                }
                if self.assign(x, col) {
                    advanced = true;
                    break;
                }
                self.unassign(x);
            }
            if advanced {
                pos += 1;
                if pos < n {
                    next[pos] = 1;
                }
            } else {
                next[pos] = 1;
                if pos == 0 {
                    return SearchOutcome {
                        verdict: Verdict::No,
                        nodes_explored: nodes,
                        budget_hit: false,
                    };
                }
                pos -= 1;
            }
        }
    }
}

/// `N(a) \ N(b)` with sign +1 and `N(b) \ N(a)` with sign -1.
fn symmetric_difference(na: &[usize], nb: &[usize]) -> Vec<(usize, i64)> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < na.len() || j < nb.len() {
        match (na.get(i), nb.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(&x), Some(&y)) if x < y => {
                out.push((x, 1));
                i += 1;
            }
            (Some(&x), None) => {
                out.push((x, 1));
                i += 1;
            }
            (_, Some(&y)) => {
                out.push((y, -1));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Decides whether `g` has a majority additive coloring with colors in
/// `1..=k`, exploring at most `budget` search nodes.
pub fn decide_kmac(g: &Graph, k: u64, budget: u64) -> SearchOutcome {
    assert!(k >= 1, "k must be positive");
    Search::new(g, k).run(budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChiOutcome {
    Value { chi: u64, witness: Coloring<u64> },
    NotGood(GoodnessWitness),
    /// The search for `k` colors ran out of budget; every smaller `k` was refuted.
    Unknown { k: u64 },
}

/// The least `k` admitting a majority additive `k`-coloring.
pub fn chi_mac(g: &Graph, budget: u64) -> ChiOutcome {
    let goodness = is_good(g);
    if !goodness.is_good() {
        return ChiOutcome::NotGood(goodness);
    }
    if one_mac_check(g) {
        return ChiOutcome::Value {
            chi: 1,
            witness: Coloring::ones(g.n()),
        };
    }
    for k in 2.. {
        match decide_kmac(g, k, budget).verdict {
            Verdict::Yes(witness) => return ChiOutcome::Value { chi: k, witness },
            Verdict::No => {}
            Verdict::Unknown => return ChiOutcome::Unknown { k },
        }
    }
    unreachable!("good graphs have a majority additive coloring")
}

/// Ground truth by enumerating all `k^n` colorings through [`verify`].
pub fn brute_force_oracle(g: &Graph, k: u64) -> Result<bool> {
    let n = g.n();
    let total = (k as u128).checked_pow(n as u32).filter(|&t| t <= BRUTE_FORCE_LIMIT as u128);
    if total.is_none() {
        return Err(Error::TooLarge(format!("{k}^{n} colorings")));
    }
    let mut values = vec![1u64; n];
    loop {
        let c = Coloring::new(values.clone()).expect("colors are positive");
        if verify(g, &c).is_valid() {
            return Ok(true);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(false);
            }
            if values[i] < k {
                values[i] += 1;
                break;
            }
            values[i] = 1;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchStats {
    pub nodes_explored: u64,
    pub budget_hit: bool,
}

impl From<&SearchOutcome> for SearchStats {
    fn from(o: &SearchOutcome) -> Self {
        SearchStats {
            nodes_explored: o.nodes_explored,
            budget_hit: o.budget_hit,
        }
    }
}
