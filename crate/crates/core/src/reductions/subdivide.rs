//! Graph k-colorability to majority additive k-coloring via triple subdivision.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ProvenanceMap, Role};
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Replaces every edge `uv` (with `u < v`) by the path `u x_u y x_v v`.
/// Original vertices keep their indices; edge `e` in [`Graph::edges`] order
/// owns `n + 3e .. n + 3e + 3` as `x_u, y, x_v`.
pub fn subdivide3(g: &Graph) -> (Graph, ProvenanceMap) {
    let mut map = ProvenanceMap::new();
    for vertex in 0..g.n() {
        map.push(Role::Original { vertex });
    }
    let mut edges = Vec::with_capacity(4 * g.edge_count());
    for (u, v) in g.edges() {
        let edge = (u, v);
        let xu = map.push(Role::SubdivisionX { edge, end: u });
        let y = map.push(Role::SubdivisionY { edge });
        let xv = map.push(Role::SubdivisionX { edge, end: v });
        edges.extend([(u, xu), (xu, y), (y, xv), (xv, v)]);
    }
    let sub = Graph::new(map.len(), edges).expect("subdivision edges are in range");
    (sub, map)
}

/// Colors in `1..=3` for the edges of a graph, in [`Graph::edges`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub edges: Vec<(usize, usize)>,
    pub colors: Vec<u8>,
}

impl EdgeColoring {
    /// Color of edge `{u, v}`.
    pub fn color_of(&self, u: usize, v: usize) -> Option<u8> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok().map(|i| self.colors[i])
    }
}

/// Every vertex has at most `d(u)/2` incident edges of each color.
pub fn is_majority_edge_coloring(g: &Graph, ec: &EdgeColoring) -> bool {
    if ec.edges.len() != g.edge_count() || ec.edges.iter().zip(g.edges()).any(|(a, b)| *a != b) {
        return false;
    }
    let mut counts = vec![[0usize; 3]; g.n()];
    for (&(u, v), &c) in ec.edges.iter().zip(&ec.colors) {
        if !(1..=3).contains(&c) {
            return false;
        }
        counts[u][c as usize - 1] += 1;
        counts[v][c as usize - 1] += 1;
    }
    (0..g.n()).all(|u| counts[u].iter().all(|&k| 2 * k <= g.degree(u)))
}

/// Seeded local search for a majority 3-edge-coloring.
///
/// While some vertex holds more than half of its edges in one color, one of
/// those edges is recolored to the move that most reduces the total excess
/// over the caps `floor(d/2)` (random among ties, with occasional random
/// moves). The search restarts from a fresh random coloring when it stalls.
/// Pendant vertices can never satisfy the cap and are rejected.
pub fn majority_3_edge_coloring(g: &Graph, seed: u64, max_iters: u64) -> Result<EdgeColoring> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 1) {
        return Err(Error::Precondition(format!(
            "vertex {v} has degree 1, no majority edge coloring exists"
        )));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap: Vec<usize> = g.degrees().map(|d| d / 2).collect();
    let mut incident = vec![Vec::new(); g.n()];
    for (e, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let stall_limit = 50 * edges.len() as u64 + 100;

    let mut colors: Vec<u8> = Vec::new();
    let mut counts: Vec<[usize; 3]> = Vec::new();
    let restart = |rng: &mut ChaCha8Rng, colors: &mut Vec<u8>, counts: &mut Vec<[usize; 3]>| {
        *colors = (0..edges.len()).map(|_| rng.gen_range(1..=3)).collect();
        *counts = vec![[0; 3]; g.n()];
        for (&(u, v), &c) in edges.iter().zip(colors.iter()) {
            counts[u][c as usize - 1] += 1;
            counts[v][c as usize - 1] += 1;
        }
    };
    restart(&mut rng, &mut colors, &mut counts);
    let excess = |counts: &[[usize; 3]]| -> usize {
        (0..g.n())
            .map(|v| counts[v].iter().map(|&k| k.saturating_sub(cap[v])).sum::<usize>())
            .sum()
    };
    let mut best = excess(&counts);
    let mut since_best = 0;
    for _ in 0..max_iters {
        let over: Vec<(usize, usize)> = (0..g.n())
            .flat_map(|v| (0..3).map(move |c| (v, c)))
            .filter(|&(v, c)| counts[v][c] > cap[v])
            .collect();
        let Some(&(v, col)) = over.choose(&mut rng) else {
            return Ok(EdgeColoring { edges, colors });
        };
        let mut moves = Vec::new();
        for &e in &incident[v] {
            if colors[e] as usize - 1 != col {
                continue;
            }
            let (a, b) = edges[e];
            for new in (0..3).filter(|&c| c != col) {
                let gain = |x: usize| -> isize {
                    let removed = (counts[x][col] > cap[x]) as isize;
                    let added = (counts[x][new] >= cap[x]) as isize;
                    added - removed
                };
                moves.push((gain(a) + gain(b), e, new));
            }
        }
        let least = moves.iter().map(|m| m.0).min().expect("an oversaturated color has an edge");
        let chosen = if rng.gen_bool(0.1) {
            *moves.choose(&mut rng).unwrap()
        } else {
            let ties: Vec<_> = moves.iter().filter(|m| m.0 == least).collect();
            **ties.choose(&mut rng).unwrap()
        };
        let (_, e, new) = chosen;
        let (a, b) = edges[e];
        let old = colors[e] as usize - 1;
        for x in [a, b] {
            counts[x][old] -= 1;
            counts[x][new] += 1;
        }
        colors[e] = new as u8 + 1;

        let now = excess(&counts);
        if now < best {
            best = now;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best > stall_limit {
                restart(&mut rng, &mut colors, &mut counts);
                best = excess(&counts);
                since_best = 0;
            }
        }
    }
    Err(Error::IterationBudgetExceeded(max_iters))
}

pub fn is_proper_coloring(g: &Graph, c: &Coloring<u64>) -> bool {
    c.len() == g.n() && g.edges().all(|(u, v)| c[u] != c[v])
}

/// `c'(x) = c1(x)` on original vertices, `c2(e)` on `y^e`, and 1 elsewhere.
/// No preconditions are checked.
pub fn lift_coloring(map: &ProvenanceMap, c1: &Coloring<u64>, c2: &EdgeColoring) -> Coloring<u64> {
    let values = map
        .roles()
        .iter()
        .map(|role| match *role {
            Role::Original { vertex } => c1[vertex],
            Role::SubdivisionY { edge } => {
                u64::from(c2.color_of(edge.0, edge.1).expect("edge coloring covers the graph"))
            }
            _ => 1,
        })
        .collect();
    Coloring::new(values).expect("lifted colors are positive")
}

/// Lifts a proper `k`-coloring and a majority 3-edge-coloring of `g` to a
/// majority additive `k`-coloring of `subdivide3(g)`.
pub fn kcoloring_to_mac(
    g: &Graph,
    map: &ProvenanceMap,
    c1: &Coloring<u64>,
    c2: &EdgeColoring,
    k: u64,
) -> Result<Coloring<u64>> {
    if k < 3 {
        return Err(Error::Precondition(format!("need k >= 3, got {k}")));
    }
    if g.n() > 0 && g.min_degree() < 4 {
        return Err(Error::Precondition(format!(
            "need minimum degree >= 4, got {}",
            g.min_degree()
        )));
    }
    c1.check_domain(g)?;
    if c1.max_color().is_some_and(|&m| m > k) {
        return Err(Error::Precondition(format!("vertex coloring uses colors beyond {k}")));
    }
    if !is_proper_coloring(g, c1) {
        return Err(Error::Precondition("vertex coloring is not proper".into()));
    }
    if !is_majority_edge_coloring(g, c2) {
        return Err(Error::Precondition("edge coloring is not a majority 3-edge-coloring".into()));
    }
    if map.len() != g.n() + 3 * g.edge_count() {
        return Err(Error::Precondition("map does not belong to subdivide3(g)".into()));
    }
    Ok(lift_coloring(map, c1, c2))
}

/// Restriction of a coloring of the subdivision to the original vertices.
pub fn restrict_to_original(map: &ProvenanceMap, c: &Coloring<u64>) -> Coloring<u64> {
    let values = map
        .roles()
        .iter()
        .zip(c.values())
        .filter(|(role, _)| matches!(role, Role::Original { .. }))
        .map(|(_, &color)| color)
        .collect();
    Coloring::new(values).expect("restricted colors are positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::generators::{gnp, petersen};
    use crate::lll::private_neighbor_check;

    #[test]
    fn subdivision_shapes() {
        let (g, map) = subdivide3(&Graph::complete(4));
        assert_eq!(g.n(), 22);
        assert_eq!(map.len(), 22);
        let (p, _) = subdivide3(&Graph::complete(2));
        assert_eq!(p, Graph::new(5, [(0, 2), (2, 3), (3, 4), (4, 1)]).unwrap());
        assert_eq!(p.max_degree(), 2);
        assert_eq!(p.edge_count(), 4);
    }

    #[test]
    fn subdivided_petersen_has_private_neighbors() {
        let (g, _) = subdivide3(&petersen());
        assert!(private_neighbor_check(&g).is_satisfied());
        assert_eq!(g.max_degree(), 3);
    }

    #[test]
    fn edge_coloring_small() {
        let c4 = Graph::cycle(4);
        let ec = majority_3_edge_coloring(&c4, 1, 10_000).unwrap();
        assert!(is_majority_edge_coloring(&c4, &ec));
        let k5 = Graph::complete(5);
        let ec = majority_3_edge_coloring(&k5, 2, 100_000).unwrap();
        assert!(is_majority_edge_coloring(&k5, &ec));
        assert!(majority_3_edge_coloring(&Graph::path(3), 0, 100).is_err());
    }

    #[test]
    fn edge_coloring_dense_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for seed in 0..20 {
            let g = gnp(25, 0.5, &mut rng);
            if g.min_degree() < 4 {
                continue;
            }
            let ec = majority_3_edge_coloring(&g, seed, 1_000_000).unwrap();
            assert!(is_majority_edge_coloring(&g, &ec));
        }
    }

    #[test]
    fn k5_lift() {
        let k5 = Graph::complete(5);
        let (sub, map) = subdivide3(&k5);
        let c1 = Coloring::new(vec![1u64, 2, 3, 4, 5]).unwrap();
        let c2 = majority_3_edge_coloring(&k5, 3, 100_000).unwrap();
        let lifted = kcoloring_to_mac(&k5, &map, &c1, &c2, 5).unwrap();
        assert!(verify(&sub, &lifted).is_valid());
        assert_eq!(restrict_to_original(&map, &lifted), c1);
    }

    #[test]
    fn improper_lift_fails_at_middle_vertex() {
        let k5 = Graph::complete(5);
        let (sub, map) = subdivide3(&k5);
        let c1 = Coloring::new(vec![1u64, 1, 2, 3, 4]).unwrap();
        let c2 = majority_3_edge_coloring(&k5, 3, 100_000).unwrap();
        assert!(kcoloring_to_mac(&k5, &map, &c1, &c2, 5).is_err());
        let lifted = lift_coloring(&map, &c1, &c2);
        let y = map.vertex(&Role::SubdivisionY { edge: (0, 1) }).unwrap();
        assert!(verify(&sub, &lifted).at(y).is_some());
    }

    #[test]
    fn lift_preconditions() {
        let k5 = Graph::complete(5);
        let (_, map) = subdivide3(&k5);
        let c1 = Coloring::new(vec![1u64, 2, 3, 4, 5]).unwrap();
        let c2 = majority_3_edge_coloring(&k5, 3, 100_000).unwrap();
        assert!(kcoloring_to_mac(&k5, &map, &c1, &c2, 2).is_err());
        assert!(kcoloring_to_mac(&k5, &map, &c1, &c2, 4).is_err());
        let k4 = Graph::complete(4);
        let (_, map4) = subdivide3(&k4);
        let c1 = Coloring::new(vec![1u64, 2, 3, 4]).unwrap();
        let c2 = EdgeColoring {
            edges: k4.edges().collect(),
            colors: vec![1; 6],
        };
        assert!(kcoloring_to_mac(&k4, &map4, &c1, &c2, 4).is_err());
    }
}
