//! Steiner triple systems, their lower-bound expansions, and random graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::is_good;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A set of triples on points `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleSystem {
    pub n: usize,
    /// Each block sorted ascending.
    pub blocks: Vec<[usize; 3]>,
}

impl TripleSystem {
    /// Builds a system from blocks, checking that every pair of points lies
    /// in exactly one block.
    pub fn new(n: usize, blocks: Vec<[usize; 3]>) -> Result<Self> {
        let blocks: Vec<[usize; 3]> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        let ts = TripleSystem { n, blocks };
        ts.check()?;
        Ok(ts)
    }

    fn check(&self) -> Result<()> {
        let mut seen = vec![false; self.n * self.n];
        for &[x, y, z] in &self.blocks {
            if z >= self.n || x == y || y == z {
                return Err(Error::Precondition(format!("bad block {:?}", [x, y, z])));
            }
            for (a, b) in [(x, y), (x, z), (y, z)] {
                if std::mem::replace(&mut seen[a * self.n + b], true) {
                    return Err(Error::Precondition(format!("pair {{{a}, {b}}} covered twice")));
                }
            }
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !seen[a * self.n + b] {
                    return Err(Error::Precondition(format!("pair {{{a}, {b}}} not covered")));
                }
            }
        }
        Ok(())
    }

    /// The block containing two distinct points.
    pub fn block_of(&self, x: usize, y: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&x) && b.contains(&y))
    }
}

/// A Steiner triple system on `n` points: the Bose construction for
/// `n = 3 mod 6` and the Skolem construction for `n = 1 mod 6`.
pub fn gen_sts(n: usize) -> Result<TripleSystem> {
    if n < 7 || !matches!(n % 6, 1 | 3) {
        return Err(Error::InadmissibleOrder(n));
    }
    let blocks = if n % 6 == 3 { bose(n / 3) } else { skolem((n - 1) / 3) };
    TripleSystem::new(n, blocks)
}

/// Points `(x, i)` of `Z_v × Z_3` map to `x + v i`.
fn bose(v: usize) -> Vec<[usize; 3]> {
    // idempotent commutative quasigroup of odd order: x∘y = (x + y)(v + 1)/2
    let op = |x: usize, y: usize| (x + y) * (v + 1) / 2 % v;
    let p = |x: usize, i: usize| x + v * (i % 3);
    let mut blocks: Vec<[usize; 3]> = (0..v).map(|x| [p(x, 0), p(x, 1), p(x, 2)]).collect();
    for x in 0..v {
        for y in x + 1..v {
            for i in 0..3 {
                blocks.push([p(x, i), p(y, i), p(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// `order` is even; points `(x, i)` map to `x + order i`, infinity is last.
fn skolem(order: usize) -> Vec<[usize; 3]> {
    let half = order / 2;
    // half-idempotent commutative quasigroup: relabelled addition table of Z_order
    let op = |x: usize, y: usize| {
        let s = (x + y) % order;
        if s % 2 == 0 {
            s / 2
        } else {
            half + s / 2
        }
    };
    let p = |x: usize, i: usize| x + order * (i % 3);
    let infinity = 3 * order;
    let mut blocks = Vec::new();
    for x in 0..half {
        blocks.push([p(x, 0), p(x, 1), p(x, 2)]);
        for i in 0..3 {
            blocks.push([infinity, p(x + half, i), p(x, i + 1)]);
        }
    }
    for x in 0..order {
        for y in x + 1..order {
            for i in 0..3 {
                blocks.push([p(x, i), p(y, i), p(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// Replaces every block `{x, y, z}` by new vertices `v_x, v_y, v_z, w` with
/// edges `x v_x`, `y v_y`, `z v_z` and `v_* w`. Points keep indices `0..n`;
/// block `b` owns `n + 4b .. n + 4b + 4` in the order `v_x, v_y, v_z, w`.
pub fn expand_sts(ts: &TripleSystem) -> Graph {
    let n = ts.n;
    let mut edges = Vec::with_capacity(6 * ts.blocks.len());
    for (b, block) in ts.blocks.iter().enumerate() {
        let base = n + 4 * b;
        let w = base + 3;
        for (offset, &point) in block.iter().enumerate() {
            edges.push((point, base + offset));
            edges.push((base + offset, w));
        }
    }
    Graph::new(n + 4 * ts.blocks.len(), edges).expect("expansion edges are in range")
}

/// Index of `v_x^e` for point `x` of block `block` in [`expand_sts`].
pub fn expansion_port(ts: &TripleSystem, block: usize, point: usize) -> Option<usize> {
    let offset = ts.blocks[block].iter().position(|&p| p == point)?;
    Some(ts.n + 4 * block + offset)
}

/// Index of `w^e` for block `block` in [`expand_sts`].
pub fn expansion_hub(ts: &TripleSystem, block: usize) -> usize {
    ts.n + 4 * block + 3
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::new(10, outer.chain(spokes).chain(inner)).expect("Petersen edges are in range")
}

/// Erdős–Rényi `G(n, p)` drawn from `rng`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("G(n, p) edges are in range")
}

pub const RANDOM_GOOD_RETRIES: usize = 10_000;

/// `G(n, p)` resampled until it is good, reproducible from `seed`.
pub fn random_good_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_GOOD_RETRIES {
        let g = gnp(n, p, &mut rng);
        if is_good(&g).is_good() {
            return Ok(g);
        }
    }
    Err(Error::RetriesExhausted(RANDOM_GOOD_RETRIES))
}
