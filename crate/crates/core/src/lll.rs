//! Random colorings for graphs with the private neighbor property.
//!
//! If every neighbor `v` of every vertex `u` with `d(u) >= 2` has a neighbor
//! `w` whose neighborhood meets `N[u]` only in `v`, then the neighbor sums of
//! `N(u)` taken modulo `k` are pairwise independent and uniform under a
//! uniform coloring. With `k = ceil(4 e^3 Δ^(4 / floor(δ/2)))` the local
//! lemma guarantees a coloring where no residue class holds a majority of
//! any neighborhood, and residue-distinct sums are distinct sums.
//!
//! [`lll_color`] finds such a coloring by Moser–Tardos resampling: the bad
//! event at `u` depends on the colors of `N(N(u))`, which are redrawn until
//! no event holds.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::color::Color;
use crate::coloring::{majority_at, majority_violations, Coloring, ViolationReport};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_MAX_RESAMPLES: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PncVerdict {
    Satisfied,
    /// `v ∈ N(u)` has no private neighbor with respect to `N[u]`.
    Failed { u: usize, v: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PncReport {
    pub verdict: PncVerdict,
    /// Minimum degree over vertices of degree at least two.
    pub delta_small: Option<usize>,
}

impl PncReport {
    pub fn is_satisfied(&self) -> bool {
        self.verdict == PncVerdict::Satisfied
    }
}

pub fn private_neighbor_check(g: &Graph) -> PncReport {
    let delta_small = g.degrees().filter(|&d| d >= 2).min();
    let mut in_closed = vec![false; g.n()];
    let mut verdict = PncVerdict::Satisfied;
    'outer: for u in (0..g.n()).filter(|&u| g.degree(u) >= 2) {
        in_closed[u] = true;
        for &v in g.neighbors(u) {
            in_closed[v] = true;
        }
        for &v in g.neighbors(u) {
            // N(w) ∩ N[u] = {v}; v ∈ N(w) already holds for w ∈ N(v)
            let private = g.neighbors(v).iter().any(|&w| {
                g.neighbors(w).iter().all(|&x| x == v || !in_closed[x])
            });
            if !private {
                verdict = PncVerdict::Failed { u, v };
                break 'outer;
            }
        }
        in_closed[u] = false;
        for &v in g.neighbors(u) {
            in_closed[v] = false;
        }
    }
    PncReport {
        verdict,
        delta_small,
    }
}

/// Rational bounds `lo < e < hi` from the first `terms + 1` series terms.
fn e_bounds(terms: u32) -> (BigRational, BigRational) {
    let mut sum = BigRational::zero();
    let mut factorial = BigInt::one();
    for i in 0..=terms {
        if i > 0 {
            factorial *= i;
        }
        sum += BigRational::new(BigInt::one(), factorial.clone());
    }
    // sum over i > N of 1/i! < 1/(N! N)
    let tail = BigRational::new(BigInt::one(), factorial * terms);
    let hi = sum.clone() + tail;
    (sum, hi)
}

/// The color budget `ceil(4 e^3 Δ^(4 / floor(δ/2)))`.
///
/// The ceiling is exact: with `h = floor(δ/2)` the candidate `K` is accepted
/// only once `(K-1)^h < 4^h e^(3h) Δ^4 <= K^h` is certified by rational bounds
/// on `e`. The bracket always resolves since the middle term is irrational.
pub fn lll_k(max_degree: usize, delta_small: usize) -> Result<u64> {
    if max_degree < 2 || delta_small < 2 {
        return Err(Error::Precondition(format!(
            "lll_k needs Δ >= 2 and δ >= 2, got Δ = {max_degree}, δ = {delta_small}"
        )));
    }
    let h = delta_small / 2;
    let estimate = 4.0 * 3f64.exp() * (max_degree as f64).powf(4.0 / h as f64);
    if !estimate.is_finite() || estimate > (1u64 << 62) as f64 {
        return Err(Error::ColorOverflow);
    }
    let mut k = (estimate.ceil() as u64).max(1);
    let delta4 = BigRational::from_integer(BigInt::from(max_degree).pow(4));
    let four_h = BigRational::from_integer(BigInt::from(4).pow(h as u32));
    let mut terms = 24;
    loop {
        let (e_lo, e_hi) = e_bounds(terms);
        let lo = &four_h * num_traits::pow(e_lo, 3 * h) * &delta4;
        let hi = &four_h * num_traits::pow(e_hi, 3 * h) * &delta4;
        let upper = BigRational::from_integer(BigInt::from(k).pow(h as u32));
        let lower = BigRational::from_integer(BigInt::from(k - 1).pow(h as u32));
        if upper < lo {
            k += 1;
        } else if lower >= hi {
            k -= 1;
        } else if lower < lo && hi <= upper {
            return Ok(k);
        } else {
            terms *= 2;
        }
    }
}

/// `ŝ(u) = s_c(u) mod k` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModSumProfile {
    pub k: u64,
    pub residues: Vec<u64>,
}

impl ModSumProfile {
    pub fn new<T: Color>(g: &Graph, c: &Coloring<T>, k: u64) -> Self {
        assert!(k >= 1, "modulus must be positive");
        let residues = (0..g.n())
            .map(|u| {
                g.neighbors(u)
                    .iter()
                    .fold(0u64, |acc, &v| ((acc as u128 + c[v].residue(k) as u128) % k as u128) as u64)
            })
            .collect();
        ModSumProfile { k, residues }
    }
}

/// Majority check on neighbor sums modulo `k`. A residue collision is implied
/// by a sum collision, so an empty report here means [`crate::verify`] is
/// empty too.
pub fn mod_verify<T: Color>(g: &Graph, c: &Coloring<T>, k: u64) -> ViolationReport<u64> {
    majority_violations(g, &ModSumProfile::new(g, c, k).residues)
}

fn draw(rng: &mut ChaCha8Rng, k: u64) -> u64 {
    rng.gen_range(1..=k)
}

/// Independent uniform colors in `1..=k`, reproducible from `seed`.
pub fn sample_coloring(g: &Graph, k: u64, seed: u64) -> Result<Coloring<u64>> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_with(g.n(), k, &mut rng))
}

fn sample_with(n: usize, k: u64, rng: &mut ChaCha8Rng) -> Coloring<u64> {
    Coloring::new((0..n).map(|_| draw(rng, k)).collect()).expect("draws are positive")
}

/// Vertices whose colors determine the event at `u`: `N(N(u))`, ascending.
pub fn event_variables(g: &Graph, u: usize) -> Vec<usize> {
    let vars: BTreeSet<usize> = g
        .neighbors(u)
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .collect();
    vars.into_iter().collect()
}

/// Redraws the variables of the event at `u`, returning them.
pub fn resample_event(g: &Graph, c: &mut Coloring<u64>, u: usize, k: u64, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let vars = event_variables(g, u);
    for &x in &vars {
        c.set(x, draw(rng, k));
    }
    vars
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LllOptions {
    pub seed: u64,
    pub max_resamples: u64,
    /// Overrides the computed color budget.
    pub k: Option<u64>,
}

impl Default for LllOptions {
    fn default() -> Self {
        LllOptions {
            seed: 0,
            max_resamples: DEFAULT_MAX_RESAMPLES,
            k: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LllOutcome {
    pub coloring: Coloring<u64>,
    pub k: u64,
    pub resamples: u64,
}

pub fn lll_color(g: &Graph, seed: u64, max_resamples: u64) -> Result<LllOutcome> {
    lll_color_with(
        g,
        &LllOptions {
            seed,
            max_resamples,
            k: None,
        },
    )
}

pub fn lll_color_with(g: &Graph, options: &LllOptions) -> Result<LllOutcome> {
    let pnc = private_neighbor_check(g);
    if let PncVerdict::Failed { u, v } = pnc.verdict {
        return Err(Error::PncViolated { u, v });
    }
    let Some(delta_small) = pnc.delta_small else {
        return Ok(LllOutcome {
            coloring: Coloring::ones(g.n()),
            k: options.k.unwrap_or(1),
            resamples: 0,
        });
    };
    let k = match options.k {
        Some(0) => return Err(Error::Precondition("k must be positive".into())),
        Some(k) => k,
        None => lll_k(g.max_degree(), delta_small)?,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut c = sample_with(g.n(), k, &mut rng);
    let mut profile = ModSumProfile::new(g, &c, k);
    let mut dirty: BTreeSet<usize> = (0..g.n()).filter(|&u| g.degree(u) >= 2).collect();
    let mut resamples = 0;
    while let Some(u) = dirty.pop_first() {
        if majority_at(g, &profile.residues, u).is_none() {
            continue;
        }
        if resamples == options.max_resamples {
            return Err(Error::ResampleBudgetExceeded(options.max_resamples));
        }
        resamples += 1;
        let vars = resample_event(g, &mut c, u, k, &mut rng);
        let touched: BTreeSet<usize> = vars
            .iter()
            .flat_map(|&x| g.neighbors(x).iter().copied())
            .collect();
        for y in touched {
            profile.residues[y] = g
                .neighbors(y)
                .iter()
                .fold(0u128, |acc, &x| (acc + c[x] as u128) % k as u128) as u64;
        }
        // events beyond distance 4 share no variable with this one
        dirty.extend(g.ball(u, 4).into_iter().filter(|&y| g.degree(y) >= 2));
    }
    Ok(LllOutcome {
        coloring: c,
        k,
        resamples,
    })
}
