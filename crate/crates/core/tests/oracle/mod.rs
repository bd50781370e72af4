//! Definition-level reference implementations used to cross-check the
//! library. Everything here works on a plain adjacency matrix and `u128`
//! colors and shares no code with the crate.

#![allow(dead_code)]

use mac_core::{Color, Coloring, Graph};

pub type Matrix = Vec<Vec<bool>>;

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

pub fn edges_of_mask(pairs: &[(usize, usize)], mask: u64) -> Vec<(usize, usize)> {
    pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

pub fn matrix(n: usize, edges: &[(usize, usize)]) -> Matrix {
    let mut m = vec![vec![false; n]; n];
    for &(u, v) in edges {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

pub fn matrix_of(g: &Graph) -> Matrix {
    matrix(g.n(), &g.edges().collect::<Vec<_>>())
}

pub fn nbrs(m: &Matrix, u: usize) -> Vec<usize> {
    (0..m.len()).filter(|&v| m[u][v]).collect()
}

pub fn degree(m: &Matrix, u: usize) -> usize {
    m[u].iter().filter(|&&b| b).count()
}

pub fn max_degree(m: &Matrix) -> usize {
    (0..m.len()).map(|u| degree(m, u)).max().unwrap_or(0)
}

pub fn min_degree(m: &Matrix) -> usize {
    (0..m.len()).map(|u| degree(m, u)).min().unwrap_or(0)
}

pub fn colors<T: Color>(c: &Coloring<T>) -> Vec<u128> {
    c.values().iter().map(|x| x.to_u128().expect("fits u128")).collect()
}

pub fn sums(m: &Matrix, c: &[u128]) -> Vec<u128> {
    (0..m.len())
        .map(|v| (0..m.len()).filter(|&w| m[v][w]).map(|w| c[w]).sum())
        .collect()
}

/// `(u, s, neighbors of u with sum s)` for every vertex of degree at least
/// two where more than half of the neighbors have sum `s`.
pub fn violations(m: &Matrix, c: &[u128]) -> Vec<(usize, u128, Vec<usize>)> {
    let s = sums(m, c);
    let mut out = Vec::new();
    for u in 0..m.len() {
        let nu = nbrs(m, u);
        let d = nu.len();
        if d < 2 {
            continue;
        }
        for &v in &nu {
            let same: Vec<usize> = nu.iter().copied().filter(|&w| s[w] == s[v]).collect();
            if 2 * same.len() > d {
                out.push((u, s[v], same));
                break;
            }
        }
    }
    out
}

pub fn is_valid(m: &Matrix, c: &[u128]) -> bool {
    violations(m, c).is_empty()
}

/// Exhaustive search over all `(u, R)` with `R` a subset of `N(u)`.
pub fn is_good_brute(m: &Matrix) -> bool {
    for u in 0..m.len() {
        let nu = nbrs(m, u);
        let d = nu.len();
        if d < 2 {
            continue;
        }
        for mask in 1u32..(1 << d) {
            let r: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).map(|i| nu[i]).collect();
            if 2 * r.len() <= d {
                continue;
            }
            if r.iter().all(|&a| r.iter().all(|&b| m[a] == m[b])) {
                return false;
            }
        }
    }
    true
}

/// Same predicate by counting twins, for graphs too large for subsets.
pub fn is_good_twins(m: &Matrix) -> bool {
    (0..m.len()).all(|u| {
        let nu = nbrs(m, u);
        let d = nu.len();
        d < 2 || nu.iter().all(|&v| 2 * nu.iter().filter(|&&w| m[w] == m[v]).count() <= d)
    })
}

/// Greedy by exhaustive scan: from powers of two, give each vertex in turn
/// the least color keeping the coloring valid.
pub fn greedy_scan(m: &Matrix, order: &[usize]) -> Vec<u128> {
    let mut c: Vec<u128> = (0..m.len()).map(|i| 1u128 << i).collect();
    for &u in order {
        let mut x = 1;
        loop {
            c[u] = x;
            if is_valid(m, &c) {
                break;
            }
            x += 1;
        }
    }
    c
}

pub fn is_proper(m: &Matrix, c: &[u128]) -> bool {
    (0..m.len()).all(|u| (0..m.len()).all(|v| !m[u][v] || c[u] != c[v]))
}

/// A proper coloring with colors in `1..=k`, by enumeration.
pub fn proper_coloring(m: &Matrix, k: u128) -> Option<Vec<u128>> {
    let n = m.len();
    let mut c = vec![1u128; n];
    loop {
        if is_proper(m, &c) {
            return Some(c);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            if c[i] < k {
                c[i] += 1;
                break;
            }
            c[i] = 1;
            i += 1;
        }
    }
}

/// Least `k` admitting a valid coloring, by enumerating `k^n` colorings.
pub fn chi_enum(m: &Matrix, k_max: u128) -> Option<u128> {
    let n = m.len();
    (1..=k_max).find(|&k| {
        let mut c = vec![1u128; n];
        loop {
            if is_valid(m, &c) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                if c[i] < k {
                    c[i] += 1;
                    break;
                }
                c[i] = 1;
                i += 1;
            }
        }
    })
}

pub fn nae_satisfied(clauses: &[[i64; 3]], a: &[bool]) -> bool {
    clauses.iter().all(|cl| {
        let vals: Vec<bool> = cl
            .iter()
            .map(|&l| a[l.unsigned_abs() as usize - 1] == (l > 0))
            .collect();
        vals.contains(&true) && vals.contains(&false)
    })
}

pub fn nae_solve(n: usize, clauses: &[[i64; 3]]) -> Option<Vec<bool>> {
    (0u32..1 << n)
        .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<bool>>())
        .find(|a| nae_satisfied(clauses, a))
}

/// Calls `f` on every permutation of `0..n`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn automorphisms(m: &Matrix) -> usize {
    let n = m.len();
    let mut count = 0;
    for_each_permutation(n, |p| {
        if (0..n).all(|u| (0..n).all(|v| m[u][v] == m[p[u]][p[v]])) {
            count += 1;
        }
    });
    count
}

pub fn isomorphic(a: &Matrix, b: &Matrix) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|u| degree(a, u)).collect();
    let mut db: Vec<usize> = (0..n).map(|u| degree(b, u)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut found = false;
    for_each_permutation(n, |p| {
        if !found && (0..n).all(|u| (0..n).all(|v| a[u][v] == b[p[u]][p[v]])) {
            found = true;
        }
    });
    found
}
