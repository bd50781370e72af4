//! Not-all-equal 3-SAT to majority additive 2-coloring.

use std::fmt::{self, Write as _};

use serde::Serialize;

use super::{ProvenanceMap, Role};
use crate::coloring::{verify, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A variable (0-indexed) or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// From a DIMACS literal: `3` is variable 2, `-3` its negation.
    pub fn from_dimacs(lit: i64) -> Option<Self> {
        (lit != 0).then(|| Literal {
            var: lit.unsigned_abs() as usize - 1,
            negated: lit < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn complement(self) -> Self {
        Literal {
            negated: !self.negated,
            ..self
        }
    }

    pub fn value(self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A conjunction of 3-literal clauses under not-all-equal semantics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaeFormula {
    n_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl NaeFormula {
    /// Rejects out-of-range variables and clauses repeating a literal.
    pub fn new(n_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (idx, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var >= n_vars) {
                return Err(Error::Precondition(format!(
                    "clause {idx}: literal {l} uses a variable beyond {n_vars}"
                )));
            }
            if clause[0] == clause[1] || clause[0] == clause[2] || clause[1] == clause[2] {
                return Err(Error::Precondition(format!("clause {idx} repeats a literal")));
            }
        }
        Ok(NaeFormula { n_vars, clauses })
    }

    /// Builds from DIMACS-style signed literals.
    pub fn from_dimacs_clauses(n_vars: usize, clauses: &[[i64; 3]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                let lits = c.map(Literal::from_dimacs);
                match lits {
                    [Some(a), Some(b), Some(c)] => Ok([a, b, c]),
                    _ => Err(Error::Precondition("literal 0 is not allowed".into())),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        NaeFormula::new(n_vars, clauses)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// `d_ℓ`: the number of clauses containing `lit`.
    pub fn occurrences(&self, lit: Literal) -> usize {
        self.clauses.iter().filter(|c| c.contains(&lit)).count()
    }

    /// Every clause has a true and a false literal.
    pub fn is_nae_satisfied(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.n_vars, "assignment length");
        self.clauses.iter().all(|c| {
            let trues = c.iter().filter(|l| l.value(assignment)).count();
            trues == 1 || trues == 2
        })
    }

    /// Parses DIMACS CNF (`c` comments, `p cnf vars clauses`, 0-terminated
    /// clauses that may span lines). Every clause must have three literals.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
                continue;
            }
            if trimmed.starts_with('p') {
                let fields: Vec<&str> = trimmed.split_whitespace().collect();
                let parsed = match fields.as_slice() {
                    ["p", "cnf", vars, count] => vars.parse().ok().zip(count.parse().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or_else(|| {
                    Error::parse(line, "malformed header, expected `p cnf vars clauses`")
                })?);
                continue;
            }
            let Some((n_vars, _)) = header else {
                return Err(Error::parse(line, "clause before the `p cnf` header"));
            };
            for token in trimmed.split_whitespace() {
                let lit: i64 = token
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad literal {token:?}")))?;
                match Literal::from_dimacs(lit) {
                    None => {
                        let clause: [Literal; 3] = current.as_slice().try_into().map_err(|_| {
                            Error::parse(line, format!("clause has {} literals, need 3", current.len()))
                        })?;
                        clauses.push(clause);
                        current.clear();
                    }
                    Some(l) if l.var >= n_vars => {
                        return Err(Error::parse(line, format!("variable {} exceeds {n_vars}", l.var + 1)));
                    }
                    Some(l) => current.push(l),
                }
            }
        }
        let (n_vars, declared) = header.ok_or_else(|| Error::parse(0, "missing `p cnf` header"))?;
        if !current.is_empty() {
            return Err(Error::parse(0, "last clause is not terminated by 0"));
        }
        if declared != clauses.len() {
            return Err(Error::parse(
                0,
                format!("header declares {declared} clauses, found {}", clauses.len()),
            ));
        }
        NaeFormula::new(n_vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::from("c NAE-3SAT: every clause needs a true and a false literal\n");
        writeln!(out, "p cnf {} {}", self.n_vars, self.clauses.len()).unwrap();
        for [a, b, c] in &self.clauses {
            writeln!(out, "{a} {b} {c} 0").unwrap();
        }
        out
    }
}

fn literals(var: usize) -> [Literal; 2] {
    [Literal::pos(var), Literal::neg(var)]
}

/// The 2-coloring gadget graph of `formula`.
///
/// Per variable `x`: the path `v_x a_x b_x a_x̄ v_x̄`, and for each literal `ℓ`
/// of `x` and `i` in `1..=d_ℓ+3` a pendant path `v_ℓ β_i^ℓ α_i^ℓ`. Per clause
/// `C`: the path `v_C β_C α_C`, plus a vertex `v_ℓ^C` adjacent to `v_ℓ` and
/// `v_C` for each literal of `C`. The graph has `17 n + 12 m` vertices.
pub fn nae_to_mac2(formula: &NaeFormula) -> (Graph, ProvenanceMap) {
    let mut map = ProvenanceMap::new();
    let mut edges = Vec::new();
    for var in 0..formula.n_vars {
        let [x, nx] = literals(var);
        let path = [
            map.push(Role::LiteralVertex { literal: x }),
            map.push(Role::PathA { literal: x }),
            map.push(Role::PathB { var }),
            map.push(Role::PathA { literal: nx }),
            map.push(Role::LiteralVertex { literal: nx }),
        ];
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
        for (lit, hub) in [(x, path[0]), (nx, path[4])] {
            for i in 1..=formula.occurrences(lit) + 3 {
                let alpha = map.push(Role::Alpha { literal: lit, i });
                let beta = map.push(Role::Beta { literal: lit, i });
                edges.push((alpha, beta));
                edges.push((beta, hub));
            }
        }
    }
    for clause in 0..formula.clauses.len() {
        let v = map.push(Role::ClauseVertex { clause });
        let beta = map.push(Role::ClauseBeta { clause });
        let alpha = map.push(Role::ClauseAlpha { clause });
        edges.push((v, beta));
        edges.push((beta, alpha));
    }
    for (clause, lits) in formula.clauses.iter().enumerate() {
        let v_clause = map.vertex(&Role::ClauseVertex { clause }).unwrap();
        for &literal in lits {
            let occ = map.push(Role::Occurrence { literal, clause });
            let v_lit = map.vertex(&Role::LiteralVertex { literal }).unwrap();
            edges.push((v_lit, occ));
            edges.push((v_clause, occ));
        }
    }
    let g = Graph::new(map.len(), edges).expect("gadget edges are in range");
    (g, map)
}

/// The witness coloring of an assignment, without checking that the
/// assignment NAE-satisfies the formula.
pub fn lift_assignment(formula: &NaeFormula, assignment: &[bool], map: &ProvenanceMap) -> Coloring<u64> {
    assert_eq!(assignment.len(), formula.n_vars, "assignment length");
    let values = map
        .roles()
        .iter()
        .map(|role| match *role {
            Role::LiteralVertex { literal } => {
                if literal.value(assignment) {
                    1
                } else {
                    2
                }
            }
            Role::Alpha { i, .. } => {
                if i == 1 {
                    1
                } else {
                    2
                }
            }
            Role::ClauseAlpha { clause } => {
                let trues = formula.clauses[clause]
                    .iter()
                    .filter(|l| l.value(assignment))
                    .count();
                if trues == 2 {
                    2
                } else {
                    1
                }
            }
            // v_C and every degree-2 vertex
            _ => 1,
        })
        .collect();
    Coloring::new(values).expect("colors are 1 or 2")
}

/// The majority additive 2-coloring built from an NAE-satisfying assignment.
pub fn assignment_to_coloring(
    formula: &NaeFormula,
    assignment: &[bool],
    map: &ProvenanceMap,
) -> Result<Coloring<u64>> {
    if assignment.len() != formula.n_vars || !formula.is_nae_satisfied(assignment) {
        return Err(Error::Precondition("assignment does not NAE-satisfy the formula".into()));
    }
    Ok(lift_assignment(formula, assignment, map))
}

/// Reads an assignment off a valid 2-coloring of the gadget: `x` is true iff
/// `c(v_x) = 1`.
pub fn coloring_to_assignment(
    formula: &NaeFormula,
    g: &Graph,
    map: &ProvenanceMap,
    c: &Coloring<u64>,
) -> Result<Vec<bool>> {
    c.check_domain(g)?;
    if c.values().iter().any(|&x| x > 2) {
        return Err(Error::Precondition("expected colors in {1, 2}".into()));
    }
    if !verify(g, c).is_valid() {
        return Err(Error::Precondition("coloring is not majority additive".into()));
    }
    Ok((0..formula.n_vars)
        .map(|var| {
            let v = map
                .vertex(&Role::LiteralVertex {
                    literal: Literal::pos(var),
                })
                .expect("map belongs to this formula");
            c[v] == 1
        })
        .collect())
}

pub const NAE_BRUTE_MAX_VARS: usize = 23;

/// Exhaustive NAE-3SAT search. `Ok(None)` means unsatisfiable.
pub fn nae_brute(formula: &NaeFormula) -> Result<Option<Vec<bool>>> {
    let n = formula.n_vars;
    if n > NAE_BRUTE_MAX_VARS {
        return Err(Error::TooLarge(format!("2^{n} assignments")));
    }
    let mut assignment = vec![false; n];
    for mask in 0u64..1 << n {
        for (var, slot) in assignment.iter_mut().enumerate() {
            *slot = mask >> var & 1 == 1;
        }
        if formula.is_nae_satisfied(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}
