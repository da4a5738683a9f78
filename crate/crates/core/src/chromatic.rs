//! Exact chromatic polynomials and brute-force coloring oracles.
//!
//! The main algorithm is deletion–contraction with three shortcuts:
//! connected-component factorization, closed forms for trees and complete
//! graphs, and an edge-set-keyed memo scoped to one top-level call.
//! Contraction runs on adjacency bitmasks, so parallel edges collapse as
//! soon as they appear.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::IntPolynomial;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;

/// Default number of deletion–contraction expansions allowed per call.
pub const DEFAULT_DC_NODE_BUDGET: u64 = 10_000_000;

/// Default cap on brute-force enumeration sizes (`q^k` assignments,
/// `(p^s)^k` residue tuples, `n^(s*k)` lattice configurations).
pub const DEFAULT_ENUM_BUDGET: u64 = 100_000_000;

/// Chromatic polynomial of the empty graph on `k` vertices: `x^k`.
pub fn empty_polynomial(k: usize) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); k + 1];
    coeffs[k] = BigInt::from(1);
    IntPolynomial::from_coeffs(coeffs)
}

/// Chromatic polynomial of any tree on `k` vertices: `x(x-1)^(k-1)`.
pub fn tree_polynomial(k: usize) -> IntPolynomial {
    &IntPolynomial::x() * &IntPolynomial::x_minus(1).pow(k - 1)
}

/// Falling factorial `x(x-1)...(x-m+1)`, the chromatic polynomial of the
/// complete graph on `m` vertices.
pub fn complete_polynomial(m: usize) -> IntPolynomial {
    let mut p = IntPolynomial::one();
    for i in 0..m as i64 {
        p = p.mul_linear(i);
    }
    p
}

/// Chromatic polynomial of the `k`-cycle: `(x-1)^k + (-1)^k (x-1)`.
pub fn cycle_polynomial(k: usize) -> IntPolynomial {
    assert!(k >= 3, "cycle needs k >= 3");
    let xm1 = IntPolynomial::x_minus(1);
    let lead = xm1.pow(k);
    if k.is_multiple_of(2) {
        &lead + &xm1
    } else {
        &lead - &xm1
    }
}

/// Computes the chromatic polynomial of `g` exactly, with the default work
/// budget. Evaluating the result at any non-negative integer `q` gives the
/// number of proper q-colorings of `g`.
pub fn chromatic_polynomial(g: &Graph) -> Result<IntPolynomial> {
    chromatic_polynomial_with_budget(g, DEFAULT_DC_NODE_BUDGET)
}

/// As [`chromatic_polynomial`], but with an explicit bound on the number of
/// deletion–contraction expansions.
pub fn chromatic_polynomial_with_budget(g: &Graph, budget: u64) -> Result<IntPolynomial> {
    let mut ctx = DcContext {
        memo: HashMap::new(),
        nodes_left: budget,
        budget,
    };
    let sg = SmallGraph::from_graph(g);
    ctx.chromatic(&sg)
}

/// Counts proper colorings of `g` with `q` colors by exhaustive enumeration
/// of all `q^k` assignments. This is the independent oracle for the
/// polynomial engine; it stays deliberately naive.
pub fn count_colorings(g: &Graph, q: u64, budget: u64) -> Result<u64> {
    let k = g.k();
    let total = checked_pow(q as u128, k as u32)
        .filter(|&t| t <= budget as u128)
        .ok_or_else(|| Error::BudgetExceeded {
            needed: checked_pow(q as u128, k as u32).unwrap_or(u128::MAX),
            budget: budget as u128,
        })?;
    if total == 0 {
        return Ok(0); // q = 0: no assignments at all
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (u as usize - 1, v as usize - 1))
        .collect();
    let mut assignment = vec![0u64; k];
    let mut count = 0u64;
    'outer: loop {
        if edges
            .iter()
            .all(|&(u, v)| assignment[u] != assignment[v])
        {
            count += 1;
        }
        // odometer increment, least-significant vertex first
        for digit in assignment.iter_mut() {
            *digit += 1;
            if *digit < q {
                continue 'outer;
            }
            *digit = 0;
        }
        break;
    }
    Ok(count)
}

/// Exact evaluation `P(p^s)` on big integers.
pub fn eval_at_prime_power(p_poly: &IntPolynomial, p: u64, s: u32) -> Result<BigInt> {
    if p < 2 {
        return Err(Error::invalid(format!("p = {} is not a prime", p)));
    }
    if s == 0 {
        return Err(Error::invalid("exponent s must be >= 1"));
    }
    let x = BigInt::from(p).pow(s);
    Ok(p_poly.eval_big(&x))
}

pub(crate) fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Adjacency-bitmask graph used inside the recursion. Vertices are
/// 0-based and capped at 32 by `Graph`'s construction invariant.
#[derive(Clone, PartialEq, Eq, Hash)]
struct SmallGraph {
    adj: Vec<u32>,
}

impl SmallGraph {
    fn from_graph(g: &Graph) -> SmallGraph {
        let mut adj = vec![0u32; g.k()];
        for (u, v) in g.edges() {
            let (u, v) = (u as usize - 1, v as usize - 1);
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        SmallGraph { adj }
    }

    fn k(&self) -> usize {
        self.adj.len()
    }

    fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Vertex sets of connected components, as bitmasks.
    fn component_masks(&self) -> Vec<u32> {
        let mut seen: u32 = 0;
        let mut out = Vec::new();
        for start in 0..self.k() {
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut mask: u32 = 1 << start;
            loop {
                let mut grown = mask;
                let mut m = mask;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    grown |= self.adj[v];
                }
                if grown == mask {
                    break;
                }
                mask = grown;
            }
            seen |= mask;
            out.push(mask);
        }
        out
    }

    /// Induced subgraph on the vertices of `mask`, relabeled compactly.
    fn induced(&self, mask: u32) -> SmallGraph {
        let verts: Vec<usize> = (0..self.k()).filter(|&v| mask & (1 << v) != 0).collect();
        let mut adj = vec![0u32; verts.len()];
        for (new_u, &u) in verts.iter().enumerate() {
            let mut m = self.adj[u] & mask;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                let new_v = verts.iter().position(|&w| w == v).unwrap();
                adj[new_u] |= 1 << new_v;
            }
        }
        SmallGraph { adj }
    }

    fn delete(&self, u: usize, v: usize) -> SmallGraph {
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        g
    }

    /// Contract `{u, v}` by merging `v` into `u`; bitmask union collapses
    /// parallel edges, and the self-bit is cleared.
    fn contract(&self, u: usize, v: usize) -> SmallGraph {
        let merged = (self.adj[u] | self.adj[v]) & !(1 << u) & !(1 << v);
        let mut rows: Vec<u32> = Vec::with_capacity(self.k() - 1);
        for w in 0..self.k() {
            if w == v {
                continue;
            }
            let row = if w == u {
                merged
            } else {
                let mut r = self.adj[w];
                if r & (1 << v) != 0 {
                    r = (r & !(1 << v)) | (1 << u);
                    r &= !(1 << w); // guard, cannot actually self-loop here
                }
                r
            };
            rows.push(row);
        }
        // drop bit position v from every row
        let low = (1u32 << v) - 1;
        for r in rows.iter_mut() {
            let high = *r >> (v + 1);
            *r = (*r & low) | (high << v);
        }
        SmallGraph { adj: rows }
    }

    /// An edge incident to a maximum-degree vertex, on its highest-degree
    /// neighbor. Keeps the contracted side dense so the complete-graph base
    /// case fires early.
    fn pick_edge(&self) -> (usize, usize) {
        let u = (0..self.k())
            .max_by_key(|&v| self.adj[v].count_ones())
            .unwrap();
        let mut best = None;
        let mut m = self.adj[u];
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let d = self.adj[v].count_ones();
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((v, d));
            }
        }
        (u, best.unwrap().0)
    }
}

struct DcContext {
    memo: HashMap<Vec<u32>, IntPolynomial>,
    nodes_left: u64,
    budget: u64,
}

impl DcContext {
    fn chromatic(&mut self, g: &SmallGraph) -> Result<IntPolynomial> {
        if self.nodes_left == 0 {
            return Err(Error::BudgetExceeded {
                needed: self.budget as u128 + 1,
                budget: self.budget as u128,
            });
        }
        self.nodes_left -= 1;

        let comps = g.component_masks();
        if comps.len() > 1 {
            let mut acc = IntPolynomial::one();
            for mask in comps {
                acc = &acc * &self.connected(&g.induced(mask))?;
            }
            return Ok(acc);
        }
        self.connected(g)
    }

    fn connected(&mut self, g: &SmallGraph) -> Result<IntPolynomial> {
        let k = g.k();
        if k == 1 {
            return Ok(IntPolynomial::x());
        }
        let m = g.edge_count();
        if m == k - 1 {
            return Ok(tree_polynomial(k));
        }
        if m == k * (k - 1) / 2 {
            return Ok(complete_polynomial(k));
        }
        if let Some(p) = self.memo.get(&g.adj) {
            return Ok(p.clone());
        }
        let (u, v) = g.pick_edge();
        let deleted = self.chromatic(&g.delete(u, v))?;
        let contracted = self.chromatic(&g.contract(u, v))?;
        let p = &deleted - &contracted;
        self.memo.insert(g.adj.clone(), p.clone());
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(g: &str) -> IntPolynomial {
        chromatic_polynomial(&Graph::family(g).unwrap()).unwrap()
    }

    #[test]
    fn triangle_and_path() {
        assert_eq!(poly("cycle:3"), IntPolynomial::from_i64(&[0, 2, -3, 1]));
        assert_eq!(poly("path:3"), IntPolynomial::from_i64(&[0, 1, -2, 1]));
        assert_eq!(poly("empty:3"), IntPolynomial::from_i64(&[0, 0, 0, 1]));
    }

    #[test]
    fn complete_four_is_falling_factorial() {
        // x(x-1)(x-2)(x-3) = x^4 - 6x^3 + 11x^2 - 6x
        assert_eq!(poly("complete:4"), IntPolynomial::from_i64(&[0, -6, 11, -6, 1]));
    }

    #[test]
    fn cycle_four_expanded() {
        assert_eq!(poly("cycle:4"), IntPolynomial::from_i64(&[0, -3, 6, -4, 1]));
        assert_eq!(poly("cycle:4"), cycle_polynomial(4));
    }

    #[test]
    fn star_is_a_tree() {
        assert_eq!(poly("star:5"), tree_polynomial(5));
    }

    #[test]
    fn brute_force_counts() {
        let c3 = Graph::family("cycle:3").unwrap();
        assert_eq!(count_colorings(&c3, 3, 1000).unwrap(), 6);
        let p2 = Graph::family("path:2").unwrap();
        assert_eq!(count_colorings(&p2, 2, 1000).unwrap(), 2);
        assert_eq!(count_colorings(&c3, 1, 1000).unwrap(), 0);
        assert_eq!(count_colorings(&c3, 0, 1000).unwrap(), 0);
    }

    #[test]
    fn brute_force_budget() {
        let g = Graph::family("path:4").unwrap();
        assert!(matches!(
            count_colorings(&g, 100, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn dc_budget_exhausts() {
        let g = Graph::parse("6\n1 2\n2 3\n3 4\n4 5\n5 6\n1 6\n1 4\n2 5").unwrap();
        assert!(matches!(
            chromatic_polynomial_with_budget(&g, 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn prime_power_evaluation() {
        let c3 = poly("cycle:3");
        assert_eq!(eval_at_prime_power(&c3, 2, 2).unwrap(), BigInt::from(24));
        let k5 = poly("complete:5");
        assert_eq!(eval_at_prime_power(&k5, 2, 2).unwrap(), BigInt::zero());
        let p2 = poly("path:2");
        assert_eq!(eval_at_prime_power(&p2, 3, 1).unwrap(), BigInt::from(6));
        assert!(eval_at_prime_power(&p2, 1, 1).is_err());
        assert!(eval_at_prime_power(&p2, 2, 0).is_err());
    }

    #[test]
    fn disconnected_multiplies() {
        // path:2 plus an isolated vertex: x^2(x-1) ... times x for vertex 3
        let g = Graph::parse("3\n1 2").unwrap();
        let p = chromatic_polynomial(&g).unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[0, 0, -1, 1]));
    }

    #[test]
    fn closed_forms_match_engine_on_larger_cases() {
        for k in 3..=9 {
            assert_eq!(poly(&format!("cycle:{}", k)), cycle_polynomial(k));
            assert_eq!(poly(&format!("path:{}", k)), tree_polynomial(k));
        }
        for m in 1..=7 {
            assert_eq!(poly(&format!("complete:{}", m)), complete_polynomial(m));
        }
    }
}
