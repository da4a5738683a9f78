//! Cross-module property tests: the exact engines, the counting oracles,
//! and the analytic products must all tell the same story.

use czeta_core::chromatic::{chromatic_polynomial, count_colorings};
use czeta_core::graph::Graph;
use czeta_core::lattice::{segment_interior_points, visible, LatticePoint};
use czeta_core::poly::IntPolynomial;
use czeta_core::{riemann_zeta_inverse, zeta_h_inverse};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Labeled graph on `k` vertices from an edge bitmask over the pairs
/// (1,2), (1,3), (2,3), (1,4), ... in column order.
fn graph_from_mask(k: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for v in 2..=k as u16 {
        for u in 1..v {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(k, edges).unwrap()
}

fn pairs(k: usize) -> u32 {
    (k * (k - 1) / 2) as u32
}

fn random_graph(rng: &mut ChaCha8Rng, k: usize) -> Graph {
    graph_from_mask(k, rng.next_u64() & ((1u64 << pairs(k)) - 1))
}

/// Chromatic invariants every produced polynomial must satisfy.
fn assert_chromatic_shape(g: &Graph, p: &IntPolynomial) {
    let k = g.k();
    assert_eq!(p.degree(), k, "degree for {}", g);
    assert!(p.is_monic(), "monic for {}", g);
    assert!(p.coeff(0).is_zero(), "P(0) = 0 for {}", g);
    for i in 0..=k {
        let c = p.coeff(i);
        // sign alternation: (-1)^(k-i) c_i >= 0
        if (k - i).is_multiple_of(2) {
            assert!(c >= BigInt::zero(), "sign at {} for {}", i, g);
        } else {
            assert!(c <= BigInt::zero(), "sign at {} for {}", i, g);
        }
    }
    assert_eq!(
        p.coeff(k - 1),
        -BigInt::from(g.edge_count()),
        "x^(k-1) coefficient for {}",
        g
    );
    let p1_zero = p.eval_i64(1).is_zero();
    assert_eq!(p1_zero, g.edge_count() > 0, "P(1) for {}", g);
}

#[test]
fn deletion_contraction_identity() {
    // exhaustive over every labeled graph on <= 4 vertices, every edge
    for k in 2..=4 {
        for mask in 0..(1u64 << pairs(k)) {
            let g = graph_from_mask(k, mask);
            let p = chromatic_polynomial(&g).unwrap();
            for (u, v) in g.edges() {
                let del = chromatic_polynomial(&g.delete_edge(u, v).unwrap()).unwrap();
                let con = chromatic_polynomial(&g.contract_edge(u, v).unwrap()).unwrap();
                assert_eq!(p, &del - &con, "graph {} edge {{{},{}}}", g, u, v);
            }
        }
    }
    // random graphs on 5 and 6 vertices
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..30 {
        for k in [5, 6] {
            let g = random_graph(&mut rng, k);
            let p = chromatic_polynomial(&g).unwrap();
            for (u, v) in g.edges() {
                let del = chromatic_polynomial(&g.delete_edge(u, v).unwrap()).unwrap();
                let con = chromatic_polynomial(&g.contract_edge(u, v).unwrap()).unwrap();
                assert_eq!(p, &del - &con, "graph {} edge {{{},{}}}", g, u, v);
            }
        }
    }
}

#[test]
fn polynomial_matches_brute_force_everywhere_small() {
    for k in 1..=4 {
        for mask in 0..(1u64 << pairs(k)) {
            let g = graph_from_mask(k, mask);
            let p = chromatic_polynomial(&g).unwrap();
            assert_chromatic_shape(&g, &p);
            for q in 0..=5u64 {
                assert_eq!(
                    p.eval_i64(q as i64),
                    BigInt::from(count_colorings(&g, q, 1_000_000).unwrap()),
                    "{} at q = {}",
                    g,
                    q
                );
            }
        }
    }
}

#[test]
fn multiplicative_over_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..40 {
        let k = 2 + (rng.next_u64() % 6) as usize;
        let g = random_graph(&mut rng, k);
        let p = chromatic_polynomial(&g).unwrap();
        let mut prod = IntPolynomial::one();
        let comps = g.connected_components();
        let mut vertices = 0;
        let mut edges = 0;
        for c in &comps {
            prod = &prod * &chromatic_polynomial(&c.graph).unwrap();
            vertices += c.graph.k();
            edges += c.graph.edge_count();
        }
        assert_eq!(p, prod, "{}", g);
        assert_eq!(vertices, g.k());
        assert_eq!(edges, g.edge_count());
    }
}

#[test]
fn path_product_is_riemann_power() {
    for s in [2.0, 3.0] {
        let z = riemann_zeta_inverse(s, 1e-11).unwrap();
        for k in 2..=5 {
            let g = Graph::family(&format!("path:{}", k)).unwrap();
            let via_graph = zeta_h_inverse(&g, s, 1e-11).unwrap();
            let via_power = z.powi(k as u32 - 1);
            assert!(
                via_graph.overlaps(&via_power),
                "path:{} at s = {}: {:?} vs {:?}",
                k,
                s,
                via_graph,
                via_power
            );
        }
    }
}

/// Independent geometric oracle for visibility: scan the whole bounding
/// box for a lattice point strictly between the endpoints (collinearity by
/// pairwise cross products, no gcd anywhere).
fn blocked_by_box_scan(a: &[i64], b: &[i64]) -> bool {
    let lo: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x.min(y)).collect();
    let hi: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect();
    let dim = a.len();
    let mut q = lo.clone();
    loop {
        let strictly_inside = q != a && q != b;
        if strictly_inside {
            let qa: Vec<i64> = q.iter().zip(a).map(|(&x, &y)| x - y).collect();
            let ba: Vec<i64> = b.iter().zip(a).map(|(&x, &y)| x - y).collect();
            let mut collinear = true;
            for i in 0..dim {
                for j in (i + 1)..dim {
                    if qa[i] * ba[j] != qa[j] * ba[i] {
                        collinear = false;
                    }
                }
            }
            // within the closed bounding box and collinear means strictly
            // between the distinct endpoints
            if collinear {
                return true;
            }
        }
        let mut carry = true;
        for i in 0..dim {
            if carry {
                q[i] += 1;
                if q[i] > hi[i] {
                    q[i] = lo[i];
                } else {
                    carry = false;
                }
            }
        }
        if carry {
            return false;
        }
    }
}

#[test]
fn visibility_matches_geometric_oracle() {
    // exhaustive in [1,6]^2
    for ax in 1..=6i64 {
        for ay in 1..=6i64 {
            for bx in 1..=6i64 {
                for by in 1..=6i64 {
                    if (ax, ay) == (bx, by) {
                        continue;
                    }
                    let a = LatticePoint::new(vec![ax, ay]).unwrap();
                    let b = LatticePoint::new(vec![bx, by]).unwrap();
                    let vis = visible(&a, &b).unwrap();
                    assert_eq!(
                        vis,
                        !blocked_by_box_scan(a.coords(), b.coords()),
                        "{} {}",
                        a,
                        b
                    );
                    assert_eq!(
                        vis,
                        segment_interior_points(&a, &b).unwrap().is_empty(),
                        "{} {}",
                        a,
                        b
                    );
                }
            }
        }
    }
    // seeded spot checks in dimension 3
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let coords = |rng: &mut ChaCha8Rng| {
            (0..3)
                .map(|_| (rng.next_u64() % 5) as i64 + 1)
                .collect::<Vec<_>>()
        };
        let (a, b) = (coords(&mut rng), coords(&mut rng));
        if a == b {
            continue;
        }
        let pa = LatticePoint::new(a.clone()).unwrap();
        let pb = LatticePoint::new(b.clone()).unwrap();
        assert_eq!(
            visible(&pa, &pb).unwrap(),
            !blocked_by_box_scan(&a, &b),
            "{:?} {:?}",
            a,
            b
        );
    }
}

proptest! {
    #[test]
    fn parse_render_round_trip(k in 1usize..=7, mask in any::<u64>()) {
        let g = graph_from_mask(k, mask & ((1u64 << pairs(k)) - 1));
        prop_assert_eq!(Graph::parse(&g.render()).unwrap(), g);
    }

    #[test]
    fn complete_family_edge_count(k in 1usize..=12) {
        let g = Graph::family_with_limit(&format!("complete:{}", k), 12).unwrap();
        prop_assert_eq!(g.edge_count(), k * (k - 1) / 2);
    }

    #[test]
    fn component_partition_conserves(k in 1usize..=7, mask in any::<u64>()) {
        let g = graph_from_mask(k, mask & ((1u64 << pairs(k)) - 1));
        let comps = g.connected_components();
        let vs: usize = comps.iter().map(|c| c.graph.k()).sum();
        let es: usize = comps.iter().map(|c| c.graph.edge_count()).sum();
        prop_assert_eq!(vs, g.k());
        prop_assert_eq!(es, g.edge_count());
        // label maps partition 1..=k
        let mut all: Vec<u16> = comps.iter().flat_map(|c| c.original_labels.clone()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, (1..=k as u16).collect::<Vec<_>>());
    }

    #[test]
    fn visibility_symmetry_and_translation(
        a in prop::collection::vec(-50i64..50, 2..=4),
        delta in prop::collection::vec(-50i64..50, 2..=4),
        t in prop::collection::vec(-1000i64..1000, 2..=4),
    ) {
        let dim = a.len().min(delta.len()).min(t.len());
        let a = &a[..dim];
        let b: Vec<i64> = a.iter().zip(&delta[..dim]).map(|(&x, &d)| x + d).collect();
        let pa = LatticePoint::new(a.to_vec()).unwrap();
        let pb = LatticePoint::new(b.clone()).unwrap();
        prop_assert_eq!(visible(&pa, &pb).unwrap(), visible(&pb, &pa).unwrap());
        let ta: Vec<i64> = a.iter().zip(&t[..dim]).map(|(&x, &s)| x + s).collect();
        let tb: Vec<i64> = b.iter().zip(&t[..dim]).map(|(&x, &s)| x + s).collect();
        prop_assert_eq!(
            visible(&pa, &pb).unwrap(),
            visible(
                &LatticePoint::new(ta).unwrap(),
                &LatticePoint::new(tb).unwrap()
            )
            .unwrap()
        );
    }

    #[test]
    fn chromatic_shape_invariants_random(k in 1usize..=6, mask in any::<u64>()) {
        let g = graph_from_mask(k, mask & ((1u64 << pairs(k)) - 1));
        let p = chromatic_polynomial(&g).unwrap();
        assert_chromatic_shape(&g, &p);
        // spot value: P(k) counts colorings with k colors
        let brute = count_colorings(&g, k as u64, 1_000_000).unwrap();
        prop_assert_eq!(p.eval_i64(k as i64), BigInt::from(brute));
    }
}
