//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (run with `--nocapture` to see them). Expected values are
//! constructed independently of the library code they check.

use czeta_core::chromatic::{chromatic_polynomial, count_colorings, eval_at_prime_power};
use czeta_core::graph::Graph;
use czeta_core::lattice::{count_hp_visible_residue_tuples, exact_probability};
use czeta_core::mc::wilson::wilson_standard_error;
use czeta_core::poly::IntPolynomial;
use czeta_core::{
    cycle_limit_closed_form, estimate_probability, estimate_probability_with_confidence,
    rearick_ratio, riemann_zeta_inverse, zeta_h_inverse,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const TAIL: f64 = 1e-10;

fn binomial(n: usize, r: usize) -> i128 {
    let mut row = vec![0i128; r + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=r).rev() {
            row[j] += row[j - 1];
        }
    }
    row[r]
}

fn poly_from_i128(coeffs: Vec<i128>) -> IntPolynomial {
    IntPolynomial::from_coeffs(coeffs.into_iter().map(BigInt::from).collect())
}

/// `x (x-1)^(k-1)` expanded with binomial coefficients.
fn expected_path(k: usize) -> IntPolynomial {
    let mut coeffs = vec![0i128; k + 1];
    for i in 0..k {
        let sign = if (k - 1 - i).is_multiple_of(2) { 1 } else { -1 };
        coeffs[i + 1] = sign * binomial(k - 1, i);
    }
    poly_from_i128(coeffs)
}

/// `(x-1)^k + (-1)^k (x-1)` expanded with binomial coefficients.
fn expected_cycle(k: usize) -> IntPolynomial {
    let mut coeffs = vec![0i128; k + 1];
    for (j, c) in coeffs.iter_mut().enumerate() {
        let sign = if (k - j).is_multiple_of(2) { 1 } else { -1 };
        *c = sign * binomial(k, j);
    }
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    coeffs[1] += sign;
    coeffs[0] -= sign;
    poly_from_i128(coeffs)
}

/// `x(x-1)...(x-m+1)` by direct convolution.
fn expected_complete(m: usize) -> IntPolynomial {
    let mut coeffs = vec![1i128];
    for i in 0..m as i128 {
        // multiply by (x - i)
        let mut next = vec![0i128; coeffs.len() + 1];
        for (d, &c) in coeffs.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * i;
        }
        coeffs = next;
    }
    poly_from_i128(coeffs)
}

fn random_graph(rng: &mut ChaCha8Rng, k: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 2..=k as u16 {
        for u in 1..v {
            if rng.next_u64().is_multiple_of(2) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(k, edges).unwrap()
}

#[test]
fn c01_closed_form_chromatic_identities() {
    for k in 1..=10 {
        let g = Graph::family(&format!("path:{}", k)).unwrap();
        assert_eq!(chromatic_polynomial(&g).unwrap(), expected_path(k), "path:{}", k);
    }
    for k in 3..=10 {
        let g = Graph::family(&format!("cycle:{}", k)).unwrap();
        assert_eq!(chromatic_polynomial(&g).unwrap(), expected_cycle(k), "cycle:{}", k);
    }
    for m in 1..=8 {
        let g = Graph::family(&format!("complete:{}", m)).unwrap();
        assert_eq!(
            chromatic_polynomial(&g).unwrap(),
            expected_complete(m),
            "complete:{}",
            m
        );
    }
    println!("ACCEPTANCE c01 closed-form chromatic identities (exact): PASS");
}

#[test]
fn c02_coloring_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..200 {
        let k = 1 + (rng.next_u64() % 6) as usize;
        let g = random_graph(&mut rng, k);
        let p = chromatic_polynomial(&g).unwrap();
        for q in 0..=5u64 {
            let brute = count_colorings(&g, q, 100_000_000).unwrap();
            assert_eq!(
                p.eval_i64(q as i64),
                BigInt::from(brute),
                "graph #{} = {} at q = {}",
                i,
                g,
                q
            );
        }
    }
    println!("ACCEPTANCE c02 coloring-oracle equivalence (200 random graphs, exact): PASS");
}

#[test]
fn c03_residue_count_identity() {
    let graphs = ["path:2", "path:3", "cycle:3", "cycle:4", "complete:4"];
    let ps = [(2u64, 1u32), (3, 1), (5, 1), (2, 2), (3, 2)];
    for spec in graphs {
        let g = Graph::family(spec).unwrap();
        let poly = chromatic_polynomial(&g).unwrap();
        for (p, s) in ps {
            let count = count_hp_visible_residue_tuples(&g, p, s, 100_000_000).unwrap();
            let expect = eval_at_prime_power(&poly, p, s).unwrap();
            assert_eq!(BigInt::from(count), expect, "{} at (p, s) = ({}, {})", spec, p, s);
        }
    }
    println!("ACCEPTANCE c03 residue-count identity (exact, 5 graphs x 5 prime powers): PASS");
}

#[test]
fn c04_cycle_closed_form_cross_check() {
    for k in [3usize, 4, 5] {
        for s in [2.0, 3.0] {
            let g = Graph::family(&format!("cycle:{}", k)).unwrap();
            let engine = zeta_h_inverse(&g, s, TAIL).unwrap();
            let closed = cycle_limit_closed_form(k, s, TAIL).unwrap();
            assert!(
                engine.overlaps(&closed),
                "k = {}, s = {}: intervals disjoint: {:?} vs {:?}",
                k,
                s,
                engine,
                closed
            );
            let gap = (engine.midpoint() - closed.midpoint()).abs();
            assert!(gap <= 1e-9, "k = {}, s = {}: midpoint gap {:.3e}", k, s, gap);
        }
    }
    println!("ACCEPTANCE c04 cycle closed-form vs general product (midpoints within 1e-9): PASS");
}

#[test]
fn c05_parity_phenomenon() {
    let z = riemann_zeta_inverse(2.0, TAIL).unwrap();
    let c3 = zeta_h_inverse(&Graph::family("cycle:3").unwrap(), 2.0, TAIL).unwrap();
    let c4 = zeta_h_inverse(&Graph::family("cycle:4").unwrap(), 2.0, TAIL).unwrap();
    assert!(
        c3.upper < z.powi(3).lower,
        "odd cycle: {} vs {}",
        c3.upper,
        z.powi(3).lower
    );
    assert!(
        c4.lower > z.powi(4).upper,
        "even cycle: {} vs {}",
        c4.lower,
        z.powi(4).upper
    );
    println!("ACCEPTANCE c05 parity phenomenon (strict beyond interval widths): PASS");
}

#[test]
fn c06_rearick_consistency() {
    for m in 1..=3usize {
        let r = rearick_ratio(m as u64, 2, TAIL).unwrap();
        let num = zeta_h_inverse(
            &Graph::family(&format!("complete:{}", m + 1)).unwrap(),
            2.0,
            TAIL,
        )
        .unwrap();
        let den =
            zeta_h_inverse(&Graph::family(&format!("complete:{}", m)).unwrap(), 2.0, TAIL)
                .unwrap();
        let ratio = num.div(&den).unwrap();
        let gap = (r.value - ratio.value).abs();
        let allowance = r.width() + ratio.width();
        assert!(
            gap <= allowance,
            "m = {}: gap {:.3e} exceeds combined widths {:.3e}",
            m,
            gap,
            allowance
        );
    }
    assert!(rearick_ratio(4, 2, TAIL).unwrap().exact_zero);
    assert!(zeta_h_inverse(&Graph::family("complete:5").unwrap(), 2.0, TAIL)
        .unwrap()
        .exact_zero);
    println!("ACCEPTANCE c06 rearick consistency (m = 1..3 within widths; m = 4 exact zero): PASS");
}

#[test]
fn c07_known_constant() {
    let cp = zeta_h_inverse(&Graph::family("path:2").unwrap(), 2.0, TAIL).unwrap();
    let truth = 6.0 / (PI * PI);
    let gap = (cp.value - truth).abs();
    assert!(
        gap <= cp.width() + 1e-12,
        "gap {:.3e} vs width {:.3e}",
        gap,
        cp.width()
    );
    println!("ACCEPTANCE c07 known constant 6/pi^2 (within interval width + 1e-12): PASS");
}

#[test]
fn c08_exact_enumeration_vs_monte_carlo() {
    let g = Graph::family("path:2").unwrap();
    let exact = exact_probability(&g, 2, 2, 100_000_000).unwrap();
    assert_eq!(exact, BigRational::new(BigInt::from(3), BigInt::from(4)));
    let est = estimate_probability_with_confidence(&g, 2, 2, 1_000_000, 1, 1, 0.99).unwrap();
    assert!(
        est.ci_low <= 0.75 && 0.75 <= est.ci_high,
        "99% CI [{}, {}] misses 3/4",
        est.ci_low,
        est.ci_high
    );
    println!("ACCEPTANCE c08 exact enumeration 3/4 inside 99% Monte Carlo CI: PASS");
}

#[test]
fn c09_desk_scale_limit_verification() {
    let g = Graph::family("cycle:3").unwrap();
    let limit = zeta_h_inverse(&g, 2.0, TAIL).unwrap();
    let est = estimate_probability(&g, 1_000_000, 2, 1_000_000, 1, 1).unwrap();
    let se = wilson_standard_error(est.successes, est.trials);
    let gap = (est.point - limit.value).abs();
    assert!(
        gap <= 4.0 * se,
        "estimate {} vs limit {}: {:.2} standard errors",
        est.point,
        limit.value,
        gap / se
    );
    println!(
        "ACCEPTANCE c09 desk-scale limit verification ({:.2} Wilson SE from limit): PASS",
        gap / se
    );
}

#[test]
fn c10_worker_determinism() {
    let g = Graph::family("cycle:3").unwrap();
    let w1 = estimate_probability(&g, 1_000_000, 2, 1_000_000, 1, 1).unwrap();
    let w4 = estimate_probability(&g, 1_000_000, 2, 1_000_000, 1, 4).unwrap();
    assert_eq!(w1.successes, w4.successes);
    println!("ACCEPTANCE c10 determinism across workers (identical success counts): PASS");
}
