//! Embedded invariant suite behind the CLI's `selftest` command: quick
//! cross-checks of the main identities, each cheap enough to run on every
//! invocation.

use crate::chromatic::{chromatic_polynomial, count_colorings, eval_at_prime_power};
use crate::euler::{
    cycle_limit_closed_form, rearick_ratio, riemann_zeta_inverse, zeta_h_inverse,
};
use crate::graph::Graph;
use crate::lattice::{
    count_hp_visible_residue_tuples, exact_probability, is_h_visible, is_hp_visible,
    segment_interior_points, visible, LatticeConfig, LatticePoint,
};
use crate::mc::estimate_probability;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::f64::consts::PI;

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<String, String>) -> Check {
    match run() {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
        },
    }
}

/// Runs every embedded check; all should pass on a healthy build.
pub fn run_selftest() -> Vec<Check> {
    let t = 1e-10;
    vec![
        check("chromatic closed forms", || {
            for k in 3..=8 {
                let c = chromatic_polynomial(&Graph::family(&format!("cycle:{}", k)).unwrap())
                    .map_err(|e| e.to_string())?;
                if c != crate::chromatic::cycle_polynomial(k) {
                    return Err(format!("cycle:{} mismatch", k));
                }
                let p = chromatic_polynomial(&Graph::family(&format!("path:{}", k)).unwrap())
                    .map_err(|e| e.to_string())?;
                if p != crate::chromatic::tree_polynomial(k) {
                    return Err(format!("path:{} mismatch", k));
                }
            }
            Ok("cycles and paths, k = 3..8".into())
        }),
        check("coloring oracle equivalence", || {
            for spec in ["path:3", "cycle:4", "complete:4", "star:4"] {
                let g = Graph::family(spec).unwrap();
                let p = chromatic_polynomial(&g).map_err(|e| e.to_string())?;
                for q in 0..=4u64 {
                    let brute = count_colorings(&g, q, 1_000_000).map_err(|e| e.to_string())?;
                    if p.eval_i64(q as i64) != BigInt::from(brute) {
                        return Err(format!("{} at q = {}", spec, q));
                    }
                }
            }
            Ok("4 graphs x q = 0..4".into())
        }),
        check("residue count identity", || {
            for (spec, p, s) in [("path:2", 2, 1), ("cycle:3", 2, 2), ("complete:4", 3, 1)] {
                let g = Graph::family(spec).unwrap();
                let count = count_hp_visible_residue_tuples(&g, p, s, 100_000_000)
                    .map_err(|e| e.to_string())?;
                let poly = chromatic_polynomial(&g).map_err(|e| e.to_string())?;
                let expect = eval_at_prime_power(&poly, p, s).map_err(|e| e.to_string())?;
                if BigInt::from(count) != expect {
                    return Err(format!("{} at (p, s) = ({}, {})", spec, p, s));
                }
            }
            Ok("3 graph/prime/dimension triples".into())
        }),
        check("riemann zeta inverse vs 6/pi^2", || {
            let cp = riemann_zeta_inverse(2.0, t).map_err(|e| e.to_string())?;
            let truth = 6.0 / (PI * PI);
            if !cp.contains(truth) {
                return Err(format!("interval misses: {} vs {}", cp.value, truth));
            }
            Ok(format!("value {:.12}", cp.value))
        }),
        check("cycle closed form agrees with engine", || {
            for k in 3..=4 {
                let engine = zeta_h_inverse(&Graph::family(&format!("cycle:{}", k)).unwrap(), 2.0, t)
                    .map_err(|e| e.to_string())?;
                let closed = cycle_limit_closed_form(k, 2.0, t).map_err(|e| e.to_string())?;
                if !engine.overlaps(&closed) {
                    return Err(format!("k = {} intervals disjoint", k));
                }
            }
            Ok("k = 3, 4 at s = 2".into())
        }),
        check("parity of cycle limits", || {
            let z = riemann_zeta_inverse(2.0, t).map_err(|e| e.to_string())?;
            let c3 = zeta_h_inverse(&Graph::family("cycle:3").unwrap(), 2.0, t)
                .map_err(|e| e.to_string())?;
            let c4 = zeta_h_inverse(&Graph::family("cycle:4").unwrap(), 2.0, t)
                .map_err(|e| e.to_string())?;
            if c3.upper >= z.powi(3).lower {
                return Err("odd cycle not below zeta^-3".into());
            }
            if c4.lower <= z.powi(4).upper {
                return Err("even cycle not above zeta^-4".into());
            }
            Ok("strict on both sides".into())
        }),
        check("vanishing products", || {
            let r = rearick_ratio(4, 2, t).map_err(|e| e.to_string())?;
            let k5 = zeta_h_inverse(&Graph::family("complete:5").unwrap(), 2.0, t)
                .map_err(|e| e.to_string())?;
            if !r.exact_zero || !k5.exact_zero {
                return Err("expected exact zeros at m >= 2^s".into());
            }
            Ok("rearick(4, 2) and K_5 at s = 2".into())
        }),
        check("exact enumeration fraction", || {
            let g = Graph::family("path:2").unwrap();
            let pr = exact_probability(&g, 2, 2, 1_000_000).map_err(|e| e.to_string())?;
            if pr != BigRational::new(BigInt::from(3), BigInt::from(4)) {
                return Err(format!("got {}", pr));
            }
            Ok("path:2 in [1,2]^2 = 3/4".into())
        }),
        check("monte carlo determinism across workers", || {
            let g = Graph::family("cycle:3").unwrap();
            let a = estimate_probability(&g, 1000, 2, 10_000, 1, 1).map_err(|e| e.to_string())?;
            let b = estimate_probability(&g, 1000, 2, 10_000, 1, 4).map_err(|e| e.to_string())?;
            if a.successes != b.successes {
                return Err(format!("{} vs {}", a.successes, b.successes));
            }
            Ok(format!("{} successes either way", a.successes))
        }),
        check("monte carlo tracks exact probability", || {
            let g = Graph::family("path:2").unwrap();
            let exact = exact_probability(&g, 2, 2, 1_000_000)
                .map_err(|e| e.to_string())?
                .to_f64()
                .unwrap();
            let est =
                estimate_probability(&g, 2, 2, 50_000, 1, 2).map_err(|e| e.to_string())?;
            if !(est.ci_low <= exact && exact <= est.ci_high) {
                return Err(format!("CI [{}, {}] misses {}", est.ci_low, est.ci_high, exact));
            }
            Ok(format!("point {:.4} vs exact {}", est.point, exact))
        }),
        check("visibility matches segment oracle", || {
            for ax in 1..=4i64 {
                for ay in 1..=4i64 {
                    for bx in 1..=4i64 {
                        for by in 1..=4i64 {
                            let a = LatticePoint::new(vec![ax, ay]).unwrap();
                            let b = LatticePoint::new(vec![bx, by]).unwrap();
                            if a == b {
                                continue;
                            }
                            let vis = visible(&a, &b).map_err(|e| e.to_string())?;
                            let seg =
                                segment_interior_points(&a, &b).map_err(|e| e.to_string())?;
                            if vis != seg.is_empty() {
                                return Err(format!("disagree at {} {}", a, b));
                            }
                        }
                    }
                }
            }
            Ok("exhaustive over [1,4]^2".into())
        }),
        check("local-global visibility", || {
            let g = Graph::family("path:3").unwrap();
            for idx in 0..(16u32.pow(3)) {
                let mut rest = idx;
                let mut pts = Vec::new();
                for _ in 0..3 {
                    let p = rest % 16;
                    rest /= 16;
                    pts.push(
                        LatticePoint::new(vec![(p % 4) as i64 + 1, (p / 4) as i64 + 1]).unwrap(),
                    );
                }
                let cfg = LatticeConfig::new(pts).unwrap();
                let global = is_h_visible(&cfg, &g).map_err(|e| e.to_string())?;
                let local = is_hp_visible(&cfg, &g, 2).map_err(|e| e.to_string())?
                    && is_hp_visible(&cfg, &g, 3).map_err(|e| e.to_string())?;
                if global != local {
                    return Err(format!("config {} disagrees", idx));
                }
            }
            Ok("exhaustive n = 4, s = 2, k = 3".into())
        }),
    ]
}
