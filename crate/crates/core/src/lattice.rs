//! Visibility predicates on lattice points, their mod-p relaxations, and
//! exact finite-box enumeration.
//!
//! Two distinct points are mutually visible when the open segment joining
//! them contains no lattice point; equivalently, the gcd of the coordinate
//! differences is 1 (the open segment contains exactly gcd - 1 lattice
//! points). Coordinates are machine integers up to 2^31 - 1 per the box
//! convention `[1, n]^s`; differences are taken in 128 bits so arbitrary
//! i64 points are safe too.

use crate::chromatic::checked_pow;
use crate::error::{Error, Result};
use crate::graph::Graph;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use std::fmt;

/// Largest box side accepted by samplers and enumerators.
pub const MAX_BOX_SIDE: u64 = (1 << 31) - 1;

/// A point of the integer lattice in `s >= 1` dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    coords: Vec<i64>,
}

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Result<LatticePoint> {
        if coords.is_empty() {
            return Err(Error::invalid("points need dimension s >= 1"));
        }
        Ok(LatticePoint { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// An ordered tuple of `k` points sharing one dimension. Repeated points
/// are allowed; they simply fail every edge constraint they sit on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeConfig {
    points: Vec<LatticePoint>,
}

impl LatticeConfig {
    pub fn new(points: Vec<LatticePoint>) -> Result<LatticeConfig> {
        let dim = points
            .first()
            .ok_or_else(|| Error::invalid("configuration needs at least one point"))?
            .dim();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { a: dim, b: p.dim() });
            }
        }
        Ok(LatticeConfig { points })
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }
}

/// Residue vector of a point mod p: one of the p^s "colours".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PColour(pub Vec<u64>);

/// gcd of absolute coordinate differences; zero iff the points coincide.
fn diff_gcd(a: &[i64], b: &[i64]) -> u128 {
    let mut g: u128 = 0;
    for (&x, &y) in a.iter().zip(b) {
        let d = (x as i128 - y as i128).unsigned_abs();
        g = g.gcd(&d);
    }
    g
}

/// Visibility on raw coordinate slices (no allocation); shared by the
/// public predicate and the Monte Carlo hot loop.
pub(crate) fn slice_visible(a: &[i64], b: &[i64]) -> bool {
    diff_gcd(a, b) == 1
}

/// Whether two points of equal dimension are mutually visible. A point is
/// not visible from itself: visibility is defined between distinct points.
pub fn visible(x: &LatticePoint, y: &LatticePoint) -> Result<bool> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            a: x.dim(),
            b: y.dim(),
        });
    }
    Ok(slice_visible(x.coords(), y.coords()))
}

/// All lattice points strictly between `x` and `y` on the segment joining
/// them: step `d/g` taken `g - 1` times, where `d` is the difference
/// vector and `g` its gcd.
pub fn segment_interior_points(x: &LatticePoint, y: &LatticePoint) -> Result<Vec<LatticePoint>> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            a: x.dim(),
            b: y.dim(),
        });
    }
    let g = diff_gcd(x.coords(), y.coords());
    if g == 0 {
        return Err(Error::EqualPoints);
    }
    let step: Vec<i64> = x
        .coords()
        .iter()
        .zip(y.coords())
        .map(|(&a, &b)| (((b as i128) - (a as i128)) / g as i128) as i64)
        .collect();
    let mut out = Vec::with_capacity((g - 1) as usize);
    let mut cur: Vec<i64> = x.coords().to_vec();
    for _ in 1..g {
        for (c, s) in cur.iter_mut().zip(&step) {
            *c += s;
        }
        out.push(LatticePoint { coords: cur.clone() });
    }
    Ok(out)
}

/// Whether every edge of `g` joins mutually visible points of `cfg`.
/// Vacuously true for the empty graph.
pub fn is_h_visible(cfg: &LatticeConfig, g: &Graph) -> Result<bool> {
    if cfg.k() != g.k() {
        return Err(Error::ConfigSizeMismatch {
            expected: g.k(),
            got: cfg.k(),
        });
    }
    for (u, v) in g.edges() {
        if !slice_visible(
            cfg.points[u as usize - 1].coords(),
            cfg.points[v as usize - 1].coords(),
        ) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Componentwise residues mod p.
pub fn p_colour(x: &LatticePoint, p: u64) -> PColour {
    debug_assert!(p >= 2);
    PColour(
        x.coords()
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect(),
    )
}

/// The mod-p relaxation of H-visibility: edge-adjacent points must have
/// distinct residue vectors mod p.
pub fn is_hp_visible(cfg: &LatticeConfig, g: &Graph, p: u64) -> Result<bool> {
    if p < 2 {
        return Err(Error::invalid(format!("p = {} is not a prime", p)));
    }
    if cfg.k() != g.k() {
        return Err(Error::ConfigSizeMismatch {
            expected: g.k(),
            got: cfg.k(),
        });
    }
    for (u, v) in g.edges() {
        let a = &cfg.points[u as usize - 1];
        let b = &cfg.points[v as usize - 1];
        let congruent = a
            .coords()
            .iter()
            .zip(b.coords())
            .all(|(&x, &y)| (x as i128 - y as i128) % p as i128 == 0);
        if congruent {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Counts k-tuples of residue vectors in `[0, p-1]^s` whose edge-adjacent
/// entries differ. Exhaustive over all `(p^s)^k` tuples; must equal the
/// chromatic polynomial of `g` evaluated at `p^s`.
pub fn count_hp_visible_residue_tuples(g: &Graph, p: u64, s: u32, budget: u64) -> Result<u64> {
    if p < 2 {
        return Err(Error::invalid(format!("p = {} is not a prime", p)));
    }
    if s == 0 {
        return Err(Error::invalid("dimension s must be >= 1"));
    }
    let k = g.k();
    let colours = checked_pow(p as u128, s);
    let total = colours.and_then(|c| checked_pow(c, k as u32));
    let total = total
        .filter(|&t| t <= budget as u128)
        .ok_or(Error::BudgetExceeded {
            needed: total.unwrap_or(u128::MAX),
            budget: budget as u128,
        })?;
    let _ = total;
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (u as usize - 1, v as usize - 1))
        .collect();
    // odometer over k * s residue digits, base p
    let dims = k * s as usize;
    let mut digits = vec![0u64; dims];
    let mut count = 0u64;
    let s = s as usize;
    'outer: loop {
        let ok = edges.iter().all(|&(u, v)| {
            let a = &digits[u * s..(u + 1) * s];
            let b = &digits[v * s..(v + 1) * s];
            a != b
        });
        if ok {
            count += 1;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                continue 'outer;
            }
            *d = 0;
        }
        break;
    }
    Ok(count)
}

/// Exact probability that a uniformly random configuration of `g.k()`
/// points in `[1, n]^s` (repetition allowed) is H-visible, as a reduced
/// fraction `count / n^(s k)`.
pub fn exact_probability(g: &Graph, n: u64, s: u32, budget: u64) -> Result<BigRational> {
    if n < 1 {
        return Err(Error::invalid("box side n must be >= 1"));
    }
    if n > MAX_BOX_SIDE {
        return Err(Error::invalid(format!(
            "box side {} exceeds the coordinate maximum {}",
            n, MAX_BOX_SIDE
        )));
    }
    if s == 0 {
        return Err(Error::invalid("dimension s must be >= 1"));
    }
    let k = g.k();
    let points_in_box = checked_pow(n as u128, s);
    let total = points_in_box.and_then(|c| checked_pow(c, k as u32));
    total
        .filter(|&t| t <= budget as u128)
        .ok_or(Error::BudgetExceeded {
            needed: total.unwrap_or(u128::MAX),
            budget: budget as u128,
        })?;
    let num_points = points_in_box.unwrap() as usize;

    // decode point index -> coordinates once
    let s_usize = s as usize;
    let mut coords: Vec<i64> = Vec::with_capacity(num_points * s_usize);
    for idx in 0..num_points {
        let mut rest = idx as u64;
        for _ in 0..s {
            coords.push((rest % n) as i64 + 1);
            rest /= n;
        }
    }
    let point = |i: usize| &coords[i * s_usize..(i + 1) * s_usize];

    // pairwise visibility cache when it fits comfortably
    let cache: Option<Vec<bool>> = if num_points <= 2048 {
        let mut m = vec![false; num_points * num_points];
        for i in 0..num_points {
            for j in (i + 1)..num_points {
                let vis = slice_visible(point(i), point(j));
                m[i * num_points + j] = vis;
                m[j * num_points + i] = vis;
            }
        }
        Some(m)
    } else {
        None
    };

    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (u as usize - 1, v as usize - 1))
        .collect();
    let mut assignment = vec![0usize; k];
    let mut count: u64 = 0;
    'outer: loop {
        let ok = edges.iter().all(|&(u, v)| {
            let (i, j) = (assignment[u], assignment[v]);
            match &cache {
                Some(m) => m[i * num_points + j],
                None => i != j && slice_visible(point(i), point(j)),
            }
        });
        if ok {
            count += 1;
        }
        for a in assignment.iter_mut() {
            *a += 1;
            if *a < num_points {
                continue 'outer;
            }
            *a = 0;
        }
        break;
    }
    let denom = BigInt::from(n).pow(s * k as u32);
    Ok(BigRational::new(BigInt::from(count), denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[i64]) -> LatticePoint {
        LatticePoint::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn visibility_examples() {
        assert!(visible(&pt(&[1, 1]), &pt(&[2, 3])).unwrap());
        assert!(!visible(&pt(&[1, 1]), &pt(&[3, 5])).unwrap());
        assert!(!visible(&pt(&[2, 2]), &pt(&[2, 2])).unwrap());
        assert!(matches!(
            visible(&pt(&[1, 1]), &pt(&[1, 1, 1])),
            Err(Error::DimensionMismatch { a: 2, b: 3 })
        ));
    }

    #[test]
    fn segment_examples() {
        assert_eq!(
            segment_interior_points(&pt(&[1, 1]), &pt(&[3, 5])).unwrap(),
            vec![pt(&[2, 3])]
        );
        assert!(segment_interior_points(&pt(&[1, 1]), &pt(&[2, 3]))
            .unwrap()
            .is_empty());
        assert_eq!(
            segment_interior_points(&pt(&[1, 1]), &pt(&[4, 1])).unwrap(),
            vec![pt(&[2, 1]), pt(&[3, 1])]
        );
        assert!(matches!(
            segment_interior_points(&pt(&[2, 2]), &pt(&[2, 2])),
            Err(Error::EqualPoints)
        ));
    }

    #[test]
    fn visible_iff_segment_empty_small_box() {
        for ax in 1..=6i64 {
            for ay in 1..=6i64 {
                for bx in 1..=6i64 {
                    for by in 1..=6i64 {
                        let (a, b) = (pt(&[ax, ay]), pt(&[bx, by]));
                        if a == b {
                            continue;
                        }
                        let vis = visible(&a, &b).unwrap();
                        let seg = segment_interior_points(&a, &b).unwrap();
                        assert_eq!(vis, seg.is_empty(), "{} {}", a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn h_visibility_examples() {
        let cfg = LatticeConfig::new(vec![pt(&[1, 1]), pt(&[2, 3]), pt(&[3, 5])]).unwrap();
        let path3 = Graph::family("path:3").unwrap();
        let cycle3 = Graph::family("cycle:3").unwrap();
        let empty3 = Graph::family("empty:3").unwrap();
        assert!(is_h_visible(&cfg, &path3).unwrap());
        assert!(!is_h_visible(&cfg, &cycle3).unwrap()); // edge {1,3}: gcd(2,4)=2
        assert!(is_h_visible(&cfg, &empty3).unwrap());
        assert!(matches!(
            is_h_visible(&cfg, &Graph::family("path:2").unwrap()),
            Err(Error::ConfigSizeMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn p_colour_examples() {
        assert_eq!(p_colour(&pt(&[5, 7]), 3), PColour(vec![2, 1]));
        assert_eq!(p_colour(&pt(&[3, 3]), 3), PColour(vec![0, 0]));
        assert_eq!(p_colour(&pt(&[1, 2]), 5), PColour(vec![1, 2]));
        // negative coordinates reduce into [0, p-1] too
        assert_eq!(p_colour(&pt(&[-1, -3]), 3), PColour(vec![2, 0]));
    }

    #[test]
    fn hp_visibility_examples() {
        let cfg = LatticeConfig::new(vec![pt(&[1, 1]), pt(&[3, 5])]).unwrap();
        let p2 = Graph::family("path:2").unwrap();
        assert!(!is_hp_visible(&cfg, &p2, 2).unwrap()); // (1,1) == (1,1) mod 2
        assert!(is_hp_visible(&cfg, &p2, 3).unwrap()); // (1,1) vs (0,2) mod 3
        assert!(is_hp_visible(&cfg, &p2, 7).unwrap()); // p beyond every difference
    }

    #[test]
    fn residue_tuple_counts() {
        let budget = 1_000_000;
        let p2 = Graph::family("path:2").unwrap();
        assert_eq!(count_hp_visible_residue_tuples(&p2, 2, 1, budget).unwrap(), 2);
        let c3 = Graph::family("cycle:3").unwrap();
        assert_eq!(count_hp_visible_residue_tuples(&c3, 2, 2, budget).unwrap(), 24);
        let e2 = Graph::family("empty:2").unwrap();
        assert_eq!(count_hp_visible_residue_tuples(&e2, 3, 1, budget).unwrap(), 9);
        assert!(matches!(
            count_hp_visible_residue_tuples(&c3, 101, 2, budget),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn exact_probability_examples() {
        let p2 = Graph::family("path:2").unwrap();
        let pr = exact_probability(&p2, 2, 2, 1_000_000).unwrap();
        assert_eq!(pr, BigRational::new(BigInt::from(3), BigInt::from(4)));

        let e3 = Graph::family("empty:3").unwrap();
        assert_eq!(
            exact_probability(&e3, 2, 2, 1_000_000).unwrap(),
            BigRational::from_integer(BigInt::from(1))
        );

        // a single point is not visible from itself
        assert_eq!(
            exact_probability(&p2, 1, 2, 1_000_000).unwrap(),
            BigRational::from_integer(BigInt::from(0))
        );
    }

    /// Global visibility is the conjunction of the mod-p relaxations over
    /// all primes up to the largest coordinate difference. Exhaustive for
    /// k = 3 points in [1,4]^2, where the relevant primes are 2 and 3.
    #[test]
    fn local_global_equivalence_exhaustive() {
        let graphs = [
            Graph::family("path:3").unwrap(),
            Graph::family("cycle:3").unwrap(),
            Graph::family("empty:3").unwrap(),
        ];
        let box_points: Vec<LatticePoint> = (0..16)
            .map(|i| pt(&[i % 4 + 1, i / 4 + 1]))
            .collect();
        for g in &graphs {
            for idx in 0..16usize.pow(3) {
                let cfg = LatticeConfig::new(vec![
                    box_points[idx % 16].clone(),
                    box_points[idx / 16 % 16].clone(),
                    box_points[idx / 256].clone(),
                ])
                .unwrap();
                let global = is_h_visible(&cfg, g).unwrap();
                let local = is_hp_visible(&cfg, g, 2).unwrap() && is_hp_visible(&cfg, g, 3).unwrap();
                assert_eq!(global, local, "{} at config {}", g, idx);
            }
        }
    }

    #[test]
    fn translation_invariance() {
        let pairs = [([1i64, 1], [2i64, 3]), ([1, 1], [3, 5]), ([2, 9], [7, 4])];
        for (a, b) in pairs {
            for t in [[1i64, -5], [100, 100], [-7, 3]] {
                let ta = [a[0] + t[0], a[1] + t[1]];
                let tb = [b[0] + t[0], b[1] + t[1]];
                assert_eq!(
                    visible(&pt(&a), &pt(&b)).unwrap(),
                    visible(&pt(&ta), &pt(&tb)).unwrap()
                );
            }
        }
    }
}
