//! Riemann zeta and prime zeta for real arguments `> 1`, with explicit
//! error ledgers.
//!
//! `zeta_em` uses Euler–Maclaurin summation: for real `x > 1` the remainder
//! after truncating the Bernoulli series is bounded in magnitude by the
//! first omitted term (the terms decrease throughout the range we use).
//! `prime_zeta` inverts `ln zeta` over squarefree indices:
//! `P(t) = sum_r mu(r)/r * ln zeta(r t)`, truncated once `ln zeta(rt)`
//! drops below the noise floor.
//!
//! Both functions return `(value, error_bound)` where the bound covers
//! truncation and a conservative float-rounding allowance. Callers fold
//! these bounds into the certified-product ledger.

/// Neumaier compensated accumulator.
#[derive(Default, Clone, Copy)]
pub struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `B_{2j}` as exact numerator/denominator pairs, j = 1..=15.
const BERNOULLI_2J: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

const EPS: f64 = f64::EPSILON;

/// Euler–Maclaurin evaluation of `zeta(x)` for real `x > 1`.
///
/// Returns `(value, error_bound)`; the bound is conservative (first
/// omitted Bernoulli term times four plus a rounding allowance).
pub fn zeta_em(x: f64) -> (f64, f64) {
    assert!(x > 1.0, "zeta_em requires x > 1");
    if x > 600.0 {
        // 2^-x <= 2^-600: everything past 3^-x is far below one ulp of 1
        let v = 1.0 + 2f64.powf(-x) + 3f64.powf(-x);
        return (v, 4.0 * 4f64.powf(-x) + 4.0 * EPS);
    }
    const N: usize = 24;
    let nf = N as f64;
    let mut acc = Accumulator::default();
    let mut abs_sum = 0.0;
    for m in 1..N {
        let term = (m as f64).powf(-x);
        acc.add(term);
        abs_sum += term;
    }
    let tail_int = nf.powf(1.0 - x) / (x - 1.0);
    acc.add(tail_int);
    abs_sum += tail_int;
    let half = 0.5 * nf.powf(-x);
    acc.add(half);
    abs_sum += half;

    // Bernoulli corrections: term_j = B_{2j}/(2j)! * x(x+1)...(x+2j-2) * N^(-x-2j+1)
    let mut poch = x;
    let mut npow = nf.powf(-x - 1.0);
    let mut fact = 2.0;
    let mut trunc = 0.0;
    for (idx, &(num, den)) in BERNOULLI_2J.iter().enumerate() {
        let term = num / den / fact * poch * npow;
        if term.abs() < EPS * acc.value().abs() || idx == BERNOULLI_2J.len() - 1 {
            // stop without adding; the remainder is bounded by this term
            trunc = term.abs();
            break;
        }
        acc.add(term);
        abs_sum += term.abs();
        let j = (idx + 1) as f64;
        poch *= (x + 2.0 * j - 1.0) * (x + 2.0 * j);
        npow /= nf * nf;
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    let value = acc.value();
    let err = 4.0 * trunc + 8.0 * EPS * abs_sum;
    (value, err)
}

fn moebius(n: u64) -> i64 {
    let mut n = n;
    let mut mu = 1i64;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Prime zeta `P(t) = sum over primes p of p^-t`, for real `t > 1`.
///
/// Returns `(value, error_bound)`.
pub fn prime_zeta(t: f64) -> (f64, f64) {
    assert!(t > 1.0, "prime_zeta requires t > 1");
    if t > 1100.0 {
        // below the f64 subnormal range entirely
        return (0.0, 1e-300);
    }
    let mut acc = Accumulator::default();
    let mut err = 0.0;
    let mut r = 1u64;
    loop {
        let rt = r as f64 * t;
        // ln zeta(rt) <= zeta(rt) - 1 <= 3 * 2^-rt once rt >= 3, so the
        // series beyond r is bounded by 2 * (3 * 2^-rt) for t > 1.
        let scale_bound = 3.0 * 2f64.powf(-rt);
        if rt > 60.0 && scale_bound < 1e-19 {
            err += 2.0 * scale_bound;
            break;
        }
        if r > 128 {
            err += 2.0 * scale_bound;
            break;
        }
        let mu = moebius(r);
        if mu != 0 {
            let (z, ze) = zeta_em(rt);
            let term = mu as f64 / r as f64 * z.ln();
            acc.add(term);
            // |d ln z| = |dz| / z <= |dz| since z > 1
            err += ze / r as f64 + 2.0 * EPS * term.abs();
        }
        r += 1;
    }
    (acc.value(), err + 4.0 * EPS)
}
