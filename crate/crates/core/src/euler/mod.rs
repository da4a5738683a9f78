//! Certified numerical evaluation of chromatic zeta functions and the
//! related closed-form Euler products.
//!
//! Every operation returns a [`CertifiedProduct`]: a point value together
//! with a rigorous enclosure `[lower, upper]` of the infinite product. The
//! enclosure combines a bound on the truncated log-tail (`tail_epsilon`)
//! with a conservative float-rounding ledger.

mod engine;
pub mod primes;
pub(crate) mod zeta;

pub use engine::euler_factor;
pub use primes::{primes_up_to, DEFAULT_PRIME_CAP};

use crate::chromatic::{chromatic_polynomial_with_budget, DEFAULT_DC_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::IntPolynomial;
use engine::{certified_product, Exponent};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use zeta::Accumulator;

const EPS: f64 = f64::EPSILON;

/// A truncated Euler product with a rigorous enclosure.
///
/// Invariants: `lower <= value <= upper`; when `exact_zero` is set all
/// three are zero (a factor vanished symbolically); otherwise
/// `upper/lower <= exp(2 * tail_epsilon)` up to float-rounding slack.
#[derive(Debug, Clone, Serialize)]
pub struct CertifiedProduct {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    /// Largest prime whose factor entered the partial product (or the
    /// prime whose factor vanished, when `exact_zero`).
    pub truncation_prime: u64,
    /// Bound on the log-space uncertainty from truncation.
    pub tail_epsilon: f64,
    /// Set when an integer factor is exactly zero; never inferred from
    /// float comparisons.
    pub exact_zero: bool,
}

impl CertifiedProduct {
    pub(crate) fn exact_zero_at(p: u64) -> Self {
        CertifiedProduct {
            value: 0.0,
            lower: 0.0,
            upper: 0.0,
            truncation_prime: p,
            tail_epsilon: 0.0,
            exact_zero: true,
        }
    }

    pub(crate) fn exact_one() -> Self {
        CertifiedProduct {
            value: 1.0,
            lower: 1.0,
            upper: 1.0,
            truncation_prime: 2,
            tail_epsilon: 0.0,
            exact_zero: false,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn overlaps(&self, other: &CertifiedProduct) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    /// Interval k-th power (all quantities non-negative).
    pub fn powi(&self, k: u32) -> CertifiedProduct {
        if self.exact_zero {
            return self.clone();
        }
        let slack = 4.0 * k as f64 * EPS;
        CertifiedProduct {
            value: self.value.powi(k as i32),
            lower: self.lower.powi(k as i32) * (1.0 - slack),
            upper: self.upper.powi(k as i32) * (1.0 + slack),
            truncation_prime: self.truncation_prime,
            tail_epsilon: k as f64 * self.tail_epsilon,
            exact_zero: false,
        }
    }

    /// Interval product.
    pub fn mul(&self, other: &CertifiedProduct) -> CertifiedProduct {
        if self.exact_zero || other.exact_zero {
            return CertifiedProduct::exact_zero_at(self.truncation_prime.min(other.truncation_prime));
        }
        CertifiedProduct {
            value: self.value * other.value,
            lower: self.lower * other.lower * (1.0 - 4.0 * EPS),
            upper: self.upper * other.upper * (1.0 + 4.0 * EPS),
            truncation_prime: self.truncation_prime.max(other.truncation_prime),
            tail_epsilon: self.tail_epsilon + other.tail_epsilon,
            exact_zero: false,
        }
    }

    /// Interval quotient; the denominator must not be `exact_zero`.
    pub fn div(&self, den: &CertifiedProduct) -> Result<CertifiedProduct> {
        if den.exact_zero {
            return Err(Error::ZeroDenominator);
        }
        if self.exact_zero {
            return Ok(self.clone());
        }
        Ok(CertifiedProduct {
            value: self.value / den.value,
            lower: self.lower / den.upper * (1.0 - 4.0 * EPS),
            upper: self.upper / den.lower * (1.0 + 4.0 * EPS),
            truncation_prime: self.truncation_prime.max(den.truncation_prime),
            tail_epsilon: self.tail_epsilon + den.tail_epsilon,
            exact_zero: false,
        })
    }
}

/// Inverse chromatic zeta `prod_p P_H(p^s)/p^(ks)` of `g` at `s`, with the
/// default prime cap and chromatic work budget. This is the limiting
/// probability that a random configuration is visible along every edge
/// of `g`.
pub fn zeta_h_inverse(g: &Graph, s: f64, target_tail: f64) -> Result<CertifiedProduct> {
    zeta_h_inverse_with_caps(g, s, target_tail, DEFAULT_PRIME_CAP, DEFAULT_DC_NODE_BUDGET)
}

pub fn zeta_h_inverse_with_caps(
    g: &Graph,
    s: f64,
    target_tail: f64,
    prime_cap: u64,
    dc_budget: u64,
) -> Result<CertifiedProduct> {
    let poly = chromatic_polynomial_with_budget(g, dc_budget)?;
    certified_product(&poly, Exponent::from_f64(s)?, target_tail, prime_cap)
}

/// `prod_p (1 - p^-s)`, the inverse of the classical Riemann zeta. Equals
/// `zeta_h_inverse` of a single edge by construction.
pub fn riemann_zeta_inverse(s: f64, target_tail: f64) -> Result<CertifiedProduct> {
    riemann_zeta_inverse_with_cap(s, target_tail, DEFAULT_PRIME_CAP)
}

pub fn riemann_zeta_inverse_with_cap(
    s: f64,
    target_tail: f64,
    prime_cap: u64,
) -> Result<CertifiedProduct> {
    let poly = IntPolynomial::x_minus(1);
    certified_product(&poly, Exponent::from_f64(s)?, target_tail, prime_cap)
}

/// Closed form for the cycle limit:
/// `zeta^-k(s) * prod_p (1 + (-1)^k / (p^s - 1)^(k-1))`.
///
/// Must agree with `zeta_h_inverse(cycle:k, s)`; the two routes go through
/// different formulas, so their agreement is a real cross-check.
pub fn cycle_limit_closed_form(k: usize, s: f64, target_tail: f64) -> Result<CertifiedProduct> {
    cycle_limit_closed_form_with_cap(k, s, target_tail, DEFAULT_PRIME_CAP)
}

pub fn cycle_limit_closed_form_with_cap(
    k: usize,
    s: f64,
    target_tail: f64,
    prime_cap: u64,
) -> Result<CertifiedProduct> {
    if k < 3 {
        return Err(Error::invalid(format!("cycle length {} is below 3", k)));
    }
    if !target_tail.is_finite() || target_tail <= 0.0 {
        return Err(Error::invalid("target_tail must be a positive number"));
    }
    let s_checked = Exponent::from_f64(s)?; // validates s > 1
    let s = match s_checked {
        Exponent::Int(v) => v as f64,
        Exponent::Real(v) => v,
    };
    // split the budget so k-th powering of the zeta part stays within it
    let t_each = target_tail / (2.0 * (k as f64 + 1.0));
    let zeta_inv = riemann_zeta_inverse_with_cap(s, t_each, prime_cap)?;
    let corr = cycle_correction_product(k, s, target_tail / 2.0, prime_cap)?;
    Ok(zeta_inv.powi(k as u32).mul(&corr))
}

/// `prod_p (1 + sgn / (p^s - 1)^(k-1))` with `sgn = (-1)^k`, certified via
/// the plain integral-comparison tail (the factors decay like
/// `p^(-s(k-1))`, fast enough that no correction is needed).
fn cycle_correction_product(
    k: usize,
    s: f64,
    target_tail: f64,
    prime_cap: u64,
) -> Result<CertifiedProduct> {
    let e = (k - 1) as i32;
    let sgn = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let se = s * e as f64;
    // tail bound 2^(e+1) M^(1-se) / (se-1) <= target
    let ln_m = ((e as f64 + 1.0) * std::f64::consts::LN_2 - ((se - 1.0) * target_tail).ln())
        / (se - 1.0);
    let m = ln_m.exp().ceil().max(64.0);
    if !m.is_finite() || m > prime_cap as f64 {
        return Err(Error::TailUnreachable {
            target: target_tail,
            cap: prime_cap,
            reason: "cycle correction product tail".into(),
        });
    }
    let m = m as u64;
    let primes = primes_up_to(m, prime_cap)?;
    let mut acc = Accumulator::default();
    let mut abs_log = 0.0;
    for &p in &primes {
        let base = (p as f64).powf(s) - 1.0;
        let x = sgn * base.powi(-e);
        let lf = x.ln_1p();
        acc.add(lf);
        abs_log += lf.abs();
    }
    let tail = ((e as f64 + 1.0) * std::f64::consts::LN_2 + (1.0 - se) * (m as f64).ln()).exp()
        / (se - 1.0)
        * 1.01;
    let rho = 8.0 * (e as f64 + 4.0) * EPS * (abs_log + 1.0);
    let value = acc.value().exp();
    Ok(CertifiedProduct {
        value,
        lower: value * (-tail).exp() * (1.0 - rho),
        upper: value * tail.exp() * (1.0 + rho),
        truncation_prime: *primes.last().expect("m >= 64"),
        tail_epsilon: tail,
        exact_zero: false,
    })
}

/// Rearick's product `prod_p (1 - m/p^s)`: the limiting probability that a
/// random point is visible from `m` mutually visible points. Exactly zero
/// when `m >= 2^s` (the factor at p = 2 is non-positive).
pub fn rearick_ratio(m: u64, s: u32, target_tail: f64) -> Result<CertifiedProduct> {
    rearick_ratio_with_cap(m, s, target_tail, DEFAULT_PRIME_CAP)
}

pub fn rearick_ratio_with_cap(
    m: u64,
    s: u32,
    target_tail: f64,
    prime_cap: u64,
) -> Result<CertifiedProduct> {
    if m < 1 {
        return Err(Error::invalid("m must be a positive integer"));
    }
    if s < 2 {
        return Err(Error::invalid("rearick_ratio needs integer s >= 2"));
    }
    if s < 64 && m as u128 >= (1u128 << s) {
        return Ok(CertifiedProduct::exact_zero_at(2));
    }
    let poly = IntPolynomial::from_coeffs(vec![-BigInt::from(m), BigInt::one()]);
    certified_product(&poly, Exponent::Int(s), target_tail, prime_cap)
}

/// Conditional limit `zeta_H^-1(s) / zeta_H'^-1(s)` for `H' <= H` on the
/// same labeled vertex set: the limiting probability that a configuration
/// is `H`-visible given that it is `H'`-visible.
pub fn conditional_limit(
    g: &Graph,
    g_sub: &Graph,
    s: f64,
    target_tail: f64,
) -> Result<CertifiedProduct> {
    conditional_limit_with_caps(g, g_sub, s, target_tail, DEFAULT_PRIME_CAP, DEFAULT_DC_NODE_BUDGET)
}

pub fn conditional_limit_with_caps(
    g: &Graph,
    g_sub: &Graph,
    s: f64,
    target_tail: f64,
    prime_cap: u64,
    dc_budget: u64,
) -> Result<CertifiedProduct> {
    if !g_sub.is_subgraph_of(g)? {
        return Err(Error::NotASubgraph);
    }
    let den = zeta_h_inverse_with_caps(g_sub, s, target_tail / 2.0, prime_cap, dc_budget)?;
    if den.exact_zero {
        return Err(Error::ZeroDenominator);
    }
    let num = zeta_h_inverse_with_caps(g, s, target_tail / 2.0, prime_cap, dc_budget)?;
    num.div(&den)
}
