//! Wilson score intervals for binomial proportions.
//!
//! Wilson is used instead of the normal approximation because several of
//! the probabilities estimated here sit at or near 0 (vanishing products)
//! or 1 (empty graphs), where the normal interval has no coverage.

use crate::error::{Error, Result};

/// Two-sided normal quantile `z` for the given confidence level, e.g.
/// 0.95 -> 1.95996. Uses Acklam's rational approximation of the inverse
/// normal CDF (absolute error below 1.2e-9, far inside the statistical
/// slack of any interval built from it).
pub fn z_for_confidence(confidence: f64) -> Result<f64> {
    if !confidence.is_finite() || confidence <= 0.0 || confidence >= 1.0 {
        return Err(Error::invalid(format!(
            "confidence {} outside (0, 1)",
            confidence
        )));
    }
    Ok(probit(0.5 + confidence / 2.0))
}

/// Acklam's inverse normal CDF approximation. Coefficients are kept at
/// their published precision.
#[allow(clippy::excessive_precision)]
fn probit(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -probit(1.0 - p)
    }
}

/// Wilson score interval for `successes / trials` at quantile `z`,
/// clamped to `[0, 1]`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0, "interval needs at least one trial");
    let n = trials as f64;
    let p_hat = successes as f64 / n;
    let z2 = z * z;
    let center = p_hat + z2 / (2.0 * n);
    let spread = z * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt();
    let denom = 1.0 + z2 / n;
    // the Wilson interval always contains p_hat; re-clamp so float
    // rounding cannot break that
    let lo = ((center - spread) / denom).max(0.0).min(p_hat);
    let hi = ((center + spread) / denom).min(1.0).max(p_hat);
    (lo, hi)
}

/// Wilson standard error: half-width of the z = 1 interval. For large n
/// this approaches `sqrt(p(1-p)/n)` while staying positive at p = 0 or 1.
pub fn wilson_standard_error(successes: u64, trials: u64) -> f64 {
    let (lo, hi) = wilson_interval(successes, trials, 1.0);
    0.5 * (hi - lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles_match_published_values() {
        assert!((z_for_confidence(0.95).unwrap() - 1.959963984540054).abs() < 1e-7);
        assert!((z_for_confidence(0.99).unwrap() - 2.5758293035489004).abs() < 1e-7);
        assert!((z_for_confidence(0.90).unwrap() - 1.6448536269514722).abs() < 1e-7);
        assert!(z_for_confidence(0.0).is_err());
        assert!(z_for_confidence(1.0).is_err());
    }

    #[test]
    fn wilson_known_case() {
        // 10 of 10 successes at 95%: textbook lower bound 0.72246
        let (lo, hi) = wilson_interval(10, 10, 1.959963984540054);
        assert!((lo - 0.7224672).abs() < 1e-4, "lo = {}", lo);
        assert_eq!(hi, 1.0);

        // 0 of 10: mirror image
        let (lo0, hi0) = wilson_interval(0, 10, 1.959963984540054);
        assert_eq!(lo0, 0.0);
        assert!((hi0 - (1.0 - 0.7224672)).abs() < 1e-4);
    }

    #[test]
    fn interval_contains_point_estimate() {
        for &(s, n) in &[(0u64, 5u64), (1, 7), (3, 9), (9, 9), (500, 1000)] {
            let (lo, hi) = wilson_interval(s, n, 1.96);
            let p = s as f64 / n as f64;
            assert!(lo <= p && p <= hi, "({}, {})", s, n);
            assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
        }
    }

    #[test]
    fn standard_error_behaves_like_sqrt_n() {
        let se_small = wilson_standard_error(500, 1_000);
        let se_large = wilson_standard_error(50_000, 100_000);
        let ratio = se_small / se_large;
        assert!((8.0..=12.0).contains(&ratio), "ratio = {}", ratio);
    }
}
