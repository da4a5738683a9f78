//! Prime generation by a bit-packed odd sieve of Eratosthenes.

use crate::error::{Error, Result};

/// Default ceiling on sieve bounds. 10^8 keeps the bitmap near 6 MiB.
pub const DEFAULT_PRIME_CAP: u64 = 100_000_000;

/// All primes in `[2, m]`, ascending. `m` must be at least 2 and at most
/// `cap`.
pub fn primes_up_to(m: u64, cap: u64) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(Error::invalid(format!("sieve bound {} is below 2", m)));
    }
    if m > cap {
        return Err(Error::PrimeCapExceeded { m, cap });
    }
    // bit i represents the odd number 2i + 1; bit 0 (the number 1) unused
    let half = ((m - 1) / 2) as usize;
    let mut composite = vec![0u64; half / 64 + 1];
    let is_set = |bits: &[u64], i: usize| bits[i / 64] & (1 << (i % 64)) != 0;
    let mut i = 1usize;
    while {
        let p = 2 * i as u64 + 1;
        p * p <= m
    } {
        if !is_set(&composite, i) {
            let p = 2 * i as u64 + 1;
            let mut j = (p * p - 1) / 2;
            while j <= half as u64 {
                composite[(j / 64) as usize] |= 1 << (j % 64);
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(estimate_pi(m));
    primes.push(2);
    for i in 1..=half {
        if !is_set(&composite, i) {
            primes.push(2 * i as u64 + 1);
        }
    }
    Ok(primes)
}

fn estimate_pi(m: u64) -> usize {
    if m < 10 {
        return 8;
    }
    let x = m as f64;
    (x / x.ln() * 1.2) as usize + 8
}
