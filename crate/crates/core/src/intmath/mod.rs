//! Exact integer primitives: roots, logarithms, binomials, primorials,
//! rising factorials and Faulhaber power sums.
//!
//! Everything here is float-free on the decision path. Roots use integer
//! Newton iteration (a float only seeds the iteration and the result is
//! corrected by exact multiplication); logarithms are resolved by binary
//! search on the exponent.

mod bernoulli;

pub use bernoulli::{bernoulli_table, faulhaber_sum, faulhaber_sum_with, BernoulliTable, Rational};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest r with r*r <= n.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// Largest r with r^k <= n. Rejects k = 0.
pub fn iroot(n: &BigUint, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidArgument("iroot: k must be >= 1".into()));
    }
    Ok(n.nth_root(k))
}

/// Largest e with base^e <= n. Rejects n = 0 and base < 2.
///
/// Resolved by a repeated-squaring ladder so power boundaries are exact.
pub fn ilog(n: &BigUint, base: u32) -> Result<u64> {
    if base < 2 {
        return Err(Error::InvalidArgument("ilog: base must be >= 2".into()));
    }
    if n.is_zero() {
        return Err(Error::InvalidArgument("ilog: n must be >= 1".into()));
    }
    let b = BigUint::from(base);
    if *n < b {
        return Ok(0);
    }
    // Ladder of base^(2^i) while the square still fits under n.
    let mut ladder = vec![b];
    loop {
        let top = ladder.last().unwrap();
        let sq = top * top;
        if &sq <= n {
            ladder.push(sq);
        } else {
            break;
        }
    }
    let mut exp = 0u64;
    let mut acc = BigUint::one();
    for (i, p) in ladder.iter().enumerate().rev() {
        let next = &acc * p;
        if &next <= n {
            acc = next;
            exp += 1 << i;
        }
    }
    Ok(exp)
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: &BigUint, k: u64) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    // C(n, k) = prod_{i=1..k} (n - k + i) / i, exact at every step.
    let base = n - BigUint::from(k);
    let mut result = BigUint::one();
    for i in 1..=k {
        result = result * (&base + BigUint::from(i)) / BigUint::from(i);
    }
    result
}

/// Product of the first k primes; primorial(0) = 1.
pub fn primorial(k: u64) -> BigUint {
    let mut result = BigUint::one();
    let mut p = 0u64;
    for _ in 0..k {
        p = next_prime(p);
        result *= BigUint::from(p);
    }
    result
}

/// Rising factorial n * (n+1) * ... * (n+k-1); empty product is 1.
pub fn rising_factorial(n: &BigUint, k: u64) -> BigUint {
    let mut result = BigUint::one();
    for i in 0..k {
        result *= n + BigUint::from(i);
    }
    result
}

/// k-th prime (1-indexed): nth_prime(1) = 2. Trial division; meant for
/// small indices only.
pub fn nth_prime(k: u64) -> u64 {
    assert!(k >= 1, "nth_prime is 1-indexed");
    let mut p = 0u64;
    for _ in 0..k {
        p = next_prime(p);
    }
    p
}

fn next_prime(after: u64) -> u64 {
    let mut c = after + 1;
    loop {
        if is_prime_u64(c) {
            return c;
        }
        c += 1;
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest index from which the rising-factorial bracket
/// (n + floor(k/2) - 1)^k <= n^(rising k) <= (n + floor(k/2))^k
/// is proved to hold for every n at or above it.
pub fn rising_factorial_bracket_start(k: u64) -> u64 {
    assert!(k >= 1);
    let k = k as i64;
    let r = if k % 2 == 0 {
        (k * k - 4 * k + 6).div_euclid(4)
    } else {
        (k * k - 6 * k + 11).div_euclid(4)
    };
    r.max(0) as u64
}

/// Does the rising-factorial bracket hold at (n, k)?
pub fn rising_factorial_bracketed(n: &BigUint, k: u64) -> bool {
    let half = k / 2;
    let rf = rising_factorial(n, k);
    let hi = (n + BigUint::from(half)).pow(k as u32);
    let lo_base = n + BigUint::from(half) - BigUint::one();
    let lo = lo_base.pow(k as u32);
    lo <= rf && rf <= hi
}
