//! Counting functions: for a predicate P, `eval(n)` is the number of
//! positive integers <= n satisfying P. Complements, unions and
//! inverted closed sequences are built from the same abstraction, and a
//! catalog of concrete counters (primes, squarefree numbers, perfect
//! powers, repdigits, products of distinct primes, ...) lives here too.

mod sieve;

pub use sieve::{set_sieve_limit, sieve_limit, sieve_with_capacity, SieveCache, DEFAULT_SIEVE_LIMIT};

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intmath;

/// Rough cost class of one evaluation, for display and method defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostHint {
    Constant,
    Polylog,
    Sieve,
}

/// A monotone map n -> |{m <= n : P(m)}| with a human-readable name.
#[derive(Clone)]
pub struct CountingFunction {
    name: String,
    cost_hint: CostHint,
    eval: Arc<dyn Fn(&BigUint) -> Result<BigUint> + Send + Sync>,
}

impl fmt::Debug for CountingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CountingFunction")
            .field("name", &self.name)
            .field("cost_hint", &self.cost_hint)
            .finish()
    }
}

impl CountingFunction {
    pub fn from_fn<F>(name: impl Into<String>, cost_hint: CostHint, eval: F) -> Self
    where
        F: Fn(&BigUint) -> Result<BigUint> + Send + Sync + 'static,
    {
        CountingFunction {
            name: name.into(),
            cost_hint,
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, n: &BigUint) -> Result<BigUint> {
        (self.eval)(n)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cost_hint(&self) -> CostHint {
        self.cost_hint
    }

    /// The counter of the complement set: n - eval(n).
    pub fn complement(&self) -> CountingFunction {
        let inner = self.clone();
        CountingFunction::from_fn(
            format!("complement({})", self.name),
            self.cost_hint,
            move |n| {
                let c = inner.eval(n)?;
                debug_assert!(c <= *n, "counting function exceeded its argument");
                Ok(n - c)
            },
        )
    }
}

/// A strictly increasing map from positive index to sequence member.
#[derive(Clone)]
pub struct SequenceMap {
    name: String,
    f: Arc<dyn Fn(&BigUint) -> BigUint + Send + Sync>,
}

impl fmt::Debug for SequenceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceMap").field("name", &self.name).finish()
    }
}

impl SequenceMap {
    pub fn from_fn<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&BigUint) -> BigUint + Send + Sync + 'static,
    {
        SequenceMap {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, m: &BigUint) -> BigUint {
        (self.f)(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

// ---------------------------------------------------------------------------
// Concrete counters
// ---------------------------------------------------------------------------

fn require_u64(n: &BigUint) -> Result<u64> {
    n.to_u64().ok_or(Error::SieveCapacity {
        required: u64::MAX,
        limit: sieve_limit(),
    })
}

/// pi(n), exact, from the sieve. Errors if n exceeds the sieve cap.
pub fn count_primes(n: &BigUint) -> Result<BigUint> {
    let n = require_u64(n)?;
    let sieve = sieve_with_capacity(n)?;
    Ok(BigUint::from(sieve.prime_count(n)))
}

/// Number of squarefree integers <= n, via the Mobius sum over i <= sqrt(n).
pub fn count_squarefree(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Ok(BigUint::zero());
    }
    let root = intmath::isqrt(n)
        .to_u64()
        .ok_or(Error::SieveCapacity {
            required: u64::MAX,
            limit: sieve_limit(),
        })?;
    let sieve = sieve_with_capacity(root)?;
    let n = n.to_u128().ok_or(Error::SieveCapacity {
        required: u64::MAX,
        limit: sieve_limit(),
    })?;
    let mut total: i128 = 0;
    for i in 1..=root {
        let mu = sieve.mobius(i);
        if mu != 0 {
            let term = (n / (i as u128 * i as u128)) as i128;
            total += mu as i128 * term;
        }
    }
    debug_assert!(total >= 0);
    Ok(BigUint::from(total as u128))
}

/// Number of perfect powers (1, 4, 8, 9, 16, 25, 27, ...) <= n, n >= 1.
pub fn count_perfect_powers(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::InvalidArgument(
            "count_perfect_powers: n must be >= 1".into(),
        ));
    }
    let e = intmath::ilog(n, 2)?;
    let sieve = sieve_with_capacity(e.max(1))?;
    let mut total = BigInt::one();
    if let Some(small) = n.to_u64() {
        let mut acc: i64 = 1;
        for i in 2..=e {
            let mu = sieve.mobius(i);
            if mu != 0 {
                acc -= mu as i64 * (small.nth_root(i as u32) as i64 - 1);
            }
        }
        return Ok(BigUint::from(acc as u64));
    }
    for i in 2..=e {
        let mu = sieve.mobius(i);
        if mu != 0 {
            let root = BigInt::from(intmath::iroot(n, i as u32)?) - BigInt::one();
            if mu > 0 {
                total -= root;
            } else {
                total += root;
            }
        }
    }
    Ok(total.to_biguint().expect("perfect-power count is nonnegative"))
}

/// Number of base-b repdigits <= n. Defined as 0 at n = 0.
pub fn count_repdigits(n: &BigUint, base: u32) -> Result<BigUint> {
    if base < 2 {
        return Err(Error::InvalidArgument(
            "count_repdigits: base must be >= 2".into(),
        ));
    }
    if n.is_zero() {
        return Ok(BigUint::zero());
    }
    let e = intmath::ilog(n, base)?;
    let b1 = BigUint::from(base - 1);
    let denom = BigUint::from(base).pow(e as u32 + 1) - BigUint::one();
    Ok(&b1 * BigUint::from(e) + &b1 * n / denom)
}

/// Number of products of exactly k distinct primes <= n (squarefree
/// k-almost primes). k = 1 is the primes themselves.
pub fn count_squarefree_kalmost(n: &BigUint, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "count_squarefree_kalmost: k must be >= 1".into(),
        ));
    }
    if k == 1 {
        return count_primes(n);
    }
    let n = require_u64(n)?;
    // Deepest prime-count query is at n / (product of the k-1 smallest
    // primes); every prime iterated along the way is <= sqrt(n).
    let prefix = intmath::primorial(k as u64 - 1)
        .to_u64()
        .unwrap_or(u64::MAX);
    let required = (n / prefix.max(1)).max(n.sqrt()).max(64);
    let sieve = sieve_with_capacity(required)?;
    Ok(BigUint::from(distinct_prime_products(&sieve, k, n, 0)))
}

/// Ordered recursion over the smallest prime factor: choose primes[i] as
/// the least factor, then count (k-1)-products of larger primes below n/p.
fn distinct_prime_products(sieve: &SieveCache, k: u32, n: u64, start: usize) -> u64 {
    if k == 1 {
        if n < 2 {
            return 0;
        }
        return sieve.prime_count(n).saturating_sub(start as u64);
    }
    let mut total = 0u64;
    for (i, &p) in sieve.primes().iter().enumerate().skip(start) {
        // Remaining factors all exceed p, so p^k <= n is necessary.
        if (p as u128).pow(k) > n as u128 {
            break;
        }
        total += distinct_prime_products(sieve, k - 1, n / p, i + 1);
    }
    total
}

/// Counting function of the union of squares and powers of two:
/// floor(sqrt n) + ceil(floor(log2 n) / 2).
pub fn count_squares_or_powers_of_two(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Ok(BigUint::zero());
    }
    let e = intmath::ilog(n, 2)?;
    Ok(intmath::isqrt(n) + BigUint::from(e - e / 2))
}

/// Counting function of {m : m^m is a p-th power} for prime p, which is
/// the union of the multiples of p and the p-th powers:
/// floor(n/p) + floor(p-th root of n) - floor(that root / p).
pub fn count_kk_pth_power(n: &BigUint, p: u32) -> Result<BigUint> {
    if !intmath::is_prime_u64(p as u64) {
        return Err(Error::InvalidArgument(
            "count_kk_pth_power: p must be prime".into(),
        ));
    }
    if n.is_zero() {
        return Ok(BigUint::zero());
    }
    let root = intmath::iroot(n, p)?;
    let p_big = BigUint::from(p);
    Ok(n / &p_big + &root - root / p_big)
}

// ---------------------------------------------------------------------------
// Combinators
// ---------------------------------------------------------------------------

/// Counter of a union of two disjoint sets: the plain sum. Disjointness
/// is the caller's responsibility and is only asserted by the oracle suite.
pub fn disjoint_union(a: &CountingFunction, b: &CountingFunction) -> CountingFunction {
    let (fa, fb) = (a.clone(), b.clone());
    CountingFunction::from_fn(
        format!("{} + {}", a.name(), b.name()),
        a.cost_hint().max_with(b.cost_hint()),
        move |n| Ok(fa.eval(n)? + fb.eval(n)?),
    )
}

/// Counter of a general union: C_a + C_b - C_{a and b}.
pub fn union_inclusion_exclusion(
    a: &CountingFunction,
    b: &CountingFunction,
    a_and_b: &CountingFunction,
) -> CountingFunction {
    let (fa, fb, fab) = (a.clone(), b.clone(), a_and_b.clone());
    CountingFunction::from_fn(
        format!("{} | {}", a.name(), b.name()),
        a.cost_hint().max_with(b.cost_hint()),
        move |n| {
            let sum = fa.eval(n)? + fb.eval(n)?;
            let overlap = fab.eval(n)?;
            debug_assert!(overlap <= sum);
            Ok(sum - overlap)
        },
    )
}

/// Counter of the range of a strictly increasing sequence f with f(1) >= 1:
/// eval(n) = max{m : f(m) <= n}, by exponential then binary search.
pub fn from_closed_sequence(seq: SequenceMap) -> CountingFunction {
    let name = format!("members({})", seq.name());
    CountingFunction::from_fn(name, CostHint::Polylog, move |n| {
        if seq.eval(&BigUint::one()) > *n {
            return Ok(BigUint::zero());
        }
        let two = BigUint::from(2u32);
        let mut lo = BigUint::one();
        let mut hi = two.clone();
        while seq.eval(&hi) <= *n {
            lo = hi.clone();
            hi *= &two;
        }
        // f(lo) <= n < f(hi)
        while &hi - &lo > BigUint::one() {
            let mid = (&lo + &hi) / &two;
            if seq.eval(&mid) <= *n {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    })
}

impl CostHint {
    fn max_with(self, other: CostHint) -> CostHint {
        use CostHint::*;
        match (self, other) {
            (Sieve, _) | (_, Sieve) => Sieve,
            (Polylog, _) | (_, Polylog) => Polylog,
            _ => Constant,
        }
    }
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// pi as a counting function.
pub fn primes() -> CountingFunction {
    CountingFunction::from_fn("primes", CostHint::Sieve, count_primes)
}

/// Counter of the positive squares.
pub fn squares() -> CountingFunction {
    kth_powers(2)
}

/// Counter of the positive k-th powers, k >= 1.
pub fn kth_powers(k: u32) -> CountingFunction {
    CountingFunction::from_fn(format!("{k}th-powers"), CostHint::Constant, move |n| {
        intmath::iroot(n, k)
    })
}

/// Counter of {1, b, b^2, ...} for b >= 2; note 1 = b^0 is a member.
pub fn powers_of(b: u32) -> CountingFunction {
    CountingFunction::from_fn(format!("powers-of-{b}"), CostHint::Constant, move |n| {
        if n.is_zero() {
            return Ok(BigUint::zero());
        }
        Ok(BigUint::from(intmath::ilog(n, b)? + 1))
    })
}

/// Counter of {2^p - 1 : p prime}.
pub fn mersenne_numbers() -> CountingFunction {
    CountingFunction::from_fn("mersenne-numbers", CostHint::Sieve, move |n| {
        if n.is_zero() {
            return Ok(BigUint::zero());
        }
        // 2^p - 1 <= n  iff  p <= log2(n + 1)
        let e = intmath::ilog(&(n + BigUint::one()), 2)?;
        count_primes(&BigUint::from(e))
    })
}

pub fn squarefree() -> CountingFunction {
    CountingFunction::from_fn("squarefree", CostHint::Sieve, count_squarefree)
}

pub fn perfect_powers() -> CountingFunction {
    CountingFunction::from_fn("perfect-powers", CostHint::Polylog, |n| {
        if n.is_zero() {
            return Ok(BigUint::zero());
        }
        count_perfect_powers(n)
    })
}

pub fn repdigits(base: u32) -> CountingFunction {
    CountingFunction::from_fn(
        format!("repdigits-base-{base}"),
        CostHint::Constant,
        move |n| count_repdigits(n, base),
    )
}

/// Products of exactly k distinct primes.
pub fn squarefree_kalmost(k: u32) -> CountingFunction {
    CountingFunction::from_fn(
        format!("squarefree-{k}-almost-primes"),
        CostHint::Sieve,
        move |n| count_squarefree_kalmost(n, k),
    )
}

pub fn squares_or_powers_of_two() -> CountingFunction {
    CountingFunction::from_fn(
        "squares|powers-of-2",
        CostHint::Constant,
        count_squares_or_powers_of_two,
    )
}

pub fn kk_pth_power(p: u32) -> CountingFunction {
    CountingFunction::from_fn(
        format!("kk-{p}th-power"),
        CostHint::Constant,
        move |n| count_kk_pth_power(n, p),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn prime_counts() {
        assert_eq!(count_primes(&big(1)).unwrap(), big(0));
        assert_eq!(count_primes(&big(7)).unwrap(), big(4));
        assert_eq!(count_primes(&big(100)).unwrap(), big(25));
    }

    #[test]
    fn squarefree_counts() {
        assert_eq!(count_squarefree(&big(0)).unwrap(), big(0));
        assert_eq!(count_squarefree(&big(1)).unwrap(), big(1));
        assert_eq!(count_squarefree(&big(20)).unwrap(), big(13));
    }

    #[test]
    fn perfect_power_counts() {
        assert_eq!(count_perfect_powers(&big(1)).unwrap(), big(1));
        assert_eq!(count_perfect_powers(&big(3)).unwrap(), big(1));
        assert_eq!(count_perfect_powers(&big(16)).unwrap(), big(5));
        assert!(count_perfect_powers(&big(0)).is_err());
    }

    #[test]
    fn perfect_power_big_path_matches_small_path() {
        // Exercise the BigInt branch against the u64 branch at the same value.
        let n = big(987_654_321);
        let wide = &n + (BigUint::from(u64::MAX) - BigUint::from(u64::MAX)); // same value
        assert_eq!(
            count_perfect_powers(&n).unwrap(),
            count_perfect_powers(&wide).unwrap()
        );
        // A genuinely over-u64 argument still evaluates.
        let huge = BigUint::from(u64::MAX) * BigUint::from(16u32);
        let c = count_perfect_powers(&huge).unwrap();
        assert!(c > big(4_000_000_000));
    }

    #[test]
    fn repdigit_counts() {
        assert_eq!(count_repdigits(&big(100), 10).unwrap(), big(18));
        assert_eq!(count_repdigits(&big(8), 10).unwrap(), big(8));
        // Binary repdigits <= 7 are 1, 3, 7.
        assert_eq!(count_repdigits(&big(7), 2).unwrap(), big(3));
        assert_eq!(count_repdigits(&big(0), 10).unwrap(), big(0));
        assert!(count_repdigits(&big(5), 1).is_err());
    }

    #[test]
    fn repdigits_match_enumeration() {
        for base in [2u32, 3, 10] {
            let pred = oracle::repdigit_predicate(base);
            for n in 1..=2000u64 {
                assert_eq!(
                    count_repdigits(&big(n), base).unwrap(),
                    big(oracle::count_by_enumeration(&pred, &big(n))),
                    "base {base}, n {n}"
                );
            }
        }
    }

    #[test]
    fn kalmost_counts() {
        assert_eq!(count_squarefree_kalmost(&big(100), 1).unwrap(), big(25));
        assert_eq!(count_squarefree_kalmost(&big(30029), 6).unwrap(), big(0));
        assert_eq!(count_squarefree_kalmost(&big(30030), 6).unwrap(), big(1));
        // Squarefree semiprimes <= 209 by brute force.
        let pred = oracle::squarefree_kalmost_predicate(2);
        let expect = oracle::count_by_enumeration(&pred, &big(209));
        assert_eq!(count_squarefree_kalmost(&big(209), 2).unwrap(), big(expect));
    }

    #[test]
    fn kalmost_matches_enumeration() {
        for k in 2..=4u32 {
            let pred = oracle::squarefree_kalmost_predicate(k);
            let members = oracle::enumerate_members(&pred, &big(3000));
            let mut count = 0u64;
            let mut idx = 0usize;
            for n in 1..=3000u64 {
                if idx < members.len() && members[idx] == big(n) {
                    count += 1;
                    idx += 1;
                }
                assert_eq!(
                    count_squarefree_kalmost(&big(n), k).unwrap(),
                    big(count),
                    "k {k}, n {n}"
                );
            }
        }
    }

    #[test]
    fn union_closed_forms() {
        assert_eq!(count_squares_or_powers_of_two(&big(16)).unwrap(), big(6));
        // k^k p-th-power union at (20, 2): 10 + 4 - 2.
        assert_eq!(count_kk_pth_power(&big(20), 2).unwrap(), big(12));
        assert!(count_kk_pth_power(&big(20), 4).is_err());
    }

    #[test]
    fn disjoint_union_examples() {
        let sf = squarefree();
        let pp = perfect_powers();
        let joint = disjoint_union(&sf, &pp);
        let n = big(16);
        assert_eq!(
            joint.eval(&n).unwrap(),
            sf.eval(&n).unwrap() + pp.eval(&n).unwrap()
        );

        let empty = CountingFunction::from_fn("empty", CostHint::Constant, |_| Ok(BigUint::zero()));
        let with_empty = disjoint_union(&sf, &empty);
        assert_eq!(with_empty.eval(&n).unwrap(), sf.eval(&n).unwrap());

        let evens = CountingFunction::from_fn("evens", CostHint::Constant, |n| {
            Ok(n / BigUint::from(2u32))
        });
        let odds = CountingFunction::from_fn("odds", CostHint::Constant, |n| {
            Ok((n + BigUint::one()) / BigUint::from(2u32))
        });
        let all = disjoint_union(&evens, &odds);
        for n in 0..50u64 {
            assert_eq!(all.eval(&big(n)).unwrap(), big(n));
        }
    }

    #[test]
    fn inclusion_exclusion_examples() {
        let sq = squares();
        let p2 = powers_of(2);
        // squares intersect powers-of-2 = {4^j : j >= 0}, 1 included.
        let overlap = powers_of(4);
        let union = union_inclusion_exclusion(&sq, &p2, &overlap);
        for n in 1..=4096u64 {
            assert_eq!(
                union.eval(&big(n)).unwrap(),
                count_squares_or_powers_of_two(&big(n)).unwrap(),
                "n={n}"
            );
        }
        // a = b = a_and_b collapses to a.
        let same = union_inclusion_exclusion(&sq, &sq, &sq);
        for n in [0u64, 5, 100, 1000] {
            assert_eq!(same.eval(&big(n)).unwrap(), sq.eval(&big(n)).unwrap());
        }
    }

    #[test]
    fn closed_sequence_inversion() {
        let squares_seq = SequenceMap::from_fn("squares", |m| m * m);
        let counter = from_closed_sequence(squares_seq);
        assert_eq!(counter.eval(&big(10)).unwrap(), big(3));
        assert_eq!(counter.eval(&big(0)).unwrap(), big(0));
        for n in 1..=500u64 {
            assert_eq!(counter.eval(&big(n)).unwrap(), intmath::isqrt(&big(n)));
        }

        let offset = SequenceMap::from_fn("from-five", |m| m + BigUint::from(4u32));
        let counter = from_closed_sequence(offset);
        assert_eq!(counter.eval(&big(4)).unwrap(), big(0));
        assert_eq!(counter.eval(&big(5)).unwrap(), big(1));
    }

    #[test]
    fn complement_law() {
        for counter in [primes(), squarefree(), perfect_powers(), repdigits(10)] {
            let co = counter.complement();
            for n in 1..=300u64 {
                let a = counter.eval(&big(n)).unwrap();
                let b = co.eval(&big(n)).unwrap();
                assert_eq!(a + b, big(n), "{} at {n}", counter.name());
            }
        }
    }

    #[test]
    fn capacity_error_reports_needed_limit() {
        let err = count_primes(&BigUint::from(10u64).pow(12)).unwrap_err();
        match err {
            Error::SieveCapacity { required, limit } => {
                assert_eq!(required, 10u64.pow(12));
                assert_eq!(limit, sieve_limit());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        // Each cataloged counter counts every integer at most once.
        #[test]
        fn unit_increments(n in 1u64..5000) {
            for counter in [primes(), squares(), squarefree(), perfect_powers(),
                            repdigits(10), squares_or_powers_of_two()] {
                let a = counter.eval(&big(n - 1)).unwrap();
                let b = counter.eval(&big(n)).unwrap();
                let step = &b - &a;
                prop_assert!(step <= big(1), "{} at {n}", counter.name());
                prop_assert!(b <= big(n));
            }
        }

        #[test]
        fn complement_law_sampled(n in 0u64..100_000) {
            let sf = squarefree();
            let co = sf.complement();
            prop_assert_eq!(sf.eval(&big(n)).unwrap() + co.eval(&big(n)).unwrap(), big(n));
        }
    }
}
