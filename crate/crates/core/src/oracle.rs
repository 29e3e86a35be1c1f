//! Ground truth by exhaustive enumeration: membership predicates and
//! brute-force counting/indexing, deliberately naive (trial division,
//! direct formula evaluation, linear scans). Verification code compares
//! the fast paths against these; nothing on a production path calls them.
//!
//! Everything here works at desk scale and uses u64 membership tests.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::ToPrimitive;

/// A named membership test over the positive integers.
#[derive(Clone)]
pub struct Predicate {
    name: String,
    test: Arc<dyn Fn(u64) -> bool + Send + Sync>,
}

impl Predicate {
    pub fn from_fn<F>(name: impl Into<String>, test: F) -> Self
    where
        F: Fn(u64) -> bool + Send + Sync + 'static,
    {
        Predicate {
            name: name.into(),
            test: Arc::new(test),
        }
    }

    pub fn test(&self, m: u64) -> bool {
        (self.test)(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn complement(&self) -> Predicate {
        let inner = self.clone();
        Predicate::from_fn(format!("non-{}", self.name), move |m| !inner.test(m))
    }
}

fn desk(n: &BigUint) -> u64 {
    n.to_u64().expect("oracle enumeration is desk-scale only")
}

/// All m <= bound with predicate(m), ascending.
pub fn enumerate_members(predicate: &Predicate, bound: &BigUint) -> Vec<BigUint> {
    let bound = desk(bound);
    (1..=bound)
        .filter(|&m| predicate.test(m))
        .map(BigUint::from)
        .collect()
}

/// The n-th member (1-indexed) by plain upward scan.
pub fn nth_by_enumeration(predicate: &Predicate, n: u64) -> BigUint {
    assert!(n >= 1);
    let mut seen = 0u64;
    let mut m = 0u64;
    loop {
        m += 1;
        if predicate.test(m) {
            seen += 1;
            if seen == n {
                return BigUint::from(m);
            }
        }
    }
}

/// |{m <= n : predicate(m)}| by scan.
pub fn count_by_enumeration(predicate: &Predicate, n: &BigUint) -> u64 {
    let n = desk(n);
    (1..=n).filter(|&m| predicate.test(m)).count() as u64
}

/// Cached enumeration of one predicate: repeated nth/count queries share
/// a single growing scan.
pub struct EnumeratedSequence {
    predicate: Predicate,
    members: Vec<u64>,
    scanned_to: u64,
}

impl EnumeratedSequence {
    pub fn new(predicate: Predicate) -> Self {
        EnumeratedSequence {
            predicate,
            members: Vec::new(),
            scanned_to: 0,
        }
    }

    pub fn name(&self) -> &str {
        self.predicate.name()
    }

    fn scan_to(&mut self, bound: u64) {
        while self.scanned_to < bound {
            self.scanned_to += 1;
            if self.predicate.test(self.scanned_to) {
                self.members.push(self.scanned_to);
            }
        }
    }

    /// n-th member, 1-indexed, growing the scan geometrically as needed.
    pub fn nth(&mut self, n: u64) -> BigUint {
        assert!(n >= 1);
        while (self.members.len() as u64) < n {
            let next = (self.scanned_to * 2).max(64);
            self.scan_to(next);
        }
        BigUint::from(self.members[n as usize - 1])
    }

    pub fn count(&mut self, n: u64) -> u64 {
        self.scan_to(n);
        self.members.partition_point(|&m| m <= n) as u64
    }

    /// Sorted members <= bound.
    pub fn members_up_to(&mut self, bound: u64) -> &[u64] {
        self.scan_to(bound);
        let end = self.members.partition_point(|&m| m <= bound);
        &self.members[..end]
    }
}

// ---------------------------------------------------------------------------
// Membership tests
// ---------------------------------------------------------------------------

fn trial_is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m % 2 == 0 {
        return m == 2;
    }
    let mut d = 3u64;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors, with a flag for whether any factor repeats.
fn factor_profile(mut m: u64) -> (u32, bool) {
    let mut distinct = 0u32;
    let mut repeated = false;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            distinct += 1;
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            if e > 1 {
                repeated = true;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        distinct += 1;
    }
    (distinct, repeated)
}

pub fn prime_predicate() -> Predicate {
    Predicate::from_fn("prime", trial_is_prime)
}

pub fn kth_power_predicate(k: u32) -> Predicate {
    Predicate::from_fn(format!("{k}th-power"), move |m| {
        if m == 0 {
            return false;
        }
        let r = m.nth_root(k);
        r.checked_pow(k).map(|p| p == m).unwrap_or(false)
    })
}

pub fn square_predicate() -> Predicate {
    kth_power_predicate(2)
}

pub fn power_of_predicate(base: u64) -> Predicate {
    Predicate::from_fn(format!("power-of-{base}"), move |m| {
        if m == 0 {
            return false;
        }
        let mut x = 1u64;
        loop {
            if x == m {
                return true;
            }
            match x.checked_mul(base) {
                Some(next) if next <= m => x = next,
                _ => return false,
            }
        }
    })
}

/// Numbers of the form 2^p - 1 with p prime.
pub fn mersenne_predicate() -> Predicate {
    Predicate::from_fn("mersenne", |m| {
        let succ = match m.checked_add(1) {
            Some(s) => s,
            None => return false,
        };
        succ.is_power_of_two() && trial_is_prime(succ.trailing_zeros() as u64)
    })
}

pub fn squarefree_predicate() -> Predicate {
    Predicate::from_fn("squarefree", |m| {
        if m == 0 {
            return false;
        }
        !factor_profile(m).1
    })
}

/// Perfect powers a^b with b >= 2 (so 1, 4, 8, 9, 16, ...).
pub fn perfect_power_predicate() -> Predicate {
    Predicate::from_fn("perfect-power", |m| {
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        for b in 2..=m.ilog2() {
            let r = m.nth_root(b);
            if r.checked_pow(b).map(|p| p == m).unwrap_or(false) {
                return true;
            }
        }
        false
    })
}

pub fn repdigit_predicate(base: u32) -> Predicate {
    Predicate::from_fn(format!("repdigit-base-{base}"), move |m| {
        if m == 0 {
            return false;
        }
        let b = base as u64;
        let first = m % b;
        let mut rest = m / b;
        if first == 0 {
            // A positive repdigit repeats a nonzero digit.
            return false;
        }
        while rest > 0 {
            if rest % b != first {
                return false;
            }
            rest /= b;
        }
        true
    })
}

/// Products of exactly k distinct primes (squarefree k-almost primes).
pub fn squarefree_kalmost_predicate(k: u32) -> Predicate {
    Predicate::from_fn(format!("squarefree-{k}-almost-prime"), move |m| {
        if m == 0 {
            return false;
        }
        let (distinct, repeated) = factor_profile(m);
        !repeated && distinct == k
    })
}

pub fn squares_or_powers_of_two_predicate() -> Predicate {
    let sq = square_predicate();
    let p2 = power_of_predicate(2);
    Predicate::from_fn("square-or-power-of-2", move |m| sq.test(m) || p2.test(m))
}

/// Numbers m whose self-power m^m is a p-th power; for prime p this is
/// "p divides m, or m is a p-th power" (see the unit test pinning the two
/// characterizations against each other on small m).
pub fn kk_pth_power_predicate(p: u32) -> Predicate {
    let pow = kth_power_predicate(p);
    Predicate::from_fn(format!("self-power-is-{p}th-power"), move |m| {
        m % p as u64 == 0 || pow.test(m)
    })
}

/// k-gonal numbers (k-2)i(i-1)/2 + i for i >= 1.
pub fn kgonal_predicate(k: u32) -> Predicate {
    Predicate::from_fn(format!("{k}-gonal"), move |m| {
        in_increasing_sequence(m, |i| {
            (k as u128 - 2) * i * (i - 1) / 2 + i
        })
    })
}

/// Centered k-gonal numbers k*i(i+1)/2 + 1 for i >= 0 (so 1 is a member).
pub fn centered_kgonal_predicate(k: u32) -> Predicate {
    Predicate::from_fn(format!("centered-{k}-gonal"), move |m| {
        if m == 1 {
            return true;
        }
        in_increasing_sequence(m, |i| k as u128 * i * (i + 1) / 2 + 1)
    })
}

/// k-gonal pyramidal numbers i(i+1)(i(k-2)-(k-5))/6 for i >= 1.
pub fn kgonal_pyramidal_predicate(k: u32) -> Predicate {
    Predicate::from_fn(format!("{k}-gonal-pyramidal"), move |m| {
        in_increasing_sequence(m, |i| {
            let k = k as u128;
            i * (i + 1) * (i * (k - 2) + 5 - k) / 6
        })
    })
}

/// Sums 1^k + ... + i^k for i >= 1.
pub fn sum_of_kth_powers_predicate(k: u32) -> Predicate {
    Predicate::from_fn(format!("sum-of-{k}th-powers"), move |m| {
        let mut sum = 0u128;
        let mut i = 0u128;
        loop {
            i += 1;
            sum += i.pow(k);
            if sum == m as u128 {
                return true;
            }
            if sum > m as u128 {
                return false;
            }
        }
    })
}

/// k-simplex numbers C(i+k-1, k) for i >= 1.
pub fn ksimplex_predicate(k: u32) -> Predicate {
    Predicate::from_fn(format!("{k}-simplex"), move |m| {
        in_increasing_sequence(m, |i| {
            let mut num = 1u128;
            for j in 0..k as u128 {
                num = num * (i + j) / (j + 1);
            }
            num
        })
    })
}

fn in_increasing_sequence(m: u64, f: impl Fn(u128) -> u128) -> bool {
    if m == 0 {
        return false;
    }
    let mut i = 1u128;
    loop {
        let v = f(i);
        if v == m as u128 {
            return true;
        }
        if v > m as u128 {
            return false;
        }
        i += 1;
    }
}
