//! Process-wide sieve cache: prime-count prefix, Mobius values and the
//! prime list itself, grown on demand by doubling up to a configurable cap.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

pub const DEFAULT_SIEVE_LIMIT: u64 = 10_000_000;

/// Immutable sieve snapshot covering 0..=limit.
#[derive(Debug)]
pub struct SieveCache {
    limit: u64,
    /// prime_count_prefix[n] = pi(n) for n <= limit.
    prime_count_prefix: Vec<u32>,
    /// mobius[n] = mu(n) for n <= limit.
    mobius: Vec<i8>,
    primes: Vec<u64>,
}

impl SieveCache {
    fn build(limit: u64) -> Self {
        let n = limit as usize;
        let mut mobius = vec![0i8; n + 1];
        let mut composite = vec![false; n + 1];
        let mut primes: Vec<u64> = Vec::new();
        if n >= 1 {
            mobius[1] = 1;
        }
        // Linear sieve: every composite is crossed off exactly once by its
        // smallest prime factor, which is what makes mu cheap to carry along.
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u64);
                mobius[i] = -1;
            }
            for &p in &primes {
                let ip = i * p as usize;
                if ip > n {
                    break;
                }
                composite[ip] = true;
                if i % p as usize == 0 {
                    mobius[ip] = 0;
                    break;
                }
                mobius[ip] = -mobius[i];
            }
        }
        let mut prime_count_prefix = vec![0u32; n + 1];
        let mut count = 0u32;
        let mut next = 0usize;
        for (i, slot) in prime_count_prefix.iter_mut().enumerate() {
            if next < primes.len() && primes[next] as usize == i {
                count += 1;
                next += 1;
            }
            *slot = count;
        }
        SieveCache {
            limit,
            prime_count_prefix,
            mobius,
            primes,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// pi(n); panics if n exceeds the sieved range.
    pub fn prime_count(&self, n: u64) -> u64 {
        self.prime_count_prefix[n as usize] as u64
    }

    /// mu(n); panics if n exceeds the sieved range.
    pub fn mobius(&self, n: u64) -> i8 {
        self.mobius[n as usize]
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
}

fn cap() -> &'static AtomicU64 {
    static CAP: OnceLock<AtomicU64> = OnceLock::new();
    CAP.get_or_init(|| AtomicU64::new(DEFAULT_SIEVE_LIMIT))
}

fn cache() -> &'static RwLock<Arc<SieveCache>> {
    static CACHE: OnceLock<RwLock<Arc<SieveCache>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Arc::new(SieveCache::build(0))))
}

/// Current hard cap on sieve growth.
pub fn sieve_limit() -> u64 {
    cap().load(Ordering::Relaxed)
}

/// Raise or lower the cap. Already-built tables are kept either way.
pub fn set_sieve_limit(limit: u64) {
    cap().store(limit, Ordering::Relaxed);
}

/// Snapshot with limit >= required, growing the shared cache if needed.
pub fn sieve_with_capacity(required: u64) -> Result<Arc<SieveCache>> {
    let current = cache().read().unwrap().clone();
    if current.limit >= required {
        return Ok(current);
    }
    let limit = sieve_limit();
    if required > limit {
        return Err(Error::SieveCapacity { required, limit });
    }
    let mut guard = cache().write().unwrap();
    if guard.limit < required {
        // Double rather than creep so nearby follow-up queries stay cheap.
        let target = required
            .max(guard.limit.saturating_mul(2))
            .max(1024)
            .min(limit);
        *guard = Arc::new(SieveCache::build(target));
    }
    Ok(guard.clone())
}
