//! Bernoulli numbers of the second kind and exact Faulhaber evaluation.
//!
//! The table is computed once per process and grown on demand; power-sum
//! evaluation goes through exact rationals and must land on an integer.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact fraction, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Bernoulli numbers of the second kind, indexed 0..=max: value 1 at 0,
/// +1/2 at 1, and 0 at every odd index >= 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, j: usize) -> &Rational {
        &self.values[j]
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }
}

fn memo() -> &'static Mutex<Vec<Rational>> {
    static MEMO: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// The numbers 0..=max_index, from the process-wide memoized prefix.
pub fn bernoulli_table(max_index: usize) -> BernoulliTable {
    let mut cache = memo().lock().unwrap();
    while cache.len() <= max_index {
        let m = cache.len(); // about to compute index m
        // sum_{j=0}^{m} C(m+1, j) B_j = m + 1 pins down B_m.
        let m1 = BigInt::from(m as u64 + 1);
        let mut sum = Rational::zero();
        for (j, b) in cache.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let c = super::binomial(&BigUint::from(m as u64 + 1), j as u64);
            sum += Rational::from_integer(BigInt::from(c)) * b;
        }
        let coeff = Rational::from_integer(m1.clone()); // C(m+1, m) = m+1
        let value = (Rational::from_integer(m1) - sum) / coeff;
        cache.push(value);
    }
    BernoulliTable {
        values: cache[..=max_index].to_vec(),
    }
}

/// The degree-(k+1) power-sum polynomial with denominators cleared:
/// S(k, m) = (sum_j coeffs[j] * m^(k+1-j)) / divisor, exactly.
struct PowerSumPoly {
    coeffs: Vec<BigInt>,
    divisor: BigInt,
}

fn power_sum_poly(k: u32) -> Arc<PowerSumPoly> {
    static POLYS: OnceLock<Mutex<HashMap<u32, Arc<PowerSumPoly>>>> = OnceLock::new();
    let mut cache = POLYS
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .unwrap();
    cache
        .entry(k)
        .or_insert_with(|| {
            let table = bernoulli_table(k as usize);
            let mut scale = BigInt::one();
            for b in table.values() {
                scale = scale.lcm(b.denom());
            }
            let coeffs = table
                .values()
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    let c = super::binomial(&BigUint::from(k as u64 + 1), j as u64);
                    BigInt::from(c) * b.numer() * (&scale / b.denom())
                })
                .collect();
            Arc::new(PowerSumPoly {
                coeffs,
                divisor: scale * BigInt::from(k as u64 + 1),
            })
        })
        .clone()
}

/// Exact power sum 1^k + 2^k + ... + m^k for k >= 1, evaluated through
/// the degree-(k+1) Bernoulli polynomial.
pub fn faulhaber_sum(k: u32, m: &BigUint) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "faulhaber_sum: k must be >= 1".into(),
        ));
    }
    if m.is_zero() {
        return Ok(BigUint::zero());
    }
    let poly = power_sum_poly(k);
    let m_int = BigInt::from(m.clone());
    let mut total = BigInt::zero();
    let k1 = k as u64 + 1;
    for (j, c) in poly.coeffs.iter().enumerate() {
        if !c.is_zero() {
            total += c * m_int.pow((k1 - j as u64) as u32);
        }
    }
    let (value, rem) = total.div_rem(&poly.divisor);
    if !rem.is_zero() || value.is_negative() {
        return Err(Error::Internal(format!(
            "faulhaber_sum({k}, {m}) failed to reduce to a nonnegative integer"
        )));
    }
    Ok(value.to_biguint().unwrap())
}

/// Same as [`faulhaber_sum`] but against a caller-supplied table. Signals
/// an internal fault if the rational total fails to reduce to an integer,
/// which can only mean the table is wrong.
pub fn faulhaber_sum_with(table: &BernoulliTable, k: u32, m: &BigUint) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "faulhaber_sum: k must be >= 1".into(),
        ));
    }
    if table.max_index() < k as usize {
        return Err(Error::InvalidArgument(format!(
            "faulhaber_sum: table only reaches index {}, need {k}",
            table.max_index()
        )));
    }
    if m.is_zero() {
        return Ok(BigUint::zero());
    }
    let m_int = BigInt::from(m.clone());
    let k1 = k as u64 + 1;
    let mut total = Rational::zero();
    for j in 0..=k as u64 {
        let b = table.get(j as usize);
        if b.is_zero() {
            continue;
        }
        let c = super::binomial(&BigUint::from(k1), j);
        let power = m_int.pow((k1 - j) as u32);
        total += Rational::from_integer(BigInt::from(c) * power) * b;
    }
    total /= Rational::from_integer(BigInt::from(k1));
    if !total.is_integer() {
        return Err(Error::Internal(format!(
            "faulhaber_sum({k}, {m}) evaluated to the non-integer {total}"
        )));
    }
    let value = total.to_integer();
    if value.is_negative() {
        return Err(Error::Internal(format!(
            "faulhaber_sum({k}, {m}) evaluated to the negative {value}"
        )));
    }
    Ok(value.to_biguint().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn table_prefix() {
        let t = bernoulli_table(4);
        assert_eq!(t.get(0), &rat(1, 1));
        assert_eq!(t.get(1), &rat(1, 2));
        assert_eq!(t.get(2), &rat(1, 6));
        assert_eq!(t.get(3), &rat(0, 1));
        assert_eq!(t.get(4), &rat(-1, 30));
    }

    #[test]
    fn odd_indices_vanish() {
        let t = bernoulli_table(21);
        for j in (3..=21).step_by(2) {
            assert!(t.get(j).is_zero(), "index {j}");
        }
    }

    #[test]
    fn denominators_positive_and_reduced() {
        let t = bernoulli_table(16);
        for b in t.values() {
            assert!(b.denom().is_positive());
            // BigRational stores reduced form by construction; spot-check.
            let g = num_integer::Integer::gcd(b.numer(), b.denom());
            assert!(g.is_one() || b.numer().is_zero());
        }
    }

    #[test]
    fn power_sums_match_direct_summation() {
        for k in 1..=8u32 {
            let mut direct = BigUint::zero();
            for m in 0..=1000u64 {
                if m > 0 {
                    direct += BigUint::from(m).pow(k);
                }
                assert_eq!(
                    faulhaber_sum(k, &BigUint::from(m)).unwrap(),
                    direct,
                    "k={k} m={m}"
                );
            }
        }
    }

    #[test]
    fn triangular_special_case() {
        for m in 0..200u64 {
            assert_eq!(
                faulhaber_sum(1, &BigUint::from(m)).unwrap(),
                BigUint::from(m * (m + 1) / 2)
            );
        }
    }

    #[test]
    fn specific_values() {
        assert_eq!(faulhaber_sum(2, &BigUint::from(4u32)).unwrap(), BigUint::from(30u32));
        assert_eq!(faulhaber_sum(5, &BigUint::from(0u32)).unwrap(), BigUint::zero());
    }

    #[test]
    fn corrupted_table_is_detected() {
        let mut t = bernoulli_table(3);
        t.values[2] = rat(1, 7); // anything but 1/6
        let err = faulhaber_sum_with(&t, 3, &BigUint::from(10u32)).unwrap_err();
        assert!(matches!(err, Error::Internal(_)));
    }

    #[test]
    fn rejects_k_zero() {
        assert!(faulhaber_sum(0, &BigUint::from(5u32)).is_err());
    }
}
