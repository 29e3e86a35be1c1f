//! Closed-form rules for the n-th member of each supported complementary
//! family (non-squares, non-k-th powers, non-Mersenne numbers, non-powers
//! of k, and the figurate complements), each in O(1) big-integer
//! operations. Every branch condition is evaluated over exact integers
//! with denominators cleared; no comparison ever touches a float.
//!
//! Each family also exposes its member sequence, member counter,
//! membership test and interleave data so the solvers and the
//! verification suite can cross-check the formulas.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::counting::{self, CountingFunction, SequenceMap};
use crate::error::{Error, Result};
use crate::intmath;
use crate::oracle;
use crate::solver::{GapClass, InterleaveSpec};

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// n-th positive integer that is not a k-th power (k >= 2).
pub fn non_kth_power(n: &BigUint, k: u32) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "non_kth_power: k must be >= 2".into(),
        ));
    }
    let r = intmath::iroot(n, k)?;
    let base = n + &r;
    if base >= (&r + BigUint::one()).pow(k) {
        Ok(base + BigUint::one())
    } else {
        Ok(base)
    }
}

/// n-th nonsquare as n + floor(sqrt(n) + 1/2).
pub fn nonsquare_halfstep(n: &BigUint) -> BigUint {
    // floor(sqrt(n) + 1/2) = floor((floor(sqrt(4n)) + 1) / 2)
    let m = (intmath::isqrt(&(n * 4u32)) + BigUint::one()) / big(2);
    n + m
}

/// n-th nonsquare as n + floor(sqrt(n + floor(sqrt(n)))).
pub fn nonsquare_nested(n: &BigUint) -> BigUint {
    n + intmath::isqrt(&(n + intmath::isqrt(n)))
}

/// n-th nonsquare; all three published forms are evaluated and must agree.
pub fn nonsquare_classic(n: &BigUint) -> Result<BigUint> {
    let a = nonsquare_halfstep(n);
    let b = nonsquare_nested(n);
    let c = non_kth_power(n, 2)?;
    assert!(a == b && b == c, "nonsquare forms disagree at n = {n}");
    Ok(a)
}

/// n-th number not of the form 2^p - 1 with p prime, for n >= 2.
///
/// This is the one-evaluation shortcut with s = the number of such
/// exclusions <= n, i.e. pi(floor(log2(n + 1))).
pub fn non_mersenne(n: &BigUint) -> Result<BigUint> {
    if *n < big(2) {
        return Err(Error::InvalidArgument("non_mersenne: n must be >= 2".into()));
    }
    let exponent_bound = intmath::ilog(&(n + BigUint::one()), 2)?;
    let s = counting::count_primes(&big(exponent_bound))?;
    let s_u64 = s.to_u64().expect("mersenne count is tiny");
    let next_exp = intmath::nth_prime(s_u64 + 1);
    let threshold = big(2).pow(next_exp as u32);
    if n + BigUint::one() + &s >= threshold {
        Ok(n + s + BigUint::one())
    } else {
        Ok(n + s)
    }
}

/// n-th positive integer not a power of k (k >= 2); note 1 = k^0 counts
/// as a power and is excluded.
pub fn non_power_of_k(n: &BigUint, k: u32) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "non_power_of_k: k must be >= 2".into(),
        ));
    }
    let e = intmath::ilog(n, k)?;
    let base = n + BigUint::one() + big(e);
    if base >= BigUint::from(k).pow(e as u32 + 1) {
        Ok(base + BigUint::one())
    } else {
        Ok(base)
    }
}

fn kgonal_member(k: u32, m: &BigUint) -> BigUint {
    if m.is_zero() {
        return BigUint::zero();
    }
    big(k as u64 - 2) * m * (m - BigUint::one()) / big(2) + m
}

/// n-th positive non-k-gonal number (k >= 3).
pub fn non_kgonal(n: &BigUint, k: u32) -> Result<BigUint> {
    if k < 3 {
        return Err(Error::InvalidArgument(
            "non_kgonal: k must be >= 3 (every integer is 2-gonal)".into(),
        ));
    }
    let km2 = big(k as u64 - 2);
    let m = intmath::isqrt(&(n * 2u32 / &km2));
    let value = if n * 2u32 > &km2 * &m * (&m + BigUint::one()) {
        n + &m + BigUint::one()
    } else {
        n + &m
    };
    if (3..=10).contains(&k) {
        // Half-step form, exact: floor(sqrt(2n/(k-2)) + 1/2).
        let s = intmath::isqrt(&(n * 8u32 / &km2));
        let rounded = (s + BigUint::one()) / big(2);
        let simplified = n + rounded;
        assert_eq!(
            value, simplified,
            "k-gonal forms disagree at n = {n}, k = {k}"
        );
    }
    Ok(value)
}

/// n-th nonnegative non-centered-k-gonal number (k >= 3). The members are
/// indexed from 0, so this returns 0 at n = 1 and the positive
/// non-members from n = 2 on.
pub fn non_centered_kgonal(n: &BigUint, k: u32) -> Result<BigUint> {
    if k < 3 {
        return Err(Error::InvalidArgument(
            "non_centered_kgonal: k must be >= 3".into(),
        ));
    }
    let m = intmath::isqrt(&(n * 2u32 / big(k as u64)));
    let base = n + &m; // >= 1
    if (&base - BigUint::one()) * 2u32 > big(k as u64) * &m * (&m + BigUint::one()) {
        Ok(base)
    } else {
        Ok(base - BigUint::one())
    }
}

fn pyramidal_k_range(k: u32, conjectural: bool) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidArgument(
            "non_kgonal_pyramidal: k must be >= 3".into(),
        ));
    }
    if k > 8 && !conjectural {
        return Err(Error::UnprovenParameter {
            family: "non-kgonal-pyramidal",
            k,
            proven_min: 3,
            proven_max: 8,
        });
    }
    Ok(())
}

fn pyramidal_root(n: &BigUint, k: u32) -> Result<BigUint> {
    intmath::iroot(&(n * 6u32 / big(k as u64 - 2)), 3)
}

fn pyramidal_lower_rhs(h: &BigUint, k: u32) -> BigUint {
    if h.is_zero() {
        return BigUint::zero();
    }
    h * (h - BigUint::one()) * (h * big(k as u64 - 2) + big(k as u64 + 1))
}

/// n-th positive non-k-gonal-pyramidal number via the three-branch rule,
/// proven for 3 <= k <= 8. Parameters k >= 9 are conjectural and need the
/// explicit opt-in.
pub fn non_kgonal_pyramidal(n: &BigUint, k: u32, conjectural: bool) -> Result<BigUint> {
    pyramidal_k_range(k, conjectural)?;
    let h = pyramidal_root(n, k)?;
    let six_n = n * 6u32;
    let k64 = k as u64;
    let upper_rhs = h.pow(3) * big(k64 - 2)
        + h.pow(2) * big(3 * (k64 - 1))
        + &h * big(2 * k64 - 1)
        + big(6);
    let value = if six_n >= upper_rhs {
        n + &h + BigUint::one()
    } else if six_n <= pyramidal_lower_rhs(&h, k) {
        n + &h - BigUint::one()
    } else {
        n + &h
    };
    if (3..=5).contains(&k) {
        let reduced = non_kgonal_pyramidal_two_branch(n, k)?;
        assert_eq!(
            value, reduced,
            "pyramidal forms disagree at n = {n}, k = {k}"
        );
    }
    Ok(value)
}

/// The two-branch reduction of the pyramidal rule, valid for 3 <= k <= 8.
pub fn non_kgonal_pyramidal_two_branch(n: &BigUint, k: u32) -> Result<BigUint> {
    if !(3..=8).contains(&k) {
        return Err(Error::InvalidArgument(
            "non_kgonal_pyramidal_two_branch: k must be in 3..=8".into(),
        ));
    }
    let h = pyramidal_root(n, k)?;
    if n * 6u32 <= pyramidal_lower_rhs(&h, k) {
        Ok(n + &h - BigUint::one())
    } else {
        Ok(n + &h)
    }
}

/// n-th positive integer that is not 1^k + 2^k + ... + m^k for any m
/// (k >= 2). The branch comparison happens at the (k+1)-scaled level so
/// the Bernoulli-polynomial side stays integral.
pub fn non_sum_of_kth_powers(n: &BigUint, k: u32) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "non_sum_of_kth_powers: k must be >= 2".into(),
        ));
    }
    let k1 = big(k as u64 + 1);
    let h = intmath::iroot(&(&k1 * n), k + 1)?;
    let lhs = &k1 * (n + &h);
    let rhs = &k1 * intmath::faulhaber_sum(k, &h)?;
    if lhs > rhs {
        Ok(n + &h)
    } else {
        Ok(n + &h - BigUint::one())
    }
}

fn factorial_u64(k: u32) -> u64 {
    (1..=k as u64).product::<u64>().max(1)
}

/// n-th positive integer that is not a k-simplex number C(m+k-1, k),
/// for 2 <= k <= 15.
pub fn non_ksimplex(n: &BigUint, k: u32) -> Result<BigUint> {
    if !(2..=15).contains(&k) {
        return Err(Error::UnprovenParameter {
            family: "non-ksimplex",
            k,
            proven_min: 2,
            proven_max: 15,
        });
    }
    let fl = big(k as u64 / 2);
    let ce = big(k as u64 - k as u64 / 2);
    let q = intmath::iroot(&(n * big(factorial_u64(k))), k)?;
    let s = n + &q; // >= fl for every n >= 1, k <= 15
    let value = if &s + BigUint::one() - &fl >= intmath::binomial(&(&q + &ce + BigUint::one()), k as u64)
    {
        &s + big(2) - &fl
    } else if &s - &fl < intmath::binomial(&(&q + &ce), k as u64) {
        &s - &fl
    } else {
        &s + BigUint::one() - &fl
    };
    if k == 3 {
        // One-cube-root reduction for the tetrahedral complement.
        let q3 = intmath::iroot(&(n * 6u32), 3)?;
        let base = n + &q3;
        let reduced = if base > intmath::binomial(&(&q3 + big(2)), 3) {
            base
        } else {
            base - BigUint::one()
        };
        assert_eq!(value, reduced, "simplex forms disagree at n = {n}");
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// Family catalog
// ---------------------------------------------------------------------------

/// The complementary families with closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    NonsquareClassic,
    NonKthPower,
    NonMersenne,
    NonPowerOfK,
    NonKgonal,
    NonCenteredKgonal,
    NonKgonalPyramidal,
    NonSumOfKthPowers,
    NonKsimplex,
}

impl Family {
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::NonsquareClassic => "nonsquare",
            Family::NonKthPower => "non-kth-power",
            Family::NonMersenne => "non-mersenne",
            Family::NonPowerOfK => "non-power-of-k",
            Family::NonKgonal => "non-kgonal",
            Family::NonCenteredKgonal => "non-centered-kgonal",
            Family::NonKgonalPyramidal => "non-kgonal-pyramidal",
            Family::NonSumOfKthPowers => "non-sum-of-kth-powers",
            Family::NonKsimplex => "non-ksimplex",
        }
    }

    pub fn requires_k(self) -> bool {
        !matches!(self, Family::NonsquareClassic | Family::NonMersenne)
    }

    /// Proven parameter range (min, max); max = None means every k above
    /// the minimum is covered by the theorems.
    pub fn proven_k_range(self) -> Option<(u32, Option<u32>)> {
        match self {
            Family::NonsquareClassic | Family::NonMersenne => None,
            Family::NonKthPower => Some((2, None)),
            Family::NonPowerOfK => Some((2, None)),
            Family::NonKgonal => Some((3, None)),
            Family::NonCenteredKgonal => Some((3, None)),
            Family::NonKgonalPyramidal => Some((3, Some(8))),
            Family::NonSumOfKthPowers => Some((2, None)),
            Family::NonKsimplex => Some((2, Some(15))),
        }
    }

    pub fn all() -> &'static [Family] {
        &[
            Family::NonsquareClassic,
            Family::NonKthPower,
            Family::NonMersenne,
            Family::NonPowerOfK,
            Family::NonKgonal,
            Family::NonCenteredKgonal,
            Family::NonKgonalPyramidal,
            Family::NonSumOfKthPowers,
            Family::NonKsimplex,
        ]
    }
}

/// A validated (family, parameter) pair ready to evaluate, with its
/// member sequence, counter, membership test and interleave data.
#[derive(Debug, Clone)]
pub struct FamilyFormula {
    family: Family,
    k: Option<u32>,
    conjectural: bool,
}

impl FamilyFormula {
    pub fn new(family: Family, k: Option<u32>) -> Result<Self> {
        Self::build(family, k, false)
    }

    /// Like [`FamilyFormula::new`] but allowing the pyramidal rule beyond
    /// its proven k <= 8 range; outputs there are unproven.
    pub fn new_conjectural(family: Family, k: Option<u32>) -> Result<Self> {
        Self::build(family, k, true)
    }

    fn build(family: Family, k: Option<u32>, conjectural: bool) -> Result<Self> {
        match (family.proven_k_range(), k) {
            (None, Some(_)) => Err(Error::InvalidArgument(format!(
                "{} takes no k parameter",
                family.cli_name()
            ))),
            (None, None) => Ok(FamilyFormula {
                family,
                k: None,
                conjectural: false,
            }),
            (Some(_), None) => Err(Error::InvalidArgument(format!(
                "{} requires a k parameter",
                family.cli_name()
            ))),
            (Some((min, max)), Some(k)) => {
                if k < min {
                    return Err(Error::InvalidArgument(format!(
                        "{}: k must be >= {min}",
                        family.cli_name()
                    )));
                }
                if let Some(max) = max {
                    if k > max {
                        let escape_hatch = family == Family::NonKgonalPyramidal;
                        if !(conjectural && escape_hatch) {
                            return Err(Error::UnprovenParameter {
                                family: family.cli_name(),
                                k,
                                proven_min: min,
                                proven_max: max,
                            });
                        }
                    }
                }
                Ok(FamilyFormula {
                    family,
                    k: Some(k),
                    conjectural: conjectural && family == Family::NonKgonalPyramidal,
                })
            }
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn k(&self) -> Option<u32> {
        self.k
    }

    /// True when the parameter sits outside the proven range and the
    /// output rests on the unproven extension.
    pub fn is_conjectural(&self) -> bool {
        self.conjectural && self.k.map_or(false, |k| k > 8)
    }

    /// Smallest valid index (the non-Mersenne rule starts at n = 2).
    pub fn valid_n_from(&self) -> u64 {
        match self.family {
            Family::NonMersenne => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> String {
        match self.k {
            Some(k) => format!("{}(k={k})", self.family.cli_name()),
            None => self.family.cli_name().to_string(),
        }
    }

    pub fn eval(&self, n: &BigUint) -> Result<BigUint> {
        let k = self.k.unwrap_or(0);
        match self.family {
            Family::NonsquareClassic => nonsquare_classic(n),
            Family::NonKthPower => non_kth_power(n, k),
            Family::NonMersenne => non_mersenne(n),
            Family::NonPowerOfK => non_power_of_k(n, k),
            Family::NonKgonal => non_kgonal(n, k),
            Family::NonCenteredKgonal => non_centered_kgonal(n, k),
            Family::NonKgonalPyramidal => non_kgonal_pyramidal(n, k, self.conjectural),
            Family::NonSumOfKthPowers => non_sum_of_kth_powers(n, k),
            Family::NonKsimplex => non_ksimplex(n, k),
        }
    }

    /// The excluded set as a 1-indexed strictly increasing sequence
    /// (index 0 maps below the first member for search convenience).
    pub fn member_sequence(&self) -> SequenceMap {
        let k = self.k.unwrap_or(0);
        match self.family {
            Family::NonsquareClassic => SequenceMap::from_fn("squares", |m| m * m),
            Family::NonKthPower => {
                SequenceMap::from_fn(format!("{k}th-powers"), move |m| m.pow(k))
            }
            Family::NonMersenne => SequenceMap::from_fn("mersenne-numbers", |m| {
                let m = m.to_u64().expect("mersenne index is small");
                if m == 0 {
                    return BigUint::zero();
                }
                big(2).pow(intmath::nth_prime(m) as u32) - BigUint::one()
            }),
            Family::NonPowerOfK => SequenceMap::from_fn(format!("powers-of-{k}"), move |m| {
                if m.is_zero() {
                    return BigUint::zero();
                }
                let e = (m - BigUint::one()).to_u32().expect("exponent is small");
                BigUint::from(k).pow(e)
            }),
            Family::NonKgonal => {
                SequenceMap::from_fn(format!("{k}-gonal"), move |m| kgonal_member(k, m))
            }
            Family::NonCenteredKgonal => {
                // Sorted members 1, k+1, 3k+1, ... (the paper indexes these
                // from 0; as a 1-indexed sequence f(m) = k(m-1)m/2 + 1).
                SequenceMap::from_fn(format!("centered-{k}-gonal"), move |m| {
                    if m.is_zero() {
                        return BigUint::zero();
                    }
                    big(k as u64) * (m - BigUint::one()) * m / big(2) + BigUint::one()
                })
            }
            Family::NonKgonalPyramidal => {
                SequenceMap::from_fn(format!("{k}-gonal-pyramidal"), move |m| {
                    if m.is_zero() {
                        return BigUint::zero();
                    }
                    let inner = m * big(k as u64 - 2) + big(5) - big(k as u64);
                    m * (m + BigUint::one()) * inner / big(6)
                })
            }
            Family::NonSumOfKthPowers => {
                SequenceMap::from_fn(format!("sums-of-{k}th-powers"), move |m| {
                    intmath::faulhaber_sum(k, m).expect("power sum of valid k")
                })
            }
            Family::NonKsimplex => SequenceMap::from_fn(format!("{k}-simplex"), move |m| {
                intmath::binomial(&(m + big(k as u64 - 1)), k as u64)
            }),
        }
    }

    /// Counting function of the excluded set.
    pub fn member_counting(&self) -> CountingFunction {
        let k = self.k.unwrap_or(0);
        match self.family {
            Family::NonsquareClassic => counting::squares(),
            Family::NonKthPower => counting::kth_powers(k),
            Family::NonMersenne => counting::mersenne_numbers(),
            Family::NonPowerOfK => counting::powers_of(k),
            // The figurate members are counted by inverting the closed
            // sequence with a bisection search.
            _ => counting::from_closed_sequence(self.member_sequence()),
        }
    }

    /// Naive membership test of the excluded set, for oracle use only.
    pub fn member_predicate(&self) -> oracle::Predicate {
        let k = self.k.unwrap_or(0);
        match self.family {
            Family::NonsquareClassic => oracle::square_predicate(),
            Family::NonKthPower => oracle::kth_power_predicate(k),
            Family::NonMersenne => oracle::mersenne_predicate(),
            Family::NonPowerOfK => oracle::power_of_predicate(k as u64),
            Family::NonKgonal => oracle::kgonal_predicate(k),
            Family::NonCenteredKgonal => oracle::centered_kgonal_predicate(k),
            Family::NonKgonalPyramidal => oracle::kgonal_pyramidal_predicate(k),
            Family::NonSumOfKthPowers => oracle::sum_of_kth_powers_predicate(k),
            Family::NonKsimplex => oracle::ksimplex_predicate(k),
        }
    }

    /// The interleave data behind each formula, where one exists. The
    /// k-th-power, power-of-k, Mersenne and nonsquare rules ride an exact
    /// inverse (the interleaving function IS the member sequence), the
    /// others the alpha functions from the derivations.
    pub fn interleave_spec(&self) -> Option<InterleaveSpec> {
        let k = self.k.unwrap_or(0);
        let members = self.paper_indexed_members();
        match self.family {
            Family::NonsquareClassic => Some(InterleaveSpec::new(
                members,
                GapClass::AlphaClose,
                |n| intmath::isqrt(n),
            )),
            Family::NonKthPower => Some(InterleaveSpec::new(
                members,
                GapClass::AlphaClose,
                move |n| intmath::iroot(n, k).expect("k >= 2"),
            )),
            Family::NonMersenne => Some(InterleaveSpec::new(
                members,
                GapClass::AlphaClose,
                |n| {
                    let e = intmath::ilog(&(n + BigUint::one()), 2).expect("n >= 1");
                    counting::count_primes(&big(e)).expect("tiny sieve")
                },
            )),
            Family::NonPowerOfK => Some(InterleaveSpec::new(
                members,
                GapClass::AlphaClose,
                move |n| big(intmath::ilog(n, k).expect("n >= 1") + 1),
            )),
            Family::NonKgonal => Some(InterleaveSpec::new(members, GapClass::AlphaFar, move |n| {
                intmath::isqrt(&(n * 2u32 / big(k as u64 - 2))) + BigUint::one()
            })),
            Family::NonCenteredKgonal => {
                Some(InterleaveSpec::new(members, GapClass::AlphaFar, move |n| {
                    intmath::isqrt(&(n * 2u32 / big(k as u64)))
                }))
            }
            Family::NonKgonalPyramidal => {
                let class = if k <= 5 { GapClass::AlphaFar } else { GapClass::General };
                Some(InterleaveSpec::new(members, class, move |n| {
                    pyramidal_root(n, k).expect("k >= 3")
                }))
            }
            Family::NonSumOfKthPowers => {
                Some(InterleaveSpec::new(members, GapClass::AlphaFar, move |n| {
                    intmath::iroot(&(n * big(k as u64 + 1)), k + 1).expect("k >= 2")
                }))
            }
            Family::NonKsimplex => Some(InterleaveSpec::new(members, GapClass::General, move |n| {
                let q = intmath::iroot(&(n * big(factorial_u64(k))), k).expect("k >= 2");
                q + BigUint::one() - big(k as u64 / 2)
            })),
        }
    }

    /// Member sequence under the indexing the interleave rules expect.
    /// Only the centered family differs: its members are indexed from 0,
    /// so eval(m) there is the (m+1)-th sorted member.
    fn paper_indexed_members(&self) -> SequenceMap {
        let k = self.k.unwrap_or(0);
        match self.family {
            Family::NonCenteredKgonal => {
                SequenceMap::from_fn(format!("centered-{k}-gonal"), move |m| {
                    big(k as u64) * m * (m + BigUint::one()) / big(2) + BigUint::one()
                })
            }
            _ => self.member_sequence(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{nth_by_enumeration, Predicate};
    use crate::solver::{interleave_solve, one_step, two_step};

    /// n-th positive non-member by brute enumeration.
    fn oracle_nth(pred: &Predicate, n: u64) -> BigUint {
        nth_by_enumeration(&pred.complement(), n)
    }

    #[test]
    fn kth_power_values() {
        assert_eq!(non_kth_power(&big(3), 2).unwrap(), big(5));
        assert_eq!(non_kth_power(&big(7), 3).unwrap(), big(9));
        for k in 2..=6 {
            assert_eq!(non_kth_power(&big(1), k).unwrap(), big(2), "k={k}");
        }
        assert!(non_kth_power(&big(5), 1).is_err());
    }

    #[test]
    fn nonsquare_values() {
        assert_eq!(nonsquare_classic(&big(1)).unwrap(), big(2));
        assert_eq!(nonsquare_classic(&big(10)).unwrap(), big(13));
        let expect = oracle_nth(&oracle::square_predicate(), 1000);
        assert_eq!(nonsquare_classic(&big(1000)).unwrap(), expect);
    }

    #[test]
    fn non_mersenne_values() {
        assert_eq!(non_mersenne(&big(2)).unwrap(), big(2));
        assert_eq!(non_mersenne(&big(3)).unwrap(), big(4));
        let expect = oracle_nth(&oracle::mersenne_predicate(), 8);
        assert_eq!(non_mersenne(&big(8)).unwrap(), expect);
        assert!(non_mersenne(&big(1)).is_err());
    }

    #[test]
    fn non_mersenne_matches_oracle_closely() {
        // The +1 branch must skip exactly over each excluded 2^p - 1.
        let pred = oracle::mersenne_predicate().complement();
        let mut seq = oracle::EnumeratedSequence::new(pred);
        for n in 2..=4000u64 {
            assert_eq!(non_mersenne(&big(n)).unwrap(), seq.nth(n), "n={n}");
        }
    }

    #[test]
    fn non_power_of_k_values() {
        assert_eq!(non_power_of_k(&big(1), 2).unwrap(), big(3));
        assert_eq!(non_power_of_k(&big(5), 2).unwrap(), big(9));
        assert_eq!(non_power_of_k(&big(1), 10).unwrap(), big(2));
        assert!(non_power_of_k(&big(5), 1).is_err());
    }

    #[test]
    fn non_kgonal_values() {
        assert_eq!(non_kgonal(&big(1), 5).unwrap(), big(2));
        assert_eq!(non_kgonal(&big(3), 3).unwrap(), big(5));
        let expect = oracle_nth(&oracle::kgonal_predicate(4), 4);
        assert_eq!(non_kgonal(&big(4), 4).unwrap(), expect);
        assert!(non_kgonal(&big(1), 2).is_err());
    }

    #[test]
    fn non_centered_kgonal_values() {
        assert_eq!(non_centered_kgonal(&big(1), 3).unwrap(), BigUint::zero());
        assert_eq!(non_centered_kgonal(&big(2), 3).unwrap(), big(2));
        // 5th nonnegative non-member for k = 4 is the 4th positive one.
        let expect = oracle_nth(&oracle::centered_kgonal_predicate(4), 4);
        assert_eq!(non_centered_kgonal(&big(5), 4).unwrap(), expect);
    }

    #[test]
    fn pyramidal_values() {
        assert_eq!(non_kgonal_pyramidal(&big(1), 3, false).unwrap(), big(2));
        let expect = oracle_nth(&oracle::kgonal_pyramidal_predicate(4), 3);
        assert_eq!(non_kgonal_pyramidal(&big(3), 4, false).unwrap(), expect);
        assert_eq!(expect, big(4));
        // Pentagonal-pyramidal special case: h = cbrt(2n), and the branch
        // written with the condition flipped.
        for n in 1..=400u64 {
            let h = intmath::iroot(&big(2 * n), 3).unwrap();
            let special = if big(2 * n) > &h * (&h - BigUint::one()) * (&h + big(2)) {
                big(n) + &h
            } else {
                big(n) + &h - BigUint::one()
            };
            assert_eq!(non_kgonal_pyramidal(&big(n), 5, false).unwrap(), special);
        }
    }

    #[test]
    fn pyramidal_k_gating() {
        assert!(matches!(
            non_kgonal_pyramidal(&big(5), 9, false),
            Err(Error::UnprovenParameter { .. })
        ));
        assert!(non_kgonal_pyramidal(&big(5), 9, true).is_ok());
        assert!(non_kgonal_pyramidal(&big(5), 2, false).is_err());
    }

    #[test]
    fn sum_of_kth_powers_values() {
        assert_eq!(non_sum_of_kth_powers(&big(5), 2).unwrap(), big(7));
        assert_eq!(non_sum_of_kth_powers(&big(1), 2).unwrap(), big(2));
        assert_eq!(non_sum_of_kth_powers(&big(1), 3).unwrap(), big(2));
        assert!(non_sum_of_kth_powers(&big(1), 1).is_err());
        // Square-pyramidal special case from the k = 2 reduction.
        for n in 1..=400u64 {
            let h = intmath::iroot(&big(3 * n), 3).unwrap();
            let cond = big(6 * n)
                > &h * (&h - BigUint::one()) * (&h * big(2) + big(5));
            let special = if cond {
                big(n) + &h
            } else {
                big(n) + &h - BigUint::one()
            };
            assert_eq!(non_sum_of_kth_powers(&big(n), 2).unwrap(), special, "n={n}");
        }
    }

    #[test]
    fn simplex_values() {
        assert_eq!(non_ksimplex(&big(4), 3).unwrap(), big(6));
        assert_eq!(non_ksimplex(&big(1), 2).unwrap(), big(2));
        let expect = oracle_nth(&oracle::ksimplex_predicate(4), 10);
        assert_eq!(non_ksimplex(&big(10), 4).unwrap(), expect);
        assert!(non_ksimplex(&big(1), 1).is_err());
        assert!(matches!(
            non_ksimplex(&big(1), 16),
            Err(Error::UnprovenParameter { .. })
        ));
    }

    #[test]
    fn simplex_small_n_large_k() {
        // The root can undershoot floor(k/2) at tiny n; these must still
        // be exact.
        for k in 10..=15u32 {
            let pred = oracle::ksimplex_predicate(k);
            for n in 1..=50u64 {
                assert_eq!(
                    non_ksimplex(&big(n), k).unwrap(),
                    oracle_nth(&pred, n),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn cross_formula_consistency() {
        for n in 1..=2000u64 {
            let n = big(n);
            let a = non_kgonal(&n, 4).unwrap();
            let b = nonsquare_classic(&n).unwrap();
            let c = non_kth_power(&n, 2).unwrap();
            assert!(a == b && b == c, "nonsquare mismatch at {n}");
            assert_eq!(non_kgonal(&n, 3).unwrap(), non_ksimplex(&n, 2).unwrap());
        }
    }

    #[test]
    fn formulas_match_oracle_sampled() {
        let cases: Vec<FamilyFormula> = vec![
            FamilyFormula::new(Family::NonKthPower, Some(3)).unwrap(),
            FamilyFormula::new(Family::NonPowerOfK, Some(3)).unwrap(),
            FamilyFormula::new(Family::NonKgonal, Some(6)).unwrap(),
            FamilyFormula::new(Family::NonKgonalPyramidal, Some(7)).unwrap(),
            FamilyFormula::new(Family::NonSumOfKthPowers, Some(3)).unwrap(),
            FamilyFormula::new(Family::NonKsimplex, Some(5)).unwrap(),
        ];
        for formula in cases {
            let pred = formula.member_predicate();
            let mut seq = oracle::EnumeratedSequence::new(pred.complement());
            for n in 1..=500u64 {
                assert_eq!(
                    formula.eval(&big(n)).unwrap(),
                    seq.nth(n),
                    "{} at n={n}",
                    formula.name()
                );
            }
        }
    }

    #[test]
    fn membership_soundness_and_gaps() {
        let formula = FamilyFormula::new(Family::NonKgonal, Some(5)).unwrap();
        let pred = formula.member_predicate();
        let mut last = BigUint::zero();
        for n in 1..=500u64 {
            let v = formula.eval(&big(n)).unwrap();
            assert!(!pred.test(v.to_u64().unwrap()), "output {v} is a member");
            assert!(v > last, "outputs must strictly increase");
            // Every integer skipped between consecutive outputs is a member.
            let mut skipped = &last + BigUint::one();
            while skipped < v {
                assert!(pred.test(skipped.to_u64().unwrap()), "{skipped} skipped wrongly");
                skipped += BigUint::one();
            }
            last = v;
        }
    }

    #[test]
    fn one_and_two_step_match_formulas() {
        let formulas = vec![
            FamilyFormula::new(Family::NonKthPower, Some(2)).unwrap(),
            FamilyFormula::new(Family::NonKgonal, Some(5)).unwrap(),
            FamilyFormula::new(Family::NonCenteredKgonal, Some(3)).unwrap(),
            FamilyFormula::new(Family::NonSumOfKthPowers, Some(2)).unwrap(),
            FamilyFormula::new(Family::NonKsimplex, Some(3)).unwrap(),
            FamilyFormula::new(Family::NonMersenne, None).unwrap(),
        ];
        for formula in formulas {
            let counter = formula.member_counting();
            let members = formula.member_sequence();
            let offset = if formula.family() == Family::NonCenteredKgonal { 1 } else { 0 };
            for n in formula.valid_n_from()..=300 {
                let expect = formula.eval(&big(n + offset)).unwrap();
                assert_eq!(
                    two_step(&big(n), &counter).unwrap(),
                    expect,
                    "{} two_step n={n}",
                    formula.name()
                );
                assert_eq!(
                    one_step(&big(n), &counter, &members).unwrap(),
                    expect,
                    "{} one_step n={n}",
                    formula.name()
                );
            }
        }
    }

    #[test]
    fn interleave_specs_reproduce_formulas() {
        let formulas = vec![
            FamilyFormula::new(Family::NonKthPower, Some(3)).unwrap(),
            FamilyFormula::new(Family::NonKgonal, Some(7)).unwrap(),
            FamilyFormula::new(Family::NonCenteredKgonal, Some(4)).unwrap(),
            FamilyFormula::new(Family::NonKgonalPyramidal, Some(6)).unwrap(),
            FamilyFormula::new(Family::NonSumOfKthPowers, Some(4)).unwrap(),
            FamilyFormula::new(Family::NonKsimplex, Some(9)).unwrap(),
            FamilyFormula::new(Family::NonMersenne, None).unwrap(),
        ];
        for formula in formulas {
            let spec = formula.interleave_spec().unwrap();
            for n in formula.valid_n_from()..=500 {
                assert_eq!(
                    interleave_solve(&big(n), &spec),
                    formula.eval(&big(n)).unwrap(),
                    "{} at n={n}",
                    formula.name()
                );
            }
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilyFormula::new(Family::NonsquareClassic, Some(2)).is_err());
        assert!(FamilyFormula::new(Family::NonKgonal, None).is_err());
        assert!(FamilyFormula::new(Family::NonKgonalPyramidal, Some(9)).is_err());
        let c = FamilyFormula::new_conjectural(Family::NonKgonalPyramidal, Some(9)).unwrap();
        assert!(c.is_conjectural());
        let proven = FamilyFormula::new_conjectural(Family::NonKgonalPyramidal, Some(5)).unwrap();
        assert!(!proven.is_conjectural());
        assert!(FamilyFormula::new_conjectural(Family::NonKsimplex, Some(16)).is_err());
    }
}
