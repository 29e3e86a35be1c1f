//! Fixed-point solvers for the n-th member of a predicate's sequence.
//!
//! For a predicate P with complement counter C, the map x -> n + C(x) is
//! nondecreasing and its least fixed point is the n-th member of P.
//! Three ways to find it: function iteration from max(n, hint), bisection
//! after a doubling phase, and a hybrid that runs a few iterations before
//! bisecting. For complements of fast-growing sequences the two-evaluation
//! and one-evaluation shortcuts skip the search entirely, and the
//! interleave engine resolves the answer from any invertible sequence
//! interleaved with the members.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::counting::{CountingFunction, SequenceMap};
use crate::error::{Error, Result};

/// One "find the n-th member" instance: the target index, the counting
/// function of the complement set, and an optional lower bound on the
/// answer (e.g. the k-th primorial when hunting products of k distinct
/// primes).
#[derive(Clone, Debug)]
pub struct FixedPointProblem {
    n: BigUint,
    complement_counter: CountingFunction,
    lower_hint: Option<BigUint>,
}

impl FixedPointProblem {
    pub fn new(n: BigUint, complement_counter: CountingFunction) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::InvalidArgument(
                "fixed-point problem: n must be >= 1".into(),
            ));
        }
        Ok(FixedPointProblem {
            n,
            complement_counter,
            lower_hint: None,
        })
    }

    /// Attach a lower bound on the answer. The caller promises
    /// hint <= f_P(n); the solvers start from max(n, hint).
    pub fn with_lower_hint(mut self, hint: BigUint) -> Self {
        self.lower_hint = Some(hint);
        self
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn complement_counter(&self) -> &CountingFunction {
        &self.complement_counter
    }

    pub fn lower_hint(&self) -> Option<&BigUint> {
        self.lower_hint.as_ref()
    }

    fn start(&self) -> BigUint {
        match &self.lower_hint {
            Some(h) if h > &self.n => h.clone(),
            _ => self.n.clone(),
        }
    }
}

/// Which algorithm produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Iteration,
    Bisection,
    Hybrid,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Iteration => "iterate",
            Method::Bisection => "bisect",
            Method::Hybrid => "hybrid",
            Method::ClosedForm => "closed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Solver result plus the observables behind the method comparison:
/// `steps` counts loop iterations, `g_evaluations` counts calls into the
/// counting function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverReport {
    pub value: BigUint,
    pub steps: u64,
    pub method: Method,
    pub g_evaluations: u64,
}

/// Counting-call meter around one solve.
struct Meter<'a> {
    problem: &'a FixedPointProblem,
    calls: u64,
}

impl<'a> Meter<'a> {
    fn new(problem: &'a FixedPointProblem) -> Self {
        Meter { problem, calls: 0 }
    }

    /// n + C(x), the map whose least fixed point is the answer.
    fn shifted_count(&mut self, x: &BigUint) -> Result<BigUint> {
        self.calls += 1;
        Ok(&self.problem.n + self.problem.complement_counter.eval(x)?)
    }
}

/// Function iteration from max(n, hint): apply x -> n + C(x) until it
/// stalls. Converges to the least fixed point; the trace only climbs.
pub fn solve_iteration(problem: &FixedPointProblem) -> Result<SolverReport> {
    let mut meter = Meter::new(problem);
    let mut x = problem.start();
    let mut steps = 0u64;
    loop {
        let next = meter.shifted_count(&x)?;
        if next == x {
            break;
        }
        debug_assert!(next > x, "iteration must climb");
        x = next;
        steps += 1;
    }
    Ok(SolverReport {
        value: x,
        steps,
        method: Method::Iteration,
        g_evaluations: meter.calls,
    })
}

/// Doubling phase then bisection, returning the least x with
/// n + C(x) <= x.
pub fn solve_bisection(problem: &FixedPointProblem) -> Result<SolverReport> {
    let mut meter = Meter::new(problem);
    let start = problem.start();
    bisect_from(&mut meter, start, 0, Method::Bisection)
}

/// Hybrid: r iterations seed the bracket, then bisection. r = 0 is
/// exactly the bisection solver.
pub fn solve_hybrid(problem: &FixedPointProblem, r: u64) -> Result<SolverReport> {
    let mut meter = Meter::new(problem);
    let mut x = problem.start();
    let mut steps = 0u64;
    for _ in 0..r {
        let next = meter.shifted_count(&x)?;
        if next == x {
            // Already at the fixed point; no bracket needed.
            return Ok(SolverReport {
                value: x,
                steps,
                method: Method::Hybrid,
                g_evaluations: meter.calls,
            });
        }
        x = next;
        steps += 1;
    }
    bisect_from(&mut meter, x, steps, Method::Hybrid)
}

fn bisect_from(
    meter: &mut Meter<'_>,
    seed: BigUint,
    init_steps: u64,
    method: Method,
) -> Result<SolverReport> {
    let mut steps = init_steps;
    let mut lo = seed.clone();
    let mut hi = seed;
    let two = BigUint::from(2u32);
    while meter.shifted_count(&hi)? > hi {
        hi *= &two;
        steps += 1;
    }
    // Invariant from here on: n + C(hi) <= hi, and either lo == hi or
    // n + C(lo) > lo.
    while &hi - &lo > BigUint::one() {
        let mid = (&hi + &lo) / &two;
        if meter.shifted_count(&mid)? <= mid {
            hi = mid;
        } else {
            lo = mid;
        }
        steps += 1;
    }
    Ok(SolverReport {
        value: hi,
        steps,
        method,
        g_evaluations: meter.calls,
    })
}

/// Two-evaluation shortcut, valid when consecutive complement members are
/// at least m apart at index m: the answer is n + C(n + C(n)).
pub fn two_step(n: &BigUint, complement_counter: &CountingFunction) -> Result<BigUint> {
    let inner = n + complement_counter.eval(n)?;
    Ok(n + complement_counter.eval(&inner)?)
}

/// One-evaluation shortcut under the same growth hypothesis: with
/// c = C(n), the answer is n + c, bumped by one exactly when n + c has
/// already reached the (c+1)-th complement member.
pub fn one_step(
    n: &BigUint,
    complement_counter: &CountingFunction,
    members: &SequenceMap,
) -> Result<BigUint> {
    let c = complement_counter.eval(n)?;
    let base = n + &c;
    let next_member = members.eval(&(c + BigUint::one()));
    if base >= next_member {
        Ok(base + BigUint::one())
    } else {
        Ok(base)
    }
}

/// How close the interleaving sequence runs to the members it brackets.
/// `AlphaClose` means member(m) - alpha(m) < m (only the +1/0 outcomes can
/// occur); `AlphaFar` means member(m) - alpha(m) >= m for m > 1 (only the
/// 0/-1 outcomes can occur).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapClass {
    General,
    AlphaClose,
    AlphaFar,
}

/// The data driving the interleave shortcut: the complement members
/// f(m), the floor-inverse h of an interleaving function alpha with
/// f(m-1) <= alpha(m) <= f(m), and the gap class that decides which
/// reduced rule applies.
#[derive(Clone)]
pub struct InterleaveSpec {
    members: SequenceMap,
    alpha_inverse: Arc<dyn Fn(&BigUint) -> BigUint + Send + Sync>,
    gap_class: GapClass,
}

impl fmt::Debug for InterleaveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InterleaveSpec")
            .field("members", &self.members)
            .field("gap_class", &self.gap_class)
            .finish()
    }
}

impl InterleaveSpec {
    pub fn new<H>(members: SequenceMap, gap_class: GapClass, alpha_inverse: H) -> Self
    where
        H: Fn(&BigUint) -> BigUint + Send + Sync + 'static,
    {
        InterleaveSpec {
            members,
            alpha_inverse: Arc::new(alpha_inverse),
            gap_class,
        }
    }

    pub fn members(&self) -> &SequenceMap {
        &self.members
    }

    pub fn alpha_inverse(&self, n: &BigUint) -> BigUint {
        (self.alpha_inverse)(n)
    }

    pub fn gap_class(&self) -> GapClass {
        self.gap_class
    }
}

/// Which arm of the three-branch interleave rule fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterleaveBranch {
    PlusOne,
    Middle,
    MinusOne,
}

/// The full three-branch rule, reporting which branch fired. Used by the
/// branch-exclusion checks; `interleave_solve` is the dispatching entry.
pub fn interleave_branches(n: &BigUint, spec: &InterleaveSpec) -> (BigUint, InterleaveBranch) {
    let h = spec.alpha_inverse(n);
    let base = n + &h;
    if base >= spec.members.eval(&(&h + BigUint::one())) {
        (base + BigUint::one(), InterleaveBranch::PlusOne)
    } else if base <= spec.members.eval(&h) {
        (base - BigUint::one(), InterleaveBranch::MinusOne)
    } else {
        (base, InterleaveBranch::Middle)
    }
}

/// n-th non-member via one evaluation of the interleaving inverse,
/// dispatching to the two-branch reductions when the gap class allows.
pub fn interleave_solve(n: &BigUint, spec: &InterleaveSpec) -> BigUint {
    let h = spec.alpha_inverse(n);
    let base = n + &h;
    match spec.gap_class {
        GapClass::General => interleave_branches(n, spec).0,
        GapClass::AlphaClose => {
            if base >= spec.members.eval(&(&h + BigUint::one())) {
                base + BigUint::one()
            } else {
                base
            }
        }
        GapClass::AlphaFar => {
            if base > spec.members.eval(&h) {
                base
            } else {
                base - BigUint::one()
            }
        }
    }
}
