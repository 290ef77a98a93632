//! Inhomogeneous approximation `|nθ − p − β| ≤ f(B)/(2N)` with `0 ≤ n ≤ N`,
//! found by locating `β` among the sorted points of the gap set.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::cf::ContinuedFraction;
use crate::decimal;
use crate::error::{domain, Result};
use crate::three_gap::{f_closed, gap_set, gap_set_with_radius, GapSet};
use crate::QuadraticNumber;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerSolution {
    pub n: u64,
    pub p: BigInt,
    /// `|nθ* − p − β|` under the surrogate.
    pub achieved_error: BigRational,
    /// Certified bound on the difference between the surrogate error and the
    /// true error `|nθ − p − β|`.
    pub radius: BigRational,
    /// `f(B)/(2N)`.
    pub bound: QuadraticNumber,
    /// `(B+2)N²`, the older index bound for accuracy `1/N`.
    pub legacy_bound: BigInt,
}

impl KroneckerSolution {
    /// `achieved_error + radius ≤ bound`, so the true error is within the
    /// bound; decided exactly.
    pub fn within_bound(&self) -> bool {
        QuadraticNumber::from_ratio(&self.achieved_error + &self.radius) <= self.bound
    }

    /// Ratio of the achieved error to the bound, for reporting how close the
    /// bound is to being attained.
    pub fn tightness(&self) -> f64 {
        self.achieved_error.to_f64().unwrap_or(f64::NAN) / self.bound.to_f64()
    }

    pub fn report(&self, sig: usize) -> KroneckerReport {
        KroneckerReport {
            n: self.n,
            p: self.p.to_string(),
            error: decimal::format_sig(&self.achieved_error, sig),
            bound: self.bound.to_decimal(sig),
            legacy_bound: self.legacy_bound.to_string(),
            within_bound: self.within_bound(),
        }
    }
}

/// JSON form of a [`KroneckerSolution`].
#[derive(Clone, Debug, Serialize)]
pub struct KroneckerReport {
    pub n: u64,
    pub p: String,
    pub error: String,
    pub bound: String,
    pub legacy_bound: String,
    pub within_bound: bool,
}

/// `(B+2)N²`.
pub fn legacy_bound(b: u64, n: u64) -> Result<BigInt> {
    if b == 0 || n == 0 {
        return domain("B and N must be at least 1");
    }
    let nn = BigInt::from(n);
    Ok(BigInt::from(b + 2) * &nn * &nn)
}

pub fn solve(cf: &ContinuedFraction, beta: &BigRational, n: u64) -> Result<KroneckerSolution> {
    check_inputs(cf, beta)?;
    let b = cf.bound().max(1);
    let mut gs = gap_set(cf, n)?;
    // deepen until the nearer bracketing endpoint is the same under θ and θ*
    loop {
        let (_, margin) = nearest(&gs, beta);
        let radius = gs.radius();
        if gs.surrogate().is_exact() || margin > &radius * BigRational::from_integer(BigInt::from(2)) {
            break;
        }
        let tighter = radius / BigRational::from_integer(BigInt::one() << 64);
        gs = gap_set_with_radius(cf, n, Some(&tighter))?;
    }
    solve_with(&gs, b, beta)
}

fn check_inputs(cf: &ContinuedFraction, beta: &BigRational) -> Result<()> {
    if beta.is_negative() || beta >= &BigRational::one() {
        return domain(format!("β = {beta} lies outside [0, 1)"));
    }
    if cf.a0() != 0 {
        return domain("θ must lie in [0, 1)");
    }
    Ok(())
}

/// Sorted position of the bracketing endpoint nearest to `β` (ties go left),
/// and the difference between the two endpoint distances.
fn nearest(gs: &GapSet, beta: &BigRational) -> (usize, BigRational) {
    let left = gs.locate(beta);
    let right = left + 1;
    let to_left = beta - gs.point(left);
    let to_right = gs.point(right) - beta;
    let margin = (&to_left - &to_right).abs();
    let pos = if to_left <= to_right { left } else { right };
    (pos, margin)
}

/// Solves against a precomputed gap set, so many `β` can share one sort.
pub fn solve_with(gs: &GapSet, b: u64, beta: &BigRational) -> Result<KroneckerSolution> {
    if beta.is_negative() || beta >= &BigRational::one() {
        return domain(format!("β = {beta} lies outside [0, 1)"));
    }
    let (pos, _) = nearest(gs, beta);
    let (m, p) = gs.point_form(pos);
    let s = gs.surrogate();
    let value = BigRational::from_integer(BigInt::from(m)) * s.value() - BigRational::from_integer(p.clone());
    let achieved_error = (value - beta).abs();
    let radius = s.error_bound() * BigRational::from_integer(BigInt::from(m));
    let two_n = BigRational::from_integer(BigInt::from(2 * gs.n()));
    let bound = f_closed(b)?.scale(&two_n.recip());
    Ok(KroneckerSolution {
        n: m,
        p,
        achieved_error,
        radius,
        bound,
        legacy_bound: legacy_bound(b, gs.n())?,
    })
}

/// The midpoint of the largest gap, where the achieved error is largest.
pub fn largest_gap_midpoint(gs: &GapSet) -> BigRational {
    let (l, r) = gs.largest_endpoints();
    (gs.point(l) + gs.point(r)) / BigRational::from_integer(BigInt::from(2))
}
