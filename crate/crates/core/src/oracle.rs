//! Brute-force reference implementations in 50-digit fixed-point decimal.
//!
//! Nothing here touches convergents, surrogates or quadratic fields: `θ` is
//! evaluated by a backward fixed-point recurrence, points are sorted
//! naively, minimizers come from exhaustive scans. The randomized suites
//! compare these against the main path.

use std::fmt;
use std::ops::{Add, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cf::ContinuedFraction;
use crate::decimal::format_sig;
use crate::error::{domain, Error, Result};
use crate::kronecker;
use crate::sturmian::{self, Agreement};
use crate::three_gap::gap_set_with_radius;

/// Fractional digits carried by [`Fixed`].
pub const DIGITS: u32 = 50;

/// Largest `N` the brute-force routines accept.
pub const MAX_N: u64 = 10_000;

fn scale() -> &'static BigInt {
    static SCALE: OnceLock<BigInt> = OnceLock::new();
    SCALE.get_or_init(|| BigInt::from(10).pow(DIGITS))
}

/// A real number truncated to 50 decimal places, stored as `raw / 10^50`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn from_raw(raw: BigInt) -> Self {
        Fixed(raw)
    }

    pub fn raw(&self) -> &BigInt {
        &self.0
    }

    pub fn zero() -> Self {
        Fixed(BigInt::zero())
    }

    pub fn one() -> Self {
        Fixed(scale().clone())
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Fixed(v.into() * scale())
    }

    /// `⌊num/den · 10^50⌋ / 10^50`.
    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        Fixed((num * scale()).div_floor(den))
    }

    /// Parses `[-]digits[.digits]`, truncating past 50 places.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let mut digits: String = frac.chars().take(DIGITS as usize).collect();
        while digits.len() < DIGITS as usize {
            digits.push('0');
        }
        let int: BigInt = if int.is_empty() { BigInt::zero() } else { int.parse().ok()? };
        let raw = int * scale() + digits.parse::<BigInt>().ok()?;
        Some(Fixed(if neg { -raw } else { raw }))
    }

    /// `π − 3`.
    pub fn pi_minus_three() -> Self {
        Fixed::parse("0.14159265358979323846264338327950288419716939937510582097494459").unwrap()
    }

    /// Value of `[a_0; a_1, …]` by the backward recurrence `x ← a_k + 1/x`
    /// over the first `depth` partial quotients.
    pub fn from_cf(cf: &ContinuedFraction, depth: usize) -> Self {
        let len = cf.expansion_len().map_or(depth, |l| l.min(depth));
        let mut x: Option<Fixed> = None;
        for i in (1..=len).rev() {
            let a = Fixed::from_int(cf.term(i).expect("index within expansion"));
            x = Some(match x {
                None => a,
                Some(t) => a + t.recip(),
            });
        }
        let a0 = Fixed::from_int(cf.a0());
        match x {
            None => a0,
            Some(t) => a0 + t.recip(),
        }
    }

    pub fn recip(&self) -> Self {
        Fixed((scale() * scale()).div_floor(&self.0))
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Fixed(&self.0 * k)
    }

    pub fn floor(&self) -> BigInt {
        self.0.div_floor(scale())
    }

    pub fn fract(&self) -> Self {
        Fixed(self.0.mod_floor(scale()))
    }

    pub fn abs(&self) -> Self {
        Fixed(self.0.abs())
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(self.0.clone(), scale().clone())
    }
}

impl Add for Fixed {
    type Output = Fixed;
    fn add(self, rhs: Fixed) -> Fixed {
        Fixed(self.0 + rhs.0)
    }
}

impl Sub for Fixed {
    type Output = Fixed;
    fn sub(self, rhs: Fixed) -> Fixed {
        Fixed(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Fixed> for &'a Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        Fixed(&self.0 - &rhs.0)
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (q, r) = self.0.abs().div_rem(scale());
        let sign = if self.0.is_negative() { "-" } else { "" };
        write!(f, "{sign}{q}.{:0>width$}", r.to_string(), width = DIGITS as usize)
    }
}

/// Depth of the backward recurrence used for oracle inputs.
pub const CF_DEPTH: usize = 300;

/// All `N + 1` gaps between consecutive points of `0, {θ}, …, {Nθ}, 1`,
/// ascending.
pub fn brute_gap_set(theta: &Fixed, n: u64) -> Result<Vec<Fixed>> {
    if n == 0 || n > MAX_N {
        return domain(format!("N = {n} outside 1..={MAX_N}"));
    }
    let mut points: Vec<Fixed> = (0..=n).map(|m| theta.mul_int(&BigInt::from(m)).fract()).collect();
    points.push(Fixed::one());
    points.sort();
    let mut gaps: Vec<Fixed> = points.windows(2).map(|w| &w[1] - &w[0]).collect();
    gaps.sort();
    Ok(gaps)
}

/// Groups ascending gaps into distinct lengths, treating values within `tol`
/// as equal.
pub fn distinct_within(gaps: &[Fixed], tol: &Fixed) -> Vec<(Fixed, u64)> {
    let mut out: Vec<(Fixed, u64)> = Vec::new();
    for g in gaps {
        match out.last_mut() {
            Some((v, count)) if &(g - v).abs() <= tol => *count += 1,
            _ => out.push((g.clone(), 1)),
        }
    }
    out
}

/// The exhaustive minimizer of `|nθ − p − β|` over `0 ≤ n ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteKronecker {
    pub n: u64,
    pub p: BigInt,
    pub error: Fixed,
}

pub fn brute_kronecker(theta: &Fixed, beta: &Fixed, n_max: u64) -> Result<BruteKronecker> {
    if n_max > MAX_N {
        return domain(format!("N = {n_max} exceeds {MAX_N}"));
    }
    let half = Fixed::from_ratio(&BigInt::one(), &BigInt::from(2));
    let mut best: Option<BruteKronecker> = None;
    for n in 0..=n_max {
        let diff = theta.mul_int(&BigInt::from(n)) - beta.clone();
        let p = (diff.clone() + half.clone()).floor();
        let error = (diff - Fixed::from_int(p.clone())).abs();
        if best.as_ref().is_none_or(|b| error < b.error) {
            best = Some(BruteKronecker { n, p, error });
        }
    }
    Ok(best.expect("n = 0 is always scanned"))
}

/// Characteristic word bits from the carries of repeatedly adding `θ`.
pub fn brute_sturmian_bits(theta: &Fixed, len: usize) -> Vec<u8> {
    let one = Fixed::one();
    let mut frac = theta.fract();
    let step = theta.fract();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        frac = frac + step.clone();
        if frac >= one {
            frac = frac - one.clone();
            out.push(1);
        } else {
            out.push(0);
        }
    }
    out
}

/// First `k < max_k` with `bits[rk+a] ≠ bits[rk+b]`, by linear scan.
pub fn brute_agreement(bits: &[u8], r: u64, a: u64, b: u64, max_k: u64) -> Result<Agreement> {
    if !(a < b && b < r) {
        return domain(format!("residues must satisfy 0 ≤ a < b < r, got a = {a}, b = {b}, r = {r}"));
    }
    let required = if max_k == 0 { 0 } else { r * (max_k - 1) + b + 1 };
    if (bits.len() as u64) < required {
        return Err(Error::SequenceTooShort {
            required,
            available: bits.len() as u64,
        });
    }
    for k in 0..max_k {
        if bits[(r * k + a) as usize] != bits[(r * k + b) as usize] {
            return Ok(Agreement::Differs { k });
        }
    }
    Ok(Agreement::AtLeast { k: max_k })
}

/// One oracle/main-path comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub case_id: String,
    pub reference: Value,
    pub candidate: Value,
    pub agree: bool,
    pub max_deviation: String,
}

/// Tolerance for gap comparisons.
pub fn gap_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(40))
}

/// A random `θ ∈ (0, 1)` with partial quotients in `1..=b`, preperiod up to
/// 3 and period up to 4.
pub fn random_theta(rng: &mut impl Rng, b: u64) -> ContinuedFraction {
    let prefix_len = rng.gen_range(0..=3);
    let period_len = rng.gen_range(1..=4);
    let mut draw = |k| (0..k).map(|_| rng.gen_range(1..=b)).collect::<Vec<u64>>();
    let prefix = draw(prefix_len);
    let period = draw(period_len);
    ContinuedFraction::new(0, prefix, period).expect("valid quotients")
}

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (case as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn rational_to_fixed(x: &BigRational) -> Fixed {
    Fixed::from_ratio(x.numer(), x.denom())
}

/// Gap multisets for random `θ ∈ S_B` (`B ≤ 10`, `N ≤ 2000`).
pub fn gap_suite(seed: u64, cases: usize) -> Vec<OracleReport> {
    let tol = gap_tolerance();
    (0..cases)
        .into_par_iter()
        .map(|case| {
            let mut rng = case_rng(seed, case);
            let b = rng.gen_range(1..=10);
            let cf = random_theta(&mut rng, b);
            let n = rng.gen_range(1..=2000u64);
            let case_id = format!("gaps-{case}: θ = {cf}, N = {n}");
            // point error N·δ ≤ 10^-46
            let radius = BigRational::new(BigInt::one(), BigInt::from(10).pow(46));
            let gs = gap_set_with_radius(&cf, n, Some(&radius)).expect("irrational θ");
            let candidate: Vec<BigRational> = gs
                .gaps()
                .iter()
                .flat_map(|g| std::iter::repeat_n(g.length.clone(), g.multiplicity as usize))
                .collect();
            let reference = brute_gap_set(&Fixed::from_cf(&cf, CF_DEPTH), n).expect("N in range");
            let deviation = if candidate.len() == reference.len() {
                candidate
                    .iter()
                    .zip(&reference)
                    .map(|(c, r)| (c - r.to_ratio()).abs())
                    .max()
                    .unwrap_or_else(BigRational::zero)
            } else {
                BigRational::one()
            };
            let distinct = distinct_within(&reference, &Fixed::from_ratio(&BigInt::one(), &BigInt::from(10).pow(40)));
            OracleReport {
                case_id,
                reference: json!(distinct
                    .iter()
                    .map(|(g, m)| json!({"length": g.to_string(), "multiplicity": m}))
                    .collect::<Vec<_>>()),
                candidate: json!(gs
                    .gaps()
                    .iter()
                    .map(|g| json!({"length": format_sig(&g.length, 45), "multiplicity": g.multiplicity}))
                    .collect::<Vec<_>>()),
                agree: deviation <= tol,
                max_deviation: format_sig(&deviation, 6),
            }
        })
        .collect()
}

/// Kronecker minimizers for random `θ ∈ S_B` (`B ≤ 10`), rational `β`, and
/// `N ≤ 1000`.
pub fn kronecker_suite(seed: u64, cases: usize) -> Vec<OracleReport> {
    (0..cases)
        .into_par_iter()
        .map(|case| {
            let mut rng = case_rng(seed.wrapping_add(1), case);
            let b = rng.gen_range(1..=10);
            let cf = random_theta(&mut rng, b);
            let n = rng.gen_range(1..=1000u64);
            let den: i64 = rng.gen_range(1..=1_000_000);
            let num: i64 = rng.gen_range(0..den);
            let beta = BigRational::new(num.into(), den.into());
            let case_id = format!("kron-{case}: θ = {cf}, β = {beta}, N = {n}");
            let sol = kronecker::solve(&cf, &beta, n).expect("valid case");
            let brute = brute_kronecker(&Fixed::from_cf(&cf, CF_DEPTH), &rational_to_fixed(&beta), n).expect("N in range");
            let agree = sol.n == brute.n && sol.p == brute.p;
            OracleReport {
                case_id,
                reference: json!({"n": brute.n, "p": brute.p.to_string(), "error": brute.error.to_string()}),
                candidate: json!({"n": sol.n, "p": sol.p.to_string(), "error": format_sig(&sol.achieved_error, 45)}),
                agree,
                max_deviation: if agree { "0".into() } else { "1".into() },
            }
        })
        .collect()
}

/// Agreement indices for random `θ ∈ S_B` (`B ≤ 3`), `r ≤ 12`, and a random
/// residue pair, with the bits themselves compared as well.
pub fn agreement_suite(seed: u64, cases: usize) -> Vec<OracleReport> {
    (0..cases)
        .into_par_iter()
        .map(|case| {
            let mut rng = case_rng(seed.wrapping_add(2), case);
            let b = rng.gen_range(1..=3);
            let cf = random_theta(&mut rng, b);
            let r = rng.gen_range(2..=12u64);
            let a = rng.gen_range(0..r - 1);
            let bb = rng.gen_range(a + 1..r);
            let max_k = sturmian::diversity_bound(b, r) + 1;
            let len = (r * max_k) as usize;
            let case_id = format!("agreement-{case}: θ = {cf}, r = {r}, a = {a}, b = {bb}");
            let seq = sturmian::generate(&cf, len).expect("irrational θ");
            let bits = brute_sturmian_bits(&Fixed::from_cf(&cf, CF_DEPTH), len);
            let candidate = seq.agreement(r, a, bb, max_k).expect("long enough");
            let reference = brute_agreement(&bits, r, a, bb, max_k).expect("long enough");
            let bits_match = seq.to_vec() == bits;
            OracleReport {
                case_id,
                reference: json!(reference),
                candidate: json!(candidate),
                agree: bits_match && candidate == reference,
                max_deviation: if bits_match && candidate == reference { "0".into() } else { "1".into() },
            }
        })
        .collect()
}
