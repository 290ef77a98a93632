//! Continued fractions: canonical partial-quotient specs, convergents,
//! certified evaluation, distance to the nearest integer and the extremal
//! elements of the bounded class.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::{decimal, QuadraticNumber};

/// A real number `[a0; prefix…, period, period, …]`.
///
/// An empty period means the expansion terminates and the number is rational.
/// Values are canonical after construction: the period is primitive and not
/// absorbable into the prefix, and a terminating expansion does not end in 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawContinuedFraction", into = "RawContinuedFraction")]
pub struct ContinuedFraction {
    a0: i64,
    prefix: Vec<u64>,
    period: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawContinuedFraction {
    a0: i64,
    #[serde(default)]
    prefix: Vec<u64>,
    #[serde(default)]
    period: Vec<u64>,
}

impl TryFrom<RawContinuedFraction> for ContinuedFraction {
    type Error = Error;
    fn try_from(raw: RawContinuedFraction) -> Result<Self> {
        ContinuedFraction::new(raw.a0, raw.prefix, raw.period)
    }
}

impl From<ContinuedFraction> for RawContinuedFraction {
    fn from(cf: ContinuedFraction) -> Self {
        RawContinuedFraction {
            a0: cf.a0,
            prefix: cf.prefix,
            period: cf.period,
        }
    }
}

fn primitive_period(period: &[u64]) -> usize {
    let n = period.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| period[i] == period[i - p]))
        .unwrap_or(n)
}

impl ContinuedFraction {
    pub fn new(a0: i64, mut prefix: Vec<u64>, mut period: Vec<u64>) -> Result<Self> {
        for (i, &v) in prefix.iter().chain(period.iter()).enumerate() {
            if v == 0 {
                return Err(Error::InvalidPartialQuotient { index: i + 1, value: v });
            }
        }
        let p = primitive_period(&period);
        period.truncate(p);
        while let (Some(x), Some(y)) = (prefix.last(), period.last()) {
            if x != y {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        let mut a0 = a0;
        if period.is_empty() && prefix.last() == Some(&1) {
            prefix.pop();
            match prefix.last_mut() {
                Some(last) => *last += 1,
                None => a0 += 1,
            }
        }
        Ok(ContinuedFraction { a0, prefix, period })
    }

    pub fn rational(a0: i64, quotients: Vec<u64>) -> Result<Self> {
        Self::new(a0, quotients, Vec::new())
    }

    /// Purely periodic `[0; period…]`.
    pub fn periodic(period: Vec<u64>) -> Result<Self> {
        Self::new(0, Vec::new(), period)
    }

    /// `(√5 − 1)/2 = [0; 1, 1, 1, …]`.
    pub fn golden() -> Self {
        Self::periodic(vec![1]).unwrap()
    }

    /// `√2 − 1 = [0; 2, 2, 2, …]`.
    pub fn sqrt2_minus_one() -> Self {
        Self::periodic(vec![2]).unwrap()
    }

    /// `[0; B, 1, B, 1, …]`, the smallest element of the bounded class.
    pub fn extremal(b: u64) -> Result<Self> {
        if b == 0 {
            return domain("bound B must be at least 1");
        }
        Self::periodic(vec![b, 1])
    }

    pub fn a0(&self) -> i64 {
        self.a0
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_rational(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of partial quotients after `a0`, or `None` when infinite.
    pub fn expansion_len(&self) -> Option<usize> {
        self.is_rational().then_some(self.prefix.len())
    }

    /// Partial quotient `a_i` for `i ≥ 1`.
    pub fn term(&self, i: usize) -> Option<u64> {
        assert!(i >= 1, "a_0 is available through a0()");
        let j = i - 1;
        if j < self.prefix.len() {
            Some(self.prefix[j])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(j - self.prefix.len()) % self.period.len()])
        }
    }

    /// Largest partial quotient among `a_1, a_2, …`; 0 for an integer.
    pub fn bound(&self) -> u64 {
        self.prefix.iter().chain(&self.period).copied().max().unwrap_or(0)
    }

    /// Membership in the class of numbers with partial quotients at most `b`.
    pub fn in_class(&self, b: u64) -> bool {
        self.bound() <= b
    }

    /// Tail `θ_k = [0; a_k, a_{k+1}, …]` for `k ≥ 1`.
    pub fn tail(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return domain("tails start at k = 1");
        }
        if let Some(len) = self.expansion_len() {
            if k > len {
                return Err(Error::IndexBeyondExpansion { index: k, len });
            }
        }
        if k <= self.prefix.len() {
            return Self::new(0, self.prefix[k - 1..].to_vec(), self.period.clone());
        }
        let mut period = self.period.clone();
        let shift = (k - 1 - self.prefix.len()) % period.len();
        period.rotate_left(shift);
        Self::new(0, Vec::new(), period)
    }

    pub fn convergents(&self) -> Convergents<'_> {
        Convergents {
            cf: self,
            k: 0,
            prev: (BigInt::one(), BigInt::zero()),
            prev2: (BigInt::zero(), BigInt::one()),
        }
    }

    /// The `k`-th convergent, if the expansion reaches index `k`.
    pub fn convergent(&self, k: usize) -> Option<Convergent> {
        self.convergents().nth(k)
    }

    /// Rational surrogate `p_K/q_K` for the smallest `K` with
    /// `accept(q_K, q_{K+1})`, or the exact value of a terminating expansion.
    pub fn surrogate_where(&self, mut accept: impl FnMut(&BigInt, &BigInt) -> bool) -> Surrogate {
        let mut it = self.convergents().peekable();
        loop {
            let c = it.next().expect("expansions always yield a_0");
            match it.peek() {
                Some(next) if accept(&c.q, &next.q) => {
                    return Surrogate {
                        k: c.k,
                        p: c.p,
                        q: c.q,
                        q_next: Some(next.q.clone()),
                    };
                }
                Some(_) => {}
                None => {
                    return Surrogate {
                        k: c.k,
                        p: c.p,
                        q: c.q,
                        q_next: None,
                    };
                }
            }
        }
    }

    /// Surrogate with `|θ − θ*| · scale ≤ eps`.
    pub fn surrogate_within(&self, scale: &BigInt, eps: &BigRational) -> Surrogate {
        self.surrogate_where(|q, qn| {
            BigRational::from_integer(q * qn) * eps >= BigRational::from_integer(scale.clone())
        })
    }

    /// Exact value of a periodic expansion as an element of ℚ(√d).
    pub fn to_quadratic(&self) -> Option<QuadraticNumber> {
        if self.period.is_empty() {
            return None;
        }
        // y = [t_1; t_2, …, t_m, y] solves Q y² + (Q' − P) y − P' = 0
        let ((p, q), (p1, q1)) = matrix_of(self.period[0] as i64, &self.period[1..]);
        let lin = &p - &q1;
        let disc = &lin * &lin + BigInt::from(4) * &q * &p1;
        let y = QuadraticNumber::new(
            Ratio::new(lin, BigInt::from(2) * &q),
            Ratio::new(BigInt::one(), BigInt::from(2) * &q),
            disc,
        );
        let ((pp, qq), (pp1, qq1)) = matrix_of(self.a0, &self.prefix);
        let num = &(&y * &QuadraticNumber::from_integer(pp)) + &QuadraticNumber::from_integer(pp1);
        let den = &(&y * &QuadraticNumber::from_integer(qq)) + &QuadraticNumber::from_integer(qq1);
        Some(&num / &den)
    }
}

/// Last two convergents `((p_m, q_m), (p_{m−1}, q_{m−1}))` of `[head; rest…]`.
fn matrix_of(head: i64, rest: &[u64]) -> ((BigInt, BigInt), (BigInt, BigInt)) {
    let mut cur = (BigInt::from(head), BigInt::one());
    let mut prev = (BigInt::one(), BigInt::zero());
    for &a in rest {
        let a = BigInt::from(a);
        let next = (&a * &cur.0 + &prev.0, &a * &cur.1 + &prev.1);
        prev = std::mem::replace(&mut cur, next);
    }
    (cur, prev)
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.prefix.iter().map(u64::to_string).collect();
        if !self.period.is_empty() {
            let per: Vec<String> = self.period.iter().map(u64::to_string).collect();
            parts.push(format!("({})*", per.join(", ")));
        }
        if parts.is_empty() {
            write!(f, "[{}]", self.a0)
        } else {
            write!(f, "[{}; {}]", self.a0, parts.join(", "))
        }
    }
}

/// `p_k/q_k`, the `k`-th convergent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub k: usize,
    pub p: BigInt,
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

pub struct Convergents<'a> {
    cf: &'a ContinuedFraction,
    k: usize,
    prev: (BigInt, BigInt),
    prev2: (BigInt, BigInt),
}

impl Iterator for Convergents<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let a = if self.k == 0 {
            BigInt::from(self.cf.a0)
        } else {
            BigInt::from(self.cf.term(self.k)?)
        };
        let p = &a * &self.prev.0 + &self.prev2.0;
        let q = &a * &self.prev.1 + &self.prev2.1;
        self.prev2 = std::mem::replace(&mut self.prev, (p.clone(), q.clone()));
        let c = Convergent { k: self.k, p, q };
        self.k += 1;
        Some(c)
    }
}

/// Result of [`convergents`]: the list plus whether a terminating expansion
/// ran out before `count` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentList {
    pub items: Vec<Convergent>,
    pub truncated: bool,
}

pub fn convergents(cf: &ContinuedFraction, count: usize) -> Result<ConvergentList> {
    if count == 0 {
        return domain("at least one convergent must be requested");
    }
    let items: Vec<Convergent> = cf.convergents().take(count).collect();
    let truncated = items.len() < count;
    Ok(ConvergentList { items, truncated })
}

/// Rational stand-in `θ* = p_K/q_K` with a certified error bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surrogate {
    pub k: usize,
    pub p: BigInt,
    pub q: BigInt,
    /// `q_{K+1}`, absent when `θ*` is `θ` itself.
    pub q_next: Option<BigInt>,
}

impl Surrogate {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }

    pub fn is_exact(&self) -> bool {
        self.q_next.is_none()
    }

    /// `δ` with `|θ − θ*| ≤ δ`.
    pub fn error_bound(&self) -> BigRational {
        match &self.q_next {
            Some(qn) => BigRational::new(BigInt::one(), &self.q * qn),
            None => BigRational::zero(),
        }
    }

    /// `m·p mod q`, the numerator of `{mθ*}` over `q`.
    pub fn residue(&self, m: &BigInt) -> BigInt {
        (m * &self.p).mod_floor(&self.q)
    }

    /// `⌊mθ*⌋`.
    pub fn floor_multiple(&self, m: &BigInt) -> BigInt {
        (m * &self.p).div_floor(&self.q)
    }

    /// `||mθ*||` exactly.
    pub fn dist_to_int(&self, m: &BigInt) -> BigRational {
        let r = self.residue(m);
        let alt = &self.q - &r;
        BigRational::new(r.min(alt), self.q.clone())
    }
}

/// An enclosure `[center − radius, center + radius]` of a real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedValue {
    pub center: BigRational,
    pub radius: BigRational,
}

impl CertifiedValue {
    pub fn exact(center: BigRational) -> Self {
        CertifiedValue {
            center,
            radius: BigRational::zero(),
        }
    }

    pub fn lower(&self) -> BigRational {
        &self.center - &self.radius
    }

    pub fn upper(&self) -> BigRational {
        &self.center + &self.radius
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        (x - &self.center).abs() <= self.radius
    }

    pub fn contains_quadratic(&self, x: &QuadraticNumber) -> bool {
        let lo = QuadraticNumber::from_ratio(self.lower());
        let hi = QuadraticNumber::from_ratio(self.upper());
        lo <= *x && *x <= hi
    }

    /// Whether both enclosures can hold the same real.
    pub fn overlaps(&self, other: &CertifiedValue) -> bool {
        (&self.center - &other.center).abs() <= &self.radius + &other.radius
    }

    pub fn add(&self, other: &CertifiedValue) -> CertifiedValue {
        CertifiedValue {
            center: &self.center + &other.center,
            radius: &self.radius + &other.radius,
        }
    }

    pub fn sub(&self, other: &CertifiedValue) -> CertifiedValue {
        CertifiedValue {
            center: &self.center - &other.center,
            radius: &self.radius + &other.radius,
        }
    }

    pub fn scale(&self, k: &BigRational) -> CertifiedValue {
        CertifiedValue {
            center: &self.center * k,
            radius: &self.radius * k.abs(),
        }
    }

    /// Enclosure of `1/x`; `None` when the interval touches zero.
    pub fn recip(&self) -> Option<CertifiedValue> {
        let c = self.center.abs();
        if c <= self.radius {
            return None;
        }
        let radius = &self.radius / (&c * (&c - &self.radius));
        Some(CertifiedValue {
            center: self.center.recip(),
            radius,
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.center.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_decimal(&self, sig: usize) -> String {
        decimal::format_sig(&self.center, sig)
    }
}

fn positive_eps(eps: &BigRational) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        domain(format!("accuracy must be positive, got {eps}"))
    }
}

/// `θ` to within `eps`, centred on a convergent.
pub fn eval_theta(cf: &ContinuedFraction, eps: &BigRational) -> Result<CertifiedValue> {
    positive_eps(eps)?;
    let s = cf.surrogate_within(&BigInt::one(), eps);
    Ok(CertifiedValue {
        center: s.value(),
        radius: s.error_bound(),
    })
}

/// `||nθ||` to within `eps`.
pub fn dist_to_int(cf: &ContinuedFraction, n: u64, eps: &BigRational) -> Result<CertifiedValue> {
    positive_eps(eps)?;
    if n == 0 {
        return domain("n must be at least 1");
    }
    let n = BigInt::from(n);
    let s = cf.surrogate_within(&n, eps);
    // ||·|| is 1-Lipschitz, so the error of nθ* carries over unchanged
    Ok(CertifiedValue {
        center: s.dist_to_int(&n),
        radius: s.error_bound() * BigRational::from_integer(n),
    })
}

/// `(θ_k, φ_k)`: the tail `[0; a_k, a_{k+1}, …]` to within `eps`, and the
/// reversal `[0; a_k, …, a_1] = q_{k−1}/q_k` exactly.
pub fn tail_and_reversal(
    cf: &ContinuedFraction,
    k: usize,
    eps: &BigRational,
) -> Result<(CertifiedValue, BigRational)> {
    if k == 0 {
        return domain("the reversal φ_k is defined for k ≥ 1");
    }
    let tail = cf.tail(k)?;
    let theta_k = eval_theta(&tail, eps)?;
    let mut it = cf.convergents().skip(k - 1);
    let prev = it.next().expect("k − 1 lies inside the expansion");
    let cur = it.next().expect("k lies inside the expansion");
    Ok((theta_k, BigRational::new(prev.q, cur.q)))
}

/// Extremal elements of the bounded class with their verified expansions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassExtrema {
    /// `(√(B²+4B) − B)/(2B) = [0; B, 1, B, 1, …]`
    pub min: QuadraticNumber,
    /// `(√(B²+4B) + B)/2 = [B; 1, B, 1, …]`
    pub max: QuadraticNumber,
    /// Both closed forms reproduce the periodic expansions term by term.
    pub expansions_verified: bool,
}

pub fn sb_extrema(b: u64) -> Result<ClassExtrema> {
    if b == 0 {
        return domain("bound B must be at least 1");
    }
    let bb = BigInt::from(b);
    let root = QuadraticNumber::sqrt(&bb * &bb + BigInt::from(4) * &bb);
    let bq = QuadraticNumber::from_integer(bb.clone());
    let min = (&root - &bq).scale(&BigRational::new(BigInt::one(), BigInt::from(2) * &bb));
    let max = (&root + &bq).scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
    let alternating = |start_with_b: bool, len: usize| -> Vec<BigInt> {
        (0..len)
            .map(|i| {
                if (i % 2 == 0) == start_with_b {
                    bb.clone()
                } else {
                    BigInt::one()
                }
            })
            .collect()
    };
    let mut want_min = vec![BigInt::zero()];
    want_min.extend(alternating(true, 11));
    let expansions_verified =
        min.cf_terms(12) == want_min && max.cf_terms(12) == alternating(true, 12);
    Ok(ClassExtrema {
        min,
        max,
        expansions_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn eps(digits: u32) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(10u8).pow(digits))
    }

    fn qs(cf: &ContinuedFraction, k: usize) -> Vec<i64> {
        cf.convergents().take(k).map(|c| c.q.to_i64().unwrap()).collect()
    }

    #[test]
    fn canonical_forms() {
        let cf = ContinuedFraction::rational(0, vec![2, 1]).unwrap();
        assert_eq!(cf, ContinuedFraction::rational(0, vec![3]).unwrap());
        assert_eq!(
            ContinuedFraction::rational(0, vec![1]).unwrap(),
            ContinuedFraction::rational(1, vec![]).unwrap()
        );
        let cf = ContinuedFraction::new(0, vec![2, 1], vec![2, 1, 2, 1]).unwrap();
        assert_eq!(cf.prefix(), &[] as &[u64]);
        assert_eq!(cf.period(), &[2, 1]);
        assert_eq!(ContinuedFraction::extremal(1).unwrap(), ContinuedFraction::golden());
        assert_eq!(
            ContinuedFraction::new(0, vec![3, 0], vec![]),
            Err(Error::InvalidPartialQuotient { index: 2, value: 0 })
        );
    }

    #[test]
    fn convergent_examples() {
        let golden = ContinuedFraction::golden();
        assert_eq!(qs(&golden, 6), vec![1, 1, 2, 3, 5, 8]);

        let silver = ContinuedFraction::sqrt2_minus_one();
        let list = convergents(&silver, 4).unwrap();
        let pq: Vec<(i64, i64)> = list
            .items
            .iter()
            .map(|c| (c.p.to_i64().unwrap(), c.q.to_i64().unwrap()))
            .collect();
        assert_eq!(pq, vec![(0, 1), (1, 2), (2, 5), (5, 12)]);
        assert!(!list.truncated);

        let zero = ContinuedFraction::rational(0, vec![]).unwrap();
        let list = convergents(&zero, 3).unwrap();
        assert_eq!(list.items.len(), 1);
        assert_eq!(list.items[0].value(), rat(0, 1));
        assert!(list.truncated);
    }

    #[test]
    fn evaluation_examples() {
        let golden = ContinuedFraction::golden();
        let v = eval_theta(&golden, &eps(6)).unwrap();
        assert!(v.radius <= eps(6));
        assert!((v.to_f64() - 0.618_033_988_7).abs() < 1e-6);
        let exact = golden.to_quadratic().unwrap();
        assert!(v.contains_quadratic(&exact));

        let silver = ContinuedFraction::sqrt2_minus_one();
        let v = eval_theta(&silver, &eps(6)).unwrap();
        assert!((v.to_f64() - 0.414_213_562_4).abs() < 1e-6);

        let half = ContinuedFraction::rational(0, vec![2]).unwrap();
        let v = eval_theta(&half, &eps(30)).unwrap();
        assert_eq!(v, CertifiedValue::exact(rat(1, 2)));

        assert!(eval_theta(&half, &rat(0, 1)).is_err());
    }

    #[test]
    fn distance_examples() {
        let golden = ContinuedFraction::golden();
        let theta = golden.to_quadratic().unwrap();
        let v3 = dist_to_int(&golden, 3, &eps(12)).unwrap();
        assert!((v3.to_f64() - 0.145_898).abs() < 1e-6);
        assert!(v3.contains_quadratic(&theta.pow(4)));
        let v5 = dist_to_int(&golden, 5, &eps(12)).unwrap();
        assert!((v5.to_f64() - 0.090_170).abs() < 1e-6);
        assert!(v5.contains_quadratic(&theta.pow(5)));
        // large multiple of a convergent denominator: tiny but certified
        let v = dist_to_int(&golden, 832_040, &eps(20)).unwrap();
        assert!(v.radius <= eps(20));
        assert!(v.contains_quadratic(&theta.pow(30)));
    }

    #[test]
    fn tail_examples() {
        let golden = ContinuedFraction::golden();
        let (_, phi) = tail_and_reversal(&golden, 3, &eps(6)).unwrap();
        assert_eq!(phi, rat(2, 3));

        let alt = ContinuedFraction::periodic(vec![2, 1]).unwrap();
        let (t2, phi) = tail_and_reversal(&alt, 2, &eps(9)).unwrap();
        assert_eq!(phi, rat(2, 3));
        let (t4, _) = tail_and_reversal(&alt, 4, &eps(9)).unwrap();
        assert_eq!(t2, t4);
        assert_eq!(alt.tail(2).unwrap(), alt.tail(6).unwrap());

        assert!(tail_and_reversal(&golden, 0, &eps(3)).is_err());
        let short = ContinuedFraction::rational(0, vec![2, 3]).unwrap();
        assert_eq!(
            short.tail(3),
            Err(Error::IndexBeyondExpansion { index: 3, len: 2 })
        );
    }

    #[test]
    fn extrema_of_bounded_class() {
        let e1 = sb_extrema(1).unwrap();
        assert!(e1.expansions_verified);
        assert!((e1.min.to_f64() - 0.618_034).abs() < 1e-6);
        assert!((e1.max.to_f64() - 1.618_034).abs() < 1e-6);
        let e2 = sb_extrema(2).unwrap();
        assert!(e2.expansions_verified);
        assert_eq!(e2.min.to_string(), "-1/2+1/2*sqrt(3)");
        assert_eq!(e2.max.to_string(), "1+sqrt(3)");
        for b in 1..40 {
            let e = sb_extrema(b).unwrap();
            assert!(e.expansions_verified, "B = {b}");
            assert!(e.min < QuadraticNumber::one() && QuadraticNumber::one() < e.max);
            assert_eq!(Some(e.min), ContinuedFraction::extremal(b).unwrap().to_quadratic());
        }
    }

    #[test]
    fn quadratic_value_of_periodic_expansions() {
        let cf = ContinuedFraction::new(2, vec![3, 4], vec![1, 5]).unwrap();
        let x = cf.to_quadratic().unwrap();
        let terms: Vec<i64> = x.cf_terms(9).iter().map(|t| t.to_i64().unwrap()).collect();
        assert_eq!(terms, vec![2, 3, 4, 1, 5, 1, 5, 1, 5]);
    }

    fn corpus() -> Vec<ContinuedFraction> {
        vec![
            ContinuedFraction::golden(),
            ContinuedFraction::sqrt2_minus_one(),
            ContinuedFraction::periodic(vec![3, 1, 2]).unwrap(),
            ContinuedFraction::new(0, vec![5, 1, 1], vec![4, 2]).unwrap(),
            ContinuedFraction::extremal(7).unwrap(),
        ]
    }

    #[test]
    fn continuant_identity_exact_under_surrogate() {
        // q_k||q_{k−1}θ*|| + q_{k−1}||q_kθ*|| = 1 for θ* a much later convergent
        for cf in corpus() {
            let conv: Vec<Convergent> = cf.convergents().take(40).collect();
            let star = Surrogate {
                k: 39,
                p: conv[39].p.clone(),
                q: conv[39].q.clone(),
                q_next: None,
            };
            // q_0 = q_1 when a_1 = 1, so start past it
            for k in 2..20 {
                let (qk, qk1) = (&conv[k].q, &conv[k - 1].q);
                let lhs = BigRational::from_integer(qk.clone()) * star.dist_to_int(qk1)
                    + BigRational::from_integer(qk1.clone()) * star.dist_to_int(qk);
                assert_eq!(lhs, rat(1, 1), "{cf} k = {k}");
            }
        }
    }

    #[test]
    fn distance_identities_for_convergent_denominators() {
        let e = eps(60);
        for cf in corpus() {
            let conv: Vec<Convergent> = cf.convergents().take(23).collect();
            for k in 2..=20 {
                let qk = conv[k].q.to_u64().unwrap();
                let qk1 = conv[k - 1].q.to_u64().unwrap();
                let qkr = BigRational::from_integer(conv[k].q.clone());
                let a_next = BigRational::from_integer(cf.term(k + 1).unwrap().into());
                let (_, phi_k) = tail_and_reversal(&cf, k, &e).unwrap();
                let (theta_k2, _) = tail_and_reversal(&cf, k + 2, &e).unwrap();
                let (theta_k1, _) = tail_and_reversal(&cf, k + 1, &e).unwrap();

                let lhs3 = dist_to_int(&cf, qk, &e).unwrap().scale(&qkr);
                let rhs3 = theta_k2
                    .add(&CertifiedValue::exact(a_next + &phi_k))
                    .recip()
                    .unwrap();
                assert!(lhs3.overlaps(&rhs3), "{cf} k = {k}");

                let lhs4 = dist_to_int(&cf, qk1, &e).unwrap().scale(&qkr);
                let rhs4 = theta_k1
                    .scale(&phi_k)
                    .add(&CertifiedValue::exact(rat(1, 1)))
                    .recip()
                    .unwrap();
                assert!(lhs4.overlaps(&rhs4), "{cf} k = {k}");
            }
        }
    }

    proptest! {
        #[test]
        fn monotone_in_even_quotients(
            terms in proptest::collection::vec(1u64..6, 10),
            idx in 1usize..10,
        ) {
            let base = ContinuedFraction::rational(0, terms.clone()).unwrap();
            let mut bumped = terms.clone();
            bumped[idx - 1] += 1;
            let moved = ContinuedFraction::rational(0, bumped).unwrap();
            let e = eps(40);
            let (x, y) = (eval_theta(&base, &e).unwrap(), eval_theta(&moved, &e).unwrap());
            if idx % 2 == 0 {
                prop_assert!(y.lower() > x.upper());
            } else {
                prop_assert!(y.upper() < x.lower());
            }
        }

        #[test]
        fn convergent_recurrence_and_coprimality(
            prefix in proptest::collection::vec(1u64..9, 0..5),
            period in proptest::collection::vec(1u64..9, 1..4),
        ) {
            let cf = ContinuedFraction::new(0, prefix, period).unwrap();
            let conv: Vec<Convergent> = cf.convergents().take(30).collect();
            for w in conv.windows(2).skip(1) {
                prop_assert!(w[1].q > w[0].q);
            }
            for c in &conv {
                prop_assert!(c.p.gcd(&c.q).is_one());
            }
            for k in 2..conv.len() {
                let a = BigInt::from(cf.term(k).unwrap());
                prop_assert_eq!(&conv[k].q, &(&a * &conv[k - 1].q + &conv[k - 2].q));
                prop_assert_eq!(&conv[k].p, &(&a * &conv[k - 1].p + &conv[k - 2].p));
            }
        }

        #[test]
        fn json_round_trip(
            a0 in -3i64..3,
            prefix in proptest::collection::vec(1u64..9, 0..4),
            period in proptest::collection::vec(1u64..9, 0..4),
        ) {
            let cf = ContinuedFraction::new(a0, prefix, period).unwrap();
            let json = serde_json::to_string(&cf).unwrap();
            let back: ContinuedFraction = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back, cf);
        }
    }
}
