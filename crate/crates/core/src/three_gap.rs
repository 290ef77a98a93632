//! Gap sets of `{nθ}`, the regime classification of their lengths, the
//! optimal constant `f(B)` and the extremal witnesses that approach it.
//!
//! All points are ordered under a single rational surrogate `θ* = p_K/q_K`.
//! `K` is the least index with `q_K q_{K+1} > 16(B+2)N²`: every point then
//! moves by less than `1/(16(B+2)N)` while the smallest gap of `θ` is at least
//! `1/((B+2)N)`, so the surrogate order is the true order. The construction
//! re-checks this against the computed smallest gap and deepens `K` if the
//! check ever fails.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cf::{dist_to_int, CertifiedValue, ContinuedFraction, Surrogate};
use crate::decimal;
use crate::error::{domain, Error, Result};
use crate::quadratic::square_part;
use crate::scalar::OrbitWord;
use crate::QuadraticNumber;

/// One distinct gap length and how often it occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    pub length: BigRational,
    pub multiplicity: u64,
}

/// The sorted points `0, {θ*}, …, {Nθ*}, 1` and their gaps.
#[derive(Clone, Debug)]
pub struct GapSet {
    n: u64,
    surrogate: Surrogate,
    /// Multiplier of each sorted point; `0` is the origin, `n + 1` the point 1.
    order: Vec<u32>,
    gaps: Vec<Gap>,
    largest_at: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapViolation {
    #[error("expected {expected} points, found {found}")]
    PointCount { expected: u64, found: u64 },
    #[error("points are not strictly increasing")]
    NotIncreasing,
    #[error("gap lengths sum to {0}, not 1")]
    SumNotOne(BigRational),
    #[error("{0} distinct gap lengths")]
    Cardinality(usize),
    #[error("largest gap {largest} differs from the sum of the other two, {sum}")]
    SumIdentity { largest: BigRational, sum: BigRational },
}

struct SortedOrbit {
    order: Vec<u32>,
    gaps: BTreeMap<BigInt, u64>,
    largest_at: usize,
    smallest: BigInt,
}

fn sort_packed<W: OrbitWord>(p: &BigInt, q: &BigInt, n: u64, idx_bits: u32) -> SortedOrbit {
    let q_w = W::from_biguint(q.magnitude()).expect("modulus fits the word");
    let p_w = W::from_biguint(p.mod_floor(q).magnitude()).expect("residue fits the word");
    let mask = (W::one() << idx_bits as usize) - W::one();
    let count = n as usize + 2;
    let mut keys: Vec<W> = Vec::with_capacity(count);
    let mut r = W::zero();
    for m in 0..=n {
        keys.push((r << idx_bits as usize) | W::from_u64(m).unwrap());
        r = r + p_w;
        if r >= q_w {
            r = r - q_w;
        }
    }
    keys.push((q_w << idx_bits as usize) | W::from_u64(n + 1).unwrap());
    keys.par_sort_unstable();

    let mut order = Vec::with_capacity(count);
    let mut tally: BTreeMap<W, u64> = BTreeMap::new();
    let (mut largest, mut largest_at) = (W::zero(), 0usize);
    let mut smallest = q_w;
    let mut prev = W::zero();
    for (pos, key) in keys.iter().enumerate() {
        let residue = *key >> idx_bits as usize;
        order.push((*key & mask).to_u32().unwrap());
        if pos > 0 {
            let g = residue - prev;
            *tally.entry(g).or_insert(0) += 1;
            if g > largest {
                largest = g;
                largest_at = pos - 1;
            }
            if g < smallest {
                smallest = g;
            }
        }
        prev = residue;
    }
    SortedOrbit {
        order,
        gaps: tally.into_iter().map(|(g, c)| (g.to_bigint(), c)).collect(),
        largest_at,
        smallest: smallest.to_bigint(),
    }
}

fn sort_big(p: &BigInt, q: &BigInt, n: u64) -> SortedOrbit {
    let p = p.mod_floor(q);
    let mut points: Vec<(BigInt, u32)> = Vec::with_capacity(n as usize + 2);
    let mut r = BigInt::zero();
    for m in 0..=n {
        points.push((r.clone(), m as u32));
        r += &p;
        if &r >= q {
            r -= q;
        }
    }
    points.push((q.clone(), (n + 1) as u32));
    points.par_sort_unstable();
    let mut tally = BTreeMap::new();
    let (mut largest, mut largest_at) = (BigInt::zero(), 0usize);
    let mut smallest = q.clone();
    for (pos, w) in points.windows(2).enumerate() {
        let g = &w[1].0 - &w[0].0;
        if g > largest {
            largest = g.clone();
            largest_at = pos;
        }
        if g < smallest {
            smallest = g.clone();
        }
        *tally.entry(g).or_insert(0) += 1;
    }
    SortedOrbit {
        order: points.into_iter().map(|(_, m)| m).collect(),
        gaps: tally,
        largest_at,
        smallest,
    }
}

fn sort_orbit(s: &Surrogate, n: u64) -> SortedOrbit {
    let idx_bits = 64 - (n + 1).leading_zeros();
    let q_bits = s.q.bits() as u32;
    if q_bits + idx_bits <= 63 {
        sort_packed::<u64>(&s.p, &s.q, n, idx_bits)
    } else if q_bits + idx_bits <= 127 {
        sort_packed::<u128>(&s.p, &s.q, n, idx_bits)
    } else {
        sort_big(&s.p, &s.q, n)
    }
}

/// Final denominator of a terminating expansion.
fn last_denominator(cf: &ContinuedFraction) -> Option<BigInt> {
    cf.is_rational()
        .then(|| cf.convergents().last().expect("a_0 always present").q)
}

/// Default bound on how far reported points and gaps may sit from their
/// values under the true `θ`.
pub fn default_radius() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(30))
}

/// [`gap_set_with_radius`] at [`default_radius`].
pub fn gap_set(cf: &ContinuedFraction, n: u64) -> Result<GapSet> {
    gap_set_with_radius(cf, n, Some(&default_radius()))
}

/// Gap set under the shallowest surrogate that certifies the ordering, and
/// additionally keeps every point within `max_radius` of its true value.
pub fn gap_set_with_radius(
    cf: &ContinuedFraction,
    n: u64,
    max_radius: Option<&BigRational>,
) -> Result<GapSet> {
    if n == 0 {
        return domain("N must be at least 1");
    }
    if n >= u32::MAX as u64 - 1 {
        return domain(format!("N = {n} exceeds the supported range"));
    }
    if let Some(q_last) = last_denominator(cf) {
        if BigInt::from(n) >= q_last {
            return Err(Error::CoincidentPoints { n, q_last });
        }
    }
    if let Some(r) = max_radius {
        if !r.is_positive() {
            return domain("radius must be positive");
        }
    }
    let b = cf.bound().max(1);
    let nn = BigInt::from(n);
    let base = BigInt::from(16u32) * BigInt::from(b + 2) * &nn * &nn;
    let mut boost = BigInt::one();
    loop {
        let threshold = &base * &boost;
        let s = cf.surrogate_where(|q, qn| {
            let prod = q * qn;
            prod > threshold
                && max_radius.is_none_or(|r| BigRational::from_integer(prod) * r >= BigRational::from_integer(nn.clone()))
        });
        let orbit = sort_orbit(&s, n);
        // ordering certified iff every gap exceeds twice the largest point shift
        let certified = match &s.q_next {
            None => orbit.smallest.is_positive(),
            Some(qn) => &orbit.smallest * qn > BigInt::from(2) * &nn,
        };
        if certified {
            let gaps = orbit
                .gaps
                .into_iter()
                .map(|(g, multiplicity)| Gap {
                    length: BigRational::new(g, s.q.clone()),
                    multiplicity,
                })
                .collect();
            return Ok(GapSet {
                n,
                surrogate: s,
                order: orbit.order,
                gaps,
                largest_at: orbit.largest_at,
            });
        }
        if s.is_exact() {
            return Err(Error::CoincidentPoints { n, q_last: s.q });
        }
        boost <<= 16;
    }
}

impl GapSet {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn surrogate(&self) -> &Surrogate {
        &self.surrogate
    }

    /// Depth `K` of the surrogate convergent.
    pub fn k_surrogate(&self) -> usize {
        self.surrogate.k
    }

    pub fn point_count(&self) -> usize {
        self.order.len()
    }

    /// Multiplier `m` of the point at sorted position `pos`, `None` for 1.
    pub fn multiplier_at(&self, pos: usize) -> Option<u64> {
        let m = self.order[pos] as u64;
        (m <= self.n).then_some(m)
    }

    /// Numerator over `q_K` of the point at sorted position `pos`.
    pub fn residue_at(&self, pos: usize) -> BigInt {
        match self.multiplier_at(pos) {
            Some(m) => self.surrogate.residue(&BigInt::from(m)),
            None => self.surrogate.q.clone(),
        }
    }

    pub fn point(&self, pos: usize) -> BigRational {
        BigRational::new(self.residue_at(pos), self.surrogate.q.clone())
    }

    pub fn points(&self) -> impl Iterator<Item = BigRational> + '_ {
        (0..self.order.len()).map(|pos| self.point(pos))
    }

    /// Distinct gap lengths in ascending order.
    pub fn gaps(&self) -> &[Gap] {
        &self.gaps
    }

    pub fn distinct_count(&self) -> usize {
        self.gaps.len()
    }

    /// `H(θ*, N)`.
    pub fn largest(&self) -> &BigRational {
        &self.gaps.last().expect("at least one gap").length
    }

    pub fn contains_gap(&self, length: &BigRational) -> bool {
        self.gaps.iter().any(|g| &g.length == length)
    }

    /// Sorted positions of the endpoints of the first largest gap.
    pub fn largest_endpoints(&self) -> (usize, usize) {
        (self.largest_at, self.largest_at + 1)
    }

    /// `N·H(θ*, N)`.
    pub fn product_nh(&self) -> BigRational {
        self.largest() * BigRational::from_integer(BigInt::from(self.n))
    }

    /// Certified bound on how far any point or gap under `θ*` is from its
    /// value under `θ`.
    pub fn radius(&self) -> BigRational {
        self.surrogate.error_bound() * BigRational::from_integer(BigInt::from(self.n))
    }

    /// Binary search for the last sorted position whose point is `≤ x`,
    /// for `x ∈ [0, 1)`.
    pub fn locate(&self, x: &BigRational) -> usize {
        let q = BigRational::from_integer(self.surrogate.q.clone());
        let target = x * &q;
        let (mut lo, mut hi) = (0usize, self.order.len() - 1);
        // invariant: point(lo) ≤ x < point(hi)
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if BigRational::from_integer(self.residue_at(mid)) <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// `(m, ⌊mθ⌋)` describing the point at `pos` as `mθ − ⌊mθ⌋`; the point 1
    /// is `(0, −1)`.
    pub fn point_form(&self, pos: usize) -> (u64, BigInt) {
        match self.multiplier_at(pos) {
            Some(m) => (m, self.surrogate.floor_multiple(&BigInt::from(m))),
            None => (0, BigInt::from(-1)),
        }
    }

    /// The largest gap evaluated at the true `θ`, to within `eps`.
    pub fn certified_largest(&self, cf: &ContinuedFraction, eps: &BigRational) -> Result<CertifiedValue> {
        let (left, right) = self.largest_endpoints();
        let (m1, f1) = self.point_form(left);
        let (m2, f2) = self.point_form(right);
        let slope = BigInt::from(m2) - BigInt::from(m1);
        let offset = BigRational::from_integer(f2 - f1);
        if slope.is_zero() {
            return Ok(CertifiedValue::exact(-offset));
        }
        let s = cf.surrogate_within(&slope.abs(), eps);
        let slope_r = BigRational::from_integer(slope.clone());
        Ok(CertifiedValue {
            center: s.value() * &slope_r - offset,
            radius: s.error_bound() * slope_r.abs(),
        })
    }

    /// Checks the structural claims of the three-gap theorem exactly.
    pub fn verify(&self) -> std::result::Result<(), GapViolation> {
        let expected = self.n + 2;
        if self.order.len() as u64 != expected {
            return Err(GapViolation::PointCount {
                expected,
                found: self.order.len() as u64,
            });
        }
        if self.gaps.iter().any(|g| !g.length.is_positive()) {
            return Err(GapViolation::NotIncreasing);
        }
        let total: BigRational = self
            .gaps
            .iter()
            .map(|g| &g.length * BigRational::from_integer(BigInt::from(g.multiplicity)))
            .sum();
        if !total.is_one() {
            return Err(GapViolation::SumNotOne(total));
        }
        match self.gaps.len() {
            2 => Ok(()),
            3 => {
                let sum = &self.gaps[0].length + &self.gaps[1].length;
                if sum == self.gaps[2].length {
                    Ok(())
                } else {
                    Err(GapViolation::SumIdentity {
                        largest: self.gaps[2].length.clone(),
                        sum,
                    })
                }
            }
            k => Err(GapViolation::Cardinality(k)),
        }
    }

    pub fn report(&self, sig: usize, with_points: bool) -> GapSetReport {
        GapSetReport {
            n: self.n,
            k_surrogate: self.surrogate.k,
            points: with_points.then(|| self.points().map(|p| decimal::format_sig(&p, sig)).collect()),
            gaps: self
                .gaps
                .iter()
                .map(|g| GapEntry {
                    length: decimal::format_sig(&g.length, sig),
                    multiplicity: g.multiplicity,
                })
                .collect(),
            h: decimal::format_sig(self.largest(), sig),
            product_nh: decimal::format_sig(&self.product_nh(), sig),
            radius: decimal::format_sig(&self.radius(), 3),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GapEntry {
    pub length: String,
    pub multiplicity: u64,
}

/// JSON form of a [`GapSet`].
#[derive(Clone, Debug, Serialize)]
pub struct GapSetReport {
    pub n: u64,
    pub k_surrogate: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
    pub gaps: Vec<GapEntry>,
    pub h: String,
    pub product_nh: String,
    pub radius: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeCase {
    /// `q_k ≤ N < q_k + q_{k−1}`
    Interval1,
    /// `l·q_k + q_{k−1} ≤ N < (l+1)·q_k + q_{k−1}` with `0 < l < a_{k+1}`
    Interval2,
}

/// Bracket of `N` among the convergent denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegimeTag {
    pub k: usize,
    pub l: u64,
    pub case: RegimeCase,
}

pub fn classify_regime(cf: &ContinuedFraction, n: u64) -> Result<RegimeTag> {
    let nn = BigInt::from(n);
    let conv: Vec<BigInt> = {
        let mut out = Vec::new();
        for c in cf.convergents() {
            let past = c.q > nn;
            out.push(c.q);
            if past {
                break;
            }
        }
        out
    };
    if conv.len() < 2 || conv[1] > nn {
        let q1 = conv.get(1).cloned().unwrap_or_else(BigInt::one);
        return Err(Error::BelowFirstDenominator { n, q1 });
    }
    let last = conv.last().unwrap();
    if last <= &nn {
        return Err(Error::CoincidentPoints {
            n,
            q_last: last.clone(),
        });
    }
    let k = conv.len() - 2;
    let (qk, qk1) = (&conv[k], &conv[k - 1]);
    if nn < qk + qk1 {
        return Ok(RegimeTag {
            k,
            l: 0,
            case: RegimeCase::Interval1,
        });
    }
    let l = ((&nn - qk1) / qk).to_u64().expect("l is below a_{k+1}");
    Ok(RegimeTag {
        k,
        l,
        case: RegimeCase::Interval2,
    })
}

/// The candidate gap lengths for `tag`, evaluated under `s`.
pub fn predicted_gaps(cf: &ContinuedFraction, tag: &RegimeTag, s: &Surrogate) -> Vec<BigRational> {
    // |q_jθ − p_j|, which differs from ||q_jθ|| only at j = 0 when a_1 = 1
    let dist = |j: usize| {
        let c = cf.convergent(j).expect("index inside expansion");
        (s.value() * BigRational::from_integer(c.q) - BigRational::from_integer(c.p)).abs()
    };
    let dk = dist(tag.k);
    let dk1 = dist(tag.k - 1);
    match tag.case {
        RegimeCase::Interval1 => vec![dk.clone(), dk1.clone(), dk + dk1],
        RegimeCase::Interval2 => {
            let l = BigRational::from_integer(BigInt::from(tag.l));
            let one = BigRational::one();
            vec![
                dk.clone(),
                &dk1 - (&l - one) * &dk,
                &dk1 - l * &dk,
            ]
        }
    }
}

/// Outcome of checking observed gaps against the regime prediction.
#[derive(Clone, Debug)]
pub struct RegimeReport {
    pub tag: RegimeTag,
    pub predicted: Vec<BigRational>,
    pub observed: Vec<BigRational>,
    /// Every observed gap is one of the predicted lengths, exactly under the
    /// surrogate.
    pub contained: bool,
}

pub fn regime_report(cf: &ContinuedFraction, n: u64) -> Result<RegimeReport> {
    let tag = classify_regime(cf, n)?;
    let gs = gap_set(cf, n)?;
    let predicted = predicted_gaps(cf, &tag, gs.surrogate());
    let observed: Vec<BigRational> = gs.gaps().iter().map(|g| g.length.clone()).collect();
    let contained = observed.iter().all(|g| predicted.contains(g));
    Ok(RegimeReport {
        tag,
        predicted,
        observed,
        contained,
    })
}

fn b_positive(b: u64) -> Result<()> {
    if b == 0 {
        domain("bound B must be at least 1")
    } else {
        Ok(())
    }
}

/// Numerator, denominator and radicand of the fractional term of `f(B)`:
/// `f(B) = 1 + num / (den·√radicand)` in lowest terms.
fn f_parts(b: u64) -> (BigInt, BigInt, BigInt) {
    let a = BigInt::from(b / 2);
    let (num, den, m) = if b.is_multiple_of(2) {
        let a1 = &a + BigInt::one();
        (&a1 * &a1, BigInt::from(2), &a * &a + BigInt::from(2) * &a)
    } else {
        (
            &a * &a + BigInt::from(3) * &a + BigInt::from(2),
            BigInt::one(),
            BigInt::from(4) * &a * &a + BigInt::from(12) * &a + 5,
        )
    };
    let (s, core) = square_part(&m);
    let den = den * s;
    let g = num.gcd(&den);
    (num / &g, den / g, core)
}

/// The largest-gap constant `f(B)` in closed form.
pub fn f_closed(b: u64) -> Result<QuadraticNumber> {
    b_positive(b)?;
    let (num, den, core) = f_parts(b);
    // num/(den√c) = num·√c/(den·c)
    let coeff = Ratio::new(num, &den * &core);
    Ok(QuadraticNumber::new(BigRational::one(), coeff, core))
}

/// `f(B)` as a compact expression, e.g. `1+2/sqrt(3)`.
pub fn f_symbolic(b: u64) -> Result<String> {
    b_positive(b)?;
    let (num, den, core) = f_parts(b);
    Ok(if den.is_one() {
        format!("1+{num}/sqrt({core})")
    } else {
        format!("1+{num}/({den}*sqrt({core}))")
    })
}

/// `B/4` and `(1 + √(4/5))·B`, which bracket `f(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FBounds {
    pub lower: BigRational,
    pub upper: QuadraticNumber,
}

pub fn f_bounds(b: u64) -> Result<FBounds> {
    b_positive(b)?;
    let bb = BigInt::from(b);
    // √(4/5) = 2√5/5
    let sqrt_four_fifths = QuadraticNumber::new(
        BigRational::zero(),
        BigRational::new(BigInt::from(2), BigInt::from(5)),
        BigInt::from(5),
    );
    let upper = (&QuadraticNumber::one() + &sqrt_four_fifths).scale(&BigRational::from_integer(bb.clone()));
    Ok(FBounds {
        lower: BigRational::new(bb, BigInt::from(4)),
        upper,
    })
}

/// Witness `(θ, N)` whose product `N·H(θ, N)` approaches `f(B)`.
#[derive(Clone, Debug)]
pub struct ExtremalWitness {
    pub b: u64,
    pub n: usize,
    pub theta: ContinuedFraction,
    /// `q_{2n−1} + ⌊(B+2)/2⌋·q_{2n} − 2`
    pub big_n: u64,
    /// `||q_{2n−1}θ|| − ⌊(B−2)/2⌋·||q_{2n}θ||` at the true `θ`.
    pub predicted_gap: CertifiedValue,
    /// `H(θ, N)` at the true `θ`.
    pub largest_gap: CertifiedValue,
    /// `N·H(θ, N)` at the true `θ`.
    pub product: CertifiedValue,
    pub f: QuadraticNumber,
    pub k_surrogate: usize,
    /// The predicted gap equals the largest gap, exactly under the surrogate.
    pub predicted_is_largest: bool,
    /// The predicted gap is one of the gap lengths.
    pub predicted_in_set: bool,
    /// The certified product lies strictly below `f(B)`.
    pub below_f: bool,
}

impl ExtremalWitness {
    pub fn gap_to_f(&self) -> CertifiedValue {
        let f_enclosure = CertifiedValue {
            center: self.f.approx(60),
            radius: BigRational::new(BigInt::one(), BigInt::from(10u8).pow(60)),
        };
        f_enclosure.sub(&self.product)
    }

    pub fn holds(&self) -> bool {
        self.predicted_is_largest && self.predicted_in_set && self.below_f
    }
}

pub fn extremal_witness(b: u64, n: usize) -> Result<ExtremalWitness> {
    b_positive(b)?;
    if n == 0 {
        return domain("witness index n must be at least 1");
    }
    let theta = ContinuedFraction::extremal(b)?;
    let q_odd = theta.convergent(2 * n - 1).unwrap().q;
    let q_even = theta.convergent(2 * n).unwrap().q;
    let big_n: BigInt = &q_odd + BigInt::from((b + 2) / 2) * &q_even - BigInt::from(2);
    let big_n = big_n
        .to_u64()
        .filter(|&v| v >= 1)
        .ok_or_else(|| Error::Domain(format!("N = {big_n} is out of range")))?;
    let gs = gap_set_with_radius(&theta, big_n, None)?;
    let c = Integer::div_floor(&(b as i64 - 2), &2);
    let c_r = BigRational::from_integer(BigInt::from(c));

    let s = gs.surrogate();
    let predicted_star = s.dist_to_int(&q_odd) - &c_r * s.dist_to_int(&q_even);
    let predicted_is_largest = &predicted_star == gs.largest();
    let predicted_in_set = gs.contains_gap(&predicted_star);

    let eps = BigRational::new(BigInt::one(), BigInt::from(10u8).pow(40));
    let d_odd = dist_to_int(&theta, q_odd.to_u64().unwrap(), &eps)?;
    let d_even = dist_to_int(&theta, q_even.to_u64().unwrap(), &eps)?;
    let predicted_gap = d_odd.sub(&d_even.scale(&c_r));
    let largest_gap = gs.certified_largest(&theta, &eps)?;
    let product = largest_gap.scale(&BigRational::from_integer(BigInt::from(big_n)));
    let f = f_closed(b)?;
    let below_f = QuadraticNumber::from_ratio(product.upper()) < f;
    Ok(ExtremalWitness {
        b,
        n,
        theta,
        big_n,
        predicted_gap,
        largest_gap,
        product,
        f,
        k_surrogate: gs.k_surrogate(),
        predicted_is_largest,
        predicted_in_set,
        below_f,
    })
}

/// Certified strict increase of consecutive witness products.
pub fn products_increasing(witnesses: &[ExtremalWitness]) -> bool {
    witnesses
        .windows(2)
        .all(|w| w[1].product.lower() > w[0].product.upper())
}

/// `f(B) − N·H` lower bound is positive, i.e. the product is below `f(B)`.
pub fn certified_below(product: &BigRational, f: &QuadraticNumber) -> bool {
    QuadraticNumber::from_ratio(product.clone()) < *f
}
