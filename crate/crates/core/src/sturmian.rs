//! Characteristic Sturmian words `s_i = ⌊(i+2)θ⌋ − ⌊(i+1)θ⌋`, agreement of
//! their arithmetic subsequences, the quadratic diversity bound, and the
//! exact Fibonacci/Lucas construction showing the bound is attained up to a
//! constant.
//!
//! The golden word is generated from `⌊m(√5−1)/2⌋ = ⌊(⌊m√5⌋ − m)/2⌋` with
//! integer square roots, so it is exact. Other slopes use a rational
//! surrogate and certify every floor individually.

use std::sync::{Arc, RwLock};

use bitvec::prelude::*;
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cf::ContinuedFraction;
use crate::error::{domain, Error, Result};
use crate::QuadraticNumber;

pub mod golden {
    //! Constants of ℚ(√5).
    use super::*;

    pub fn sqrt5() -> QuadraticNumber {
        QuadraticNumber::sqrt(BigInt::from(5))
    }

    /// `(1 + √5)/2`
    pub fn alpha() -> QuadraticNumber {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        QuadraticNumber::new(half.clone(), half, BigInt::from(5))
    }

    /// `(1 − √5)/2`
    pub fn beta() -> QuadraticNumber {
        alpha().conjugate()
    }

    /// `(√5 − 1)/2 = 1/α = −β`
    pub fn theta() -> QuadraticNumber {
        -beta()
    }

    /// `γ(m) = {mθ}`, exactly.
    pub fn gamma(m: &BigInt) -> QuadraticNumber {
        theta().scale(&BigRational::from_integer(m.clone())).fract()
    }

    /// `⌊mθ⌋` by integer square root.
    pub fn floor_multiple(m: u64) -> u64 {
        let m = m as u128;
        let root = (5 * m * m).sqrt();
        ((root - m) / 2) as u64
    }
}

pub fn fibonacci(n: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

pub fn lucas(n: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

fn fib_u64(n: u32) -> u64 {
    fibonacci(n).to_u64().expect("Fibonacci number fits u64")
}

fn lucas_u64(n: u32) -> u64 {
    lucas(n).to_u64().expect("Lucas number fits u64")
}

/// A binary prefix of the characteristic word of slope `θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmianSeq {
    theta: ContinuedFraction,
    bits: BitVec<u64, Lsb0>,
}

impl SturmianSeq {
    pub fn theta(&self) -> &ContinuedFraction {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.bits[i] as u8
    }

    pub fn bits(&self) -> &BitSlice<u64, Lsb0> {
        &self.bits
    }

    pub fn ones(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn to_vec(&self) -> Vec<u8> {
        self.bits.iter().map(|b| *b as u8).collect()
    }

    pub fn agreement(&self, r: u64, a: u64, b: u64, max_k: u64) -> Result<Agreement> {
        agreement(self, r, a, b, max_k)
    }
}

fn check_slope(cf: &ContinuedFraction) -> Result<()> {
    if cf.a0() != 0 || cf.prefix().is_empty() && cf.period().is_empty() {
        return domain(format!("slope {cf} must lie in (0, 1)"));
    }
    if cf.is_rational() {
        return domain(format!("slope {cf} must be irrational"));
    }
    Ok(())
}

/// `⌊mθ⌋` for `m = 0..=count`, under a surrogate that certifies each floor.
fn certified_floors(cf: &ContinuedFraction, count: u64) -> Vec<u64> {
    if *cf == ContinuedFraction::golden() {
        return (0..=count).map(golden::floor_multiple).collect();
    }
    let b = cf.bound().max(1);
    let m = BigInt::from(count.max(1));
    let base = BigInt::from(4 * (b + 2)) * &m * &m;
    let mut boost = BigInt::one();
    loop {
        let threshold = &base * &boost;
        let s = cf.surrogate_where(|q, qn| q * qn > threshold);
        let qn = s.q_next.clone().expect("irrational slope");
        if let Some(floors) = floors_u128(&s.p, &s.q, &qn, count) {
            return floors;
        }
        // a floor could not be certified at this depth (or the modulus is too
        // wide for u128); go deeper
        if s.q.bits() > 120 {
            return floors_big(&s.p, &s.q, &qn, count).expect("deep surrogate certifies");
        }
        boost <<= 8;
    }
}

fn floors_u128(p: &BigInt, q: &BigInt, qn: &BigInt, count: u64) -> Option<Vec<u64>> {
    let q = q.to_u128().filter(|&v| v < (1u128 << 126))?;
    let p = p.to_u128()?;
    let qn = qn.to_u128();
    let mut out = Vec::with_capacity(count as usize + 1);
    out.push(0);
    let (mut r, mut f) = (0u128, 0u64);
    for m in 1..=count {
        r += p;
        if r >= q {
            r -= q;
            f += 1;
        }
        // |mθ − mθ*| < m/(q·qn) must stay below the distance to an integer
        let dist = r.min(q - r);
        let certified = match qn {
            Some(qn) => dist.checked_mul(qn).is_none_or(|v| v > m as u128),
            None => true,
        };
        if dist == 0 || !certified {
            return None;
        }
        out.push(f);
    }
    Some(out)
}

fn floors_big(p: &BigInt, q: &BigInt, qn: &BigInt, count: u64) -> Option<Vec<u64>> {
    let mut out = Vec::with_capacity(count as usize + 1);
    out.push(0);
    for m in 1..=count {
        let mm = BigInt::from(m);
        let (f, r) = (&mm * p).div_mod_floor(q);
        let dist = r.clone().min(q - &r);
        if dist.is_zero() || &dist * qn <= mm {
            return None;
        }
        out.push(f.to_u64()?);
    }
    Some(out)
}

/// The first `len` terms of the characteristic word of slope `θ ∈ (0, 1)`.
pub fn generate(cf: &ContinuedFraction, len: usize) -> Result<SturmianSeq> {
    check_slope(cf)?;
    if len == 0 {
        return domain("length must be at least 1");
    }
    let floors = certified_floors(cf, len as u64 + 1);
    let bits = (0..len).map(|i| floors[i + 2] != floors[i + 1]).collect();
    Ok(SturmianSeq {
        theta: cf.clone(),
        bits,
    })
}

/// A characteristic word whose prefix grows on demand and is shared between
/// readers.
pub struct SturmianWord {
    theta: ContinuedFraction,
    cache: RwLock<Option<Arc<SturmianSeq>>>,
}

impl SturmianWord {
    pub fn new(cf: &ContinuedFraction) -> Result<Self> {
        check_slope(cf)?;
        Ok(SturmianWord {
            theta: cf.clone(),
            cache: RwLock::new(None),
        })
    }

    /// A prefix of at least `len` terms.
    pub fn prefix(&self, len: usize) -> Result<Arc<SturmianSeq>> {
        if let Some(seq) = self.cache.read().unwrap().as_ref() {
            if seq.len() >= len {
                return Ok(Arc::clone(seq));
            }
        }
        let mut slot = self.cache.write().unwrap();
        if let Some(seq) = slot.as_ref() {
            if seq.len() >= len {
                return Ok(Arc::clone(seq));
            }
        }
        let grown = len.max(slot.as_ref().map_or(0, |s| 2 * s.len()));
        let seq = Arc::new(generate(&self.theta, grown)?);
        *slot = Some(Arc::clone(&seq));
        Ok(seq)
    }
}

/// First index where two subsequences differ, or a lower bound on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Differs { k: u64 },
    AtLeast { k: u64 },
}

impl Agreement {
    pub fn value(&self) -> u64 {
        match *self {
            Agreement::Differs { k } | Agreement::AtLeast { k } => k,
        }
    }

    pub fn first_difference(&self) -> Option<u64> {
        match *self {
            Agreement::Differs { k } => Some(k),
            Agreement::AtLeast { .. } => None,
        }
    }
}

fn residue_args(r: u64, a: u64, b: u64) -> Result<()> {
    if !(a < b && b < r) {
        return domain(format!("residues must satisfy 0 ≤ a < b < r, got a = {a}, b = {b}, r = {r}"));
    }
    Ok(())
}

/// `min { k < max_k : s_{rk+a} ≠ s_{rk+b} }`.
pub fn agreement(s: &SturmianSeq, r: u64, a: u64, b: u64, max_k: u64) -> Result<Agreement> {
    residue_args(r, a, b)?;
    if max_k == 0 {
        return Ok(Agreement::AtLeast { k: 0 });
    }
    let required = r * (max_k - 1) + b + 1;
    if (s.len() as u64) < required {
        return Err(Error::SequenceTooShort {
            required,
            available: s.len() as u64,
        });
    }
    let bits = s.bits();
    let hit = (0..max_k).find(|&k| bits[(r * k + a) as usize] != bits[(r * k + b) as usize]);
    Ok(match hit {
        Some(k) => Agreement::Differs { k },
        None => Agreement::AtLeast { k: max_k },
    })
}

/// Agreement certificate for one residue pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiversityWitness {
    pub r: u64,
    pub a: u64,
    pub b: u64,
    pub k_star: Agreement,
    pub bound: u64,
}

impl DiversityWitness {
    pub fn within_bound(&self) -> bool {
        self.k_star.first_difference().is_some_and(|k| k <= self.bound)
    }
}

/// `2(B+2)²r²`.
pub fn diversity_bound(b: u64, r: u64) -> u64 {
    2 * (b + 2) * (b + 2) * r * r
}

/// One row of a diversity scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiversityRow {
    pub r: u64,
    pub max_agreement: u64,
    #[serde(skip)]
    pub argmax: (u64, u64),
    pub bound: u64,
    pub pass: bool,
}

/// For each `2 ≤ r ≤ r_max`, the largest agreement over all pairs `a < b < r`,
/// checked against `2(B+2)²r²`.
pub fn diversity_scan(cf: &ContinuedFraction, b: u64, r_max: u64) -> Result<Vec<DiversityRow>> {
    if b == 0 {
        return domain("bound B must be at least 1");
    }
    if !cf.in_class(b) {
        return domain(format!("θ = {cf} has a partial quotient above B = {b}"));
    }
    if r_max < 2 {
        return domain("r_max must be at least 2");
    }
    let word = SturmianWord::new(cf)?;
    let len_for = |r: u64| (r * diversity_bound(b, r) + r) as usize;
    let seq = word.prefix(len_for(r_max))?;
    (2..=r_max)
        .map(|r| {
            let bound = diversity_bound(b, r);
            let pairs: Vec<(u64, u64)> = (0..r).flat_map(|a| (a + 1..r).map(move |bb| (a, bb))).collect();
            let results: Result<Vec<((u64, u64), u64)>> = pairs
                .par_iter()
                .map(|&(a, bb)| Ok(((a, bb), agreement(&seq, r, a, bb, bound + 1)?.value())))
                .collect();
            let (argmax, max_agreement) = results?
                .into_iter()
                .max_by_key(|&(pair, v)| (v, std::cmp::Reverse(pair)))
                .expect("r ≥ 2 has a pair");
            Ok(DiversityRow {
                r,
                max_agreement,
                argmax,
                bound,
                pass: max_agreement <= bound,
            })
        })
        .collect()
}

/// `F_n` and `L_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibLucasPair {
    pub n: u32,
    pub f: BigInt,
    pub l: BigInt,
}

pub fn fib_lucas(n: u32) -> FibLucasPair {
    FibLucasPair {
        n,
        f: fibonacci(n),
        l: lucas(n),
    }
}

impl FibLucasPair {
    /// `F_n = (αⁿ − βⁿ)/√5` and `L_n = αⁿ + βⁿ` in ℚ(√5).
    pub fn binet_holds(&self) -> bool {
        let an = golden::alpha().pow(self.n);
        let bn = golden::beta().pow(self.n);
        let f = &(&an - &bn) / &golden::sqrt5();
        let l = &an + &bn;
        f == QuadraticNumber::from_integer(self.f.clone())
            && l == QuadraticNumber::from_integer(self.l.clone())
    }

    /// `F_n θ = F_{n−1} − βⁿ` and `L_n θ = L_{n−1} + √5 βⁿ`, for `n ≥ 1`.
    pub fn shift_identities_hold(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let theta = golden::theta();
        let bn = golden::beta().pow(self.n);
        let int = |v: BigInt| QuadraticNumber::from_integer(v);
        let lhs_f = &theta * &int(self.f.clone());
        let rhs_f = &int(fibonacci(self.n - 1)) - &bn;
        let lhs_l = &theta * &int(self.l.clone());
        let rhs_l = &int(lucas(self.n - 1)) + &(&golden::sqrt5() * &bn);
        lhs_f == rhs_f && lhs_l == rhs_l
    }
}

/// The arrays
/// `A[i,j] = (γ(F_{4n}) − 1)i + γ(L_{2n})j + γ(F_{2n−1})` and
/// `B[i,j] = (γ(F_{4n}) − 1)i + γ(L_{2n})j + γ(L_{2n})`
/// for `0 ≤ i ≤ L_{2n+1} − 2`, `0 ≤ j ≤ F_{2n} − 1`.
#[derive(Clone, Debug)]
pub struct AbArrays {
    pub n: u32,
    pub rows: usize,
    pub cols: usize,
    a: Vec<QuadraticNumber>,
    b: Vec<QuadraticNumber>,
    /// Step to the next column in a row.
    pub d: QuadraticNumber,
    /// Step up one row in a column.
    pub d_prime: QuadraticNumber,
    /// Step from the top of a column to the bottom of the next.
    pub d_double_prime: QuadraticNumber,
}

/// Closed forms shared by the array construction and its checks.
struct ArrayConstants {
    theta: QuadraticNumber,
    gamma_f2n1: QuadraticNumber,
    gamma_f4n: QuadraticNumber,
    gamma_l2n: QuadraticNumber,
}

impl ArrayConstants {
    fn new(n: u32) -> Self {
        let theta = golden::theta();
        let one = QuadraticNumber::one();
        ArrayConstants {
            gamma_f2n1: theta.pow(2 * n - 1),
            gamma_f4n: &one - &theta.pow(4 * n),
            gamma_l2n: &golden::sqrt5() * &theta.pow(2 * n),
            theta,
        }
    }

    fn entry(&self, i: usize, j: usize, offset: &QuadraticNumber) -> QuadraticNumber {
        let step_i = &self.gamma_f4n - &QuadraticNumber::one();
        let ii = BigRational::from_integer(BigInt::from(i));
        let jj = BigRational::from_integer(BigInt::from(j));
        &(&step_i.scale(&ii) + &self.gamma_l2n.scale(&jj)) + offset
    }
}

fn check_construction_index(n: u32) -> Result<()> {
    if n < 2 {
        domain(format!("construction index n = {n} must be at least 2"))
    } else {
        Ok(())
    }
}

pub fn ab_arrays(n: u32) -> Result<AbArrays> {
    check_construction_index(n)?;
    let c = ArrayConstants::new(n);
    let rows = lucas_u64(2 * n + 1) as usize - 1;
    let cols = fib_u64(2 * n) as usize;
    let mut a = Vec::with_capacity(rows * cols);
    let mut b = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            a.push(c.entry(i, j, &c.gamma_f2n1));
            b.push(c.entry(i, j, &c.gamma_l2n));
        }
    }
    let at = |i: usize, j: usize| &a[i * cols + j];
    let d = at(0, 1) - at(0, 0);
    let d_prime = at(0, 0) - at(1, 0);
    let d_double_prime = at(rows - 1, 1) - at(0, 0);
    Ok(AbArrays {
        n,
        rows,
        cols,
        a,
        b,
        d,
        d_prime,
        d_double_prime,
    })
}

/// Outcome of the exact checks on [`AbArrays`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbArraysReport {
    pub n: u32,
    /// `γ(F_{2n−1}) = θ^{2n−1}`, `γ(F_{4n}) = 1 − θ^{4n}`, `γ(L_{2n}) = √5θ^{2n}`.
    pub gamma_closed_forms: bool,
    /// `B − A = θ^{2n+1}` everywhere.
    pub constant_difference: bool,
    /// Bottom-up within columns, columns left to right, strictly increasing.
    pub column_major_ascent: bool,
    pub entries_in_unit_interval: bool,
    pub d_matches: bool,
    pub d_prime_matches: bool,
    pub d_double_prime_matches: bool,
    /// `A[L_{2n+1}−2, 0] = 2θ^{4n} + θ^{6n+1} > 0`.
    pub start_entry: bool,
    /// `B[0, F_{2n}−1] = 1 − θ^{4n} < 1`.
    pub end_entry: bool,
    /// Every entry equals `γ` of its integer argument.
    pub no_wrap_around: bool,
    /// All `(i, j)` with `A[i,j] < θ² < B[i,j]`.
    pub crossing_pairs: Vec<(usize, usize)>,
    /// The only crossing is `(L_{2n+1} − 2, F_{2n−2})`.
    pub crossing_unique: bool,
    pub crossing_closed_forms: bool,
    /// `θ² − θ^{4n−2} < A < θ²` at the crossing.
    pub lower_entry_bounds: bool,
    /// `θ² < B < θ² + θ^{2n−3} + 3θ^{4n}` at the crossing.
    pub upper_entry_bounds: bool,
    /// `(L_{2n+1} − 2)F_{4n} + F_{2n−2}L_{2n} = L_{2n}(F_{4n+1} − F_{2n+1} − 1)`.
    pub index_identity: bool,
}

impl AbArraysReport {
    pub fn all_hold(&self) -> bool {
        self.gamma_closed_forms
            && self.constant_difference
            && self.column_major_ascent
            && self.entries_in_unit_interval
            && self.d_matches
            && self.d_prime_matches
            && self.d_double_prime_matches
            && self.start_entry
            && self.end_entry
            && self.no_wrap_around
            && self.crossing_unique
            && self.crossing_closed_forms
            && self.lower_entry_bounds
            && self.upper_entry_bounds
            && self.index_identity
    }
}

/// `(L_{2n+1} − 2)F_{4n} + F_{2n−2}L_{2n} = L_{2n}(F_{4n+1} − F_{2n+1} − 1)`.
pub fn index_identity_holds(n: u32) -> bool {
    let lhs = (lucas(2 * n + 1) - 2) * fibonacci(4 * n) + fibonacci(2 * n - 2) * lucas(2 * n);
    let rhs = lucas(2 * n) * (fibonacci(4 * n + 1) - fibonacci(2 * n + 1) - 1);
    lhs == rhs
}

impl AbArrays {
    pub fn a(&self, i: usize, j: usize) -> &QuadraticNumber {
        &self.a[i * self.cols + j]
    }

    pub fn b(&self, i: usize, j: usize) -> &QuadraticNumber {
        &self.b[i * self.cols + j]
    }

    /// Entries in reading order: up each column, columns left to right.
    fn reading_order<'a>(&'a self, grid: &'a [QuadraticNumber]) -> impl Iterator<Item = &'a QuadraticNumber> + 'a {
        (0..self.cols).flat_map(move |j| (0..self.rows).rev().map(move |i| &grid[i * self.cols + j]))
    }

    pub fn verify(&self) -> AbArraysReport {
        let n = self.n;
        let c = ArrayConstants::new(n);
        let theta = &c.theta;
        let one = QuadraticNumber::one();
        let zero = QuadraticNumber::zero();
        let t = |e: u32| theta.pow(e);
        let big = |v: u64| BigInt::from(v);

        let f2n1 = fibonacci(2 * n - 1);
        let f4n = fibonacci(4 * n);
        let l2n = lucas(2 * n);
        let gamma_closed_forms = golden::gamma(&f2n1) == c.gamma_f2n1
            && golden::gamma(&f4n) == c.gamma_f4n
            && golden::gamma(&l2n) == c.gamma_l2n;

        let diff = t(2 * n + 1);
        let constant_difference = self.a.iter().zip(&self.b).all(|(a, b)| (b - a) == diff);

        let ascending = |grid: &[QuadraticNumber]| {
            let v: Vec<&QuadraticNumber> = self.reading_order(grid).collect();
            v.windows(2).all(|w| w[0] < w[1])
        };
        let column_major_ascent = ascending(&self.a) && ascending(&self.b);

        let entries_in_unit_interval = self
            .a
            .iter()
            .chain(&self.b)
            .all(|x| &zero < x && x < &one);

        let d_matches = self.d == &golden::sqrt5() * &t(2 * n);
        let d_prime_matches = self.d_prime == t(4 * n);
        let d_double_prime_matches =
            self.d_double_prime == &(&t(2 * n + 1) + &t(4 * n).scale(&BigRational::from_integer(big(2)))) + &t(6 * n + 1);

        let start = self.a(self.rows - 1, 0);
        let start_form = &t(4 * n).scale(&BigRational::from_integer(big(2))) + &t(6 * n + 1);
        let start_entry = start == &start_form && start_form.is_positive();
        let end = self.b(0, self.cols - 1);
        let end_form = &one - &t(4 * n);
        let end_entry = end == &end_form && end_form < one;

        let no_wrap_around = (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let base = &f4n * big(i as u64) + &l2n * big(j as u64);
                golden::gamma(&(&base + &f2n1)) == *self.a(i, j) && golden::gamma(&(&base + &l2n)) == *self.b(i, j)
            })
        });

        let theta_sq = t(2);
        let crossing_pairs: Vec<(usize, usize)> = (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .filter(|&(i, j)| self.a(i, j) < &theta_sq && &theta_sq < self.b(i, j))
            .collect();
        let expected = (
            lucas_u64(2 * n + 1) as usize - 2,
            fib_u64(2 * n - 2) as usize,
        );
        let crossing_unique = crossing_pairs == vec![expected];

        let (ci, cj) = expected;
        let a_star = self.a(ci, cj);
        let b_star = self.b(ci, cj);
        let two = BigRational::from_integer(big(2));
        let a_form = &(&(&theta_sq + &t(4 * n).scale(&two)) + &t(6 * n + 1)) - &t(4 * n - 2);
        let b_form = &(&(&(&(&theta_sq + &(&golden::sqrt5() * &t(2 * n))) + &t(4 * n).scale(&two)) + &t(6 * n + 1))
            - &t(2 * n - 1))
            - &t(4 * n - 2);
        let crossing_closed_forms = a_star == &a_form && b_star == &b_form;
        let lower_entry_bounds = &(&theta_sq - &t(4 * n - 2)) < a_star && a_star < &theta_sq;
        let three = BigRational::from_integer(big(3));
        let upper_entry_bounds =
            &theta_sq < b_star && b_star < &(&(&theta_sq + &t(2 * n - 3)) + &t(4 * n).scale(&three));

        AbArraysReport {
            n,
            gamma_closed_forms,
            constant_difference,
            column_major_ascent,
            entries_in_unit_interval,
            d_matches,
            d_prime_matches,
            d_double_prime_matches,
            start_entry,
            end_entry,
            no_wrap_around,
            crossing_pairs,
            crossing_unique,
            crossing_closed_forms,
            lower_entry_bounds,
            upper_entry_bounds,
            index_identity: index_identity_holds(n),
        }
    }

    /// Decimal grid of `A` (or `B`), one row per line.
    pub fn to_csv(&self, which_b: bool, sig: usize) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let x = if which_b { self.b(i, j) } else { self.a(i, j) };
                    x.to_decimal(sig)
                })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Which closed form for the first disagreement the scan confirmed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormMatch {
    /// `F_{4n+1} − F_{2n+1} − 1`
    Statement,
    /// `F_{4n+1} − F_{2n} − 1`
    ProofRange,
    Neither,
}

/// The Fibonacci/Lucas lower-bound construction checked on the golden word.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerBoundWitness {
    pub n: u32,
    pub witness: DiversityWitness,
    pub statement_form: u64,
    pub proof_range_form: u64,
    pub matches: ClosedFormMatch,
    /// `(s_{rk*+a}, s_{rk*+b})` at the first disagreement.
    pub disagreement_bits: Option<(u8, u8)>,
    /// `A[i,j] < θ² < B[i,j]` at `(L_{2n+1} − 2, F_{2n−2})`.
    pub crossing_pair: bool,
    pub index_identity: bool,
    /// `k* / r²`.
    pub ratio_to_r_squared: f64,
}

/// `(A[i*, j*], B[i*, j*])` at the crossing `(L_{2n+1} − 2, F_{2n−2})`,
/// without building the arrays.
pub fn crossing_entries(n: u32) -> Result<(QuadraticNumber, QuadraticNumber)> {
    check_construction_index(n)?;
    let c = ArrayConstants::new(n);
    let (i, j) = (lucas_u64(2 * n + 1) as usize - 2, fib_u64(2 * n - 2) as usize);
    Ok((c.entry(i, j, &c.gamma_f2n1), c.entry(i, j, &c.gamma_l2n)))
}

pub fn lower_bound_witness(n: u32) -> Result<LowerBoundWitness> {
    check_construction_index(n)?;
    let r = lucas_u64(2 * n);
    let a = fib_u64(2 * n - 1) - 1;
    let b = r - 1;
    let f4n1 = fib_u64(4 * n + 1);
    let statement_form = f4n1 - fib_u64(2 * n + 1) - 1;
    let proof_range_form = f4n1 - fib_u64(2 * n) - 1;
    let max_k = proof_range_form.max(statement_form) + 2;
    let seq = generate(&ContinuedFraction::golden(), (r * max_k) as usize)?;
    let k_star = agreement(&seq, r, a, b, max_k)?;
    let disagreement_bits = k_star
        .first_difference()
        .map(|k| (seq.get((r * k + a) as usize), seq.get((r * k + b) as usize)));
    let matches = match k_star.first_difference() {
        Some(k) if k == statement_form => ClosedFormMatch::Statement,
        Some(k) if k == proof_range_form => ClosedFormMatch::ProofRange,
        _ => ClosedFormMatch::Neither,
    };

    let (a_star, b_star) = crossing_entries(n)?;
    let theta_sq = golden::theta().pow(2);
    let crossing_pair = a_star < theta_sq && theta_sq < b_star;

    Ok(LowerBoundWitness {
        n,
        witness: DiversityWitness {
            r,
            a,
            b,
            k_star,
            bound: diversity_bound(1, r),
        },
        statement_form,
        proof_range_form,
        matches,
        disagreement_bits,
        crossing_pair,
        index_identity: index_identity_holds(n),
        ratio_to_r_squared: k_star.value() as f64 / (r * r) as f64,
    })
}

/// `F_{4n+1}/L_{2n}²` against its limit `α/√5 = (5 + √5)/10`.
#[derive(Clone, Debug)]
pub struct RatioReport {
    pub rows: Vec<(u32, BigRational)>,
    pub limit: QuadraticNumber,
    /// `(√5 + 10)/10`, a constant sometimes quoted for this ratio.
    pub alternative: QuadraticNumber,
}

impl RatioReport {
    /// Distance of the last ratio to the limit.
    pub fn final_distance(&self) -> f64 {
        let (_, last) = self.rows.last().expect("at least one row");
        (&QuadraticNumber::from_ratio(last.clone()) - &self.limit).abs().to_f64()
    }

    /// Distance of the last ratio to the alternative constant.
    pub fn final_distance_to_alternative(&self) -> f64 {
        let (_, last) = self.rows.last().expect("at least one row");
        (&QuadraticNumber::from_ratio(last.clone()) - &self.alternative).abs().to_f64()
    }

    /// The ratios settle on the limit rather than on the alternative.
    pub fn alternative_disagrees(&self) -> bool {
        self.final_distance() < self.final_distance_to_alternative()
    }
}

pub fn ratio_report(n_min: u32, n_max: u32) -> Result<RatioReport> {
    check_construction_index(n_min)?;
    if n_max < n_min {
        return domain("empty range");
    }
    let rows = (n_min..=n_max)
        .map(|n| {
            let l = lucas(2 * n);
            (n, BigRational::new(fibonacci(4 * n + 1), &l * &l))
        })
        .collect();
    let tenth = BigRational::new(BigInt::one(), BigInt::from(10));
    Ok(RatioReport {
        rows,
        limit: &golden::alpha() / &golden::sqrt5(),
        alternative: QuadraticNumber::new(BigRational::one(), tenth, BigInt::from(5)),
    })
}
