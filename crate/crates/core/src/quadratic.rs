//! Exact arithmetic in real quadratic fields ℚ(√d).
//!
//! A [`Quadratic`] is `a + b√d` with rational `a`, `b` and square-free
//! `d ≥ 1`. Values are kept normalized (`b = 0` exactly when `d = 1`), so the
//! derived equality is numeric equality. Ordering is decided with integer
//! arithmetic only, including between elements of different fields.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::decimal;
use crate::scalar::IntScalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic<T: Clone + Integer> {
    a: Ratio<T>,
    b: Ratio<T>,
    d: T,
}

/// Splits `n > 0` into `(s, core)` with `n = s²·core` and `core` square-free.
pub fn square_part<T: IntScalar>(n: &T) -> (T, T) {
    assert!(n.is_positive(), "square_part needs a positive argument");
    let mut rest = n.clone();
    let mut s = T::one();
    let mut core = T::one();
    let mut k = T::from_u8(2).unwrap();
    while k.clone() * k.clone() <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&k) {
            rest = rest / k.clone();
            e += 1;
        }
        for _ in 0..e / 2 {
            s = s * k.clone();
        }
        if e % 2 == 1 {
            core = core * k.clone();
        }
        k = k + T::one();
    }
    // whatever is left is 1 or a prime
    (s, core * rest)
}

fn cmp_zero<T: IntScalar>(x: &Ratio<T>) -> Ordering {
    if x.is_zero() {
        Ordering::Equal
    } else if x.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Sign of `a + b√d` for any `d ≥ 0`, square-free or not.
fn sign_ab<T: IntScalar>(a: &Ratio<T>, b: &Ratio<T>, d: &T) -> Ordering {
    let sa = cmp_zero(a);
    let sb = if d.is_zero() { Ordering::Equal } else { cmp_zero(b) };
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    let a2 = a.clone() * a.clone();
    let b2d = b.clone() * b.clone() * Ratio::from_integer(d.clone());
    match a2.cmp(&b2d) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `a + b√p + c√q` for `p, q ≥ 0`.
fn sign_abc<T: IntScalar>(a: &Ratio<T>, b: &Ratio<T>, p: &T, c: &Ratio<T>, q: &T) -> Ordering {
    let zero = Ratio::zero();
    // sign of u = b√p + c√q: compare b√p against -c√q
    let sb = sign_ab(&zero, b, p);
    let sc = sign_ab(&zero, c, q);
    let su = if sb == Ordering::Equal {
        sc
    } else if sc == Ordering::Equal || sb == sc {
        sb
    } else {
        let lhs = b.clone() * b.clone() * Ratio::from_integer(p.clone());
        let rhs = c.clone() * c.clone() * Ratio::from_integer(q.clone());
        match lhs.cmp(&rhs) {
            Ordering::Greater => sb,
            Ordering::Less => sc,
            Ordering::Equal => Ordering::Equal,
        }
    };
    let sa = cmp_zero(a);
    if sa == Ordering::Equal {
        return su;
    }
    if su == Ordering::Equal || su == sa {
        return sa;
    }
    // opposite signs: compare u² = b²p + c²q + 2bc√(pq) against a²
    let rational = b.clone() * b.clone() * Ratio::from_integer(p.clone())
        + c.clone() * c.clone() * Ratio::from_integer(q.clone())
        - a.clone() * a.clone();
    let two = Ratio::from_integer(T::from_u8(2).unwrap());
    let cross = two * b.clone() * c.clone();
    match sign_ab(&rational, &cross, &(p.clone() * q.clone())) {
        Ordering::Greater => su,
        Ordering::Less => sa,
        Ordering::Equal => Ordering::Equal,
    }
}

impl<T: IntScalar> Quadratic<T> {
    /// `a + b√d`; `d` need not be square-free but must be non-negative.
    pub fn new(a: Ratio<T>, b: Ratio<T>, d: T) -> Self {
        assert!(!d.is_negative(), "radicand must be non-negative, got {d}");
        if d.is_zero() || b.is_zero() {
            return Self::from_ratio(a);
        }
        let (s, core) = square_part(&d);
        let b = b * Ratio::from_integer(s);
        if core.is_one() {
            Self::from_ratio(a + b)
        } else {
            Quadratic { a, b, d: core }
        }
    }

    pub fn from_ratio(a: Ratio<T>) -> Self {
        Quadratic {
            a,
            b: Ratio::zero(),
            d: T::one(),
        }
    }

    pub fn from_integer(n: T) -> Self {
        Self::from_ratio(Ratio::from_integer(n))
    }

    /// `√n` for `n ≥ 0`.
    pub fn sqrt(n: T) -> Self {
        Self::new(Ratio::zero(), Ratio::one(), n)
    }

    pub fn zero() -> Self {
        Self::from_integer(T::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(T::one())
    }

    pub fn rational_part(&self) -> &Ratio<T> {
        &self.a
    }

    pub fn surd_coefficient(&self) -> &Ratio<T> {
        &self.b
    }

    /// Square-free radicand; `1` for rational values.
    pub fn radicand(&self) -> &T {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_ratio(&self) -> Option<&Ratio<T>> {
        self.is_rational().then_some(&self.a)
    }

    pub fn signum(&self) -> Ordering {
        sign_ab(&self.a, &self.b, &self.d)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        Quadratic {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// Field norm `a² − b²d`.
    pub fn norm(&self) -> Ratio<T> {
        self.a.clone() * self.a.clone()
            - self.b.clone() * self.b.clone() * Ratio::from_integer(self.d.clone())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        let n = self.norm();
        Quadratic {
            a: self.a.clone() / n.clone(),
            b: -self.b.clone() / n,
            d: self.d.clone(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powi(&self, exp: i32) -> Self {
        if exp >= 0 {
            self.pow(exp as u32)
        } else {
            self.recip().pow(exp.unsigned_abs())
        }
    }

    pub fn scale(&self, k: &Ratio<T>) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Quadratic {
            a: self.a.clone() * k.clone(),
            b: self.b.clone() * k.clone(),
            d: self.d.clone(),
        }
    }

    /// Exact `⌊x⌋`.
    pub fn floor(&self) -> T {
        let p = self.a.numer().clone() * self.b.denom().clone();
        let q = self.b.numer().clone() * self.a.denom().clone();
        let r = self.a.denom().clone() * self.b.denom().clone();
        if q.is_zero() {
            return p.div_floor(&r);
        }
        // d is square-free and > 1, so q√d is irrational and its floor is strict
        let root = (q.clone() * q.clone() * self.d.clone()).sqrt();
        let s = if q.is_positive() { root } else { -root - T::one() };
        (p + s).div_floor(&r)
    }

    pub fn ceil(&self) -> T {
        let f = self.floor();
        if self.is_rational() && self.a.is_integer() {
            f
        } else {
            f + T::one()
        }
    }

    /// `x − ⌊x⌋`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self - &Self::from_integer(self.floor())
    }

    /// First `count` partial quotients of the regular continued fraction,
    /// stopping early if the value is rational.
    pub fn cf_terms(&self, count: usize) -> Vec<T> {
        let mut out = Vec::with_capacity(count);
        let mut x = self.clone();
        while out.len() < count {
            let a = x.floor();
            let rem = &x - &Self::from_integer(a.clone());
            out.push(a);
            if rem.is_zero() {
                break;
            }
            x = rem.recip();
        }
        out
    }

    pub fn to_big(&self) -> Quadratic<BigInt> {
        fn big<T: IntScalar>(r: &Ratio<T>) -> Ratio<BigInt> {
            Ratio::new_raw(
                r.numer().to_bigint().unwrap(),
                r.denom().to_bigint().unwrap(),
            )
        }
        Quadratic {
            a: big(&self.a),
            b: big(&self.b),
            d: self.d.to_bigint().unwrap(),
        }
    }

    /// Rational `r` with `r ≤ x < r + 10^{-decimals}`.
    pub fn approx(&self, decimals: u32) -> Ratio<BigInt> {
        let big = self.to_big();
        let scale = BigInt::from(10u8).pow(decimals);
        let scaled = big.scale(&Ratio::from_integer(scale.clone()));
        Ratio::new(scaled.floor(), scale)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let big = self.to_big();
        let exact = &big.a + Quadratic::<BigInt>::surd_value(&big.b, &big.d, 80);
        exact.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.is_rational() {
            return decimal::format_sig(&self.to_big().a, sig);
        }
        let big = self.to_big();
        // pick enough fractional digits to resolve `sig` significant ones
        let mag = self.to_f64().abs().log10().floor();
        let decimals = (sig as f64 - mag + 6.0).max(8.0) as u32;
        let lo = big.approx(decimals);
        decimal::format_sig(&lo, sig)
    }
}

impl Quadratic<BigInt> {
    /// Rational approximation of `b√d` with absolute error below `2^{-bits}`.
    fn surd_value(b: &Ratio<BigInt>, d: &BigInt, bits: u32) -> Ratio<BigInt> {
        if b.is_zero() {
            return Ratio::zero();
        }
        let scale = BigInt::one() << bits as usize;
        let root = num_integer::Roots::sqrt(&(d * &scale * &scale));
        b * Ratio::new(root, scale)
    }
}

fn join_radicand<T: IntScalar>(x: &Quadratic<T>, y: &Quadratic<T>) -> T {
    if x.d.is_one() {
        y.d.clone()
    } else if y.d.is_one() || x.d == y.d {
        x.d.clone()
    } else {
        panic!("cannot combine elements of Q(sqrt({})) and Q(sqrt({}))", x.d, y.d)
    }
}

fn reduced<T: IntScalar>(a: Ratio<T>, b: Ratio<T>, d: T) -> Quadratic<T> {
    if b.is_zero() {
        Quadratic::from_ratio(a)
    } else {
        Quadratic { a, b, d }
    }
}

impl<'a, T: IntScalar> Add<&'a Quadratic<T>> for &'a Quadratic<T> {
    type Output = Quadratic<T>;
    fn add(self, rhs: &'a Quadratic<T>) -> Quadratic<T> {
        let d = join_radicand(self, rhs);
        reduced(
            self.a.clone() + rhs.a.clone(),
            self.b.clone() + rhs.b.clone(),
            d,
        )
    }
}

impl<'a, T: IntScalar> Sub<&'a Quadratic<T>> for &'a Quadratic<T> {
    type Output = Quadratic<T>;
    fn sub(self, rhs: &'a Quadratic<T>) -> Quadratic<T> {
        let d = join_radicand(self, rhs);
        reduced(
            self.a.clone() - rhs.a.clone(),
            self.b.clone() - rhs.b.clone(),
            d,
        )
    }
}

impl<'a, T: IntScalar> Mul<&'a Quadratic<T>> for &'a Quadratic<T> {
    type Output = Quadratic<T>;
    fn mul(self, rhs: &'a Quadratic<T>) -> Quadratic<T> {
        let d = join_radicand(self, rhs);
        let dr = Ratio::from_integer(d.clone());
        let a = self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.b.clone() * dr;
        let b = self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.a.clone();
        reduced(a, b, d)
    }
}

impl<'a, T: IntScalar> Div<&'a Quadratic<T>> for &'a Quadratic<T> {
    type Output = Quadratic<T>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Quadratic<T>) -> Quadratic<T> {
        self * &rhs.recip()
    }
}

impl<T: IntScalar> Neg for &Quadratic<T> {
    type Output = Quadratic<T>;
    fn neg(self) -> Quadratic<T> {
        Quadratic {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }
}

impl<T: IntScalar> Neg for Quadratic<T> {
    type Output = Quadratic<T>;
    fn neg(self) -> Quadratic<T> {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: IntScalar> $tr<Quadratic<T>> for Quadratic<T> {
            type Output = Quadratic<T>;
            fn $m(self, rhs: Quadratic<T>) -> Quadratic<T> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, T: IntScalar> $tr<&'a Quadratic<T>> for Quadratic<T> {
            type Output = Quadratic<T>;
            fn $m(self, rhs: &'a Quadratic<T>) -> Quadratic<T> {
                (&self).$m(rhs)
            }
        }
        impl<'a, T: IntScalar> $tr<Quadratic<T>> for &'a Quadratic<T> {
            type Output = Quadratic<T>;
            fn $m(self, rhs: Quadratic<T>) -> Quadratic<T> {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl<T: IntScalar> From<Ratio<T>> for Quadratic<T> {
    fn from(r: Ratio<T>) -> Self {
        Self::from_ratio(r)
    }
}

impl<T: IntScalar> PartialOrd for Quadratic<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: IntScalar> Ord for Quadratic<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = self.a.clone() - other.a.clone();
        if self.d.is_one() || other.d.is_one() || self.d == other.d {
            let d = if self.d.is_one() { &other.d } else { &self.d };
            sign_ab(&da, &(self.b.clone() - other.b.clone()), d)
        } else {
            sign_abc(&da, &self.b, &self.d, &(-other.b.clone()), &other.d)
        }
    }
}

impl<T: IntScalar> fmt::Display for Quadratic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let surd = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if (-self.b.clone()).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.b, self.d)
        };
        if self.a.is_zero() {
            f.write_str(&surd)
        } else if surd.starts_with('-') {
            write!(f, "{}{}", self.a, surd)
        } else {
            write!(f, "{}+{}", self.a, surd)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = Quadratic<BigInt>;

    fn r(n: i64, d: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    fn q(a: (i64, i64), b: (i64, i64), d: i64) -> Q {
        Q::new(r(a.0, a.1), r(b.0, b.1), BigInt::from(d))
    }

    #[test]
    fn normalizes_radicand() {
        let x = Q::sqrt(BigInt::from(12));
        assert_eq!(x, q((0, 1), (2, 1), 3));
        assert_eq!(Q::sqrt(BigInt::from(49)), Q::from_integer(BigInt::from(7)));
        assert_eq!(square_part(&360i64), (6, 10));
    }

    #[test]
    fn golden_ratio_identities() {
        let phi = q((1, 2), (1, 2), 5);
        assert_eq!(&phi * &phi, &phi + &Q::one());
        assert_eq!(phi.recip(), &phi - &Q::one());
        assert_eq!(phi.norm(), r(-1, 1));
        assert_eq!(phi.cf_terms(6), vec![BigInt::from(1); 6]);
    }

    #[test]
    fn floor_and_fract() {
        let s2 = Q::sqrt(BigInt::from(2));
        assert_eq!(s2.floor(), BigInt::from(1));
        assert_eq!((-&s2).floor(), BigInt::from(-2));
        assert_eq!(s2.scale(&r(1000, 1)).floor(), BigInt::from(1414));
        assert_eq!(s2.ceil(), BigInt::from(2));
        assert_eq!(Q::from_ratio(r(-3, 2)).floor(), BigInt::from(-2));
        assert!(s2.fract() > Q::zero() && s2.fract() < Q::one());
    }

    #[test]
    fn cross_field_ordering() {
        let s2 = Q::sqrt(BigInt::from(2));
        let s3 = Q::sqrt(BigInt::from(3));
        assert!(s2 < s3);
        // 1 + √2 ≈ 2.414 vs √6 ≈ 2.449 is close; decided without floats
        let lhs = &s2 + &Q::one();
        assert!(lhs < Q::sqrt(BigInt::from(6)));
        // √2 + √3 ≈ 3.146 > π-ish rational 3.14
        let sum_cmp = sign_abc(&r(-314, 100), &r(1, 1), &BigInt::from(2), &r(1, 1), &BigInt::from(3));
        assert_eq!(sum_cmp, Ordering::Greater);
        // 2/√5 == √(4/5)
        let lhs = Q::from_integer(BigInt::from(2)) / Q::sqrt(BigInt::from(5));
        let rhs = Q::new(r(0, 1), r(1, 5), BigInt::from(20));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn generic_over_machine_integers() {
        let phi: Quadratic<i64> = Quadratic::new(Ratio::new(1, 2), Ratio::new(1, 2), 5);
        let theta = phi.recip();
        assert_eq!(theta.floor(), 0);
        assert_eq!(phi.pow(10).floor(), 122);
        let wide: Quadratic<i128> = Quadratic::sqrt(8);
        assert_eq!(wide.surd_coefficient(), &Ratio::from_integer(2));
        assert_eq!(wide.to_big(), Q::sqrt(BigInt::from(8)));
    }

    #[test]
    fn display_and_decimal() {
        let phi = q((1, 2), (1, 2), 5);
        assert_eq!(phi.to_string(), "1/2+1/2*sqrt(5)");
        assert_eq!(phi.conjugate().to_string(), "1/2-1/2*sqrt(5)");
        assert_eq!(phi.to_decimal(10), "1.618033989");
        assert!((phi.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(an, ad, bn, bd)| q((an, ad), (bn, bd), 7))
    }

    proptest! {
        #[test]
        fn ordering_agrees_with_floats((x, y) in (small_q(), small_q())) {
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
            }
            prop_assert_eq!(x.cmp(&y), (&x - &y).signum());
        }

        #[test]
        fn field_axioms((x, y) in (small_q(), small_q())) {
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
            let f = x.floor();
            let fq = Q::from_integer(f.clone());
            prop_assert!(fq <= x && x < &fq + &Q::one());
        }
    }
}
