//! Decimal rendering of exact rationals for reports.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u8).pow(e)
}

/// `⌊log10 |x|⌋` for nonzero `x`.
fn decimal_exponent(x: &BigRational) -> i64 {
    let n = x.numer().abs();
    let d = x.denom().clone();
    let mut e = n.to_string().len() as i64 - d.to_string().len() as i64;
    // 10^e ≤ n/d < 10^{e+1}
    let le = |e: i64| -> bool {
        if e >= 0 {
            pow10(e as u32) * &d <= n
        } else {
            d.clone() <= &n * pow10((-e) as u32)
        }
    };
    while !le(e) {
        e -= 1;
    }
    while le(e + 1) {
        e += 1;
    }
    e
}

/// Round half away from zero to `sig` significant digits.
pub fn format_sig(x: &BigRational, sig: usize) -> String {
    let sig = sig.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    let mut e = decimal_exponent(&ax);
    let shift = sig as i64 - 1 - e;
    let scaled = if shift >= 0 {
        ax * BigRational::from_integer(pow10(shift as u32))
    } else {
        ax / BigRational::from_integer(pow10((-shift) as u32))
    };
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let mut digits = if BigInt::from(2) * r >= *scaled.denom() { q + 1 } else { q };
    if digits == pow10(sig as u32) {
        digits /= 10;
        e += 1;
    }
    let s = digits.to_string();
    let body = if (-7..21).contains(&e) {
        let point = e + 1;
        let raw = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), s)
        } else if point as usize >= s.len() {
            format!("{}{}", s, "0".repeat(point as usize - s.len()))
        } else {
            format!("{}.{}", &s[..point as usize], &s[point as usize..])
        };
        trim_fraction(raw)
    } else {
        let mantissa = if s.len() > 1 {
            trim_fraction(format!("{}.{}", &s[..1], &s[1..]))
        } else {
            s.clone()
        };
        format!("{mantissa}e{e}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Rounded to `sig` digits and converted, for JSON number fields.
pub fn to_f64_sig(x: &BigRational, sig: usize) -> f64 {
    format_sig(x, sig)
        .parse()
        .unwrap_or_else(|_| x.to_f64().unwrap_or(f64::NAN))
}
