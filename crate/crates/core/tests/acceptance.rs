//! Acceptance suite: one PASS/FAIL line per criterion, each under its
//! wall-clock limit. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use threegap::cf::ContinuedFraction;
use threegap::kronecker::{self, largest_gap_midpoint};
use threegap::oracle::{self, Fixed, CF_DEPTH};
use threegap::sturmian::{self, ClosedFormMatch};
use threegap::three_gap::{self, extremal_witness, f_bounds, f_closed, f_symbolic, gap_set};
use threegap::QuadraticNumber;

type Outcome = Result<String, String>;

/// Id, name, wall-clock limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn sqrt(v: i64) -> QuadraticNumber {
    QuadraticNumber::sqrt(BigInt::from(v))
}

/// `1 + num/(den·√m)` built term by term.
fn substitution(num: i64, den: i64, m: i64) -> QuadraticNumber {
    let root = sqrt(m).scale(&int(den)).recip();
    &QuadraticNumber::one() + &root.scale(&int(num))
}

fn criterion_1() -> Outcome {
    let cases = [
        (1, substitution(2, 1, 5), "1+2/sqrt(5)"),
        (2, substitution(2, 1, 3), "1+2/sqrt(3)"),
        (3, substitution(6, 1, 21), "1+6/sqrt(21)"),
        (4, substitution(9, 2, 8), "1+9/(4*sqrt(2))"),
    ];
    for (b, expected, symbolic) in &cases {
        let f = f_closed(*b).map_err(|e| e.to_string())?;
        ensure(f.to_decimal(10) == expected.to_decimal(10), || {
            format!("B = {b}: {} vs {}", f.to_decimal(10), expected.to_decimal(10))
        })?;
        ensure(&f == expected, || format!("B = {b}: not exactly equal"))?;
        let sym = f_symbolic(*b).map_err(|e| e.to_string())?;
        ensure(sym == *symbolic, || format!("B = {b}: symbolic {sym}"))?;
    }
    for b in 5..=10i64 {
        let a = b / 2;
        let expected = if b % 2 == 0 {
            substitution((a + 1) * (a + 1), 2, a * a + 2 * a)
        } else {
            substitution(a * a + 3 * a + 2, 1, 4 * a * a + 12 * a + 5)
        };
        let f = f_closed(b as u64).map_err(|e| e.to_string())?;
        ensure(f.to_decimal(10) == expected.to_decimal(10), || format!("B = {b}: mismatch"))?;
    }
    for b in 1..=1000u64 {
        let bounds = f_bounds(b).map_err(|e| e.to_string())?;
        let f = f_closed(b).map_err(|e| e.to_string())?;
        let lower = QuadraticNumber::from_ratio(bounds.lower.clone());
        ensure(lower <= f && f <= bounds.upper, || format!("B = {b}: bounds violated"))?;
        if b == 1 {
            ensure(f == bounds.upper, || "upper bound not attained at B = 1".into())?;
        }
    }
    Ok("B = 1..10 at 10 digits; bounds exact for B ≤ 1000; equality at B = 1".into())
}

fn criterion_2() -> Outcome {
    let failures: Vec<String> = (0..500u64)
        .into_par_iter()
        .filter_map(|case| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x7a3 + case);
            let b = rng.gen_range(1..=10);
            let cf = oracle::random_theta(&mut rng, b);
            let n = rng.gen_range(1..=2000u64);
            let gs = match gap_set(&cf, n) {
                Ok(gs) => gs,
                Err(e) => return Some(format!("{cf} N = {n}: {e}")),
            };
            if let Err(v) = gs.verify() {
                return Some(format!("{cf} N = {n}: {v}"));
            }
            // true gaps lie within 2·radius of the surrogate gaps
            let two = int(2);
            let upper = gs.product_nh() + gs.radius() * two * int(n as i64);
            let f = f_closed(b).ok()?;
            if QuadraticNumber::from_ratio(upper) >= f {
                return Some(format!("{cf} N = {n}: N·H not certified below f({b})"));
            }
            None
        })
        .collect();
    ensure(failures.is_empty(), || format!("{} failures, first: {}", failures.len(), failures[0]))?;
    Ok("500 cases: 2 or 3 gaps, sum identity, total 1, N·H < f(B)".into())
}

fn criterion_3() -> Outcome {
    let mut summary = Vec::new();
    for b in 1..=3u64 {
        let witnesses: Vec<_> = (1..=10)
            .map(|n| extremal_witness(b, n))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for w in &witnesses {
            ensure(w.below_f, || format!("B = {b}, n = {}: product not below f", w.n))?;
        }
        ensure(three_gap::products_increasing(&witnesses), || format!("B = {b}: products not increasing"))?;
        let last = witnesses.last().unwrap();
        let gap = last.gap_to_f();
        ensure(gap.upper() < BigRational::new(BigInt::one(), BigInt::from(100)), || {
            format!("B = {b}: f − N·H = {}", gap.to_decimal(6))
        })?;
        summary.push(format!("B={b}: f−N·H={}", gap.to_decimal(3)));
    }
    Ok(summary.join(", "))
}

fn criterion_4() -> Outcome {
    let failures: Vec<String> = (0..1000u64)
        .into_par_iter()
        .filter_map(|case| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x4b0 + case);
            let b = rng.gen_range(1..=10);
            let cf = oracle::random_theta(&mut rng, b);
            let n = rng.gen_range(1..=1000u64);
            let den: i64 = rng.gen_range(1..=1_000_000);
            let beta = BigRational::new(rng.gen_range(0..den).into(), den.into());
            let sol = match kronecker::solve(&cf, &beta, n) {
                Ok(s) => s,
                Err(e) => return Some(format!("{cf} β = {beta} N = {n}: {e}")),
            };
            if !sol.within_bound() {
                return Some(format!("{cf} β = {beta} N = {n}: error above f(B)/(2N)"));
            }
            if sol.n > n || sol.p.abs() > BigInt::from(n) {
                return Some(format!("{cf} β = {beta} N = {n}: (n, p) out of range"));
            }
            let brute = oracle::brute_kronecker(
                &Fixed::from_cf(&cf, CF_DEPTH),
                &Fixed::from_ratio(beta.numer(), beta.denom()),
                n,
            )
            .ok()?;
            if (brute.n, &brute.p) != (sol.n, &sol.p) {
                return Some(format!(
                    "{cf} β = {beta} N = {n}: solve ({}, {}) vs brute ({}, {})",
                    sol.n, sol.p, brute.n, brute.p
                ));
            }
            None
        })
        .collect();
    ensure(failures.is_empty(), || format!("{} failures, first: {}", failures.len(), failures[0]))?;
    Ok("1000 cases within f(B)/(2N), all global minimizers".into())
}

fn criterion_5() -> Outcome {
    let w = extremal_witness(1, 10).map_err(|e| e.to_string())?;
    let gs = gap_set(&w.theta, w.big_n).map_err(|e| e.to_string())?;
    let beta = largest_gap_midpoint(&gs);
    let sol = kronecker::solve(&w.theta, &beta, w.big_n).map_err(|e| e.to_string())?;
    let threshold = sol.bound.scale(&BigRational::new(95.into(), 100.into()));
    // the true error is at least achieved − radius
    let lower = QuadraticNumber::from_ratio(&sol.achieved_error - &sol.radius);
    ensure(lower > threshold, || format!("tightness {:.6}", sol.tightness()))?;
    Ok(format!("N = {}, error/bound = {:.6}", w.big_n, sol.tightness()))
}

fn criterion_6() -> Outcome {
    let rows = sturmian::diversity_scan(&ContinuedFraction::golden(), 1, 30).map_err(|e| e.to_string())?;
    ensure(rows.len() == 29, || format!("{} rows", rows.len()))?;
    let bad: Vec<_> = rows.iter().filter(|r| !r.pass || r.bound != 18 * r.r * r.r).collect();
    ensure(bad.is_empty(), || format!("r = {} exceeds 18r²", bad[0].r))?;
    let worst = rows
        .iter()
        .map(|r| r.max_agreement as f64 / r.bound as f64)
        .fold(0.0, f64::max);
    Ok(format!("r ≤ 30, all pairs; max agreement/bound = {worst:.4}"))
}

fn criterion_7() -> Outcome {
    let mut summary = Vec::new();
    for (n, candidates) in [(2u32, (28u64, 30u64)), (3, (219, 224))] {
        let w = sturmian::lower_bound_witness(n).map_err(|e| e.to_string())?;
        let k = w.witness.k_star.first_difference().ok_or("no disagreement found")?;
        ensure((w.statement_form, w.proof_range_form) == candidates, || {
            format!("n = {n}: candidates {} / {}", w.statement_form, w.proof_range_form)
        })?;
        let f = |i| sturmian::fibonacci(i).to_u64().unwrap();
        ensure(k + 3 >= f(4 * n + 1) - f(2 * n + 1), || format!("n = {n}: k* = {k} too small"))?;
        ensure(w.disagreement_bits == Some((0, 1)), || format!("n = {n}: bits {:?}", w.disagreement_bits))?;
        ensure(w.crossing_pair && w.index_identity, || format!("n = {n}: crossing or identity failed"))?;
        let form = match w.matches {
            ClosedFormMatch::Statement => "statement form",
            ClosedFormMatch::ProofRange => "proof-range form",
            ClosedFormMatch::Neither => "neither form",
        };
        summary.push(format!("n={n}: k*={k} matches {form} ({} vs {})", candidates.0, candidates.1));
    }
    Ok(summary.join("; "))
}

fn criterion_8() -> Outcome {
    for n in 0..=50 {
        let p = sturmian::fib_lucas(n);
        ensure(p.binet_holds() && p.shift_identities_hold(), || format!("n = {n}: identity failed"))?;
    }
    for n in 2..=5 {
        let report = sturmian::ab_arrays(n).map_err(|e| e.to_string())?.verify();
        ensure(report.all_hold(), || format!("n = {n}: {report:?}"))?;
    }
    Ok("Binet and shift identities n ≤ 50; array invariants n = 2..5".into())
}

fn criterion_9() -> Outcome {
    let rep = sturmian::ratio_report(2, 8).map_err(|e| e.to_string())?;
    ensure(rep.final_distance() < 1e-3, || format!("distance {}", rep.final_distance()))?;
    ensure(rep.alternative_disagrees(), || "ratio closer to (√5+10)/10".into())?;
    let (_, last) = rep.rows.last().unwrap();
    Ok(format!(
        "n=8 ratio {} → α/√5 = {} (distance {:.2e}); differs from (√5+10)/10 = {}",
        last.to_f64().unwrap(),
        rep.limit.to_decimal(10),
        rep.final_distance(),
        rep.alternative.to_decimal(10)
    ))
}

fn criterion_10() -> Outcome {
    let seed = 0x5eed;
    let suites = [
        ("gaps", oracle::gap_suite(seed, 200)),
        ("kronecker", oracle::kronecker_suite(seed, 200)),
        ("agreement", oracle::agreement_suite(seed, 200)),
    ];
    let mut summary = Vec::new();
    for (name, reports) in &suites {
        let bad: Vec<_> = reports.iter().filter(|r| !r.agree).collect();
        ensure(reports.len() == 200 && bad.is_empty(), || {
            format!("{name}: {} disagreements, first {}", bad.len(), serde_json::to_string(bad[0]).unwrap())
        })?;
        summary.push(format!("{name} 200/200"));
    }
    Ok(summary.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "f(B) table and bounds", 1, criterion_1),
        (2, "three-gap structure", 60, criterion_2),
        (3, "extremal convergence", 10, criterion_3),
        (4, "Kronecker bound", 60, criterion_4),
        (5, "Kronecker tightness", 5, criterion_5),
        (6, "diversity upper bound", 60, criterion_6),
        (7, "lower-bound witness", 30, criterion_7),
        (8, "exact lemma suite", 30, criterion_8),
        (9, "ratio report", 1, criterion_9),
        (10, "oracle equivalence", 120, criterion_10),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; exceeded {limit} s limit"))
            }
            other => other,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} [{secs:.2} s / {limit} s]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail} [{secs:.2} s / {limit} s]");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
