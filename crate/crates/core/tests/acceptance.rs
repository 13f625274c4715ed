//! Acceptance criteria. Runs every criterion, prints one line each, and exits
//! non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cyclojac::arith::{odd_prime_powers, odd_primes, prime_power};
use cyclojac::chars::CharacterSums;
use cyclojac::curve::{decompose, trace_aq};
use cyclojac::elementary::{
    quadratic_duplication_check, class_number, jacobi_reduction_check, gauss_lemma_counts, factorial_class_number_congruence,
    floor_indicator_check, reduced_form_count, rq_local_congruences, verify_bp_symbol, yz_parity, ResidueClassData,
};
use cyclojac::matrix::{build_aq, legendre_matrix_determinant, det_eigen_product, det_exact, verify_eigenrelation, twisted_determinant};
use cyclojac::verify::{corollary, table, Source};
use cyclojac::{compute_rq, FqField};
use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

/// `R_q` from an independent floating-point evaluation of the Jacobi-sum
/// product, rounded to the nearest integer.
const ORACLE_RQ: [(u64, i64); 12] = [
    (3, 1),
    (5, 1),
    (7, -4),
    (9, -2),
    (11, 16),
    (13, -12),
    (17, -168),
    (19, -512),
    (23, -1024),
    (25, 2400),
    (27, 110592),
    (29, -5312),
];

fn euler(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u128;
    let (mut base, mut e, mut acc) = (a, (p - 1) / 2, 1u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    match acc {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Jacobi symbol as a product of Euler criteria over the factorization.
fn jacobi_oracle(a: i64, mut m: u64) -> i8 {
    let mut out = 1;
    let mut d = 3;
    while m > 1 {
        while m % d == 0 {
            out *= euler(a, d);
            m /= d;
        }
        d += 2;
        if d * d > m && m > 1 {
            out *= euler(a, m);
            break;
        }
    }
    out
}

/// Reduced forms `(a, b, c)` of discriminant `-p`, by scanning `a ≤ c`.
fn form_count_oracle(p: u64) -> u64 {
    let p = p as i64;
    let mut count = 0;
    for a in 1..=p {
        for c in a..=p {
            let b2 = 4 * a * c - p;
            if b2 < 0 {
                continue;
            }
            let b = (b2 as f64).sqrt().round() as i64;
            if b * b != b2 || b > a {
                continue;
            }
            let signs: &[i64] = if b == 0 || b == a || a == c { &[1] } else { &[1, -1] };
            count += signs.iter().filter(|&&s| (s * b).gcd(&a).gcd(&c) == 1).count() as u64;
        }
    }
    count
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn first_error<T: Send, F>(items: Vec<T>, f: F) -> Result<(), String>
where
    F: Fn(T) -> Result<(), String> + Sync + Send,
{
    items.into_par_iter().map(f).collect::<Vec<_>>().into_iter().collect()
}

fn table_reproduction() -> Result<String, String> {
    let rows = table(7, 29).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for row in &rows {
        check(row.paths_agree, || format!("q = {}: computation paths disagree", row.q))?;
        let r = row.r_q.clone().ok_or_else(|| format!("q = {}: no value", row.q))?;
        let oracle = ORACLE_RQ.iter().find(|(q, _)| *q == row.q).map(|&(_, v)| BigInt::from(v));
        check(oracle.as_ref() == Some(&r), || format!("q = {}: computed {r}, oracle {oracle:?}", row.q))?;
    }
    for q in [17u64, 27] {
        let row = rows.iter().find(|r| r.q == q).expect("row present");
        check(row.audit && row.tabulated.is_some(), || format!("q = {q}: not flagged for audit"))?;
    }
    let mut mismatched = Vec::new();
    for q in [7u64, 9, 11, 13, 19, 23, 25, 29] {
        let row = rows.iter().find(|r| r.q == q).expect("row present");
        if row.source != Source::Paper {
            mismatched.push(format!(
                "q = {q}: computed {}, tabulated {}",
                row.r_q.as_ref().unwrap(),
                row.tabulated.as_ref().unwrap()
            ));
        }
        notes.push(format!("{q}:{}", row.r_q.as_ref().unwrap()));
    }
    check(mismatched.is_empty(), || mismatched.join("; "))?;
    Ok(notes.join(" "))
}

fn integrality_and_independence() -> Result<String, String> {
    let qs = odd_prime_powers(3, 200);
    let n = qs.len();
    first_error(qs, |q| {
        let sums = CharacterSums::new(q).map_err(|e| e.to_string())?;
        let rq = sums.compute_rq().map_err(|e| format!("q = {q}: {e}"))?;
        check(&rq.x << rq.e == rq.r, || format!("q = {q}: R_q != 2^e x_q"))?;
        if q <= 100 {
            let gi = sums.generator_independence();
            check(gi.holds(), || format!("q = {q}: generator s = {:?} differs", gi.witness))?;
        }
        Ok(())
    })?;
    Ok(format!("{n} prime powers"))
}

fn determinant_identities() -> Result<String, String> {
    let spot = |q: u64| det_exact(&build_aq(&FqField::with_order(q).unwrap()));
    check(spot(7) == BigInt::from(-4), || format!("det A_7 = {}", spot(7)))?;
    check(spot(5) == BigInt::from(1), || format!("det A_5 = {}", spot(5)))?;
    check(decompose(5).unwrap().c == 1, || "c_5 != 1".into())?;
    check(decompose(13).unwrap().c == -3, || "c_13 != -3".into())?;
    let qs = odd_prime_powers(3, 200);
    let n = qs.len();
    first_error(qs, |q| {
        let sums = CharacterSums::new(q).map_err(|e| e.to_string())?;
        let det = det_exact(&build_aq(sums.field()));
        let eig = det_eigen_product(&sums).map_err(|e| e.to_string())?;
        check(det == eig, || format!("q = {q}: Bareiss {det}, eigen product {eig}"))?;
        let x = sums.compute_rq().map_err(|e| e.to_string())?.x;
        let x2 = &x * &x;
        if q % 4 == 3 {
            check(-&det == x2, || format!("q = {q}: -det {} vs x^2 {x2}", -&det))?;
        } else {
            let a = trace_aq(sums.field()).a;
            check(&det * 2 == &x2 * a, || format!("q = {q}: 2 det {} vs a x^2 {}", &det * 2, &x2 * a))?;
            if let Some((p, 1)) = prime_power(q) {
                let c = decompose(p).map_err(|e| e.to_string())?.c;
                let (quot, rem) = det.div_rem(&BigInt::from(c));
                check(rem == BigInt::from(0) && quot == x2, || format!("p = {p}: det / c = {det} / {c}"))?;
            }
        }
        Ok(())
    })?;
    Ok(format!("{n} prime powers"))
}

fn local_congruences() -> Result<String, String> {
    let composite: Vec<u64> = odd_prime_powers(3, 729)
        .into_iter()
        .filter(|&q| prime_power(q).unwrap().1 > 1)
        .collect();
    let primes = odd_primes(3, 300);
    let mut qs = composite.clone();
    qs.extend(&primes);
    let diverging: Vec<u64> = qs
        .into_par_iter()
        .map(|q| -> Result<Option<u64>, String> {
            let rq = compute_rq(q).map_err(|e| format!("q = {q}: {e}"))?;
            let v = rq_local_congruences(q, &rq.r).map_err(|e| e.to_string())?;
            check(v.congruence_holds(), || format!("q = {q}: congruence fails: {v:?}"))?;
            check(v.legendre_holds(), || format!("q = {q}: Legendre claim fails: {v:?}"))?;
            Ok(v.readings_diverge().then_some(q))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(format!(
        "{} composite q, {} primes; exponent readings differ at {} primes",
        composite.len(),
        primes.len(),
        diverging.len()
    ))
}

fn sign_reconstruction() -> Result<String, String> {
    for (p, r) in [(7u64, -4i64), (11, 16), (23, -1024)] {
        let c = corollary(p).map_err(|e| e.to_string())?;
        check(c.reconstructed == BigInt::from(r), || format!("p = {p}: reconstructed {}", c.reconstructed))?;
    }
    let ps: Vec<u64> = odd_primes(3, 300).into_iter().filter(|p| p % 4 == 3).collect();
    let n = ps.len();
    first_error(ps, |p| {
        let c = corollary(p).map_err(|e| format!("p = {p}: {e}"))?;
        check(c.holds(), || format!("p = {p}: reconstructed {}, computed {}", c.reconstructed, c.computed))
    })?;
    Ok(format!("{n} primes"))
}

fn lemma_suite() -> Result<String, String> {
    first_error(odd_prime_powers(3, 60), |q| {
        let sums = CharacterSums::new(q).unwrap();
        (1..=sums.n()).try_for_each(|k| {
            let c = verify_eigenrelation(&sums, k).map_err(|e| e.to_string())?;
            check(c.holds, || format!("eigen-relation q = {q}, k = {k}"))
        })
    })?;
    first_error((1..=200u64).step_by(2).collect(), |m| {
        (1..m.max(2) as i64).filter(|a| a.gcd(&(m as i64)) == 1).try_for_each(|a| {
            let c = gauss_lemma_counts(a, m).map_err(|e| e.to_string())?;
            check(c.symbol == jacobi_oracle(a, m) && c.holds(), || format!("Gauss lemma a = {a}, m = {m}"))
        })
    })?;
    first_error((2..=50u64).collect(), |m| {
        for a in (1..m as i64).filter(|a| a.gcd(&(m as i64)) == 1) {
            for i in 1..m {
                for j in i + 1..m {
                    let c = floor_indicator_check(a, m, i, j).map_err(|e| e.to_string())?;
                    check(c.holds(), || format!("floor identity a = {a}, m = {m}, i = {i}, j = {j}"))?;
                }
            }
        }
        Ok(())
    })?;
    first_error(odd_prime_powers(3, 200), |q| {
        (1..q).filter(|a| a.gcd(&(q - 1)) == 1).try_for_each(|a| {
            let d = ResidueClassData::new(q, a).map_err(|e| e.to_string())?;
            check(d.u_partition_holds(), || format!("U partition q = {q}, a = {a}"))?;
            check(q % 4 == 1 || d.middle_count_even(), || format!("X parity q = {q}, a = {a}"))
        })
    })?;
    first_error(odd_prime_powers(3, 100), |q| {
        let sums = CharacterSums::new(q).unwrap();
        (1..=q as i64 - 2).try_for_each(|k| check(sums.sign_transform_holds(k), || format!("sign transform q = {q}, k = {k}")))
    })?;
    first_error(vec![5u64, 7, 9, 13, 25], |q| {
        let sums = CharacterSums::new(q).unwrap();
        let map = sums.reduction_map();
        for i in 1..=q - 2 {
            for j in 1..=q - 2 {
                let c = jacobi_reduction_check(&sums, &map, i, j).map_err(|e| e.to_string())?;
                check(c.holds, || format!("reduction q = {q}, i = {i}, j = {j}"))?;
            }
        }
        Ok(())
    })?;
    first_error(odd_prime_powers(5, 50), |q| {
        let sums = CharacterSums::new(q).unwrap();
        (1..=q as i64 - 2).try_for_each(|k| {
            check(quadratic_duplication_check(&sums, k).unwrap_or(false), || format!("duplication q = {q}, k = {k}"))
        })
    })?;
    for (p, h) in [(7u64, 1u64), (23, 3), (31, 3)] {
        check(form_count_oracle(p) == h, || format!("form oracle h(-{p}) = {}", form_count_oracle(p)))?;
        check(class_number(p).unwrap().h == h, || format!("h(-{p}) != {h}"))?;
    }
    first_error(odd_primes(5, 500), |p| {
        if p % 4 == 1 {
            return check(verify_bp_symbol(p).unwrap().holds(), || format!("B_p symbol p = {p}"));
        }
        let rec = class_number(p).map_err(|e| e.to_string())?;
        check(rec.half_sum_relation_holds(), || format!("half-sum relation p = {p}"))?;
        check(rec.h == form_count_oracle(p), || format!("h(-{p}) = {} vs forms", rec.h))?;
        check(rec.h == reduced_form_count(-(p as i64)), || format!("h(-{p}) vs library forms"))?;
        check(factorial_class_number_congruence(p).unwrap().holds(), || format!("factorial congruence p = {p}"))?;
        check(yz_parity(p).unwrap().holds(), || format!("y + z parity p = {p}"))
    })?;
    Ok("all ranges exhausted".into())
}

fn cross_identities() -> Result<String, String> {
    for p in [3u64, 5, 7, 11] {
        let c = legendre_matrix_determinant(p).map_err(|e| e.to_string())?;
        check(c.holds(), || format!("p = {p}: det {}, p^((p-3)/2) {}, product {}", c.det, c.power, c.jacobi_product))?;
    }
    first_error(vec![7u64, 11, 19], |q| {
        let sums = CharacterSums::new(q).unwrap();
        (1..=q - 2).try_for_each(|r| {
            let w = twisted_determinant(&sums, r).map_err(|e| e.to_string())?;
            check(w.holds(), || format!("q = {q}, r = {r}"))
        })
    })?;
    Ok("Legendre matrix p <= 11, twisted determinants q in {7, 11, 19}".into())
}

type Criterion = (&'static str, Duration, fn() -> Result<String, String>);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 table reproduction", Duration::from_secs(10), table_reproduction),
        ("2 integrality and generator independence", Duration::from_secs(300), integrality_and_independence),
        ("3 determinant identities", Duration::from_secs(300), determinant_identities),
        ("4 local congruences", Duration::from_secs(600), local_congruences),
        ("5 sign reconstruction", Duration::from_secs(120), sign_reconstruction),
        ("6 lemma suite", Duration::from_secs(600), lemma_suite),
        ("7 cross identities", Duration::from_secs(120), cross_identities),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| {
            check(elapsed < limit, || format!("took {elapsed:.1?}, limit {limit:?}"))?;
            Ok(d)
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({elapsed:.2?} < {limit:?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}, limit {limit:?}): {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
