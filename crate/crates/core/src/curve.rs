//! The curve `Y^2 = X^3 + X` over `F_q` and the representation
//! `p = c^2 + 4d^2`, `c ≡ 1 (mod 4)`.

use serde::Serialize;

use crate::arith::{is_prime, isqrt};
use crate::error::{Error, Result};
use crate::field::FqField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveTrace {
    pub q: u64,
    /// `-Σ_x φ(x^3 + x)`.
    pub a: i64,
}

impl CurveTrace {
    pub fn within_hasse_bound(&self) -> bool {
        (self.a as i128).pow(2) <= 4 * self.q as i128
    }
}

pub fn trace_aq(field: &FqField) -> CurveTrace {
    let sum: i64 = field
        .elements()
        .map(|x| field.quadratic_character(cubic(field, x)) as i64)
        .sum();
    CurveTrace {
        q: field.order(),
        a: -sum,
    }
}

fn cubic(field: &FqField, x: crate::field::FqElement) -> crate::field::FqElement {
    field.add(field.pow(x, 3), x)
}

/// `#E(F_q)` by enumerating every pair `(x, y)`, plus the point at infinity.
pub fn brute_force_point_count(field: &FqField) -> u64 {
    let squares_of: Vec<_> = field.elements().map(|y| field.mul(y, y)).collect();
    let affine = field
        .elements()
        .map(|x| {
            let rhs = cubic(field, x);
            squares_of.iter().filter(|&&y2| y2 == rhs).count() as u64
        })
        .sum::<u64>();
    affine + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoSquareDecomp {
    pub p: u64,
    pub c: i64,
    pub d: u64,
}

/// The unique `(c, d)` with `p = c^2 + 4d^2`, `c ≡ 1 (mod 4)`, `d ≥ 0`.
pub fn decompose(p: u64) -> Result<TwoSquareDecomp> {
    if !is_prime(p) || p % 2 == 0 {
        return Err(Error::NotOddPrime(p));
    }
    if p % 4 != 1 {
        return Err(Error::Precondition(format!("p = {p} is not 1 mod 4")));
    }
    let mut d = 0u64;
    while 4 * d * d < p {
        let rest = p - 4 * d * d;
        let c = isqrt(rest);
        if c * c == rest {
            let c = c as i64;
            let c = if c.rem_euclid(4) == 1 { c } else { -c };
            debug_assert_eq!(c.rem_euclid(4), 1);
            return Ok(TwoSquareDecomp { p, c, d });
        }
        d += 1;
    }
    Err(Error::Falsified(format!("prime {p} = 1 mod 4 has no representation c^2 + 4d^2")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HalfSumCheck {
    pub p: u64,
    /// `Σ_{0<x<p/2} φ(x^3 + x)`.
    pub half_sum: i64,
    pub c: i64,
    pub a: i64,
}

impl HalfSumCheck {
    pub fn holds(&self) -> bool {
        self.half_sum == -self.c && self.a == 2 * self.c
    }
}

pub fn verify_trace_half_sum(p: u64) -> Result<HalfSumCheck> {
    let TwoSquareDecomp { c, .. } = decompose(p)?;
    let field = FqField::new(p, 1)?;
    let half_sum = (1..=(p - 1) / 2)
        .map(|x| field.quadratic_character(cubic(&field, field.from_int(x as i64))) as i64)
        .sum();
    Ok(HalfSumCheck {
        p,
        half_sum,
        c,
        a: trace_aq(&field).a,
    })
}
