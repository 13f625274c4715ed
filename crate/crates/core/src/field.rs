//! The finite field `F_q`, `q = p^f`, realised through exponent and
//! discrete-log tables.
//!
//! Elements are encoded as the integer `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`
//! of their coefficient vector with respect to `1, x, ..., x^{f-1}`. That
//! integer order is the canonical element order used for square lists and
//! matrix indexing.
//!
//! For `f = 1` the generator is the smallest primitive root mod `p`. For
//! `f > 1` the modulus is the first monic degree-`f` polynomial (lower
//! coefficients enumerated as base-`p` digits of `0, 1, 2, ...`, constant term
//! least significant) whose root `x` has order `q - 1`. Such a polynomial is
//! exactly an irreducible factor of `Φ_{q-1}` mod `p`, so the generator is
//! simply the class of `x`.

use std::fmt;
use std::ops::Deref;

use crate::arith::{factorize, is_prime, smallest_primitive_root};
use crate::error::{Error, Result};

/// Largest field order the table-driven construction accepts.
pub const MAX_ORDER: u64 = 1_000_000;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElement(u32);

impl FqElement {
    /// Base-`p` encoding of the coefficient vector.
    pub fn value(self) -> u64 {
        self.0 as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct FqField {
    p: u64,
    f: u32,
    q: u64,
    /// Lower coefficients `c_0..c_{f-1}` of the monic modulus; `None` for f = 1.
    modulus: Option<Vec<u64>>,
    generator: FqElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    digit_place: Vec<u64>,
}

/// The nonzero squares of `F_q` in canonical (ascending encoding) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareList(Vec<FqElement>);

impl Deref for SquareList {
    type Target = [FqElement];

    fn deref(&self) -> &[FqElement] {
        &self.0
    }
}

impl FqField {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if f == 0 {
            return Err(Error::InvalidDegree(f));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::TooLarge {
                q: p.saturating_pow(f),
                max: MAX_ORDER,
            })?;

        let digit_place: Vec<u64> = (0..f).map(|i| p.pow(i)).collect();
        let (modulus, exp) = if f == 1 {
            let g = smallest_primitive_root(p);
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut cur = 1u64;
            for _ in 0..q - 1 {
                exp.push(cur as u32);
                cur = cur * g % p;
            }
            (None, exp)
        } else {
            let modulus = canonical_modulus(p, f, q);
            let exp = power_table_of_x(p, f, q, &modulus, &digit_place);
            (Some(modulus), exp)
        };

        let mut log = vec![NO_LOG; q as usize];
        for (j, &v) in exp.iter().enumerate() {
            debug_assert_eq!(log[v as usize], NO_LOG, "generator is not primitive");
            log[v as usize] = j as u32;
        }
        Ok(FqField {
            p,
            f,
            q,
            modulus,
            generator: FqElement(exp[1 % exp.len()]),
            exp,
            log,
            digit_place,
        })
    }

    /// Builds `F_q` from the order alone.
    pub fn with_order(q: u64) -> Result<Self> {
        if q > MAX_ORDER {
            return Err(Error::TooLarge { q, max: MAX_ORDER });
        }
        match crate::arith::prime_power(q) {
            Some((p, f)) if p % 2 == 1 => Self::new(p, f),
            _ => Err(Error::NotOddPrimePower(q)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// `(q - 1) / 2`.
    pub fn half_order(&self) -> u64 {
        (self.q - 1) / 2
    }

    /// Monic modulus as `c_0, ..., c_{f-1}, 1`, or `None` for prime fields.
    pub fn modulus_poly(&self) -> Option<Vec<u64>> {
        self.modulus.as_ref().map(|m| {
            let mut full = m.clone();
            full.push(1);
            full
        })
    }

    pub fn generator(&self) -> FqElement {
        self.generator
    }

    pub fn zero(&self) -> FqElement {
        FqElement(0)
    }

    pub fn one(&self) -> FqElement {
        FqElement(1)
    }

    pub fn element(&self, value: u64) -> Result<FqElement> {
        if value < self.q {
            Ok(FqElement(value as u32))
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    /// Image of a rational integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElement {
        FqElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElement> {
        if coeffs.len() > self.f as usize {
            return Err(Error::Precondition(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.f
            )));
        }
        let v = coeffs
            .iter()
            .zip(&self.digit_place)
            .map(|(&c, &place)| (c % self.p) * place)
            .sum();
        self.element(v)
    }

    pub fn coeffs(&self, x: FqElement) -> Vec<u64> {
        let mut v = x.value();
        (0..self.f)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FqElement> + '_ {
        (0..self.q as u32).map(FqElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElement> + '_ {
        (1..self.q as u32).map(FqElement)
    }

    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        if self.f == 1 {
            return FqElement(((a.0 as u64 + b.0 as u64) % self.p) as u32);
        }
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        if self.f == 1 {
            return FqElement(((a.0 as u64 + self.p - b.0 as u64) % self.p) as u32);
        }
        self.digitwise(a, b, |x, y| (x + self.p - y) % self.p)
    }

    pub fn neg(&self, a: FqElement) -> FqElement {
        self.sub(FqElement(0), a)
    }

    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        if a.is_zero() || b.is_zero() {
            return FqElement(0);
        }
        let j = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % (self.q - 1);
        FqElement(self.exp[j as usize])
    }

    /// Multiplication by an integer scalar (characteristic-aware).
    pub fn scale(&self, c: i64, a: FqElement) -> FqElement {
        let c = c.rem_euclid(self.p as i64) as u64;
        if self.f == 1 {
            return FqElement((c * a.0 as u64 % self.p) as u32);
        }
        self.digitwise(a, FqElement(0), |x, _| x * c % self.p)
    }

    pub fn inv(&self, a: FqElement) -> Option<FqElement> {
        let l = self.dlog(a)?;
        Some(self.gen_pow(-(l as i64)))
    }

    pub fn pow(&self, a: FqElement, e: u64) -> FqElement {
        match self.dlog(a) {
            None if e == 0 => self.one(),
            None => self.zero(),
            Some(l) => self.gen_pow(((l as u128 * e as u128) % (self.q as u128 - 1)) as i64),
        }
    }

    /// `g^j` for any integer `j`.
    pub fn gen_pow(&self, j: i64) -> FqElement {
        FqElement(self.exp[j.rem_euclid(self.q as i64 - 1) as usize])
    }

    /// Discrete logarithm to base `g`, in `[0, q-2]`; `None` for zero.
    pub fn dlog(&self, a: FqElement) -> Option<u64> {
        match self.log[a.0 as usize] {
            NO_LOG => None,
            l => Some(l as u64),
        }
    }

    /// φ_q: `0` at zero, `+1` on squares, `-1` otherwise.
    pub fn quadratic_character(&self, a: FqElement) -> i8 {
        match self.dlog(a) {
            None => 0,
            Some(l) if l % 2 == 0 => 1,
            Some(_) => -1,
        }
    }

    pub fn squares(&self) -> SquareList {
        SquareList(
            self.nonzero_elements()
                .filter(|&x| self.quadratic_character(x) == 1)
                .collect(),
        )
    }

    /// Whether the modulus divides `Φ_{q-1}` over `Z/p` (always true for
    /// f = 1, where there is no modulus).
    pub fn modulus_divides_cyclotomic(&self) -> bool {
        let Some(modulus) = &self.modulus else {
            return true;
        };
        let p = self.p as i64;
        let phi = crate::cyclo::cyclotomic_polynomial(self.q - 1);
        let mut rem: Vec<i64> = phi
            .iter()
            .map(|c| {
                let r = c % num_bigint::BigInt::from(p);
                i64::try_from(r).unwrap().rem_euclid(p)
            })
            .collect();
        let f = self.f as usize;
        // monic long division, highest degree first
        for top in (f..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            for (i, &m) in modulus.iter().enumerate() {
                let idx = top - f + i;
                rem[idx] = (rem[idx] - c * m as i64).rem_euclid(p);
            }
            rem[top] = 0;
        }
        rem.iter().all(|&c| c == 0)
    }

    fn digitwise(&self, a: FqElement, b: FqElement, op: impl Fn(u64, u64) -> u64) -> FqElement {
        let (mut x, mut y) = (a.value(), b.value());
        let mut out = 0;
        for &place in &self.digit_place {
            out += op(x % self.p, y % self.p) * place;
            x /= self.p;
            y /= self.p;
        }
        FqElement(out as u32)
    }
}

/// Multiply two residues of `Z/p[x] / (x^f + modulus)`.
fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let f = modulus.len();
    let mut prod = vec![0u64; 2 * f - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    for top in (f..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = top - f + i;
            prod[idx] = (prod[idx] + (p - c) * m) % p;
        }
    }
    prod.truncate(f);
    prod
}

fn x_power(e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let f = modulus.len();
    let mut base = vec![0u64; f];
    base[1 % f] = 1;
    if f == 1 {
        base[0] = (p - modulus[0]) % p;
    }
    let mut acc = vec![0u64; f];
    acc[0] = 1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, modulus, p);
        }
        base = poly_mulmod(&base, &base, modulus, p);
        e >>= 1;
    }
    acc
}

fn canonical_modulus(p: u64, f: u32, q: u64) -> Vec<u64> {
    let cofactors: Vec<u64> = factorize(q - 1).iter().map(|&(r, _)| (q - 1) / r).collect();
    let mut one = vec![0u64; f as usize];
    one[0] = 1;
    (0..q)
        .map(|t| {
            let mut t = t;
            (0..f)
                .map(|_| {
                    let c = t % p;
                    t /= p;
                    c
                })
                .collect::<Vec<u64>>()
        })
        .find(|modulus| {
            modulus[0] != 0
                && x_power(q - 1, modulus, p) == one
                && cofactors.iter().all(|&c| x_power(c, modulus, p) != one)
        })
        .expect("a primitive polynomial of every degree exists")
}

fn power_table_of_x(p: u64, f: u32, q: u64, modulus: &[u64], place: &[u64]) -> Vec<u32> {
    let f = f as usize;
    let mut cur = vec![0u64; f];
    cur[0] = 1;
    let mut exp = Vec::with_capacity((q - 1) as usize);
    for _ in 0..q - 1 {
        exp.push(cur.iter().zip(place).map(|(c, pl)| c * pl).sum::<u64>() as u32);
        let top = cur[f - 1];
        cur.rotate_right(1);
        cur[0] = 0;
        for i in 0..f {
            cur[i] = (cur[i] + (p - top) * modulus[i]) % p;
        }
    }
    exp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_generators() {
        assert_eq!(FqField::new(5, 1).unwrap().generator().value(), 2);
        assert_eq!(FqField::new(7, 1).unwrap().generator().value(), 3);
        assert_eq!(FqField::new(3, 1).unwrap().generator().value(), 2);
    }

    #[test]
    fn f9_generator_has_order_8() {
        let f9 = FqField::new(3, 2).unwrap();
        let g = f9.generator();
        // class of x
        assert_eq!(f9.coeffs(g), vec![0, 1]);
        let mut cur = f9.one();
        let mut order = 0;
        loop {
            cur = f9.mul(cur, g);
            order += 1;
            if cur == f9.one() {
                break;
            }
        }
        assert_eq!(order, 8);
        // first primitive monic quadratic over F_3 in enumeration order: x^2 + x + 2
        assert_eq!(f9.modulus_poly(), Some(vec![2, 1, 1]));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FqField::new(2, 3).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(FqField::new(9, 1).unwrap_err(), Error::NotOddPrime(9));
        assert_eq!(FqField::new(5, 0).unwrap_err(), Error::InvalidDegree(0));
        assert!(matches!(FqField::new(1009, 2), Err(Error::TooLarge { .. })));
        assert_eq!(FqField::with_order(15).unwrap_err(), Error::NotOddPrimePower(15));
        assert_eq!(FqField::with_order(4).unwrap_err(), Error::NotOddPrimePower(4));
    }

    #[test]
    fn quadratic_character_values() {
        let f7 = FqField::new(7, 1).unwrap();
        assert_eq!(f7.quadratic_character(f7.from_int(2)), 1);
        assert_eq!(f7.quadratic_character(f7.zero()), 0);
        let f5 = FqField::new(5, 1).unwrap();
        assert_eq!(f5.quadratic_character(f5.from_int(3)), -1);
    }

    #[test]
    fn square_lists() {
        let vals = |q| -> Vec<u64> {
            FqField::with_order(q).unwrap().squares().iter().map(|s| s.value()).collect()
        };
        assert_eq!(vals(7), vec![1, 2, 4]);
        assert_eq!(vals(5), vec![1, 4]);
        let f9 = FqField::new(3, 2).unwrap();
        let s = f9.squares();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|&x| f9.pow(x, 4) == f9.one()));
    }

    #[test]
    fn modulus_divides_cyclotomic_polynomial() {
        for q in [9u64, 25, 27, 49, 81, 125, 243, 343, 729] {
            let field = FqField::with_order(q).unwrap();
            assert!(field.modulus_divides_cyclotomic(), "q = {q}");
        }
    }

    #[test]
    fn dlog_is_a_bijection() {
        for q in [3u64, 9, 25, 27, 31] {
            let field = FqField::with_order(q).unwrap();
            let mut seen = vec![false; (q - 1) as usize];
            for x in field.nonzero_elements() {
                let l = field.dlog(x).unwrap();
                assert!(!seen[l as usize]);
                seen[l as usize] = true;
                assert_eq!(field.gen_pow(l as i64), x);
            }
            assert_eq!(field.dlog(field.zero()), None);
        }
    }

    #[test]
    fn wilson_and_character_properties() {
        for q in crate::arith::odd_prime_powers(3, 200) {
            let field = FqField::with_order(q).unwrap();
            let prod = field
                .nonzero_elements()
                .fold(field.one(), |acc, x| field.mul(acc, x));
            assert_eq!(prod, field.neg(field.one()), "Wilson fails at q = {q}");

            let minus_one = field.neg(field.one());
            assert_eq!(field.quadratic_character(minus_one) == 1, q % 4 == 1);

            for x in field.nonzero_elements() {
                for y in field.nonzero_elements() {
                    let lhs = field.quadratic_character(field.mul(x, y));
                    let rhs = field.quadratic_character(x) * field.quadratic_character(y);
                    assert_eq!(lhs, rhs);
                }
            }

            let squares = field.squares();
            assert_eq!(squares.len() as u64, (q - 1) / 2);
            for &a in squares.iter() {
                for &b in squares.iter() {
                    assert!(squares.binary_search(&field.mul(a, b)).is_ok());
                }
            }
        }
    }

    #[test]
    fn additive_structure() {
        let f27 = FqField::new(3, 3).unwrap();
        for a in f27.elements() {
            assert_eq!(f27.add(a, f27.neg(a)), f27.zero());
            assert_eq!(f27.scale(3, a), f27.zero());
            assert_eq!(f27.scale(2, a), f27.add(a, a));
            for b in f27.elements() {
                assert_eq!(f27.sub(f27.add(a, b), b), a);
            }
        }
        // distributivity spot check
        let (a, b, c) = (f27.element(5).unwrap(), f27.element(17).unwrap(), f27.element(22).unwrap());
        assert_eq!(
            f27.mul(a, f27.add(b, c)),
            f27.add(f27.mul(a, b), f27.mul(a, c))
        );
    }
}
