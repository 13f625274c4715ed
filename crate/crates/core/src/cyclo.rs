//! Cyclotomic integers `Z[ζ_m] = Z[x] / Φ_m(x)`.
//!
//! Elements are stored in the power basis `1, ζ, ..., ζ^{d-1}`,
//! `d = deg Φ_m`, always fully reduced, so equality is coefficient equality
//! and an element is a rational integer exactly when every non-constant
//! coefficient vanishes.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{FqElement, FqField};

/// The m-th cyclotomic polynomial, low-degree coefficient first.
///
/// Obtained by exact division of `x^m - 1` by `Φ_d` for every proper divisor
/// `d` of `m`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut memo = HashMap::new();
    cyclotomic_memo(m, &mut memo)
}

fn cyclotomic_memo(m: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial of order 0");
    if let Some(c) = memo.get(&m) {
        return c.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in crate::arith::divisors(m) {
        if d == m {
            continue;
        }
        let div = cyclotomic_memo(d, memo);
        num = exact_monic_quotient(&num, &div);
    }
    memo.insert(m, num.clone());
    num
}

fn exact_monic_quotient(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for top in (dn..rem.len()).rev() {
        let c = std::mem::take(&mut rem[top]);
        if c.is_zero() {
            continue;
        }
        for (i, di) in den[..dn].iter().enumerate() {
            rem[top - dn + i] -= &c * di;
        }
        quot[top - dn] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloRing {
    m: u64,
    /// Monic Φ_m, low-degree first, length d + 1.
    phi: Vec<i64>,
    /// Nonzero `(index, coeff)` pairs of Φ_m below the leading term.
    phi_tail: Vec<(usize, i64)>,
}

impl CycloRing {
    pub fn new(m: u64) -> Arc<Self> {
        let phi: Vec<i64> = cyclotomic_polynomial(m)
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient exceeds i64"))
            .collect();
        let d = phi.len() - 1;
        let phi_tail = phi[..d]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        Arc::new(CycloRing { m, phi, phi_tail })
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// `deg Φ_m = totient(m)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    pub fn zero(self: &Arc<Self>) -> CycloInt {
        CycloInt {
            ring: Arc::clone(self),
            coeffs: vec![BigInt::zero(); self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> CycloInt {
        self.from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(self: &Arc<Self>, n: T) -> CycloInt {
        let mut z = self.zero();
        z.coeffs[0] = n.into();
        z
    }

    /// `ζ_m^j` for any integer `j`.
    pub fn zeta_pow(self: &Arc<Self>, j: i64) -> CycloInt {
        let mut counts = vec![0i64; self.m as usize];
        counts[j.rem_euclid(self.m as i64) as usize] = 1;
        self.from_exponent_counts(&counts)
    }

    /// The element `Σ_j counts[j] ζ^j` for a length-`m` histogram of
    /// exponents. Character sums are accumulated this way before a single
    /// reduction.
    pub fn from_exponent_counts(self: &Arc<Self>, counts: &[i64]) -> CycloInt {
        assert_eq!(counts.len(), self.m as usize, "histogram length must be m");
        let coeffs = self
            .reduce_small(counts)
            .unwrap_or_else(|| self.reduce_big(counts.iter().map(|&c| BigInt::from(c)).collect()));
        CycloInt {
            ring: Arc::clone(self),
            coeffs,
        }
    }

    /// Reduce a dense polynomial of any length modulo Φ_m.
    fn reduce_big(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        for top in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[top]);
            if c.is_zero() {
                continue;
            }
            for &(i, pc) in &self.phi_tail {
                v[top - d + i] -= &c * pc;
            }
        }
        v.resize(d, BigInt::zero());
        v
    }

    fn reduce_small(&self, v: &[i64]) -> Option<Vec<BigInt>> {
        let d = self.degree();
        let mut w: Vec<i128> = v.iter().map(|&c| c as i128).collect();
        for top in (d..w.len()).rev() {
            let c = w[top];
            if c == 0 {
                continue;
            }
            for &(i, pc) in &self.phi_tail {
                let slot = &mut w[top - d + i];
                *slot = slot.checked_sub(c.checked_mul(pc as i128)?)?;
            }
        }
        w.truncate(d);
        w.resize(d, 0);
        Some(w.into_iter().map(BigInt::from).collect())
    }

    fn units(&self) -> impl Iterator<Item = i64> + '_ {
        (1..=self.m as i64).filter(move |t| t.gcd(&(self.m as i64)) == 1)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CycloInt {
    ring: Arc<CycloRing>,
    coeffs: Vec<BigInt>,
}

impl CycloInt {
    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    /// Power-basis coefficients, length `deg Φ_m`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_ring(&self, other: &CycloInt) -> Result<()> {
        if self.ring.m == other.ring.m {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring.m,
                right: other.ring.m,
            })
        }
    }

    pub fn checked_add(&self, other: &CycloInt) -> Result<CycloInt> {
        self.check_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloInt {
            ring: Arc::clone(&self.ring),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &CycloInt) -> Result<CycloInt> {
        self.check_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloInt {
            ring: Arc::clone(&self.ring),
            coeffs,
        })
    }

    /// Schoolbook product followed by reduction modulo Φ_m.
    pub fn checked_mul(&self, other: &CycloInt) -> Result<CycloInt> {
        self.check_ring(other)?;
        let d = self.ring.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        // put the sparser operand in the inner loop
        let (outer, inner) = if self.nonzero_terms() >= other.nonzero_terms() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let inner: Vec<(usize, &BigInt, Option<i64>)> = inner
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c, c.to_i64()))
            .collect();
        for (i, a) in outer.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b, small) in &inner {
                match small {
                    Some(s) => prod[i + j] += a * s,
                    None => prod[i + j] += a * b,
                }
            }
        }
        Ok(CycloInt {
            ring: Arc::clone(&self.ring),
            coeffs: self.ring.reduce_big(prod),
        })
    }

    fn nonzero_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> CycloInt {
        let c = c.into();
        CycloInt {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|a| a * &c).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> CycloInt {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divide every coefficient by an integer, if the division is exact.
    pub fn div_exact_int(&self, n: &BigInt) -> Option<CycloInt> {
        if n.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(CycloInt {
            ring: Arc::clone(&self.ring),
            coeffs,
        })
    }

    /// The automorphism `σ_t : ζ ↦ ζ^t`.
    pub fn galois_conjugate(&self, t: i64) -> Result<CycloInt> {
        let m = self.ring.m as i64;
        if t.gcd(&m) != 1 {
            return Err(Error::NotCoprime { t, m: self.ring.m });
        }
        let tr = t.rem_euclid(m);
        let mut dense = vec![BigInt::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[(i as i64 * tr % m) as usize] += c;
            }
        }
        Ok(CycloInt {
            ring: Arc::clone(&self.ring),
            coeffs: self.ring.reduce_big(dense),
        })
    }

    /// `Some(n)` when the element is the rational integer `n`.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Product of `σ_t(self)` over all `t ≠ 1` in `(Z/m)^×`.
    fn conjugate_cofactor(&self) -> CycloInt {
        self.ring
            .units()
            .filter(|&t| t != 1)
            .map(|t| self.galois_conjugate(t).expect("t is a unit"))
            .fold(self.ring.one(), |acc, c| &acc * &c)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigInt {
        (self * &self.conjugate_cofactor())
            .as_rational_integer()
            .expect("the norm is Galois invariant")
    }

    /// `self / other` when the quotient lies in `Z[ζ_m]`. Uses
    /// `a / b = a · ∏_{t≠1} σ_t(b) / N(b)`.
    pub fn checked_div_exact(&self, other: &CycloInt) -> Result<CycloInt> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::InexactDivision("cyclotomic division by zero"));
        }
        let cof = other.conjugate_cofactor();
        let norm = (other * &cof)
            .as_rational_integer()
            .expect("the norm is Galois invariant");
        (self * &cof)
            .div_exact_int(&norm)
            .ok_or(Error::InexactDivision("cyclotomic ring"))
    }

    /// Floating-point value under `ζ ↦ exp(2πi/m)`. For display only.
    pub fn complex_approx(&self) -> (f64, f64) {
        let m = self.ring.m as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let arg = 2.0 * std::f64::consts::PI * i as f64 / m;
            (re + c * arg.cos(), im + c * arg.sin())
        })
    }
}

impl fmt::Debug for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloInt[m={}]({})", self.ring.m, self)
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}z^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycloInt> for &CycloInt {
            type Output = CycloInt;

            /// Panics on a ring mismatch; use the `checked_*` form to recover.
            fn $method(self, rhs: &CycloInt) -> CycloInt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<CycloInt> for CycloInt {
            type Output = CycloInt;

            fn $method(self, rhs: CycloInt) -> CycloInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycloInt {
    type Output = CycloInt;

    fn neg(self) -> CycloInt {
        CycloInt {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloInt {
    type Output = CycloInt;

    fn neg(self) -> CycloInt {
        -&self
    }
}

/// The reduction `Z[ζ_{q-1}] → F_q`, `ζ ↦ g`, whose kernel is the prime
/// above `p` singled out by the field's canonical modulus.
#[derive(Debug, Clone)]
pub struct ReductionMap {
    ring: Arc<CycloRing>,
    field: Arc<FqField>,
}

impl ReductionMap {
    pub fn new(ring: Arc<CycloRing>, field: Arc<FqField>) -> Result<Self> {
        if ring.conductor() + 1 != field.order() {
            return Err(Error::FieldRingMismatch {
                m: ring.conductor(),
                q: field.order(),
            });
        }
        Ok(ReductionMap { ring, field })
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn reduce(&self, a: &CycloInt) -> Result<FqElement> {
        if a.ring.m != self.ring.m {
            return Err(Error::RingMismatch {
                left: a.ring.m,
                right: self.ring.m,
            });
        }
        let p = BigInt::from(self.field.characteristic());
        let field = &self.field;
        Ok(a.coeffs
            .iter()
            .enumerate()
            .fold(field.zero(), |acc, (i, c)| {
                let c = c.mod_floor(&p).to_i64().expect("residue fits");
                field.add(acc, field.scale(c, field.gen_pow(i as i64)))
            }))
    }

    /// ω(x) = ζ^{dlog x}, the lift whose reduction is `x` again.
    pub fn teichmuller(&self, x: FqElement) -> Result<CycloInt> {
        let l = self.field.dlog(x).ok_or(Error::ZeroElement)?;
        Ok(self.ring.zeta_pow(l as i64))
    }
}
