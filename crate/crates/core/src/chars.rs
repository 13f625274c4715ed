//! Multiplicative characters of `F_q` with values in `Z[ζ_{q-1}]`, Jacobi
//! sums, the eigen-sums `λ_k` and the product
//! `R_q = ∏_{0<k<(q-1)/4} (J(φ, χ^k) + J(φ, χ^{-k}))`.
//!
//! The base character is `χ(g^j) = ζ^j` for the canonical generator `g`, so
//! `χ` coincides with the Teichmüller character under the reduction map.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::{CycloInt, CycloRing, ReductionMap};
use crate::error::{Error, Result};
use crate::field::{FqElement, FqField};

/// Number of integers `k` with `0 < k < (q-1)/4`.
pub fn two_adic_exponent(q: u64) -> u32 {
    ((q - 2) / 4) as u32
}

/// `χ^k` where `χ(g^j) = ζ^j`.
#[derive(Debug, Clone)]
pub struct Character {
    field: Arc<FqField>,
    ring: Arc<CycloRing>,
    k: u64,
}

impl Character {
    pub fn new(field: Arc<FqField>, ring: Arc<CycloRing>, k: i64) -> Result<Self> {
        if ring.conductor() + 1 != field.order() {
            return Err(Error::FieldRingMismatch {
                m: ring.conductor(),
                q: field.order(),
            });
        }
        let k = k.rem_euclid(ring.conductor() as i64) as u64;
        Ok(Character { field, ring, k })
    }

    /// Exponent in `[0, q-2]`.
    pub fn exponent(&self) -> u64 {
        self.k
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0
    }

    pub fn value(&self, x: FqElement) -> CycloInt {
        match self.field.dlog(x) {
            None => self.ring.zero(),
            Some(l) => self.ring.zeta_pow((self.k * l % self.ring.conductor()) as i64),
        }
    }

    pub fn inverse(&self) -> Character {
        Character {
            k: (self.ring.conductor() - self.k) % self.ring.conductor(),
            ..self.clone()
        }
    }

    pub fn product(&self, other: &Character) -> Character {
        Character {
            k: (self.k + other.k) % self.ring.conductor(),
            ..self.clone()
        }
    }
}

/// A field together with its cyclotomic ring and the tables every character
/// sum over it needs.
#[derive(Debug, Clone)]
pub struct CharacterSums {
    field: Arc<FqField>,
    ring: Arc<CycloRing>,
    /// `(dlog x, dlog(1-x))` for `x ∉ {0, 1}`.
    jacobi_pairs: Vec<(u64, u64)>,
    /// `(dlog s, φ(1+s))` for nonzero squares `s` with `1+s ≠ 0`.
    square_terms: Vec<(u64, i8)>,
}

impl CharacterSums {
    pub fn new(q: u64) -> Result<Self> {
        let field = Arc::new(FqField::with_order(q)?);
        let ring = CycloRing::new(q - 1);
        Self::from_parts(field, ring)
    }

    pub fn from_parts(field: Arc<FqField>, ring: Arc<CycloRing>) -> Result<Self> {
        if ring.conductor() + 1 != field.order() {
            return Err(Error::FieldRingMismatch {
                m: ring.conductor(),
                q: field.order(),
            });
        }
        let one = field.one();
        let jacobi_pairs = field
            .nonzero_elements()
            .filter_map(|x| {
                let y = field.sub(one, x);
                Some((field.dlog(x)?, field.dlog(y)?))
            })
            .collect();
        let square_terms = field
            .squares()
            .iter()
            .filter_map(|&s| {
                let chi = field.quadratic_character(field.add(one, s));
                (chi != 0).then(|| (field.dlog(s).unwrap(), chi))
            })
            .collect();
        Ok(CharacterSums {
            field,
            ring,
            jacobi_pairs,
            square_terms,
        })
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    /// `n = (q-1)/2`; `χ^n = φ`.
    pub fn n(&self) -> u64 {
        self.field.half_order()
    }

    pub fn character(&self, k: i64) -> Character {
        Character::new(Arc::clone(&self.field), Arc::clone(&self.ring), k)
            .expect("field and ring agree")
    }

    pub fn quadratic(&self) -> Character {
        self.character(self.n() as i64)
    }

    pub fn reduction_map(&self) -> ReductionMap {
        ReductionMap::new(Arc::clone(&self.ring), Arc::clone(&self.field))
            .expect("field and ring agree")
    }

    /// `J(χ^a, χ^b) = Σ_x χ^a(x) χ^b(1-x)`, every character vanishing at 0.
    pub fn jacobi_exponents(&self, a: i64, b: i64) -> CycloInt {
        let m = self.ring.conductor() as i64;
        let (a, b) = (a.rem_euclid(m) as u64, b.rem_euclid(m) as u64);
        let m = m as u64;
        let mut counts = vec![0i64; m as usize];
        for &(lx, ly) in &self.jacobi_pairs {
            counts[((a * lx + b * ly) % m) as usize] += 1;
        }
        self.ring.from_exponent_counts(&counts)
    }

    pub fn jacobi_sum(&self, chi: &Character, psi: &Character) -> Result<CycloInt> {
        for c in [chi, psi] {
            if c.field.order() != self.q() {
                return Err(Error::FieldRingMismatch {
                    m: c.ring.conductor(),
                    q: self.q(),
                });
            }
        }
        Ok(self.jacobi_exponents(chi.k as i64, psi.k as i64))
    }

    /// `Σ_{x ∈ S_q} φ(1+x) χ^j(x)` for any integer `j`.
    fn square_sum(&self, j: i64) -> CycloInt {
        let m = self.ring.conductor();
        let j = j.rem_euclid(m as i64) as u64;
        let mut counts = vec![0i64; m as usize];
        for &(l, chi) in &self.square_terms {
            counts[(j * l % m) as usize] += chi as i64;
        }
        self.ring.from_exponent_counts(&counts)
    }

    /// The eigenvalue `λ_k` of `A_q` belonging to `χ^k`, `1 ≤ k ≤ n`.
    pub fn lambda(&self, k: u64) -> Result<CycloInt> {
        if k == 0 || k > self.n() {
            return Err(Error::OutOfRange {
                name: "k",
                value: k as i64,
                range: format!("[1, {}]", self.n()),
            });
        }
        Ok(self.square_sum(k as i64))
    }

    /// `J(φ, χ^j) + J(φ, χ^{-j})` evaluated as `(-1)^j · 2 λ_j`.
    pub fn pair_sum(&self, j: i64) -> CycloInt {
        let sign = if j.is_even() { 2 } else { -2 };
        self.square_sum(j).scale(sign)
    }

    /// `J(φ, χ^j) + J(φ, χ^{-j})` from two full Jacobi sums.
    pub fn pair_sum_direct(&self, j: i64) -> CycloInt {
        let n = self.n() as i64;
        &self.jacobi_exponents(n, j) + &self.jacobi_exponents(n, -j)
    }

    /// `R_q(χ^s)` as a cyclotomic integer (before any rationality check).
    pub fn rq_element(&self, s: i64) -> CycloInt {
        self.product_of(|k| self.pair_sum(s * k))
    }

    /// `R_q(χ)` through full Jacobi sums; the reference path for
    /// [`Self::rq_element`].
    pub fn rq_element_direct(&self) -> CycloInt {
        self.product_of(|k| self.pair_sum_direct(k))
    }

    fn product_of(&self, factor: impl Fn(i64) -> CycloInt + Sync + Send) -> CycloInt {
        let e = two_adic_exponent(self.q()) as i64;
        let factors: Vec<CycloInt> = (1..=e).into_par_iter().map(factor).collect();
        factors
            .iter()
            .fold(self.ring.one(), |acc, f| &acc * f)
    }

    /// `Π_{k=1}^{n} λ_k`, which equals `det A_q`.
    pub fn lambda_product(&self) -> CycloInt {
        let factors: Vec<CycloInt> = (1..=self.n() as i64)
            .into_par_iter()
            .map(|k| self.square_sum(k))
            .collect();
        factors.iter().fold(self.ring.one(), |acc, f| &acc * f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RqResult {
    pub q: u64,
    pub n: u64,
    /// `#{k : 0 < k < (q-1)/4}`.
    pub e: u32,
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub r: BigInt,
    /// `R_q / 2^e`.
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub x: BigInt,
}

impl RqResult {
    fn from_element(q: u64, element: &CycloInt) -> Result<Self> {
        let r = element
            .as_rational_integer()
            .ok_or_else(|| Error::Falsified(format!("R_{q} is not a rational integer")))?;
        let e = two_adic_exponent(q);
        let two_e = BigInt::one() << e;
        let (x, rem) = r.div_rem(&two_e);
        if !rem.is_zero() {
            return Err(Error::Falsified(format!("2^{e} does not divide R_{q} = {r}")));
        }
        Ok(RqResult {
            q,
            n: (q - 1) / 2,
            e,
            r,
            x,
        })
    }
}

/// `R_q` through the `λ` path, with rationality and `2^e | R_q` enforced.
pub fn compute_rq(q: u64) -> Result<RqResult> {
    let sums = CharacterSums::new(q)?;
    sums.compute_rq()
}

impl CharacterSums {
    pub fn compute_rq(&self) -> Result<RqResult> {
        RqResult::from_element(self.q(), &self.rq_element(1))
    }

    pub fn compute_rq_direct(&self) -> Result<RqResult> {
        RqResult::from_element(self.q(), &self.rq_element_direct())
    }

    /// Recomputes `R_q(χ^s)` for every `s` coprime to `q-1`.
    pub fn generator_independence(&self) -> GeneratorIndependence {
        let m = self.ring.conductor() as i64;
        let reference = self.rq_element(1);
        let units: Vec<i64> = (1..m).filter(|s| s.gcd(&m) == 1).collect();
        let witness = units
            .par_iter()
            .find_first(|&&s| {
                let value = self.rq_element(s);
                value != reference || value.as_rational_integer().is_none()
            })
            .copied();
        GeneratorIndependence {
            q: self.q(),
            generators_checked: units.len(),
            witness,
        }
    }

    /// `J(φ, χ^k) = φ(-1) J(φ, φ χ^{-k})`.
    pub fn sign_transform_holds(&self, k: i64) -> bool {
        let n = self.n() as i64;
        let lhs = self.jacobi_exponents(n, k);
        let rhs = self.jacobi_exponents(n, n - k);
        let phi_minus_one = self.field.quadratic_character(self.field.neg(self.field.one()));
        lhs == rhs.scale(phi_minus_one as i64)
    }

    /// `J(φ, χ^k) · σ_{-1} J(φ, χ^k) = q`.
    pub fn norm_relation_holds(&self, k: i64) -> bool {
        let j = self.jacobi_exponents(self.n() as i64, k);
        let conj = j.galois_conjugate(-1).expect("-1 is a unit");
        (&j * &conj).as_rational_integer() == Some(BigInt::from(self.q()))
    }

    /// `σ_{-1} J(φ, χ^k) = J(φ, χ^{-k})`.
    pub fn conjugation_symmetry_holds(&self, k: i64) -> bool {
        let n = self.n() as i64;
        self.jacobi_exponents(n, k).galois_conjugate(-1).expect("unit")
            == self.jacobi_exponents(n, -k)
    }

    /// `2 λ_k = (-1)^k (J(φ, χ^k) + J(φ, χ^{-k}))`.
    pub fn lambda_identity_holds(&self, k: u64) -> bool {
        let Ok(lambda) = self.lambda(k) else {
            return false;
        };
        let sign = if k % 2 == 0 { 1 } else { -1 };
        lambda.scale(2) == self.pair_sum_direct(k as i64).scale(sign)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorIndependence {
    pub q: u64,
    pub generators_checked: usize,
    /// A generator exponent `s` with `R_q(χ^s) ≠ R_q(χ)`, if any.
    pub witness: Option<i64>,
}

impl GeneratorIndependence {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn verify_generator_independence(q: u64) -> Result<GeneratorIndependence> {
    Ok(CharacterSums::new(q)?.generator_independence())
}
