//! Cyclotomic matrices and fraction-free determinants.
//!
//! One Bareiss elimination serves both integer matrices and matrices over
//! `Z[ζ_m]`; every intermediate division is exact in an integral domain and
//! is checked as such.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chars::CharacterSums;
use crate::cyclo::CycloInt;
use crate::error::{Error, Result};
use crate::field::FqField;

/// Entries an exact fraction-free elimination can run over.
pub trait BareissEntry: Clone {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Result<Self>;
}

impl BareissEntry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        BigInt::zero()
    }

    fn one_like(&self) -> Self {
        BigInt::one()
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn div_exact(&self, other: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(other);
        if Zero::is_zero(&r) {
            Ok(q)
        } else {
            Err(Error::InexactDivision("integer Bareiss step"))
        }
    }
}

impl BareissEntry for CycloInt {
    fn is_zero(&self) -> bool {
        CycloInt::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        self.ring().zero()
    }

    fn one_like(&self) -> Self {
        self.ring().one()
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn div_exact(&self, other: &Self) -> Result<Self> {
        self.checked_div_exact(other)
    }
}

/// Square matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

pub type MatrixZ = Matrix<BigInt>;
pub type MatrixCyclo = Matrix<CycloInt>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    /// `P M P^T` for the permutation sending index `i` to `perm[i]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        Matrix::from_fn(self.n, |i, j| self.get(perm[i], perm[j]).clone())
    }
}

impl<T: BareissEntry> Matrix<T> {
    /// Fraction-free Gaussian elimination. Pivot: first nonzero entry in the
    /// column at or below the diagonal; a zero column ends with `det = 0`.
    pub fn det_bareiss(&self) -> Result<Option<T>> {
        let n = self.n;
        if n == 0 {
            return Ok(None);
        }
        let mut a: Vec<Vec<T>> = self.rows().map(<[T]>::to_vec).collect();
        let mut negate = false;
        let mut prev = a[0][0].one_like();
        for k in 0..n - 1 {
            let Some(pivot) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Some(a[0][0].zero_like()));
            };
            if pivot != k {
                a.swap(pivot, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num.div_exact(&prev)?;
                }
                a[i][k] = a[i][k].zero_like();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(Some(if negate { det.neg() } else { det }))
    }
}

impl MatrixZ {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| BigInt::from((i == j) as i32))
    }

    pub fn from_small(n: usize, rows: &[i64]) -> Self {
        assert_eq!(rows.len(), n * n);
        Matrix::from_fn(n, |i, j| BigInt::from(rows[i * n + j]))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// `A_q = [φ(s_i + s_j)]` over the canonical square order.
pub fn build_aq(field: &FqField) -> MatrixZ {
    let squares = field.squares();
    Matrix::from_fn(squares.len(), |i, j| {
        BigInt::from(field.quadratic_character(field.add(squares[i], squares[j])))
    })
}

/// Exact determinant; the empty matrix has determinant 1.
pub fn det_exact(m: &MatrixZ) -> BigInt {
    m.det_bareiss()
        .expect("integer Bareiss divisions are exact")
        .unwrap_or_else(BigInt::one)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenCheck {
    pub k: u64,
    pub holds: bool,
    /// First row where `(A v)_i ≠ λ v_i`.
    pub bad_row: Option<usize>,
}

/// Checks `A_q v_k = λ_k v_k` with `v_k = (χ^k(s_1), ..., χ^k(s_n))`.
pub fn verify_eigenrelation(sums: &CharacterSums, k: u64) -> Result<EigenCheck> {
    let lambda = sums.lambda(k)?;
    let field = sums.field();
    let a = build_aq(field);
    let chi = sums.character(k as i64);
    let v: Vec<CycloInt> = field.squares().iter().map(|&s| chi.value(s)).collect();
    let ring = sums.ring();
    let bad_row = a.rows().enumerate().find_map(|(i, row)| {
        let av = row.iter().zip(&v).fold(ring.zero(), |acc, (c, vj)| {
            if Zero::is_zero(c) {
                acc
            } else {
                &acc + &vj.scale(c.clone())
            }
        });
        (av != &lambda * &v[i]).then_some(i)
    });
    Ok(EigenCheck {
        k,
        holds: bad_row.is_none(),
        bad_row,
    })
}

/// `∏_{k=1}^n λ_k` as a rational integer.
pub fn det_eigen_product(sums: &CharacterSums) -> Result<BigInt> {
    sums.lambda_product().as_rational_integer().ok_or_else(|| {
        Error::Falsified(format!(
            "product of the eigen-sums of A_{} is not rational",
            sums.q()
        ))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LegendreMatrixReport {
    pub p: u64,
    /// `det[((i-j)/p)]_{1≤i,j≤p-1}`.
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub det: BigInt,
    /// `p^{(p-3)/2}`.
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub power: BigInt,
    /// `(-1)^{(p-1)/2} ∏_{k=1}^{p-1} J(φ, χ^k)`.
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub jacobi_product: BigInt,
}

impl LegendreMatrixReport {
    pub fn holds(&self) -> bool {
        self.det == self.power && self.det == self.jacobi_product
    }
}

pub fn legendre_matrix_determinant(p: u64) -> Result<LegendreMatrixReport> {
    if p % 2 == 0 || !crate::arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let sums = CharacterSums::new(p)?;
    let field = sums.field();
    let m = Matrix::from_fn((p - 1) as usize, |i, j| {
        let diff = field.from_int(i as i64 - j as i64);
        BigInt::from(field.quadratic_character(diff))
    });
    let det = det_exact(&m);
    let power = num_traits::pow(BigInt::from(p), ((p - 3) / 2) as usize);
    let n = sums.n() as i64;
    let prod = (1..p as i64).fold(sums.ring().one(), |acc, k| &acc * &sums.jacobi_exponents(n, k));
    let prod = prod
        .as_rational_integer()
        .ok_or_else(|| Error::Falsified(format!("Jacobi product for p = {p} is not rational")))?;
    let jacobi_product = if n % 2 == 0 { prod } else { -prod };
    Ok(LegendreMatrixReport {
        p,
        det,
        power,
        jacobi_product,
    })
}

#[derive(Debug, Clone)]
pub struct TwistedDetReport {
    pub q: u64,
    pub r: u64,
    pub det: CycloInt,
    /// `∏_{k=0}^{(q-3)/2} J(χ^r, χ^{2k})`.
    pub jacobi_product: CycloInt,
}

impl TwistedDetReport {
    pub fn holds(&self) -> bool {
        self.det == self.jacobi_product
    }
}

/// `det[χ^r(s_i + s_j) + χ^r(s_i - s_j)]` for `q ≡ 3 (mod 4)`.
pub fn twisted_determinant(sums: &CharacterSums, r: u64) -> Result<TwistedDetReport> {
    let q = sums.q();
    if q % 4 != 3 {
        return Err(Error::Precondition(format!("q = {q} is not 3 mod 4")));
    }
    if r == 0 || r > q - 2 {
        return Err(Error::OutOfRange {
            name: "r",
            value: r as i64,
            range: format!("[1, {}]", q - 2),
        });
    }
    let field = sums.field();
    let chi = sums.character(r as i64);
    let squares = field.squares();
    let m: MatrixCyclo = Matrix::from_fn(squares.len(), |i, j| {
        let (a, b) = (squares[i], squares[j]);
        &chi.value(field.add(a, b)) + &chi.value(field.sub(a, b))
    });
    let det = m.det_bareiss()?.unwrap_or_else(|| sums.ring().one());
    let jacobi_product = (0..=((q - 3) / 2) as i64).fold(sums.ring().one(), |acc, k| {
        &acc * &sums.jacobi_exponents(r as i64, 2 * k)
    });
    Ok(TwistedDetReport {
        q,
        r,
        det,
        jacobi_product,
    })
}
