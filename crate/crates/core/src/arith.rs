//! Small-integer helpers: trial-division primality, factorization, modular
//! powers. Everything here works on `u64` and is meant for desk-scale inputs.

use num_integer::Integer;

/// Deterministic trial division. Fine for the `q <= 10^6` regime this crate
/// targets.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, f)` with `q = p^f` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, f)] => Some((*p, *f)),
        _ => None,
    }
}

/// All odd prime powers in `[lo, hi]`, ascending.
pub fn odd_prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi)
        .filter(|&q| q % 2 == 1 && prime_power(q).is_some())
        .collect()
}

/// Odd primes in `[lo, hi]`.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&p| is_prime(p)).collect()
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: i64, m: u64) -> Option<u64> {
    let m_i = m as i64;
    let ext = a.rem_euclid(m_i).extended_gcd(&m_i);
    (ext.gcd == 1).then(|| ext.x.rem_euclid(m_i) as u64)
}

/// Least non-negative residue `{x}_m`.
pub fn residue(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

/// Smallest positive primitive root modulo the odd prime `p`.
pub fn smallest_primitive_root(p: u64) -> u64 {
    let cofactors: Vec<u64> = factorize(p - 1).iter().map(|&(r, _)| (p - 1) / r).collect();
    (1..p)
        .find(|&g| cofactors.iter().all(|&c| mod_pow(g, c, p) != 1))
        .expect("every prime has a primitive root")
}

/// Integer square root for exact perfect-square detection.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(729), Some((3, 6)));
        assert_eq!(prime_power(625), Some((5, 4)));
        assert_eq!(prime_power(15), None);
        assert_eq!(
            odd_prime_powers(3, 30),
            vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]
        );
    }

    #[test]
    fn totient_and_divisors() {
        assert_eq!(totient(728), 288);
        assert_eq!(totient(16), 8);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(smallest_primitive_root(5), 2);
        assert_eq!(smallest_primitive_root(7), 3);
        assert_eq!(smallest_primitive_root(17), 3);
        assert_eq!(smallest_primitive_root(23), 5);
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inv(4, 7), Some(2));
        assert_eq!(mod_inv(-1, 7), Some(6));
        assert_eq!(mod_inv(3, 9), None);
        assert_eq!(isqrt(6889), 83);
        assert_eq!(isqrt(6888), 82);
    }
}
