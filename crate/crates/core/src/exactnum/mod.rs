//! Exact scalars: rationals, cyclotomic fields `Q(zeta_N)` and finite fields
//! `F_{p^m}` containing a prescribed root of unity.
//!
//! Linear algebra elsewhere in the crate is generic over [`Field`]. The
//! dynamically tagged [`FieldScalar`] is used at the I/O boundary.

mod cyclotomic;
mod finite;
mod scalar;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use cyclotomic::{cyclotomic_polynomial, cyclotomic_root, CyclotomicField, CyclotomicNumber};
pub use finite::{finite_field_with_root, FiniteField, FiniteFieldDescriptor, FiniteFieldElement};
pub use scalar::{AnyField, FieldScalar};

/// A field with exact arithmetic.
///
/// Elements carry enough context to be compared with `==`; the field value
/// supplies the operations.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;

    /// The image of a primitive `n`-th root of unity of characteristic zero.
    ///
    /// In characteristic `q` this is a primitive root of order `n'`, the
    /// part of `n` prime to `q`. Returns `None` when the field does not
    /// contain such a root.
    fn root_of_unity(&self, n: u64) -> Option<Self::Elem>;

    fn describe(&self) -> String;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    /// `a^e`; negative exponents invert, `None` for `0^e` with `e < 0`.
    fn pow(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Some(acc)
    }

    /// The table `[w^0, w^1, ..., w^(n-1)]` for `w = root_of_unity(n)`.
    fn root_powers(&self, n: u64) -> Option<Vec<Self::Elem>> {
        let w = self.root_of_unity(n)?;
        let mut out = Vec::with_capacity(n as usize);
        let mut acc = self.one();
        for _ in 0..n {
            out.push(acc.clone());
            acc = self.mul(&acc, &w);
        }
        Some(out)
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn root_of_unity(&self, n: u64) -> Option<BigRational> {
        match n {
            1 => Some(BigRational::one()),
            2 => Some(-BigRational::one()),
            _ => None,
        }
    }
    fn describe(&self) -> String {
        "Q".to_string()
    }
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient of 0 is undefined");
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, q| acc / q * (q - 1))
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
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

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// The least `k >= 1` with `a^k = 1 mod n`, or `None` when `gcd(a, n) != 1`.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(a % n, n) != 1 {
        return None;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// `n` with every factor of `q` removed (`q = 0` leaves `n` unchanged).
pub fn prime_to_part(mut n: u64, q: u64) -> u64 {
    if q >= 2 {
        while n % q == 0 {
            n /= q;
        }
    }
    n
}

/// Positive modulus `x mod n` for signed `x`.
pub fn modulo(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

/// Render a rational as `a/b` (or `a` when integral).
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| crate::Error::Parse(format!("{t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(crate::Error::DivisionByZero);
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_examples() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(14), 6);
        assert_eq!(totient(15), 8);
        assert_eq!(totient(22), 10);
        assert_eq!(totient(30), 8);
    }

    #[test]
    fn totient_matches_count_of_units() {
        for n in 1..200u64 {
            let count = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(totient(n), count, "n = {n}");
        }
    }

    #[test]
    fn divisors_and_orders() {
        assert_eq!(divisors(14), vec![1, 2, 7, 14]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(multiplicative_order(3, 14), Some(6));
        assert_eq!(multiplicative_order(2, 15), Some(4));
        assert_eq!(multiplicative_order(7, 14), None);
        assert_eq!(prime_to_part(24, 2), 3);
        assert_eq!(prime_to_part(24, 0), 24);
    }

    #[test]
    fn rational_text_roundtrip() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(rational_to_string(&r), "-3/2");
        assert_eq!(rational_to_string(&parse_rational("5").unwrap()), "5");
        assert_eq!(parse_rational("1/0"), Err(crate::Error::DivisionByZero));
    }
}
