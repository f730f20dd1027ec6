//! Finite fields `F_{p^m} = F_p[x] / f(x)` built to contain a primitive
//! `N`-th root of unity.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::{is_prime, multiplicative_order, prime_factors, prime_to_part, Field};
use crate::{Error, Result};

// Polynomials over F_p: ascending coefficients, no trailing zeros.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - 1 - db;
        let c = mulmod(*rem.last().unwrap(), lead_inv, p);
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - mulmod(c, bj, p)) % p;
        }
        quot[k] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    poly_divrem(a, b, p).1
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = std::mem::replace(&mut y, r);
    }
    x
}

fn poly_powmod(base: &[u64], exp: &BigUint, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let b = poly_rem(base, modulus, p);
    for i in (0..exp.bits()).rev() {
        acc = poly_rem(&poly_mul(&acc, &acc, p), modulus, p);
        if exp.bit(i) {
            acc = poly_rem(&poly_mul(&acc, &b, p), modulus, p);
        }
    }
    acc
}

/// Ben-Or test: `f` of degree `m` is irreducible iff
/// `gcd(f, x^(p^k) - x) = 1` for `k = 1..=m/2`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    let pe = BigUint::from(p);
    let mut h = poly_rem(&x, f, p);
    for _ in 1..=m / 2 {
        h = poly_powmod(&h, &pe, f, p);
        let g = poly_gcd(f, &poly_sub(&h, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Candidate coefficient vectors of length `m`, in increasing order of
/// `sum c_i p^i`.
fn nth_vector(mut idx: u128, m: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; m];
    for c in out.iter_mut() {
        *c = (idx % p as u128) as u64;
        idx /= p as u128;
    }
    out
}

/// Data describing `F_{p^m}`; see [`FiniteField`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFieldDescriptor {
    pub characteristic: u64,
    pub degree: usize,
    /// Monic irreducible polynomial of degree `degree`, ascending coefficients.
    pub defining_polynomial: Vec<u64>,
    /// An element of exact multiplicative order `root_order`, if one was requested.
    pub primitive_root: Option<Vec<u64>>,
    pub root_order: u64,
}

#[derive(Clone)]
pub struct FiniteField(Arc<FiniteFieldDescriptor>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.characteristic == other.0.characteristic
            && self.0.defining_polynomial == other.0.defining_polynomial
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// The finite field `F_{p^m}` with `m` the multiplicative order of `p` mod `n`,
/// together with an element of exact order `n`.
///
/// The defining polynomial is the first irreducible one in the scan
/// `x^m + c_{m-1} x^{m-1} + ... + c_0` ordered by `sum c_i p^i`; the root is
/// `g^((p^m - 1)/n)` for the first candidate `g` (same order) giving exact
/// order `n`. Both choices are deterministic.
pub fn finite_field_with_root(p: u64, n: u64) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || n % p == 0 {
        return Err(Error::NoRootOfUnity {
            characteristic: p,
            order: n,
        });
    }
    let m = multiplicative_order(p, n).expect("p does not divide n") as usize;
    let modulus = FiniteField::first_irreducible(p, m);
    let mut field = FiniteField(Arc::new(FiniteFieldDescriptor {
        characteristic: p,
        degree: m,
        defining_polynomial: modulus,
        primitive_root: None,
        root_order: 1,
    }));
    let size = BigUint::from(p).pow(m as u32);
    let cofactor = (&size - BigUint::one()) / BigUint::from(n);
    let qs = prime_factors(n);
    let mut idx: u128 = 1;
    let root = loop {
        let g = field.element(nth_vector(idx, m, p));
        idx += 1;
        if g.coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let h = field.pow_big(&g, &cofactor);
        let exact = qs.iter().all(|&q| !field.is_one(&field.pow(&h, (n / q) as i64).unwrap()));
        if exact {
            break h;
        }
    };
    let desc = Arc::make_mut(&mut field.0);
    desc.primitive_root = Some(root.coeffs);
    desc.root_order = n;
    Ok(field)
}

impl FiniteField {
    /// A field from an explicit defining polynomial (no root recorded).
    pub fn from_polynomial(p: u64, defining_polynomial: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut f = defining_polynomial;
        trim(&mut f);
        if f.last() != Some(&1) || f.iter().any(|&c| c >= p) || !is_irreducible(&f, p) {
            return Err(Error::Parse(format!(
                "{f:?} is not a monic irreducible polynomial over F_{p}"
            )));
        }
        Ok(FiniteField(Arc::new(FiniteFieldDescriptor {
            characteristic: p,
            degree: f.len() - 1,
            defining_polynomial: f,
            primitive_root: None,
            root_order: 1,
        })))
    }

    fn first_irreducible(p: u64, m: usize) -> Vec<u64> {
        let mut idx: u128 = 0;
        loop {
            let mut f = nth_vector(idx, m, p);
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
            idx += 1;
        }
    }

    pub fn descriptor(&self) -> &FiniteFieldDescriptor {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Element from coefficients (reduced mod `p` and mod the defining polynomial).
    pub fn element(&self, coeffs: Vec<u64>) -> FiniteFieldElement {
        let p = self.0.characteristic;
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        trim(&mut c);
        let mut c = poly_rem(&c, &self.0.defining_polynomial, p);
        c.resize(self.0.degree, 0);
        FiniteFieldElement {
            field: self.clone(),
            coeffs: c,
        }
    }

    /// The recorded element of order `root_order`.
    pub fn primitive_root(&self) -> Option<FiniteFieldElement> {
        self.0
            .primitive_root
            .as_ref()
            .map(|c| self.element(c.clone()))
    }

    fn pow_big(&self, a: &FiniteFieldElement, e: &BigUint) -> FiniteFieldElement {
        let p = self.0.characteristic;
        let mut base = a.coeffs.clone();
        trim(&mut base);
        self.element(poly_powmod(&base, e, &self.0.defining_polynomial, p))
    }

    fn size(&self) -> BigUint {
        BigUint::from(self.0.characteristic).pow(self.0.degree as u32)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &FiniteFieldElement) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        let group = self.size() - BigUint::one();
        let mut ord = group.clone();
        let small = group.to_u64()?;
        for q in prime_factors(small) {
            let qb = BigUint::from(q);
            while (&ord % &qb).is_zero() && self.is_one(&self.pow_big(a, &(&ord / &qb))) {
                ord /= &qb;
            }
        }
        ord.to_u64()
    }
}

/// An element of a finite field, tagged with its field.
#[derive(Clone)]
pub struct FiniteFieldElement {
    field: FiniteField,
    coeffs: Vec<u64>,
}

impl FiniteFieldElement {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl PartialEq for FiniteFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for FiniteFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FiniteFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.field.descriptor();
        write!(
            f,
            "GF({})[{}][{}]",
            d.characteristic,
            join(&d.defining_polynomial),
            join(&self.coeffs)
        )
    }
}

impl Field for FiniteField {
    type Elem = FiniteFieldElement;

    fn zero(&self) -> FiniteFieldElement {
        self.element(vec![])
    }
    fn one(&self) -> FiniteFieldElement {
        self.element(vec![1])
    }
    fn from_bigint(&self, n: &BigInt) -> FiniteFieldElement {
        let p = BigInt::from(self.0.characteristic);
        let r = ((n % &p) + &p) % &p;
        self.element(vec![r.to_u64().unwrap()])
    }
    fn add(&self, a: &FiniteFieldElement, b: &FiniteFieldElement) -> FiniteFieldElement {
        let p = self.0.characteristic;
        FiniteFieldElement {
            field: self.clone(),
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % p).collect(),
        }
    }
    fn sub(&self, a: &FiniteFieldElement, b: &FiniteFieldElement) -> FiniteFieldElement {
        let p = self.0.characteristic;
        FiniteFieldElement {
            field: self.clone(),
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + p - y) % p)
                .collect(),
        }
    }
    fn mul(&self, a: &FiniteFieldElement, b: &FiniteFieldElement) -> FiniteFieldElement {
        let p = self.0.characteristic;
        self.element(poly_mul(&a.coeffs, &b.coeffs, p))
    }
    fn neg(&self, a: &FiniteFieldElement) -> FiniteFieldElement {
        let p = self.0.characteristic;
        FiniteFieldElement {
            field: self.clone(),
            coeffs: a.coeffs.iter().map(|x| (p - x) % p).collect(),
        }
    }
    fn inv(&self, a: &FiniteFieldElement) -> Option<FiniteFieldElement> {
        if self.is_zero(a) {
            return None;
        }
        let p = self.0.characteristic;
        let f = &self.0.defining_polynomial;
        let mut r0 = f.clone();
        let mut r1 = a.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1, p);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = inv_mod(r1[0], p);
        Some(self.element(s1.into_iter().map(|x| mulmod(x, c, p)).collect()))
    }
    fn is_zero(&self, a: &FiniteFieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }
    fn characteristic(&self) -> u64 {
        self.0.characteristic
    }
    fn root_of_unity(&self, n: u64) -> Option<FiniteFieldElement> {
        let n = prime_to_part(n, self.0.characteristic);
        let order = self.0.root_order;
        if n == 1 {
            return Some(self.one());
        }
        if order % n != 0 {
            return None;
        }
        let root = self.primitive_root()?;
        self.pow(&root, (order / n) as i64)
    }
    fn describe(&self) -> String {
        let d = &self.0;
        format!("GF({}^{})", d.characteristic, d.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: least m >= 1 with q^m = 1 mod n.
    fn order_oracle(q: u64, n: u64) -> u64 {
        let mut x = 1u64;
        for m in 1..=n {
            x = x * q % n;
            if x == 1 {
                return m;
            }
        }
        unreachable!()
    }

    #[test]
    fn field_with_root_examples() {
        let f = finite_field_with_root(3, 14).unwrap();
        assert_eq!(f.degree() as u64, order_oracle(3, 14));
        assert_eq!(f.degree(), 6);
        let f = finite_field_with_root(2, 15).unwrap();
        assert_eq!(f.degree() as u64, order_oracle(2, 15));
        assert_eq!(f.degree(), 4);
        assert!(matches!(
            finite_field_with_root(7, 14),
            Err(Error::NoRootOfUnity { .. })
        ));
        assert!(matches!(finite_field_with_root(6, 5), Err(Error::NotPrime(6))));
    }

    #[test]
    fn roots_have_exact_order() {
        for (p, n) in [(3u64, 14u64), (2, 15), (5, 22), (7, 6), (2, 3), (11, 1), (3, 22)] {
            let f = finite_field_with_root(p, n).unwrap();
            let r = f.primitive_root().unwrap();
            assert!(f.is_one(&f.pow(&r, n as i64).unwrap()));
            for d in 1..n {
                if n % d == 0 {
                    assert!(!f.is_one(&f.pow(&r, d as i64).unwrap()), "p={p} n={n} d={d}");
                }
            }
            assert_eq!(f.element_order(&r), Some(n));
        }
    }

    #[test]
    fn defining_polynomial_is_first_irreducible() {
        // over F_2 the degree-4 scan visits x^4, x^4+1, x^4+x, x^4+x+1 (irreducible)
        let f = finite_field_with_root(2, 15).unwrap();
        assert_eq!(f.descriptor().defining_polynomial, vec![1, 1, 0, 0, 1]);
        // over F_3 degree 2: x^2 + 1 is the first irreducible
        let f = finite_field_with_root(3, 8).unwrap();
        assert_eq!(f.descriptor().defining_polynomial, vec![1, 0, 1]);
    }

    #[test]
    fn inverse_and_prime_to_part_roots() {
        let f = finite_field_with_root(3, 14).unwrap();
        let r = f.primitive_root().unwrap();
        let a = f.add(&r, &f.from_i64(2));
        let b = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &b)));
        // in characteristic 3, a "primitive 6th root" is a primitive square root
        let f = finite_field_with_root(3, 2).unwrap();
        assert_eq!(f.root_of_unity(6).unwrap(), f.from_i64(-1));
        assert_eq!(f.root_of_unity(3).unwrap(), f.one());
    }

    #[test]
    fn explicit_polynomial_validation() {
        assert!(FiniteField::from_polynomial(2, vec![1, 1, 0, 0, 1]).is_ok());
        assert!(FiniteField::from_polynomial(2, vec![1, 0, 1]).is_err()); // (x+1)^2
    }
}
