//! The cyclotomic field `Q(zeta_N) = Q[x] / Phi_N(x)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{divisors, gcd, modulo, rational_to_string, totient, Field};

/// The `n`-th cyclotomic polynomial, ascending coefficients, monic.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = exact_div_monic(&num, &phi_d);
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

struct Inner {
    order: u64,
    degree: usize,
    /// Monic `Phi_N`, ascending.
    phi: Vec<BigInt>,
    /// `zeta^j` reduced mod `Phi_N`, for `j` in `0..N`.
    powers: Vec<Vec<BigInt>>,
}

/// `Q(zeta_N)`, represented modulo the `N`-th cyclotomic polynomial.
///
/// Cheap to clone; instances with the same order share their tables.
#[derive(Clone)]
pub struct CyclotomicField(Arc<Inner>);

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.0.order)
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.0.order == other.0.order
    }
}
impl Eq for CyclotomicField {}

impl CyclotomicField {
    pub fn new(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        static CACHE: OnceLock<Mutex<HashMap<u64, CyclotomicField>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&order) {
            return f.clone();
        }
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        debug_assert_eq!(degree as u64, totient(order));
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c -= &top * &phi[i];
                }
            }
        }
        let field = CyclotomicField(Arc::new(Inner {
            order,
            degree,
            phi,
            powers,
        }));
        cache.lock().unwrap().insert(order, field.clone());
        field
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// `phi(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.0.phi
    }

    /// `zeta_N^j`.
    pub fn zeta_power(&self, j: i64) -> CyclotomicNumber {
        let idx = modulo(j, self.0.order) as usize;
        self.from_int_coeffs(&self.0.powers[idx])
    }

    /// `sum_j counts[j] * zeta^j`, with `counts` indexed by exponent mod `N`.
    pub fn from_power_sums(&self, counts: &[BigInt]) -> CyclotomicNumber {
        let mut acc = vec![BigInt::zero(); self.0.degree];
        for (j, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, b) in acc.iter_mut().zip(&self.0.powers[j % self.0.order as usize]) {
                if !b.is_zero() {
                    *a += c * b;
                }
            }
        }
        self.from_int_coeffs(&acc)
    }

    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.clone(),
            coeffs: self.reduce(coeffs),
        }
    }

    fn from_int_coeffs(&self, c: &[BigInt]) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.clone(),
            coeffs: c.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    /// Reduce an arbitrary-length coefficient vector modulo `Phi_N`.
    fn reduce(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.0.degree;
        if c.len() > d {
            for i in (d..c.len()).rev() {
                let top = std::mem::replace(&mut c[i], BigRational::zero());
                if top.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let pj = &self.0.phi[j];
                    if !pj.is_zero() {
                        c[i - d + j] -= &top * BigRational::from_integer(pj.clone());
                    }
                }
            }
            c.truncate(d);
        }
        c.resize(d, BigRational::zero());
        c
    }

    fn mul_raw(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut prod = vec![BigRational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }
}

/// An element of `Q(zeta_N)`: coefficients of `1, zeta, ..., zeta^(phi(N)-1)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: CyclotomicField,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }
    pub fn order(&self) -> u64 {
        self.field.order()
    }
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(rational_to_string).collect();
        write!(f, "Q(zeta_{})[{}]", self.field.order(), parts.join(","))
    }
}

/// `zeta_N^j` as an element of `Q(zeta_N)`.
pub fn cyclotomic_root(n: u64, j: i64) -> CyclotomicNumber {
    CyclotomicField::new(n).zeta_power(j)
}

// --- polynomial helpers over Q, used for inversion ---

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap() * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

impl Field for CyclotomicField {
    type Elem = CyclotomicNumber;

    fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }
    fn one(&self) -> CyclotomicNumber {
        self.zeta_power(0)
    }
    fn from_bigint(&self, n: &BigInt) -> CyclotomicNumber {
        let mut z = self.zero();
        z.coeffs[0] = BigRational::from_integer(n.clone());
        z
    }
    fn add(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        debug_assert!(a.field == *self && b.field == *self);
        CyclotomicNumber {
            field: self.clone(),
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
    fn sub(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        debug_assert!(a.field == *self && b.field == *self);
        CyclotomicNumber {
            field: self.clone(),
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
    fn mul(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        debug_assert!(a.field == *self && b.field == *self);
        CyclotomicNumber {
            field: self.clone(),
            coeffs: self.mul_raw(&a.coeffs, &b.coeffs),
        }
    }
    fn neg(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.clone(),
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }
    fn inv(&self, a: &CyclotomicNumber) -> Option<CyclotomicNumber> {
        if a.is_zero() {
            return None;
        }
        // extended Euclid: s * a + t * phi = g, g constant since phi is irreducible
        let phi: Vec<BigRational> = self
            .0
            .phi
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut r0 = phi;
        let mut r1 = a.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant
        let c = r1[0].recip();
        let coeffs: Vec<BigRational> = s1.into_iter().map(|x| x * &c).collect();
        Some(self.from_coeffs(coeffs))
    }
    fn is_zero(&self, a: &CyclotomicNumber) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn root_of_unity(&self, n: u64) -> Option<CyclotomicNumber> {
        let order = self.order();
        // Q(zeta_N) contains mu_{2N} when N is odd
        let full = if order % 2 == 1 { 2 * order } else { order };
        if full % n != 0 {
            return None;
        }
        if order % n == 0 {
            Some(self.zeta_power((order / n) as i64))
        } else {
            // n | 2N with N odd: -zeta^{...} has the right order
            let half = n / gcd(n, 2);
            let base = self.zeta_power((order / half) as i64);
            let w = self.neg(&base);
            Some(if n % 2 == 0 && half % 2 == 1 { w } else { base })
        }
    }
    fn describe(&self) -> String {
        format!("Q(zeta_{})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(14), ints(&[1, -1, 1, -1, 1, -1, 1]));
        // first N with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn root_examples() {
        let f = CyclotomicField::new(2);
        assert_eq!(cyclotomic_root(2, 1), f.from_i64(-1));
        let f14 = CyclotomicField::new(14);
        assert_eq!(cyclotomic_root(14, 0), f14.one());
        assert_eq!(cyclotomic_root(14, 7), f14.from_i64(-1));
    }

    #[test]
    fn root_orders() {
        for n in [1u64, 2, 3, 4, 6, 12, 14, 15, 22] {
            let f = CyclotomicField::new(n);
            for j in 0..n as i64 {
                let z = f.zeta_power(j);
                let expected = n / gcd(n, j as u64);
                let mut k = 1;
                let mut acc = z.clone();
                while !f.is_one(&acc) {
                    acc = f.mul(&acc, &z);
                    k += 1;
                }
                assert_eq!(k, expected, "order of zeta_{n}^{j}");
            }
        }
    }

    #[test]
    fn prime_sum_relation() {
        for n in [6u64, 14, 15, 30] {
            let f = CyclotomicField::new(n);
            assert!(f.is_one(&f.pow(&f.zeta_power(1), n as i64).unwrap()));
            for q in super::super::prime_factors(n) {
                let mut acc = f.zero();
                for j in 0..q {
                    acc = f.add(&acc, &f.zeta_power((j * n / q) as i64));
                }
                assert!(acc.is_zero(), "sum of {q}-th roots in Q(zeta_{n})");
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = CyclotomicField::new(15);
        let a = f.add(&f.zeta_power(1), &f.from_i64(3));
        let b = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &b)));
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn odd_order_contains_sign() {
        let f = CyclotomicField::new(3);
        let w = f.root_of_unity(6).unwrap();
        assert!(f.is_one(&f.pow(&w, 6).unwrap()));
        assert!(!f.is_one(&f.pow(&w, 3).unwrap()));
        assert!(!f.is_one(&f.pow(&w, 2).unwrap()));
        assert!(f.root_of_unity(4).is_none());
    }
}
