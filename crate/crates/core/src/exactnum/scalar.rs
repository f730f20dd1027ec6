//! Dynamically tagged scalars and field selectors.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use super::{
    finite_field_with_root, parse_rational, rational_to_string, CyclotomicField,
    CyclotomicNumber, Field, FiniteField, FiniteFieldElement, Rationals,
};
use crate::{Error, Result};

/// A field chosen at run time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyField {
    Rational,
    Cyclotomic(CyclotomicField),
    Finite(FiniteField),
}

impl AnyField {
    /// `Q(zeta_order)` when `characteristic == 0`, otherwise the smallest
    /// `F_{q^m}` containing a primitive root of order `order`.
    pub fn containing_roots(characteristic: u64, order: u64) -> Result<Self> {
        if characteristic == 0 {
            Ok(AnyField::Cyclotomic(CyclotomicField::new(order)))
        } else {
            finite_field_with_root(characteristic, order).map(AnyField::Finite)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            AnyField::Rational | AnyField::Cyclotomic(_) => 0,
            AnyField::Finite(f) => f.characteristic(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            AnyField::Rational => Rationals.describe(),
            AnyField::Cyclotomic(f) => f.describe(),
            AnyField::Finite(f) => f.describe(),
        }
    }

    pub fn one(&self) -> FieldScalar {
        match self {
            AnyField::Rational => FieldScalar::Rational(Rationals.one()),
            AnyField::Cyclotomic(f) => FieldScalar::Cyclotomic(f.one()),
            AnyField::Finite(f) => FieldScalar::Finite(f.one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldScalar {
        match self {
            AnyField::Rational => FieldScalar::Rational(Rationals.from_i64(n)),
            AnyField::Cyclotomic(f) => FieldScalar::Cyclotomic(f.from_i64(n)),
            AnyField::Finite(f) => FieldScalar::Finite(f.from_i64(n)),
        }
    }

    /// See [`Field::root_of_unity`].
    pub fn root_of_unity(&self, n: u64) -> Option<FieldScalar> {
        match self {
            AnyField::Rational => Rationals.root_of_unity(n).map(FieldScalar::Rational),
            AnyField::Cyclotomic(f) => f.root_of_unity(n).map(FieldScalar::Cyclotomic),
            AnyField::Finite(f) => f.root_of_unity(n).map(FieldScalar::Finite),
        }
    }
}

/// An exact scalar in `Q`, `Q(zeta_N)` or `F_{p^m}`.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldScalar {
    Rational(BigRational),
    Cyclotomic(CyclotomicNumber),
    Finite(FiniteFieldElement),
}

impl FieldScalar {
    pub fn field(&self) -> AnyField {
        match self {
            FieldScalar::Rational(_) => AnyField::Rational,
            FieldScalar::Cyclotomic(c) => AnyField::Cyclotomic(c.field().clone()),
            FieldScalar::Finite(e) => AnyField::Finite(e.field().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Cyclotomic(c) => c.is_zero(),
            FieldScalar::Finite(e) => e.field().is_zero(e),
        }
    }

    fn mismatch(&self, other: &FieldScalar) -> Error {
        Error::FieldMismatch(self.field().describe(), other.field().describe())
    }

    fn binary(
        &self,
        other: &FieldScalar,
        q: fn(&Rationals, &BigRational, &BigRational) -> BigRational,
        c: fn(&CyclotomicField, &CyclotomicNumber, &CyclotomicNumber) -> CyclotomicNumber,
        f: fn(&FiniteField, &FiniteFieldElement, &FiniteFieldElement) -> FiniteFieldElement,
    ) -> Result<FieldScalar> {
        match (self, other) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => {
                Ok(FieldScalar::Rational(q(&Rationals, a, b)))
            }
            (FieldScalar::Cyclotomic(a), FieldScalar::Cyclotomic(b)) if a.field() == b.field() => {
                Ok(FieldScalar::Cyclotomic(c(a.field(), a, b)))
            }
            (FieldScalar::Finite(a), FieldScalar::Finite(b)) if a.field() == b.field() => {
                Ok(FieldScalar::Finite(f(a.field(), a, b)))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_add(&self, other: &FieldScalar) -> Result<FieldScalar> {
        self.binary(other, Field::add, Field::add, Field::add)
    }

    pub fn try_sub(&self, other: &FieldScalar) -> Result<FieldScalar> {
        self.binary(other, Field::sub, Field::sub, Field::sub)
    }

    pub fn try_mul(&self, other: &FieldScalar) -> Result<FieldScalar> {
        self.binary(other, Field::mul, Field::mul, Field::mul)
    }

    pub fn try_div(&self, other: &FieldScalar) -> Result<FieldScalar> {
        self.try_mul(&other.try_inv()?)
    }

    pub fn try_inv(&self) -> Result<FieldScalar> {
        let out = match self {
            FieldScalar::Rational(a) => Rationals.inv(a).map(FieldScalar::Rational),
            FieldScalar::Cyclotomic(a) => a.field().inv(a).map(FieldScalar::Cyclotomic),
            FieldScalar::Finite(a) => a.field().inv(a).map(FieldScalar::Finite),
        };
        out.ok_or(Error::DivisionByZero)
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(a) => Rationals.is_one(a),
            FieldScalar::Cyclotomic(a) => a.field().is_one(a),
            FieldScalar::Finite(a) => a.field().is_one(a),
        }
    }

    /// `self^e`; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<FieldScalar> {
        let out = match self {
            FieldScalar::Rational(a) => Rationals.pow(a, e).map(FieldScalar::Rational),
            FieldScalar::Cyclotomic(a) => a.field().pow(a, e).map(FieldScalar::Cyclotomic),
            FieldScalar::Finite(a) => a.field().pow(a, e).map(FieldScalar::Finite),
        };
        out.ok_or(Error::DivisionByZero)
    }

    pub fn neg(&self) -> FieldScalar {
        match self {
            FieldScalar::Rational(a) => FieldScalar::Rational(-a),
            FieldScalar::Cyclotomic(a) => FieldScalar::Cyclotomic(a.field().neg(a)),
            FieldScalar::Finite(a) => FieldScalar::Finite(a.field().neg(a)),
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => write!(f, "{}", rational_to_string(r)),
            FieldScalar::Cyclotomic(c) => write!(f, "{c}"),
            FieldScalar::Finite(e) => write!(f, "{e}"),
        }
    }
}

fn bracketed(s: &str) -> Result<(&str, &str)> {
    let open = s.find('[').ok_or_else(|| Error::Parse(s.to_string()))?;
    let close = s[open..]
        .find(']')
        .map(|i| i + open)
        .ok_or_else(|| Error::Parse(s.to_string()))?;
    Ok((&s[open + 1..close], &s[close + 1..]))
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

/// Parses the forms produced by `Display`:
/// `a/b`, `Q(zeta_N)[c0,c1,...]`, `GF(p)[f0,...,1][c0,...]`.
impl FromStr for FieldScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("Q(zeta_") {
            let (n, rest) = rest
                .split_once(')')
                .ok_or_else(|| Error::Parse(s.to_string()))?;
            let n: u64 = n.parse().map_err(|_| Error::Parse(s.to_string()))?;
            let field = CyclotomicField::new(n);
            let (body, _) = bracketed(rest)?;
            let coeffs = body
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() != field.degree() {
                return Err(Error::Parse(format!(
                    "expected {} coefficients for Q(zeta_{n})",
                    field.degree()
                )));
            }
            return Ok(FieldScalar::Cyclotomic(field.from_coeffs(coeffs)));
        }
        if let Some(rest) = s.strip_prefix("GF(") {
            let (p, rest) = rest
                .split_once(')')
                .ok_or_else(|| Error::Parse(s.to_string()))?;
            let p: u64 = p.parse().map_err(|_| Error::Parse(s.to_string()))?;
            let (poly, rest) = bracketed(rest)?;
            let (coeffs, _) = bracketed(rest)?;
            let field = FiniteField::from_polynomial(p, parse_u64_list(poly)?)?;
            return Ok(FieldScalar::Finite(field.element(parse_u64_list(coeffs)?)));
        }
        parse_rational(s).map(FieldScalar::Rational)
    }
}
