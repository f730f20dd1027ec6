//! Fox calculus with abelianized (Laurent polynomial) coefficients,
//! Alexander and Gassner matrices, and their specializations.
//!
//! Matrices put relators (or images) on rows and generators on columns.
//! The group ring `Z[Z_N]` uses the basis `1, g, ..., g^(N-1)`; multiplication
//! by `g` is the shift with a 1 in position `(i + 1 mod N, i)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::braidword::{BraidWord, FreeGroupEndo, FreeWord};
use crate::exactla::IntMatrix;
use crate::exactnum::{modulo, Field};
use crate::grouppres::GroupPresentation;
use crate::{Error, Result};

/// An integer Laurent polynomial in `nvars` commuting variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], 1)
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exponents: Vec<i64>, coeff: i64) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, coeff);
        p
    }

    /// The variable `x_i` (0-based).
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exponents: Vec<i64>, coeff: i64) {
        assert_eq!(exponents.len(), self.nvars, "exponent vector length");
        if coeff == 0 {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Occupied(mut o) => {
                let c = o.get().checked_add(coeff).expect("Laurent coefficient overflow");
                if c == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.checked_mul(c2).expect("Laurent coefficient overflow"));
            }
        }
        out
    }

    /// Sum of coefficients (evaluation at the trivial character).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Evaluate at `x_i = values[i]`; values must be nonzero where negative
    /// exponents occur.
    pub fn evaluate<F: Field>(&self, field: &F, values: &[F::Elem]) -> Result<F::Elem> {
        if values.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} variables",
                values.len(),
                self.nvars
            )));
        }
        let mut acc = field.zero();
        for (e, c) in self.terms() {
            let mut m = field.from_i64(c);
            for (v, &k) in values.iter().zip(e) {
                if k != 0 {
                    m = field.mul(&m, &field.pow(v, k).ok_or(Error::DivisionByZero)?);
                }
            }
            acc = field.add(&acc, &m);
        }
        Ok(acc)
    }

    /// Image in `Z[Z_N]` under `x_i -> g^(exponents[i])`, as the coefficient
    /// vector on `1, g, ..., g^(N-1)`.
    pub fn to_group_ring(&self, order: u64, exponents: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; order as usize];
        for (e, c) in self.terms() {
            let k: i64 = e
                .iter()
                .zip(exponents)
                .map(|(a, b)| modulo(a * b, order) as i64)
                .sum();
            out[modulo(k, order) as usize] += c;
        }
        out
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    let n = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                    if k == 1 {
                        n
                    } else {
                        format!("{n}^{k}")
                    }
                })
                .collect();
            let sign = if c < 0 { "-" } else if idx > 0 { "+" } else { "" };
            if idx > 0 {
                out.push(' ');
            }
            out.push_str(sign);
            if idx > 0 {
                out.push(' ');
            }
            let a = c.abs();
            match (mono.is_empty(), a) {
                (true, _) => out.push_str(&a.to_string()),
                (false, 1) => out.push_str(&mono.join("*")),
                (false, _) => out.push_str(&format!("{a}*{}", mono.join("*"))),
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

/// A rectangular matrix of Laurent polynomials over shared variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    variables: Vec<String>,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

#[derive(Serialize, Deserialize)]
struct LaurentEntry {
    row: usize,
    col: usize,
    /// Each term is the exponent vector followed by the coefficient.
    terms: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct LaurentFile {
    variables: Vec<String>,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentEntry>,
}

impl LaurentMatrix {
    pub fn zeros(variables: Vec<String>, rows: usize, cols: usize) -> Self {
        let n = variables.len();
        LaurentMatrix {
            variables,
            rows,
            cols,
            entries: vec![LaurentPoly::zero(n); rows * cols],
        }
    }

    pub fn identity(variables: Vec<String>, n: usize) -> Self {
        let mut m = Self::zeros(variables, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(m.variables.len()));
        }
        m
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        assert_eq!(v.nvars(), self.variables.len());
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != other.rows || self.variables != other.variables {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.variables.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero(self.variables.len());
                for k in 0..self.cols {
                    if !self.get(i, k).is_zero() && !other.get(k, j).is_zero() {
                        acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> LaurentMatrix {
        let mut out = Self::zeros(self.variables.clone(), r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut entries = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let terms = p
                    .terms()
                    .map(|(e, c)| {
                        let mut t = e.clone();
                        t.push(c);
                        t
                    })
                    .collect();
                entries.push(LaurentEntry { row: i, col: j, terms });
            }
        }
        let file = LaurentFile {
            variables: self.variables.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        };
        serde_json::to_string(&file).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: LaurentFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let n = file.variables.len();
        let mut m = Self::zeros(file.variables, file.rows, file.cols);
        for e in file.entries {
            if e.row >= m.rows || e.col >= m.cols {
                return Err(Error::Parse(format!("entry ({}, {}) out of range", e.row, e.col)));
            }
            let mut p = LaurentPoly::zero(n);
            for t in e.terms {
                if t.len() != n + 1 {
                    return Err(Error::Parse("term length does not match variables".into()));
                }
                p.add_term(t[..n].to_vec(), t[n]);
            }
            m.set(e.row, e.col, p);
        }
        Ok(m)
    }

    /// Entrywise evaluation at `x_i = values[i]`.
    pub fn evaluate<F: Field>(&self, field: &F, values: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).evaluate(field, values))
                    .collect()
            })
            .collect()
    }

    /// Entrywise evaluation at `x_i = w^(exponents[i])` for `w` the field's
    /// image of a primitive `order`-th root of unity.
    pub fn evaluate_at_roots<F: Field>(
        &self,
        field: &F,
        order: u64,
        exponents: &[i64],
    ) -> Result<Vec<Vec<F::Elem>>> {
        if exponents.len() != self.variables.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} exponents for {} variables",
                exponents.len(),
                self.variables.len()
            )));
        }
        let powers = field.root_powers(order).ok_or(Error::NoRootOfUnity {
            characteristic: field.characteristic(),
            order,
        })?;
        let out = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let ring = self.get(i, j).to_group_ring(order, exponents);
                        ring.iter()
                            .enumerate()
                            .filter(|(_, &c)| c != 0)
                            .fold(field.zero(), |acc, (k, &c)| {
                                field.add(&acc, &field.mul(&field.from_i64(c), &powers[k]))
                            })
                    })
                    .collect()
            })
            .collect();
        Ok(out)
    }

    pub fn display(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.get(i, j).display_with(&self.variables))
                .collect();
            out.push_str(&format!("[{}]\n", row.join(", ")));
        }
        out
    }
}

/// Abelianized Fox derivatives of `w` with respect to every generator
/// `x_1..x_nvars`.
pub fn fox_gradient(w: &FreeWord, nvars: usize) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(nvars); nvars];
    let mut prefix = vec![0i64; nvars];
    for &(i, e) in w.syllables() {
        let g = i as usize - 1;
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                out[g].add_term(prefix.clone(), 1);
                prefix[g] += 1;
            } else {
                prefix[g] -= 1;
                out[g].add_term(prefix.clone(), -1);
            }
        }
    }
    out
}

/// The abelianized Fox derivative `dw/dx_g` (`g` 1-based) in `nvars` variables.
pub fn fox_derivative(w: &FreeWord, g: u32, nvars: usize) -> LaurentPoly {
    assert!(w.max_generator() as usize <= nvars && g as usize <= nvars);
    fox_gradient(w, nvars).swap_remove(g as usize - 1)
}

/// Relators by generators, entry `(i, j)` = `d r_i / d x_j`, abelianized.
pub fn alexander_matrix(pr: &GroupPresentation) -> LaurentMatrix {
    let n = pr.num_generators();
    let mut m = LaurentMatrix::zeros(pr.generators().to_vec(), pr.num_relators(), n);
    for (i, r) in pr.relators().iter().enumerate() {
        for (j, d) in fox_gradient(r, n).into_iter().enumerate() {
            m.set(i, j, d);
        }
    }
    m
}

/// The Fox Jacobian of a free-group endomorphism: entry `(i, j)` =
/// `d e(x_i) / d x_j`, abelianized.
pub fn fox_jacobian(e: &FreeGroupEndo, variables: Vec<String>) -> LaurentMatrix {
    let n = e.rank();
    assert_eq!(variables.len(), n);
    let mut m = LaurentMatrix::zeros(variables, n, n);
    for (i, img) in e.images().iter().enumerate() {
        for (j, d) in fox_gradient(img, n).into_iter().enumerate() {
            m.set(i, j, d);
        }
    }
    m
}

/// The Gassner matrix of a pure braid in variables `y1..yn`. With braids
/// acting on the right, `gassner(b1 * b2) = gassner(b1) * gassner(b2)`.
pub fn gassner_matrix(b: &BraidWord) -> Result<LaurentMatrix> {
    if !b.is_pure() {
        return Err(Error::NotPure(b.permutation()));
    }
    let names = (1..=b.strands()).map(|i| format!("y{i}")).collect();
    Ok(fox_jacobian(&FreeGroupEndo::from_braid(b), names))
}

/// Where generators are sent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum RingMapSpec {
    /// `x -> w^e` for `w` a primitive `order`-th root of unity of the field.
    FieldCharacter {
        order: u64,
        exponents: BTreeMap<String, i64>,
    },
    /// `x -> g^e` in `Z[Z_order]`.
    CyclicGroupRing {
        order: u64,
        exponents: BTreeMap<String, i64>,
    },
}

impl RingMapSpec {
    pub fn field_character(order: u64, labels: &[String], exponents: &[i64]) -> Self {
        RingMapSpec::FieldCharacter {
            order,
            exponents: labels.iter().cloned().zip(exponents.iter().copied()).collect(),
        }
    }

    pub fn cyclic_group_ring(order: u64, labels: &[String], exponents: &[i64]) -> Self {
        RingMapSpec::CyclicGroupRing {
            order,
            exponents: labels.iter().cloned().zip(exponents.iter().copied()).collect(),
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            RingMapSpec::FieldCharacter { order, .. } | RingMapSpec::CyclicGroupRing { order, .. } => {
                *order
            }
        }
    }

    /// Exponents in the order of `variables`.
    pub fn exponents_for(&self, variables: &[String]) -> Result<Vec<i64>> {
        let map = match self {
            RingMapSpec::FieldCharacter { exponents, .. }
            | RingMapSpec::CyclicGroupRing { exponents, .. } => exponents,
        };
        variables
            .iter()
            .map(|v| {
                map.get(v)
                    .copied()
                    .ok_or_else(|| Error::UnassignedVariable(v.clone()))
            })
            .collect()
    }
}

/// Evaluate at a character given by root-of-unity exponents.
pub fn specialize_character<F: Field>(
    m: &LaurentMatrix,
    spec: &RingMapSpec,
    field: &F,
) -> Result<Vec<Vec<F::Elem>>> {
    let exps = spec.exponents_for(m.variables())?;
    m.evaluate_at_roots(field, spec.order(), &exps)
}

/// The circulant of `c` acting on `Z[Z_N]` by multiplication.
pub fn circulant(c: &[i64]) -> Vec<Vec<i64>> {
    let n = c.len();
    let mut out = vec![vec![0; n]; n];
    for (k, &ck) in c.iter().enumerate() {
        for s in 0..n {
            out[(k + s) % n][s] = ck;
        }
    }
    out
}

/// Replace every entry by its `N x N` multiplication operator on `Z[Z_N]`.
pub fn specialize_groupring(m: &LaurentMatrix, spec: &RingMapSpec) -> Result<IntMatrix> {
    let exps = spec.exponents_for(m.variables())?;
    let n = spec.order() as usize;
    let mut out = IntMatrix::zeros(m.rows() * n, m.cols() * n);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let c = m.get(i, j).to_group_ring(n as u64, &exps);
            for (k, &ck) in c.iter().enumerate() {
                if ck == 0 {
                    continue;
                }
                for s in 0..n {
                    out.set(i * n + (k + s) % n, j * n + s, BigInt::from(ck));
                }
            }
        }
    }
    Ok(out)
}
