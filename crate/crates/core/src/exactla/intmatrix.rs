//! Dense arbitrary-precision integer matrices and their text format.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// A dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    /// From rows of equal length; `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        Ok(m)
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(IntMatrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if let Some(out) = self.mul_small(other) {
            return Ok(out);
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product in `i128` when all inputs fit in `i64` and nothing overflows.
    fn mul_small(&self, other: &IntMatrix) -> Option<IntMatrix> {
        let a = self.try_to_i64()?;
        let b = other.try_to_i64()?;
        let (n, p) = (self.cols, other.cols);
        let mut acc = vec![0i128; self.rows * p];
        for i in 0..self.rows {
            for k in 0..n {
                let x = a[i * n + k] as i128;
                if x == 0 {
                    continue;
                }
                let row = &b[k * p..(k + 1) * p];
                let out = &mut acc[i * p..(i + 1) * p];
                for (o, &y) in out.iter_mut().zip(row) {
                    if y != 0 {
                        *o = o.checked_add(x.checked_mul(y as i128)?)?;
                    }
                }
            }
        }
        Some(IntMatrix {
            rows: self.rows,
            cols: p,
            data: acc.into_iter().map(BigInt::from).collect(),
        })
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        out
    }

    /// Entries as `i64`; panics if one does not fit.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| v.to_i64().expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }

    /// `Some` when every entry fits in `i64`.
    pub fn try_to_i64(&self) -> Option<Vec<i64>> {
        self.data.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Sparse text: header `rows cols nnz`, then one `i j v` line per nonzero
    /// entry (0-based, row-major order).
    pub fn to_sparse_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.push_str(&format!("{i} {j} {v}\n"));
                }
            }
        }
        out
    }

    /// Reads the sparse form, or the dense fallback: header `rows cols`
    /// followed by `rows` lines of `cols` integers. Lines starting with `#`
    /// are ignored.
    pub fn parse_text(text: &str) -> Result<IntMatrix> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let nums = |l: &str| -> Result<Vec<BigInt>> {
            l.split_whitespace()
                .map(|t| t.parse::<BigInt>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect()
        };
        let usize_of = |v: &BigInt| {
            v.to_usize()
                .ok_or_else(|| Error::Parse(format!("bad dimension {v}")))
        };
        let h = nums(header)?;
        match h.len() {
            3 => {
                let (r, c, nnz) = (usize_of(&h[0])?, usize_of(&h[1])?, usize_of(&h[2])?);
                let mut m = Self::zeros(r, c);
                let mut count = 0;
                for l in lines {
                    let t = nums(l)?;
                    if t.len() != 3 {
                        return Err(Error::Parse(format!("expected `i j v`, got {l:?}")));
                    }
                    let (i, j) = (usize_of(&t[0])?, usize_of(&t[1])?);
                    if i >= r || j >= c {
                        return Err(Error::Parse(format!("entry ({i}, {j}) out of range")));
                    }
                    m.set(i, j, t[2].clone());
                    count += 1;
                }
                if count != nnz {
                    return Err(Error::Parse(format!("header says {nnz} entries, found {count}")));
                }
                Ok(m)
            }
            2 => {
                let (r, c) = (usize_of(&h[0])?, usize_of(&h[1])?);
                let rows = lines.map(nums).collect::<Result<Vec<_>>>()?;
                if rows.len() != r {
                    return Err(Error::Parse(format!("expected {r} rows, found {}", rows.len())));
                }
                Self::from_bigint_rows(rows, c)
            }
            _ => Err(Error::Parse(format!("bad header {header:?}"))),
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
