//! Integer diagonalization by unimodular row and column operations.
//!
//! The elimination runs on checked `i64` entries and restarts on `BigInt`
//! when an intermediate value overflows.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;

/// Integer arithmetic needed by the elimination; `None` signals overflow.
pub(crate) trait EuclidInt: Clone + PartialEq + fmt::Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn is_neg(&self) -> bool;
    /// Nearest-integer quotient, so the remainder is at most half the divisor.
    fn round_quot(&self, d: &Self) -> Option<Self>;
    /// `self - q * b`.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn negated(&self) -> Option<Self>;
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl EuclidInt for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn round_quot(&self, d: &Self) -> Option<Self> {
        let mut q = self.checked_div(*d)?;
        let r = self - q * d;
        if r.unsigned_abs().checked_mul(2)? > d.unsigned_abs() {
            q = if (r < 0) == (*d < 0) { q.checked_add(1)? } else { q.checked_sub(1)? };
        }
        Some(q)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        num_traits::ToPrimitive::to_i64(v)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl EuclidInt for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn round_quot(&self, d: &Self) -> Option<Self> {
        let (mut q, r) = self.div_rem(d);
        if (Signed::abs(&r) * 2u32) > Signed::abs(d) {
            if Signed::is_negative(&r) == Signed::is_negative(d) {
                q += 1;
            } else {
                q -= 1;
            }
        }
        Some(q)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// `D = U A W` with `D` diagonal (nonnegative); only `U` and `U^-1` are kept.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// Diagonal entries `D[t][t]` for `t < rank`, all positive.
    pub diagonal: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
    /// Row transform `U` and its inverse, when requested.
    pub row_transform: Option<(IntMatrix, IntMatrix)>,
}

impl Diagonalization {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Elim<T> {
    m: usize,
    n: usize,
    a: Vec<T>,
    // U (m x m) and U^-1 (m x m), row-major
    u: Option<(Vec<T>, Vec<T>)>,
}

impl<T: EuclidInt> Elim<T> {
    fn new(mat: &IntMatrix, track: bool) -> Option<Self> {
        let (m, n) = (mat.rows(), mat.cols());
        let a = mat.entries().iter().map(T::from_bigint).collect::<Option<Vec<_>>>()?;
        let u = track.then(|| (identity::<T>(m), identity::<T>(m)));
        Some(Elim { m, n, a, u })
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.n + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        let n = self.n;
        for j in 0..n {
            self.a.swap(i * n + j, k * n + j);
        }
        if let Some((u, ui)) = &mut self.u {
            let m = self.m;
            for j in 0..m {
                u.swap(i * m + j, k * m + j);
                ui.swap(j * m + i, j * m + k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        let n = self.n;
        for i in 0..self.m {
            self.a.swap(i * n + j, i * n + k);
        }
    }

    /// `row_i -= q * row_t`, touching columns `from..`.
    fn row_sub(&mut self, i: usize, t: usize, q: &T, from: usize) -> Option<()> {
        let n = self.n;
        for j in from..n {
            let b = &self.a[t * n + j];
            if !b.is_nil() {
                let v = self.a[i * n + j].sub_mul(q, b)?;
                self.a[i * n + j] = v;
            }
        }
        if let Some((u, ui)) = &mut self.u {
            let m = self.m;
            for j in 0..m {
                let b = &u[t * m + j];
                if !b.is_nil() {
                    let v = u[i * m + j].sub_mul(q, b)?;
                    u[i * m + j] = v;
                }
            }
            // U^-1 <- U^-1 (I + q e_i e_t^T): col_t += q col_i
            let mq = q.negated()?;
            for r in 0..m {
                let b = &ui[r * m + i];
                if !b.is_nil() {
                    let v = ui[r * m + t].sub_mul(&mq, b)?;
                    ui[r * m + t] = v;
                }
            }
        }
        Some(())
    }

    /// `col_j -= q * col_t`, touching rows `from..`.
    fn col_sub(&mut self, j: usize, t: usize, q: &T, from: usize) -> Option<()> {
        let n = self.n;
        for i in from..self.m {
            let b = &self.a[i * n + t];
            if !b.is_nil() {
                let v = self.a[i * n + j].sub_mul(q, b)?;
                self.a[i * n + j] = v;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        let n = self.n;
        for j in 0..n {
            self.a[t * n + j] = self.a[t * n + j].negated()?;
        }
        if let Some((u, ui)) = &mut self.u {
            let m = self.m;
            for j in 0..m {
                u[t * m + j] = u[t * m + j].negated()?;
                ui[j * m + t] = ui[j * m + t].negated()?;
            }
        }
        Some(())
    }

    /// Smallest nonzero entry of the trailing block, row-then-column order.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let v = self.at(i, j);
                if v.is_nil() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => v.abs_cmp(self.at(bi, bj)) == Ordering::Less,
                };
                if better {
                    best = Some((i, j));
                    if v.abs_cmp(&T::unit()) == Ordering::Equal {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self, progress: &mut dyn FnMut(usize, usize)) -> Option<Vec<T>> {
        let limit = self.m.min(self.n);
        let mut diag = Vec::new();
        for t in 0..limit {
            if t % 64 == 0 {
                progress(t, limit);
            }
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.m {
                    if !self.at(i, t).is_nil() {
                        let q = self.at(i, t).round_quot(self.at(t, t))?;
                        self.row_sub(i, t, &q, t)?;
                        clean &= self.at(i, t).is_nil();
                    }
                }
                for j in t + 1..self.n {
                    if !self.at(t, j).is_nil() {
                        let q = self.at(t, j).round_quot(self.at(t, t))?;
                        self.col_sub(j, t, &q, t)?;
                        clean &= self.at(t, j).is_nil();
                    }
                }
                if clean {
                    break;
                }
                // a remainder is smaller than the pivot; bring the smallest in
                let mut best: Option<(usize, bool)> = None;
                let mut best_val = self.at(t, t).clone();
                for i in t + 1..self.m {
                    let v = self.at(i, t);
                    if !v.is_nil() && v.abs_cmp(&best_val) == Ordering::Less {
                        best = Some((i, true));
                        best_val = v.clone();
                    }
                }
                for j in t + 1..self.n {
                    let v = self.at(t, j);
                    if !v.is_nil() && v.abs_cmp(&best_val) == Ordering::Less {
                        best = Some((j, false));
                        best_val = v.clone();
                    }
                }
                match best {
                    Some((i, true)) => self.swap_rows(t, i),
                    Some((j, false)) => self.swap_cols(t, j),
                    None => {}
                }
            }
            if self.at(t, t).is_neg() {
                self.negate_row(t)?;
            }
            diag.push(self.at(t, t).clone());
        }
        progress(limit, limit);
        Some(diag)
    }
}

fn identity<T: EuclidInt>(m: usize) -> Vec<T> {
    let mut v = vec![T::nil(); m * m];
    for i in 0..m {
        v[i * m + i] = T::unit();
    }
    v
}

fn to_matrix<T: EuclidInt>(m: usize, v: &[T]) -> IntMatrix {
    let rows = v.chunks(m.max(1)).map(|r| r.iter().map(T::to_bigint).collect()).collect();
    IntMatrix::from_bigint_rows(if m == 0 { vec![] } else { rows }, m).expect("square")
}

fn finish<T: EuclidInt>(e: Elim<T>, diag: Vec<T>) -> Diagonalization {
    Diagonalization {
        diagonal: diag.iter().map(T::to_bigint).collect(),
        rows: e.m,
        cols: e.n,
        row_transform: e.u.as_ref().map(|(u, ui)| (to_matrix(e.m, u), to_matrix(e.m, ui))),
    }
}

/// Diagonalize `a`; `progress(step, total)` is called periodically.
pub fn diagonalize(
    a: &IntMatrix,
    track_rows: bool,
    progress: &mut dyn FnMut(usize, usize),
) -> Diagonalization {
    if let Some(mut e) = Elim::<i64>::new(a, track_rows) {
        if let Some(diag) = e.run(progress) {
            return finish(e, diag);
        }
    }
    let mut e = Elim::<BigInt>::new(a, track_rows).expect("BigInt conversion is total");
    let diag = e.run(progress).expect("BigInt arithmetic does not overflow");
    finish(e, diag)
}

/// Invariant factors `d1 | d2 | ... | d_rank` (all positive, 1s included).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SmithForm {
    #[serde(with = "bigint_list")]
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    pub fn from_diagonal(diag: &[BigInt]) -> Self {
        let mut d: Vec<BigInt> = diag.iter().filter(|v| !v.is_zero()).map(|v| v.abs()).collect();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let g = d[i].gcd(&d[j]);
                if g != d[i] {
                    let l = &d[i] / &g * &d[j];
                    d[i] = g;
                    d[j] = l;
                }
            }
        }
        let rank = d.len();
        SmithForm {
            invariant_factors: d,
            rank,
        }
    }

    pub fn to_text(&self) -> String {
        self.invariant_factors
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Invariant factors of an integer matrix.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    SmithForm::from_diagonal(&diagonalize(a, false, &mut |_, _| {}).diagonal)
}

/// `Z^free ⊕ Z/t1 ⊕ ... ⊕ Z/tk` with `t1 | ... | tk`, all `ti > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// The cokernel of `a: Z^cols -> Z^rows` given its invariant factors.
    pub fn cokernel_of(rows: usize, smith: &SmithForm) -> Self {
        AbelianGroup {
            free_rank: rows - smith.rank,
            torsion: smith
                .invariant_factors
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect(),
        }
    }

    /// Abelianization of a presentation with the given relation matrix
    /// (one row per relator, one column per generator).
    pub fn from_relations(relations: &[Vec<i64>], generators: usize) -> Self {
        let m = IntMatrix::from_rows(relations, generators).expect("rectangular relations");
        Self::cokernel_of(generators, &smith_normal_form(&m.transpose()))
    }

    /// Distinct primes dividing the torsion orders.
    pub fn torsion_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = Vec::new();
        for t in &self.torsion {
            for q in factor_small(t) {
                if !ps.contains(&q) {
                    ps.push(q);
                }
            }
        }
        ps.sort_unstable();
        ps
    }

    /// The `q`-power parts `q^v` (v > 0) of the torsion factors.
    pub fn primary_part(&self, q: u64) -> Vec<BigInt> {
        let q = BigInt::from(q);
        self.torsion
            .iter()
            .filter_map(|t| {
                let mut t = t.clone();
                let mut part = BigInt::one();
                while (&t % &q).is_zero() {
                    t /= &q;
                    part *= &q;
                }
                (!part.is_one()).then_some(part)
            })
            .collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Prime factors of a positive integer by trial division.
pub(crate) fn factor_small(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut q = 2u64;
    while BigInt::from(q) * BigInt::from(q) <= n {
        let bq = BigInt::from(q);
        if (&n % &bq).is_zero() {
            out.push(q);
            while (&n % &bq).is_zero() {
                n /= &bq;
            }
        }
        q += 1;
    }
    if n > BigInt::one() {
        out.push(num_traits::ToPrimitive::to_u64(&n).expect("prime factor fits in u64"));
    }
    out
}

pub(crate) mod bigint_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]], 2).unwrap();
        assert_eq!(smith_normal_form(&a).invariant_factors, ints(&[2, 4]));
        let z = IntMatrix::zeros(3, 4);
        let s = smith_normal_form(&z);
        assert!(s.invariant_factors.is_empty());
        assert_eq!(s.rank, 0);
        let a = IntMatrix::from_rows(&[vec![6, 0], vec![0, 4]], 2).unwrap();
        assert_eq!(smith_normal_form(&a).invariant_factors, ints(&[2, 12]));
    }

    #[test]
    fn diagonal_normalization() {
        let s = SmithForm::from_diagonal(&ints(&[4, 6, 0, 9, 1]));
        assert_eq!(s.invariant_factors, ints(&[1, 1, 6, 36]));
        assert_eq!(s.rank, 4);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let a = IntMatrix::from_rows(&[vec![big, big - 1], vec![big - 7, big + 5]], 2).unwrap();
        let det = BigInt::from(big) * BigInt::from(big + 5) - BigInt::from(big - 1) * BigInt::from(big - 7);
        let s = smith_normal_form(&a);
        let prod: BigInt = s.invariant_factors.iter().product();
        assert_eq!(prod, det.abs());
    }

    #[test]
    fn row_transform_is_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (m, n) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-9..10)).collect()).collect();
            let a = IntMatrix::from_rows(&rows, n).unwrap();
            let d = diagonalize(&a, true, &mut |_, _| {});
            let (u, ui) = d.row_transform.unwrap();
            assert_eq!(u.mul(&ui).unwrap(), IntMatrix::identity(m));
            // U A has zero rows past the rank, so coker(A) = Z^(m - rank) ⊕ Z/d_i
            let ua = u.mul(&a).unwrap();
            for i in d.diagonal.len()..m {
                assert!(ua.row(i).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn abelian_group_text() {
        let g = AbelianGroup {
            free_rank: 7,
            torsion: ints(&[2, 2]),
        };
        assert_eq!(g.to_string(), "Z^7 + Z/2 + Z/2");
        assert_eq!(g.torsion_primes(), vec![2]);
        let h = AbelianGroup {
            free_rank: 0,
            torsion: ints(&[12]),
        };
        assert_eq!(h.primary_part(2), ints(&[4]));
        assert_eq!(h.torsion_primes(), vec![2, 3]);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"freeRank":7,"torsion":["2","2"]}"#);
        assert_eq!(serde_json::from_str::<AbelianGroup>(&json).unwrap(), g);
    }

    #[test]
    fn abelianization_of_relations() {
        // <x, y | x^2, y^3> = Z/6
        let g = AbelianGroup::from_relations(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(g.free_rank, 0);
        assert_eq!(g.torsion, ints(&[6]));
    }

    fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
        let mut u = IntMatrix::identity(n);
        for _ in 0..3 * n {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i == j {
                continue;
            }
            let c = BigInt::from(rng.gen_range(-3..4));
            for k in 0..n {
                let v = u.get(i, k) + &c * u.get(j, k);
                u.set(i, k, v);
            }
        }
        u
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn invariant_under_unimodular_change(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (m, n) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-6..7)).collect()).collect();
            let a = IntMatrix::from_rows(&rows, n).unwrap();
            let s = smith_normal_form(&a);
            for w in s.invariant_factors.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            let b = unimodular(&mut rng, m).mul(&a).unwrap().mul(&unimodular(&mut rng, n)).unwrap();
            prop_assert_eq!(smith_normal_form(&b), s);
        }
    }
}
