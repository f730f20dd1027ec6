//! Exact linear algebra: ranks over fields, integer Smith forms and kernels,
//! and first homology of finite cyclic covers.

mod cover;
mod intmatrix;
mod smith;

pub use cover::{cover_h1, cover_homology, monodromy_on_h1, CoverHomology, DeckAction};
pub use intmatrix::IntMatrix;
pub use smith::{diagonalize, smith_normal_form, AbelianGroup, Diagonalization, SmithForm};

use num_traits::ToPrimitive;

use crate::exactnum::{Field, FieldScalar};
use crate::{Error, Result};

/// Rank by Gaussian elimination.
pub fn rank_over_field<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !field.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(rank, p);
        let inv = field.inv(&a[rank][c]).expect("pivot is nonzero");
        for i in rank + 1..rows {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let f = field.mul(&a[i][c], &inv);
            for j in c..cols {
                if !field.is_zero(&a[rank][j]) {
                    let v = field.sub(&a[i][j], &field.mul(&f, &a[rank][j]));
                    a[i][j] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a matrix of tagged scalars; all entries must share one field.
pub fn rank_over_scalars(m: &[Vec<FieldScalar>]) -> Result<usize> {
    let Some(first) = m.iter().flatten().next() else {
        return Ok(0);
    };
    let field = first.field();
    if let Some(bad) = m.iter().flatten().find(|s| s.field() != field) {
        return Err(Error::FieldMismatch(field.describe(), bad.field().describe()));
    }
    macro_rules! unwrap_rows {
        ($variant:ident) => {
            m.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| match s {
                            FieldScalar::$variant(v) => v.clone(),
                            _ => unreachable!("field checked above"),
                        })
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        };
    }
    Ok(match first {
        FieldScalar::Rational(_) => rank_over_field(&crate::exactnum::Rationals, &unwrap_rows!(Rational)),
        FieldScalar::Cyclotomic(c) => rank_over_field(c.field(), &unwrap_rows!(Cyclotomic)),
        FieldScalar::Finite(e) => rank_over_field(e.field(), &unwrap_rows!(Finite)),
    })
}

/// Rank of an integer matrix reduced mod a prime `q`.
pub fn rank_mod_prime(m: &IntMatrix, q: u64) -> usize {
    let qb = num_bigint::BigInt::from(q);
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|v| {
                    let r = ((v % &qb) + &qb) % &qb;
                    r.to_u64().expect("residue fits")
                })
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = m.cols();
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % q as u128) as u64;
    let inv = |x: u64| {
        // Fermat
        let (mut b, mut e, mut r) = (x, q - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pinv = inv(a[rank][c]);
        for i in rank + 1..rows {
            if a[i][c] == 0 {
                continue;
            }
            let f = mulmod(a[i][c], pinv);
            for j in c..cols {
                let s = mulmod(f, a[rank][j]);
                a[i][j] = (a[i][j] + q - s) % q;
            }
        }
        rank += 1;
    }
    rank
}

/// A lattice basis (as columns) of `{v in Z^cols : m v = 0}`; saturated.
pub fn integer_kernel_basis(m: &IntMatrix) -> IntMatrix {
    // U m^T W = D, so the rows of U past the rank span the left kernel of m^T
    let d = diagonalize(&m.transpose(), true, &mut |_, _| {});
    let rank = d.rank();
    let (u, _) = d.row_transform.expect("tracked");
    u.block(rank, m.cols(), 0, m.cols()).transpose()
}
