//! First homology of the finite cyclic cover of a presentation 2-complex,
//! with the deck transformation action.
//!
//! Chains on the cover are free `Z[Z_N]`-modules with bases `e_r` (relators),
//! `e_j` (generators) and `e_0`, and `d2(e_r) = sum_j (dr/dx_j) e_j`,
//! `d1(e_j) = (g^(lambda_j) - 1) e_0`. Over `Z` every group-ring entry becomes
//! an `N x N` circulant, so `d2` is `(G N) x (R N)` and `d1` is `N x (G N)`.
//! `H1 = ker d1 / im d2` is computed in a saturated kernel basis and then
//! diagonalized; this equals `H1` of the `N`-fold cover whatever the
//! asphericity of the presentation complex.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::smith::{bigint_list, diagonalize, AbelianGroup, SmithForm};
use super::IntMatrix;
use crate::exactnum::{gcd, modulo};
use crate::foxcalc::{alexander_matrix, RingMapSpec};
use crate::grouppres::GroupPresentation;
use crate::{Error, Result};

/// `H1` of the cover and the action of the deck generator `g` on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverHomology {
    pub order: u64,
    pub group: AbelianGroup,
    pub deck: DeckAction,
}

/// The deck action in the cyclic decomposition found by diagonalization:
/// torsion summands `Z/d_i` (`d_i > 1`, not necessarily a divisibility chain)
/// and a free part. Column `i` of each matrix is the image of generator `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeckAction {
    #[serde(with = "bigint_list")]
    pub torsion_orders: Vec<BigInt>,
    /// Row `k` reduced mod `torsion_orders[k]`.
    #[serde(with = "bigint_matrix")]
    pub torsion_matrix: Vec<Vec<BigInt>>,
    /// Action on `H1 / torsion`.
    #[serde(with = "bigint_matrix")]
    pub free_matrix: Vec<Vec<BigInt>>,
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], moduli: Option<&[BigInt]>) -> Vec<Vec<BigInt>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .enumerate()
        .map(|(k, row)| {
            (0..n)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for (x, brow) in row.iter().zip(b) {
                        if !x.is_zero() {
                            s += x * &brow[j];
                        }
                    }
                    match moduli {
                        Some(m) => s.mod_floor(&m[k]),
                        None => s,
                    }
                })
                .collect()
        })
        .collect()
}

fn is_identity(a: &[Vec<BigInt>], moduli: Option<&[BigInt]>) -> bool {
    a.iter().enumerate().all(|(k, row)| {
        row.iter().enumerate().all(|(j, v)| {
            let target = if j == k { BigInt::one() } else { BigInt::zero() };
            match moduli {
                Some(m) => (v - target).mod_floor(&m[k]).is_zero(),
                None => *v == target,
            }
        })
    })
}

fn order_of(a: &[Vec<BigInt>], moduli: Option<&[BigInt]>, bound: u64) -> Option<u64> {
    if a.is_empty() {
        return Some(1);
    }
    let mut p = a.to_vec();
    for k in 1..=bound {
        if is_identity(&p, moduli) {
            return Some(k);
        }
        p = mat_mul(&p, a, moduli);
    }
    None
}

fn power(a: &[Vec<BigInt>], moduli: Option<&[BigInt]>, n: u64) -> Vec<Vec<BigInt>> {
    let size = a.len();
    let mut out: Vec<Vec<BigInt>> = (0..size)
        .map(|i| (0..size).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    for _ in 0..n {
        out = mat_mul(&out, a, moduli);
    }
    out
}

impl DeckAction {
    /// The action on the `q`-primary part `⊕ Z/q^(v_k)`, as moduli and matrix.
    pub fn primary(&self, q: u64) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
        let qb = BigInt::from(q);
        let split = |d: &BigInt| {
            let mut rest = d.clone();
            let mut part = BigInt::one();
            while (&rest % &qb).is_zero() {
                rest /= &qb;
                part *= &qb;
            }
            (part, rest)
        };
        let parts: Vec<(BigInt, BigInt)> = self.torsion_orders.iter().map(split).collect();
        let idx: Vec<usize> = (0..parts.len()).filter(|&i| !parts[i].0.is_one()).collect();
        let moduli = idx.iter().map(|&i| parts[i].0.clone()).collect();
        let matrix = idx
            .iter()
            .map(|&k| {
                let (qk, mk) = &parts[k];
                idx.iter()
                    .map(|&i| {
                        // image of (d_i / q^v_i) e_i, read in the generator (d_k / q^v_k) e_k
                        let v = (&self.torsion_matrix[k][i] * &parts[i].1).mod_floor(&self.torsion_orders[k]);
                        debug_assert!((&v % mk).is_zero());
                        (v / mk).mod_floor(qk)
                    })
                    .collect()
            })
            .collect();
        (moduli, matrix)
    }

    /// Multiplicative order of the action on the `q`-primary part (searched up to `bound`).
    pub fn primary_order(&self, q: u64, bound: u64) -> Option<u64> {
        let (moduli, m) = self.primary(q);
        order_of(&m, Some(&moduli), bound)
    }

    /// True iff the action on the `q`-primary part is `x -> -x`.
    pub fn primary_is_negation(&self, q: u64) -> bool {
        let (moduli, m) = self.primary(q);
        !moduli.is_empty()
            && m.iter().enumerate().all(|(k, row)| {
                row.iter().enumerate().all(|(j, v)| {
                    let target = if j == k { -BigInt::one() } else { BigInt::zero() };
                    (v - target).mod_floor(&moduli[k]).is_zero()
                })
            })
    }

    pub fn free_order(&self, bound: u64) -> Option<u64> {
        order_of(&self.free_matrix, None, bound)
    }

    /// `g^n` acts as the identity on both parts.
    pub fn has_order_dividing(&self, n: u64) -> bool {
        is_identity(&power(&self.torsion_matrix, Some(&self.torsion_orders), n), Some(&self.torsion_orders))
            && is_identity(&power(&self.free_matrix, None, n), None)
    }
}

mod bigint_matrix {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|r| r.iter().map(|t| t.parse().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

fn circulant_block(m: &mut IntMatrix, r0: usize, c0: usize, ring: &[i64]) {
    let n = ring.len();
    for (k, &c) in ring.iter().enumerate() {
        if c != 0 {
            for s in 0..n {
                let (i, j) = (r0 + (k + s) % n, c0 + s);
                let v = m.get(i, j) + c;
                m.set(i, j, v);
            }
        }
    }
}

/// Boundary maps `(d1, d2)` of the cover chain complex.
pub(crate) fn cover_boundaries(pr: &GroupPresentation, order: u64, exps: &[i64]) -> (IntMatrix, IntMatrix) {
    let n = order as usize;
    let g = pr.num_generators();
    let r = pr.num_relators();
    let mut d1 = IntMatrix::zeros(n, g * n);
    for (j, &e) in exps.iter().enumerate() {
        let mut ring = vec![0i64; n];
        ring[modulo(e, order) as usize] += 1;
        ring[0] -= 1;
        circulant_block(&mut d1, 0, j * n, &ring);
    }
    let alex = alexander_matrix(pr);
    let mut d2 = IntMatrix::zeros(g * n, r * n);
    for ri in 0..r {
        for j in 0..g {
            let poly = alex.get(ri, j);
            if !poly.is_zero() {
                circulant_block(&mut d2, j * n, ri * n, &poly.to_group_ring(order, exps));
            }
        }
    }
    (d1, d2)
}

/// Deck generator on `C1 = Z[Z_N]^G`: the shift `e_(j,s) -> e_(j,s+1)`.
fn deck_on_chains(g: usize, n: usize) -> IntMatrix {
    let mut t = IntMatrix::zeros(g * n, g * n);
    for j in 0..g {
        for s in 0..n {
            t.set(j * n + (s + 1) % n, j * n + s, BigInt::one());
        }
    }
    t
}

/// `H1` of the `N`-fold cyclic cover defined by `lam`, with the deck action.
/// `progress` receives short status lines.
pub fn cover_homology(
    pr: &GroupPresentation,
    lam: &RingMapSpec,
    progress: &mut dyn FnMut(&str),
) -> Result<CoverHomology> {
    let order = lam.order();
    if order == 0 {
        return Err(Error::InvalidCharacter("order must be positive".into()));
    }
    let exps = lam.exponents_for(pr.generators())?;
    let span = exps.iter().fold(order, |acc, &e| gcd(acc, modulo(e, order)));
    if span != 1 {
        return Err(Error::NotSurjective { order, gcd: span });
    }
    let n = order as usize;
    let g = pr.num_generators();
    progress(&format!(
        "cover chains: {} generators, {} relators, N = {order}",
        g,
        pr.num_relators()
    ));
    let (d1, d2) = cover_boundaries(pr, order, &exps);

    // d1 V = [H | 0] with V = U^T from U d1^T W = D
    let dd1 = diagonalize(&d1.transpose(), true, &mut |_, _| {});
    let r = dd1.rank();
    let (u1, u1_inv) = dd1.row_transform.expect("tracked");
    let v = u1.transpose();
    let v_inv = u1_inv.transpose();
    let y = v_inv.mul(&d2)?;
    if (0..r).any(|i| y.row(i).iter().any(|x| !x.is_zero())) {
        return Err(Error::DimensionMismatch("image of d2 is not inside ker d1".into()));
    }
    let kdim = g * n - r;
    let x = y.block(r, g * n, 0, y.cols());

    let m = v_inv.mul(&deck_on_chains(g, n))?.mul(&v)?;
    if (0..r).any(|i| (r..g * n).any(|j| !m.get(i, j).is_zero())) {
        return Err(Error::DimensionMismatch("deck action does not preserve ker d1".into()));
    }
    let t_k = m.block(r, g * n, r, g * n);

    progress(&format!("diagonalizing {} x {} relation matrix", x.rows(), x.cols()));
    let mut report = |step: usize, total: usize| {
        if step < total && step % 64 == 0 {
            progress(&format!("  pivot {step} / {total}"));
        }
    };
    let dx = diagonalize(&x, true, &mut report);
    let rank = dx.rank();
    let (ux, ux_inv) = dx.row_transform.as_ref().expect("tracked");
    let tors: Vec<usize> = (0..rank).filter(|&i| !dx.diagonal[i].is_one()).collect();
    let free: Vec<usize> = (rank..kdim).collect();
    let keep: Vec<usize> = tors.iter().chain(&free).copied().collect();

    // A = U T_K U^-1 restricted to the surviving summands
    let rows_u = IntMatrix::from_bigint_rows(keep.iter().map(|&i| ux.row(i).to_vec()).collect(), kdim)?;
    let cols_ui = IntMatrix::from_bigint_rows(
        (0..kdim)
            .map(|i| keep.iter().map(|&j| ux_inv.get(i, j).clone()).collect())
            .collect(),
        keep.len(),
    )?;
    let a = rows_u.mul(&t_k)?.mul(&cols_ui)?;
    let nt = tors.len();
    for k in nt..keep.len() {
        if (0..nt).any(|i| !a.get(k, i).is_zero()) {
            return Err(Error::DimensionMismatch("deck action maps torsion outside torsion".into()));
        }
    }
    let torsion_orders: Vec<BigInt> = tors.iter().map(|&i| dx.diagonal[i].clone()).collect();
    let torsion_matrix = (0..nt)
        .map(|k| (0..nt).map(|i| a.get(k, i).mod_floor(&torsion_orders[k])).collect())
        .collect();
    let free_matrix = (nt..keep.len())
        .map(|k| (nt..keep.len()).map(|i| a.get(k, i).clone()).collect())
        .collect();
    let group = AbelianGroup::cokernel_of(kdim, &SmithForm::from_diagonal(&dx.diagonal));
    progress(&format!("H1 = {group}"));
    Ok(CoverHomology {
        order,
        group,
        deck: DeckAction {
            torsion_orders,
            torsion_matrix,
            free_matrix,
        },
    })
}

/// `H1` of the cyclic cover defined by `lam`.
pub fn cover_h1(pr: &GroupPresentation, lam: &RingMapSpec) -> Result<AbelianGroup> {
    Ok(cover_homology(pr, lam, &mut |_| {})?.group)
}

/// The deck generator's action on `H1` of the cyclic cover.
pub fn monodromy_on_h1(pr: &GroupPresentation, lam: &RingMapSpec) -> Result<DeckAction> {
    Ok(cover_homology(pr, lam, &mut |_| {})?.deck)
}
