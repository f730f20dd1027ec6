//! Free-group words, braid words and the Artin action.
//!
//! Convention (pinned by `tests::exactly_one_convention_reproduces_zact`):
//! `sigma_i` sends `y_i -> y_i y_{i+1} y_i^-1`, `y_{i+1} -> y_i`, and braids
//! act on the right, so the leftmost letter of a braid word acts first:
//! `artin_action(b1 * b2, w) = artin_action(b2, artin_action(b1, w))`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A freely reduced word, run-length encoded as `(generator, exponent)`
/// syllables with 1-based generator indices and nonzero exponents; adjacent
/// syllables never share a generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeWord {
    syllables: Vec<(u32, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(i: u32) -> Self {
        Self::power(i, 1)
    }

    pub fn power(i: u32, e: i64) -> Self {
        let mut w = Self::identity();
        w.push(i, e);
        w
    }

    /// From signed letters: `k > 0` is `x_k`, `k < 0` is `x_|k|^-1`.
    pub fn from_letters(letters: &[i64]) -> Self {
        let mut w = Self::identity();
        for &l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            w.push(l.unsigned_abs() as u32, l.signum());
        }
        w
    }

    pub fn from_syllables<I: IntoIterator<Item = (u32, i64)>>(it: I) -> Self {
        let mut w = Self::identity();
        for (i, e) in it {
            w.push(i, e);
        }
        w
    }

    pub fn syllables(&self) -> &[(u32, i64)] {
        &self.syllables
    }

    /// Expanded signed letters.
    pub fn letters(&self) -> Vec<i64> {
        self.syllables
            .iter()
            .flat_map(|&(i, e)| std::iter::repeat(e.signum() * i as i64).take(e.unsigned_abs() as usize))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn max_generator(&self) -> u32 {
        self.syllables.iter().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Append `x_i^e` and reduce.
    pub fn push(&mut self, i: u32, e: i64) {
        assert!(i >= 1, "generators are 1-based");
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((j, f)) if *j == i => {
                *f += e;
                if *f == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((i, e)),
        }
    }

    pub fn push_word(&mut self, w: &FreeWord) {
        for &(i, e) in &w.syllables {
            self.push(i, e);
        }
    }

    pub fn push_inverse(&mut self, w: &FreeWord) {
        for &(i, e) in w.syllables.iter().rev() {
            self.push(i, -e);
        }
    }

    pub fn inverse(&self) -> FreeWord {
        let mut w = Self::identity();
        w.push_inverse(self);
        w
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let mut w = Self::identity();
        for _ in 0..k.unsigned_abs() {
            if k > 0 {
                w.push_word(self);
            } else {
                w.push_inverse(self);
            }
        }
        w
    }

    /// `c w c^-1`.
    pub fn conjugated_by(&self, c: &FreeWord) -> FreeWord {
        let mut w = c.clone();
        w.push_word(self);
        w.push_inverse(c);
        w
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        let mut w = a.clone();
        w.push_word(b);
        w.push_inverse(a);
        w.push_inverse(b);
        w
    }

    /// Image under the homomorphism `x_i -> images[i-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut w = Self::identity();
        for &(i, e) in &self.syllables {
            let img = &images[i as usize - 1];
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    w.push_word(img);
                } else {
                    w.push_inverse(img);
                }
            }
        }
        w
    }

    /// Exponent sums, one per generator `1..=rank`.
    pub fn abelianization(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for &(i, e) in &self.syllables {
            v[i as usize - 1] += e;
        }
        v
    }

    /// Render with the given generator names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        self.syllables
            .iter()
            .map(|&(i, e)| {
                let name = names
                    .get(i as usize - 1)
                    .cloned()
                    .unwrap_or_else(|| format!("x{i}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;
    fn mul(self, rhs: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        w.push_word(rhs);
        w
    }
}

impl Mul for FreeWord {
    type Output = FreeWord;
    fn mul(mut self, rhs: FreeWord) -> FreeWord {
        self.push_word(&rhs);
        self
    }
}

/// A braid word on `strands` strands: `+i` is `sigma_i`, `-i` is `sigma_i^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidBraid(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: vec![],
        }
    }

    /// `sigma_i^sign`.
    pub fn sigma(strands: usize, i: i32) -> Self {
        Self::new(strands, vec![i]).expect("generator index in range")
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// `c b c^-1`.
    pub fn conjugated_by(&self, c: &BraidWord) -> Self {
        c * &(self * &c.inverse())
    }

    /// Position of each strand at the bottom, as a permutation of `0..strands`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl Mul for &BraidWord {
    type Output = BraidWord;
    fn mul(self, rhs: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, rhs.strands, "braids on different strand counts");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }
}

impl Mul for BraidWord {
    type Output = BraidWord;
    fn mul(self, rhs: BraidWord) -> BraidWord {
        &self * &rhs
    }
}

/// Text form `s: l1 l2 ...`.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing strand header in {s:?}")))?;
        let strands = head
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("{head:?}: {e}")))?;
        let letters = body
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters)
    }
}

/// How `sigma_i` acts on generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `y_i -> y_i y_{i+1} y_i^-1`, `y_{i+1} -> y_i`.
    Standard,
    /// `sigma_i` acts as the standard `sigma_i^-1`.
    Mirror,
}

/// Which end of a braid word acts first on a free-group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Composition {
    LeftmostFirst,
    RightmostFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArtinConvention {
    pub orientation: Orientation,
    pub composition: Composition,
}

impl ArtinConvention {
    pub const ALL: [ArtinConvention; 4] = [
        ArtinConvention::new(Orientation::Standard, Composition::LeftmostFirst),
        ArtinConvention::new(Orientation::Standard, Composition::RightmostFirst),
        ArtinConvention::new(Orientation::Mirror, Composition::LeftmostFirst),
        ArtinConvention::new(Orientation::Mirror, Composition::RightmostFirst),
    ];

    pub const fn new(orientation: Orientation, composition: Composition) -> Self {
        ArtinConvention {
            orientation,
            composition,
        }
    }
}

/// The convention used throughout the crate.
pub const ARTIN_CONVENTION: ArtinConvention =
    ArtinConvention::new(Orientation::Standard, Composition::LeftmostFirst);

/// An endomorphism of the free group of rank `rank`, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeGroupEndo {
    rank: usize,
    images: Vec<FreeWord>,
}

impl FreeGroupEndo {
    pub fn identity(rank: usize) -> Self {
        FreeGroupEndo {
            rank,
            images: (1..=rank as u32).map(FreeWord::generator).collect(),
        }
    }

    pub fn from_images(images: Vec<FreeWord>) -> Result<Self> {
        let rank = images.len();
        if let Some(w) = images.iter().find(|w| w.max_generator() as usize > rank) {
            return Err(Error::IndexOutOfRange {
                index: w.max_generator() as i64,
                rank,
            });
        }
        Ok(FreeGroupEndo { rank, images })
    }

    /// Inner automorphism `x -> c x c^-1`.
    pub fn inner(rank: usize, c: &FreeWord) -> Self {
        FreeGroupEndo {
            rank,
            images: (1..=rank as u32)
                .map(|i| FreeWord::generator(i).conjugated_by(c))
                .collect(),
        }
    }

    /// The Artin automorphism of a braid under the crate convention.
    pub fn from_braid(b: &BraidWord) -> Self {
        Self::from_braid_with(b, ARTIN_CONVENTION)
    }

    pub fn from_braid_with(b: &BraidWord, conv: ArtinConvention) -> Self {
        let mut e = Self::identity(b.strands());
        // the composite is built by precomposition, so letters are consumed
        // starting from the one applied last
        let letters: Box<dyn Iterator<Item = &i32>> = match conv.composition {
            Composition::RightmostFirst => Box::new(b.letters().iter()),
            Composition::LeftmostFirst => Box::new(b.letters().iter().rev()),
        };
        for &l in letters {
            let standard_positive = match conv.orientation {
                Orientation::Standard => l > 0,
                Orientation::Mirror => l < 0,
            };
            e.precompose_sigma(l.unsigned_abs() as usize, standard_positive);
        }
        e
    }

    /// `self := self o sigma_i^(+-1)` (standard orientation).
    fn precompose_sigma(&mut self, i: usize, positive: bool) {
        let a = self.images[i - 1].clone();
        let b = self.images[i].clone();
        if positive {
            self.images[i - 1] = b.conjugated_by(&a);
            self.images[i] = a;
        } else {
            self.images[i - 1] = b.clone();
            self.images[i] = a.conjugated_by(&b.inverse());
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn image(&self, i: u32) -> &FreeWord {
        &self.images[i as usize - 1]
    }

    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord> {
        if w.max_generator() as usize > self.rank {
            return Err(Error::IndexOutOfRange {
                index: w.max_generator() as i64,
                rank: self.rank,
            });
        }
        Ok(w.substitute(&self.images))
    }

    /// `self o other`: apply `other` first.
    pub fn compose(&self, other: &FreeGroupEndo) -> FreeGroupEndo {
        assert_eq!(self.rank, other.rank);
        FreeGroupEndo {
            rank: self.rank,
            images: other.images.iter().map(|w| w.substitute(&self.images)).collect(),
        }
    }
}

/// Apply the Artin automorphism of `b` to `w`.
pub fn artin_action(b: &BraidWord, w: &FreeWord) -> Result<FreeWord> {
    FreeGroupEndo::from_braid(b).apply(w)
}

/// True iff both endomorphisms send every generator to the same reduced word.
pub fn endo_compare(e1: &FreeGroupEndo, e2: &FreeGroupEndo) -> bool {
    e1.rank == e2.rank && e1.images == e2.images
}

/// `A_{i,j} = (sigma_{j-1} ... sigma_{i+1}) sigma_i^2 (sigma_{i+1}^-1 ... sigma_{j-1}^-1)`.
pub fn pure_braid_generator(strands: usize, i: usize, j: usize) -> Result<BraidWord> {
    if !(1 <= i && i < j && j <= strands) {
        return Err(Error::InvalidBraid(format!(
            "A_{{{i},{j}}} needs 1 <= i < j <= {strands}"
        )));
    }
    let mut letters: Vec<i32> = ((i + 1)..j).rev().map(|k| k as i32).collect();
    letters.push(i as i32);
    letters.push(i as i32);
    letters.extend(((i + 1)..j).map(|k| -(k as i32)));
    BraidWord::new(strands, letters)
}

/// Full twist on the listed strands (increasing):
/// `A_{s1,s2} (A_{s1,s3} A_{s2,s3}) ... (A_{s1,sk} ... A_{s(k-1),sk})`.
pub fn full_twist_on(strands: usize, subset: &[usize]) -> Result<BraidWord> {
    let mut b = BraidWord::identity(strands);
    for (jj, &j) in subset.iter().enumerate() {
        for &i in &subset[..jj] {
            b = &b * &pure_braid_generator(strands, i, j)?;
        }
    }
    Ok(b)
}

/// `A_{[n]}`, the full twist on all strands.
pub fn full_twist(strands: usize) -> BraidWord {
    let all: Vec<usize> = (1..=strands).collect();
    full_twist_on(strands, &all).expect("valid strands")
}

/// The braids attached to the deleted monomial arrangement `A_p`, all on
/// `2p` strands.
#[derive(Clone, Debug)]
pub struct MonodromyBraids {
    pub p: usize,
    pub rho0: BraidWord,
    pub rho1: BraidWord,
    pub tau: BraidWord,
    pub z1: BraidWord,
    pub z2: BraidWord,
    /// `A_{1,2}^{(r)}` for `r = 1..=p`, at index `r - 1`.
    pub a12: Vec<BraidWord>,
    /// `tau Z1 tau^-1`.
    pub frak_z: BraidWord,
    /// `tau A_{1,2}^{(p)} tau^-1`.
    pub frak_a: BraidWord,
    /// `tau A_{1,2}^{(j)} tau^-1` for `j = 1..p-1`, at index `j - 1`.
    pub frak_aj: Vec<BraidWord>,
}

/// `tau = (s2 s4 ... s_{2p-2})(s3 s5 ... s_{2p-3}) ... (s_{p-1} s_{p+1})(s_p)`:
/// block `j` (for `j = 1..p-1`) is `s_{j+1} s_{j+3} ... s_{2p-1-j}`.
fn tau_braid(p: usize) -> BraidWord {
    let n = 2 * p;
    let mut letters = Vec::new();
    for j in 1..p {
        let mut k = j + 1;
        while k < n - j {
            letters.push(k as i32);
            k += 2;
        }
    }
    BraidWord::new(n, letters).expect("tau letters in range")
}

impl MonodromyBraids {
    pub fn new(p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidBraid(format!("p = {p} must be at least 2")));
        }
        let n = 2 * p;
        let rho0 = BraidWord::new(n, (1..p).rev().map(|k| k as i32).collect())?;
        let tau = tau_braid(p);
        let odd = BraidWord::new(n, (1..n).step_by(2).map(|k| k as i32).collect())?;
        let rho1 = &(&tau.inverse() * &odd) * &tau;
        let z1 = rho0.pow(p as i64);
        let z2 = z1.conjugated_by(&rho1);
        let a12: Vec<BraidWord> = (1..=p)
            .map(|r| {
                let shift = r as i64 - p as i64;
                &(&rho0.pow(shift) * &rho1.pow(2)) * &rho0.pow(-shift)
            })
            .collect();
        let frak_z = z1.conjugated_by(&tau);
        let frak_a = a12[p - 1].conjugated_by(&tau);
        let frak_aj = a12[..p - 1].iter().map(|b| b.conjugated_by(&tau)).collect();
        Ok(MonodromyBraids {
            p,
            rho0,
            rho1,
            tau,
            z1,
            z2,
            a12,
            frak_z,
            frak_a,
            frak_aj,
        })
    }

    /// `A_{1,2} A_{3,4} ... A_{2p-1,2p}`.
    pub fn paired_twists(&self) -> BraidWord {
        let n = 2 * self.p;
        let mut b = BraidWord::identity(n);
        for i in (1..n).step_by(2) {
            b = &b * &pure_braid_generator(n, i, i + 1).expect("valid");
        }
        b
    }

    /// `A_{O[p]}`: the full twist on the odd strands `1, 3, ..., 2p-1`.
    pub fn odd_full_twist(&self) -> BraidWord {
        let odd: Vec<usize> = (1..2 * self.p).step_by(2).collect();
        full_twist_on(2 * self.p, &odd).expect("valid")
    }
}

/// A change of free basis: new generators written in the old ones and back.
#[derive(Clone, Debug)]
pub struct BasisChange {
    new_in_old: Vec<FreeWord>,
    old_in_new: Vec<FreeWord>,
}

impl BasisChange {
    pub fn new(new_in_old: Vec<FreeWord>, old_in_new: Vec<FreeWord>) -> Self {
        BasisChange {
            new_in_old,
            old_in_new,
        }
    }

    /// `u_r = y_1 ... y_r`, `v_r = y_{p+r}` on `F_{2p}`; new order `u_1..u_p, v_1..v_p`.
    pub fn prefix_products(p: usize) -> Self {
        let mut new_in_old = Vec::with_capacity(2 * p);
        let mut old_in_new = vec![FreeWord::identity(); 2 * p];
        for r in 1..=p as u32 {
            new_in_old.push(FreeWord::from_syllables((1..=r).map(|k| (k, 1))));
            // y_r = u_{r-1}^-1 u_r
            let mut y = FreeWord::identity();
            if r > 1 {
                y.push(r - 1, -1);
            }
            y.push(r, 1);
            old_in_new[r as usize - 1] = y;
        }
        for r in 1..=p as u32 {
            new_in_old.push(FreeWord::generator(p as u32 + r));
            old_in_new[(p as u32 + r) as usize - 1] = FreeWord::generator(p as u32 + r);
        }
        BasisChange::new(new_in_old, old_in_new)
    }

    /// `u_r = y_1 ... y_{2r}`, `v_r = y_{2r-1}` on `F_{2p}`; new order `u_1..u_p, v_1..v_p`.
    pub fn paired_prefix_products(p: usize) -> Self {
        let pu = p as u32;
        let mut new_in_old = Vec::with_capacity(2 * p);
        let mut old_in_new = vec![FreeWord::identity(); 2 * p];
        for r in 1..=pu {
            new_in_old.push(FreeWord::from_syllables((1..=2 * r).map(|k| (k, 1))));
        }
        for r in 1..=pu {
            new_in_old.push(FreeWord::generator(2 * r - 1));
            // y_{2r-1} = v_r, y_{2r} = v_r^-1 u_{r-1}^-1 u_r
            old_in_new[(2 * r - 1) as usize - 1] = FreeWord::generator(pu + r);
            let mut y = FreeWord::power(pu + r, -1);
            if r > 1 {
                y.push(r - 1, -1);
            }
            y.push(r, 1);
            old_in_new[(2 * r) as usize - 1] = y;
        }
        BasisChange::new(new_in_old, old_in_new)
    }

    pub fn rank(&self) -> usize {
        self.new_in_old.len()
    }

    pub fn to_new(&self, w_old: &FreeWord) -> FreeWord {
        w_old.substitute(&self.old_in_new)
    }

    pub fn to_old(&self, w_new: &FreeWord) -> FreeWord {
        w_new.substitute(&self.new_in_old)
    }

    pub fn new_in_old(&self) -> &[FreeWord] {
        &self.new_in_old
    }

    /// The endomorphism `e` (given on old generators) rewritten on new generators.
    pub fn transport(&self, e: &FreeGroupEndo) -> FreeGroupEndo {
        let images = self
            .new_in_old
            .iter()
            .map(|w| self.to_new(&w.substitute(e.images())))
            .collect();
        FreeGroupEndo {
            rank: self.rank(),
            images,
        }
    }
}

/// The closed-form action of `frak_z`, `frak_a` on `u_r, v_r` coordinates:
/// `z(u_r) = u_r [v_{r+1}..v_p, v_1..v_r]`, `z(v_r) = V v_r V^-1`,
/// `a(u_r) = u_r`, `a(v_r) = u_{r-1}^-1 u_r v_r u_r^-1 u_{r-1}`.
pub fn useful_relation_actions(p: usize) -> (FreeGroupEndo, FreeGroupEndo) {
    let pu = p as u32;
    let v = |r: u32| FreeWord::generator(pu + r);
    let u = |r: u32| {
        if r == 0 {
            FreeWord::identity()
        } else {
            FreeWord::generator(r)
        }
    };
    let v_range = |a: u32, b: u32| FreeWord::from_syllables((a..=b).map(|r| (pu + r, 1)));
    let big_v = v_range(1, pu);
    let mut z_images = Vec::with_capacity(2 * p);
    let mut a_images = Vec::with_capacity(2 * p);
    for r in 1..=pu {
        let comm = FreeWord::commutator(&v_range(r + 1, pu), &v_range(1, r));
        z_images.push(&u(r) * &comm);
        a_images.push(u(r));
    }
    for r in 1..=pu {
        z_images.push(v(r).conjugated_by(&big_v));
        let c = &u(r - 1).inverse() * &u(r);
        a_images.push(v(r).conjugated_by(&c));
    }
    (
        FreeGroupEndo::from_images(z_images).expect("valid"),
        FreeGroupEndo::from_images(a_images).expect("valid"),
    )
}

/// The closed-form identities for `A_p`, each checked as an equality of free
/// group automorphisms under [`ARTIN_CONVENTION`]. The coordinate formulas
/// for `frak_z`, `frak_a` are included for odd `p` only.
pub fn closed_form_identities(p: usize) -> Result<Vec<(String, bool)>> {
    let b = MonodromyBraids::new(p)?;
    let e = FreeGroupEndo::from_braid;
    let mut out = vec![
        (
            "con_tau(Z1) = A_O".to_string(),
            endo_compare(&e(&b.frak_z), &e(&b.odd_full_twist())),
        ),
        (
            format!(
                "con_tau(A12^({p})) = {}",
                (1..2 * p)
                    .step_by(2)
                    .map(|i| format!("A{i},{}", i + 1))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            endo_compare(&e(&b.frak_a), &e(&b.paired_twists())),
        ),
    ];
    if p % 2 == 1 {
        let change = BasisChange::paired_prefix_products(p);
        let (z, a) = useful_relation_actions(p);
        out.push((
            "z action on u, v".to_string(),
            endo_compare(&change.transport(&e(&b.frak_z)), &z),
        ));
        out.push((
            "a action on u, v".to_string(),
            endo_compare(&change.transport(&e(&b.frak_a)), &a),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(i: u32) -> FreeWord {
        FreeWord::generator(i)
    }

    #[test]
    fn free_reduction() {
        let w = FreeWord::from_letters(&[1, 2, -2, -1, 3]);
        assert_eq!(w, y(3));
        let w = FreeWord::from_letters(&[1, 1, 1, -1]);
        assert_eq!(w.syllables(), &[(1, 2)]);
        assert!((&w * &w.inverse()).is_identity());
        assert_eq!(FreeWord::from_letters(&[2, 2, -1]).letters(), vec![2, 2, -1]);
    }

    #[test]
    fn sigma_one_on_two_strands() {
        let s1 = BraidWord::sigma(2, 1);
        assert_eq!(
            artin_action(&s1, &y(1)).unwrap(),
            FreeWord::from_letters(&[1, 2, -1])
        );
        assert_eq!(artin_action(&s1, &y(2)).unwrap(), y(1));
    }

    #[test]
    fn empty_braid_is_identity() {
        let w = FreeWord::from_letters(&[3, -1, 2, 2]);
        assert_eq!(artin_action(&BraidWord::identity(3), &w).unwrap(), w);
    }

    #[test]
    fn index_out_of_range() {
        let b = BraidWord::sigma(2, 1);
        assert!(matches!(
            artin_action(&b, &y(3)),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
    }

    #[test]
    fn full_twist_on_four_strands_is_inner() {
        let prod = FreeWord::from_letters(&[1, 2, 3, 4]);
        let tw = FreeGroupEndo::from_braid(&full_twist(4));
        for i in 1..=4 {
            assert_eq!(tw.image(i), &y(i).conjugated_by(&prod));
        }
        // the same holds for every n
        for n in 2..=7u32 {
            let prod = FreeWord::from_syllables((1..=n).map(|k| (k, 1)));
            assert!(endo_compare(
                &FreeGroupEndo::from_braid(&full_twist(n as usize)),
                &FreeGroupEndo::inner(n as usize, &prod)
            ));
        }
    }

    #[test]
    fn pure_generator_examples() {
        assert_eq!(pure_braid_generator(2, 1, 2).unwrap().letters(), &[1, 1]);
        assert_eq!(pure_braid_generator(4, 1, 3).unwrap().letters(), &[2, 1, 1, -2]);
        assert!(pure_braid_generator(4, 3, 3).is_err());
        assert!(pure_braid_generator(4, 2, 5).is_err());
        for j in 2..=6 {
            for i in 1..j {
                assert!(pure_braid_generator(6, i, j).unwrap().is_pure());
            }
        }
    }

    #[test]
    fn small_monodromy_braids() {
        let b = MonodromyBraids::new(2).unwrap();
        assert_eq!(b.rho0.letters(), &[1]);
        assert_eq!(b.z1.letters(), &[1, 1]);
        assert_eq!(b.tau.letters(), &[2]);
        let b3 = MonodromyBraids::new(3).unwrap();
        assert_eq!(b3.tau.letters(), &[2, 4, 3]);
        assert_eq!(b3.rho0.letters(), &[2, 1]);
        let b5 = MonodromyBraids::new(5).unwrap();
        assert_eq!(b5.tau.letters(), &[2, 4, 6, 8, 3, 5, 7, 4, 6, 5]);
    }

    #[test]
    fn monodromy_braids_are_pure() {
        for p in [2, 3, 5] {
            let b = MonodromyBraids::new(p).unwrap();
            assert!(b.z1.is_pure() && b.z2.is_pure());
            assert!(b.a12.iter().all(BraidWord::is_pure));
            assert!(b.frak_z.is_pure() && b.frak_a.is_pure());
        }
    }

    /// The closed-form braid identities hold as automorphisms under every
    /// convention (each is a representation of the braid group).
    #[test]
    fn combing_identities() {
        for p in [2usize, 3, 5] {
            let b = MonodromyBraids::new(p).unwrap();
            for conv in ArtinConvention::ALL {
                let e = |w: &BraidWord| FreeGroupEndo::from_braid_with(w, conv);
                assert!(endo_compare(&e(&b.frak_a), &e(&b.paired_twists())), "p={p}");
                assert!(endo_compare(&e(&b.frak_z), &e(&b.odd_full_twist())), "p={p}");
            }
        }
    }

    #[test]
    fn z1_leading_factor_for_p3() {
        // tau Z1 tau^-1 = A_{1,3} (A_{1,5} A_{3,5}) for p = 3
        let b = MonodromyBraids::new(3).unwrap();
        let expected = &pure_braid_generator(6, 1, 3).unwrap()
            * &(&pure_braid_generator(6, 1, 5).unwrap() * &pure_braid_generator(6, 3, 5).unwrap());
        assert!(endo_compare(
            &FreeGroupEndo::from_braid(&b.frak_z),
            &FreeGroupEndo::from_braid(&expected)
        ));
    }

    fn zact_holds(p: usize, conv: ArtinConvention) -> bool {
        let b = MonodromyBraids::new(p).unwrap();
        let change = BasisChange::paired_prefix_products(p);
        let (z, a) = useful_relation_actions(p);
        let z_got = change.transport(&FreeGroupEndo::from_braid_with(&b.frak_z, conv));
        let a_got = change.transport(&FreeGroupEndo::from_braid_with(&b.frak_a, conv));
        endo_compare(&z_got, &z) && endo_compare(&a_got, &a)
    }

    #[test]
    fn exactly_one_convention_reproduces_zact() {
        for p in [3usize, 5, 7] {
            let passing: Vec<ArtinConvention> = ArtinConvention::ALL
                .into_iter()
                .filter(|&c| zact_holds(p, c))
                .collect();
            assert_eq!(passing, vec![ARTIN_CONVENTION], "p = {p}");
        }
    }

    #[test]
    fn z1_acts_by_conjugation_in_prefix_coordinates() {
        // Z1(u_i) = u_p u_i u_p^-1, Z1(v_j) = v_j
        for p in [2usize, 3, 5] {
            let b = MonodromyBraids::new(p).unwrap();
            let change = BasisChange::prefix_products(p);
            let e = change.transport(&FreeGroupEndo::from_braid(&b.z1));
            let up = y(p as u32);
            for i in 1..=p as u32 {
                assert_eq!(e.image(i), &y(i).conjugated_by(&up));
                assert_eq!(e.image(p as u32 + i), &y(p as u32 + i));
            }
        }
    }

    #[test]
    fn basis_changes_roundtrip() {
        for p in [2usize, 3, 5] {
            for change in [BasisChange::prefix_products(p), BasisChange::paired_prefix_products(p)] {
                for i in 1..=2 * p as u32 {
                    assert_eq!(change.to_new(&change.to_old(&y(i))), y(i));
                    assert_eq!(change.to_old(&change.to_new(&y(i))), y(i));
                }
            }
        }
    }

    #[test]
    fn braid_text_roundtrip() {
        let b = BraidWord::new(4, vec![1, -3, 2]).unwrap();
        let s = b.to_string();
        assert_eq!(s, "4: 1 -3 2");
        assert_eq!(s.parse::<BraidWord>().unwrap(), b);
        assert!("1 2".parse::<BraidWord>().is_err());
    }

    fn braid_strategy(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1..n as i32, any::<bool>()), 0..max_len).prop_map(move |v| {
            BraidWord::new(n, v.into_iter().map(|(i, s)| if s { i } else { -i }).collect()).unwrap()
        })
    }

    fn word_strategy(n: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((1..=n as i64, any::<bool>()), 0..max_len).prop_map(|v| {
            FreeWord::from_letters(&v.into_iter().map(|(i, s)| if s { i } else { -i }).collect::<Vec<_>>())
        })
    }

    proptest! {
        #[test]
        fn action_is_a_right_action(b1 in braid_strategy(5, 12), b2 in braid_strategy(5, 12), w in word_strategy(5, 10)) {
            let lhs = artin_action(&(&b1 * &b2), &w).unwrap();
            let rhs = artin_action(&b2, &artin_action(&b1, &w).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_of_generators_is_fixed(b in braid_strategy(6, 20)) {
            let prod = FreeWord::from_syllables((1..=6).map(|k| (k, 1)));
            prop_assert_eq!(artin_action(&b, &prod).unwrap(), prod);
        }

        #[test]
        fn inverse_braid_inverts(b in braid_strategy(5, 15), w in word_strategy(5, 10)) {
            let back = artin_action(&b.inverse(), &artin_action(&b, &w).unwrap()).unwrap();
            prop_assert_eq!(back, w);
        }
    }
}
