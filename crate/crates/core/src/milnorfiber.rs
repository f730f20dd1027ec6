//! Rank-one characters, depth, characteristic-variety points, and the first
//! homology of Milnor fibers of the multi-arrangements `A_p`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactla::{cover_homology, rank_over_field, AbelianGroup, DeckAction, IntMatrix};
use crate::exactnum::{
    divisors, gcd, modulo, prime_factors, totient, AnyField, Field, FieldScalar, Rationals,
};
use crate::foxcalc::{alexander_matrix, LaurentMatrix, RingMapSpec};
use crate::grouppres::{
    build_alternate_deconed_presentation, build_cone_presentation, build_deconed_presentation,
    default_multiplicities, hyperplane_labels, ArrangementSpec, GroupPresentation,
};
use crate::{Error, Result};

/// A character with values in the `order`-th roots of unity of `field`:
/// label `i` goes to `w^exponents[i]` for the field's primitive root `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    labels: Vec<String>,
    order: u64,
    exponents: Vec<i64>,
    field: AnyField,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CharacterFile {
    order: u64,
    characteristic: u64,
    labels: Vec<String>,
    exponents: Vec<i64>,
}

impl Character {
    /// Exponents are reduced mod `order`; the field must contain a root of
    /// exact order `order`.
    pub fn new(labels: Vec<String>, order: u64, exponents: &[i64], field: AnyField) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidCharacter("order must be positive".into()));
        }
        if labels.len() != exponents.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels but {} exponents",
                labels.len(),
                exponents.len()
            )));
        }
        let q = field.characteristic();
        if q != 0 && order % q == 0 {
            return Err(Error::CharacteristicDividesOrder { characteristic: q, order });
        }
        if field.root_of_unity(order).is_none() {
            return Err(Error::NoRootOfUnity { characteristic: q, order });
        }
        Ok(Character {
            labels,
            order,
            exponents: exponents.iter().map(|&e| modulo(e, order) as i64).collect(),
            field,
        })
    }

    /// Over `Q(zeta_order)` (characteristic 0) or the smallest `F_{q^m}` with
    /// the needed roots.
    pub fn over(labels: Vec<String>, order: u64, exponents: &[i64], characteristic: u64) -> Result<Self> {
        let q = characteristic;
        if q != 0 && order % q == 0 {
            return Err(Error::CharacteristicDividesOrder { characteristic: q, order });
        }
        let field = AnyField::containing_roots(characteristic, order)?;
        Self::new(labels, order, exponents, field)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn field(&self) -> &AnyField {
        &self.field
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `tau(t) = 1`: the product of all values is one.
    pub fn product_is_trivial(&self) -> bool {
        modulo(self.exponents.iter().sum(), self.order) == 0
    }

    /// Multiplicative order of the character.
    pub fn exact_order(&self) -> u64 {
        let g = self
            .exponents
            .iter()
            .fold(self.order, |acc, &e| gcd(acc, e as u64));
        self.order / g
    }

    /// `(k, e)` with `k` the exact order and value `i` equal to
    /// `zeta_k^(e_i)` for `zeta_k = w^(order / k)`.
    pub fn reduced(&self) -> (u64, Vec<i64>) {
        let k = self.exact_order();
        let step = (self.order / k) as i64;
        (k, self.exponents.iter().map(|&e| e / step).collect())
    }

    pub fn power(&self, m: i64) -> Character {
        Character {
            labels: self.labels.clone(),
            order: self.order,
            exponents: self
                .exponents
                .iter()
                .map(|&e| modulo(e * m, self.order) as i64)
                .collect(),
            field: self.field.clone(),
        }
    }

    /// The image under the field automorphism `w -> w^j`.
    pub fn galois_conjugate(&self, j: i64) -> Result<Character> {
        if gcd(modulo(j, self.order), self.order) != 1 {
            return Err(Error::InvalidCharacter(format!(
                "{j} is not a unit mod {}",
                self.order
            )));
        }
        Ok(self.power(j))
    }

    pub fn values(&self) -> Vec<FieldScalar> {
        let w = self.field.root_of_unity(self.order).expect("checked at construction");
        self.exponents
            .iter()
            .map(|&e| w.pow(e).expect("roots are units"))
            .collect()
    }

    /// The character on `names`, where `names[i]` takes the value of label
    /// `sources[i]`.
    pub fn pull_back(&self, names: Vec<String>, sources: &[usize]) -> Result<Character> {
        let exps = sources
            .iter()
            .map(|&s| {
                self.exponents.get(s).copied().ok_or(Error::IndexOutOfRange {
                    index: s as i64,
                    rank: self.exponents.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Character::new(names, self.order, &exps, self.field.clone())
    }

    /// Exponents in the order of `names`.
    pub fn exponents_for(&self, names: &[String]) -> Result<Vec<i64>> {
        names
            .iter()
            .map(|n| {
                self.labels
                    .iter()
                    .position(|l| l == n)
                    .map(|i| self.exponents[i])
                    .ok_or_else(|| Error::UnassignedVariable(n.clone()))
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let file = CharacterFile {
            order: self.order,
            characteristic: self.field.characteristic(),
            labels: self.labels.clone(),
            exponents: self.exponents.clone(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: CharacterFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Character::over(f.labels, f.order, &f.exponents, f.characteristic)
    }
}

fn typed_values<T>(values: &[FieldScalar], pick: impl Fn(&FieldScalar) -> Option<T>) -> Vec<T> {
    values
        .iter()
        .map(|v| pick(v).expect("fields checked"))
        .collect()
}

fn rank_at_values(am: &LaurentMatrix, values: &[FieldScalar]) -> Result<usize> {
    let Some(first) = values.first() else {
        return Ok(0);
    };
    let field = first.field();
    if let Some(bad) = values.iter().find(|v| v.field() != field) {
        return Err(Error::FieldMismatch(field.describe(), bad.field().describe()));
    }
    Ok(match &field {
        AnyField::Rational => {
            let vals = typed_values(values, |v| match v {
                FieldScalar::Rational(x) => Some(x.clone()),
                _ => None,
            });
            rank_over_field(&Rationals, &am.evaluate(&Rationals, &vals)?)
        }
        AnyField::Cyclotomic(f) => {
            let vals = typed_values(values, |v| match v {
                FieldScalar::Cyclotomic(x) => Some(x.clone()),
                _ => None,
            });
            rank_over_field(f, &am.evaluate(f, &vals)?)
        }
        AnyField::Finite(f) => {
            let vals = typed_values(values, |v| match v {
                FieldScalar::Finite(x) => Some(x.clone()),
                _ => None,
            });
            rank_over_field(f, &am.evaluate(f, &vals)?)
        }
    })
}

fn rank_at_roots(am: &LaurentMatrix, field: &AnyField, order: u64, exps: &[i64]) -> Result<usize> {
    Ok(match field {
        AnyField::Rational => rank_over_field(&Rationals, &am.evaluate_at_roots(&Rationals, order, exps)?),
        AnyField::Cyclotomic(f) => rank_over_field(f, &am.evaluate_at_roots(f, order, exps)?),
        AnyField::Finite(f) => rank_over_field(f, &am.evaluate_at_roots(f, order, exps)?),
    })
}

/// A presentation with its Alexander matrix, for repeated depth queries.
#[derive(Clone, Debug)]
pub struct DepthEvaluator {
    presentation: GroupPresentation,
    alexander: LaurentMatrix,
}

impl DepthEvaluator {
    pub fn new(pr: &GroupPresentation) -> Self {
        DepthEvaluator {
            presentation: pr.clone(),
            alexander: alexander_matrix(pr),
        }
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    fn corank(&self, rank: usize, trivial: bool) -> usize {
        let g = self.presentation.num_generators();
        if trivial {
            g - rank
        } else {
            g - 1 - rank
        }
    }

    /// `dim H1(G; K_ch)`; the character's labels must cover the generators.
    pub fn depth(&self, ch: &Character) -> Result<usize> {
        let exps = ch.exponents_for(self.presentation.generators())?;
        let rank = rank_at_roots(&self.alexander, ch.field(), ch.order(), &exps)?;
        Ok(self.corank(rank, exps.iter().all(|&e| e == 0)))
    }

    /// Depth at explicit generator values (all in one field, all nonzero).
    pub fn depth_at(&self, values: &[FieldScalar]) -> Result<usize> {
        let g = self.presentation.num_generators();
        if values.len() != g {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {g} generators",
                values.len()
            )));
        }
        if values.iter().any(FieldScalar::is_zero) {
            return Err(Error::InvalidCharacter("character values must be nonzero".into()));
        }
        let rank = rank_at_values(&self.alexander, values)?;
        Ok(self.corank(rank, values.iter().all(FieldScalar::is_one)))
    }

    /// The Alexander matrix evaluated at `ch`.
    pub fn specialized(&self, ch: &Character) -> Result<Vec<Vec<FieldScalar>>> {
        let exps = ch.exponents_for(self.presentation.generators())?;
        let (am, order) = (&self.alexander, ch.order());
        Ok(match ch.field() {
            AnyField::Rational => wrap(am.evaluate_at_roots(&Rationals, order, &exps)?, FieldScalar::Rational),
            AnyField::Cyclotomic(f) => wrap(am.evaluate_at_roots(f, order, &exps)?, FieldScalar::Cyclotomic),
            AnyField::Finite(f) => wrap(am.evaluate_at_roots(f, order, &exps)?, FieldScalar::Finite),
        })
    }
}

fn wrap<T>(m: Vec<Vec<T>>, f: impl Fn(T) -> FieldScalar + Copy) -> Vec<Vec<FieldScalar>> {
    m.into_iter().map(|r| r.into_iter().map(f).collect()).collect()
}

/// First-degree depth of `ch` with respect to `pr`: `dim H1(G; K_ch)`.
pub fn depth(pr: &GroupPresentation, ch: &Character) -> Result<usize> {
    DepthEvaluator::new(pr).depth(ch)
}

/// `lambda_a` on the generators of the deconed presentation, as exponents of
/// the deck generator `g` of `Z_N`.
pub fn deconed_lambda_exponents(spec: &ArrangementSpec) -> Vec<i64> {
    spec.deconed_generator_hyperplanes()
        .into_iter()
        .map(|h| spec.multiplicities()[h] as i64)
        .collect()
}

/// `lambda_a` on the generators `g1, g12:r, u_r, v_r` of the alternate
/// presentation (odd `p`, all strand multiplicities equal).
pub fn alternate_lambda_exponents(spec: &ArrangementSpec) -> Result<Vec<i64>> {
    let p = spec.p();
    let strands: Vec<u64> = (1..=2 * p).map(|k| spec.multiplicities()[spec.strand_hyperplane(k)]).collect();
    if strands.iter().any(|&m| m != strands[0]) {
        return Err(Error::Unsupported(
            "the alternate presentation needs equal multiplicities on H13 and H23".into(),
        ));
    }
    let s = strands[0] as i64;
    let mut out = vec![spec.multiplicities()[0] as i64];
    out.extend((1..=p).map(|r| spec.multiplicities()[1 + r] as i64));
    out.extend((1..=p as i64).map(|r| 2 * r * s));
    out.extend(std::iter::repeat(s).take(p));
    Ok(out)
}

/// `lambda_a^(N/k)` on the deconed generators of `spec`.
pub fn lambda_power(spec: &ArrangementSpec, k: u64, field: &AnyField) -> Result<Character> {
    let n = spec.total_degree();
    if k == 0 || n % k != 0 {
        return Err(Error::InvalidCharacter(format!("{k} does not divide N = {n}")));
    }
    let pr_names = build_deconed_presentation(spec.p())?.generators().to_vec();
    let base = Character::new(pr_names, n, &deconed_lambda_exponents(spec), field.clone())?;
    Ok(base.power((n / k) as i64))
}

/// The character `t(k)` of the default multiplicities: `g1 -> t^(a1)`,
/// `g12:r -> t^(a_12:r)`, `y_i -> t^(a_i)` with `t = zeta_N^(N/k)`.
pub fn character_tk(p: usize, k: u64, field: &AnyField) -> Result<Character> {
    if k == 1 {
        return Err(Error::InvalidCharacter("k must differ from 1".into()));
    }
    let spec = ArrangementSpec::new(p, default_multiplicities(p)?)?;
    lambda_power(&spec, k, field)
}

/// The two sides of depth additivity for a cone character with `tau = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AdditivityCheck {
    pub cone_depth: usize,
    pub deconed_depth: usize,
    /// `dim H0(U; K_ch)`: 1 for the trivial character, else 0.
    pub h0: usize,
}

impl AdditivityCheck {
    pub fn holds(&self) -> bool {
        self.cone_depth == self.deconed_depth + self.h0
    }
}

/// Cone and deconed presentations of `A_p`, for comparing depths.
#[derive(Clone, Debug)]
pub struct ConeDecone {
    spec: ArrangementSpec,
    cone: DepthEvaluator,
    decone: DepthEvaluator,
}

impl ConeDecone {
    pub fn new(p: usize) -> Result<Self> {
        Ok(ConeDecone {
            spec: ArrangementSpec::new(p, vec![1; 3 * p + 2])?,
            cone: DepthEvaluator::new(&build_cone_presentation(p)?),
            decone: DepthEvaluator::new(&build_deconed_presentation(p)?),
        })
    }

    fn check_hyperplane_count(&self, n: usize) -> Result<()> {
        if n != self.spec.n() {
            return Err(Error::DimensionMismatch(format!(
                "{n} coordinates for {} hyperplanes",
                self.spec.n()
            )));
        }
        Ok(())
    }

    /// `ch` is indexed by hyperplanes `H1, H2, H12:r, H13:r, H23:r`.
    pub fn additivity(&self, ch: &Character) -> Result<AdditivityCheck> {
        self.check_hyperplane_count(ch.exponents().len())?;
        if !ch.product_is_trivial() {
            return Err(Error::InvalidCharacter(
                "the product of the values is not 1; the cone depth vanishes there".into(),
            ));
        }
        let on_cone = ch.pull_back(
            self.cone.presentation().generators().to_vec(),
            &self.spec.cone_generator_hyperplanes(),
        )?;
        let on_decone = ch.pull_back(
            self.decone.presentation().generators().to_vec(),
            &self.spec.deconed_generator_hyperplanes(),
        )?;
        Ok(AdditivityCheck {
            cone_depth: self.cone.depth(&on_cone)?,
            deconed_depth: self.decone.depth(&on_decone)?,
            h0: usize::from(ch.is_trivial()),
        })
    }

    /// Depth of a point of the character torus on the cone presentation.
    pub fn cone_depth_at(&self, point: &CVPoint) -> Result<usize> {
        self.check_hyperplane_count(point.coordinates.len())?;
        let vals: Vec<FieldScalar> = self
            .spec
            .cone_generator_hyperplanes()
            .into_iter()
            .map(|h| point.coordinates[h].clone())
            .collect();
        self.cone.depth_at(&vals)
    }

    /// Depth of the point with the `H2` coordinate forgotten.
    pub fn deconed_depth_at(&self, point: &CVPoint) -> Result<usize> {
        self.check_hyperplane_count(point.coordinates.len())?;
        let vals: Vec<FieldScalar> = self
            .spec
            .deconed_generator_hyperplanes()
            .into_iter()
            .map(|h| point.coordinates[h].clone())
            .collect();
        self.decone.depth_at(&vals)
    }
}

/// Compares the depth of `ch` (indexed by the `3p + 2` hyperplanes, with
/// `tau(ch) = 1`) on the cone with the deconed depth plus `dim H0`.
pub fn depth_additivity_check(p: usize, ch: &Character) -> Result<AdditivityCheck> {
    ConeDecone::new(p)?.additivity(ch)
}

/// A point of `(K^x)^n` in hyperplane order `z1, z2, z12:r, z13:r, z23:r`.
#[derive(Clone, Debug, PartialEq)]
pub struct CVPoint {
    pub p: usize,
    pub coordinates: Vec<FieldScalar>,
}

impl CVPoint {
    pub fn new(p: usize, coordinates: Vec<FieldScalar>) -> Result<Self> {
        if coordinates.len() != 3 * p + 2 {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates, expected {}",
                coordinates.len(),
                3 * p + 2
            )));
        }
        Ok(CVPoint { p, coordinates })
    }

    /// `(a^p, b^p, c.., b.., a..)`, the common shape of `C_i` and `T`.
    fn shaped(p: usize, a: &FieldScalar, b: &FieldScalar, c: &FieldScalar) -> Result<Self> {
        let mut coords = vec![a.pow(p as i64)?, b.pow(p as i64)?];
        for x in [c, b, a] {
            coords.extend(std::iter::repeat(x.clone()).take(p));
        }
        CVPoint::new(p, coords)
    }

    /// Entrywise product.
    pub fn translate(&self, other: &CVPoint) -> Result<CVPoint> {
        let coords = self
            .coordinates
            .iter()
            .zip(&other.coordinates)
            .map(|(a, b)| a.try_mul(b))
            .collect::<Result<Vec<_>>>()?;
        CVPoint::new(self.p, coords)
    }

    pub fn product(&self) -> Result<FieldScalar> {
        let one = self.coordinates[0].field().one();
        self.coordinates.iter().try_fold(one, |acc, x| acc.try_mul(x))
    }

    pub fn labels(&self) -> Vec<String> {
        hyperplane_labels(self.p)
    }
}

fn primitive_pth_root(p: usize, field: &AnyField) -> Result<FieldScalar> {
    let q = field.characteristic();
    if q == p as u64 {
        return Err(Error::Unsupported(format!(
            "in characteristic {p} the component C_i is a subtorus through 1, not a translated torus"
        )));
    }
    field.root_of_unity(p as u64).ok_or(Error::NoRootOfUnity {
        characteristic: q,
        order: p as u64,
    })
}

/// The point `(u^p, v^p, w.., v.., u..)` of `C_i`, with `w` the `i`-th
/// power of the field's primitive `p`-th root and `v = (u w)^-1`.
pub fn cv_component_point(p: usize, i: usize, u: &FieldScalar) -> Result<CVPoint> {
    if i == 0 || i >= p {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            rank: p - 1,
        });
    }
    let w = primitive_pth_root(p, &u.field())?.pow(i as i64)?;
    let v = u.try_mul(&w)?.try_inv()?;
    CVPoint::shaped(p, u, &v, &w)
}

/// The point `(u^p, v^p, 1.., v.., u..)` of the subtorus `T`, `v = u^-1`.
pub fn torus_point(p: usize, u: &FieldScalar) -> Result<CVPoint> {
    let v = u.try_inv()?;
    CVPoint::shaped(p, u, &v, &u.field().one())
}

/// The order-`p` translation `s_i = (1, 1, w.., w^-1.., 1..)`, `w` the
/// `i`-th power of the primitive `p`-th root of `field`.
pub fn translation_point(p: usize, i: usize, field: &AnyField) -> Result<CVPoint> {
    let w = primitive_pth_root(p, field)?.pow(i as i64)?;
    let one = field.one();
    let mut coords = vec![one.clone(), one.clone()];
    coords.extend(std::iter::repeat(w.clone()).take(p));
    coords.extend(std::iter::repeat(w.try_inv()?).take(p));
    coords.extend(std::iter::repeat(one).take(p));
    CVPoint::new(p, coords)
}

/// Multiplicities `a` with `s = t^(N/k)`, `N = sum a`, `k` the order of
/// `s` and `t_i = xi^(a_i)` for `xi^(N/k) = zeta_k`. Each `a_i` lies in
/// `1..=k`, except that `a_1` moves to `k+1..=2k` when the field's
/// characteristic would otherwise divide `N`.
pub fn multiplicities_from_character(s: &Character) -> Result<Vec<u64>> {
    if !s.product_is_trivial() {
        return Err(Error::InvalidCharacter(
            "multiplicities need the product of the values to be 1".into(),
        ));
    }
    let (k, exps) = s.reduced();
    let mut a: Vec<u64> = exps
        .iter()
        .map(|&e| match modulo(e, k) {
            0 => k,
            r => r,
        })
        .collect();
    let q = s.field().characteristic();
    if q != 0 && a.iter().sum::<u64>() % q == 0 {
        match a.first_mut() {
            Some(a1) => *a1 += k,
            None => return Err(Error::InvalidCharacter("empty character".into())),
        }
    }
    debug_assert_eq!(a.iter().fold(0, |g, &x| gcd(g, x)), 1);
    Ok(a)
}

/// The character `lambda_a^(N/k)` of multiplicities `a` (`N = sum a`) in
/// reduced form, for comparison with [`Character::reduced`].
pub fn eigen_character_reduced(a: &[u64], k: u64) -> Result<Vec<i64>> {
    let n: u64 = a.iter().sum();
    if k == 0 || n % k != 0 {
        return Err(Error::InvalidCharacter(format!("{k} does not divide N = {n}")));
    }
    // t^(N/k) has exponents a_i N/k mod N, i.e. zeta_k^(a_i)
    Ok(a.iter().map(|&x| modulo(x as i64, k) as i64).collect())
}

/// One term `phi(k) * depth(lambda^(N/k))` of the dimension formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DepthTerm {
    pub k: u64,
    pub totient: u64,
    pub depth: usize,
}

/// `dim_K H1(F_a; K)` with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FieldDimension {
    pub field: String,
    pub characteristic: u64,
    pub order: u64,
    /// `n - 1 = b1(U)`.
    pub base: usize,
    pub terms: Vec<DepthTerm>,
    /// `dim H1(U; K_(t^j))` for `j = 0..N`; entry `j` is the `w^j`-eigenspace.
    pub eigenspaces: Vec<usize>,
    pub dimension: usize,
}

impl FieldDimension {
    pub fn eigenspace_total(&self) -> usize {
        self.eigenspaces.iter().sum()
    }

    /// Eigenspaces `j` and `j'` with `gcd(j, N) = gcd(j', N)` have equal
    /// dimension.
    pub fn galois_stable(&self) -> bool {
        let n = self.order;
        (0..n).all(|j| {
            (0..n).all(|i| gcd(i, n) != gcd(j, n) || self.eigenspaces[i as usize] == self.eigenspaces[j as usize])
        })
    }
}

/// `dim_K H1(F_a; K)` over `Q(zeta_N)` (characteristic 0) or the smallest
/// `F_{q^m}` containing the `N`-th roots of unity.
pub fn milnor_h1_field(spec: &ArrangementSpec, characteristic: u64) -> Result<FieldDimension> {
    let n = spec.total_degree();
    if characteristic != 0 && n % characteristic == 0 {
        return Err(Error::CharacteristicDividesOrder {
            characteristic,
            order: n,
        });
    }
    let field = AnyField::containing_roots(characteristic, n)?;
    let pr = build_deconed_presentation(spec.p())?;
    let eval = DepthEvaluator::new(&pr);
    let lambda = Character::new(pr.generators().to_vec(), n, &deconed_lambda_exponents(spec), field.clone())?;
    let base = spec.n() - 1;
    let eigenspaces = (0..n)
        .map(|j| eval.depth(&lambda.power(j as i64)))
        .collect::<Result<Vec<_>>>()?;
    let terms: Vec<DepthTerm> = divisors(n)
        .into_iter()
        .filter(|&k| k != 1)
        .map(|k| DepthTerm {
            k,
            totient: totient(k),
            depth: eigenspaces[(n / k) as usize],
        })
        .collect();
    let dimension = base + terms.iter().map(|t| t.totient as usize * t.depth).sum::<usize>();
    Ok(FieldDimension {
        field: field.describe(),
        characteristic,
        order: n,
        base,
        terms,
        eigenspaces,
        dimension,
    })
}

/// The deck action restricted to one primary part of the torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimaryMonodromy {
    pub prime: u64,
    pub moduli: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    /// Multiplicative order (it divides `N`).
    pub order: Option<u64>,
    pub is_negation: bool,
}

/// `H1(F_a; Z)` with the monodromy on its torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IntegralHomology {
    pub p: usize,
    pub order: u64,
    pub multiplicities: Vec<u64>,
    pub group: AbelianGroup,
    pub torsion_primes: Vec<u64>,
    /// Primes allowed to carry torsion for the default multiplicities:
    /// `p` and the primes dividing `2(2p+1)`. `None` for other multiplicities.
    pub envelope: Option<Vec<u64>>,
    pub monodromy: Vec<PrimaryMonodromy>,
    pub deck: DeckAction,
}

impl IntegralHomology {
    /// `dim_K H1(F_a; K)` implied by the integral group for a field of the
    /// given characteristic.
    pub fn field_dimension(&self, characteristic: u64) -> usize {
        let extra = if characteristic == 0 {
            0
        } else {
            let q = BigInt::from(characteristic);
            self.group.torsion.iter().filter(|d| (*d % &q).is_zero()).count()
        };
        self.group.free_rank + extra
    }

    pub fn primary(&self, q: u64) -> Option<&PrimaryMonodromy> {
        self.monodromy.iter().find(|m| m.prime == q)
    }
}

/// The torsion envelope for the default multiplicities of `A_p`.
pub fn torsion_envelope(p: usize) -> Vec<u64> {
    let mut set: BTreeSet<u64> = prime_factors(2 * (2 * p as u64 + 1)).into_iter().collect();
    set.insert(p as u64);
    set.into_iter().collect()
}

/// `H1(F_a; Z)` from the `N`-fold cover of the deconed complex. For the
/// default multiplicities, torsion at a prime outside [`torsion_envelope`]
/// is an error.
pub fn milnor_h1_integral(spec: &ArrangementSpec, progress: &mut dyn FnMut(&str)) -> Result<IntegralHomology> {
    let p = spec.p();
    let n = spec.total_degree();
    let pr = build_deconed_presentation(p)?;
    let lam = RingMapSpec::cyclic_group_ring(n, pr.generators(), &deconed_lambda_exponents(spec));
    let cover = cover_homology(&pr, &lam, progress)?;
    let torsion_primes = cover.group.torsion_primes();
    let is_default = default_multiplicities(p).is_ok_and(|d| d == spec.multiplicities());
    let envelope = is_default.then(|| torsion_envelope(p));
    if let Some(env) = &envelope {
        if torsion_primes.iter().any(|q| !env.contains(q)) {
            return Err(Error::TorsionOutsideEnvelope {
                envelope: env.clone(),
                found: torsion_primes,
            });
        }
    }
    let monodromy = torsion_primes
        .iter()
        .map(|&q| {
            let (moduli, matrix) = cover.deck.primary(q);
            PrimaryMonodromy {
                prime: q,
                moduli: moduli.iter().map(ToString::to_string).collect(),
                matrix: matrix
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect(),
                order: cover.deck.primary_order(q, n),
                is_negation: cover.deck.primary_is_negation(q),
            }
        })
        .collect();
    Ok(IntegralHomology {
        p,
        order: n,
        multiplicities: spec.multiplicities().to_vec(),
        group: cover.group,
        torsion_primes,
        envelope,
        monodromy,
        deck: cover.deck,
    })
}

/// The Alexander matrix of `pr` at a character with values `+-1`, as an
/// integer matrix; `parities[i]` odd sends generator `i` to `-1`.
pub fn alexander_at_signs(pr: &GroupPresentation, parities: &[i64]) -> Result<IntMatrix> {
    let am = alexander_matrix(pr);
    let vals = am.evaluate_at_roots(&Rationals, 2, parities)?;
    let rows = vals
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
        .collect();
    IntMatrix::from_bigint_rows(rows, am.cols())
}

/// The integer matrix `A(2)`: the Alexander matrix of the alternate
/// presentation (generators `g1, g12:r, u_r, v_r`) at `t(2)`. Odd `p` only.
pub fn alexander_at_t2(p: usize) -> Result<IntMatrix> {
    let spec = ArrangementSpec::new(p, default_multiplicities(p)?)?;
    let pr = build_alternate_deconed_presentation(p)?;
    let n = spec.total_degree() as i64;
    let exps: Vec<i64> = alternate_lambda_exponents(&spec)?
        .into_iter()
        .map(|e| e * (n / 2))
        .collect();
    alexander_at_signs(&pr, &exps)
}

/// The deconed Alexander matrix of `A_2` at the sign character
/// `s = (1, 1, -1, -1, -1, -1, 1, 1)` with `z2` forgotten.
pub fn alexander_at_sign_translation_p2() -> Result<IntMatrix> {
    let spec = ArrangementSpec::new(2, vec![1; 8])?;
    let s = [0i64, 0, 1, 1, 1, 1, 0, 0];
    let parities: Vec<i64> = spec.deconed_generator_hyperplanes().into_iter().map(|h| s[h]).collect();
    alexander_at_signs(&build_deconed_presentation(2)?, &parities)
}

/// Rank of an integer matrix over `Q`, used for depth over `Q` of sign
/// characters.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let rows: Vec<Vec<_>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|v| Rationals.from_bigint(v)).collect())
        .collect();
    rank_over_field(&Rationals, &rows)
}
