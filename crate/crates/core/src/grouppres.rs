//! Finite presentations, the semidirect-product builder, and the
//! deleted monomial arrangements `A_p` with their multiplicity data.
//!
//! Hyperplanes are ordered `H1, H2, H12:1..H12:p, H13:1..H13:p, H23:1..H23:p`.
//! Presentation generators are named `g1`, `g2`, `g12:r` (base meridians)
//! and `y1..y2p` (fiber meridians).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::braidword::{BasisChange, BraidWord, FreeGroupEndo, FreeWord, MonodromyBraids};
use crate::exactnum::gcd;
use crate::{Error, Result};

/// Generator labels plus relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
}

#[derive(Serialize, Deserialize)]
struct PresentationFile {
    generators: Vec<String>,
    relators: Vec<Vec<i64>>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        let rank = generators.len();
        for r in &relators {
            if r.max_generator() as usize > rank {
                return Err(Error::IndexOutOfRange {
                    index: r.max_generator() as i64,
                    rank,
                });
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    /// Generators minus relators.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    /// 0-based position of a generator label.
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Exponent sums: one row per relator, one column per generator.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| r.abelianization(self.generators.len()))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let file = PresentationFile {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(FreeWord::letters).collect(),
        };
        serde_json::to_string_pretty(&file).expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(l) = file.relators.iter().flatten().find(|&&l| l == 0) {
            return Err(Error::Parse(format!("letter {l} is not a generator")));
        }
        let relators = file
            .relators
            .iter()
            .map(|r| FreeWord::from_letters(r))
            .collect();
        Self::new(file.generators, relators)
    }

    /// Human-readable listing, one relator per line.
    pub fn display(&self) -> String {
        let mut out = format!(
            "generators ({}): {}\nrelators ({}):\n",
            self.generators.len(),
            self.generators.join(" "),
            self.relators.len()
        );
        for r in &self.relators {
            out.push_str("  ");
            out.push_str(&r.display_with(&self.generators));
            out.push('\n');
        }
        out
    }
}

/// A free group `F_n` extended by a base group through braid monodromy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectData {
    pub fiber_rank: usize,
    pub base_generators: Vec<String>,
    pub monodromy_braids: Vec<BraidWord>,
    /// Relators among the base generators only (indices into `base_generators`).
    #[serde(default)]
    pub base_relators: Vec<FreeWord>,
}

fn fiber_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `<base, fiber | base_relators, g^-1 x g = e_g(x)>` for fiber automorphisms `e_g`.
fn extension_presentation(
    base: &[String],
    fiber: Vec<String>,
    endos: &[FreeGroupEndo],
    base_relators: &[FreeWord],
) -> Result<GroupPresentation> {
    let nb = base.len() as u32;
    let shift: Vec<FreeWord> = (1..=fiber.len() as u32)
        .map(|i| FreeWord::generator(nb + i))
        .collect();
    let mut relators = Vec::with_capacity(base.len() * fiber.len() + base_relators.len());
    for (j, e) in endos.iter().enumerate() {
        let g = FreeWord::generator(j as u32 + 1);
        for i in 1..=fiber.len() as u32 {
            let mut r = g.inverse();
            r.push(nb + i, 1);
            r.push_word(&g);
            r.push_inverse(&e.image(i).substitute(&shift));
            relators.push(r);
        }
    }
    for r in base_relators {
        if r.max_generator() > nb {
            return Err(Error::IndexOutOfRange {
                index: r.max_generator() as i64,
                rank: base.len(),
            });
        }
        relators.push(r.clone());
    }
    let mut generators = base.to_vec();
    generators.extend(fiber);
    GroupPresentation::new(generators, relators)
}

/// Generators `base ∪ {y1..yn}`; relators `g^-1 y_i g (eta(g)(y_i))^-1` for each
/// base generator `g` and fiber generator `y_i`, followed by any base relators.
pub fn semidirect_presentation(d: &SemidirectData) -> Result<GroupPresentation> {
    if d.base_generators.len() != d.monodromy_braids.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} base generators but {} monodromy braids",
            d.base_generators.len(),
            d.monodromy_braids.len()
        )));
    }
    if let Some(b) = d.monodromy_braids.iter().find(|b| b.strands() != d.fiber_rank) {
        return Err(Error::InvalidBraid(format!(
            "braid on {} strands, fiber rank is {}",
            b.strands(),
            d.fiber_rank
        )));
    }
    let endos: Vec<FreeGroupEndo> = d
        .monodromy_braids
        .iter()
        .map(FreeGroupEndo::from_braid)
        .collect();
    extension_presentation(
        &d.base_generators,
        fiber_names("y", d.fiber_rank),
        &endos,
        &d.base_relators,
    )
}

fn check_p(p: usize) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidMultiplicities(format!("p = {p} must be at least 2")));
    }
    Ok(())
}

fn base_names(p: usize, with_g2: bool) -> Vec<String> {
    let mut names = vec!["g1".to_string()];
    if with_g2 {
        names.push("g2".to_string());
    }
    names.extend((1..=p).map(|r| format!("g12:{r}")));
    names
}

/// Monodromy data of the decone with respect to `H2`: base `g1, g12:1..g12:p`
/// with braids `Z1, A12^(1)..A12^(p)`.
pub fn deconed_semidirect_data(p: usize) -> Result<SemidirectData> {
    check_p(p)?;
    let b = MonodromyBraids::new(p)?;
    let mut braids = vec![b.z1.clone()];
    braids.extend(b.a12.iter().cloned());
    Ok(SemidirectData {
        fiber_rank: 2 * p,
        base_generators: base_names(p, false),
        monodromy_braids: braids,
        base_relators: vec![],
    })
}

/// The base loop `g1 g12:1 ... g12:(p-1) g2 g12:p`, whose braid is the full twist.
pub fn central_base_word(p: usize) -> FreeWord {
    // base order g1, g2, g12:1..g12:p
    let mut w = FreeWord::generator(1);
    for r in 1..p as u32 {
        w.push(2 + r, 1);
    }
    w.push(2, 1);
    w.push(2 + p as u32, 1);
    w
}

/// Monodromy data of the cone: base `g1, g2, g12:1..g12:p` with braids
/// `Z1, Z2, A12^(r)`. With `central_relators`, the base group is
/// `F_{p+1} x Z` (the central loop commutes with `g1, g12:r`); without,
/// the base is free of rank `p + 2`.
pub fn cone_semidirect_data(p: usize, central_relators: bool) -> Result<SemidirectData> {
    check_p(p)?;
    let b = MonodromyBraids::new(p)?;
    let mut braids = vec![b.z1.clone(), b.z2.clone()];
    braids.extend(b.a12.iter().cloned());
    let base_relators = if central_relators {
        let gamma = central_base_word(p);
        std::iter::once(1u32)
            .chain((1..=p as u32).map(|r| 2 + r))
            .map(|g| FreeWord::commutator(&gamma, &FreeWord::generator(g)))
            .collect()
    } else {
        vec![]
    };
    Ok(SemidirectData {
        fiber_rank: 2 * p,
        base_generators: base_names(p, true),
        monodromy_braids: braids,
        base_relators,
    })
}

/// Presentation of the decone: generators `g1, g12:1..g12:p, y1..y2p`
/// (`3p + 1`), relators `2p(p + 1)`.
pub fn build_deconed_presentation(p: usize) -> Result<GroupPresentation> {
    semidirect_presentation(&deconed_semidirect_data(p)?)
}

/// Presentation of the central arrangement complement: generators
/// `g1, g2, g12:1..g12:p, y1..y2p` (`3p + 2`), the `2p(p + 2)` monodromy
/// relators and `p + 1` base relators making the central loop central.
pub fn build_cone_presentation(p: usize) -> Result<GroupPresentation> {
    semidirect_presentation(&cone_semidirect_data(p, true)?)
}

/// The decone presentation after conjugating all monodromy by `tau` and
/// passing to the basis `u_r = y1..y2r`, `v_r = y_{2r-1}`. Generators
/// `g1, g12:1..g12:p, u1..up, v1..vp`. Odd `p` only.
pub fn build_alternate_deconed_presentation(p: usize) -> Result<GroupPresentation> {
    check_p(p)?;
    if p % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "the alternate presentation needs odd p, got {p}"
        )));
    }
    let b = MonodromyBraids::new(p)?;
    let change = BasisChange::paired_prefix_products(p);
    let mut braids = vec![&b.frak_z];
    braids.extend(b.frak_aj.iter());
    braids.push(&b.frak_a);
    let endos: Vec<FreeGroupEndo> = braids
        .into_iter()
        .map(|br| change.transport(&FreeGroupEndo::from_braid(br)))
        .collect();
    let mut fiber = fiber_names("u", p);
    fiber.extend(fiber_names("v", p));
    extension_presentation(&base_names(p, false), fiber, &endos, &[])
}

/// The deleted monomial arrangement `A_p` with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementSpec {
    p: usize,
    labels: Vec<String>,
    multiplicities: Vec<u64>,
    deconed_at: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct ArrangementFile {
    prime: usize,
    multiplicities: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    deconed_at: Option<String>,
}

/// Hyperplane labels in coordinate order.
pub fn hyperplane_labels(p: usize) -> Vec<String> {
    let mut labels = vec!["H1".to_string(), "H2".to_string()];
    for family in ["12", "13", "23"] {
        labels.extend((1..=p).map(|r| format!("H{family}:{r}")));
    }
    labels
}

/// Default multiplicities: `(1, 1, 2..2, 1..1, 1..1)` for odd `p`,
/// `(2, 1, 3, 3, 2, 2, 1, 1)` for `p = 2`.
pub fn default_multiplicities(p: usize) -> Result<Vec<u64>> {
    check_p(p)?;
    if p == 2 {
        return Ok(vec![2, 1, 3, 3, 2, 2, 1, 1]);
    }
    if p % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "no default multiplicities for even p = {p}"
        )));
    }
    let mut a = vec![1, 1];
    a.extend(std::iter::repeat(2).take(p));
    a.extend(std::iter::repeat(1).take(2 * p));
    Ok(a)
}

/// Build the spec; `mult = None` selects the default multiplicities.
pub fn arrangement_spec(p: usize, mult: Option<Vec<u64>>) -> Result<ArrangementSpec> {
    let multiplicities = match mult {
        Some(m) => m,
        None => default_multiplicities(p)?,
    };
    ArrangementSpec::new(p, multiplicities)
}

impl ArrangementSpec {
    pub fn new(p: usize, multiplicities: Vec<u64>) -> Result<Self> {
        check_p(p)?;
        let n = 3 * p + 2;
        if multiplicities.len() != n {
            return Err(Error::InvalidMultiplicities(format!(
                "expected {n} multiplicities, got {}",
                multiplicities.len()
            )));
        }
        if multiplicities.contains(&0) {
            return Err(Error::InvalidMultiplicities("multiplicities must be positive".into()));
        }
        if multiplicities.iter().fold(0, |g, &a| gcd(g, a)) != 1 {
            return Err(Error::InvalidMultiplicities(format!(
                "gcd of {multiplicities:?} is not 1"
            )));
        }
        Ok(ArrangementSpec {
            p,
            labels: hyperplane_labels(p),
            multiplicities,
            deconed_at: Some("H2".to_string()),
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    /// Number of hyperplanes, `3p + 2`.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// `N`, the sum of the multiplicities.
    pub fn total_degree(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    pub fn deconed_at(&self) -> Option<&str> {
        self.deconed_at.as_deref()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Hyperplane index (0-based) of fiber strand `k` (1-based): strand
    /// `k <= p` is `H13:(p+1-k)`, strand `p + k` is `H23:(p+1-k)`.
    pub fn strand_hyperplane(&self, k: usize) -> usize {
        strand_hyperplane(self.p, k)
    }

    /// Hyperplane index of every generator of the deconed presentation.
    pub fn deconed_generator_hyperplanes(&self) -> Vec<usize> {
        let p = self.p;
        let mut out = vec![0];
        out.extend((1..=p).map(|r| 1 + r));
        out.extend((1..=2 * p).map(|k| strand_hyperplane(p, k)));
        out
    }

    /// Hyperplane index of every generator of the cone presentation.
    pub fn cone_generator_hyperplanes(&self) -> Vec<usize> {
        let p = self.p;
        let mut out = vec![0, 1];
        out.extend((1..=p).map(|r| 1 + r));
        out.extend((1..=2 * p).map(|k| strand_hyperplane(p, k)));
        out
    }

    pub fn to_json(&self) -> String {
        let file = ArrangementFile {
            prime: self.p,
            multiplicities: self
                .labels
                .iter()
                .cloned()
                .zip(self.multiplicities.iter().copied())
                .collect(),
            deconed_at: self.deconed_at.clone(),
        };
        serde_json::to_string_pretty(&file).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ArrangementFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let labels = hyperplane_labels(file.prime);
        if file.multiplicities.len() != labels.len() {
            return Err(Error::InvalidMultiplicities(format!(
                "expected {} labels, got {}",
                labels.len(),
                file.multiplicities.len()
            )));
        }
        let mult = labels
            .iter()
            .map(|l| {
                file.multiplicities
                    .get(l)
                    .copied()
                    .ok_or_else(|| Error::InvalidMultiplicities(format!("missing label {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut spec = ArrangementSpec::new(file.prime, mult)?;
        if let Some(h) = &file.deconed_at {
            if spec.label_index(h).is_none() {
                return Err(Error::InvalidMultiplicities(format!("unknown label {h}")));
            }
        }
        spec.deconed_at = file.deconed_at;
        Ok(spec)
    }
}

/// See [`ArrangementSpec::strand_hyperplane`].
pub fn strand_hyperplane(p: usize, k: usize) -> usize {
    assert!((1..=2 * p).contains(&k), "strand {k} out of range");
    if k <= p {
        2 * p + 2 - k
    } else {
        3 * p + 2 - (k - p)
    }
}
