//! One function per subcommand. Each returns a [`Report`]; rendering and exit
//! status are handled by the caller.

use rayon::prelude::*;
use serde_json::{json, Value};

use milnor_core::braidword::closed_form_identities;
use milnor_core::exactla::{diagonalize, IntMatrix, SmithForm};
use milnor_core::exactnum::{divisors, is_prime, lcm, rational_to_string, AnyField, FieldScalar};
use milnor_core::foxcalc::alexander_matrix;
use milnor_core::grouppres::{
    arrangement_spec, build_alternate_deconed_presentation, build_cone_presentation,
    build_deconed_presentation, default_multiplicities, ArrangementSpec, GroupPresentation,
};
use milnor_core::milnorfiber::{
    alexander_at_signs, alexander_at_t2, alternate_lambda_exponents, character_tk,
    cv_component_point, deconed_lambda_exponents, milnor_h1_field, milnor_h1_integral,
    torus_point, translation_point, CVPoint, Character, ConeDecone, DepthEvaluator,
};
use milnor_core::{Error, Result};

use crate::{CharacterSelector, Check, Command, PresentationKind, Report, RunConfig};

pub(crate) fn dispatch(config: &RunConfig, progress: &mut dyn FnMut(&str)) -> Result<Report> {
    if let Some(n) = config.threads {
        // only the first global pool in a process takes effect
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    if !matches!(config.command, Command::Snf { .. }) && !is_prime(config.p as u64) {
        return Err(Error::NotPrime(config.p as u64));
    }
    match &config.command {
        Command::Present => present(config),
        Command::Alexander => alexander(config),
        Command::Depth => depth(config),
        Command::Charvar { u_order, component } => charvar(config, *u_order, *component),
        Command::Milnor => milnor(config, progress),
        Command::Snf { path } => snf(path, progress),
        Command::Verify { max_p } => verify(config, *max_p, progress),
    }
}

fn to_value(json_text: &str) -> Result<Value> {
    serde_json::from_str(json_text).map_err(|e| Error::Parse(e.to_string()))
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn presentation(config: &RunConfig) -> Result<GroupPresentation> {
    let p = config.p;
    match config.presentation {
        PresentationKind::Deconed => build_deconed_presentation(p),
        PresentationKind::Cone => build_cone_presentation(p),
        PresentationKind::Alternate if p == 2 => Err(Error::Unsupported(
            "the alternate presentation exists for odd p only".into(),
        )),
        PresentationKind::Alternate => build_alternate_deconed_presentation(p),
    }
}

/// `lambda_a` on the generators of the chosen presentation.
fn lambda_exponents(spec: &ArrangementSpec, kind: PresentationKind) -> Result<Vec<i64>> {
    let m = spec.multiplicities();
    Ok(match kind {
        PresentationKind::Deconed => deconed_lambda_exponents(spec),
        PresentationKind::Cone => spec
            .cone_generator_hyperplanes()
            .into_iter()
            .map(|h| m[h] as i64)
            .collect(),
        PresentationKind::Alternate => alternate_lambda_exponents(spec)?,
    })
}

fn generator_hyperplanes(spec: &ArrangementSpec, kind: PresentationKind) -> Result<Vec<usize>> {
    match kind {
        PresentationKind::Deconed => Ok(spec.deconed_generator_hyperplanes()),
        PresentationKind::Cone => Ok(spec.cone_generator_hyperplanes()),
        PresentationKind::Alternate => Err(Error::Unsupported(
            "hyperplane-labelled characters cannot be pulled back to the alternate presentation".into(),
        )),
    }
}

fn resolve_character(config: &RunConfig, spec: &ArrangementSpec, pr: &GroupPresentation) -> Result<Character> {
    let names = pr.generators().to_vec();
    let selected = config.character.as_ref().ok_or_else(|| {
        Error::InvalidCharacter("no character given; use --k, --exps or --char-file".into())
    })?;
    let q = config.field.map(|f| f.characteristic);
    match selected {
        CharacterSelector::Power { k } => {
            let n = spec.total_degree();
            if *k == 0 || n % k != 0 {
                return Err(Error::InvalidCharacter(format!("{k} does not divide N = {n}")));
            }
            // lambda^(N/k) sends g to zeta_N^(a N/k) = zeta_k^a
            let exps = lambda_exponents(spec, config.presentation)?;
            Character::over(names, *k, &exps, q.unwrap_or(0))
        }
        CharacterSelector::Exponents { order, exponents } => {
            let order = if *order == 0 { spec.total_degree() } else { *order };
            Character::over(names, order, exponents, q.unwrap_or(0))
        }
        CharacterSelector::File { path } => {
            let ch = Character::from_json(&read_file(path)?)?;
            let q = q.unwrap_or(ch.field().characteristic());
            let exps = if ch.labels() == spec.labels() {
                generator_hyperplanes(spec, config.presentation)?
                    .into_iter()
                    .map(|h| ch.exponents()[h])
                    .collect()
            } else {
                ch.exponents_for(&names)?
            };
            Character::over(names, ch.order(), &exps, q)
        }
    }
}

fn character_value(ch: &Character) -> Value {
    json!({
        "field": ch.field().describe(),
        "order": ch.order(),
        "labels": ch.labels(),
        "exponents": ch.exponents(),
    })
}

fn present(config: &RunConfig) -> Result<Report> {
    let pr = presentation(config)?;
    let mut r = Report::new("present");
    pr.display().lines().for_each(|l| r.line(l));
    r.result = to_value(&pr.to_json())?;
    Ok(r)
}

fn alexander(config: &RunConfig) -> Result<Report> {
    let spec = arrangement_spec(config.p, config.multiplicities.clone())?;
    let pr = presentation(config)?;
    let mut r = Report::new("alexander");
    if config.character.is_none() {
        let am = alexander_matrix(&pr);
        am.display().lines().for_each(|l| r.line(l));
        r.result = to_value(&am.to_json())?;
        return Ok(r);
    }
    let ch = resolve_character(config, &spec, &pr)?;
    let (k, reduced) = ch.reduced();
    if config.field.is_none() && k <= 2 {
        let parities = if k == 2 { reduced } else { vec![0; reduced.len()] };
        let m = alexander_at_signs(&pr, &parities)?;
        let text = m.to_sparse_text();
        text.lines().for_each(|l| r.line(l));
        r.result = json!({
            "character": character_value(&ch),
            "rows": m.rows(),
            "cols": m.cols(),
            "sparse": text,
        });
        return Ok(r);
    }
    let eval = DepthEvaluator::new(&pr);
    let matrix: Vec<Vec<String>> = eval
        .specialized(&ch)?
        .iter()
        .map(|row| row.iter().map(compact).collect())
        .collect();
    let d = eval.depth(&ch)?;
    r.line(format!("field = {}, generator a", ch.field().describe()));
    for row in &matrix {
        r.line(format!("[{}]", row.join(", ")));
    }
    r.line(format!("depth = {d}"));
    r.result = json!({
        "character": character_value(&ch),
        "matrix": matrix,
        "depth": d,
    });
    Ok(r)
}

/// `c0 + c1*a + ...` in the generator `a` of the field.
fn compact(x: &FieldScalar) -> String {
    let coeffs: Vec<String> = match x {
        FieldScalar::Rational(r) => return rational_to_string(r),
        FieldScalar::Cyclotomic(c) => c.coeffs().iter().map(rational_to_string).collect(),
        FieldScalar::Finite(e) => e.coeffs().iter().map(ToString::to_string).collect(),
    };
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(i, c)| match (i, c.as_str()) {
            (0, _) => c.clone(),
            (1, "1") => "a".to_string(),
            (_, "1") => format!("a^{i}"),
            (1, "-1") => "-a".to_string(),
            (_, "-1") => format!("-a^{i}"),
            (1, _) => format!("{c}*a"),
            _ => format!("{c}*a^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn depth(config: &RunConfig) -> Result<Report> {
    let spec = arrangement_spec(config.p, config.multiplicities.clone())?;
    let pr = presentation(config)?;
    let ch = resolve_character(config, &spec, &pr)?;
    let d = DepthEvaluator::new(&pr).depth(&ch)?;
    let mut r = Report::new("depth");
    r.line(d.to_string());
    r.result = json!({ "character": character_value(&ch), "depth": d });
    Ok(r)
}

struct Sample {
    name: String,
    point: CVPoint,
    expect_positive: bool,
}

fn charvar(config: &RunConfig, u_order: u64, component: Option<usize>) -> Result<Report> {
    let p = config.p;
    let q = config.field.map_or(0, |f| f.characteristic);
    if u_order == 0 {
        return Err(Error::InvalidCharacter("--u-order must be positive".into()));
    }
    let components: Vec<usize> = match component {
        Some(i) if i == 0 || i >= p => {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                rank: p - 1,
            })
        }
        Some(i) => vec![i],
        None => (1..p).collect(),
    };
    let mut r = Report::new("charvar");
    if q == p as u64 {
        r.line(format!(
            "characteristic {p}: C_i is a subtorus through 1, not a translated torus; no sample points evaluated"
        ));
        r.result = json!({ "characteristic": q, "flagged": true, "samples": [] });
        return Ok(r);
    }
    let order = if p == 2 { lcm(6, u_order) } else { lcm(p as u64, u_order) };
    let field = AnyField::containing_roots(q, order)?;
    let zeta = field.root_of_unity(u_order).ok_or(Error::NoRootOfUnity {
        characteristic: q,
        order: u_order,
    })?;
    let mut samples = Vec::new();
    for &i in &components {
        for j in 0..u_order {
            samples.push(Sample {
                name: format!("C{i} at u = zeta_{u_order}^{j}"),
                point: cv_component_point(p, i, &zeta.pow(j as i64)?)?,
                expect_positive: true,
            });
        }
    }
    if p == 2 {
        let u = field.root_of_unity(3).expect("field contains cube roots");
        let t = torus_point(2, &u)?;
        let st = translation_point(2, 1, &field)?.translate(&t)?;
        samples.push(Sample {
            name: "T at u = zeta_3".into(),
            point: t,
            expect_positive: false,
        });
        samples.push(Sample {
            name: "s T at u = zeta_3".into(),
            point: st,
            expect_positive: true,
        });
    }
    let cd = ConeDecone::new(p)?;
    let depths = samples
        .par_iter()
        .map(|s| Ok((cd.cone_depth_at(&s.point)?, cd.deconed_depth_at(&s.point)?)))
        .collect::<Result<Vec<_>>>()?;
    r.line(format!("field = {}", field.describe()));
    let mut rows = Vec::new();
    for (s, &(cone, decone)) in samples.iter().zip(&depths) {
        let computed = format!("cone {cone}, decone {decone}");
        let check = if s.expect_positive {
            Check::with(format!("depth {}", s.name), computed, ">= 1", cone >= 1 && decone >= 1)
        } else {
            Check::with(format!("depth {}", s.name), computed, "0", cone == 0 && decone == 0)
        };
        r.check(check);
        rows.push(json!({ "point": s.name, "coneDepth": cone, "deconedDepth": decone }));
    }
    r.result = json!({ "field": field.describe(), "flagged": false, "samples": rows });
    Ok(r)
}

fn milnor(config: &RunConfig, progress: &mut dyn FnMut(&str)) -> Result<Report> {
    let spec = arrangement_spec(config.p, config.multiplicities.clone())?;
    let mut r = Report::new("milnor");
    if let Some(f) = config.field {
        let d = milnor_h1_field(&spec, f.characteristic)?;
        r.line(format!("field = {}", d.field));
        r.line(format!("N = {}", d.order));
        r.line(format!("b1(U) = {}", d.base));
        for t in &d.terms {
            r.line(format!("k = {}: phi = {}, depth = {}", t.k, t.totient, t.depth));
        }
        r.line(format!("dim H1 = {}", d.dimension));
        r.result = serde_json::to_value(&d).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(r);
    }
    let h = milnor_h1_integral(&spec, progress)?;
    r.line(format!("N = {}", h.order));
    r.line(format!("H1 = {}", h.group));
    r.line(format!("torsion primes = {:?}", h.torsion_primes));
    if let Some(env) = &h.envelope {
        r.line(format!("envelope = {env:?}"));
    }
    for m in &h.monodromy {
        let order = m.order.map_or("unknown".to_string(), |o| o.to_string());
        r.line(format!(
            "monodromy on {}-primary part (moduli {}): order {order}, negation {}",
            m.prime,
            m.moduli.join(" "),
            m.is_negation
        ));
    }
    r.result = json!({
        "order": h.order,
        "multiplicities": h.multiplicities,
        "group": h.group.to_string(),
        "freeRank": h.group.free_rank,
        "torsion": h.group.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "torsionPrimes": h.torsion_primes,
        "envelope": h.envelope,
        "monodromy": h.monodromy,
    });
    Ok(r)
}

fn snf(path: &str, progress: &mut dyn FnMut(&str)) -> Result<Report> {
    let m = IntMatrix::parse_text(&read_file(path)?)?;
    progress(&format!("{path}: {} x {}, {} nonzero entries", m.rows(), m.cols(), m.nnz()));
    let d = diagonalize(&m, false, &mut |step, total| {
        progress(&format!("  pivot {step} / {total}"))
    });
    let s = SmithForm::from_diagonal(&d.diagonal);
    let mut r = Report::new("snf");
    r.line(s.to_text());
    r.result = json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "rank": s.rank,
        "invariantFactors": s.invariant_factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(r)
}

/// Smallest prime not dividing `n`.
fn prime_coprime_to(n: u64) -> u64 {
    (2..).find(|&q| is_prime(q) && n % q != 0).expect("primes are infinite")
}

struct DepthItem {
    k: u64,
    characteristic: u64,
    expected: usize,
}

/// The expected depth table. For odd `p` only `t(2)` jumps, in characteristic
/// `p`; for `p = 2` the characteristic-2 entries follow from the field
/// dimensions 7 and 9.
fn depth_table(p: usize, n: u64) -> Vec<DepthItem> {
    let ks: Vec<u64> = divisors(n).into_iter().filter(|&k| k != 1).collect();
    let mut items: Vec<DepthItem> = ks
        .iter()
        .map(|&k| DepthItem {
            k,
            characteristic: 0,
            expected: 0,
        })
        .collect();
    if p == 2 {
        items.extend(ks.iter().map(|&k| DepthItem {
            k,
            characteristic: 2,
            expected: usize::from(k == 3),
        }));
    } else {
        let q = prime_coprime_to(2 * p as u64 * n);
        items.push(DepthItem {
            k: 2,
            characteristic: q,
            expected: 0,
        });
        items.push(DepthItem {
            k: 2,
            characteristic: p as u64,
            expected: 1,
        });
    }
    items
}

fn field_name(characteristic: u64) -> String {
    match characteristic {
        0 => "Q(zeta)".to_string(),
        q => format!("F{q}"),
    }
}

fn verify(config: &RunConfig, max_p: usize, progress: &mut dyn FnMut(&str)) -> Result<Report> {
    let p = config.p;
    if p > max_p {
        return Err(Error::Unsupported(format!(
            "verify is bounded to p <= {max_p}; pass --max-p {p} to run it anyway"
        )));
    }
    let spec = ArrangementSpec::new(p, default_multiplicities(p)?)?;
    let n = spec.total_degree();
    let mut r = Report::new("verify");
    r.line(format!("A_{p}: N = {n}, multiplicities {:?}", spec.multiplicities()));

    progress("braid identities");
    for (name, holds) in closed_form_identities(p)? {
        r.check(Check::equal(name, if holds { "holds" } else { "fails" }, "holds"));
    }

    progress("depth table");
    let pr = build_deconed_presentation(p)?;
    let eval = DepthEvaluator::new(&pr);
    let items = depth_table(p, n);
    let depths = items
        .par_iter()
        .map(|it| {
            let field = AnyField::containing_roots(it.characteristic, n)?;
            eval.depth(&character_tk(p, it.k, &field)?)
        })
        .collect::<Result<Vec<_>>>()?;
    for (it, d) in items.iter().zip(depths) {
        let name = format!("depth t({}) over {}", it.k, field_name(it.characteristic));
        r.check(Check::equal(name, d, it.expected));
    }

    if p % 2 == 1 {
        progress("SNF of A(2)");
        let s = SmithForm::from_diagonal(&diagonalize(&alexander_at_t2(p)?, false, &mut |_, _| {}).diagonal);
        let mut expected = vec!["2".to_string(); 3 * p - 1];
        expected.push((2 * p).to_string());
        r.check(Check::equal("SNF A(2)", s.to_text(), expected.join(" ")));
    }

    progress("field dimensions");
    let (dim0, dim_p) = if p == 2 { (7, 9) } else { (3 * p + 1, 3 * p + 2) };
    let over_q = milnor_h1_field(&spec, 0)?;
    let over_p = milnor_h1_field(&spec, p as u64)?;
    r.check(Check::equal("dim H1 over Q(zeta)", over_q.dimension, dim0));
    r.check(Check::equal(format!("dim H1 over F{p}"), over_p.dimension, dim_p));

    progress("integral H1");
    let h = milnor_h1_integral(&spec, progress)?;
    r.check(Check::equal(
        "rank H1(Z) = dim over Q(zeta)",
        h.field_dimension(0),
        over_q.dimension,
    ));
    r.check(Check::equal(
        format!("dim H1(Z) (x) F{p} = dim over F{p}"),
        h.field_dimension(p as u64),
        over_p.dimension,
    ));
    let primary = h.primary(p as u64);
    if p == 2 {
        let order = primary.and_then(|m| m.order).map_or("none".to_string(), |o| o.to_string());
        r.check(Check::equal("monodromy order on Z/2 + Z/2", order, 3));
        r.check(Check::equal("H1", h.group.to_string(), "Z^7 + Z/2 + Z/2"));
    } else {
        let negation = primary.is_some_and(|m| m.is_negation);
        r.check(Check::equal(
            format!("monodromy on Z/{p} is negation"),
            if negation { "yes" } else { "no" },
            "yes",
        ));
        let p_part: Vec<String> = h.group.primary_part(p as u64).iter().map(ToString::to_string).collect();
        let envelope = h.envelope.clone().unwrap_or_default();
        let pass = h.group.free_rank == 3 * p + 1
            && p_part == [p.to_string()]
            && h.torsion_primes.iter().all(|q| envelope.contains(q));
        let expected = format!("Z^{} + Z/{p} + torsion at primes in {envelope:?}", 3 * p + 1);
        r.check(Check::with("H1", h.group.to_string(), expected, pass));
    }

    r.result = json!({
        "p": p,
        "order": n,
        "group": h.group.to_string(),
        "fieldDimensions": { "0": over_q.dimension, p.to_string(): over_p.dimension },
    });
    Ok(r)
}
