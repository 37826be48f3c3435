//! Machine-readable tables of free algebras of unitary modular forms, with
//! automated accounting checks.
//!
//! All numeric content lives in JSON fixtures; this module only implements
//! the bookkeeping laws: the Jacobian weight formula, the Borcherds weight
//! law (weight = c0/2), weight accounting of printed mirror factorizations,
//! the unit-order divisibility filter, and Hilbert-series identities.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("fixture {0}: {1}")]
    Fixture(String, String),
    #[error("unresolved label {0}")]
    Unresolved(String),
    #[error("bad rational {0:?}")]
    BadRational(String),
    #[error("divisibility filter needs d in {{-1,-3}}, got {0}")]
    BadField(i64),
}

fn parse_rat(s: &str) -> Result<BigRational, TableError> {
    s.parse::<BigRational>()
        .map_err(|_| TableError::BadRational(s.to_string()))
}

fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Fixture records.

/// One row of the generator/relation tables.
#[derive(Clone, Debug, Deserialize)]
pub struct LatticeRecord {
    pub name: String,
    pub d: i64,
    pub hermitian_rank: usize,
    pub group: String,
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub source: String,
}

impl LatticeRecord {
    pub fn key(&self) -> String {
        format!("{}:{}", self.name, self.group)
    }

    pub fn generator_weights(&self) -> Result<Vec<BigRational>, TableError> {
        self.generators.iter().map(|s| parse_rat(s)).collect()
    }

    pub fn relation_weights(&self) -> Result<Vec<BigRational>, TableError> {
        self.relations.iter().map(|s| parse_rat(s)).collect()
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }
}

/// The Jacobian weight (n+1) + sum of generator weights for a free record,
/// with n+1 = number of generators.
pub fn jacobian_weight(record: &LatticeRecord) -> Result<Option<BigRational>, TableError> {
    if !record.is_free() {
        return Ok(None);
    }
    let gens = record.generator_weights()?;
    let n1 = gens.len() as i64;
    Ok(Some(gens.into_iter().fold(rat_i(n1), |a, b| a + b)))
}

/// A Borcherds product identified by its printed principal part.
#[derive(Clone, Debug, Deserialize)]
pub struct BorcherdsWeightRecord {
    pub label: String,
    /// Multiplicity of e_0 in the principal part.
    pub c0: String,
    /// Orbit terms (norm, coset descriptor, q-exponent); bookkeeping only.
    #[serde(default)]
    pub orbit: Vec<OrbitTerm>,
    /// Weight stated in prose, if any (cross-checked against c0/2).
    #[serde(default)]
    pub stated_weight: Option<String>,
    pub source: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct OrbitTerm {
    pub norm: String,
    pub coset: String,
    pub q_exponent: String,
}

impl BorcherdsWeightRecord {
    /// Weight of the orthogonal product: half the e_0 multiplicity.
    pub fn orthogonal_weight(&self) -> Result<BigRational, TableError> {
        Ok(parse_rat(&self.c0)? / rat_i(2))
    }
}

/// A printed factorization of a Jacobian into Borcherds restrictions.
#[derive(Clone, Debug, Deserialize)]
pub struct MirrorFactorization {
    /// Key "lattice:group" of the free record whose Jacobian is factored.
    pub record: String,
    /// (product label, rational exponent) pairs as printed.
    pub factors: Vec<(String, String)>,
    /// Alternative reading when the printed exponents are inconsistent.
    #[serde(default)]
    pub corrected_factors: Option<Vec<(String, String)>>,
    pub source: String,
}

/// A divisibility-filter row: orthogonal generator weights and the expected
/// unitary sublist.
#[derive(Clone, Debug, Deserialize)]
pub struct FilterRow {
    pub lattice: String,
    pub d: i64,
    pub orth_weights: Vec<i64>,
    pub unitary_weights: Vec<i64>,
    pub source: String,
}

/// A Hilbert-series identity: a free-with-relation presentation equals a sum
/// of shifted free modules.
#[derive(Clone, Debug, Deserialize)]
pub struct HilbertIdentity {
    pub name: String,
    pub lhs: HilbertPresentation,
    pub decomposition: Vec<HilbertSummand>,
    pub source: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct HilbertPresentation {
    pub generators: Vec<i64>,
    #[serde(default)]
    pub relations: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct HilbertSummand {
    pub offset: i64,
    pub generators: Vec<i64>,
}

/// Relation strings of the non-free examples; schema-validated, not proved.
#[derive(Clone, Debug, Deserialize)]
pub struct RelationRecord {
    pub record: String,
    pub relations: Vec<String>,
    pub source: String,
}

// ---------------------------------------------------------------------------
// The divisibility filter.

/// Keep the weights divisible by 4 (d = -1) or by 6 (d = -3).
pub fn filter_weights_by_unit_order(weights: &[i64], d: i64) -> Result<Vec<i64>, TableError> {
    let m = match d {
        -1 => 4,
        -3 => 6,
        _ => return Err(TableError::BadField(d)),
    };
    Ok(weights.iter().copied().filter(|w| w % m == 0).collect())
}

// ---------------------------------------------------------------------------
// Hilbert series.

/// Sparse integer polynomial in t.
type Poly = BTreeMap<u64, BigInt>;

fn poly_one() -> Poly {
    let mut p = Poly::new();
    p.insert(0, BigInt::one());
    p
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        let slot = out.entry(*e).or_insert_with(BigInt::zero);
        *slot += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let slot = out.entry(e1 + e2).or_insert_with(BigInt::zero);
            *slot += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// 1 - t^k
fn poly_one_minus(k: u64) -> Poly {
    let mut p = Poly::new();
    p.insert(0, BigInt::one());
    let slot = p.entry(k).or_insert_with(BigInt::zero);
    *slot -= BigInt::one();
    p.retain(|_, c| !c.is_zero());
    p
}

fn poly_monomial(k: u64) -> Poly {
    let mut p = Poly::new();
    p.insert(k, BigInt::one());
    p
}

/// A Hilbert series as an exact rational function numerator/denominator.
#[derive(Clone, Debug)]
pub struct HilbertSeries {
    pub numerator: Poly,
    pub denominator: Poly,
}

impl HilbertSeries {
    /// Pi(1-t^r) / Pi(1-t^g) for a graded presentation.
    pub fn from_presentation(generators: &[i64], relations: &[i64]) -> Self {
        let mut num = poly_one();
        for r in relations {
            num = poly_mul(&num, &poly_one_minus(*r as u64));
        }
        let mut den = poly_one();
        for g in generators {
            den = poly_mul(&den, &poly_one_minus(*g as u64));
        }
        HilbertSeries {
            numerator: num,
            denominator: den,
        }
    }

    /// t^offset / Pi(1-t^g)
    pub fn shifted_free(offset: i64, generators: &[i64]) -> Self {
        let mut den = poly_one();
        for g in generators {
            den = poly_mul(&den, &poly_one_minus(*g as u64));
        }
        HilbertSeries {
            numerator: poly_monomial(offset as u64),
            denominator: den,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        HilbertSeries {
            numerator: poly_add(
                &poly_mul(&self.numerator, &rhs.denominator),
                &poly_mul(&rhs.numerator, &self.denominator),
            ),
            denominator: poly_mul(&self.denominator, &rhs.denominator),
        }
    }

    /// Exact equality of rational functions by cross-multiplication.
    pub fn equals(&self, rhs: &Self) -> bool {
        poly_mul(&self.numerator, &rhs.denominator) == poly_mul(&rhs.numerator, &self.denominator)
    }
}

/// Check that a free-with-relations presentation equals a sum of shifted free
/// modules, exactly as rational functions.
pub fn hilbert_identity_check(id: &HilbertIdentity) -> bool {
    let lhs = HilbertSeries::from_presentation(&id.lhs.generators, &id.lhs.relations);
    let mut rhs: Option<HilbertSeries> = None;
    for s in &id.decomposition {
        let term = HilbertSeries::shifted_free(s.offset, &s.generators);
        rhs = Some(match rhs {
            None => term,
            Some(acc) => acc.add(&term),
        });
    }
    match rhs {
        None => false,
        Some(r) => lhs.equals(&r),
    }
}

// ---------------------------------------------------------------------------
// Verification report.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "NA")]
    Na,
    #[serde(rename = "AMBIGUOUS")]
    Ambiguous,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Na => "NA",
            Verdict::Ambiguous => "AMBIGUOUS",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportLine {
    pub record: String,
    pub check: String,
    pub verdict: Verdict,
    pub lhs: String,
    pub rhs: String,
    pub source: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub lines: Vec<ReportLine>,
}

impl VerificationReport {
    pub fn has_failure(&self) -> bool {
        self.lines.iter().any(|l| l.verdict == Verdict::Fail)
    }

    pub fn counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for l in &self.lines {
            *out.entry(l.verdict.to_string()).or_insert(0) += 1;
        }
        out
    }
}

/// The full fixture set under fixtures/tables/.
pub struct TableFixtures {
    pub records: Vec<LatticeRecord>,
    pub borcherds: Vec<BorcherdsWeightRecord>,
    pub factorizations: Vec<MirrorFactorization>,
    pub filter_rows: Vec<FilterRow>,
    pub hilbert: Vec<HilbertIdentity>,
    pub relations: Vec<RelationRecord>,
}

fn load_json<T: for<'de> Deserialize<'de>>(dir: &Path, file: &str) -> Result<Vec<T>, TableError> {
    let path = dir.join(file);
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(&path)
        .map_err(|e| TableError::Fixture(file.to_string(), e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| TableError::Fixture(file.to_string(), e.to_string()))
}

pub fn load_table_fixtures(dir: &Path) -> Result<TableFixtures, TableError> {
    Ok(TableFixtures {
        records: load_json(dir, "records.json")?,
        borcherds: load_json(dir, "borcherds.json")?,
        factorizations: load_json(dir, "factorizations.json")?,
        filter_rows: load_json(dir, "filter_rows.json")?,
        hilbert: load_json(dir, "hilbert.json")?,
        relations: load_json(dir, "relations.json")?,
    })
}

fn weight_of_label(
    fixtures: &TableFixtures,
    label: &str,
) -> Result<BigRational, TableError> {
    fixtures
        .borcherds
        .iter()
        .find(|b| b.label == label)
        .ok_or_else(|| TableError::Unresolved(label.to_string()))?
        .orthogonal_weight()
}

fn factor_sum(
    fixtures: &TableFixtures,
    factors: &[(String, String)],
) -> Result<BigRational, TableError> {
    let mut total = BigRational::zero();
    for (label, exp) in factors {
        total += weight_of_label(fixtures, label)? * parse_rat(exp)?;
    }
    Ok(total)
}

/// Weight accounting for one printed factorization.
pub fn check_mirror_factorization(
    fixtures: &TableFixtures,
    fact: &MirrorFactorization,
) -> Result<ReportLine, TableError> {
    let record = fixtures
        .records
        .iter()
        .find(|r| r.key() == fact.record)
        .ok_or_else(|| TableError::Unresolved(fact.record.clone()))?;
    let jw = jacobian_weight(record)?
        .ok_or_else(|| TableError::Unresolved(format!("{} is not free", fact.record)))?;
    let printed = factor_sum(fixtures, &fact.factors)?;
    let verdict = if printed == jw {
        Verdict::Pass
    } else if let Some(corr) = &fact.corrected_factors {
        if factor_sum(fixtures, corr)? == jw {
            Verdict::Ambiguous
        } else {
            Verdict::Fail
        }
    } else {
        Verdict::Fail
    };
    Ok(ReportLine {
        record: fact.record.clone(),
        check: "mirror_factorization".into(),
        verdict,
        lhs: jw.to_string(),
        rhs: printed.to_string(),
        source: fact.source.clone(),
    })
}

/// Run every check over the fixture set, in fixture order.
pub fn verify_all_tables(fixtures: &TableFixtures) -> Result<VerificationReport, TableError> {
    let mut report = VerificationReport::default();

    for r in &fixtures.records {
        let gens = r.generator_weights()?;
        // generator count = Hermitian rank for free records
        if r.is_free() {
            let verdict = if gens.len() == r.hermitian_rank {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            report.lines.push(ReportLine {
                record: r.key(),
                check: "generator_count".into(),
                verdict,
                lhs: r.hermitian_rank.to_string(),
                rhs: gens.len().to_string(),
                source: r.source.clone(),
            });
        } else {
            report.lines.push(ReportLine {
                record: r.key(),
                check: "generator_count".into(),
                verdict: Verdict::Na,
                lhs: r.hermitian_rank.to_string(),
                rhs: gens.len().to_string(),
                source: r.source.clone(),
            });
        }
        let positive = gens.iter().all(|g| g.is_positive());
        report.lines.push(ReportLine {
            record: r.key(),
            check: "weights_positive".into(),
            verdict: if positive { Verdict::Pass } else { Verdict::Fail },
            lhs: "all > 0".into(),
            rhs: format!("{:?}", r.generators),
            source: r.source.clone(),
        });
        if let Some(jw) = jacobian_weight(r)? {
            report.lines.push(ReportLine {
                record: r.key(),
                check: "jacobian_weight".into(),
                verdict: Verdict::Pass,
                lhs: jw.to_string(),
                rhs: format!("(n+1)+sum{:?}", r.generators),
                source: r.source.clone(),
            });
        }
    }

    for b in &fixtures.borcherds {
        let w = b.orthogonal_weight()?;
        match &b.stated_weight {
            None => report.lines.push(ReportLine {
                record: b.label.clone(),
                check: "borcherds_weight".into(),
                verdict: Verdict::Na,
                lhs: w.to_string(),
                rhs: "unstated".into(),
                source: b.source.clone(),
            }),
            Some(s) => {
                let stated = parse_rat(s)?;
                report.lines.push(ReportLine {
                    record: b.label.clone(),
                    check: "borcherds_weight".into(),
                    verdict: if w == stated { Verdict::Pass } else { Verdict::Fail },
                    lhs: stated.to_string(),
                    rhs: w.to_string(),
                    source: b.source.clone(),
                });
            }
        }
    }

    for f in &fixtures.factorizations {
        report.lines.push(check_mirror_factorization(fixtures, f)?);
    }

    for row in &fixtures.filter_rows {
        let got = filter_weights_by_unit_order(&row.orth_weights, row.d)?;
        report.lines.push(ReportLine {
            record: format!("{} (d={})", row.lattice, row.d),
            check: "divisibility_filter".into(),
            verdict: if got == row.unitary_weights {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            lhs: format!("{:?}", row.unitary_weights),
            rhs: format!("{:?}", got),
            source: row.source.clone(),
        });
    }

    for id in &fixtures.hilbert {
        report.lines.push(ReportLine {
            record: id.name.clone(),
            check: "hilbert_identity".into(),
            verdict: if hilbert_identity_check(id) {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            lhs: format!("gens {:?} rels {:?}", id.lhs.generators, id.lhs.relations),
            rhs: format!("{} summands", id.decomposition.len()),
            source: id.source.clone(),
        });
    }

    for rel in &fixtures.relations {
        let ok = rel.relations.iter().all(|s| relation_schema_ok(s));
        report.lines.push(ReportLine {
            record: rel.record.clone(),
            check: "relation_schema".into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            lhs: format!("{} relations", rel.relations.len()),
            rhs: "schema".into(),
            source: rel.source.clone(),
        });
    }

    Ok(report)
}

/// Relation strings use variables X1..Xn, integer coefficients, zeta3, +, =,
/// ^, and whitespace.
fn relation_schema_ok(s: &str) -> bool {
    !s.is_empty()
        && s.contains('=')
        && s.chars().all(|c| {
            c.is_ascii_alphanumeric() || "+-=^_* ()".contains(c)
        })
}
