//! The complex structure on the trace lattice and tube-series restriction.
//!
//! Scalar multiplication by O_F turns the rank-2(n+1) trace lattice into a
//! complex vector space.  We store the rational matrix P = J/sqrt|D|, where J
//! is the complex structure; J itself is rational only when |D| is a perfect
//! square, so every invariant is phrased (and checked exactly) in terms of P.

use crate::field::{FieldElement, QuadraticField};
use crate::formal::{Coeff, FormalPoly, RelationSet};
use crate::hermlat::HermitianLattice;
use crate::hp;
use crate::linalg::{f_identity, f_mul, rat_det, rat_mul, rat_transpose, FMat, RatMat};
use crate::qseries::FourierSeries;
use crate::taylorforms::{TaylorError, TaylorForm};
use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Deserialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error("matrix is not an isometry of the trace form")]
    NotIsometry,
    #[error("tube fixture: {0}")]
    Fixture(String),
    #[error("float mode requires integer exponents of s, got {0}")]
    FractionalS(BigRational),
    #[error("taylor: {0}")]
    Taylor(#[from] TaylorError),
}

fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The complex structure J = sqrt|D| * P on trace coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructure {
    field: QuadraticField,
    /// P = J / sqrt|D|, rational.
    p: RatMat,
}

/// Convert trace coordinates {b1, w b1, b2, w b2, ...} to an F-vector.
pub fn trace_to_f(field: QuadraticField, coords: &[BigRational]) -> Vec<FieldElement> {
    assert!(coords.len() % 2 == 0);
    let w = field.omega_z();
    coords
        .chunks(2)
        .map(|c| &field.from_rational(c[0].clone()) + &(&field.from_rational(c[1].clone()) * &w))
        .collect()
}

/// Convert an F-vector to trace coordinates.
pub fn f_to_trace(x: &[FieldElement]) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(2 * x.len());
    for e in x {
        let (u, v) = e.omega_coords();
        out.push(u);
        out.push(v);
    }
    out
}

/// Push an F-linear map (columns = images of the lattice basis) to trace
/// coordinates.
pub fn to_trace_matrix(field: QuadraticField, m: &FMat) -> RatMat {
    let rank = m.len();
    let w = field.omega_z();
    let dim = 2 * rank;
    let mut out = vec![vec![BigRational::zero(); dim]; dim];
    for j in 0..rank {
        for (s, mult) in [(0usize, None), (1usize, Some(&w))] {
            // image of w^s * b_j
            let image: Vec<FieldElement> = (0..rank)
                .map(|i| match mult {
                    None => m[i][j].clone(),
                    Some(w) => &m[i][j] * w,
                })
                .collect();
            let col = f_to_trace(&image);
            for (r, v) in col.into_iter().enumerate() {
                out[r][2 * j + s] = v;
            }
        }
    }
    out
}

impl ComplexStructure {
    pub fn field(&self) -> QuadraticField {
        self.field
    }

    /// |D_F|.
    pub fn abs_disc(&self) -> i64 {
        -self.field.disc()
    }

    /// P = J / sqrt|D|.
    pub fn p_matrix(&self) -> &RatMat {
        &self.p
    }

    /// J itself, available exactly iff |D| is a perfect square (d = -1).
    pub fn j_matrix(&self) -> Option<RatMat> {
        let ad = self.abs_disc();
        let r = (ad as f64).sqrt().round() as i64;
        if r * r != ad {
            return None;
        }
        Some(
            self.p
                .iter()
                .map(|row| row.iter().map(|x| x * rat_i(r)).collect())
                .collect(),
        )
    }

    /// |D| P^2 = -Id, i.e. J^2 = -Id.
    pub fn j_squared_is_minus_identity(&self) -> bool {
        let sq = rat_mul(&self.p, &self.p);
        let dim = self.p.len();
        let ad = rat_i(self.abs_disc());
        (0..dim).all(|i| {
            (0..dim).all(|j| {
                let expect = if i == j { -BigRational::one() } else { BigRational::zero() };
                &sq[i][j] * &ad == expect
            })
        })
    }

    /// |D| P^T G P = G, i.e. J is an isometry of the trace form.
    pub fn is_isometry_of(&self, gram_z: &RatMat) -> bool {
        let lhs = rat_mul(&rat_transpose(&self.p), &rat_mul(gram_z, &self.p));
        let ad = rat_i(self.abs_disc());
        lhs.iter().zip(gram_z.iter()).all(|(lr, gr)| {
            lr.iter().zip(gr.iter()).all(|(l, g)| &(l * &ad) == g)
        })
    }

    /// det J = 1, i.e. det(P) |D|^{n+1} = 1.
    pub fn has_unit_determinant(&self) -> bool {
        let rank = self.p.len() / 2;
        let mut adp = BigRational::one();
        for _ in 0..rank {
            adp *= rat_i(self.abs_disc());
        }
        rat_det(&self.p) * adp == BigRational::one()
    }

    /// (D/2) Id + (|D|/2) P equals multiplication by zeta.
    pub fn zeta_compatible(&self, l: &HermitianLattice) -> bool {
        let field = l.field();
        let rank = l.rank();
        let zeta = field.zeta();
        let mut zmat = f_identity(field, rank);
        for (i, row) in zmat.iter_mut().enumerate() {
            row[i] = zeta.clone();
        }
        let ztrace = to_trace_matrix(field, &zmat);
        let dim = 2 * rank;
        let half_d = rat_i(field.disc()) / rat_i(2);
        let half_ad = rat_i(self.abs_disc()) / rat_i(2);
        (0..dim).all(|i| {
            (0..dim).all(|j| {
                let expect = if i == j { half_d.clone() } else { BigRational::zero() }
                    + &half_ad * &self.p[i][j];
                ztrace[i][j] == expect
            })
        })
    }

    /// Recover the Hermitian form: <x,y> = (x,y)/2 - ((Px,y)/2) sqrt(D),
    /// checked on all trace-basis pairs against the Hermitian gram.
    pub fn reconstructs_hermitian_form(&self, l: &HermitianLattice) -> bool {
        let field = l.field();
        let tf = l.trace_form();
        let dim = self.p.len();
        let sqrt_d = field.sqrt_disc();
        for i in 0..dim {
            for j in 0..dim {
                // basis vectors e_i, e_j in trace coordinates
                let mut xi = vec![BigRational::zero(); dim];
                xi[i] = BigRational::one();
                let mut yj = vec![BigRational::zero(); dim];
                yj[j] = BigRational::one();
                let pxi: Vec<BigRational> = (0..dim)
                    .map(|r| {
                        (0..dim)
                            .map(|c| &self.p[r][c] * &xi[c])
                            .fold(BigRational::zero(), |a, b| a + b)
                    })
                    .collect();
                let pair = |x: &[BigRational], y: &[BigRational]| -> BigRational {
                    let mut acc = BigRational::zero();
                    for r in 0..dim {
                        for c in 0..dim {
                            acc += &x[r] * &tf.gram_z[r][c] * &y[c];
                        }
                    }
                    acc
                };
                let a = pair(&xi, &yj) / rat_i(2);
                let b = -(pair(&pxi, &yj) / rat_i(2));
                let expect = &field.from_rational(a) + &(&field.from_rational(b) * &sqrt_d);
                let xf = trace_to_f(field, &xi);
                let yf = trace_to_f(field, &yj);
                if l.herm(&xf, &yf) != expect {
                    return false;
                }
            }
        }
        true
    }

    /// U(V) membership: gamma preserves the trace form and commutes with J.
    pub fn is_unitary_isometry(
        &self,
        gram_z: &RatMat,
        gamma: &RatMat,
    ) -> Result<bool, EmbedError> {
        let gtg = rat_mul(&rat_transpose(gamma), &rat_mul(gram_z, gamma));
        if &gtg != gram_z {
            return Err(EmbedError::NotIsometry);
        }
        Ok(rat_mul(gamma, &self.p) == rat_mul(&self.p, gamma))
    }

    /// Holomorphic/antiholomorphic projectors over F.
    pub fn hol_split(&self) -> HolSplit {
        let field = self.field;
        let dim = self.p.len();
        let sqrt_d = field.sqrt_disc();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut p_hol = vec![vec![field.zero(); dim]; dim];
        let mut p_anti = vec![vec![field.zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let delta = if i == j { BigRational::one() } else { BigRational::zero() };
                let sp = &field.from_rational(&self.p[i][j] * &half) * &sqrt_d;
                p_hol[i][j] = &field.from_rational(&delta * &half) - &sp;
                p_anti[i][j] = &field.from_rational(&delta * &half) + &sp;
            }
        }
        HolSplit {
            field,
            p_hol,
            p_anti,
        }
    }
}

/// The splitting of the complexified trace space into the +i and -i
/// eigenspaces of J, with i adjoined as sqrt(D)/sqrt|D| inside F.
#[derive(Clone, Debug)]
pub struct HolSplit {
    field: QuadraticField,
    pub p_hol: FMat,
    pub p_anti: FMat,
}

impl HolSplit {
    /// P_hol + P_anti = Id.
    pub fn is_complementary(&self) -> bool {
        let dim = self.p_hol.len();
        let id = f_identity(self.field, dim);
        (0..dim).all(|i| {
            (0..dim).all(|j| &self.p_hol[i][j] + &self.p_anti[i][j] == id[i][j])
        })
    }

    /// P_hol P_anti = 0 and both projectors are idempotent.
    pub fn is_orthogonal_pair(&self) -> bool {
        let prod = f_mul(&self.p_hol, &self.p_anti);
        let hh = f_mul(&self.p_hol, &self.p_hol);
        let aa = f_mul(&self.p_anti, &self.p_anti);
        prod.iter().flatten().all(FieldElement::is_zero)
            && hh == self.p_hol
            && aa == self.p_anti
    }

    /// J acts as +i on the holomorphic part: |D| P P_hol = sqrt(D) P_hol,
    /// stated over F without leaving the field.
    pub fn j_acts_as_i(&self, cs: &ComplexStructure) -> bool {
        let dim = self.p_hol.len();
        let sqrt_d = self.field.sqrt_disc();
        let ad = rat_i(cs.abs_disc());
        // lhs = |D| * (P over F) * P_hol
        let pf: FMat = cs
            .p
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| self.field.from_rational(x * &ad))
                    .collect()
            })
            .collect();
        let lhs = f_mul(&pf, &self.p_hol);
        let rhs: FMat = self
            .p_hol
            .iter()
            .map(|row| row.iter().map(|x| x * &sqrt_d).collect())
            .collect();
        (0..dim).all(|i| (0..dim).all(|j| lhs[i][j] == rhs[i][j]))
    }
}

/// Build the complex structure of a lattice: P is multiplication by
/// sqrt(D)/|D| on the omega-basis, block-diagonal over the slots.
pub fn complex_structure(l: &HermitianLattice) -> ComplexStructure {
    let field = l.field();
    let rank = l.rank();
    let abs_d = -field.disc();
    let sqrt_d = field.sqrt_disc();
    let dim = 2 * rank;
    let mut p = vec![vec![BigRational::zero(); dim]; dim];
    let inv_ad = BigRational::new(BigInt::one(), BigInt::from(abs_d));
    let w = field.omega_z();
    for (s, gen) in [field.one(), w].iter().enumerate() {
        let image = gen * &sqrt_d;
        let (u, v) = image.omega_coords();
        for slot in 0..rank {
            p[2 * slot][2 * slot + s] = &u * &inv_ad;
            p[2 * slot + 1][2 * slot + s] = &v * &inv_ad;
        }
    }
    ComplexStructure { field, p }
}

// ---------------------------------------------------------------------------
// Tube-domain restriction.

/// How to treat the constant s = e^{2 pi i (-conj zeta)} during restriction.
pub enum RestrictionMode {
    /// Keep powers of s as opaque formal symbols.
    Formal,
    /// Evaluate s = (-1)^D e^{-pi sqrt|D|} as a rational approximation with
    /// the given precision.
    Float { precision_bits: u32 },
}

#[derive(Deserialize)]
struct TubeCoeffDoc {
    n: String,
    #[serde(default)]
    lambda: Vec<String>,
    m: String,
    value: String,
}

#[derive(Deserialize)]
struct TubeDoc {
    lattice: String,
    weight: String,
    #[serde(default)]
    num_z: usize,
    coeffs: Vec<TubeCoeffDoc>,
}

/// One Fourier term a(n, lambda, m) q^n zeta^lambda s^m of a tube-domain form.
pub struct TubeCoeff {
    pub n: BigRational,
    pub lambda: Vec<BigRational>,
    pub m: BigRational,
    pub value: BigRational,
}

pub struct TubeSeries {
    pub lattice: String,
    pub weight: BigRational,
    pub num_z: usize,
    pub coeffs: Vec<TubeCoeff>,
}

fn parse_rat(s: &str) -> Result<BigRational, EmbedError> {
    s.parse::<BigRational>()
        .map_err(|e| EmbedError::Fixture(format!("bad rational {:?}: {}", s, e)))
}

pub fn load_tube_series(path: &std::path::Path) -> Result<TubeSeries, EmbedError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| EmbedError::Fixture(format!("{}: {}", path.display(), e)))?;
    let doc: TubeDoc = serde_json::from_str(&text)
        .map_err(|e| EmbedError::Fixture(format!("{}: {}", path.display(), e)))?;
    if doc.coeffs.is_empty() {
        return Err(EmbedError::Fixture("empty coefficient table".into()));
    }
    let mut coeffs = Vec::new();
    for c in &doc.coeffs {
        coeffs.push(TubeCoeff {
            n: parse_rat(&c.n)?,
            lambda: c
                .lambda
                .iter()
                .map(|x| parse_rat(x))
                .collect::<Result<_, _>>()?,
            m: parse_rat(&c.m)?,
            value: parse_rat(&c.value)?,
        });
    }
    let num_z = if doc.num_z > 0 {
        doc.num_z
    } else {
        coeffs.iter().map(|c| c.lambda.len()).max().unwrap_or(0)
    };
    for c in &coeffs {
        if c.lambda.len() != num_z {
            return Err(EmbedError::Fixture("lambda length mismatch".into()));
        }
    }
    Ok(TubeSeries {
        lattice: doc.lattice,
        weight: parse_rat(&doc.weight)?,
        num_z,
        coeffs,
    })
}

fn factorial(n: u32) -> BigRational {
    let mut f = BigInt::one();
    for k in 2..=n as u64 {
        f *= BigInt::from(k);
    }
    BigRational::from_integer(f)
}

/// Multi-indices of length `len` with |alpha| <= max_degree.
fn multi_indices(len: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for prefix in &out {
            let used: u32 = prefix.iter().sum();
            for e in 0..=(max_degree - used) {
                let mut p = prefix.clone();
                p.push(e);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Restrict a tube-domain Fourier table to the unitary Siegel domain in the
/// formal-constant domain: the alpha-coefficient is
/// sum value * q^n * s^m * prod lambda_j^{alpha_j} / alpha!.
pub fn restrict_tube_series(
    f: &TubeSeries,
    field: QuadraticField,
    max_degree: u32,
    order: u32,
    relations: Arc<RelationSet>,
) -> Result<TaylorForm<FormalPoly>, EmbedError> {
    restrict_with(f, max_degree, order, |m| {
        Ok(s_power_formal(field, m, &relations))
    })
}

/// Float-mode restriction: s^m evaluated as a rational approximation.
pub fn restrict_tube_series_float(
    f: &TubeSeries,
    field: QuadraticField,
    max_degree: u32,
    order: u32,
    precision_bits: u32,
) -> Result<TaylorForm<BigRational>, EmbedError> {
    restrict_with(f, max_degree, order, |m| {
        s_power_float(field, m, precision_bits)
    })
}

fn restrict_with<T: Coeff>(
    f: &TubeSeries,
    max_degree: u32,
    order: u32,
    s_power: impl Fn(&BigRational) -> Result<T, EmbedError>,
) -> Result<TaylorForm<T>, EmbedError> {
    if f.coeffs.is_empty() {
        return Err(EmbedError::Fixture("empty coefficient table".into()));
    }
    let trunc = rat_i(order as i64);
    let mut terms: Vec<(Vec<u32>, FourierSeries<T>)> = Vec::new();
    for alpha in multi_indices(f.num_z, max_degree) {
        let mut fac = BigRational::one();
        for a in &alpha {
            fac *= factorial(*a);
        }
        let mut series_terms: Vec<(BigRational, T)> = Vec::new();
        for c in &f.coeffs {
            if c.n >= trunc {
                continue;
            }
            let mut lam_pow = BigRational::one();
            for (l, a) in c.lambda.iter().zip(alpha.iter()) {
                for _ in 0..*a {
                    lam_pow *= l;
                }
            }
            if lam_pow.is_zero() {
                continue;
            }
            let coeff = s_power(&c.m)?
                * T::from_rational(&(&c.value * &lam_pow / &fac));
            series_terms.push((c.n.clone(), coeff));
        }
        let series = FourierSeries::from_terms(series_terms, trunc.clone());
        if !series.is_zero() {
            terms.push((alpha, series));
        }
    }
    Ok(TaylorForm::new(f.weight.clone(), f.num_z, max_degree, terms))
}

/// s^m as a formal symbol; integer powers reuse the symbol "s", fractional
/// powers get a dedicated symbol so no relation is silently invented.
fn s_power_formal(
    _field: QuadraticField,
    m: &BigRational,
    relations: &Arc<RelationSet>,
) -> FormalPoly {
    if m.is_zero() {
        return FormalPoly::one();
    }
    if m.is_integer() && m.is_positive() {
        let k: u32 = m.to_integer().try_into().expect("s exponent out of range");
        let mut out = FormalPoly::one();
        for _ in 0..k {
            out = out * FormalPoly::symbol_with("s", relations.clone());
        }
        return out;
    }
    let name = format!("s_pow_{}", format!("{}", m).replace(['/', '-'], "_"));
    FormalPoly::symbol_with(&name, relations.clone())
}

/// s^m = ((-1)^D e^{-pi sqrt|D|})^m for integer m.
fn s_power_float(
    field: QuadraticField,
    m: &BigRational,
    bits: u32,
) -> Result<BigRational, EmbedError> {
    if m.is_zero() {
        return Ok(BigRational::one());
    }
    if !m.is_integer() {
        return Err(EmbedError::FractionalS(m.clone()));
    }
    let mi: i64 = m
        .to_integer()
        .try_into()
        .map_err(|_| EmbedError::FractionalS(m.clone()))?;
    let abs_d = rat_i(-field.disc());
    let pi = hp::pi(bits);
    let sd = hp::sqrt(&abs_d, bits);
    let mag = hp::exp(&(-pi * sd * rat_i(mi)), bits);
    let sign = if field.disc().rem_euclid(2) == 1 && mi.rem_euclid(2) == 1 {
        -BigRational::one()
    } else {
        BigRational::one()
    };
    Ok(sign * mag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermlat::HermitianLattice;

    fn rank1(d: i64) -> HermitianLattice {
        let field = QuadraticField::new(d).unwrap();
        HermitianLattice::new(field, vec![vec![field.one()]], None).unwrap()
    }

    #[test]
    fn rank1_gaussian_j() {
        let l = rank1(-1);
        let cs = complex_structure(&l);
        let j = cs.j_matrix().expect("|D| = 4 is a perfect square");
        assert_eq!(
            j,
            vec![
                vec![rat_i(0), rat_i(-1)],
                vec![rat_i(1), rat_i(0)],
            ]
        );
        assert!(cs.j_squared_is_minus_identity());
        assert!(cs.has_unit_determinant());
    }

    #[test]
    fn invariants_all_small_fields() {
        for d in [-1i64, -2, -3, -7, -11] {
            let l = rank1(d);
            let cs = complex_structure(&l);
            assert!(cs.j_squared_is_minus_identity(), "d={}", d);
            assert!(cs.is_isometry_of(&l.trace_form().gram_z), "d={}", d);
            assert!(cs.has_unit_determinant(), "d={}", d);
            assert!(cs.zeta_compatible(&l), "d={}", d);
            assert!(cs.reconstructs_hermitian_form(&l), "d={}", d);
            if d != -1 {
                assert!(cs.j_matrix().is_none(), "d={}", d);
            }
            let hs = cs.hol_split();
            assert!(hs.is_complementary(), "d={}", d);
            assert!(hs.is_orthogonal_pair(), "d={}", d);
            assert!(hs.j_acts_as_i(&cs), "d={}", d);
        }
    }

    #[test]
    fn j_commutes_with_itself_and_scalars() {
        let l = rank1(-3);
        let cs = complex_structure(&l);
        let tf = l.trace_form();
        // gamma = multiplication by a unit (zeta + 2 = primitive 6th root)
        let field = l.field();
        let u = &field.zeta() + &field.from_rational(rat_i(2));
        let gmat = to_trace_matrix(field, &vec![vec![u]]);
        assert!(cs.is_unitary_isometry(&tf.gram_z, &gmat).unwrap());
        // complex conjugation is an isometry but not unitary
        let conj = vec![
            vec![rat_i(1), rat_i(1)],
            vec![rat_i(0), rat_i(-1)],
        ];
        // conj: 1 -> 1, w -> conj(w) = 1 - w for d=-3
        assert_eq!(cs.is_unitary_isometry(&tf.gram_z, &conj).unwrap(), false);
    }

    #[test]
    fn block_structure() {
        let field = QuadraticField::new(-3).unwrap();
        let gram = vec![
            vec![field.one(), field.zero()],
            vec![field.zero(), field.one()],
        ];
        let l = HermitianLattice::new(field, gram, None).unwrap();
        let cs = complex_structure(&l);
        let dim = cs.p_matrix().len();
        // off-slot blocks vanish
        for i in 0..dim {
            for j in 0..dim {
                if i / 2 != j / 2 {
                    assert!(cs.p_matrix()[i][j].is_zero());
                }
            }
        }
        assert!(cs.j_squared_is_minus_identity());
        assert!(cs.is_isometry_of(&l.trace_form().gram_z));
    }

    #[test]
    fn tube_restriction_tau_only() {
        // F depending on tau only: same q-series at alpha = 0
        let field = QuadraticField::new(-1).unwrap();
        let ts = TubeSeries {
            lattice: "test".into(),
            weight: rat_i(4),
            num_z: 1,
            coeffs: vec![
                TubeCoeff {
                    n: rat_i(0),
                    lambda: vec![rat_i(0)],
                    m: rat_i(0),
                    value: rat_i(1),
                },
                TubeCoeff {
                    n: rat_i(1),
                    lambda: vec![rat_i(0)],
                    m: rat_i(0),
                    value: rat_i(240),
                },
            ],
        };
        let f = restrict_tube_series(&ts, field, 6, 3, Arc::new(RelationSet::default())).unwrap();
        let a0 = f.coefficient(&[0]).unwrap();
        assert_eq!(a0.coefficient(&rat_i(0)).unwrap(), FormalPoly::one());
        assert_eq!(
            a0.coefficient(&rat_i(1)).unwrap(),
            FormalPoly::constant(rat_i(240))
        );
        // all z-coefficients above 0 vanish (lambda = 0)
        assert!(f.coefficient(&[1]).unwrap().is_zero());
    }

    #[test]
    fn tube_restriction_two_term_float() {
        // synthetic two-term table: value q^0 s^1 lambda = 2, plus a tau term
        let field = QuadraticField::new(-2).unwrap();
        let ts = TubeSeries {
            lattice: "synthetic".into(),
            weight: rat_i(2),
            num_z: 1,
            coeffs: vec![
                TubeCoeff {
                    n: rat_i(0),
                    lambda: vec![rat_i(2)],
                    m: rat_i(1),
                    value: rat_i(3),
                },
                TubeCoeff {
                    n: rat_i(1),
                    lambda: vec![rat_i(0)],
                    m: rat_i(0),
                    value: rat_i(5),
                },
            ],
        };
        let f = restrict_tube_series_float(&ts, field, 4, 3, 200).unwrap();
        // alpha = 2 coefficient: 3 * s * 2^2 / 2! = 6 s with s = e^{-pi sqrt 8}
        let a2 = f.coefficient(&[2]).unwrap();
        let got = a2.coefficient(&rat_i(0)).unwrap();
        let s = hp::exp(
            &(-hp::pi(200) * hp::sqrt(&rat_i(8), 200)),
            200,
        );
        let expect = rat_i(6) * &s;
        let err = (got - expect).abs();
        assert!(err < BigRational::new(BigInt::one(), BigInt::one() << 150));
        // hand oracle: s^2 from a doubled exponent matches s*s closely
        let s2 = hp::exp(&(-hp::pi(200) * hp::sqrt(&rat_i(8), 200) * rat_i(2)), 200);
        assert!((&s * &s - s2).abs() < BigRational::new(BigInt::one(), BigInt::one() << 150));
    }
}
