//! Taylor-series models of unitary modular forms.
//!
//! A modular form on the unitary Siegel domain is modelled by finitely many
//! Taylor coefficients in the z-variables, each a truncated q-series.  The
//! coefficient at multi-index alpha of a weight-k form carries weight
//! k + |alpha|.  On top of the ring structure we provide the z-derivatives,
//! the Serre derivative in tau, and the modular Jacobian determinant.

use crate::formal::{Coeff, FormalPoly, RelationSet};
use crate::qseries::{self, FourierSeries};
use num::{BigInt, BigRational, One, Zero};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TaylorError {
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(BigRational, BigRational),
    #[error("shape mismatch: {0} vs {1} z-variables")]
    ShapeMismatch(usize, usize),
    #[error("jacobian needs {0} forms, got {1}")]
    LengthMismatch(usize, usize),
    #[error("z-index {0} out of range")]
    BadIndex(usize),
    #[error("operation requires at most one z-variable")]
    TooManyVariables,
    #[error("no exact root: {0}")]
    NoRoot(String),
    #[error("fixture: {0}")]
    Fixture(String),
}

fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Order of vanishing along z = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VanishingOrder {
    /// Least |alpha| with a nonzero coefficient.
    Exact(u32),
    /// All known coefficients vanish; order is at least this bound.
    AtLeast(u32),
}

/// Truncated Taylor series in `num_z` variables with q-series coefficients.
/// Coefficients with |alpha| <= max_degree are known.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorForm<T: Coeff> {
    weight: BigRational,
    num_z: usize,
    max_degree: u32,
    coeffs: BTreeMap<Vec<u32>, FourierSeries<T>>,
}

fn alpha_degree(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

impl<T: Coeff> TaylorForm<T> {
    pub fn new(
        weight: BigRational,
        num_z: usize,
        max_degree: u32,
        terms: Vec<(Vec<u32>, FourierSeries<T>)>,
    ) -> Self {
        let mut coeffs = BTreeMap::new();
        for (alpha, series) in terms {
            assert_eq!(alpha.len(), num_z, "multi-index length");
            if alpha_degree(&alpha) > max_degree || series.is_zero() {
                continue;
            }
            coeffs.insert(alpha, series);
        }
        TaylorForm {
            weight,
            num_z,
            max_degree,
            coeffs,
        }
    }

    pub fn zero(weight: BigRational, num_z: usize, max_degree: u32) -> Self {
        TaylorForm {
            weight,
            num_z,
            max_degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A z-free form: the given q-series at alpha = 0.
    pub fn constant_in_z(
        series: FourierSeries<T>,
        weight: BigRational,
        num_z: usize,
        max_degree: u32,
    ) -> Self {
        Self::new(weight, num_z, max_degree, vec![(vec![0; num_z], series)])
    }

    pub fn weight(&self) -> &BigRational {
        &self.weight
    }

    pub fn num_z(&self) -> usize {
        self.num_z
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FourierSeries<T>)> {
        self.coeffs.iter()
    }

    /// The q-series at a given multi-index; `None` if |alpha| exceeds the
    /// degree budget (unknown).
    pub fn coefficient(&self, alpha: &[u32]) -> Option<FourierSeries<T>> {
        if alpha.len() != self.num_z || alpha_degree(alpha) > self.max_degree {
            return None;
        }
        Some(
            self.coeffs
                .get(alpha)
                .cloned()
                .unwrap_or_else(|| FourierSeries::zero_to(self.min_trunc())),
        )
    }

    /// Most pessimistic q-truncation among stored coefficients.
    fn min_trunc(&self) -> BigRational {
        self.coeffs
            .values()
            .map(|s| s.truncation().clone())
            .min()
            .unwrap_or_else(|| rat_i(i64::from(u32::MAX)))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, TaylorError> {
        if self.num_z != rhs.num_z {
            return Err(TaylorError::ShapeMismatch(self.num_z, rhs.num_z));
        }
        if self.weight != rhs.weight && !self.is_zero() && !rhs.is_zero() {
            return Err(TaylorError::WeightMismatch(
                self.weight.clone(),
                rhs.weight.clone(),
            ));
        }
        let weight = if self.is_zero() {
            rhs.weight.clone()
        } else {
            self.weight.clone()
        };
        let max_degree = self.max_degree.min(rhs.max_degree);
        let mut coeffs = BTreeMap::new();
        for (alpha, s) in self.coeffs.iter().chain(rhs.coeffs.iter()) {
            if alpha_degree(alpha) > max_degree {
                continue;
            }
            match coeffs.remove(alpha) {
                None => {
                    coeffs.insert(alpha.clone(), s.clone());
                }
                Some(prev) => {
                    coeffs.insert(alpha.clone(), prev.add(s));
                }
            }
        }
        coeffs.retain(|_, s: &mut FourierSeries<T>| !s.is_zero());
        Ok(TaylorForm {
            weight,
            num_z: self.num_z,
            max_degree,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        TaylorForm {
            weight: self.weight.clone(),
            num_z: self.num_z,
            max_degree: self.max_degree,
            coeffs: self.coeffs.iter().map(|(a, s)| (a.clone(), s.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, TaylorError> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, TaylorError> {
        if self.num_z != rhs.num_z {
            return Err(TaylorError::ShapeMismatch(self.num_z, rhs.num_z));
        }
        let max_degree = self.max_degree.min(rhs.max_degree);
        let mut coeffs: BTreeMap<Vec<u32>, FourierSeries<T>> = BTreeMap::new();
        for (a1, s1) in &self.coeffs {
            for (a2, s2) in &rhs.coeffs {
                let alpha: Vec<u32> = a1.iter().zip(a2.iter()).map(|(x, y)| x + y).collect();
                if alpha_degree(&alpha) > max_degree {
                    continue;
                }
                let prod = s1.mul(s2);
                match coeffs.remove(&alpha) {
                    None => {
                        coeffs.insert(alpha, prod);
                    }
                    Some(prev) => {
                        coeffs.insert(alpha, prev.add(&prod));
                    }
                }
            }
        }
        coeffs.retain(|_, s| !s.is_zero());
        Ok(TaylorForm {
            weight: &self.weight + &rhs.weight,
            num_z: self.num_z,
            max_degree,
            coeffs,
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut coeffs: BTreeMap<Vec<u32>, FourierSeries<T>> = self
            .coeffs
            .iter()
            .map(|(a, s)| (a.clone(), s.scale(c)))
            .collect();
        coeffs.retain(|_, s| !s.is_zero());
        TaylorForm {
            weight: self.weight.clone(),
            num_z: self.num_z,
            max_degree: self.max_degree,
            coeffs,
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&T::from_rational(q))
    }

    pub fn pow(&self, e: u32) -> Result<Self, TaylorError> {
        let mut out = Self::constant_in_z(
            FourierSeries::constant(T::one(), self.min_trunc()),
            BigRational::zero(),
            self.num_z,
            self.max_degree,
        );
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Partial derivative with respect to z_j; weight rises by one, degree
    /// budget falls by one.
    pub fn dz(&self, j: usize) -> Result<Self, TaylorError> {
        if j >= self.num_z {
            return Err(TaylorError::BadIndex(j));
        }
        let max_degree = self.max_degree.saturating_sub(1);
        let mut coeffs = BTreeMap::new();
        for (alpha, s) in &self.coeffs {
            if alpha[j] == 0 {
                continue;
            }
            let mut a = alpha.clone();
            a[j] -= 1;
            if alpha_degree(&a) > max_degree {
                continue;
            }
            let scaled = s.scale(&T::from_rational(&rat_i(alpha[j] as i64)));
            coeffs.insert(a, scaled);
        }
        Ok(TaylorForm {
            weight: &self.weight + rat_i(1),
            num_z: self.num_z,
            max_degree,
            coeffs,
        })
    }

    /// Serre derivative in tau with respect to the declared weight; the
    /// alpha-coefficient carries weight k + |alpha|.
    pub fn serre_tau(&self) -> Self {
        let mut coeffs: BTreeMap<Vec<u32>, FourierSeries<T>> = BTreeMap::new();
        for (alpha, s) in &self.coeffs {
            let k = &self.weight + rat_i(alpha_degree(alpha) as i64);
            let d = qseries::serre_derivative(s, &k);
            if !d.is_zero() {
                coeffs.insert(alpha.clone(), d);
            }
        }
        TaylorForm {
            weight: &self.weight + rat_i(2),
            num_z: self.num_z,
            max_degree: self.max_degree,
            coeffs,
        }
    }

    /// Least |alpha| with a nonzero known coefficient.
    pub fn vanishing_order_z0(&self) -> VanishingOrder {
        match self.coeffs.keys().map(|a| alpha_degree(a)).min() {
            Some(d) => VanishingOrder::Exact(d),
            None => VanishingOrder::AtLeast(self.max_degree + 1),
        }
    }

    /// Solve for the scalar c with self = c * rhs, comparing every jointly
    /// known coefficient.  `None` if rhs is zero or no such scalar exists.
    pub fn proportional_scalar(&self, rhs: &Self) -> Option<T> {
        if self.num_z != rhs.num_z {
            return None;
        }
        let (alpha, series) = rhs.coeffs.iter().next()?;
        let (e, lead) = series.terms().into_iter().find(|(_, c)| !c.is_zero())?;
        let ours = self.coefficient(alpha)?.coefficient(&e)?;
        let c = ours.try_div(&lead)?;
        let scaled = rhs.scale(&c);
        // compare on the intersection of knowledge
        let max_degree = self.max_degree.min(rhs.max_degree);
        for (a, _) in self.coeffs.iter().chain(scaled.coeffs.iter()) {
            if alpha_degree(a) > max_degree {
                continue;
            }
            let x = self.coefficient(a)?;
            let y = scaled.coefficient(a)?;
            let t = x.truncation().clone().min(y.truncation().clone());
            if x.truncate_to(t.clone()) != y.truncate_to(t) {
                return None;
            }
        }
        Some(c)
    }

    /// Multiplicative inverse, available for at most one z-variable.
    pub fn try_inverse(&self) -> Result<Self, TaylorError> {
        if self.num_z > 1 {
            return Err(TaylorError::TooManyVariables);
        }
        let (j0, lead) = match self.coeffs.iter().next() {
            None => return Err(TaylorError::NoRoot("zero form".into())),
            Some((a, s)) => (alpha_degree(a), s.clone()),
        };
        if j0 != 0 {
            return Err(TaylorError::NoRoot(
                "positive z-valuation has no Taylor inverse".into(),
            ));
        }
        let lead_inv = lead
            .try_inverse()
            .ok_or_else(|| TaylorError::NoRoot("leading q-series not invertible".into()))?;
        // self = lead * (1 + u); invert the unit factor by a geometric
        // series in u, which has positive z-valuation.
        let unit = self
            .scale_series(&lead_inv)?
            .with_weight(BigRational::zero());
        let budget = unit.max_degree;
        let one = Self::constant_in_z(
            FourierSeries::constant(T::one(), unit.min_trunc()),
            BigRational::zero(),
            self.num_z,
            budget,
        );
        let u = unit.sub(&one).map_err(|_| TaylorError::NoRoot("unit".into()))?;
        let mut geo = one.clone();
        let mut term = one;
        for _ in 0..budget {
            term = term.mul(&u)?.neg();
            geo = geo.add(&term)?;
        }
        let out = geo.scale_series(&lead_inv)?.with_weight(-self.weight.clone());
        Ok(out)
    }

    /// Exact quotient, available for at most one z-variable; `self` must
    /// vanish along z = 0 to at least the order of `rhs`.
    pub fn try_div(&self, rhs: &Self) -> Result<Self, TaylorError> {
        if self.num_z > 1 || rhs.num_z > 1 {
            return Err(TaylorError::TooManyVariables);
        }
        let j0 = match rhs.coeffs.keys().next() {
            None => return Err(TaylorError::NoRoot("division by zero form".into())),
            Some(a) => alpha_degree(a),
        };
        if let VanishingOrder::Exact(d) = self.vanishing_order_z0() {
            if d < j0 {
                return Err(TaylorError::NoRoot(
                    "quotient would have a pole along z = 0".into(),
                ));
            }
        }
        let inv = rhs.shift_z(-(j0 as i64)).try_inverse()?;
        Ok(self
            .shift_z(-(j0 as i64))
            .mul(&inv)?
            .with_weight(&self.weight - &rhs.weight))
    }

    /// Exact n-th root, available for at most one z-variable; the leading
    /// z-coefficient must have an exact n-th root as a q-series.
    pub fn nth_root(&self, n: u32) -> Result<Self, TaylorError> {
        assert!(n > 0);
        if self.num_z > 1 {
            return Err(TaylorError::TooManyVariables);
        }
        let (j0, lead) = match self.coeffs.iter().next() {
            None => return Err(TaylorError::NoRoot("zero form".into())),
            Some((a, s)) => (alpha_degree(a), s.clone()),
        };
        if j0 % n != 0 {
            return Err(TaylorError::NoRoot(format!(
                "leading z-degree {} not divisible by {}",
                j0, n
            )));
        }
        let root_lead = lead
            .nth_root(n)
            .ok_or_else(|| TaylorError::NoRoot("leading q-series has no exact root".into()))?;
        let lead_inv = lead
            .try_inverse()
            .ok_or_else(|| TaylorError::NoRoot("leading q-series not invertible".into()))?;
        let unit = self
            .shift_z(-(j0 as i64))
            .scale_series(&lead_inv)?
            .with_weight(BigRational::zero());
        let budget = unit.max_degree;
        let one = Self::constant_in_z(
            FourierSeries::constant(T::one(), unit.min_trunc()),
            BigRational::zero(),
            self.num_z,
            budget,
        );
        let u = unit.sub(&one).map_err(|_| TaylorError::NoRoot("unit".into()))?;
        // (1+u)^{1/n} by the binomial series in the z-adically small u.
        let mut out = one.clone();
        let mut upow = one;
        let mut binom = BigRational::one();
        for j in 1..=budget as i64 {
            upow = upow.mul(&u)?;
            binom = binom * (BigRational::new(BigInt::one(), BigInt::from(n)) - rat_i(j - 1))
                / rat_i(j);
            out = out.add(&upow.scale_rational(&binom))?;
        }
        let mut root = out
            .mul(&Self::constant_in_z(
                root_lead,
                BigRational::zero(),
                self.num_z,
                budget,
            ))?
            .shift_z(j0 as i64 / n as i64);
        root.weight = &self.weight / rat_i(n as i64);
        Ok(root)
    }

    /// Replace the declared weight (used when rebuilding forms from unit
    /// factors whose intermediate weight bookkeeping is meaningless).
    fn with_weight(mut self, weight: BigRational) -> Self {
        self.weight = weight;
        self
    }

    /// Shift all z-exponents (single-variable only); negative shifts must not
    /// produce negative exponents.
    fn shift_z(&self, by: i64) -> Self {
        assert!(self.num_z <= 1);
        if self.num_z == 0 || by == 0 {
            return self.clone();
        }
        let mut coeffs = BTreeMap::new();
        for (a, s) in &self.coeffs {
            let e = a[0] as i64 + by;
            assert!(e >= 0, "negative z-exponent after shift");
            coeffs.insert(vec![e as u32], s.clone());
        }
        let max_degree = (self.max_degree as i64 + by).max(0) as u32;
        TaylorForm {
            weight: self.weight.clone(),
            num_z: self.num_z,
            max_degree,
            coeffs,
        }
    }

    /// Multiply every coefficient by a fixed q-series.
    fn scale_series(&self, f: &FourierSeries<T>) -> Result<Self, TaylorError> {
        let mut coeffs: BTreeMap<Vec<u32>, FourierSeries<T>> = self
            .coeffs
            .iter()
            .map(|(a, s)| (a.clone(), s.mul(f)))
            .collect();
        coeffs.retain(|_, s| !s.is_zero());
        Ok(TaylorForm {
            weight: self.weight.clone(),
            num_z: self.num_z,
            max_degree: self.max_degree,
            coeffs,
        })
    }
}

/// Result of the modular Jacobian: the determinant form and the input weights.
#[derive(Clone, Debug)]
pub struct JacobianResult<T: Coeff> {
    pub value: TaylorForm<T>,
    pub input_weights: Vec<BigRational>,
}

impl<T: Coeff> JacobianResult<T> {
    /// (n+1) + sum of input weights; asserted equal to the value's weight.
    pub fn expected_weight(&self) -> BigRational {
        let n1 = self.input_weights.len();
        self.input_weights
            .iter()
            .fold(rat_i(n1 as i64), |acc, k| acc + k)
    }
}

/// The modular Jacobian of n+1 forms with num_z = n-1: determinant of the
/// matrix with rows (k_i F_i; S F_i; dF_i/dz_j).
pub fn jacobian<T: Coeff>(forms: &[TaylorForm<T>]) -> Result<JacobianResult<T>, TaylorError> {
    let n1 = forms.len();
    if n1 < 2 {
        return Err(TaylorError::LengthMismatch(2, n1));
    }
    let num_z = forms[0].num_z();
    if num_z != n1 - 2 {
        return Err(TaylorError::LengthMismatch(num_z + 2, n1));
    }
    for f in forms {
        if f.num_z() != num_z {
            return Err(TaylorError::ShapeMismatch(num_z, f.num_z()));
        }
    }
    let mut rows: Vec<Vec<TaylorForm<T>>> = Vec::new();
    rows.push(
        forms
            .iter()
            .map(|f| f.scale_rational(f.weight()))
            .collect(),
    );
    rows.push(forms.iter().map(|f| f.serre_tau()).collect());
    for j in 0..num_z {
        rows.push(
            forms
                .iter()
                .map(|f| f.dz(j))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let value = det(&rows)?;
    Ok(JacobianResult {
        value,
        input_weights: forms.iter().map(|f| f.weight().clone()).collect(),
    })
}

/// Determinant by Laplace expansion along the first row.
fn det<T: Coeff>(mat: &[Vec<TaylorForm<T>>]) -> Result<TaylorForm<T>, TaylorError> {
    let n = mat.len();
    if n == 1 {
        return Ok(mat[0][0].clone());
    }
    let mut acc: Option<TaylorForm<T>> = None;
    for (col, entry) in mat[0].iter().enumerate() {
        let minor: Vec<Vec<TaylorForm<T>>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, f)| f.clone())
                    .collect()
            })
            .collect();
        let mut term = entry.mul(&det(&minor)?)?;
        if col % 2 == 1 {
            term = term.neg();
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.unwrap())
}

/// True iff the Jacobian of the forms has a nonzero coefficient within the
/// degree and truncation budget.  False is inconclusive.
pub fn independence_witness<T: Coeff>(forms: &[TaylorForm<T>]) -> Result<bool, TaylorError> {
    Ok(!jacobian(forms)?.value.is_zero())
}

// ---------------------------------------------------------------------------
// Fixtures.

#[derive(Deserialize)]
struct SeriesDoc {
    /// Named classical factors, e.g. [["eta", 12], ["E6", 1]].
    #[serde(default)]
    factors: Vec<(String, u32)>,
    /// Rational prefactor.
    #[serde(default)]
    scale: Option<String>,
    /// Formal constant symbols with exponents, e.g. [["etarho12", 1]].
    #[serde(default)]
    constants: Vec<(String, u32)>,
}

#[derive(Deserialize)]
struct TermDoc {
    alpha: Vec<u32>,
    series: SeriesDoc,
}

#[derive(Deserialize)]
struct TaylorDoc {
    weight: String,
    num_z: usize,
    terms: Vec<TermDoc>,
}

fn parse_rat(s: &str) -> Result<BigRational, TaylorError> {
    s.parse::<BigRational>()
        .map_err(|e| TaylorError::Fixture(format!("bad rational {:?}: {}", s, e)))
}

/// Load a Taylor fixture: the series of each term is a product of named
/// classical forms, an optional rational scale, and formal constant symbols.
pub fn load_taylor_form(
    path: &std::path::Path,
    order: u32,
    relations: Arc<RelationSet>,
) -> Result<TaylorForm<FormalPoly>, TaylorError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| TaylorError::Fixture(format!("{}: {}", path.display(), e)))?;
    let doc: TaylorDoc = serde_json::from_str(&text)
        .map_err(|e| TaylorError::Fixture(format!("{}: {}", path.display(), e)))?;
    let weight = parse_rat(&doc.weight)?;
    let mut terms = Vec::new();
    let mut max_degree = 0u32;
    for term in &doc.terms {
        let mut series: FourierSeries<BigRational> =
            FourierSeries::constant(BigRational::one(), rat_i(order as i64));
        for (name, power) in &term.series.factors {
            let f = qseries::named_form(name, order)
                .ok_or_else(|| TaylorError::Fixture(format!("unknown form {:?}", name)))?;
            series = series.mul(&f.series.pow(*power));
        }
        if let Some(s) = &term.series.scale {
            series = series.scale_rational(&parse_rat(s)?);
        }
        let mut formal: FourierSeries<FormalPoly> = series
            .map_rational()
            .expect("rational series maps into FormalPoly");
        for (sym, power) in &term.series.constants {
            let mut c = FormalPoly::one();
            for _ in 0..*power {
                c = c * FormalPoly::symbol_with(sym, relations.clone());
            }
            formal = formal.scale(&c);
        }
        max_degree = max_degree.max(alpha_degree(&term.alpha));
        terms.push((term.alpha.clone(), formal));
    }
    for t in &terms {
        if t.0.len() != doc.num_z {
            return Err(TaylorError::Fixture("alpha length != num_z".into()));
        }
    }
    Ok(TaylorForm::new(weight, doc.num_z, max_degree, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{delta, eisenstein, RationalSeries};

    fn e4_form(order: u32, num_z: usize, d: u32) -> TaylorForm<BigRational> {
        TaylorForm::constant_in_z(eisenstein(4, order), rat_i(4), num_z, d)
    }

    fn e6_form(order: u32, num_z: usize, d: u32) -> TaylorForm<BigRational> {
        TaylorForm::constant_in_z(eisenstein(6, order), rat_i(6), num_z, d)
    }

    #[test]
    fn mul_identity_and_degree() {
        let f = TaylorForm::new(
            rat_i(3),
            1,
            12,
            vec![(vec![3], delta(10))],
        );
        let one = TaylorForm::constant_in_z(
            RationalSeries::constant(BigRational::one(), rat_i(10)),
            BigRational::zero(),
            1,
            12,
        );
        assert_eq!(f.mul(&one).unwrap(), f);
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq.vanishing_order_z0(), VanishingOrder::Exact(6));
        assert_eq!(sq.weight(), &rat_i(6));
    }

    #[test]
    fn dz_and_serre() {
        let f = TaylorForm::new(rat_i(1), 2, 6, vec![(vec![2, 1], delta(8))]);
        let d0 = f.dz(0).unwrap();
        assert_eq!(
            d0.coefficient(&[1, 1]).unwrap(),
            delta(8).scale_rational(&rat_i(2))
        );
        assert_eq!(d0.weight(), &rat_i(2));
        // dz of a z-free form vanishes
        let c = e4_form(8, 2, 6);
        assert!(c.dz(0).unwrap().is_zero());
        // serre_tau at alpha=0 matches the scalar Serre derivative
        let s = e4_form(10, 0, 0).serre_tau();
        let expect = qseries::serre_derivative(&eisenstein(4, 10), &rat_i(4));
        assert_eq!(s.coefficient(&[]).unwrap(), expect);
        assert_eq!(s.weight(), &rat_i(6));
    }

    #[test]
    fn product_rule() {
        let f = TaylorForm::new(rat_i(2), 1, 8, vec![(vec![1], eisenstein(4, 8))]);
        let g = TaylorForm::new(rat_i(3), 1, 8, vec![(vec![2], delta(8))]);
        let lhs = f.mul(&g).unwrap().dz(0).unwrap();
        let rhs = f
            .dz(0)
            .unwrap()
            .mul(&g)
            .unwrap()
            .add(&f.mul(&g.dz(0).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rankin_cohen() {
        // jacobian(E4, E6) = det [[4E4, 6E6], [SE4, SE6]] = -3456 Delta
        let j = jacobian(&[e4_form(20, 0, 0), e6_form(20, 0, 0)]).unwrap();
        assert_eq!(j.value.weight(), &j.expected_weight());
        assert_eq!(j.expected_weight(), rat_i(12));
        let d = TaylorForm::constant_in_z(delta(20), rat_i(12), 0, 0);
        let c = j.value.proportional_scalar(&d).unwrap();
        assert_eq!(c, rat_i(-3456));
    }

    #[test]
    fn jacobian_alternating_and_scaling() {
        let f = TaylorForm::new(rat_i(2), 1, 8, vec![(vec![1], eisenstein(4, 10))]);
        let g = TaylorForm::new(rat_i(3), 1, 8, vec![(vec![2], delta(10))]);
        let h = e6_form(10, 1, 8);
        let j1 = jacobian(&[f.clone(), g.clone(), h.clone()]).unwrap().value;
        let j2 = jacobian(&[g.clone(), f.clone(), h.clone()]).unwrap().value;
        assert_eq!(j1, j2.neg());
        // duplicate input -> zero
        let jd = jacobian(&[f.clone(), f.clone(), h.clone()]).unwrap().value;
        assert!(jd.is_zero());
        // scalar multiple pulls out
        let j3 = jacobian(&[f.scale_rational(&rat_i(5)), g, h]).unwrap().value;
        assert_eq!(j3, j1.scale_rational(&rat_i(5)));
    }

    #[test]
    fn square_column_identity() {
        // jacobian(F1^2, F2, F3) = 2 F1 jacobian(F1, F2, F3)
        let f = TaylorForm::new(rat_i(2), 1, 12, vec![(vec![1], eisenstein(4, 10))]);
        let g = TaylorForm::new(rat_i(3), 1, 12, vec![(vec![2], delta(10))]);
        let h = e6_form(10, 1, 12);
        let lhs = jacobian(&[f.mul(&f).unwrap(), g.clone(), h.clone()])
            .unwrap()
            .value;
        let rhs = jacobian(&[f.clone(), g, h])
            .unwrap()
            .value
            .mul(&f)
            .unwrap()
            .scale_rational(&rat_i(2));
        let t = rhs.max_degree.min(lhs.max_degree);
        // compare on the joint budget
        let c = lhs.proportional_scalar(&rhs);
        assert_eq!(c, Some(BigRational::one()), "budget {}", t);
    }

    #[test]
    fn inverse_and_root() {
        let f = TaylorForm::new(
            rat_i(3),
            1,
            12,
            vec![
                (vec![3], delta(10)),
                (vec![9], delta(10).mul(&eisenstein(4, 10))),
            ],
        );
        let sq = f.mul(&f).unwrap();
        let back = sq.nth_root(2).unwrap();
        assert_eq!(back.proportional_scalar(&f), Some(BigRational::one()));
        // a positive-valuation form has no Taylor inverse, but exact division
        // by it is fine when the numerator vanishes at least as much
        assert!(f.try_inverse().is_err());
        let quot = sq.try_div(&f).unwrap();
        assert_eq!(quot.proportional_scalar(&f), Some(BigRational::one()));
        assert_eq!(quot.weight(), &rat_i(3));
        let g = TaylorForm::new(
            rat_i(4),
            1,
            8,
            vec![(vec![0], eisenstein(4, 10)), (vec![2], delta(10))],
        );
        let inv = g.try_inverse().unwrap();
        let prod = g.mul(&inv).unwrap();
        assert_eq!(prod.vanishing_order_z0(), VanishingOrder::Exact(0));
        let a0 = prod.coefficient(&[0]).unwrap();
        let t = a0.truncation().clone();
        assert_eq!(a0, RationalSeries::constant(BigRational::one(), t));
        for a in 1..=prod.max_degree() {
            assert!(prod.coefficient(&[a]).unwrap().is_zero());
        }
    }

    #[test]
    fn vanishing_orders() {
        let z = TaylorForm::<BigRational>::zero(rat_i(4), 1, 6);
        assert_eq!(z.vanishing_order_z0(), VanishingOrder::AtLeast(7));
        let f = TaylorForm::new(rat_i(3), 1, 12, vec![(vec![3], delta(6))]);
        assert_eq!(f.vanishing_order_z0(), VanishingOrder::Exact(3));
    }
}
