//! Exact truncated q-expansions.
//!
//! A [`FourierSeries`] stores finitely many coefficients of a q-series with
//! rational exponents (fixed denominator) together with the exponent below
//! which the expansion is known to be complete.  All arithmetic tracks the
//! truncation order pessimistically, so a coefficient can be read off a result
//! only if it is provably correct.

use crate::formal::Coeff;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Truncated q-series with exponents `n / denom`, `n` an integer.
/// Coefficients with exponent `< trunc` are complete; exponents `>= trunc`
/// are unknown.  Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct FourierSeries<T: Coeff> {
    denom: u32,
    coeffs: BTreeMap<i64, T>,
    trunc: BigRational,
}

impl<T: Coeff> PartialEq for FourierSeries<T> {
    /// Equality of the mathematical objects: same truncation order and the
    /// same terms, independent of the exponent denominator used internally.
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc && self.terms() == other.terms()
    }
}

fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl<T: Coeff> FourierSeries<T> {
    /// The zero series, known up to (exclusive) order `trunc`.
    pub fn zero_to(trunc: BigRational) -> Self {
        FourierSeries {
            denom: 1,
            coeffs: BTreeMap::new(),
            trunc,
        }
    }

    /// Build a series from (exponent, coefficient) pairs.
    pub fn from_terms(terms: Vec<(BigRational, T)>, trunc: BigRational) -> Self {
        let mut denom: u32 = 1;
        for (e, _) in &terms {
            let d: u32 = e
                .denom()
                .try_into()
                .expect("exponent denominator out of range");
            denom = num::integer::lcm(denom, d);
        }
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() || e >= trunc {
                continue;
            }
            let scaled = &e * rat_i(denom as i64);
            assert!(scaled.is_integer());
            let n: i64 = scaled
                .to_integer()
                .try_into()
                .expect("exponent out of range");
            let slot = coeffs.entry(n).or_insert_with(T::zero);
            let prev = std::mem::replace(slot, T::zero());
            *slot = prev + c;
        }
        coeffs.retain(|_, c: &mut T| !c.is_zero());
        FourierSeries {
            denom,
            coeffs,
            trunc,
        }
    }

    /// The constant series `c`, known up to `trunc`.
    pub fn constant(c: T, trunc: BigRational) -> Self {
        Self::from_terms(vec![(BigRational::zero(), c)], trunc)
    }

    pub fn truncation(&self) -> &BigRational {
        &self.trunc
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    /// True if every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the lowest nonzero known term.
    pub fn valuation(&self) -> Option<BigRational> {
        self.coeffs
            .keys()
            .next()
            .map(|n| rat_i(*n) / rat_i(self.denom as i64))
    }

    /// Iterate over (exponent, coefficient) in increasing exponent order.
    pub fn terms(&self) -> Vec<(BigRational, T)> {
        self.coeffs
            .iter()
            .map(|(n, c)| (rat_i(*n) / rat_i(self.denom as i64), c.clone()))
            .collect()
    }

    /// Coefficient of `q^e`; `None` if `e >= trunc` (unknown).
    pub fn coefficient(&self, e: &BigRational) -> Option<T> {
        if *e >= self.trunc {
            return None;
        }
        let scaled = e * rat_i(self.denom as i64);
        if !scaled.is_integer() {
            return Some(T::zero());
        }
        let n: i64 = match scaled.to_integer().try_into() {
            Ok(n) => n,
            Err(_) => return Some(T::zero()),
        };
        Some(self.coeffs.get(&n).cloned().unwrap_or_else(T::zero))
    }

    fn rescale_denom(&self, denom: u32) -> Self {
        assert!(denom % self.denom == 0);
        let f = (denom / self.denom) as i64;
        FourierSeries {
            denom,
            coeffs: self.coeffs.iter().map(|(n, c)| (n * f, c.clone())).collect(),
            trunc: self.trunc.clone(),
        }
    }

    fn drop_unknown(mut self) -> Self {
        let d = self.denom as i64;
        let t = self.trunc.clone();
        self.coeffs.retain(|n, c| !c.is_zero() && rat_i(*n) / rat_i(d) < t);
        self
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let denom = num::integer::lcm(self.denom, rhs.denom);
        let a = self.rescale_denom(denom);
        let b = rhs.rescale_denom(denom);
        let mut coeffs = a.coeffs;
        for (n, c) in b.coeffs {
            let slot = coeffs.entry(n).or_insert_with(T::zero);
            let prev = std::mem::replace(slot, T::zero());
            *slot = prev + c;
        }
        let trunc = self.trunc.clone().min(rhs.trunc.clone());
        FourierSeries {
            denom,
            coeffs,
            trunc,
        }
        .drop_unknown()
    }

    pub fn neg(&self) -> Self {
        FourierSeries {
            denom: self.denom,
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, c)| (*n, -c.clone()))
                .collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let denom = num::integer::lcm(self.denom, rhs.denom);
        let a = self.rescale_denom(denom);
        let b = rhs.rescale_denom(denom);
        // trunc = min(t1 + v2, t2 + v1); an empty factor contributes its
        // truncation as valuation (everything below it is genuinely zero).
        let v1 = a.valuation().unwrap_or_else(|| a.trunc.clone());
        let v2 = b.valuation().unwrap_or_else(|| b.trunc.clone());
        let trunc = (a.trunc.clone() + v2).min(b.trunc.clone() + v1);
        let mut coeffs: BTreeMap<i64, T> = BTreeMap::new();
        for (n1, c1) in &a.coeffs {
            for (n2, c2) in &b.coeffs {
                let n = n1 + n2;
                if rat_i(n) / rat_i(denom as i64) >= trunc {
                    continue;
                }
                let slot = coeffs.entry(n).or_insert_with(T::zero);
                let prev = std::mem::replace(slot, T::zero());
                *slot = prev + c1.clone() * c2.clone();
            }
        }
        FourierSeries {
            denom,
            coeffs,
            trunc,
        }
        .drop_unknown()
    }

    pub fn scale(&self, c: &T) -> Self {
        FourierSeries {
            denom: self.denom,
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, x)| (*n, x.clone() * c.clone()))
                .collect(),
            trunc: self.trunc.clone(),
        }
        .drop_unknown()
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&T::from_rational(q))
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::constant(T::one(), self.trunc.clone());
        }
        let mut out = self.clone();
        for _ in 1..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitute q -> q^m (i.e. tau -> m*tau).
    pub fn rescale_variable(&self, m: u32) -> Self {
        assert!(m > 0);
        let m_i = m as i64;
        FourierSeries {
            denom: self.denom,
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, c)| (n * m_i, c.clone()))
                .collect(),
            trunc: &self.trunc * rat_i(m_i),
        }
    }

    /// The operator theta = q d/dq.
    pub fn theta(&self) -> Self {
        let d = self.denom as i64;
        FourierSeries {
            denom: self.denom,
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, c)| (*n, c.clone() * T::from_rational(&rat(*n, d))))
                .collect(),
            trunc: self.trunc.clone(),
        }
        .drop_unknown()
    }

    /// Multiplicative inverse; `None` if the leading coefficient is not
    /// invertible or the series is zero.
    pub fn try_inverse(&self) -> Option<Self> {
        let v = self.valuation()?;
        let lead = self.coefficient(&v).unwrap();
        let lead_inv = T::one().try_div(&lead)?;
        // self = lead q^v (1 + u); inverse = lead^-1 q^-v sum (-u)^j.
        let shifted = self.shift_and_scale(&-v.clone(), &lead_inv, &(&self.trunc - &v));
        let one = Self::constant(T::one(), shifted.trunc.clone());
        let u = shifted.sub(&one);
        let mut geo = one.clone();
        if let Some(uv) = u.valuation() {
            let mut term = one;
            let mut acc = uv.clone();
            while acc < shifted.trunc {
                term = term.mul(&u).neg();
                geo = geo.add(&term);
                acc += &uv;
            }
        }
        let trunc = &shifted.trunc - &v;
        Some(geo.shift_and_scale(&-v, &lead_inv, &trunc))
    }

    fn shift_and_scale(&self, shift: &BigRational, c: &T, trunc: &BigRational) -> Self {
        let d: u32 = shift
            .denom()
            .try_into()
            .expect("shift denominator out of range");
        let denom = num::integer::lcm(self.denom, d);
        let a = self.rescale_denom(denom);
        let sn: i64 = (shift * rat_i(denom as i64))
            .to_integer()
            .try_into()
            .expect("shift out of range");
        FourierSeries {
            denom,
            coeffs: a
                .coeffs
                .iter()
                .map(|(n, x)| (n + sn, x.clone() * c.clone()))
                .collect(),
            trunc: trunc.clone(),
        }
        .drop_unknown()
    }

    /// Exact n-th root with the leading coefficient a perfect n-th power in Q.
    /// Returns `None` if no such root exists in the coefficient ring.
    pub fn nth_root(&self, n: u32) -> Option<Self> {
        assert!(n > 0);
        if n == 1 {
            return Some(self.clone());
        }
        let v = self.valuation()?;
        let lead = self.coefficient(&v).unwrap();
        let lead_q = lead.as_rational()?;
        let root_q = rational_nth_root(&lead_q, n)?;
        let root_lead = T::from_rational(&root_q);
        let lead_inv = T::one().try_div(&lead)?;
        let shifted = self.shift_and_scale(&(-v.clone()), &lead_inv, &(&self.trunc - &v));
        // shifted = 1 + u; (1+u)^{1/n} via binomial series.
        let one = Self::constant(T::one(), shifted.trunc.clone());
        let u = shifted.sub(&one);
        let mut out = one.clone();
        if let Some(uv) = u.valuation() {
            let mut upow = one.clone();
            let mut binom = BigRational::one();
            let mut acc = BigRational::zero();
            let mut j: i64 = 0;
            loop {
                acc += &uv;
                j += 1;
                if acc >= shifted.trunc {
                    break;
                }
                upow = upow.mul(&u);
                // binom(1/n, j) = binom(1/n, j-1) * (1/n - (j-1)) / j
                binom = binom * (rat(1, n as i64) - rat_i(j - 1)) / rat_i(j);
                out = out.add(&upow.scale_rational(&binom));
            }
        }
        let root_v = &v / rat_i(n as i64);
        Some(out.shift_and_scale(&root_v, &root_lead, &(&shifted.trunc + &root_v)))
    }

    /// Map coefficients into another ring through Q; requires all coefficients
    /// to be rational.
    pub fn map_rational<U: Coeff>(&self) -> Option<FourierSeries<U>> {
        let mut coeffs = BTreeMap::new();
        for (n, c) in &self.coeffs {
            let q = c.as_rational()?;
            coeffs.insert(*n, U::from_rational(&q));
        }
        Some(FourierSeries {
            denom: self.denom,
            coeffs,
            trunc: self.trunc.clone(),
        })
    }
}

impl<T: Coeff> fmt::Display for FourierSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "O(q^{})", self.trunc)?;
            return Ok(());
        }
        for (i, (n, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let e = rat_i(*n) / rat_i(self.denom as i64);
            if e.is_zero() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*q^{}", c, e)?;
            }
        }
        write!(f, " + O(q^{})", self.trunc)
    }
}

/// n-th root of a rational number if it exists in Q.
pub fn rational_nth_root(q: &BigRational, n: u32) -> Option<BigRational> {
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    if q.is_negative() && n % 2 == 0 {
        return None;
    }
    let num = q.numer().abs();
    let den = q.denom().abs();
    let rn = int_nth_root(&num, n)?;
    let rd = int_nth_root(&den, n)?;
    let mut out = BigRational::new(rn, rd);
    if q.is_negative() {
        out = -out;
    }
    Some(out)
}

fn int_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let r = x.nth_root(n);
    if num::pow::pow(r.clone(), n as usize) == *x {
        Some(r)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Classical series over Q.

pub type RationalSeries = FourierSeries<BigRational>;

/// Dedekind eta: q^{1/24} prod (1-q^n), via the pentagonal number theorem.
pub fn eta(order: u32) -> RationalSeries {
    let trunc = rat_i(order as i64);
    let mut terms = Vec::new();
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for (i, kk) in [k, -k].into_iter().enumerate() {
            if i == 1 && k == 0 {
                continue;
            }
            let e = rat(1 + 12 * kk * (3 * kk - 1), 24);
            if e < trunc {
                any = true;
                let sign = if kk.rem_euclid(2) == 0 { 1 } else { -1 };
                terms.push((e, rat_i(sign)));
            }
        }
        if !any && k > 0 {
            break;
        }
        k += 1;
    }
    FourierSeries::from_terms(terms, trunc)
}

fn bernoulli(k: u32) -> BigRational {
    // B_0 .. B_k via the standard recurrence, convention B_1 = -1/2.
    let mut b = vec![BigRational::zero(); (k + 1) as usize];
    for m in 0..=k as usize {
        // sum_{j=0}^{m} binom(m+1, j) B_j = 0 for m >= 1; B_0 = 1.
        if m == 0 {
            b[0] = BigRational::one();
            continue;
        }
        let mut s = BigRational::zero();
        let mut binom = BigRational::one(); // binom(m+1, 0)
        for (j, bj) in b.iter().enumerate().take(m) {
            s += &binom * bj;
            let mp1 = (m + 1) as i64;
            let jj = j as i64;
            binom = binom * rat_i(mp1 - jj) / rat_i(jj + 1);
        }
        b[m] = -s / rat_i((m + 1) as i64);
    }
    b[k as usize].clone()
}

fn sigma(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    for d in 1..=n {
        if n % d == 0 {
            s += num::pow::pow(BigInt::from(d), k as usize);
        }
    }
    s
}

/// Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
pub fn eisenstein(k: u32, order: u32) -> RationalSeries {
    assert!(k >= 2 && k % 2 == 0);
    let factor = -rat_i(2 * k as i64) / bernoulli(k);
    let trunc = rat_i(order as i64);
    let mut terms = vec![(BigRational::zero(), BigRational::one())];
    for n in 1..order as u64 {
        let c = &factor * BigRational::from_integer(sigma(n, k - 1));
        terms.push((rat_i(n as i64), c));
    }
    FourierSeries::from_terms(terms, trunc)
}

/// The discriminant Delta = eta^24.
pub fn delta(order: u32) -> RationalSeries {
    eta(order).pow(24)
}

/// Serre derivative of a weight-k form: S_k f = theta f - (k/12) E2 f.
pub fn serre_derivative<T: Coeff>(f: &FourierSeries<T>, weight: &BigRational) -> FourierSeries<T> {
    let order = f
        .truncation()
        .ceil()
        .to_integer()
        .try_into()
        .unwrap_or(0u32)
        .max(1);
    let e2: FourierSeries<T> = eisenstein(2, order)
        .map_rational()
        .expect("rational series maps into any ring");
    let corr = f.mul(&e2).scale_rational(&(weight / rat_i(12)));
    f.theta().sub(&corr)
}

/// chi_{-3}(d)
fn chi3(d: u64) -> i64 {
    match d % 3 {
        1 => 1,
        2 => -1,
        _ => 0,
    }
}

/// e2 = 2 E2(2 tau) - E2(tau) = 1 + 24q + 24q^2 + 96q^3 + ...
pub fn e2_level2(order: u32) -> RationalSeries {
    let e2 = eisenstein(2, order);
    e2.rescale_variable(2)
        .scale_rational(&rat_i(2))
        .sub(&e2)
        // rescaling doubles the truncation; cut back so both inputs agree
        .truncate_to(rat_i(order as i64))
}

/// e4 = E4(2 tau) = 1 + 240 q^2 + ...
pub fn e4_level2(order: u32) -> RationalSeries {
    eisenstein(4, order).rescale_variable(2).truncate_to(rat_i(order as i64))
}

/// Weight-3 form on Gamma_0(3): e3 = 2b - a^3 = 1 - 36q - 54q^2 - ...
/// with a = 1 + 6 sum (sum_{d|n} chi_{-3}(d)) q^n and
/// b = 1 - 9 sum (sum_{d|n} chi_{-3}(d) d^2) q^n.
pub fn e3_level3(order: u32) -> RationalSeries {
    let trunc = rat_i(order as i64);
    let mut a_terms = vec![(BigRational::zero(), BigRational::one())];
    let mut b_terms = vec![(BigRational::zero(), BigRational::one())];
    for n in 1..order as u64 {
        let mut sa: i64 = 0;
        let mut sb: i64 = 0;
        for d in 1..=n {
            if n % d == 0 {
                sa += chi3(d);
                sb += chi3(d) * (d * d) as i64;
            }
        }
        a_terms.push((rat_i(n as i64), rat_i(6 * sa)));
        b_terms.push((rat_i(n as i64), rat_i(-9 * sb)));
    }
    let a = FourierSeries::from_terms(a_terms, trunc.clone());
    let b = FourierSeries::from_terms(b_terms, trunc);
    b.scale_rational(&rat_i(2)).sub(&a.pow(3))
}

/// s6 = eta(tau)^6 eta(3 tau)^6 = q - 6q^2 + 9q^3 + ...
pub fn s6_level3(order: u32) -> RationalSeries {
    let e = eta(order);
    e.pow(6).mul(&e.rescale_variable(3).pow(6)).truncate_to(rat_i(order as i64))
}

impl<T: Coeff> FourierSeries<T> {
    /// Forget knowledge above `trunc` (no-op if already smaller).
    pub fn truncate_to(&self, trunc: BigRational) -> Self {
        if self.trunc <= trunc {
            return self.clone();
        }
        FourierSeries {
            denom: self.denom,
            coeffs: self.coeffs.clone(),
            trunc,
        }
        .drop_unknown()
    }
}

/// A named classical form: series plus weight.
pub struct NamedForm {
    pub name: String,
    pub weight: BigRational,
    pub series: RationalSeries,
}

/// Look up a classical q-series by name.  Supported names: `eta`, `Delta`,
/// `E2`, `E4`, `E6`, ... (any even Eisenstein weight up to 30), `e2`, `e4`,
/// `e3`, `s6`.
pub fn named_form(name: &str, order: u32) -> Option<NamedForm> {
    let (weight, series) = match name {
        "eta" => (rat(1, 2), eta(order)),
        "Delta" => (rat_i(12), delta(order)),
        "e2" => (rat_i(2), e2_level2(order)),
        "e4" => (rat_i(4), e4_level2(order)),
        "e3" => (rat_i(3), e3_level3(order)),
        "s6" => (rat_i(6), s6_level3(order)),
        _ => {
            let k: u32 = name.strip_prefix('E')?.parse().ok()?;
            if k < 2 || k % 2 != 0 || k > 30 {
                return None;
            }
            (rat_i(k as i64), eisenstein(k, order))
        }
    };
    Some(NamedForm {
        name: name.to_string(),
        weight,
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff(f: &RationalSeries, n: i64) -> BigRational {
        f.coefficient(&rat_i(n)).unwrap()
    }

    #[test]
    fn eisenstein_leading_coeffs() {
        let e2 = eisenstein(2, 5);
        assert_eq!(coeff(&e2, 0), rat_i(1));
        assert_eq!(coeff(&e2, 1), rat_i(-24));
        assert_eq!(coeff(&e2, 2), rat_i(-72));
        assert_eq!(coeff(&e2, 3), rat_i(-96));
        let e4 = eisenstein(4, 3);
        assert_eq!(coeff(&e4, 1), rat_i(240));
        assert_eq!(coeff(&e4, 2), rat_i(2160));
        let e6 = eisenstein(6, 2);
        assert_eq!(coeff(&e6, 1), rat_i(-504));
    }

    #[test]
    fn delta_and_eta() {
        let d = delta(6);
        assert_eq!(coeff(&d, 1), rat_i(1));
        assert_eq!(coeff(&d, 2), rat_i(-24));
        assert_eq!(coeff(&d, 3), rat_i(252));
        assert_eq!(coeff(&d, 4), rat_i(-1472));
        assert_eq!(coeff(&d, 5), rat_i(4830));
        // eta has fractional exponents with denominator 24
        let e = eta(3);
        assert_eq!(e.coefficient(&rat(1, 24)).unwrap(), rat_i(1));
        assert_eq!(e.coefficient(&rat(25, 24)).unwrap(), rat_i(-1));
        assert_eq!(e.coefficient(&rat(49, 24)).unwrap(), rat_i(-1));
    }

    #[test]
    fn modular_identities() {
        let n = 12;
        let e4 = eisenstein(4, n);
        let e6 = eisenstein(6, n);
        let d = delta(n);
        let lhs = e4.pow(3).sub(&e6.pow(2));
        assert_eq!(lhs, d.scale_rational(&rat_i(1728)).truncate_to(lhs.truncation().clone()));
    }

    #[test]
    fn serre_derivatives() {
        let n = 10;
        let e4 = eisenstein(4, n);
        let e6 = eisenstein(6, n);
        let s = serre_derivative(&e4, &rat_i(4));
        let expect = e6.scale_rational(&rat(-1, 3)).truncate_to(s.truncation().clone());
        assert_eq!(s, expect);
        let s6 = serre_derivative(&e6, &rat_i(6));
        let expect6 = e4.pow(2).scale_rational(&rat(-1, 2)).truncate_to(s6.truncation().clone());
        assert_eq!(s6, expect6);
        // theta Delta = E2 Delta
        let d = delta(n);
        let sd = serre_derivative(&d, &rat_i(12));
        assert!(sd.truncate_to(rat_i(5)).is_zero());
    }

    #[test]
    fn level_forms() {
        let e2 = e2_level2(4);
        assert_eq!(coeff(&e2, 0), rat_i(1));
        assert_eq!(coeff(&e2, 1), rat_i(24));
        assert_eq!(coeff(&e2, 2), rat_i(24));
        assert_eq!(coeff(&e2, 3), rat_i(96));
        let e4 = e4_level2(4);
        assert_eq!(coeff(&e4, 0), rat_i(1));
        assert_eq!(coeff(&e4, 1), rat_i(0));
        assert_eq!(coeff(&e4, 2), rat_i(240));
        let e3 = e3_level3(3);
        assert_eq!(coeff(&e3, 0), rat_i(1));
        assert_eq!(coeff(&e3, 1), rat_i(-36));
        assert_eq!(coeff(&e3, 2), rat_i(-54));
        let s6 = s6_level3(4);
        assert_eq!(coeff(&s6, 1), rat_i(1));
        assert_eq!(coeff(&s6, 2), rat_i(-6));
        assert_eq!(coeff(&s6, 3), rat_i(9));
    }

    #[test]
    fn inverse_and_roots() {
        let d = delta(8);
        let inv = d.try_inverse().unwrap();
        let prod = d.mul(&inv);
        let one = RationalSeries::constant(BigRational::one(), prod.truncation().clone());
        assert_eq!(prod, one);
        // eta = Delta^{1/24}
        let root = d.nth_root(24).unwrap();
        let e = eta(8).truncate_to(root.truncation().clone());
        assert_eq!(root, e.truncate_to(root.truncation().clone()));
        // no rational square root of 2 + ...
        let f = RationalSeries::constant(rat_i(2), rat_i(4));
        assert!(f.nth_root(2).is_none());
    }

    #[test]
    fn truncation_bookkeeping() {
        let a = eisenstein(4, 5);
        let b = delta(8);
        let p = a.mul(&b);
        // trunc = min(5 + 1, 8 + 0) = 6
        assert_eq!(p.truncation(), &rat_i(6));
        assert_eq!(p.coefficient(&rat_i(6)), None);
        // full convolution: sum E4[k] Delta[5-k]
        assert_eq!(
            coeff(&p, 5),
            rat_i(4830)
                + rat_i(240) * rat_i(-1472)
                + rat_i(2160) * rat_i(252)
                + rat_i(6720) * rat_i(-24)
                + rat_i(17520)
        );
    }

    #[test]
    fn registry() {
        for (name, wt) in [
            ("eta", rat(1, 2)),
            ("E2", rat_i(2)),
            ("E4", rat_i(4)),
            ("E6", rat_i(6)),
            ("Delta", rat_i(12)),
            ("e2", rat_i(2)),
            ("e4", rat_i(4)),
            ("e3", rat_i(3)),
            ("s6", rat_i(6)),
        ] {
            let f = named_form(name, 4).unwrap();
            assert_eq!(f.weight, wt, "weight of {}", name);
        }
        assert!(named_form("E5", 4).is_none());
        assert!(named_form("bogus", 4).is_none());
    }
}
