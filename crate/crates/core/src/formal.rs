//! Coefficient rings for truncated series.
//!
//! Series and Taylor expansions in this crate are generic over a coefficient
//! ring.  Two rings are provided: `BigRational` for purely numeric work, and
//! [`FormalPoly`], a commutative polynomial ring over Q in named symbols with
//! an optional set of rewrite rules (e.g. a symbol whose square is a rational
//! multiple of another monomial).  Rewrite rules let us keep track of constants
//! such as periods of CM points exactly without ever introducing floating
//! point.

use num::{BigRational, One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// A coefficient ring for truncated series: exact arithmetic, a map from Q,
/// exact division when possible, and a partial inverse map back to Q.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
{
    fn from_rational(q: &BigRational) -> Self;

    /// Exact division, `None` if `self` is not divisible by `rhs`.
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    /// `Some(q)` iff the element lies in the image of Q.
    fn as_rational(&self) -> Option<BigRational>;
}

impl Coeff for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

/// A monomial: sorted list of (symbol, exponent) with positive exponents.
pub type Monomial = Vec<(String, u32)>;

/// A rewrite rule `sym^power -> replacement`, applied greedily until no
/// monomial contains `sym` to a power `>= power`.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub symbol: String,
    pub power: u32,
    pub replacement: Vec<(Monomial, BigRational)>,
}

/// A set of rewrite rules shared by all polynomials in a computation.
/// Polynomials carrying *different* non-empty rule sets must never be mixed;
/// arithmetic panics in that case because the result would be ill-defined.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RelationSet {
    pub rules: Vec<RewriteRule>,
}

impl RelationSet {
    pub fn new(rules: Vec<RewriteRule>) -> Arc<Self> {
        Arc::new(RelationSet { rules })
    }
}

/// Element of Q[symbols] / relations.  Zero is the empty map.
#[derive(Clone, Debug)]
pub struct FormalPoly {
    terms: BTreeMap<Monomial, BigRational>,
    relations: Arc<RelationSet>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<String, u32> = BTreeMap::new();
    for (s, e) in a.iter().chain(b.iter()) {
        *out.entry(s.clone()).or_insert(0) += *e;
    }
    out.into_iter().collect()
}

impl FormalPoly {
    pub fn zero_with(relations: Arc<RelationSet>) -> Self {
        FormalPoly {
            terms: BTreeMap::new(),
            relations,
        }
    }

    pub fn constant(q: BigRational) -> Self {
        Self::constant_with(q, Arc::new(RelationSet::default()))
    }

    pub fn constant_with(q: BigRational, relations: Arc<RelationSet>) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), q);
        }
        FormalPoly { terms, relations }
    }

    pub fn symbol(name: &str) -> Self {
        Self::symbol_with(name, Arc::new(RelationSet::default()))
    }

    pub fn symbol_with(name: &str, relations: Arc<RelationSet>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(name.to_string(), 1)], BigRational::one());
        let mut p = FormalPoly { terms, relations };
        p.reduce();
        p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn relations(&self) -> &Arc<RelationSet> {
        &self.relations
    }

    /// Total degree of the polynomial, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|(_, e)| *e).sum())
            .max()
    }

    fn merged_relations(&self, rhs: &Self) -> Arc<RelationSet> {
        if self.relations.rules.is_empty() {
            return rhs.relations.clone();
        }
        if rhs.relations.rules.is_empty() || self.relations == rhs.relations {
            return self.relations.clone();
        }
        panic!("cannot mix formal polynomials with distinct relation sets");
    }

    /// Apply rewrite rules until no monomial matches any rule.
    fn reduce(&mut self) {
        if self.relations.rules.is_empty() {
            return;
        }
        loop {
            let mut hit = None;
            'outer: for (mono, _) in self.terms.iter() {
                for rule in &self.relations.rules {
                    if mono
                        .iter()
                        .any(|(s, e)| *s == rule.symbol && *e >= rule.power)
                    {
                        hit = Some((mono.clone(), rule.clone()));
                        break 'outer;
                    }
                }
            }
            let Some((mono, rule)) = hit else { break };
            let coeff = self.terms.remove(&mono).unwrap();
            // mono = sym^e * rest with e >= power; substitute sym^power.
            let mut rest: Monomial = Vec::new();
            for (s, e) in &mono {
                if *s == rule.symbol {
                    let r = e - rule.power;
                    if r > 0 {
                        rest.push((s.clone(), r));
                    }
                } else {
                    rest.push((s.clone(), *e));
                }
            }
            rest.sort();
            for (rm, rc) in &rule.replacement {
                let m = mono_mul(&rest, rm);
                let c = &coeff * rc;
                let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
                *entry += c;
                if entry.is_zero() {
                    // key lookup again to remove; cheap because maps are small
                    let m2 = mono_mul(&rest, rm);
                    self.terms.remove(&m2);
                }
            }
        }
    }
}

impl PartialEq for FormalPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl fmt::Display for FormalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{}", coeff)?;
                continue;
            }
            if !coeff.is_one() {
                write!(f, "{}*", coeff)?;
            }
            let mut mfirst = true;
            for (s, e) in mono {
                if !mfirst {
                    write!(f, "*")?;
                }
                mfirst = false;
                if *e == 1 {
                    write!(f, "{}", s)?;
                } else {
                    write!(f, "{}^{}", s, e)?;
                }
            }
        }
        Ok(())
    }
}

impl Add for FormalPoly {
    type Output = FormalPoly;
    fn add(self, rhs: FormalPoly) -> FormalPoly {
        let relations = self.merged_relations(&rhs);
        let mut terms = self.terms;
        for (m, c) in rhs.terms {
            let entry = terms.entry(m).or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        let mut p = FormalPoly { terms, relations };
        p.reduce();
        p
    }
}

impl Sub for FormalPoly {
    type Output = FormalPoly;
    fn sub(self, rhs: FormalPoly) -> FormalPoly {
        self + (-rhs)
    }
}

impl Neg for FormalPoly {
    type Output = FormalPoly;
    fn neg(self) -> FormalPoly {
        let terms = self.terms.into_iter().map(|(m, c)| (m, -c)).collect();
        FormalPoly {
            terms,
            relations: self.relations,
        }
    }
}

impl Mul for FormalPoly {
    type Output = FormalPoly;
    fn mul(self, rhs: FormalPoly) -> FormalPoly {
        let relations = self.merged_relations(&rhs);
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = mono_mul(m1, m2);
                let entry = terms.entry(m).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let mut p = FormalPoly { terms, relations };
        p.reduce();
        p
    }
}

impl Zero for FormalPoly {
    fn zero() -> Self {
        FormalPoly {
            terms: BTreeMap::new(),
            relations: Arc::new(RelationSet::default()),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for FormalPoly {
    fn one() -> Self {
        FormalPoly::constant(BigRational::one())
    }
}

impl Coeff for FormalPoly {
    fn from_rational(q: &BigRational) -> Self {
        FormalPoly::constant(q.clone())
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        // Only division by nonzero monomial multiples of rationals, plus the
        // trivial cases, is supported; that covers every use in this crate.
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(FormalPoly::zero_with(self.relations.clone()));
        }
        if rhs.terms.len() == 1 {
            let (dm, dc) = rhs.terms.iter().next().unwrap();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                // m must be divisible by dm
                let mut q: Monomial = Vec::new();
                let mut dmap: BTreeMap<&str, u32> =
                    dm.iter().map(|(s, e)| (s.as_str(), *e)).collect();
                for (s, e) in m {
                    match dmap.remove(s.as_str()) {
                        None => q.push((s.clone(), *e)),
                        Some(de) => {
                            if de > *e {
                                return None;
                            }
                            if *e > de {
                                q.push((s.clone(), e - de));
                            }
                        }
                    }
                }
                if !dmap.is_empty() {
                    return None;
                }
                terms.insert(q, c / dc);
            }
            let mut p = FormalPoly {
                terms,
                relations: self.merged_relations(rhs),
            };
            p.reduce();
            return Some(p);
        }
        None
    }

    fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Vec::new()) {
                return Some(c.clone());
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic() {
        let x = FormalPoly::symbol("x");
        let y = FormalPoly::symbol("y");
        let p = (x.clone() + y.clone()) * (x.clone() - y.clone());
        let q = x.clone() * x - y.clone() * y;
        assert_eq!(p, q);
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn rewrite_rule() {
        // e3l^2 -> -108 * Omega^6
        let rules = RelationSet::new(vec![RewriteRule {
            symbol: "e3l".into(),
            power: 2,
            replacement: vec![(vec![("Omega".into(), 6)], rat(-108, 1))],
        }]);
        let e3l = FormalPoly::symbol_with("e3l", rules.clone());
        let sq = e3l.clone() * e3l.clone();
        let expect = FormalPoly::constant_with(rat(-108, 1), rules.clone())
            * FormalPoly::symbol_with("Omega", rules.clone())
            .pow_for_test(6);
        assert_eq!(sq, expect);
        // cube reduces to -108 Omega^6 e3l
        let cube = sq * e3l.clone();
        assert_eq!(cube, expect2(&rules));
    }

    fn expect2(rules: &Arc<RelationSet>) -> FormalPoly {
        let mut terms = BTreeMap::new();
        terms.insert(
            vec![("Omega".into(), 6), ("e3l".into(), 1)],
            rat(-108, 1),
        );
        FormalPoly {
            terms,
            relations: rules.clone(),
        }
    }

    impl FormalPoly {
        fn pow_for_test(&self, n: u32) -> FormalPoly {
            let mut out = FormalPoly::one();
            for _ in 0..n {
                out = out * self.clone();
            }
            out
        }
    }

    #[test]
    fn division() {
        let x = FormalPoly::symbol("x");
        let y = FormalPoly::symbol("y");
        let p = x.clone() * y.clone() + x.clone() * x.clone() * y.clone();
        let d = x.clone() * y.clone();
        let q = p.try_div(&d).unwrap();
        assert_eq!(q, FormalPoly::one() + x.clone());
        assert!(p.try_div(&(x.clone() + y.clone())).is_none());
        assert_eq!(p.try_div(&FormalPoly::zero()), None);
    }

    #[test]
    fn rational_embedding() {
        let c = FormalPoly::constant(rat(3, 4));
        assert_eq!(c.as_rational(), Some(rat(3, 4)));
        assert_eq!(FormalPoly::symbol("x").as_rational(), None);
        assert_eq!(FormalPoly::zero().as_rational(), Some(rat(0, 1)));
    }
}
