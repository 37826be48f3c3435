//! Exact arithmetic in imaginary quadratic fields F = Q(√d).
//!
//! Elements are stored in the ζ-basis `a + b·ζ` with ζ = (D + √D)/2,
//! where D is the field discriminant (D = d for d ≡ 1 mod 4, else 4d).
//! ζ satisfies ζ² − D·ζ + (D² − D)/4 = 0, and the ring of integers is
//! O_F = Z + Zζ.  √D, √d, ω and i are derived constants in this basis.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("d must be a square-free negative integer, got {0}")]
    BadDiscriminant(i64),
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(i64, i64),
    #[error("cannot parse {0:?} as a field element: {1}")]
    Parse(String, String),
}

/// The imaginary quadratic field Q(√d) for square-free d < 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    d: i64,
    disc: i64,
    unit_order: u8,
}

/// d values with class number one; content/primitivity computations in
/// the lattice module are only valid over these.
pub const CLASS_NUMBER_ONE: [i64; 9] = [-1, -2, -3, -7, -11, -19, -43, -67, -163];

fn is_squarefree(n: i64) -> bool {
    let mut m = n.abs();
    let mut p = 2;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        while m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<Self, FieldError> {
        if d >= 0 || !is_squarefree(d) {
            return Err(FieldError::BadDiscriminant(d));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let unit_order = match d {
            -1 => 4,
            -3 => 6,
            _ => 2,
        };
        Ok(QuadraticField { d, disc, unit_order })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Field discriminant D.
    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn unit_order(&self) -> u8 {
        self.unit_order
    }

    pub fn has_class_number_one(&self) -> bool {
        CLASS_NUMBER_ONE.contains(&self.d)
    }

    /// Norm of ζ, the integer (D² − D)/4.
    pub fn zeta_norm(&self) -> i64 {
        (self.disc * self.disc - self.disc) / 4
    }

    pub fn zero(&self) -> FieldElement {
        self.elem_i64(0, 0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem_i64(1, 0)
    }

    pub fn elem(&self, a: BigRational, b: BigRational) -> FieldElement {
        FieldElement { field: *self, a, b }
    }

    pub fn elem_i64(&self, a: i64, b: i64) -> FieldElement {
        self.elem(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn from_rational(&self, a: BigRational) -> FieldElement {
        self.elem(a, BigRational::zero())
    }

    /// ζ itself.
    pub fn zeta(&self) -> FieldElement {
        self.elem_i64(0, 1)
    }

    /// √D = 2ζ − D.
    pub fn sqrt_disc(&self) -> FieldElement {
        self.elem_i64(-self.disc, 2)
    }

    /// √d; equals √D for d ≡ 1 mod 4, otherwise ζ − 2d.
    pub fn sqrt_d(&self) -> FieldElement {
        if self.disc == self.d {
            self.sqrt_disc()
        } else {
            self.elem_i64(-2 * self.d, 1)
        }
    }

    /// The second Z-module generator used for trace-lattice coordinates:
    /// ω_d = (1+√d)/2 for d ≡ 1 mod 4, ω_d = √d otherwise.  {1, ω_d} is a
    /// Z-basis of O_F in either case.
    pub fn omega_z(&self) -> FieldElement {
        if self.disc == self.d {
            self.elem_i64((1 - self.disc) / 2, 1)
        } else {
            self.sqrt_d()
        }
    }

    /// A generator of the unit group: i for d=−1, ω=e^{πi/3} for d=−3, −1 otherwise.
    pub fn unit_generator(&self) -> FieldElement {
        match self.d {
            // ζ = −2+i, so i = ζ+2; ζ = ω−2, so ω = ζ+2.
            -1 | -3 => self.elem_i64(2, 1),
            _ => self.elem_i64(-1, 0),
        }
    }

    /// All of O_F^×, starting with 1, in power order of the generator.
    pub fn units(&self) -> Vec<UnitElement> {
        let g = self.unit_generator();
        let mut out = Vec::new();
        let mut u = self.one();
        loop {
            out.push(UnitElement::new(u.clone()).expect("unit closure"));
            u = &u * &g;
            if u == self.one() {
                break;
            }
        }
        assert_eq!(out.len(), self.unit_order as usize);
        out
    }
}

/// An element a + b·ζ of F with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: QuadraticField,
    a: BigRational,
    b: BigRational,
}

impl FieldElement {
    pub fn field(&self) -> QuadraticField {
        self.field
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if b = 0.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conjugate(&self) -> FieldElement {
        // conj(a + bζ) = (a + bD) − bζ since ζ + ζ̄ = D.
        let d = BigRational::from_integer(self.field.disc.into());
        self.field.elem(&self.a + &self.b * d, -self.b.clone())
    }

    pub fn trace(&self) -> BigRational {
        let d = BigRational::from_integer(self.field.disc.into());
        BigRational::from_integer(2.into()) * &self.a + &self.b * d
    }

    pub fn norm(&self) -> BigRational {
        let n = self * &self.conjugate();
        debug_assert!(n.b.is_zero());
        n.a
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Membership in the inverse different D_F⁻¹ = (1/√D)·O_F.
    pub fn in_inverse_different(&self) -> bool {
        (self * &self.field.sqrt_disc()).is_integral()
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(self.field.elem(c.a / &n, c.b / &n))
    }

    /// Coordinates (u, v) with self = u + v·ω_d in the {1, ω_d} basis.
    pub fn omega_coords(&self) -> (BigRational, BigRational) {
        // ω_d = c0 + ζ with integer c0, so a + bζ = (a − b·c0) + b·ω_d.
        let c0 = self.field.omega_z().a;
        (&self.a - &self.b * &c0, self.b.clone())
    }

    /// Lexicographic key used for canonical unit representatives.
    pub fn lex_key(&self) -> (BigRational, BigRational) {
        (self.a.clone(), self.b.clone())
    }
}

/// True iff y/x ∈ O_F.  Requires x ≠ 0 and both arguments integral.
pub fn divides(x: &FieldElement, y: &FieldElement) -> Result<bool, FieldError> {
    if x.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    debug_assert!(x.is_integral() && y.is_integral());
    Ok((y * &x.inv()?).is_integral())
}

/// A unit of O_F together with its multiplicative order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitElement {
    value: FieldElement,
    order: u8,
}

impl UnitElement {
    pub fn new(value: FieldElement) -> Option<UnitElement> {
        if !value.is_integral() || !value.norm().is_one() {
            return None;
        }
        let one = value.field().one();
        let mut p = value.clone();
        let mut order = 1u8;
        while p != one {
            p = &p * &value;
            order += 1;
            if order > 6 {
                return None;
            }
        }
        Some(UnitElement { value, order })
    }

    pub fn value(&self) -> &FieldElement {
        &self.value
    }

    pub fn order(&self) -> u8 {
        self.order
    }
}

fn check_same_field(x: &FieldElement, y: &FieldElement) {
    assert_eq!(
        x.field, y.field,
        "field mismatch: d={} vs d={}",
        x.field.d, y.field.d
    );
}

impl<'a> Add for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        check_same_field(self, rhs);
        self.field.elem(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        check_same_field(self, rhs);
        self.field.elem(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        check_same_field(self, rhs);
        // (a+bζ)(c+eζ) with ζ² = Dζ − (D²−D)/4.
        let disc = BigRational::from_integer(self.field.disc.into());
        let n0 = BigRational::from_integer(self.field.zeta_norm().into());
        let be = &self.b * &rhs.b;
        let a = &self.a * &rhs.a - &be * n0;
        let b = &self.a * &rhs.b + &self.b * &rhs.a + be * disc;
        self.field.elem(a, b)
    }
}

impl<'a> Div for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        self * &rhs.inv().expect("division by zero field element")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.elem(-self.a.clone(), -self.b.clone())
    }
}

macro_rules! forward_owned_binop {
    ($($t:ident :: $m:ident),*) => {$(
        impl $t for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned_binop!(Add::add, Sub::sub, Mul::mul, Div::div);

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*z", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}{}*z", self.a, self.b)
        } else {
            write!(f, "{}+{}*z", self.a, self.b)
        }
    }
}

// ---------------------------------------------------------------------------
// Expression parser for fixture entries.
//
// Grammar:  expr := term (('+'|'-') term)* ;  term := factor (('*'|'/') factor)* ;
//           factor := rational | 'i' | 'w' | 'z' | 'sd' | '(' expr ')' | '-' factor
// where sd = √d, z = ζ, i (d=−1 only) and w = e^{πi/3} (d=−3 only).
// ---------------------------------------------------------------------------

struct Parser<'a> {
    field: QuadraticField,
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> FieldError {
        FieldError::Parse(self.src.to_string(), format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<FieldElement, FieldError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement, FieldError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                b'/' => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = &acc / &rhs;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FieldElement, FieldError> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_digit())
                {
                    self.pos += 1;
                }
                let n: BigInt = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| self.err("bad integer"))?;
                Ok(self.field.from_rational(BigRational::from_integer(n)))
            }
            Some(b's') => {
                if self.src[self.pos..].starts_with("sd") {
                    self.pos += 2;
                    Ok(self.field.sqrt_d())
                } else {
                    Err(self.err("unknown symbol"))
                }
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(self.field.zeta())
            }
            Some(b'i') if self.field.d() == -1 => {
                self.pos += 1;
                Ok(self.field.elem_i64(2, 1))
            }
            Some(b'w') if self.field.d() == -3 => {
                self.pos += 1;
                Ok(self.field.elem_i64(2, 1))
            }
            Some(_) => Err(self.err("unexpected character")),
        }
    }
}

/// Parse a fixture entry like `"1/2"`, `"(1+i)/2"`, `"sd/3"` or `"(1-sd)/2"`.
pub fn parse_element(field: QuadraticField, s: &str) -> Result<FieldElement, FieldError> {
    let mut p = Parser {
        field,
        src: s,
        bytes: s.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn discriminants_and_unit_orders() {
        let k1 = QuadraticField::new(-1).unwrap();
        assert_eq!((k1.disc(), k1.unit_order()), (-4, 4));
        let k2 = QuadraticField::new(-2).unwrap();
        assert_eq!((k2.disc(), k2.unit_order()), (-8, 2));
        let k3 = QuadraticField::new(-3).unwrap();
        assert_eq!((k3.disc(), k3.unit_order()), (-3, 6));
        let k7 = QuadraticField::new(-7).unwrap();
        assert_eq!((k7.disc(), k7.unit_order()), (-7, 2));
        assert!(QuadraticField::new(-4).is_err());
        assert!(QuadraticField::new(5).is_err());
    }

    #[test]
    fn zeta_satisfies_minimal_polynomial() {
        for d in [-1, -2, -3, -5, -7, -11, -163] {
            let k = QuadraticField::new(d).unwrap();
            let z = k.zeta();
            let lhs = &(&z * &z) - &(&k.elem_i64(k.disc(), 0) * &z);
            assert_eq!(lhs, k.elem_i64(-k.zeta_norm(), 0));
            // ζ̄ = D − ζ.
            assert_eq!(z.conjugate(), &k.elem_i64(k.disc(), 0) - &z);
            // √D squares to D, √d squares to d.
            let sd = k.sqrt_disc();
            assert_eq!(&sd * &sd, k.elem_i64(k.disc(), 0));
            let s = k.sqrt_d();
            assert_eq!(&s * &s, k.elem_i64(d, 0));
        }
    }

    #[test]
    fn conjugate_examples() {
        // d=−1: ζ = −2+i, conj(ζ) = −4−ζ.
        let k = QuadraticField::new(-1).unwrap();
        assert_eq!(k.zeta().conjugate(), k.elem_i64(-4, -1));
        // d=−3, x = ζ: conj = −3 − ζ.
        let k3 = QuadraticField::new(-3).unwrap();
        assert_eq!(k3.zeta().conjugate(), k3.elem_i64(-3, -1));
        assert_eq!(k3.one().conjugate(), k3.one());
    }

    #[test]
    fn norm_and_trace_examples() {
        let k = QuadraticField::new(-1).unwrap();
        // 1+i = 3+ζ.
        let x = k.elem_i64(3, 1);
        assert_eq!(x.norm(), q(2, 1));
        let k3 = QuadraticField::new(-3).unwrap();
        // 1+ω = 3+ζ.
        let y = k3.elem_i64(3, 1);
        assert_eq!(y.norm(), q(3, 1));
        // ζ/√D pairs integrally with O_F.
        for d in [-1, -2, -3, -7] {
            let k = QuadraticField::new(d).unwrap();
            let x = &k.zeta() / &k.sqrt_disc();
            assert!(x.trace().is_integer());
            assert!(x.in_inverse_different());
        }
    }

    #[test]
    fn unit_groups() {
        let k5 = QuadraticField::new(-5).unwrap();
        let us: Vec<_> = k5.units();
        assert_eq!(us.len(), 2);
        assert!(us.iter().any(|u| u.value() == &k5.elem_i64(-1, 0)));

        let k1 = QuadraticField::new(-1).unwrap();
        let us = k1.units();
        assert_eq!(us.len(), 4);
        // i = ζ+2 has order 4.
        assert!(us.iter().any(|u| u.order() == 4));

        let k3 = QuadraticField::new(-3).unwrap();
        let us = k3.units();
        assert_eq!(us.len(), 6);
        assert!(us.iter().any(|u| u.order() == 6));
        // Closure under multiplication and conjugation.
        for u in &us {
            for v in &us {
                let p = u.value() * v.value();
                assert!(us.iter().any(|w| w.value() == &p));
            }
            let c = u.value().conjugate();
            assert!(us.iter().any(|w| w.value() == &c));
        }
    }

    #[test]
    fn divides_examples() {
        let k = QuadraticField::new(-1).unwrap();
        let one_plus_i = k.elem_i64(3, 1);
        let two = k.elem_i64(2, 0);
        assert!(divides(&k.one(), &one_plus_i).unwrap());
        assert!(divides(&one_plus_i, &two).unwrap());
        let k3 = QuadraticField::new(-3).unwrap();
        let one_plus_w = k3.elem_i64(3, 1);
        assert!(!divides(&k3.elem_i64(2, 0), &one_plus_w).unwrap());
        assert!(divides(&k3.zero(), &k3.one()).is_err());
    }

    #[test]
    fn parser_round_trips() {
        let k = QuadraticField::new(-1).unwrap();
        assert_eq!(parse_element(k, "1/2").unwrap(), k.elem(q(1, 2), q(0, 1)));
        assert_eq!(parse_element(k, "(1+i)/2").unwrap(), k.elem(q(3, 2), q(1, 2)));
        assert_eq!(parse_element(k, "i*i").unwrap(), k.elem_i64(-1, 0));
        let k2 = QuadraticField::new(-2).unwrap();
        // (1+√−2)/2
        let x = parse_element(k2, "(1+sd)/2").unwrap();
        assert_eq!(&x + &x.conjugate(), k2.one());
        assert_eq!(x.norm(), q(3, 4));
        let k3 = QuadraticField::new(-3).unwrap();
        // sd/3 = 1/√−3 up to sign: (sd/3)² = −1/3.
        let y = parse_element(k3, "sd/3").unwrap();
        assert_eq!(&y * &y, k3.elem(q(-1, 3), q(0, 1)));
        assert!(parse_element(k3, "1+").is_err());
        assert!(parse_element(k3, "q").is_err());
    }

    #[test]
    fn omega_basis_is_unimodular() {
        for d in [-1, -2, -3, -7, -11] {
            let k = QuadraticField::new(d).unwrap();
            let w = k.omega_z();
            assert!(w.is_integral());
            // b-coordinate 1 means {1, ω_d} is a Z-basis of O_F.
            assert!(w.b().is_one());
            let (u, v) = k.zeta().omega_coords();
            assert!(u.is_integer() && v.is_integer());
        }
    }
}
