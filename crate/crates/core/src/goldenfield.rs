//! Exact arithmetic in the Golden field Q(√5) and its complexification.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rug::{Float, Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::CFloat;

/// Element a + b√5 of Q(√5); both parts are exact rationals in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct QuadraticNumber {
    /// Rational part.
    pub a: Rational,
    /// Coefficient of √5.
    pub b: Rational,
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(Rational::from(v), Rational::new())
    }

    pub fn from_integer(v: &Integer) -> Self {
        Self::new(Rational::from(v), Rational::new())
    }

    pub fn from_rational(v: Rational) -> Self {
        Self::new(v, Rational::new())
    }

    pub fn sqrt5() -> Self {
        Self::new(Rational::new(), Rational::from(1))
    }

    /// Golden ratio φ = (1 + √5)/2.
    pub fn phi() -> Self {
        Self::new(Rational::from((1, 2)), Rational::from((1, 2)))
    }

    /// Galois conjugate of φ: φ' = (1 - √5)/2 = -1/φ.
    pub fn phi_conj() -> Self {
        Self::new(Rational::from((1, 2)), Rational::from((-1, 2)))
    }

    /// Exact Golden power φ^k for any integer k.
    pub fn phi_power(k: i64) -> Self {
        Self::phi().power(k).expect("phi is nonzero")
    }

    /// Exact power φ'^k for any integer k.
    pub fn phi_conj_power(k: i64) -> Self {
        Self::phi_conj().power(k).expect("phi' is nonzero")
    }

    pub fn is_zero(&self) -> bool {
        self.a.cmp0() == Ordering::Equal && self.b.cmp0() == Ordering::Equal
    }

    /// True when the √5 part vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.cmp0() == Ordering::Equal
    }

    /// True when the value is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    /// Galois conjugate a - b√5 (the field automorphism √5 ↦ -√5).
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), Rational::from(-&self.b))
    }

    /// Field norm a² - 5b²; zero only for the zero element.
    pub fn norm(&self) -> Rational {
        let a2 = Rational::from(&self.a * &self.a);
        let b2 = Rational::from(&self.b * &self.b);
        a2 - b2 * 5
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(a+b√5) = (a-b√5)/(a²-5b²); the norm is nonzero because √5 is
        // irrational, so a² = 5b² forces a = b = 0.
        let n = self.norm();
        Ok(Self::new(
            Rational::from(&self.a / &n),
            Rational::from(&self.b / &n) * -1,
        ))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inverse()?)
    }

    /// Integer power with negative exponents; 0^0 = 1, 0^negative errors.
    pub fn power(&self, n: i64) -> Result<Self> {
        if n < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Exact sign of the real number a + b√5.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.cmp0();
        let sb = self.b.cmp0();
        match (sa, sb) {
            (_, Ordering::Equal) => sa,
            (Ordering::Equal, _) => sb,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            _ => {
                // Mixed signs: compare a² with 5b²; equality is impossible for
                // nonzero parts, again by irrationality of √5.
                let a2 = Rational::from(&self.a * &self.a);
                let b25 = Rational::from(&self.b * &self.b) * 5;
                match a2.cmp(&b25) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Correctly-rounded float value at `prec` bits (error below 2 ulp).
    pub fn to_real(&self, prec: u32) -> Float {
        // Work at prec+32 so the three roundings (conversion, multiply, add)
        // stay far below half an ulp of the target precision.
        let wp = prec + 32;
        let s5 = Float::with_val(wp, 5).sqrt();
        let mut v = Float::with_val(wp, &self.b) * s5;
        v += Float::with_val(wp, &self.a);
        Float::with_val(prec, v)
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, o: &QuadraticNumber) -> QuadraticNumber {
        QuadraticNumber::new(
            Rational::from(&self.a + &o.a),
            Rational::from(&self.b + &o.b),
        )
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, o: &QuadraticNumber) -> QuadraticNumber {
        QuadraticNumber::new(
            Rational::from(&self.a - &o.a),
            Rational::from(&self.b - &o.b),
        )
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, o: &QuadraticNumber) -> QuadraticNumber {
        // (a+b√5)(c+d√5) = (ac+5bd) + (ad+bc)√5
        let ac = Rational::from(&self.a * &o.a);
        let bd = Rational::from(&self.b * &o.b);
        let ad = Rational::from(&self.a * &o.b);
        let bc = Rational::from(&self.b * &o.a);
        QuadraticNumber::new(ac + bd * 5, ad + bc)
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::new(Rational::from(-&self.a), Rational::from(-&self.b))
    }
}

/// Panics on a zero divisor; use `checked_div` where the divisor is not known
/// to be nonzero.
impl Div for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn div(self, o: &QuadraticNumber) -> QuadraticNumber {
        self.checked_div(o).expect("division by zero in Q(\u{221a}5)")
    }
}

macro_rules! forward_owned_binop {
    ($t:ty, $trait:ident, $m:ident) => {
        impl $trait for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
        impl $trait<&$t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t {
                (&self).$m(o)
            }
        }
    };
}

forward_owned_binop!(QuadraticNumber, Add, add);
forward_owned_binop!(QuadraticNumber, Sub, sub);
forward_owned_binop!(QuadraticNumber, Mul, mul);
forward_owned_binop!(QuadraticNumber, Div, div);

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, o: &Self) -> Ordering {
        (self - o).sign()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        if self.a.cmp0() == Ordering::Equal {
            return write!(f, "{}*sqrt5", self.b);
        }
        if self.b.cmp0() == Ordering::Less {
            write!(f, "{}-{}*sqrt5", self.a, Rational::from(-&self.b))
        } else {
            write!(f, "{}+{}*sqrt5", self.a, self.b)
        }
    }
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    /// Parses the canonical forms "p/q", "r*sqrt5", "p/q+r*sqrt5",
    /// "p/q-r*sqrt5", plus bare "sqrt5" / "-sqrt5".
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid Q(\u{221a}5) literal: {s:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        let parse_rat = |t: &str| -> Result<Rational> {
            match t {
                "" | "+" => Ok(Rational::from(1)),
                "-" => Ok(Rational::from(-1)),
                _ => Rational::from_str(t).map_err(|_| bad()),
            }
        };
        match s.find("sqrt5") {
            None => Ok(Self::from_rational(parse_rat(&s)?)),
            Some(pos) => {
                if pos + 5 != s.len() {
                    return Err(bad());
                }
                let head = s[..pos].strip_suffix('*').unwrap_or(&s[..pos]);
                // Split off the rational part: scan for a '+'/'-' separator
                // that is not the leading sign and not inside "p/q".
                let bytes = head.as_bytes();
                let mut split = None;
                for i in (1..bytes.len()).rev() {
                    if bytes[i] == b'+' || bytes[i] == b'-' {
                        split = Some(i);
                        break;
                    }
                }
                match split {
                    None => Ok(Self::new(Rational::new(), parse_rat(head)?)),
                    Some(i) => {
                        let a = parse_rat(&head[..i])?;
                        let sign = if bytes[i] == b'-' { -1 } else { 1 };
                        let b = parse_rat(&head[i + 1..])? * sign;
                        Ok(Self::new(a, b))
                    }
                }
            }
        }
    }
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Complex number re + im·i with both parts in Q(√5).
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ComplexQuadratic {
    pub re: QuadraticNumber,
    pub im: QuadraticNumber,
}

impl ComplexQuadratic {
    pub fn new(re: QuadraticNumber, im: QuadraticNumber) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_real(QuadraticNumber::one())
    }

    pub fn i() -> Self {
        Self::new(QuadraticNumber::zero(), QuadraticNumber::one())
    }

    pub fn from_real(re: QuadraticNumber) -> Self {
        Self::new(re, QuadraticNumber::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_real(QuadraticNumber::from_int(v))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugate re - im·i.
    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// Galois conjugate applied to both components (√5 ↦ -√5).
    pub fn galois_conjugate(&self) -> Self {
        Self::new(self.re.conjugate(), self.im.conjugate())
    }

    /// re² + im², an element of Q(√5); zero only for the zero element.
    pub fn norm_sq(&self) -> QuadraticNumber {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // norm_sq is a nonzero element of the real field Q(√5), hence invertible.
        let n = self.norm_sq().inverse()?;
        Ok(Self::new(&self.re * &n, &(-&self.im) * &n))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inverse()?)
    }

    pub fn scale(&self, s: &QuadraticNumber) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    /// Integer power with negative exponents; 0^0 = 1, 0^negative errors.
    pub fn power(&self, n: i64) -> Result<Self> {
        if n < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn to_cfloat(&self, prec: u32) -> CFloat {
        CFloat::new(self.re.to_real(prec), self.im.to_real(prec))
    }
}

impl Add for &ComplexQuadratic {
    type Output = ComplexQuadratic;
    fn add(self, o: &ComplexQuadratic) -> ComplexQuadratic {
        ComplexQuadratic::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &ComplexQuadratic {
    type Output = ComplexQuadratic;
    fn sub(self, o: &ComplexQuadratic) -> ComplexQuadratic {
        ComplexQuadratic::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &ComplexQuadratic {
    type Output = ComplexQuadratic;
    fn mul(self, o: &ComplexQuadratic) -> ComplexQuadratic {
        let rr = &self.re * &o.re;
        let ii = &self.im * &o.im;
        let ri = &self.re * &o.im;
        let ir = &self.im * &o.re;
        ComplexQuadratic::new(&rr - &ii, &ri + &ir)
    }
}

impl Neg for &ComplexQuadratic {
    type Output = ComplexQuadratic;
    fn neg(self) -> ComplexQuadratic {
        ComplexQuadratic::new(-&self.re, -&self.im)
    }
}

/// Panics on a zero divisor; use `checked_div` where the divisor is not known
/// to be nonzero.
impl Div for &ComplexQuadratic {
    type Output = ComplexQuadratic;
    fn div(self, o: &ComplexQuadratic) -> ComplexQuadratic {
        self.checked_div(o).expect("division by zero in complexified Q(\u{221a}5)")
    }
}

forward_owned_binop!(ComplexQuadratic, Add, add);
forward_owned_binop!(ComplexQuadratic, Sub, sub);
forward_owned_binop!(ComplexQuadratic, Mul, mul);
forward_owned_binop!(ComplexQuadratic, Div, div);

impl Neg for ComplexQuadratic {
    type Output = ComplexQuadratic;
    fn neg(self) -> ComplexQuadratic {
        -&self
    }
}

impl fmt::Display for ComplexQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({})+({})*i", self.re, self.im)
        }
    }
}
