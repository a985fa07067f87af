//! Arbitrary-precision real and complex scaffolding over MPFR floats.

use rug::float::Constant;
use rug::ops::{AssignRound, Pow};
use rug::{Float, Rational};

/// Precision context: all values produced through it carry `prec` bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ctx {
    pub prec: u32,
}

impl Ctx {
    pub fn new(prec: u32) -> Self {
        Self { prec }
    }

    /// A float of this context's precision from any assignable value.
    pub fn f<T>(&self, v: T) -> Float
    where
        Float: AssignRound<T, Round = rug::float::Round, Ordering = std::cmp::Ordering>,
    {
        Float::with_val(self.prec, v)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.prec)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec, Constant::Pi)
    }

    pub fn sqrt5(&self) -> Float {
        Float::with_val(self.prec, 5).sqrt()
    }

    /// Golden ratio φ = (1 + √5)/2.
    pub fn phi(&self) -> Float {
        let mut v = self.sqrt5();
        v += 1;
        v /= 2;
        v
    }

    /// Golden ratio conjugate φ' = (1 - √5)/2 = -1/φ.
    pub fn phi_conj(&self) -> Float {
        let mut v = self.sqrt5();
        v -= 1;
        v /= -2;
        v
    }

    pub fn ln_phi(&self) -> Float {
        self.phi().ln()
    }

    /// φ^k for any integer k (negative exponents allowed).
    pub fn phi_pow(&self, k: i64) -> Float {
        let p = self.phi().pow(k.unsigned_abs() as u32);
        if k < 0 {
            p.recip()
        } else {
            p
        }
    }

    pub fn rational(&self, r: &Rational) -> Float {
        Float::with_val(self.prec, r)
    }
}

/// Complex number over two MPFR floats of equal precision.
#[derive(Clone, Debug, PartialEq)]
pub struct CFloat {
    pub re: Float,
    pub im: Float,
}

impl CFloat {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::new(Float::with_val(prec, 1), Float::new(prec))
    }

    pub fn i(prec: u32) -> Self {
        Self::new(Float::new(prec), Float::with_val(prec, 1))
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Self::new(re, Float::new(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Same value carried at a different precision (rounded if narrower).
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(
            Float::with_val(prec, &self.re),
            Float::with_val(prec, &self.im),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        Self::new(
            Float::with_val(p, &self.re + &o.re),
            Float::with_val(p, &self.im + &o.im),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        Self::new(
            Float::with_val(p, &self.re - &o.re),
            Float::with_val(p, &self.im - &o.im),
        )
    }

    pub fn neg(&self) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, -&self.re), Float::with_val(p, -&self.im))
    }

    pub fn conj(&self) -> Self {
        let p = self.prec();
        Self::new(self.re.clone(), Float::with_val(p, -&self.im))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        let mut re = Float::with_val(p, &self.re * &o.re);
        re -= Float::with_val(p, &self.im * &o.im);
        let mut im = Float::with_val(p, &self.re * &o.im);
        im += Float::with_val(p, &self.im * &o.re);
        Self::new(re, im)
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec().max(s.prec());
        Self::new(
            Float::with_val(p, &self.re * s),
            Float::with_val(p, &self.im * s),
        )
    }

    /// |self|^2 as a real float.
    pub fn norm_sq(&self) -> Float {
        let p = self.prec();
        let mut v = Float::with_val(p, self.re.clone().square());
        v += self.im.clone().square();
        v
    }

    /// |self| computed via hypot (no overflow for large components).
    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = self.norm_sq();
        let mut im = Float::with_val(p, &self.im / &n);
        im = -im;
        Self::new(Float::with_val(p, &self.re / &n), im)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    /// Complex exponential e^self.
    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.clone().exp());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self::new(Float::with_val(p, &r * &c), Float::with_val(p, &r * &s))
    }

    /// Principal branch of the complex logarithm, Im in (-π, π].
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let modulus = self.abs();
        let arg = self.im.clone().atan2(&self.re);
        Self::new(Float::with_val(p, modulus.ln()), arg)
    }

    /// Integer power by repeated squaring.
    pub fn powu(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Serde adapter: arbitrary-precision floats as decimal strings, so JSON
/// stays free of lossy binary floats.
pub mod float_serde {
    use rug::Float;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn to_string(f: &Float) -> String {
        f.to_string_radix(10, None)
    }

    pub fn from_string(s: &str) -> Result<Float, rug::float::ParseFloatError> {
        // Enough bits to hold every emitted digit exactly, with headroom.
        let prec = (s.len() as u32).saturating_mul(4).max(64);
        Ok(Float::with_val(prec, Float::parse(s)?))
    }

    pub fn serialize<S: Serializer>(f: &Float, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(f))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Float, D::Error> {
        let s = String::deserialize(d)?;
        from_string(&s).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Display for CFloat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({}) + ({})i", self.re, self.im)
        }
    }
}
