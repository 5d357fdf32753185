//! Scalars in one of two backends: exact rationals or high-precision floats.
//!
//! Every binary operation promotes to the float backend as soon as one
//! operand is a float, and float-float operations run at the larger of the
//! two precisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Default float precision in bits.
pub const DEFAULT_PRECISION: usize = 256;

/// Smallest precision accepted by the float backend.
pub const MIN_PRECISION: usize = 64;

const ROUNDING: RoundingMode = RoundingMode::ToEven;

fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache")
}

/// A float carrying its own working precision.
#[derive(Clone, Debug)]
pub struct Float {
    value: BigFloat,
    precision: usize,
}

impl Float {
    fn wrap(value: BigFloat, precision: usize) -> Self {
        Float { value, precision }
    }

    fn clamp(precision: usize) -> usize {
        precision.max(MIN_PRECISION)
    }

    pub fn from_rational(r: &BigRational, precision: usize) -> Self {
        let p = Self::clamp(precision);
        let mut cc = consts();
        // Parse at extra precision so the integer parts are exact for
        // moderately sized operands before the single rounding division.
        let wide = p + r.numer().bits().max(r.denom().bits()) as usize;
        let num = BigFloat::parse(&r.numer().to_string(), Radix::Dec, wide, ROUNDING, &mut cc);
        let den = BigFloat::parse(&r.denom().to_string(), Radix::Dec, wide, ROUNDING, &mut cc);
        Float::wrap(num.div(&den, p, ROUNDING), p)
    }

    pub fn pi(precision: usize) -> Self {
        let p = Self::clamp(precision);
        Float::wrap(consts().pi(p, ROUNDING), p)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn cos(&self) -> Self {
        let mut cc = consts();
        Float::wrap(self.value.cos(self.precision, ROUNDING, &mut cc), self.precision)
    }

    pub fn sin(&self) -> Self {
        let mut cc = consts();
        Float::wrap(self.value.sin(self.precision, ROUNDING, &mut cc), self.precision)
    }

    pub fn sqrt(&self) -> Self {
        Float::wrap(self.value.sqrt(self.precision, ROUNDING), self.precision)
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn signum(&self) -> Ordering {
        if self.value.is_zero() {
            Ordering::Equal
        } else if self.value.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Decimal rendering with enough digits for the working precision.
    pub fn to_decimal(&self) -> String {
        let mut cc = consts();
        self.value
            .format(Radix::Dec, ROUNDING, &mut cc)
            .unwrap_or_else(|_| "NaN".to_string())
    }

    pub fn parse_decimal(s: &str, precision: usize) -> Result<Self, Error> {
        let p = Self::clamp(precision);
        let mut cc = consts();
        let v = BigFloat::parse(s.trim(), Radix::Dec, p, ROUNDING, &mut cc);
        if v.is_nan() {
            return Err(Error::Parse(format!("invalid decimal `{s}`")));
        }
        Ok(Float::wrap(v, p))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal().parse().unwrap_or(f64::NAN)
    }
}

impl PartialEq for Float {
    fn eq(&self, other: &Self) -> bool {
        self.value.cmp(&other.value) == Some(0)
    }
}

/// A number in the exact rational or the big-float backend.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Float(Float),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` in lowest terms. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    pub fn from_float(f: Float) -> Self {
        Scalar::Float(f)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Float precision, or `None` for exact values.
    pub fn precision(&self) -> Option<usize> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Float(f) => Some(f.precision),
        }
    }

    pub fn to_float(&self, precision: usize) -> Float {
        match self {
            Scalar::Rational(r) => Float::from_rational(r, precision),
            Scalar::Float(f) => {
                let p = Float::clamp(precision);
                let mut v = f.value.clone();
                // set_precision only fails on allocation errors
                let _ = v.set_precision(p, ROUNDING);
                Float::wrap(v, p)
            }
        }
    }

    /// Converts to the float backend at `precision`; floats keep the larger precision.
    pub fn promote(&self, precision: usize) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Float(Float::from_rational(r, precision)),
            Scalar::Float(f) if f.precision >= precision => self.clone(),
            Scalar::Float(_) => Scalar::Float(self.to_float(precision)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(f) => f.to_f64(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Float(_) => *self == Scalar::one(),
        }
    }

    /// Sign relative to zero.
    pub fn signum(&self) -> Ordering {
        match self {
            Scalar::Rational(r) => r.numer().sign().cmp(&num_bigint::Sign::NoSign),
            Scalar::Float(f) => f.signum(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Float(f) => Scalar::Float(Float::wrap(f.value.abs(), f.precision)),
        }
    }

    /// Reciprocal, or `None` for zero.
    pub fn checked_recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar::one() / self)
        }
    }

    /// Quotient, or `None` when the divisor is zero.
    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, exp: i32) -> Scalar {
        let mut base = if exp < 0 {
            Scalar::one() / self
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Square root: exact when a rational is a perfect square, otherwise a
    /// float at `precision` (or at the operand's own precision).
    pub fn sqrt(&self, precision: usize) -> Scalar {
        if let Scalar::Rational(r) = self {
            if !r.is_negative() {
                let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
                if &n * &n == *r.numer() && &d * &d == *r.denom() {
                    return Scalar::Rational(BigRational::new(n, d));
                }
            }
        }
        let p = self.precision().unwrap_or(precision);
        Scalar::Float(self.to_float(p).sqrt())
    }

    pub fn max_of<'a>(a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
        if a >= b {
            a
        } else {
            b
        }
    }

    /// `2^-bits` as an exact rational.
    pub fn pow2_neg(bits: usize) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::one(), BigInt::one() << bits))
    }

    /// Rational parse of `"n"`, `"n/d"`, or a finite decimal like `"-0.25"`.
    pub fn parse_rational(s: &str) -> Result<Scalar, Error> {
        let t = s.trim();
        let bad = || Error::Parse(format!("invalid rational `{s}`"));
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            return Ok(Scalar::Rational(BigRational::new(n, d)));
        }
        if let Some((int_part, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int_part.trim_start().starts_with('-');
            let int_digits = int_part.trim_start_matches(['-', '+']);
            let whole: BigInt = if int_digits.is_empty() {
                BigInt::zero()
            } else {
                int_digits.parse().map_err(|_| bad())?
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac: BigInt = frac.parse().map_err(|_| bad())?;
            let mut numer = whole * &scale + frac;
            if negative {
                numer = -numer;
            }
            return Ok(Scalar::Rational(BigRational::new(numer, scale)));
        }
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(Scalar::Rational(BigRational::from_integer(n)))
    }

    /// Canonical text form: `"num/den"` for rationals, decimal for floats.
    pub fn to_canonical_string(&self) -> String {
        match self {
            Scalar::Rational(r) => format!("{}/{}", r.numer(), r.denom()),
            Scalar::Float(f) => f.to_decimal(),
        }
    }
}

fn promote_pair(a: &Scalar, b: &Scalar) -> (Float, Float, usize) {
    let p = a.precision().unwrap_or(0).max(b.precision().unwrap_or(0));
    let p = Float::clamp(p);
    (a.to_float(p), b.to_float(p), p)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(x) => write!(f, "{}", x.to_decimal()),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse_rational(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            _ => {
                let (a, b, _) = promote_pair(self, other);
                a == b
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Some(a.cmp(b)),
            _ => {
                let (a, b, _) = promote_pair(self, other);
                a.value.cmp(&b.value).map(|c| c.cmp(&0))
            }
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $float:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.$method(b)),
                    _ => {
                        let (a, b, p) = promote_pair(self, rhs);
                        Scalar::Float(Float::wrap(a.value.$float(&b.value, p, ROUNDING), p))
                    }
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }

        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float(f) => Scalar::Float(Float::wrap(f.value.clone().neg(), f.precision)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(_) => serializer.serialize_str(&self.to_canonical_string()),
            Scalar::Float(f) => {
                let mut st = serializer.serialize_struct("Float", 2)?;
                st.serialize_field("value", &f.to_decimal())?;
                st.serialize_field("precision_bits", &f.precision)?;
                st.end()
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Text(String),
    Float { value: String, precision_bits: usize },
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match ScalarRepr::deserialize(deserializer)? {
            ScalarRepr::Text(s) => Scalar::parse_rational(&s).map_err(de::Error::custom),
            ScalarRepr::Float {
                value,
                precision_bits,
            } => Float::parse_decimal(&value, precision_bits)
                .map(Scalar::Float)
                .map_err(de::Error::custom),
        }
    }
}
