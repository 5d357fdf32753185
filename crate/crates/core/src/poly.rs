//! Dense univariate polynomials over [`Scalar`], ascending coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `coeffs[i]` is the coefficient of `x^i`. The zero polynomial has no
/// coefficients; otherwise the last one is nonzero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Scalar::int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::new(vec![c])
    }

    /// `x - c`.
    pub fn linear_monic(c: &Scalar) -> Self {
        Polynomial::new(vec![-c, Scalar::one()])
    }

    /// Monic polynomial with the given roots, multiplicities included.
    pub fn from_roots(roots: &[Scalar]) -> Self {
        roots
            .iter()
            .fold(Polynomial::one(), |acc, r| &acc * &Polynomial::linear_monic(r))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    pub fn monic(&self) -> Result<Polynomial> {
        let lead = self.leading().ok_or(Error::ZeroDivisor)?;
        Ok(self.scale(&(Scalar::one() / lead)))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Scalar::int(i as i64))
                .collect(),
        )
    }

    /// Horner evaluation in the promoted backend.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Long division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor.degree().ok_or(Error::ZeroDivisor)?;
        let lead = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            for (i, d) in divisor.coeffs.iter().enumerate().take(dd) {
                rem[k + i] = &rem[k + i] - &(&c * d);
            }
            // The leading term cancels by construction; drop it rather than
            // trusting a float subtraction to produce an exact zero.
            rem[k + dd] = Scalar::zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// `p(scale * x + shift)`.
    pub fn compose_affine(&self, scale: &Scalar, shift: &Scalar) -> Polynomial {
        let inner = Polynomial::new(vec![shift.clone(), scale.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, c| &(&acc * &inner) + &Polynomial::constant(c.clone()))
    }

    /// `p(x + shift)`.
    pub fn shift(&self, shift: &Scalar) -> Polynomial {
        self.compose_affine(&Scalar::one(), shift)
    }

    /// `true` when every coefficient of odd (or even) index vanishes, matching
    /// the parity `p(-x) = (-1)^deg p(x)`.
    pub fn has_degree_parity(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self
                .coeffs
                .iter()
                .enumerate()
                .all(|(i, c)| (d - i) % 2 == 0 || c.is_zero()),
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                match &mag {
                    Scalar::Rational(r) if !r.is_integer() && i > 0 => write!(f, "({mag})")?,
                    _ => write!(f, "{mag}")?,
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Rational-coefficient polynomial in `x`, e.g. `"x^3-3x^2+2x"`,
    /// `"1/2x^2 - 1/4"`, `"3*x"`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<Scalar> = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = Scalar::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(Error::Parse(format!("expected `+` or `-` at offset {pos}")));
            }
            let start = pos;
            let coeff = if pos < bytes.len() && bytes[pos] == b'(' {
                let close = text[pos..]
                    .find(')')
                    .ok_or_else(|| Error::Parse("unclosed `(`".into()))?;
                let c = Scalar::parse_rational(&text[pos + 1..pos + close])?;
                pos += close + 1;
                c
            } else {
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/' || bytes[pos] == b'.')
                {
                    pos += 1;
                }
                if pos > start {
                    Scalar::parse_rational(&text[start..pos])?
                } else {
                    Scalar::one()
                }
            };
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b'x' {
                    return Err(Error::Parse("`*` must be followed by `x`".into()));
                }
            }
            let mut power = 0usize;
            if pos < bytes.len() && bytes[pos] == b'x' {
                pos += 1;
                power = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let ps = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    power = text[ps..pos]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent at offset {ps}")))?;
                }
            } else if pos == start {
                return Err(Error::Parse(format!("empty term at offset {start}")));
            }
            if pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                return Err(Error::Parse(format!(
                    "unexpected `{}` at offset {pos}",
                    bytes[pos] as char
                )));
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Scalar::zero());
            }
            coeffs[power] = &coeffs[power] + &(sign * coeff);
        }
        Ok(Polynomial::new(coeffs))
    }
}
