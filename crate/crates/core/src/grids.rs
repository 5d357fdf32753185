//! Classical grids satisfying `x_{s+1} + x_{s-1} - Omega x_s = nu`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{Float, Scalar};
use crate::spectral::JacobiMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridKind {
    /// `x_s = s`.
    Linear,
    /// `x_s = s(s + tau)`.
    Quadratic { tau: Scalar },
    /// `x_s = q^{-s}`, `0 < q < 1`.
    Exponential { q: Scalar },
    /// `x_s = c1 q^s + c2 q^{-s} + c0`.
    AskeyWilson { q: Scalar, c1: Scalar, c2: Scalar, c0: Scalar },
    /// `x_s = (-1)^s (c1 s + c2) + c0`.
    BannaiIto { c1: Scalar, c2: Scalar, c0: Scalar },
    /// Zeros of `T_{N+1}`: `x_s = -cos(theta_s)`.
    TrigFirstKind,
    /// Zeros of `U_{N+1}`: `x_s = -cos(theta_s)`.
    TrigSecondKind,
}

impl GridKind {
    pub fn is_trig(&self) -> bool {
        matches!(self, GridKind::TrigFirstKind | GridKind::TrigSecondKind)
    }
}

/// Broad class read off from `Omega`.
#[derive(Clone, Debug, PartialEq)]
pub enum GridClass {
    /// `|Omega| > 2`; `q` solves `q + 1/q = Omega` with `|q| < 1`. Exponential
    /// when additionally `c1 = 0`, which `Omega` alone cannot tell.
    AskeyWilson { q: Scalar },
    /// `|Omega| < 2`.
    Trigonometric,
    /// `Omega = 2`; linear when `c2 = 0`.
    Quadratic,
    /// `Omega = -2`.
    BannaiIto,
}

/// A grid family at size `N` under the affine map `x -> scale x + shift`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub kind: GridKind,
    pub n: usize,
    pub scale: Scalar,
    pub shift: Scalar,
}

impl GridSpec {
    pub fn new(kind: GridKind, n: usize) -> Result<Self> {
        Self::with_affine(kind, n, Scalar::one(), Scalar::zero())
    }

    pub fn with_affine(kind: GridKind, n: usize, scale: Scalar, shift: Scalar) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::InvalidGrid("affine scale must be nonzero".into()));
        }
        match &kind {
            GridKind::Quadratic { tau } if *tau <= Scalar::int(-1) => {
                return Err(Error::InvalidGrid("quadratic grid needs tau > -1".into()));
            }
            GridKind::Exponential { q }
                if !q.is_rational() || !q.is_positive() || *q >= Scalar::one() =>
            {
                return Err(Error::InvalidGrid("exponential grid needs rational 0 < q < 1".into()));
            }
            GridKind::AskeyWilson { q, .. } if !q.is_positive() || q.is_one() => {
                return Err(Error::InvalidGrid("Askey-Wilson grid needs q > 0, q != 1".into()));
            }
            _ => {}
        }
        Ok(GridSpec { kind, n, scale, shift })
    }

    pub fn linear(n: usize) -> Self {
        GridSpec::new(GridKind::Linear, n).expect("valid")
    }

    pub fn quadratic(tau: Scalar, n: usize) -> Result<Self> {
        GridSpec::new(GridKind::Quadratic { tau }, n)
    }

    pub fn exponential(q: Scalar, n: usize) -> Result<Self> {
        GridSpec::new(GridKind::Exponential { q }, n)
    }

    pub fn is_identity_affine(&self) -> bool {
        self.scale.is_one() && self.shift.is_zero()
    }

    fn canonical_node(&self, s: usize, precision: usize) -> Scalar {
        let si = Scalar::int(s as i64);
        match &self.kind {
            GridKind::Linear => si,
            GridKind::Quadratic { tau } => &si * &(&si + tau),
            GridKind::Exponential { q } => q.powi(-(s as i32)),
            GridKind::AskeyWilson { q, c1, c2, c0 } => {
                c1 * &q.powi(s as i32) + c2 * &q.powi(-(s as i32)) + c0
            }
            GridKind::BannaiIto { c1, c2, c0 } => {
                let v = c1 * &si + c2;
                let v = if s.is_multiple_of(2) { v } else { -v };
                v + c0
            }
            GridKind::TrigFirstKind | GridKind::TrigSecondKind => {
                -Scalar::from_float(self.theta(s, precision).cos())
            }
        }
    }

    /// `theta_s = pi (s + 1/2)/(N+1)` or `pi (s+1)/(N+2)`.
    pub fn theta(&self, s: usize, precision: usize) -> Float {
        let frac = match self.kind {
            GridKind::TrigFirstKind => Scalar::ratio(2 * s as i64 + 1, 2 * (self.n as i64 + 1)),
            GridKind::TrigSecondKind => Scalar::ratio(s as i64 + 1, self.n as i64 + 2),
            _ => panic!("theta is only defined on trigonometric grids"),
        };
        (Scalar::from_float(Float::pi(precision)) * frac).to_float(precision)
    }

    /// Nodes in generation order `s = 0..N`, affine map applied.
    pub fn raw_nodes(&self, precision: usize) -> Vec<Scalar> {
        (0..=self.n)
            .map(|s| &self.scale * &self.canonical_node(s, precision) + &self.shift)
            .collect()
    }

    /// Nodes sorted increasing. Repeated nodes are an error.
    pub fn nodes(&self, precision: usize) -> Result<Vec<Scalar>> {
        let mut v = self.raw_nodes(precision);
        v.sort_by(|a, b| a.partial_cmp(b).expect("comparable"));
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DegenerateGrid);
        }
        Ok(v)
    }

    /// Monic `P_{N+1}` vanishing on the grid. Trig grids use the Chebyshev
    /// recurrences so the result stays exact.
    pub fn characteristic_polynomial(&self) -> Result<Polynomial> {
        let canonical = match &self.kind {
            GridKind::TrigFirstKind => chebyshev_t_monic(self.n + 1),
            GridKind::TrigSecondKind => chebyshev_u_monic(self.n + 1),
            _ => {
                let raw = GridSpec { scale: Scalar::one(), shift: Scalar::zero(), ..self.clone() };
                let nodes = raw.nodes(0)?;
                Polynomial::from_roots(&nodes)
            }
        };
        if self.is_identity_affine() {
            return Ok(canonical);
        }
        let inv = Scalar::one() / &self.scale;
        canonical.compose_affine(&inv, &(-(&self.shift * &inv))).monic()
    }

    /// `(Omega, nu)` of the grid equation, affine map included.
    pub fn omega_nu(&self, precision: usize) -> (Scalar, Scalar) {
        let two = Scalar::int(2);
        let (omega, nu) = match &self.kind {
            GridKind::Linear => (two.clone(), Scalar::zero()),
            GridKind::Quadratic { .. } => (two.clone(), two.clone()),
            GridKind::Exponential { q } => (q + &q.powi(-1), Scalar::zero()),
            GridKind::AskeyWilson { q, c0, .. } => {
                let omega = q + &q.powi(-1);
                let nu = c0 * &(&two - &omega);
                (omega, nu)
            }
            GridKind::BannaiIto { c0, .. } => (Scalar::int(-2), Scalar::int(4) * c0),
            GridKind::TrigFirstKind | GridKind::TrigSecondKind => {
                let steps = match self.kind {
                    GridKind::TrigFirstKind => self.n + 1,
                    _ => self.n + 2,
                };
                let w = Scalar::from_float(Float::pi(precision)) / Scalar::int(steps as i64);
                (Scalar::from_float(w.to_float(precision).cos()) * &two, Scalar::zero())
            }
        };
        let nu = &self.scale * &nu + &self.shift * &(&two - &omega);
        (omega, nu)
    }
}

/// Monic Chebyshev `T_m`: `u_1 = 1/2`, `u_n = 1/4` afterwards, `b_n = 0`.
pub fn chebyshev_t_monic(m: usize) -> Polynomial {
    chebyshev_jacobi(m, true).characteristic_polynomial()
}

/// Monic Chebyshev `U_m`: every `u_n = 1/4`, `b_n = 0`.
pub fn chebyshev_u_monic(m: usize) -> Polynomial {
    chebyshev_jacobi(m, false).characteristic_polynomial()
}

fn chebyshev_jacobi(m: usize, first_kind: bool) -> JacobiMatrix {
    if m == 0 {
        // Only used with m >= 1; keep a sensible answer anyway.
        return JacobiMatrix::new(vec![Scalar::zero()], vec![]).expect("valid");
    }
    let u = (1..m)
        .map(|n| {
            if first_kind && n == 1 {
                Scalar::ratio(1, 2)
            } else {
                Scalar::ratio(1, 4)
            }
        })
        .collect();
    JacobiMatrix::new(vec![Scalar::zero(); m], u).expect("positive u")
}

/// Grid class from `Omega` alone.
pub fn classify(omega: &Scalar) -> GridClass {
    let two = Scalar::int(2);
    if *omega == two {
        return GridClass::Quadratic;
    }
    if *omega == -&two {
        return GridClass::BannaiIto;
    }
    if omega.abs() < two {
        return GridClass::Trigonometric;
    }
    // smaller root of q^2 - Omega q + 1
    let disc = (omega * omega - Scalar::int(4)).sqrt(crate::scalar::DEFAULT_PRECISION);
    let q = if omega.is_positive() {
        (omega - &disc) / &two
    } else {
        (omega + &disc) / &two
    };
    GridClass::AskeyWilson { q }
}

/// Fits raw nodes to a canonical spec. The returned spec's affine map sends
/// canonical nodes onto the input: `spec.raw_nodes()` reproduces the input
/// as a set.
pub fn affine_reduce(raw: &[Scalar]) -> Result<GridSpec> {
    if raw.len() < 3 {
        return Err(Error::NotAClassicalGrid("need at least 3 nodes".into()));
    }
    if raw.iter().any(|x| !x.is_rational()) {
        return Err(Error::Unsupported("affine reduction needs exact nodes".into()));
    }
    let d: Vec<Scalar> = raw.windows(2).map(|w| &w[1] - &w[0]).collect();
    let increasing = d[0].is_positive();
    if d.iter().any(|x| x.is_zero() || x.is_positive() != increasing) {
        return Err(Error::NotAClassicalGrid("nodes are not strictly monotone".into()));
    }
    let omega = if d.len() < 3 {
        Scalar::int(2)
    } else {
        let omega = (&d[2] + &d[0]) / &d[1];
        for s in 1..d.len() - 1 {
            if &d[s + 1] + &d[s - 1] != &omega * &d[s] {
                return Err(Error::NotAClassicalGrid(format!(
                    "grid equation fails at s = {}",
                    s + 1
                )));
            }
        }
        omega
    };
    let n = raw.len() - 1;
    let spec = match classify(&omega) {
        GridClass::Quadratic => reduce_quadratic(raw, n)?,
        GridClass::AskeyWilson { q } => reduce_askey_wilson(raw, n, &omega, q)?,
        GridClass::BannaiIto => {
            return Err(Error::NotAClassicalGrid("a Bannai-Ito grid is never monotone".into()))
        }
        GridClass::Trigonometric => {
            return Err(Error::Unsupported("trigonometric grids have irrational nodes".into()))
        }
    };
    let mut expect: Vec<Scalar> = raw.to_vec();
    expect.sort_by(|a, b| a.partial_cmp(b).expect("rational"));
    if spec.nodes(0)? != expect {
        return Err(Error::NotAClassicalGrid("fitted grid does not reproduce the nodes".into()));
    }
    Ok(spec)
}

fn reduce_quadratic(raw: &[Scalar], n: usize) -> Result<GridSpec> {
    let second = &(&raw[2] - &raw[1]) - &(&raw[1] - &raw[0]);
    let d0 = &raw[1] - &raw[0];
    if second.is_zero() {
        return GridSpec::with_affine(GridKind::Linear, n, d0, raw[0].clone());
    }
    // x_s = x_0 + d0 s + D s(s-1)/2 = (D/2) s(s + 2 d0/D - 1) + x_0
    if (&d0 / &second).is_negative() {
        let rev: Vec<Scalar> = raw.iter().rev().cloned().collect();
        return reduce_quadratic(&rev, n);
    }
    let two = Scalar::int(2);
    let tau = &two * &d0 / &second - Scalar::one();
    GridSpec::with_affine(GridKind::Quadratic { tau }, n, &second / &two, raw[0].clone())
}

fn reduce_askey_wilson(raw: &[Scalar], n: usize, omega: &Scalar, q: Scalar) -> Result<GridSpec> {
    if !q.is_rational() {
        return Err(Error::NotAClassicalGrid("q is irrational".into()));
    }
    if !q.is_positive() {
        return Err(Error::Unsupported("negative q".into()));
    }
    let two = Scalar::int(2);
    let nu = &raw[2] + &raw[0] - omega * &raw[1];
    let c0 = &nu / &(&two - omega);
    let (y0, y1) = (&raw[0] - &c0, &raw[1] - &c0);
    let c2 = (&y1 - &(&q * &y0)) / (q.powi(-1) - &q);
    let c1 = &y0 - &c2;
    let kind = GridKind::Exponential { q: q.clone() };
    if c1.is_zero() {
        GridSpec::with_affine(kind, n, c2, c0)
    } else if c2.is_zero() {
        // c1 q^s = c1 q^N q^{-(N-s)}
        let scale = c1 * q.powi(n as i32);
        GridSpec::with_affine(kind, n, scale, c0)
    } else {
        GridSpec::new(GridKind::AskeyWilson { q, c1, c2, c0 }, n)
    }
}

fn parse_params(body: &str) -> Result<Vec<(String, Scalar)>> {
    body.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{kv}`")))?;
            Ok((k.trim().to_ascii_lowercase(), Scalar::parse_rational(v)?))
        })
        .collect()
}

fn take(params: &[(String, Scalar)], key: &str) -> Result<Scalar> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.clone())
        .ok_or_else(|| Error::Parse(format!("missing parameter `{key}`")))
}

impl FromStr for GridKind {
    type Err = Error;

    /// `linear`, `quad:tau=1`, `exp:q=1/2`, `trig1`, `trig2`,
    /// `aw:q=..,c1=..,c2=..,c0=..`, `bi:c1=..,c2=..,c0=..`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, body) = s.split_once(':').unwrap_or((s, ""));
        let params = if body.is_empty() { Vec::new() } else { parse_params(body)? };
        let allowed: &[&str] = match head {
            "linear" | "trig1" | "trig2" => &[],
            "quad" => &["tau"],
            "exp" => &["q"],
            "aw" => &["q", "c1", "c2", "c0"],
            "bi" => &["c1", "c2", "c0"],
            _ => return Err(Error::Parse(format!("unknown grid `{head}`"))),
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(Error::Parse(format!("unexpected parameter `{k}` for `{head}`")));
        }
        Ok(match head {
            "linear" => GridKind::Linear,
            "trig1" => GridKind::TrigFirstKind,
            "trig2" => GridKind::TrigSecondKind,
            "quad" => GridKind::Quadratic { tau: take(&params, "tau")? },
            "exp" => GridKind::Exponential { q: take(&params, "q")? },
            "aw" => GridKind::AskeyWilson {
                q: take(&params, "q")?,
                c1: take(&params, "c1")?,
                c2: take(&params, "c2")?,
                c0: take(&params, "c0")?,
            },
            _ => GridKind::BannaiIto {
                c1: take(&params, "c1")?,
                c2: take(&params, "c2")?,
                c0: take(&params, "c0")?,
            },
        })
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridKind::Linear => write!(f, "linear"),
            GridKind::Quadratic { tau } => write!(f, "quad:tau={tau}"),
            GridKind::Exponential { q } => write!(f, "exp:q={q}"),
            GridKind::AskeyWilson { q, c1, c2, c0 } => {
                write!(f, "aw:q={q},c1={c1},c2={c2},c0={c0}")
            }
            GridKind::BannaiIto { c1, c2, c0 } => write!(f, "bi:c1={c1},c2={c2},c0={c0}"),
            GridKind::TrigFirstKind => write!(f, "trig1"),
            GridKind::TrigSecondKind => write!(f, "trig2"),
        }
    }
}
