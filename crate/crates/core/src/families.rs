//! Closed-form recurrence coefficients, weights and hypergeometric values
//! for the Hahn, Racah (with `alpha = -N-1`), q-Hahn, Chebyshev and
//! ultraspherical families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grids::{GridKind, GridSpec};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::spectral::{JacobiMatrix, SpectralData};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Hahn { alpha: Scalar, beta: Scalar, n: usize },
    Racah { beta: Scalar, gamma: Scalar, delta: Scalar, n: usize },
    QHahn { a: Scalar, b: Scalar, q: Scalar, n: usize },
    ChebyshevT,
    ChebyshevU,
    Ultraspherical { lambda: Scalar },
}

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

fn poch(x: &Scalar, k: usize) -> Scalar {
    (0..k).map(|j| x + &int(j as i64)).product()
}

fn q_poch(x: &Scalar, q: &Scalar, k: usize) -> Scalar {
    (0..k).map(|j| Scalar::one() - x * &q.powi(j as i32)).product()
}

impl FamilySpec {
    pub fn hahn(alpha: Scalar, beta: Scalar, n: usize) -> Result<Self> {
        FamilySpec::Hahn { alpha, beta, n }.validated()
    }

    pub fn racah(beta: Scalar, gamma: Scalar, delta: Scalar, n: usize) -> Result<Self> {
        FamilySpec::Racah { beta, gamma, delta, n }.validated()
    }

    pub fn q_hahn(a: Scalar, b: Scalar, q: Scalar, n: usize) -> Result<Self> {
        if !q.is_positive() || q.is_one() {
            return Err(Error::InvalidParameter("q-Hahn needs q > 0, q != 1".into()));
        }
        FamilySpec::QHahn { a, b, q, n }.validated()
    }

    pub fn ultraspherical(lambda: Scalar) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidParameter(
                "lambda = 0 is the first-kind Chebyshev limit; use ChebyshevT".into(),
            ));
        }
        Ok(FamilySpec::Ultraspherical { lambda })
    }

    /// Rejects parameters whose recurrence denominators vanish for some `n <= N`.
    fn validated(self) -> Result<Self> {
        if let Some(top) = self.size() {
            for k in 0..=top {
                self.recurrence_coeffs(k)?;
            }
        }
        Ok(self)
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Hahn { .. } => "hahn",
            FamilySpec::Racah { .. } => "racah",
            FamilySpec::QHahn { .. } => "q-hahn",
            FamilySpec::ChebyshevT => "chebyshev-t",
            FamilySpec::ChebyshevU => "chebyshev-u",
            FamilySpec::Ultraspherical { .. } => "ultraspherical",
        }
    }

    /// `N` for the finite families.
    pub fn size(&self) -> Option<usize> {
        match self {
            FamilySpec::Hahn { n, .. } | FamilySpec::Racah { n, .. } | FamilySpec::QHahn { n, .. } => {
                Some(*n)
            }
            _ => None,
        }
    }

    fn zero_den(&self, index: usize) -> Error {
        Error::DenominatorZero { family: self.name(), index }
    }

    fn div(&self, num: Scalar, den: Scalar, index: usize) -> Result<Scalar> {
        num.checked_div(&den).ok_or_else(|| self.zero_den(index))
    }

    /// `(A_n, C_n)` with `A_N = 0` and `C_0 = 0` for the finite families.
    fn a_c(&self, k: usize) -> Result<(Scalar, Scalar)> {
        let kk = int(k as i64);
        let one = Scalar::one();
        match self {
            FamilySpec::Hahn { alpha, beta, n } => {
                let nn = int(*n as i64);
                let s = alpha + beta;
                let a = if k == *n {
                    Scalar::zero()
                } else {
                    let num = (&kk + &s + &one) * (&kk + alpha + &one) * (&nn - &kk);
                    let den = (&(&kk * &int(2)) + &s + &one) * (&(&kk * &int(2)) + &s + &int(2));
                    self.div(num, den, k)?
                };
                let c = if k == 0 {
                    Scalar::zero()
                } else {
                    let num = &kk * &(&kk + &s + &nn + &one) * (&kk + beta);
                    let den = (&(&kk * &int(2)) + &s) * (&(&kk * &int(2)) + &s + &one);
                    self.div(num, den, k)?
                };
                Ok((a, c))
            }
            FamilySpec::Racah { beta, gamma, delta, n } => {
                let nn = int(*n as i64);
                let bn = beta - &nn;
                let a = if k == *n {
                    Scalar::zero()
                } else {
                    let num = (&kk + &bn)
                        * (&kk + beta + delta + &one)
                        * (&kk + gamma + &one)
                        * (&kk - &nn);
                    let den = (&(&kk * &int(2)) + &bn) * (&(&kk * &int(2)) + &bn + &one);
                    self.div(num, den, k)?
                };
                let c = if k == 0 {
                    Scalar::zero()
                } else {
                    let num = &kk
                        * &(&kk + beta)
                        * (&kk + beta - gamma - &nn - &one)
                        * (&kk - delta - &nn - &one);
                    let den = (&(&kk * &int(2)) + &bn) * (&(&kk * &int(2)) + &bn - &one);
                    self.div(num, den, k)?
                };
                Ok((a, c))
            }
            FamilySpec::QHahn { a, b, q, n } => {
                let qp = |e: i64| q.powi(e as i32);
                let (ki, ni) = (k as i64, *n as i64);
                let ab = a * b;
                let aa = if k == *n {
                    Scalar::zero()
                } else {
                    let num = (&one - &qp(ki - ni))
                        * (&one - &(a * &qp(ki + 1)))
                        * (&one - &(&ab * &qp(ki + 1)));
                    let den = (&one - &(&ab * &qp(2 * ki + 1))) * (&one - &(&ab * &qp(2 * ki + 2)));
                    self.div(num, den, k)?
                };
                let cc = if k == 0 {
                    Scalar::zero()
                } else {
                    let num = a
                        * &qp(ki - ni)
                        * (&one - &qp(ki))
                        * (&one - &(b * &qp(ki)))
                        * (&one - &(&ab * &qp(ki + ni + 1)));
                    let den = (&one - &(&ab * &qp(2 * ki + 1))) * (&one - &(&ab * &qp(2 * ki)));
                    -self.div(num, den, k)?
                };
                Ok((aa, cc))
            }
            _ => unreachable!("A_n, C_n only exist for finite families"),
        }
    }

    /// `(b_n, u_n)` in monic form, `u_0 = 0`.
    pub fn recurrence_coeffs(&self, k: usize) -> Result<(Scalar, Scalar)> {
        if let Some(top) = self.size() {
            if k > top {
                return Err(Error::InvalidParameter(format!("index {k} exceeds N = {top}")));
            }
        }
        let one = Scalar::one();
        match self {
            FamilySpec::ChebyshevT => {
                let u = match k {
                    0 => Scalar::zero(),
                    1 => Scalar::ratio(1, 2),
                    _ => Scalar::ratio(1, 4),
                };
                Ok((Scalar::zero(), u))
            }
            FamilySpec::ChebyshevU => {
                let u = if k == 0 { Scalar::zero() } else { Scalar::ratio(1, 4) };
                Ok((Scalar::zero(), u))
            }
            FamilySpec::Ultraspherical { lambda } => {
                if k == 0 {
                    return Ok((Scalar::zero(), Scalar::zero()));
                }
                let kk = int(k as i64);
                let num = &kk * &(&kk + &(lambda * &int(2)) - &one);
                let den = int(4) * (&kk + lambda) * (&kk + lambda - &one);
                Ok((Scalar::zero(), self.div(num, den, k)?))
            }
            _ => {
                let (a, c) = self.a_c(k)?;
                let u = if k == 0 {
                    Scalar::zero()
                } else {
                    let (a_prev, _) = self.a_c(k - 1)?;
                    &a_prev * &c
                };
                let b = match self {
                    FamilySpec::Hahn { .. } => &a + &c,
                    FamilySpec::Racah { .. } => -(&a + &c),
                    _ => one - a - c,
                };
                Ok((b, u))
            }
        }
    }

    /// Recurrence data for degrees `0..=top`. Finite families ignore `top`
    /// and use their own `N`.
    pub fn jacobi_upto(&self, top: usize) -> Result<JacobiMatrix> {
        let top = self.size().unwrap_or(top);
        let mut b = Vec::with_capacity(top + 1);
        let mut u = Vec::with_capacity(top);
        for k in 0..=top {
            let (bk, uk) = self.recurrence_coeffs(k)?;
            b.push(bk);
            if k > 0 {
                u.push(uk);
            }
        }
        JacobiMatrix::new(b, u)
    }

    pub fn jacobi(&self) -> Result<JacobiMatrix> {
        let top = self
            .size()
            .ok_or_else(|| Error::InvalidParameter(format!("{} has no finite size", self.name())))?;
        self.jacobi_upto(top)
    }

    /// Native grid of a finite family.
    pub fn grid(&self) -> Result<GridSpec> {
        match self {
            FamilySpec::Hahn { n, .. } => Ok(GridSpec::linear(*n)),
            FamilySpec::Racah { gamma, delta, n, .. } => {
                GridSpec::quadratic(gamma + delta + Scalar::one(), *n)
            }
            FamilySpec::QHahn { q, n, .. } if *q < Scalar::one() => GridSpec::exponential(q.clone(), *n),
            FamilySpec::QHahn { q, n, .. } => GridSpec::new(
                GridKind::AskeyWilson { q: q.clone(), c1: Scalar::one(), c2: Scalar::zero(), c0: Scalar::zero() },
                *n,
            ),
            _ => Err(Error::Unsupported(format!("{} has no finite grid", self.name()))),
        }
    }

    /// `x(s)` on the native grid, in generation order.
    pub fn node(&self, s: usize) -> Result<Scalar> {
        Ok(match self {
            FamilySpec::Hahn { .. } => int(s as i64),
            FamilySpec::Racah { gamma, delta, .. } => {
                let si = int(s as i64);
                &si * &(&si + gamma + delta + Scalar::one())
            }
            FamilySpec::QHahn { q, .. } => q.powi(-(s as i32)),
            _ => return Err(Error::Unsupported(format!("{} has no finite grid", self.name()))),
        })
    }

    /// Unnormalized closed-form weights `W_s` and the closed-form total mass.
    pub fn raw_weights(&self) -> Result<(Vec<Scalar>, Scalar)> {
        let one = Scalar::one();
        match self {
            FamilySpec::Hahn { alpha, beta, n } => {
                let nn = int(*n as i64);
                let w = (0..=*n)
                    .map(|s| {
                        let num = poch(&-&nn, s) * poch(&(alpha + &one), s);
                        let den = poch(&one, s) * poch(&(-&nn - beta), s);
                        self.div(num, den, s)
                    })
                    .collect::<Result<Vec<_>>>()?;
                // nu = (beta+1)_N / (alpha+beta+2)_N is the normalizer
                let nu = self.div(poch(&(beta + &one), *n), poch(&(alpha + beta + int(2)), *n), *n)?;
                let mass = nu.checked_recip().ok_or_else(|| self.zero_den(*n))?;
                Ok((w, mass))
            }
            FamilySpec::Racah { beta, gamma, delta, n } => {
                let nn = int(*n as i64);
                let gd = gamma + delta;
                let half = Scalar::ratio(1, 2);
                let w = (0..=*n)
                    .map(|s| {
                        let num = poch(&-&nn, s)
                            * poch(&(beta + delta + &one), s)
                            * poch(&(gamma + &one), s)
                            * poch(&(&gd + &one), s)
                            * poch(&((&gd + int(3)) * &half), s);
                        let den = poch(&one, s)
                            * poch(&(&gd + int(2) + &nn), s)
                            * poch(&(-beta + gamma + &one), s)
                            * poch(&(delta + &one), s)
                            * poch(&((&gd + &one) * &half), s);
                        self.div(num, den, s)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mass = self.div(
                    poch(&-beta, *n) * poch(&(&gd + int(2)), *n),
                    poch(&(&one + gamma - beta), *n) * poch(&(delta + &one), *n),
                    *n,
                )?;
                Ok((w, mass))
            }
            FamilySpec::QHahn { a, b, q, n } => {
                let q_n = q.powi(-(*n as i32));
                let abq = a * b * q;
                let w = (0..=*n)
                    .map(|s| {
                        let num = q_poch(&(a * q), q, s) * q_poch(&q_n, q, s);
                        let den = q_poch(q, q, s) * q_poch(&(&q_n / b), q, s);
                        Ok(self.div(num, den, s)? * abq.powi(-(s as i32)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mass = self.div(
                    q_poch(&(&abq * q), q, *n),
                    q_poch(&(b * q), q, *n) * (a * q).powi(*n as i32),
                    *n,
                )?;
                Ok((w, mass))
            }
            _ => Err(Error::Unsupported(format!("{} has no finite weights", self.name()))),
        }
    }

    /// Closed-form weights divided by the closed-form mass, on sorted nodes.
    pub fn family_weights(&self) -> Result<SpectralData> {
        let (w, mass) = self.raw_weights()?;
        let inv = mass.checked_recip().ok_or_else(|| self.zero_den(self.size().unwrap_or(0)))?;
        let mut pairs: Vec<(Scalar, Scalar)> = (0..w.len())
            .map(|s| Ok((self.node(s)?, &w[s] * &inv)))
            .collect::<Result<_>>()?;
        pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("rational"));
        let (nodes, weights) = pairs.into_iter().unzip();
        SpectralData::new(nodes, weights)
    }

    /// Normalization `kappa_n` and series coefficients `c_k` so that
    /// `P_n(x) = kappa_n sum_k c_k prod_{j<k} f_j(x)`.
    fn series(&self, n: usize) -> Result<(Scalar, Vec<Scalar>)> {
        let one = Scalar::one();
        let nn = int(n as i64);
        let neg_n = -&nn;
        match self {
            FamilySpec::Hahn { alpha, beta, n: big } => {
                let neg_big = -int(*big as i64);
                let top = &nn + alpha + beta + &one;
                let kappa = self.div(poch(&neg_big, n) * poch(&(alpha + &one), n), poch(&top, n), n)?;
                let c = (0..=n)
                    .map(|k| {
                        self.div(
                            poch(&neg_n, k) * poch(&top, k),
                            poch(&neg_big, k) * poch(&(alpha + &one), k) * poch(&one, k),
                            k,
                        )
                    })
                    .collect::<Result<_>>()?;
                Ok((kappa, c))
            }
            FamilySpec::Racah { beta, gamma, delta, n: big } => {
                let neg_big = -int(*big as i64);
                let top = &nn + beta + &neg_big;
                let bd = beta + delta + &one;
                let g1 = gamma + &one;
                let kappa = self.div(poch(&neg_big, n) * poch(&bd, n) * poch(&g1, n), poch(&top, n), n)?;
                let c = (0..=n)
                    .map(|k| {
                        self.div(
                            poch(&neg_n, k) * poch(&top, k),
                            poch(&neg_big, k) * poch(&bd, k) * poch(&g1, k) * poch(&one, k),
                            k,
                        )
                    })
                    .collect::<Result<_>>()?;
                Ok((kappa, c))
            }
            FamilySpec::QHahn { a, b, q, n: big } => {
                let q_big = q.powi(-(*big as i32));
                let q_n = q.powi(-(n as i32));
                let top = a * b * &q.powi(n as i32 + 1);
                let aq = a * q;
                let kappa = self.div(q_poch(&q_big, q, n) * q_poch(&aq, q, n), q_poch(&top, q, n), n)?;
                let c = (0..=n)
                    .map(|k| {
                        let v = self.div(
                            q_poch(&q_n, q, k) * q_poch(&top, q, k),
                            q_poch(&q_big, q, k) * q_poch(&aq, q, k) * q_poch(q, q, k),
                            k,
                        )?;
                        Ok(v * q.powi(k as i32))
                    })
                    .collect::<Result<_>>()?;
                Ok((kappa, c))
            }
            FamilySpec::ChebyshevT | FamilySpec::ChebyshevU | FamilySpec::Ultraspherical { .. } => {
                let lambda = match self {
                    FamilySpec::ChebyshevT => Scalar::zero(),
                    FamilySpec::ChebyshevU => one.clone(),
                    FamilySpec::Ultraspherical { lambda } => lambda.clone(),
                    _ => unreachable!(),
                };
                let two_l = &lambda * &int(2);
                // kappa_n = 2^-n (2 lambda)_n / (lambda)_n, whose lambda -> 0 limit is 2^{1-n}
                let kappa = if lambda.is_zero() {
                    if n == 0 {
                        one.clone()
                    } else {
                        Scalar::pow2_neg(n - 1)
                    }
                } else {
                    self.div(poch(&two_l, n), poch(&lambda, n), n)? * Scalar::pow2_neg(n)
                };
                let top = &nn + &two_l;
                let bottom = &lambda + &Scalar::ratio(1, 2);
                let c = (0..=n)
                    .map(|k| {
                        self.div(poch(&neg_n, k) * poch(&top, k), poch(&bottom, k) * poch(&one, k), k)
                    })
                    .collect::<Result<_>>()?;
                Ok((kappa, c))
            }
        }
    }

    /// The `j`-th linear factor `(constant, slope)` of the x-dependent
    /// Pochhammer product.
    fn factor(&self, j: usize) -> (Scalar, Scalar) {
        let jj = int(j as i64);
        match self {
            // (-x)_k
            FamilySpec::Hahn { .. } => (jj, int(-1)),
            // (-s)_k (s + c)_k = prod (j(j + c) - x)
            FamilySpec::Racah { gamma, delta, .. } => {
                (&jj * &(&jj + gamma + delta + Scalar::one()), int(-1))
            }
            // (x^{-1}; q)_k at x = q^{-s}: prod (1 - q^j x)
            FamilySpec::QHahn { q, .. } => (Scalar::one(), -q.powi(j as i32)),
            // ((1 - x)/2)^k
            _ => (Scalar::ratio(1, 2), Scalar::ratio(-1, 2)),
        }
    }

    /// Monic `P_n(x)` from the terminating series.
    pub fn family_value_at(&self, n: usize, x: &Scalar) -> Result<Scalar> {
        let (kappa, c) = self.series(n)?;
        let mut prod = Scalar::one();
        let mut total = Scalar::zero();
        for (k, ck) in c.iter().enumerate() {
            total = total + ck * &prod;
            let (a0, a1) = self.factor(k);
            prod = prod * (a0 + a1 * x);
        }
        Ok(kappa * total)
    }

    /// `P_n(x(s))` on the native grid.
    pub fn family_value(&self, n: usize, s: usize) -> Result<Scalar> {
        if let Some(top) = self.size() {
            if n > top || s > top {
                return Err(Error::InvalidParameter(format!("indices must not exceed N = {top}")));
            }
        }
        self.family_value_at(n, &self.node(s)?)
    }

    /// The series expanded as a polynomial in `x`.
    pub fn family_polynomial(&self, n: usize) -> Result<Polynomial> {
        let (kappa, c) = self.series(n)?;
        let mut prod = Polynomial::one();
        let mut total = Polynomial::zero();
        for (k, ck) in c.iter().enumerate() {
            total = &total + &prod.scale(ck);
            let (a0, a1) = self.factor(k);
            prod = &prod * &Polynomial::new(vec![a0, a1]);
        }
        Ok(total.scale(&kappa))
    }

    /// Parameters of the mirror-dual family: Hahn
    /// `(alpha, beta) -> (-N-1-beta, -N-1-alpha)`, Racah
    /// `(beta, gamma, delta) -> (-beta, delta, gamma)`, q-Hahn
    /// `(a, b) -> (b^{-1} q^{-N-1}, a^{-1} q^{-N-1})`.
    pub fn mirror_parameters(&self) -> Result<FamilySpec> {
        match self {
            FamilySpec::Hahn { alpha, beta, n } => {
                let m = -int(*n as i64 + 1);
                FamilySpec::hahn(&m - beta, &m - alpha, *n)
            }
            FamilySpec::Racah { beta, gamma, delta, n } => {
                FamilySpec::racah(-beta, delta.clone(), gamma.clone(), *n)
            }
            FamilySpec::QHahn { a, b, q, n } => {
                let t = q.powi(-(*n as i32) - 1);
                let a_star = t.checked_div(b).ok_or_else(|| self.zero_den(0))?;
                let b_star = t.checked_div(a).ok_or_else(|| self.zero_den(0))?;
                FamilySpec::q_hahn(a_star, b_star, q.clone(), *n)
            }
            _ => Err(Error::Unsupported(format!("{} is not a finite family", self.name()))),
        }
    }
}

/// `w_s = 2 sin^2(theta_s)/(N+1)` on the zeros of `T_{N+1}`, returned on
/// increasing nodes. Normalized for `N >= 1`; at `N = 0` the formula gives 2.
pub fn chebyshev_u_weights(n: usize, precision: usize) -> Result<SpectralData> {
    let spec = GridSpec::new(GridKind::TrigFirstKind, n)?;
    let factor = Scalar::ratio(2, n as i64 + 1);
    let mut pairs: Vec<(Scalar, Scalar)> = (0..=n)
        .map(|s| {
            let theta = spec.theta(s, precision);
            let x = -Scalar::from_float(theta.cos());
            let sin = Scalar::from_float(theta.sin());
            (x, &factor * &sin * &sin)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
    let (nodes, weights) = pairs.into_iter().unzip();
    SpectralData::new(nodes, weights)
}

/// Which closed-form Legendre dual to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LegendreGrid {
    Linear,
    QuadraticTau1,
    TrigFirstKind,
    TrigSecondKind,
}

impl LegendreGrid {
    pub fn from_kind(kind: &GridKind) -> Result<Self> {
        match kind {
            GridKind::Linear => Ok(LegendreGrid::Linear),
            GridKind::Quadratic { tau } if tau.is_one() => Ok(LegendreGrid::QuadraticTau1),
            GridKind::TrigFirstKind => Ok(LegendreGrid::TrigFirstKind),
            GridKind::TrigSecondKind => Ok(LegendreGrid::TrigSecondKind),
            other => Err(Error::Unsupported(format!("no Legendre-dual closed form for {other}"))),
        }
    }
}

/// Closed-form `(b*_n, u*_n)` of the Legendre-type dual, with
/// `u*_0 = 0`. These are the formulas under test, not ground truth.
pub fn legendre_dual_coeffs(grid: LegendreGrid, big_n: usize, n: usize) -> Result<(Scalar, Scalar)> {
    if n > big_n {
        return Err(Error::InvalidParameter(format!("n = {n} exceeds N = {big_n}")));
    }
    let nn = int(n as i64);
    let bn = int(big_n as i64);
    let one = Scalar::one();
    match grid {
        LegendreGrid::Linear => {
            let b = &bn / &int(2);
            let u = if n == 0 {
                Scalar::zero()
            } else {
                let n2 = &nn * &nn;
                let np1 = &bn + &one;
                &n2 * &(&np1 * &np1 - &n2) / (int(4) * (int(4) * &n2 - &one))
            };
            Ok((b, u))
        }
        LegendreGrid::QuadraticTau1 => {
            let quarter = |k: i64| Scalar::ratio(k, 4);
            // the 1/(4n-1) - 1/(4n-3) term is finite for every integer n
            let b = (&bn + &quarter(5)) * (&bn + &quarter(3)) / int(8)
                * ((int(4) * &nn - &one).powi(-1) - (int(4) * &nn - int(3)).powi(-1))
                + (&bn - &nn) * (int(2) * &nn + int(2) * &bn + &one) / int(4)
                + int(3) * &bn / int(4)
                + Scalar::ratio(5, 32);
            let u = if n == 0 {
                Scalar::zero()
            } else {
                let n2 = &nn * &nn;
                let np1 = &bn + &one;
                let t = int(2) * &nn - &one;
                let num = &n2
                    * &t
                    * &t
                    * (&np1 * &np1 - &n2)
                    * (int(2) * &bn + int(3) - int(2) * &nn)
                    * (int(2) * &bn + &one + int(2) * &nn);
                let m = int(4) * &nn - &one;
                let den = (int(4) * &nn + &one) * (int(4) * &nn - int(3)) * &m * &m;
                num / den
            };
            Ok((b, u))
        }
        LegendreGrid::TrigFirstKind | LegendreGrid::TrigSecondKind => {
            // closed-form Sturmian coefficients, read back through the mirror
            let u = if n == 0 {
                Scalar::zero()
            } else {
                sturmian_trig_u(grid, big_n, big_n + 1 - n)
            };
            Ok((Scalar::zero(), u))
        }
    }
}

/// Sturmian `u_m` on the trig grids: `1/4, ..., 1/4, 1/2` on the first,
/// `m(m+3)/(4(m+2)(m+1))` then `u_N = N/(2(N+1))` on the second.
pub fn sturmian_trig_u(grid: LegendreGrid, big_n: usize, m: usize) -> Scalar {
    let mi = m as i64;
    match (grid, m == big_n) {
        (LegendreGrid::TrigFirstKind, true) => Scalar::ratio(1, 2),
        (LegendreGrid::TrigFirstKind, false) => Scalar::ratio(1, 4),
        (_, true) => Scalar::ratio(big_n as i64, 2 * (big_n as i64 + 1)),
        (_, false) => Scalar::ratio(mi * (mi + 3), 4 * (mi + 2) * (mi + 1)),
    }
}
