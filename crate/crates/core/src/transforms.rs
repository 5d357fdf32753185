//! Christoffel, Geronimus and Uvarov transforms of finite Jacobi matrices.
//!
//! Christoffel at `a`: `P~_n = (P_{n+1} - V_n P_n)/(x - a)` with
//! `V_n = P_{n+1}(a)/P_n(a)`; the measure becomes `(x_s - a) w_s`.
//! Geronimus undoes it: `P_n = P~_n - U_n P~_{n-1}` with `U_n = phi_n/phi_{n-1}`
//! for a solution `phi` of the transformed recurrence at `a`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::spectral::{JacobiMatrix, SpectralData};
use crate::sturm::build_chain;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransformKind {
    Christoffel { a: Scalar },
    /// `seed = phi_1/phi_0`, i.e. `U_1`.
    Geronimus { a: Scalar, seed: Scalar },
    Uvarov { a: Scalar },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub kind: TransformKind,
    /// `V_0..V_N` for Christoffel, `U_1..U_{N+1}` otherwise.
    pub multipliers: Vec<Scalar>,
    pub source: JacobiMatrix,
    pub result: JacobiMatrix,
    /// For Christoffel: the Geronimus seed `U_1 = b_0 - b~_0` that inverts it.
    pub inverse_seed: Option<Scalar>,
}

/// Polynomial-level Christoffel transform, then re-extraction by the
/// Euclidean chain on `(P_{N+1}, P~_N)`.
pub fn christoffel(j: &JacobiMatrix, a: &Scalar) -> Result<(JacobiMatrix, TransformRecord)> {
    let n = j.n();
    let polys = j.generate_polys(n + 1);
    let values: Vec<Scalar> = polys.iter().map(|p| p.eval(a)).collect();
    if let Some(k) = values.iter().position(|v| v.is_zero()) {
        return Err(Error::PivotZero { index: k });
    }
    let v: Vec<Scalar> = (0..=n).map(|k| &values[k + 1] / &values[k]).collect();
    let divisor = Polynomial::linear_monic(a);
    let tilde_top = {
        let numer = &polys[n + 1] - &polys[n].scale(&v[n]);
        let (quot, rem) = numer.divmod(&divisor)?;
        debug_assert!(rem.is_zero());
        quot
    };
    let chain = build_chain(&polys[n + 1], &tilde_top)?;
    let result = chain.jacobi();
    let inverse_seed = Some(&j.b()[0] - &result.b()[0]);
    let record = TransformRecord {
        kind: TransformKind::Christoffel { a: a.clone() },
        multipliers: v,
        source: j.clone(),
        result: result.clone(),
        inverse_seed,
    };
    Ok((result, record))
}

/// `P~_0..P~_N` from the quotient formula directly.
pub fn christoffel_polys(j: &JacobiMatrix, a: &Scalar) -> Result<Vec<Polynomial>> {
    let n = j.n();
    let polys = j.generate_polys(n + 1);
    let divisor = Polynomial::linear_monic(a);
    (0..=n)
        .map(|k| {
            let pk = polys[k].eval(a);
            let v = (polys[k + 1].eval(a))
                .checked_div(&pk)
                .ok_or(Error::PivotZero { index: k })?;
            let (quot, rem) = (&polys[k + 1] - &polys[k].scale(&v)).divmod(&divisor)?;
            if !rem.is_zero() {
                return Err(Error::RecurrenceBroken { index: k });
            }
            Ok(quot)
        })
        .collect()
}

/// Coefficient-level formulas: `u~_n = u_n V_n/V_{n-1}` for `n = 1..N`,
/// `b~_n = b_{n+1} + V_{n+1} - V_n` for `n < N`, and the top `b~_N` from
/// the trace, since both matrices share the characteristic polynomial.
pub fn christoffel_coefficients(j: &JacobiMatrix, v: &[Scalar]) -> Result<JacobiMatrix> {
    let n = j.n();
    let mut b: Vec<Scalar> = (0..n).map(|k| &j.b()[k + 1] + &v[k + 1] - &v[k]).collect();
    let trace: Scalar = j.b().iter().sum();
    let partial: Scalar = b.iter().sum();
    b.push(trace - partial);
    let u = (1..=n)
        .map(|k| {
            (&j.u()[k - 1] * &v[k])
                .checked_div(&v[k - 1])
                .ok_or(Error::PivotZero { index: k })
        })
        .collect::<Result<Vec<_>>>()?;
    JacobiMatrix::new(b, u)
}

/// `P_n = P~_n - U_n P~_{n-1}` for `n = 1..N+1`, then recover `J` by the
/// three-term identity.
fn apply_multipliers(tilde: &JacobiMatrix, multipliers: &[Scalar]) -> Result<JacobiMatrix> {
    let n = tilde.n();
    let tp = tilde.generate_polys(n + 1);
    let mut polys = vec![Polynomial::one()];
    for k in 1..=n + 1 {
        polys.push(&tp[k] - &tp[k - 1].scale(&multipliers[k - 1]));
    }
    JacobiMatrix::from_polys(&polys)
}

/// Geronimus transform with `phi_0 = 1`, `phi_1 = seed` and
/// `phi_{n+1} = (a - b~_n) phi_n - u~_n phi_{n-1}`.
pub fn geronimus(tilde: &JacobiMatrix, a: &Scalar, seed: &Scalar) -> Result<(JacobiMatrix, TransformRecord)> {
    let n = tilde.n();
    let mut phi = vec![Scalar::one(), seed.clone()];
    for k in 1..=n {
        let next = (a - &tilde.b()[k]) * &phi[k] - &tilde.u()[k - 1] * &phi[k - 1];
        phi.push(next);
    }
    let multipliers = (1..=n + 1)
        .map(|k| phi[k].checked_div(&phi[k - 1]).ok_or(Error::ZeroPhi { index: k - 1 }))
        .collect::<Result<Vec<_>>>()?;
    let result = apply_multipliers(tilde, &multipliers)?;
    let record = TransformRecord {
        kind: TransformKind::Geronimus { a: a.clone(), seed: seed.clone() },
        multipliers,
        source: tilde.clone(),
        result: result.clone(),
        inverse_seed: None,
    };
    Ok((result, record))
}

/// `F_n(z) = sum_s w_s P_n(x_s)/(z - x_s)` for `n = 0..N+1`.
pub fn second_kind_values(j: &JacobiMatrix, spectral: &SpectralData, z: &Scalar) -> Result<Vec<Scalar>> {
    let polys = j.generate_polys(j.n() + 1);
    let inv: Vec<Scalar> = spectral
        .nodes()
        .iter()
        .map(|x| (z - x).checked_recip().ok_or(Error::PoleHit))
        .collect::<Result<_>>()?;
    Ok(polys
        .iter()
        .map(|p| {
            spectral
                .nodes()
                .iter()
                .zip(spectral.weights())
                .zip(&inv)
                .map(|((x, w), d)| w * &p.eval(x) * d)
                .sum()
        })
        .collect())
}

/// Uvarov transform: Geronimus with `U_n = F_n(a)/F_{n-1}(a)` taken from
/// the defining sums.
pub fn uvarov(j: &JacobiMatrix, spectral: &SpectralData, a: &Scalar) -> Result<(JacobiMatrix, TransformRecord)> {
    let f = second_kind_values(j, spectral, a)?;
    let multipliers = (1..f.len())
        .map(|k| f[k].checked_div(&f[k - 1]).ok_or(Error::ZeroF { index: k - 1 }))
        .collect::<Result<Vec<_>>>()?;
    let result = apply_multipliers(j, &multipliers)?;
    let record = TransformRecord {
        kind: TransformKind::Uvarov { a: a.clone() },
        multipliers,
        source: j.clone(),
        result: result.clone(),
        inverse_seed: None,
    };
    Ok((result, record))
}
