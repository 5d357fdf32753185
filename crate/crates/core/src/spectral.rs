//! Jacobi matrices, mirror duality, discrete weights, moments, Hankel
//! determinants and the Stieltjes continued fraction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::sturm::SturmChain;

/// Tridiagonal recurrence data `x P_n = P_{n+1} + b_n P_n + u_n P_{n-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JacobiMatrix {
    b: Vec<Scalar>,
    u: Vec<Scalar>,
}

impl JacobiMatrix {
    /// `b = b_0..b_N`, `u = u_1..u_N`, every `u_n > 0`.
    pub fn new(b: Vec<Scalar>, u: Vec<Scalar>) -> Result<Self> {
        if b.is_empty() || u.len() + 1 != b.len() {
            return Err(Error::InvalidParameter(format!(
                "need len(u) = len(b) - 1, got {} and {}",
                b.len(),
                u.len()
            )));
        }
        if let Some((i, v)) = u.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(Error::NonPositiveU {
                index: i + 1,
                value: v.to_string(),
            });
        }
        Ok(JacobiMatrix { b, u })
    }

    pub fn n(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self) -> &[Scalar] {
        &self.b
    }

    /// `u_1..u_N`.
    pub fn u(&self) -> &[Scalar] {
        &self.u
    }

    /// `u_n` with `u_0 = u_{N+1} = 0`.
    pub fn u_at(&self, n: usize) -> Scalar {
        if n == 0 || n > self.u.len() {
            Scalar::zero()
        } else {
            self.u[n - 1].clone()
        }
    }

    /// `h_n = u_1 ... u_n`.
    pub fn h(&self, n: usize) -> Scalar {
        self.u[..n].iter().cloned().product()
    }

    /// Index reversal `b*_n = b_{N-n}`, `u*_n = u_{N+1-n}`.
    pub fn mirror_dual(&self) -> JacobiMatrix {
        JacobiMatrix {
            b: self.b.iter().rev().cloned().collect(),
            u: self.u.iter().rev().cloned().collect(),
        }
    }

    /// `[P_0, ..., P_upto]` from the recurrence. `upto <= N + 1`.
    pub fn generate_polys(&self, upto: usize) -> Vec<Polynomial> {
        assert!(upto <= self.b.len(), "upto exceeds N + 1");
        let mut polys = vec![Polynomial::one()];
        for n in 0..upto {
            let step = &Polynomial::linear_monic(&self.b[n]) * &polys[n];
            let next = if n == 0 {
                step
            } else {
                &step - &polys[n - 1].scale(&self.u[n - 1])
            };
            polys.push(next);
        }
        polys
    }

    /// `P_{N+1}`, whose roots carry the orthogonality.
    pub fn characteristic_polynomial(&self) -> Polynomial {
        self.generate_polys(self.b.len()).pop().expect("nonempty")
    }

    /// Dense `(N+1) x (N+1)` matrix with `b` on the diagonal, `u` below and
    /// ones above.
    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let size = self.b.len();
        let mut m = vec![vec![Scalar::zero(); size]; size];
        for i in 0..size {
            m[i][i] = self.b[i].clone();
            if i + 1 < size {
                m[i][i + 1] = Scalar::one();
                m[i + 1][i] = self.u[i].clone();
            }
        }
        m
    }

    /// Rebuilds recurrence data from monic `P_0..P_{N+1}`, checking the
    /// three-term identity at every step.
    pub fn from_polys(polys: &[Polynomial]) -> Result<JacobiMatrix> {
        if polys.len() < 2 {
            return Err(Error::InvalidParameter("need at least P_0 and P_1".into()));
        }
        for (k, p) in polys.iter().enumerate() {
            if p.degree() != Some(k) || !p.is_monic() {
                return Err(Error::RecurrenceBroken { index: k });
            }
        }
        let mut b = Vec::with_capacity(polys.len() - 1);
        let mut u = Vec::with_capacity(polys.len() - 2);
        for n in 0..polys.len() - 1 {
            let shifted = &Polynomial::new(
                std::iter::once(Scalar::zero())
                    .chain(polys[n].coeffs().iter().cloned())
                    .collect(),
            ) - &polys[n + 1];
            // shifted = x P_n - P_{n+1} = b_n P_n + u_n P_{n-1}
            let bn = shifted.coeff(n);
            let rest = &shifted - &polys[n].scale(&bn);
            if n == 0 {
                if !rest.is_zero() {
                    return Err(Error::RecurrenceBroken { index: 0 });
                }
            } else {
                let un = rest.coeff(n - 1);
                if rest != polys[n - 1].scale(&un) {
                    return Err(Error::RecurrenceBroken { index: n });
                }
                u.push(un);
            }
            b.push(bn);
        }
        JacobiMatrix::new(b, u)
    }
}

/// Nodes in increasing order with positive weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    nodes: Vec<Scalar>,
    weights: Vec<Scalar>,
}

impl SpectralData {
    pub fn new(nodes: Vec<Scalar>, weights: Vec<Scalar>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::InvalidParameter("nodes and weights differ in length".into()));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("nodes must be strictly increasing".into()));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight { index: i });
        }
        Ok(SpectralData { nodes, weights })
    }

    pub fn nodes(&self) -> &[Scalar] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn total_mass(&self) -> Scalar {
        self.weights.iter().sum()
    }
}

fn residual_threshold(x: &Scalar) -> Option<Scalar> {
    x.precision().map(|p| Scalar::pow2_neg(p / 2))
}

fn check_nodes(top: &Polynomial, nodes: &[Scalar]) -> Result<()> {
    let expected = top.degree().unwrap_or(0);
    if nodes.len() != expected {
        return Err(Error::InvalidParameter(format!(
            "expected {expected} nodes, got {}",
            nodes.len()
        )));
    }
    for (i, x) in nodes.iter().enumerate() {
        let r = top.eval(x);
        let ok = match residual_threshold(&r) {
            None => r.is_zero(),
            Some(tol) => r.abs() < tol,
        };
        if !ok {
            return Err(Error::NodeMismatch { index: i });
        }
    }
    Ok(())
}

/// `w_s = h_N / (P'_{N+1}(x_s) P_N(x_s))` for the polynomials of `chain`.
pub fn primal_weights(chain: &SturmChain, nodes: &[Scalar]) -> Result<SpectralData> {
    weights_from_pair(chain.top(), chain.poly(chain.n()), &chain.jacobi().h(chain.n()), nodes)
}

/// Same formula driven by recurrence data instead of a chain.
pub fn jacobi_weights(j: &JacobiMatrix, nodes: &[Scalar]) -> Result<SpectralData> {
    let polys = j.generate_polys(j.n() + 1);
    weights_from_pair(&polys[j.n() + 1], &polys[j.n()], &j.h(j.n()), nodes)
}

fn weights_from_pair(
    top: &Polynomial,
    next: &Polynomial,
    h_n: &Scalar,
    nodes: &[Scalar],
) -> Result<SpectralData> {
    check_nodes(top, nodes)?;
    let dtop = top.derivative();
    let weights = nodes
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let denom = dtop.eval(x) * next.eval(x);
            h_n.checked_div(&denom).ok_or(Error::NonPositiveWeight { index: i })
        })
        .collect::<Result<Vec<_>>>()?;
    SpectralData::new(nodes.to_vec(), weights)
}

/// `w*_s = P_N(x_s) / P'_{N+1}(x_s)`.
pub fn dual_weights(top: &Polynomial, next: &Polynomial, nodes: &[Scalar]) -> Result<SpectralData> {
    check_nodes(top, nodes)?;
    let dtop = top.derivative();
    let weights = nodes
        .iter()
        .enumerate()
        .map(|(i, x)| {
            next.eval(x)
                .checked_div(&dtop.eval(x))
                .ok_or(Error::NonPositiveWeight { index: i })
        })
        .collect::<Result<Vec<_>>>()?;
    SpectralData::new(nodes.to_vec(), weights)
}

/// Largest `|w_s w*_s - h_N / P'_{N+1}(x_s)^2|` over the nodes.
pub fn duality_product_check(primal: &SpectralData, dual: &SpectralData, chain: &SturmChain) -> Scalar {
    let dtop = chain.top().derivative();
    let h_n = chain.jacobi().h(chain.n());
    primal
        .nodes()
        .iter()
        .zip(primal.weights().iter().zip(dual.weights()))
        .map(|(x, (w, wd))| {
            let d = dtop.eval(x);
            (w * wd - &h_n / (&d * &d)).abs()
        })
        .fold(Scalar::zero(), |acc, r| Scalar::max_of(&acc, &r).clone())
}

/// `c*_k = (N+1)^{-1} sum x_s^k`.
pub fn dual_moments(nodes: &[Scalar], k: u32) -> Scalar {
    let total: Scalar = nodes.iter().map(|x| x.powi(k as i32)).sum();
    total / Scalar::int(nodes.len() as i64)
}

/// One row of [`hankel_tests`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HankelEntry {
    pub n: usize,
    pub delta: Scalar,
    pub delta_shifted: Scalar,
    pub both_positive: bool,
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss_determinant(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let size = m.len();
    if size == 0 {
        return Scalar::one();
    }
    let mut sign_flip = false;
    let mut prev = Scalar::one();
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Scalar::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

fn hankel(moments: &[Scalar], offset: usize, n: usize) -> Vec<Vec<Scalar>> {
    (0..=n)
        .map(|i| (0..=n).map(|j| moments[offset + i + j].clone()).collect())
        .collect()
}

/// `Delta_n = det(c_{i+j})` and `Delta_n^(1) = det(c_{i+j+1})` for `n = 0..=n_max`.
pub fn hankel_tests(moments: &[Scalar], n_max: usize) -> Result<Vec<HankelEntry>> {
    let needed = 2 * n_max + 2;
    if moments.len() < needed {
        return Err(Error::InsufficientMoments {
            needed,
            got: moments.len(),
        });
    }
    Ok((0..=n_max)
        .map(|n| {
            let delta = bareiss_determinant(hankel(moments, 0, n));
            let delta_shifted = bareiss_determinant(hankel(moments, 1, n));
            let both_positive = delta.is_positive() && delta_shifted.is_positive();
            HankelEntry {
                n,
                delta,
                delta_shifted,
                both_positive,
            }
        })
        .collect())
}

/// `1/(z - b_0 - u_1/(z - b_1 - ... - u_N/(z - b_N)))`, evaluated bottom-up.
pub fn stieltjes_fraction(j: &JacobiMatrix, z: &Scalar) -> Result<Scalar> {
    let n = j.n();
    let mut tail = z - &j.b[n];
    for k in (1..=n).rev() {
        let frac = j.u[k - 1].checked_div(&tail).ok_or(Error::PoleHit)?;
        tail = z - &j.b[k - 1] - frac;
    }
    tail.checked_recip().ok_or(Error::PoleHit)
}

/// `sum w_s / (z - x_s)`.
pub fn partial_fraction(spectral: &SpectralData, z: &Scalar) -> Result<Scalar> {
    spectral
        .nodes()
        .iter()
        .zip(spectral.weights())
        .map(|(x, w)| w.checked_div(&(z - x)).ok_or(Error::PoleHit))
        .sum::<Result<Scalar>>()
}

/// Gram matrix summary of [`check_orthogonality`].
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityReport {
    pub max_off_diagonal: Scalar,
    pub diagonal: Vec<Scalar>,
}

/// Off-diagonal residual and diagonal of `sum_s w_s P_n(x_s) P_m(x_s)`.
pub fn check_orthogonality(polys: &[Polynomial], spectral: &SpectralData) -> OrthogonalityReport {
    let values: Vec<Vec<Scalar>> = polys
        .iter()
        .map(|p| spectral.nodes().iter().map(|x| p.eval(x)).collect())
        .collect();
    let inner = |a: &[Scalar], b: &[Scalar]| -> Scalar {
        a.iter()
            .zip(b)
            .zip(spectral.weights())
            .map(|((pa, pb), w)| w * pa * pb)
            .sum()
    };
    let mut max_off = Scalar::zero();
    let mut diagonal = Vec::with_capacity(polys.len());
    for n in 0..polys.len() {
        diagonal.push(inner(&values[n], &values[n]));
        for m in 0..n {
            let r = inner(&values[n], &values[m]).abs();
            if r > max_off {
                max_off = r;
            }
        }
    }
    OrthogonalityReport {
        max_off_diagonal: max_off,
        diagonal,
    }
}
