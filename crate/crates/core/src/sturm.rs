//! Euclidean (Sturm) chains of monic polynomial pairs.
//!
//! Dividing `P_{n+1}` by `P_n` leaves quotient `x - b_n` and remainder
//! `-u_n P_{n-1}` with `P_{n-1}` monic. Running this down to `P_0 = 1` yields
//! the recurrence coefficients of a finite orthogonal family on the roots of
//! the top polynomial. The remainders are positive multiples of the classical
//! negated-remainder Sturm sequence, so sign variations can be counted on the
//! monic chain directly.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::spectral::JacobiMatrix;

/// The chain `[P_{N+1}, P_N, ..., P_0]` together with `b_0..b_N` and `u_1..u_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SturmChain {
    polys: Vec<Polynomial>,
    b: Vec<Scalar>,
    u: Vec<Scalar>,
}

impl SturmChain {
    /// `N`, the degree of `P_N`.
    pub fn n(&self) -> usize {
        self.b.len() - 1
    }

    /// Chain polynomials from the top down: `polys()[0] = P_{N+1}`.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// `P_k` by degree.
    pub fn poly(&self, k: usize) -> &Polynomial {
        &self.polys[self.polys.len() - 1 - k]
    }

    pub fn top(&self) -> &Polynomial {
        &self.polys[0]
    }

    pub fn b(&self) -> &[Scalar] {
        &self.b
    }

    /// `u_1..u_N`; `u()[0]` is `u_1`.
    pub fn u(&self) -> &[Scalar] {
        &self.u
    }

    pub fn jacobi(&self) -> JacobiMatrix {
        JacobiMatrix::new(self.b.clone(), self.u.clone()).expect("chain coefficients are valid")
    }

    /// Sign variations of the chain at `x`, zeros skipped.
    pub fn variations_at(&self, x: &Scalar) -> usize {
        count_variations(self.polys.iter().map(|p| p.eval(x).signum()))
    }

    /// Sign variations at `-inf` (`at_plus = false`) or `+inf`.
    pub fn variations_at_infinity(&self, at_plus: bool) -> usize {
        count_variations(self.polys.iter().map(|p| {
            let lead = p.leading().map_or(Ordering::Equal, Scalar::signum);
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !at_plus && odd {
                lead.reverse()
            } else {
                lead
            }
        }))
    }
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// `(P, P' / (N+1))` for a monic `P` of degree `N+1 >= 1`.
pub fn sturmian_pair(p: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let deg = p.degree().ok_or(Error::DegreeMismatch {
        expected: 1,
        found: 0,
    })?;
    if deg == 0 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: 0,
        });
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let next = p.derivative().scale(&Scalar::ratio(1, deg as i64));
    Ok((p.clone(), next))
}

/// Runs the Euclidean algorithm on a monic pair of consecutive degrees.
pub fn build_chain(top: &Polynomial, next: &Polynomial) -> Result<SturmChain> {
    if !top.is_monic() || !next.is_monic() {
        return Err(Error::NotMonic);
    }
    let n_plus_1 = top.degree().expect("monic is nonzero");
    let found = next.degree().expect("monic is nonzero");
    if n_plus_1 == 0 || found + 1 != n_plus_1 {
        return Err(Error::DegreeMismatch {
            expected: n_plus_1.saturating_sub(1),
            found,
        });
    }
    let n = found;
    let mut polys = vec![top.clone(), next.clone()];
    // collected from the top index down, reversed at the end
    let mut b_rev = Vec::with_capacity(n + 1);
    let mut u_rev = Vec::with_capacity(n);
    for index in (1..=n).rev() {
        let upper = &polys[polys.len() - 2];
        let lower = &polys[polys.len() - 1];
        let (quot, rem) = upper.divmod(lower)?;
        b_rev.push(-quot.coeff(0));
        let rem_deg = match rem.degree() {
            None => return Err(Error::ZeroRemainder { index }),
            Some(d) => d,
        };
        if rem_deg + 1 < index {
            return Err(Error::DegreeGap { index });
        }
        let u = -rem.leading().expect("nonzero remainder");
        if !u.is_positive() {
            return Err(Error::NonPositiveU {
                index,
                value: u.to_string(),
            });
        }
        let lower_next = rem.scale(&(-(Scalar::one() / &u)));
        u_rev.push(u);
        polys.push(lower_next);
    }
    // P_1 = x - b_0
    b_rev.push(-polys[polys.len() - 2].coeff(0));
    b_rev.reverse();
    u_rev.reverse();
    Ok(SturmChain {
        polys,
        b: b_rev,
        u: u_rev,
    })
}

/// Number of roots of `p` in `(lo, hi]` by the sign-variation difference.
///
/// `p` is normalized to monic first; it must have simple real roots, since
/// anything else makes the chain fail. Endpoints that are roots raise
/// [`Error::EndpointIsRoot`].
pub fn count_roots(p: &Polynomial, lo: &Scalar, hi: &Scalar) -> Result<usize> {
    if lo >= hi {
        return Err(Error::InvalidInterval);
    }
    let deg = p.degree().ok_or(Error::ZeroDivisor)?;
    for end in [lo, hi] {
        if p.eval(end).is_zero() {
            return Err(Error::EndpointIsRoot(end.to_string()));
        }
    }
    if deg == 0 {
        return Ok(0);
    }
    let monic = p.monic()?;
    let (top, next) = sturmian_pair(&monic)?;
    let chain = build_chain(&top, &next)?;
    Ok(chain.variations_at(lo) - chain.variations_at(hi))
}

/// `true` iff `q` (degree `deg p - 1`) strictly interlaces `p`, decided by
/// whether the monic chain of the pair exists with all `u_n > 0`.
pub fn interlaces(p: &Polynomial, q: &Polynomial) -> bool {
    let (Ok(p), Ok(q)) = (p.monic(), q.monic()) else {
        return false;
    };
    build_chain(&p, &q).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn poly(c: &[Scalar]) -> Polynomial {
        Polynomial::new(c.to_vec())
    }

    fn cubic() -> Polynomial {
        Polynomial::from_ints(&[0, 2, -3, 1])
    }

    #[test]
    fn sturmian_pair_examples() {
        let (p, d) = sturmian_pair(&cubic()).unwrap();
        assert_eq!(p, cubic());
        assert_eq!(d, poly(&[q(2, 3), q(-2, 1), q(1, 1)]));

        let (_, d) = sturmian_pair(&Polynomial::from_ints(&[0, 1])).unwrap();
        assert_eq!(d, Polynomial::one());

        let t3 = poly(&[q(0, 1), q(-3, 4), q(0, 1), q(1, 1)]);
        let (_, d) = sturmian_pair(&t3).unwrap();
        assert_eq!(d, poly(&[q(-1, 4), q(0, 1), q(1, 1)]));

        assert_eq!(
            sturmian_pair(&Polynomial::from_ints(&[0, 2, -3, 2])),
            Err(Error::NotMonic)
        );
        assert!(sturmian_pair(&Polynomial::one()).is_err());
    }

    #[test]
    fn build_chain_linear_grid() {
        let (p, d) = sturmian_pair(&cubic()).unwrap();
        let c = build_chain(&p, &d).unwrap();
        assert_eq!(c.b(), &[q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(c.u(), &[q(1, 3), q(2, 3)]);
        assert_eq!(c.poly(0), &Polynomial::one());
        assert_eq!(c.poly(1), &Polynomial::from_ints(&[-1, 1]));
    }

    #[test]
    fn build_chain_chebyshev() {
        let t3 = poly(&[q(0, 1), q(-3, 4), q(0, 1), q(1, 1)]);
        let u2 = poly(&[q(-1, 4), q(0, 1), q(1, 1)]);
        let c = build_chain(&t3, &u2).unwrap();
        assert_eq!(c.b(), &[Scalar::zero(), Scalar::zero(), Scalar::zero()]);
        assert_eq!(c.u(), &[q(1, 4), q(1, 2)]);
    }

    #[test]
    fn build_chain_quadratic_grid() {
        let top = Polynomial::from_roots(&[Scalar::int(0), Scalar::int(2), Scalar::int(6)]);
        let next = poly(&[q(4, 1), q(-16, 3), q(1, 1)]);
        let c = build_chain(&top, &next).unwrap();
        assert_eq!(c.b(), &[q(12, 7), q(76, 21), q(8, 3)]);
        assert_eq!(c.u(), &[q(108, 49), q(56, 9)]);
    }

    #[test]
    fn build_chain_exponential_grid() {
        let top = Polynomial::from_roots(&[Scalar::int(1), Scalar::int(2)]);
        let next = poly(&[q(-3, 2), q(1, 1)]);
        let c = build_chain(&top, &next).unwrap();
        assert_eq!(c.b(), &[q(3, 2), q(3, 2)]);
        assert_eq!(c.u(), &[q(1, 4)]);
    }

    #[test]
    fn build_chain_errors() {
        // x^2 + 1 over x: remainder +1, so u_1 = -1
        let e = build_chain(&Polynomial::from_ints(&[1, 0, 1]), &Polynomial::from_ints(&[0, 1]));
        assert!(matches!(e, Err(Error::NonPositiveU { index: 1, .. })));
        // common factor (x-1)
        let top = Polynomial::from_roots(&[Scalar::int(1), Scalar::int(2)]);
        let e = build_chain(&top, &Polynomial::from_ints(&[-1, 1]));
        assert_eq!(e, Err(Error::ZeroRemainder { index: 1 }));
        // x^3 over x^2: remainder 0 ... use x^3 - x over x^2 -> remainder -x is fine;
        // x^3 + 1 over x^2 gives remainder 1 (degree gap)
        let e = build_chain(&Polynomial::from_ints(&[1, 0, 0, 1]), &Polynomial::from_ints(&[0, 0, 1]));
        assert_eq!(e, Err(Error::DegreeGap { index: 2 }));
        let e = build_chain(&cubic(), &Polynomial::from_ints(&[0, 1]));
        assert!(matches!(e, Err(Error::DegreeMismatch { .. })));
        let e = build_chain(&cubic(), &Polynomial::from_ints(&[0, 1, 2]));
        assert_eq!(e, Err(Error::NotMonic));
    }

    #[test]
    fn count_roots_examples() {
        assert_eq!(count_roots(&cubic(), &q(1, 2), &q(5, 2)), Ok(2));
        assert_eq!(count_roots(&cubic(), &q(-1, 1), &q(3, 1)), Ok(3));
        let t3 = poly(&[q(0, 1), q(-3, 4), q(0, 1), q(1, 1)]);
        assert_eq!(count_roots(&t3, &q(1, 10), &q(1, 1)), Ok(1));
        assert!(matches!(
            count_roots(&t3, &q(0, 1), &q(1, 1)),
            Err(Error::EndpointIsRoot(_))
        ));
        assert_eq!(count_roots(&cubic(), &q(3, 1), &q(1, 1)), Err(Error::InvalidInterval));
        // non-monic input with the same roots
        assert_eq!(count_roots(&cubic().scale(&q(-5, 2)), &q(1, 2), &q(5, 2)), Ok(2));
        assert!(matches!(
            count_roots(&Polynomial::from_ints(&[1, 0, 1]), &q(-1, 1), &q(1, 1)),
            Err(Error::NonPositiveU { .. })
        ));
    }

    #[test]
    fn interlacing_examples() {
        let p = Polynomial::from_ints(&[-1, 0, 1]);
        assert!(interlaces(&p, &Polynomial::from_ints(&[0, 1])));
        assert!(!interlaces(&p, &Polynomial::from_ints(&[-2, 1])));
        let (a, b) = sturmian_pair(&cubic()).unwrap();
        assert!(interlaces(&a, &b));
    }

    #[test]
    fn variations_at_infinity_span_all_roots() {
        let (a, b) = sturmian_pair(&cubic()).unwrap();
        let c = build_chain(&a, &b).unwrap();
        assert_eq!(c.variations_at_infinity(false) - c.variations_at_infinity(true), 3);
    }
}
