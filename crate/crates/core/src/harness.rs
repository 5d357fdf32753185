//! Grid-by-grid verification: the Euclidean chain on each grid is the
//! reference, and every closed form is compared against it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{chebyshev_u_weights, legendre_dual_coeffs, sturmian_trig_u, FamilySpec, LegendreGrid};
use crate::grids::{GridKind, GridSpec};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::spectral::{dual_weights, duality_product_check, primal_weights, JacobiMatrix};
use crate::sturm::{build_chain, sturmian_pair, SturmChain};
use crate::transforms::{christoffel, christoffel_coefficients, uvarov};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum Status {
    ExactMatch,
    WithinTolerance(Scalar),
    Mismatch(String),
    Skipped(String),
    /// A closed form that disagrees with the reference chain in a way
    /// already accounted for; does not fail the suite.
    KnownDiscrepancy(String),
}

impl Status {
    pub fn is_failure(&self) -> bool {
        matches!(self, Status::Mismatch(_))
    }
}

/// First differing index with both values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub what: String,
    pub index: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubCheck {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub grid: GridSpec,
    pub n: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub subchecks: Vec<SubCheck>,
}

impl SubCheck {
    fn exact(name: &str) -> Self {
        SubCheck { name: name.into(), status: Status::ExactMatch, witness: None }
    }

    fn skipped(name: &str, reason: String) -> Self {
        SubCheck { name: name.into(), status: Status::Skipped(reason), witness: None }
    }

    fn mismatch(name: &str, witness: Witness) -> Self {
        let detail = format!(
            "{}[{}]: expected {}, found {}",
            witness.what, witness.index, witness.expected, witness.found
        );
        SubCheck { name: name.into(), status: Status::Mismatch(detail), witness: Some(witness) }
    }

    fn from_error(name: &str, e: Error) -> Self {
        SubCheck { name: name.into(), status: Status::Mismatch(e.to_string()), witness: None }
    }

    /// Demotes a mismatch to a known discrepancy.
    fn known(mut self, note: &str) -> Self {
        if let Status::Mismatch(detail) = &self.status {
            self.status = Status::KnownDiscrepancy(format!("{note}: {detail}"));
        }
        self
    }
}

impl CheckReport {
    fn assemble(name: &str, grid: GridSpec, subchecks: Vec<SubCheck>) -> Self {
        let n = grid.n;
        let mut status = Status::ExactMatch;
        let mut witness = None;
        let mut residual: Option<Scalar> = None;
        let mut live = 0;
        for sc in &subchecks {
            match &sc.status {
                Status::Mismatch(d) => {
                    if !status.is_failure() {
                        status = Status::Mismatch(format!("{}: {d}", sc.name));
                        witness = sc.witness.clone();
                    }
                    live += 1;
                }
                Status::WithinTolerance(r) => {
                    residual = Some(match residual {
                        Some(prev) if prev >= *r => prev,
                        _ => r.clone(),
                    });
                    live += 1;
                }
                Status::ExactMatch | Status::KnownDiscrepancy(_) => live += 1,
                Status::Skipped(_) => {}
            }
        }
        if !status.is_failure() {
            if live == 0 {
                status = Status::Skipped(
                    subchecks
                        .iter()
                        .find_map(|s| match &s.status {
                            Status::Skipped(r) => Some(r.clone()),
                            _ => None,
                        })
                        .unwrap_or_else(|| "no checks".into()),
                );
            } else if let Some(r) = residual {
                status = Status::WithinTolerance(r);
            }
        }
        CheckReport { name: name.into(), grid, n, status, witness, subchecks }
    }

    fn skipped(name: &str, grid: GridSpec, reason: &str) -> Self {
        CheckReport {
            name: name.into(),
            n: grid.n,
            grid,
            status: Status::Skipped(reason.into()),
            witness: None,
            subchecks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        !self.status.is_failure()
    }
}

/// The reference chain: Euclidean algorithm on the Sturmian pair.
pub fn oracle_chain(spec: &GridSpec) -> Result<SturmChain> {
    let (top, next) = sturmian_pair(&spec.characteristic_polynomial()?)?;
    build_chain(&top, &next)
}

/// Tolerance used on float checks: `2^-(precision - 56)`, i.e. `2^-200` at 256 bits.
pub fn float_tolerance(precision: usize) -> Scalar {
    Scalar::pow2_neg(precision.saturating_sub(56).max(8))
}

fn compare_lists(name: &str, what: &str, expected: &[Scalar], found: &[Scalar]) -> Option<SubCheck> {
    if expected.len() != found.len() {
        return Some(SubCheck::mismatch(
            name,
            Witness {
                what: format!("{what}.len"),
                index: 0,
                expected: expected.len().to_string(),
                found: found.len().to_string(),
            },
        ));
    }
    expected.iter().zip(found).position(|(e, f)| e != f).map(|i| {
        SubCheck::mismatch(
            name,
            Witness {
                what: what.into(),
                index: i,
                expected: expected[i].to_string(),
                found: found[i].to_string(),
            },
        )
    })
}

fn compare_values(name: &str, what: &str, expected: &[Scalar], found: &[Scalar]) -> SubCheck {
    compare_lists(name, what, expected, found).unwrap_or_else(|| SubCheck::exact(name))
}

/// Exact comparison of two recurrence tables; `u` is reported 1-based.
pub fn compare_jacobi(name: &str, expected: &JacobiMatrix, found: &JacobiMatrix) -> SubCheck {
    if let Some(sc) = compare_lists(name, "b", expected.b(), found.b()) {
        return sc;
    }
    match compare_lists(name, "u", expected.u(), found.u()) {
        Some(mut sc) => {
            if let Some(w) = sc.witness.as_mut() {
                w.index += 1;
            }
            sc
        }
        None => SubCheck::exact(name),
    }
}

fn compare_close(name: &str, what: &str, expected: &[Scalar], found: &[Scalar], tol: &Scalar) -> SubCheck {
    let mut worst = Scalar::zero();
    for (i, (e, f)) in expected.iter().zip(found).enumerate() {
        let r = (e - f).abs();
        if r >= *tol {
            return SubCheck::mismatch(
                name,
                Witness { what: what.into(), index: i, expected: e.to_string(), found: f.to_string() },
            );
        }
        if r > worst {
            worst = r;
        }
    }
    if expected.len() != found.len() {
        return SubCheck::mismatch(
            name,
            Witness {
                what: format!("{what}.len"),
                index: 0,
                expected: expected.len().to_string(),
                found: found.len().to_string(),
            },
        );
    }
    if expected.iter().chain(found).all(|x| x.is_rational()) {
        SubCheck::exact(name)
    } else {
        SubCheck { name: name.into(), status: Status::WithinTolerance(worst), witness: None }
    }
}

fn legendre_subcheck(spec: &GridSpec, chain: &SturmChain, precision: usize) -> SubCheck {
    const NAME: &str = "legendre-duality";
    let nodes = match spec.nodes(precision) {
        Ok(v) => v,
        Err(e) => return SubCheck::from_error(NAME, e),
    };
    match dual_weights(chain.top(), chain.poly(chain.n()), &nodes) {
        Ok(w) => {
            let expected = vec![Scalar::ratio(1, spec.n as i64 + 1); nodes.len()];
            compare_close(NAME, "w*", &expected, w.weights(), &float_tolerance(precision))
        }
        Err(e) => SubCheck::from_error(NAME, e),
    }
}

/// Dual weights of the Sturmian pair are all `1/(N+1)`.
pub fn verify_legendre_duality(spec: &GridSpec, precision: usize) -> CheckReport {
    let sub = match oracle_chain(spec) {
        Ok(chain) => legendre_subcheck(spec, &chain, precision),
        Err(e) => SubCheck::from_error("legendre-duality", e),
    };
    CheckReport::assemble("legendre-duality", spec.clone(), vec![sub])
}

fn duality_product_subcheck(spec: &GridSpec, chain: &SturmChain) -> SubCheck {
    const NAME: &str = "duality-product";
    let run = || -> Result<SubCheck> {
        let nodes = spec.nodes(0)?;
        let p = primal_weights(chain, &nodes)?;
        let d = dual_weights(chain.top(), chain.poly(chain.n()), &nodes)?;
        let r = duality_product_check(&p, &d, chain);
        Ok(compare_values(NAME, "residual", &[Scalar::zero()], &[r]))
    };
    run().unwrap_or_else(|e| SubCheck::from_error(NAME, e))
}

fn chain_or_report(name: &str, spec: &GridSpec) -> std::result::Result<SturmChain, Box<CheckReport>> {
    oracle_chain(spec).map_err(|e| Box::new(CheckReport::assemble(name, spec.clone(), vec![SubCheck::from_error("oracle", e)])))
}

fn int(n: usize) -> Scalar {
    Scalar::int(n as i64)
}

fn neg_int(n: usize) -> Scalar {
    -Scalar::int(n as i64)
}

fn family_jacobi(f: Result<FamilySpec>) -> Result<JacobiMatrix> {
    f?.jacobi()
}

fn jacobi_subcheck(name: &str, expected: Result<JacobiMatrix>, found: &JacobiMatrix) -> SubCheck {
    match expected {
        Ok(e) => compare_jacobi(name, &e, found),
        Err(e) => SubCheck::from_error(name, e),
    }
}

/// Linear grid: the chain is Hahn(-N-1, -N-1, N), the mirror of Hahn(0, 0, N);
/// squared-binomial weights; the Hahn difference equation.
pub fn verify_linear(n: usize) -> CheckReport {
    const NAME: &str = "linear";
    let spec = GridSpec::linear(n);
    if n == 0 {
        return CheckReport::skipped(NAME, spec, "N = 0: single-node grid");
    }
    let chain = match chain_or_report(NAME, &spec) {
        Ok(c) => c,
        Err(r) => return *r,
    };
    let j = chain.jacobi();
    let mut subs = vec![
        jacobi_subcheck("hahn-direct", family_jacobi(FamilySpec::hahn(neg_int(n + 1), neg_int(n + 1), n)), &j),
        jacobi_subcheck(
            "hahn-mirror",
            family_jacobi(FamilySpec::hahn(Scalar::zero(), Scalar::zero(), n)).map(|h| h.mirror_dual()),
            &j,
        ),
    ];
    subs.push(dual_formula_subcheck(LegendreGrid::Linear, n, &j.mirror_dual(), "dual-closed-form", true, true));

    let nodes = spec.nodes(0).expect("linear grid");
    subs.push(match primal_weights(&chain, &nodes) {
        Ok(w) => {
            let nu = Scalar::from(factorial(n) * factorial(n)) / Scalar::from(factorial(2 * n));
            let expected: Vec<Scalar> = (0..=n).map(|s| &nu * &Scalar::from(binomial(n, s)).powi(2)).collect();
            compare_values("squared-binomial", "w", &expected, w.weights())
        }
        Err(e) => SubCheck::from_error("squared-binomial", e),
    });
    subs.push(hahn_difference_subcheck(n, &j));
    subs.push(legendre_subcheck(&spec, &chain, 0));
    subs.push(duality_product_subcheck(&spec, &chain));
    CheckReport::assemble(NAME, spec, subs)
}

fn factorial(n: usize) -> num_bigint::BigInt {
    (1..=n).map(num_bigint::BigInt::from).product()
}

fn binomial(n: usize, k: usize) -> num_bigint::BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(x-N)^2 (P(x+1) - P(x)) + x^2 (P(x-1) - P(x)) - n(n-2N-1) P(x)` for each chain polynomial.
pub fn hahn_difference_residuals(n_top: usize, j: &JacobiMatrix) -> Vec<Polynomial> {
    let polys = j.generate_polys(n_top);
    let x = Polynomial::from_ints(&[0, 1]);
    let xm = Polynomial::new(vec![neg_int(n_top), Scalar::one()]);
    let xx = &x * &x;
    let xmxm = &xm * &xm;
    polys
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let fwd = &p.shift(&Scalar::one()) - p;
            let bwd = &p.shift(&Scalar::int(-1)) - p;
            let lhs = &(&xmxm * &fwd) + &(&xx * &bwd);
            let k = k as i64;
            &lhs - &p.scale(&Scalar::int(k * (k - 2 * n_top as i64 - 1)))
        })
        .collect()
}

fn hahn_difference_subcheck(n: usize, j: &JacobiMatrix) -> SubCheck {
    const NAME: &str = "hahn-difference-equation";
    match hahn_difference_residuals(n, j).iter().position(|r| !r.is_zero()) {
        None => SubCheck::exact(NAME),
        Some(k) => SubCheck::mismatch(
            NAME,
            Witness {
                what: "residual".into(),
                index: k,
                expected: "0".into(),
                found: hahn_difference_residuals(n, j)[k].to_string(),
            },
        ),
    }
}

fn dual_formula_subcheck(
    grid: LegendreGrid,
    n: usize,
    mirror: &JacobiMatrix,
    name: &str,
    check_b: bool,
    check_u: bool,
) -> SubCheck {
    let mut b = Vec::new();
    let mut u = Vec::new();
    for k in 0..=n {
        match legendre_dual_coeffs(grid, n, k) {
            Ok((bk, uk)) => {
                b.push(bk);
                if k > 0 {
                    u.push(uk);
                }
            }
            Err(e) => return SubCheck::from_error(name, e),
        }
    }
    if check_b {
        if let Some(sc) = compare_lists(name, "b*", &b, mirror.b()) {
            return sc;
        }
    }
    if check_u {
        if let Some(mut sc) = compare_lists(name, "u*", &u, mirror.u()) {
            if let Some(w) = sc.witness.as_mut() {
                w.index += 1;
            }
            return sc;
        }
    }
    SubCheck::exact(name)
}

/// Grid `s(s+1)`: the mirror chain is Racah(N+1/2, -1/2, 1/2), the chain
/// itself Racah(-N-1/2, 1/2, -1/2); the closed-form `u*` is asserted.
pub fn verify_quadratic_tau1(n: usize) -> CheckReport {
    const NAME: &str = "quadratic-tau1";
    let spec = GridSpec::quadratic(Scalar::one(), n).expect("tau = 1");
    if n == 0 {
        return CheckReport::skipped(NAME, spec, "N = 0: single-node grid");
    }
    let chain = match chain_or_report(NAME, &spec) {
        Ok(c) => c,
        Err(r) => return *r,
    };
    let j = chain.jacobi();
    let half = Scalar::ratio(1, 2);
    let big_half = &int(n) + &half;
    let subs = vec![
        jacobi_subcheck(
            "racah-dual",
            family_jacobi(FamilySpec::racah(big_half.clone(), -&half, half.clone(), n)),
            &j.mirror_dual(),
        ),
        jacobi_subcheck(
            "racah-direct",
            family_jacobi(FamilySpec::racah(-&big_half, half.clone(), -&half, n)),
            &j,
        ),
        dual_formula_subcheck(LegendreGrid::QuadraticTau1, n, &j.mirror_dual(), "dual-u-closed-form", false, true),
        legendre_subcheck(&spec, &chain, 0),
        duality_product_subcheck(&spec, &chain),
    ];
    CheckReport::assemble(NAME, spec, subs)
}

/// The closed-form `b*_n` on `s(s+1)`, reported without being asserted.
pub fn verify_racah_b_formula(n: usize) -> CheckReport {
    const NAME: &str = "quadratic-tau1-b-formula";
    let spec = GridSpec::quadratic(Scalar::one(), n).expect("tau = 1");
    if n == 0 {
        return CheckReport::skipped(NAME, spec, "N = 0: single-node grid");
    }
    let chain = match chain_or_report(NAME, &spec) {
        Ok(c) => c,
        Err(r) => return *r,
    };
    let sub = dual_formula_subcheck(LegendreGrid::QuadraticTau1, n, &chain.jacobi().mirror_dual(), "dual-b-closed-form", true, false)
        .known("closed-form b* disagrees with the Euclidean chain");
    let mut report = CheckReport::assemble(NAME, spec, vec![sub.clone()]);
    if let Status::KnownDiscrepancy(_) = sub.status {
        report.status = sub.status;
        report.witness = sub.witness;
    }
    report
}

/// Grid `s(s+2)` at the default Christoffel point `a = -1`.
pub fn verify_quadratic_tau2(n: usize) -> CheckReport {
    verify_quadratic_tau2_at(n, &Scalar::int(-1))
}

/// Grid `s(s+2)`: the chain is the Christoffel transform at `a` of
/// Racah(-N-3/2, 1/2, 1/2); dually Racah(N+3/2, 1/2, 1/2) is the transform
/// of the Legendre-type chain and has weights proportional to `x_s + 1`.
pub fn verify_quadratic_tau2_at(n: usize, a: &Scalar) -> CheckReport {
    const NAME: &str = "quadratic-tau2";
    let spec = GridSpec::quadratic(Scalar::int(2), n).expect("tau = 2");
    if n == 0 {
        return CheckReport::skipped(NAME, spec, "N = 0: single-node grid");
    }
    let chain = match chain_or_report(NAME, &spec) {
        Ok(c) => c,
        Err(r) => return *r,
    };
    let j = chain.jacobi();
    let half = Scalar::ratio(1, 2);
    let b32 = &int(n) + &Scalar::ratio(3, 2);
    let mut subs = Vec::new();

    let source = family_jacobi(FamilySpec::racah(-&b32, half.clone(), half.clone(), n));
    subs.push(match source.and_then(|r| christoffel(&r, a)) {
        Ok((t, _)) => compare_jacobi("christoffel-racah", &t, &j),
        Err(Error::PivotZero { index }) => {
            SubCheck::skipped("christoffel-racah", format!("PivotZero: P_{index}(a) = 0"))
        }
        Err(e) => SubCheck::from_error("christoffel-racah", e),
    });

    let dual_target = family_jacobi(FamilySpec::racah(b32.clone(), half.clone(), half.clone(), n));
    subs.push(match christoffel(&j.mirror_dual(), a) {
        Ok((t, _)) => jacobi_subcheck("christoffel-dual", dual_target, &t),
        Err(Error::PivotZero { index }) => {
            SubCheck::skipped("christoffel-dual", format!("PivotZero: P_{index}(a) = 0"))
        }
        Err(e) => SubCheck::from_error("christoffel-dual", e),
    });

    let nodes = spec.nodes(0).expect("quadratic grid");
    let shifted: Vec<Scalar> = nodes.iter().map(|x| x + &Scalar::one()).collect();
    let mass: Scalar = shifted.iter().sum();
    subs.push(match FamilySpec::racah(b32, half.clone(), half, n).and_then(|f| f.family_weights()) {
        Ok(w) => {
            let expected: Vec<Scalar> = shifted.iter().map(|v| v / &mass).collect();
            compare_values("racah-weights-shifted-node", "W", &expected, w.weights())
        }
        Err(e) => SubCheck::from_error("racah-weights-shifted-node", e),
    });

    let claimed = Scalar::from((n * (n + 1) * (2 * n + 7)) as i64) / Scalar::int(6);
    subs.push(
        compare_values("racah-weights-mass", "M", &[claimed], &[mass])
            .known("claimed mass differs from sum of (x_s + 1)"),
    );
    subs.push(legendre_subcheck(&spec, &chain, 0));
    subs.push(duality_product_subcheck(&spec, &chain));
    CheckReport::assemble(NAME, spec, subs)
}

/// Exponential grid `q^{-s}`: Christoffel of q-Hahn(q^{-N-1}, q^{-N-1}) at 0
/// gives the chain; Uvarov of q-Hahn(1, 1) at 0 gives its mirror.
pub fn verify_exponential(q: &Scalar, n: usize) -> CheckReport {
    const NAME: &str = "exponential";
    let spec = match GridSpec::exponential(q.clone(), n) {
        Ok(s) => s,
        Err(e) => {
            let fallback = GridSpec::linear(n);
            return CheckReport::assemble(NAME, fallback, vec![SubCheck::from_error("grid", e)]);
        }
    };
    if n == 0 {
        return CheckReport::skipped(NAME, spec, "N = 0: single-node grid");
    }
    let chain = match chain_or_report(NAME, &spec) {
        Ok(c) => c,
        Err(r) => return *r,
    };
    let j = chain.jacobi();
    let zero = Scalar::zero();
    let top = q.powi(-(n as i32) - 1);
    let mut subs = Vec::new();

    let qh = FamilySpec::q_hahn(top.clone(), top, q.clone(), n).and_then(|f| f.jacobi());
    match qh.and_then(|qj| christoffel(&qj, &zero).map(|r| (qj, r))) {
        Ok((qj, (t, rec))) => {
            subs.push(compare_jacobi("christoffel-q-hahn", &t, &j));
            subs.push(jacobi_subcheck(
                "christoffel-coefficients",
                christoffel_coefficients(&qj, &rec.multipliers),
                &j,
            ));
        }
        Err(e) => subs.push(SubCheck::from_error("christoffel-q-hahn", e)),
    }

    let uv = FamilySpec::q_hahn(Scalar::one(), Scalar::one(), q.clone(), n)
        .and_then(|f| Ok((f.jacobi()?, f.family_weights()?)))
        .and_then(|(fj, w)| uvarov(&fj, &w, &zero));
    subs.push(match uv {
        Ok((m, _)) => compare_jacobi("uvarov-q-hahn", &m, &j.mirror_dual()),
        Err(e) => SubCheck::from_error("uvarov-q-hahn", e),
    });
    subs.push(legendre_subcheck(&spec, &chain, 0));
    subs.push(duality_product_subcheck(&spec, &chain));
    CheckReport::assemble(NAME, spec, subs)
}

/// Trig grids: exact chain coefficients, float weights.
pub fn verify_trig(first_kind: bool, n: usize, precision: usize) -> CheckReport {
    let (name, kind, grid) = if first_kind {
        ("trig1", GridKind::TrigFirstKind, LegendreGrid::TrigFirstKind)
    } else {
        ("trig2", GridKind::TrigSecondKind, LegendreGrid::TrigSecondKind)
    };
    let spec = GridSpec::new(kind, n).expect("trig grid");
    if n == 0 {
        return CheckReport::skipped(name, spec, "N = 0: single-node grid");
    }
    let chain = match chain_or_report(name, &spec) {
        Ok(c) => c,
        Err(r) => return *r,
    };
    let j = chain.jacobi();
    let tol = float_tolerance(precision);
    let mut subs = vec![
        compare_values("symmetric-zero-diagonal", "b", &vec![Scalar::zero(); n + 1], j.b()),
        compare_values(
            "sturmian-u-closed-form",
            "u",
            &(1..=n).map(|m| sturmian_trig_u(grid, n, m)).collect::<Vec<_>>(),
            j.u(),
        ),
    ];
    let weights = spec
        .nodes(precision)
        .and_then(|nodes| primal_weights(&chain, &nodes));
    match weights {
        Ok(w) => {
            subs.push(compare_close("weights-normalized", "sum", &[Scalar::one()], &[w.total_mass()], &tol));
            if first_kind {
                subs.push(match chebyshev_u_weights(n, precision) {
                    Ok(expected) => compare_close("weights-closed-form", "w", expected.weights(), w.weights(), &tol),
                    Err(e) => SubCheck::from_error("weights-closed-form", e),
                });
            }
        }
        Err(e) => subs.push(SubCheck::from_error("weights", e)),
    }
    subs.push(legendre_subcheck(&spec, &chain, precision));
    CheckReport::assemble(name, spec, subs)
}

/// Every check for `N = 1..=n_max` (or just `N = 0` when `n_max = 0`), in a
/// fixed order regardless of how the work is scheduled.
pub fn run_all(n_max: usize, qs: &[Scalar], precision: usize) -> Vec<CheckReport> {
    #[derive(Clone)]
    enum Job {
        Linear(usize),
        Tau1(usize),
        RacahB(usize),
        Tau2(usize),
        Exp(Scalar, usize),
        Trig(bool, usize),
    }
    let sizes: Vec<usize> = if n_max == 0 { vec![0] } else { (1..=n_max).collect() };
    let mut jobs = Vec::new();
    for &n in &sizes {
        jobs.push(Job::Linear(n));
        jobs.push(Job::Tau1(n));
        jobs.push(Job::RacahB(n));
        jobs.push(Job::Tau2(n));
        for q in qs {
            jobs.push(Job::Exp(q.clone(), n));
        }
        jobs.push(Job::Trig(true, n));
        jobs.push(Job::Trig(false, n));
    }
    let run = |job: &Job| match job {
        Job::Linear(n) => verify_linear(*n),
        Job::Tau1(n) => verify_quadratic_tau1(*n),
        Job::RacahB(n) => verify_racah_b_formula(*n),
        Job::Tau2(n) => verify_quadratic_tau2(*n),
        Job::Exp(q, n) => verify_exponential(q, *n),
        Job::Trig(first, n) => verify_trig(*first, *n, precision),
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        jobs.iter().map(run).collect()
    }
}

/// True when no report carries an unexpected mismatch.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

pub fn reports_to_json(reports: &[CheckReport]) -> serde_json::Value {
    serde_json::to_value(reports).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DEFAULT_PRECISION;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn assert_clean(r: &CheckReport) {
        assert!(
            matches!(r.status, Status::ExactMatch | Status::WithinTolerance(_)),
            "{} N={}: {:?}",
            r.name,
            r.n,
            r.status
        );
    }

    #[test]
    fn legendre_duality_examples() {
        assert_eq!(verify_legendre_duality(&GridSpec::linear(2), 0).status, Status::ExactMatch);
        let e = GridSpec::exponential(q(1, 2), 1).unwrap();
        assert_eq!(verify_legendre_duality(&e, 0).status, Status::ExactMatch);
        let t = GridSpec::new(GridKind::TrigFirstKind, 4).unwrap();
        match verify_legendre_duality(&t, DEFAULT_PRECISION).status {
            Status::WithinTolerance(r) => assert!(r < Scalar::pow2_neg(200)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn linear_examples() {
        for n in [1, 2, 12] {
            assert_clean(&verify_linear(n));
        }
        let c = oracle_chain(&GridSpec::linear(1)).unwrap();
        assert_eq!(c.b(), &[q(1, 2), q(1, 2)]);
        assert_eq!(c.u(), &[q(1, 4)]);
    }

    #[test]
    fn quadratic_tau1_examples() {
        let r = verify_quadratic_tau1(2);
        assert_clean(&r);
        let c = oracle_chain(&GridSpec::quadratic(Scalar::one(), 1).unwrap()).unwrap();
        assert_eq!(c.b(), &[q(1, 1), q(1, 1)]);
        assert_eq!(c.u(), &[q(1, 1)]);

        let b = verify_racah_b_formula(2);
        assert!(matches!(b.status, Status::KnownDiscrepancy(_)));
        let w = b.witness.unwrap();
        assert_eq!((w.index, w.expected.as_str(), w.found.as_str()), (0, "655/192", "8/3"));
    }

    #[test]
    fn quadratic_tau2_examples() {
        for n in 1..=4 {
            let r = verify_quadratic_tau2(n);
            assert_clean(&r);
            let mass = r.subchecks.iter().find(|s| s.name == "racah-weights-mass").unwrap();
            assert!(matches!(mass.status, Status::KnownDiscrepancy(_)));
        }
        let c = oracle_chain(&GridSpec::quadratic(Scalar::int(2), 1).unwrap()).unwrap();
        assert_eq!(c.b(), &[q(3, 2), q(3, 2)]);
        assert_eq!(c.u(), &[q(9, 4)]);
    }

    #[test]
    fn quadratic_tau2_pivot_zero_is_skipped() {
        // P_1 of Racah(-5/2, 1/2, 1/2, N=1) vanishes at b_0
        let r = FamilySpec::racah(q(-5, 2), q(1, 2), q(1, 2), 1).unwrap().jacobi().unwrap();
        let a = r.b()[0].clone();
        let report = verify_quadratic_tau2_at(1, &a);
        let sub = report.subchecks.iter().find(|s| s.name == "christoffel-racah").unwrap();
        assert_eq!(sub.status, Status::Skipped("PivotZero: P_1(a) = 0".into()));
    }

    #[test]
    fn exponential_examples() {
        assert_clean(&verify_exponential(&q(1, 2), 1));
        assert_clean(&verify_exponential(&q(1, 2), 5));
        assert_clean(&verify_exponential(&q(2, 3), 3));
    }

    #[test]
    fn trig_examples() {
        let c = oracle_chain(&GridSpec::new(GridKind::TrigFirstKind, 2).unwrap()).unwrap();
        assert_eq!(c.u(), &[q(1, 4), q(1, 2)]);
        let c = oracle_chain(&GridSpec::new(GridKind::TrigSecondKind, 2).unwrap()).unwrap();
        assert_eq!(c.u(), &[q(1, 6), q(1, 3)]);
        let c = oracle_chain(&GridSpec::new(GridKind::TrigSecondKind, 1).unwrap()).unwrap();
        assert_eq!(c.u(), &[q(1, 4)]);
        for n in 1..=5 {
            assert_clean(&verify_trig(true, n, DEFAULT_PRECISION));
            assert_clean(&verify_trig(false, n, DEFAULT_PRECISION));
        }
    }

    #[test]
    fn run_all_shape() {
        let reports = run_all(1, &[q(1, 2)], DEFAULT_PRECISION);
        assert_eq!(reports.len(), 7);
        assert!(all_passed(&reports));
        let known: Vec<_> = reports
            .iter()
            .filter(|r| matches!(r.status, Status::KnownDiscrepancy(_)))
            .map(|r| r.name.as_str())
            .collect();
        assert_eq!(known, vec!["quadratic-tau1-b-formula"]);

        let zero = run_all(0, &[q(1, 2)], DEFAULT_PRECISION);
        assert_eq!(zero.len(), 7);
        assert!(zero.iter().all(|r| matches!(r.status, Status::Skipped(_))));
    }

    #[test]
    fn reports_are_deterministic_and_serialize_rationals() {
        let a = serde_json::to_string(&run_all(2, &[q(1, 2)], DEFAULT_PRECISION)).unwrap();
        let b = serde_json::to_string(&run_all(2, &[q(1, 2)], DEFAULT_PRECISION)).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"q\":\"1/2\""));
        let back: Vec<CheckReport> = serde_json::from_str(&a).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), a);
    }

    #[test]
    fn mismatch_carries_witness() {
        let e = JacobiMatrix::new(vec![q(1, 1), q(1, 1)], vec![q(1, 4)]).unwrap();
        let f = JacobiMatrix::new(vec![q(1, 1), q(1, 1)], vec![q(1, 3)]).unwrap();
        let sc = compare_jacobi("x", &e, &f);
        let w = sc.witness.unwrap();
        assert_eq!((w.what.as_str(), w.index), ("u", 1));
    }
}
