use proptest::prelude::*;

use sturmion::spectral::{jacobi_weights, partial_fraction, stieltjes_fraction};
use sturmion::transforms::{christoffel, christoffel_coefficients, geronimus};
use sturmion::{build_chain, count_roots, sturmian_pair, JacobiMatrix, Polynomial, Scalar};

/// Strictly increasing rational nodes and positive weights summing to 1.
fn measure() -> impl Strategy<Value = (Vec<Scalar>, Vec<Scalar>)> {
    prop::collection::vec((1i64..20, 1i64..6, 1i64..9), 2..8).prop_map(|steps| {
        let mut x = Scalar::zero();
        let mut nodes = Vec::new();
        let mut raw = Vec::new();
        for (num, den, w) in steps {
            x = x + Scalar::ratio(num, den);
            nodes.push(x.clone());
            raw.push(Scalar::int(w));
        }
        let total: Scalar = raw.iter().sum();
        (nodes, raw.iter().map(|w| w / &total).collect())
    })
}

/// The chain of `(P_{N+1}, sum_s w_s P_{N+1}/(x - x_s))`; its dual weights are `weights`.
fn chain_of(nodes: &[Scalar], weights: &[Scalar]) -> JacobiMatrix {
    let top = Polynomial::from_roots(nodes);
    let next = nodes
        .iter()
        .zip(weights)
        .map(|(x, w)| top.divmod(&Polynomial::linear_monic(x)).unwrap().0.scale(w))
        .fold(Polynomial::zero(), |acc, p| &acc + &p);
    build_chain(&top, &next).unwrap().jacobi()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mirror_is_an_involution((nodes, weights) in measure()) {
        let j = chain_of(&nodes, &weights);
        prop_assert_eq!(j.mirror_dual().mirror_dual(), j.clone());
        prop_assert_eq!(j.mirror_dual().characteristic_polynomial(), j.characteristic_polynomial());
    }

    #[test]
    fn mirror_carries_the_seed_weights((nodes, weights) in measure()) {
        let j = chain_of(&nodes, &weights);
        let w = jacobi_weights(&j.mirror_dual(), &nodes).unwrap();
        prop_assert_eq!(w.weights(), &weights[..]);
    }

    #[test]
    fn count_matches_direct((nodes, _w) in measure(), lo in -10i64..40, len in 1i64..40, den in 1i64..7) {
        let p = Polynomial::from_roots(&nodes);
        let a = Scalar::ratio(2 * lo + 1, 2 * den);
        let b = &a + &Scalar::ratio(len, 1);
        prop_assume!(!nodes.contains(&a) && !nodes.contains(&b));
        let direct = nodes.iter().filter(|x| **x > a && **x <= b).count();
        prop_assert_eq!(count_roots(&p, &a, &b).unwrap(), direct);
    }

    #[test]
    fn sturmian_pair_interlaces((nodes, _w) in measure()) {
        let (top, next) = sturmian_pair(&Polynomial::from_roots(&nodes)).unwrap();
        let chain = build_chain(&top, &next).unwrap();
        prop_assert!(chain.u().iter().all(Scalar::is_positive));
    }

    #[test]
    fn christoffel_routes_agree_and_invert((nodes, weights) in measure(), off in 1i64..10) {
        let j = chain_of(&nodes, &weights);
        let a = &nodes[0] - &Scalar::ratio(off, 3);
        let (t, rec) = christoffel(&j, &a).unwrap();
        prop_assert_eq!(christoffel_coefficients(&j, &rec.multipliers).unwrap(), t.clone());
        let (back, _) = geronimus(&t, &a, rec.inverse_seed.as_ref().unwrap()).unwrap();
        prop_assert_eq!(back, j);
    }

    #[test]
    fn fraction_equals_partial_sum((nodes, weights) in measure(), zn in -300i64..300, zd in 1i64..11) {
        let z = Scalar::ratio(zn, zd);
        prop_assume!(!nodes.contains(&z));
        let j = chain_of(&nodes, &weights);
        let w = jacobi_weights(&j, &nodes).unwrap();
        if let Ok(cf) = stieltjes_fraction(&j, &z) {
            prop_assert_eq!(cf, partial_fraction(&w, &z).unwrap());
        }
    }
}
