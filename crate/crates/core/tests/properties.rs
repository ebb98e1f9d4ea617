use std::sync::Arc;

use proptest::prelude::*;

use quatindex::exactalg::{int, rat, GradedPolynomial, Monomial, VarSet};
use quatindex::repweights::{freudenthal_weights, weyl_dimension, CoordSystem, Weight};
use quatindex::symred::{
    check_weyl_invariance, express_in_generators, express_in_pontryagin, to_pontryagin_basis,
    GeneratorBasis, InvariantExpression,
};

fn abc() -> Arc<VarSet> {
    VarSet::new([("a", 2), ("b", 2), ("c", 4)]).unwrap()
}

/// Up to five terms with small exponents and coefficients.
fn poly(vars: Arc<VarSet>, with_constant: bool) -> impl Strategy<Value = GradedPolynomial> {
    let n = vars.len();
    prop::collection::vec(
        (prop::collection::vec(0u32..3, n), -5i64..=5, 1i64..=4),
        0..5,
    )
    .prop_map(move |terms| {
        let t = terms.into_iter().filter_map(|(e, num, den)| {
            if !with_constant && e.iter().all(|&x| x == 0) {
                None
            } else {
                Some((Monomial::from_exponents(&e), rat(num, den)))
            }
        });
        GradedPolynomial::from_terms(&vars, t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(abc(), true), b in poly(abc(), true), c in poly(abc(), true)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn uncapped_division_inverts_multiplication(a in poly(abc(), true), b in poly(abc(), true)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn exp_is_multiplicative(a in poly(abc(), false), b in poly(abc(), false)) {
        let cap = 8;
        let lhs = (&a + &b).series_exp(cap).unwrap();
        let rhs = &a.series_exp(cap).unwrap() * &b.series_exp(cap).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_is_inverse(a in poly(abc(), false), c in 1i64..5) {
        let cap = 10;
        let u = &GradedPolynomial::constant(&abc(), int(c)) + &a;
        let inv = u.series_invert(cap).unwrap();
        prop_assert_eq!(&u.with_cap(Some(cap)) * &inv, GradedPolynomial::one(&abc()));
    }

    #[test]
    fn generator_round_trip(e in prop::collection::vec((0u32..3, 0u32..2, 0u32..2, -6i64..=6), 1..6)) {
        let basis = GeneratorBasis::quaternionic(2);
        let gv = basis.generator_vars().clone();
        let terms = e.into_iter().map(|(q, d1, d2, c)| {
            let mut x = vec![0; gv.len()];
            x[gv.index_of("q1").unwrap()] = q;
            x[gv.index_of("d1").unwrap()] = d1;
            x[gv.index_of("d2").unwrap()] = d2;
            (Monomial::from_exponents(&x), int(c))
        });
        let expr = InvariantExpression::new(GradedPolynomial::from_terms(&gv, terms));
        let expanded = basis.expand(&expr).unwrap();
        prop_assert!(check_weyl_invariance(&expanded, 2));
        prop_assert_eq!(express_in_generators(&expanded, &basis).unwrap(), expr.clone());
        let in_p = to_pontryagin_basis(&expr, 2).unwrap();
        prop_assert_eq!(express_in_pontryagin(&expanded, 2).unwrap(), in_p);
    }

    #[test]
    fn freudenthal_agrees_with_weyl(mut z in prop::collection::vec(-2i64..=2, 4)) {
        z.sort_unstable_by(|a, b| b.cmp(a));
        let w = Weight::new(CoordSystem::SlZ(4), z).unwrap();
        let ws = freudenthal_weights(&w).unwrap();
        prop_assert_eq!(ws.dimension(), weyl_dimension(&w).unwrap());
    }
}
