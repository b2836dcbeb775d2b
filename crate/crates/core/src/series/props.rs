use proptest::prelude::*;

use super::*;

fn small_poly(arity: usize) -> impl Strategy<Value = Poly> {
    let vs = if arity == 2 {
        vars(&["u", "v"])
    } else {
        parameter_vars()
    };
    prop::collection::vec(
        (
            prop::collection::vec(0u32..4, arity),
            -5i64..=5,
            1i64..=4,
        ),
        0..5,
    )
    .prop_map(move |terms| {
        Poly::from_terms(
            vs.clone(),
            terms
                .into_iter()
                .map(|(e, n, d)| (Monomial::new(e), rat(n, d))),
        )
    })
}

proptest! {
    #[test]
    fn distributive(p in small_poly(2), q in small_poly(2), r in small_poly(2)) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
    }

    #[test]
    fn diff_is_derivation(p in small_poly(2), q in small_poly(2), var in 0usize..2) {
        let lhs = (&p * &q).diff_index(var);
        let rhs = &(&p.diff_index(var) * &q) + &(&p * &q.diff_index(var));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_print_identity(p in small_poly(2)) {
        let printed = p.to_string();
        let back = parse_poly(&printed, p.vars()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn substitute_is_multiplicative(
        p in small_poly(2),
        q in small_poly(2),
        x in small_poly(1),
        y in small_poly(1),
    ) {
        let strip = |f: Poly| f.clone() - Poly::constant(f.vars().clone(), f.constant_term());
        let (x, y) = (strip(x), strip(y));
        prop_assume!(!(x.is_zero() && y.is_zero()));
        let b = BranchParam::new(vec![x, y], None).unwrap();
        let lhs = substitute(&(&p * &q), &b, None).unwrap();
        let rhs = &substitute(&p, &b, None).unwrap() * &substitute(&q, &b, None).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weights_satisfy_euler(p in small_poly(2)) {
        prop_assume!(!p.is_zero());
        if let Some((w1, w2)) = weight_feasibility(&p).unwrap() {
            prop_assert!(euler_defect(&p, &w1, &w2).is_zero());
        }
    }
}
