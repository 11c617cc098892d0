use proptest::prelude::*;
use qsmooth::poly::{parse, rat_frac, Monomial, Polynomial, Rational};

const N: usize = 3;
const VARS: [&str; N] = ["x", "y", "z"];

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..10, 1i64..5).prop_map(|(n, d)| rat_frac(n, d))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((proptest::collection::vec(0u32..4, N), coeff()), 0..6).prop_map(
        |terms| {
            let mut p = Polynomial::zero(N);
            for (e, c) in terms {
                p.add_term(Monomial::from_exponents(e), c);
            }
            p
        },
    )
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(coeff(), N)
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Polynomial::zero(N));
        prop_assert_eq!(&a * &Polynomial::one(N), a.clone());
        prop_assert_eq!(&a + &(-&a), Polynomial::zero(N));
    }

    #[test]
    fn parse_inverts_display(a in poly()) {
        let text = a.display(&VARS).to_string();
        prop_assert_eq!(parse(&text, &VARS).unwrap(), a);
    }

    #[test]
    fn derivative_is_linear_and_leibniz(a in poly(), b in poly(), i in 0..N, k in coeff()) {
        let d = |p: &Polynomial| p.partial_derivative(i).unwrap();
        prop_assert_eq!(d(&(&a + &b.scale(&k))), &d(&a) + &d(&b).scale(&k));
        prop_assert_eq!(d(&(&a * &b)), &(&d(&a) * &b) + &(&a * &d(&b)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), p in point()) {
        let ev = |q: &Polynomial| q.evaluate(&p).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }

    #[test]
    fn substitution_is_a_homomorphism(
        a in poly(),
        b in poly(),
        images in proptest::collection::vec(poly(), N),
    ) {
        let sub = |p: &Polynomial| p.substitute(&images, N).unwrap();
        prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
        prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
        // substituting then evaluating equals evaluating at the image point
        let p = vec![rat_frac(1, 2), rat_frac(-2, 1), rat_frac(3, 1)];
        let moved: Vec<Rational> = images.iter().map(|g| g.evaluate(&p).unwrap()).collect();
        prop_assert_eq!(sub(&a).evaluate(&p).unwrap(), a.evaluate(&moved).unwrap());
    }

    #[test]
    fn identity_substitution_is_trivial(a in poly()) {
        let id: Vec<Polynomial> = (0..N).map(|i| Polynomial::var(N, i)).collect();
        prop_assert_eq!(a.substitute(&id, N).unwrap(), a);
    }
}
