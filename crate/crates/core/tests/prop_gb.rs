use proptest::prelude::*;
use qsmooth::gb::{
    ideal_basis, ideal_membership, ideal_quotient_saturation, normal_form, GbConfig, GroebnerBasis,
    MonomialOrder, VectorPolynomial,
};
use qsmooth::poly::{rat, Monomial, Polynomial};

const N: usize = 3;

fn poly(max_exp: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((proptest::collection::vec(0..=max_exp, N), -3i64..4), 1..=terms)
        .prop_map(|ts| {
            let mut p = Polynomial::zero(N);
            for (e, c) in ts {
                p.add_term(Monomial::from_exponents(e), rat(c));
            }
            p
        })
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::degrevlex()),
        Just(MonomialOrder::lex()),
        Just(MonomialOrder::block_elimination(1)),
    ]
}

fn cfg() -> GbConfig {
    GbConfig {
        max_degree: Some(12),
        cache: None,
    }
}

/// Small random ideals; bases exceeding the degree cap are discarded.
fn basis(gens: &[Polynomial], o: &MonomialOrder) -> Option<GroebnerBasis> {
    if gens.iter().all(Polynomial::is_zero) {
        return None;
    }
    ideal_basis(gens, o, &cfg()).ok()
}

fn nf(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    normal_form(&VectorPolynomial::from_poly(p.clone()), gb)
        .unwrap()
        .component(0)
        .clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_are_members(gens in proptest::collection::vec(poly(2, 3), 1..4), o in order()) {
        let gb = basis(&gens, &o);
        prop_assume!(gb.is_some());
        let gb = gb.unwrap();
        prop_assert!(gb.satisfies_buchberger_criterion());
        for g in &gens {
            prop_assert!(ideal_membership(g, &gb).unwrap());
        }
        // basis elements lie in the ideal they generate, so reduce to zero
        for b in gb.polynomials() {
            prop_assert!(nf(&b, &gb).is_zero());
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_congruent(
        gens in proptest::collection::vec(poly(2, 3), 1..4),
        f in poly(3, 5),
        o in order(),
    ) {
        let gb = basis(&gens, &o);
        prop_assume!(gb.is_some());
        let gb = gb.unwrap();
        let r = nf(&f, &gb);
        prop_assert_eq!(nf(&r, &gb), r.clone());
        prop_assert!(ideal_membership(&(&f - &r), &gb).unwrap());
    }

    #[test]
    fn products_with_generators_are_members(
        gens in proptest::collection::vec(poly(2, 3), 1..3),
        m in poly(2, 3),
    ) {
        let gb = basis(&gens, &MonomialOrder::degrevlex());
        prop_assume!(gb.is_some());
        let gb = gb.unwrap();
        prop_assert!(ideal_membership(&(&m * &gens[0]), &gb).unwrap());
    }

    #[test]
    fn saturation_contains_the_ideal(
        gens in proptest::collection::vec(poly(2, 3), 1..3),
        g in poly(1, 2),
    ) {
        prop_assume!(!g.is_zero());
        let gb = basis(&gens, &MonomialOrder::degrevlex());
        prop_assume!(gb.is_some());
        let gb = gb.unwrap();
        let Ok(sat) = ideal_quotient_saturation(&gb, &g, &cfg()) else { return Ok(()) };
        for p in &gens {
            prop_assert!(ideal_membership(p, &sat).unwrap());
        }
        // saturating twice changes nothing
        let again = ideal_quotient_saturation(&sat, &g, &cfg()).unwrap();
        for b in again.polynomials() {
            prop_assert!(ideal_membership(&b, &sat).unwrap());
        }
    }
}
