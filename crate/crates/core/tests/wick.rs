mod common;

use std::sync::OnceLock;

use common::{element, element2, scalar};
use proptest::prelude::*;
use rga_core::wick::{dagger, wick_mul, CrossSymmetry, Vacuum, WickElement};
use rga_core::{Alphabet, RewriteSystem};

/// Wick element whose words have total length at most `budget`.
fn wick(budget: usize) -> impl Strategy<Value = WickElement> {
    let words = RewriteSystem::new(2).enumerate_normal_forms(2);
    let k = words.len();
    proptest::collection::vec((0..k, 0..k, scalar()), 1..4).prop_map(move |terms| {
        let kept = terms
            .into_iter()
            .filter(|(i, j, _)| words[*i].len() + words[*j].len() <= budget)
            .map(|(i, j, c)| (words[i].clone(), words[j].clone(), c));
        WickElement::from_terms(2, kept).unwrap()
    })
}

fn flip() -> &'static CrossSymmetry {
    static PSI: OnceLock<CrossSymmetry> = OnceLock::new();
    PSI.get_or_init(CrossSymmetry::flip)
}

fn regular() -> &'static CrossSymmetry {
    static PSI: OnceLock<CrossSymmetry> = OnceLock::new();
    PSI.get_or_init(|| CrossSymmetry::regular(Vacuum::Unit))
}

fn degree(x: &WickElement) -> usize {
    x.terms()
        .map(|(a, b, _)| a.len() + b.len())
        .max()
        .unwrap_or(0)
}

fn triple() -> impl Strategy<Value = (WickElement, WickElement, WickElement)> {
    (wick(2), wick(2), wick(2)).prop_filter("total degree at most 4", |(x, y, z)| {
        degree(x) + degree(y) + degree(z) <= 4
    })
}

proptest! {
    #[test]
    fn dagger_is_an_involutive_anti_homomorphism(
        a in element(3, 3, Alphabet::Theta),
        b in element(3, 3, Alphabet::Theta),
    ) {
        prop_assert_eq!(dagger(&dagger(&a)), a.clone());
        prop_assert_eq!(dagger(&(&a * &b)), &dagger(&b) * &dagger(&a));
    }

    #[test]
    fn dagger_reverses_two_generator_products(a in element2(Alphabet::Theta), b in element2(Alphabet::Theta)) {
        prop_assert_eq!(dagger(&(&a * &b)), &dagger(&b) * &dagger(&a));
        prop_assert_eq!(dagger(&dagger(&a)), a);
    }

    #[test]
    fn flip_wick_product_is_associative((x, y, z) in triple()) {
        let psi = flip();
        prop_assert!(psi.incoherence_at(4).unwrap().is_none());
        let left = wick_mul(&wick_mul(&x, &y, psi).unwrap(), &z, psi).unwrap();
        let right = wick_mul(&x, &wick_mul(&y, &z, psi).unwrap(), psi).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn regular_wick_product_is_associative_where_coherent((x, y, z) in triple()) {
        let psi = regular();
        let left = wick_mul(&x, &y, psi).and_then(|xy| wick_mul(&xy, &z, psi));
        let right = wick_mul(&y, &z, psi).and_then(|yz| wick_mul(&x, &yz, psi));
        if let (Ok(l), Ok(r)) = (left, right) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn unit_laws(theta in 0usize..5, xi in 0usize..5) {
        let words = RewriteSystem::new(2).enumerate_normal_forms(2);
        let unit = rga_core::Word::unit();
        for psi in [flip(), regular()] {
            prop_assert_eq!(
                psi.psi(&unit, &words[theta]).unwrap(),
                WickElement::basis(2, words[theta].clone(), unit.clone())
            );
            prop_assert_eq!(
                psi.psi(&words[xi], &unit).unwrap(),
                WickElement::basis(2, unit.clone(), words[xi].clone())
            );
        }
    }
}
