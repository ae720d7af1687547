//! Monodromy logarithms, degeneration cases and weight filtrations.

mod common;

use std::sync::Arc;

use common::*;
use pdt::field::{rat, Rational};
use pdt::linalg::Matrix;
use pdt::monodromy::{
    analyze, classify_nilpotent, exp_nilpotent, is_unipotent, log_unipotent_matrix, nilpotent_from_pair,
    unipotent_power, DegenerationCase, MonodromyOperator,
};
use proptest::prelude::*;

fn case_of(i: u8) -> DegenerationCase {
    [DegenerationCase::I, DegenerationCase::II, DegenerationCase::III][i as usize % 3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn pair_formula_and_skewness(seed in any::<u64>(), i in 0u8..3) {
        let nd = random_nilpotent(&mut rng(seed), case_of(i), 8);
        let g = nd.space().gram().clone();
        prop_assert!(nd.n.transpose().mul(&g).add(&g.mul(&nd.n)).is_zero());
        if let (Some(e), Some(u)) = (&nd.e, &nd.u) {
            prop_assert_eq!(&n_from_pair(nd.space(), e, u), &nd.n);
            prop_assert_eq!(nd.space().norm(e), rat(0));
            prop_assert_eq!(nd.space().pair(e, u), rat(0));
        }
    }

    #[test]
    fn analyze_recovers_the_case(seed in any::<u64>(), i in 0u8..3) {
        let nd = random_nilpotent(&mut rng(seed), case_of(i), 8);
        let t = MonodromyOperator::new(nd.space().clone(), exp_nilpotent(&nd.n)).unwrap();
        let back = analyze(&t).unwrap();
        prop_assert_eq!(back.case, nd.case);
        prop_assert_eq!(back.n, nd.n);
    }
}

#[test]
fn weight_dimensions() {
    let mut r = rng(11);
    for _ in 0..10 {
        let nd = random_nilpotent(&mut r, DegenerationCase::II, 9);
        let d = nd.space().dim();
        let w = nd.weight_filtration().unwrap();
        assert_eq!([w.get(-2).dim(), w.get(-1).dim(), w.get(0).dim(), w.get(1).dim()], [0, 2, d - 2, d]);
        let nd = random_nilpotent(&mut r, DegenerationCase::III, 9);
        let d = nd.space().dim();
        let w = nd.weight_filtration().unwrap();
        assert_eq!(
            [w.get(-3).dim(), w.get(-2).dim(), w.get(-1).dim(), w.get(0).dim(), w.get(1).dim(), w.get(2).dim()],
            [0, 1, 1, d - 1, d - 1, d]
        );
    }
}

#[test]
fn case_one_has_trivial_filtration() {
    let nd = random_nilpotent(&mut rng(2), DegenerationCase::I, 7);
    let w = nd.weight_filtration().unwrap();
    assert_eq!(w.get(-1).dim(), 0);
    assert_eq!(w.get(0), nd.space().full());
}

#[test]
fn polarized_sign() {
    let s = Arc::new(uu(&[1]));
    let e = ints(&[1, 0, 0, 0, 0]);
    let neg = classify_nilpotent(s.clone(), nilpotent_from_pair(&s, &e, &ints(&[0, 0, 1, -1, 0])).unwrap()).unwrap();
    assert_eq!(neg.polarized_sign(), Some(true));
    let pos = classify_nilpotent(s.clone(), nilpotent_from_pair(&s, &e, &ints(&[0, 0, 0, 0, 1])).unwrap()).unwrap();
    assert_eq!(pos.polarized_sign(), Some(false));
    let ii = classify_nilpotent(s.clone(), nilpotent_from_pair(&s, &e, &ints(&[0, 0, 1, 0, 0])).unwrap()).unwrap();
    assert_eq!(ii.polarized_sign(), None);
}

#[test]
fn rejects_non_type_iv_nilpotents() {
    let s = Arc::new(uu(&[1]));
    // Not skew for the form.
    let mut n = Matrix::<Rational>::zeros(5, 5);
    n[(0, 1)] = rat(1);
    assert!(classify_nilpotent(s.clone(), n).is_err());
    // e not isotropic.
    assert!(nilpotent_from_pair(&s, &ints(&[1, 1, 0, 0, 0]), &ints(&[0, 0, 1, 0, 0])).is_err());
    // Wrong size.
    assert!(classify_nilpotent(s, Matrix::zeros(4, 4)).is_err());
}

#[test]
fn finite_order_part_needs_base_change() {
    let nd = random_nilpotent(&mut rng(5), DegenerationCase::III, 6);
    let t = exp_nilpotent(&nd.n);
    let twisted = t.scale(&rat(-1));
    assert!(!is_unipotent(&twisted));
    assert!(log_unipotent_matrix(&twisted).is_err());
    let (k, tk) = unipotent_power(&twisted, 60).unwrap();
    assert_eq!(k, 2);
    assert_eq!(log_unipotent_matrix(&tk).unwrap(), nd.n.scale(&rat(2)));
    assert!(unipotent_power(&twisted, 1).is_none());
}

#[test]
fn complex_parameters() {
    use num_complex::Complex64;
    let nd = random_nilpotent(&mut rng(8), DegenerationCase::III, 7);
    let w = Complex64::new(0.3, 1.7);
    let a = nd.one_param(&w);
    let b = nd.exp_series(&w);
    let diff = a.sub(&b).to_rows().iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(diff < 1e-12);
}
