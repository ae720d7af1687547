//! Quadratic spaces, subspaces and their classification.

mod common;

use common::*;
use pdt::field::{rat, Rational};
use pdt::qspace::{
    eigenspace_chi, rational_hermitian_signature, CyclotomicElement, QuadraticSpace, Signature, Subspace,
    SubspaceClass,
};
use pdt::linalg::Matrix;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn signature_is_a_congruence_invariant(seed in any::<u64>(), extra in prop::collection::vec(-3i64..=3, 0..4)) {
        let extra: Vec<i64> = extra.into_iter().filter(|x| *x != 0).collect();
        let g = uu(&extra);
        let c = Congruent::new(&mut rng(seed), &g);
        prop_assert_eq!(c.space.signature(), g.signature());
    }

    #[test]
    fn double_complement(seed in any::<u64>(), k in 1usize..4) {
        let mut r = rng(seed);
        let g = uu(&[1, 2]);
        let vs: Vec<Vec<Rational>> = (0..k).map(|_| (0..6).map(|_| random_rational(&mut r, 3, 1)).collect()).collect();
        let v = Subspace::span(6, vs);
        let perp = g.orthogonal_complement(&v).unwrap();
        prop_assert_eq!(perp.dim() + v.dim(), 6);
        prop_assert_eq!(g.orthogonal_complement(&perp).unwrap(), v.clone());
        // The radical is V ∩ V^perp.
        prop_assert_eq!(g.radical(&v).unwrap(), v.intersect(&perp).unwrap());
    }
}

#[test]
fn canonical_form_is_independent_of_the_spanning_set() {
    let a = Subspace::span(4, vec![ints(&[1, 2, 0, 0]), ints(&[0, 1, 1, 0])]);
    let b = Subspace::span(4, vec![ints(&[1, 3, 1, 0]), ints(&[2, 3, -1, 0]), ints(&[0, 2, 2, 0])]);
    assert_eq!(a, b);
    assert_eq!(a.dim(), 2);
    assert!(a.contains(&ints(&[1, 1, -1, 0])));
    assert!(!a.contains(&ints(&[0, 0, 0, 1])));
}

#[test]
fn sum_and_intersection_dimensions() {
    let a = Subspace::span(5, vec![unit(5, 0), unit(5, 1), unit(5, 2)]);
    let b = Subspace::span(5, vec![unit(5, 2), unit(5, 3)]);
    let s = a.sum(&b).unwrap();
    let i = a.intersect(&b).unwrap();
    assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
    assert_eq!(i, Subspace::span(5, vec![unit(5, 2)]));
    assert!(a.sum(&Subspace::zero(4)).is_err());
}

#[test]
fn restricted_signatures() {
    let g = uu(&[1, 1]);
    let e1 = unit(6, 0);
    let f1 = unit(6, 1);
    assert_eq!(g.signature(), Signature::new(4, 2, 0));
    let hyp = Subspace::span(6, vec![e1.clone(), f1]);
    assert_eq!(g.restricted_signature(&hyp).unwrap(), Signature::new(1, 1, 0));
    let iso = Subspace::span(6, vec![e1, unit(6, 2)]);
    assert_eq!(g.restricted_signature(&iso).unwrap(), Signature::new(0, 0, 2));
    assert!(g.is_totally_isotropic(&iso));
}

#[test]
fn classification_in_random_coordinates() {
    // Classes and complement signatures survive a change of basis.
    let g = uu(&[1, 1]);
    let cases = [
        (vec![unit(6, 4)], SubspaceClass::Type1),
        (vec![unit(6, 0)], SubspaceClass::Type3),
        (vec![unit(6, 0), unit(6, 2)], SubspaceClass::Type2),
    ];
    for seed in 0..10 {
        let c = Congruent::new(&mut rng(seed), &g);
        for (vs, class) in &cases {
            let v = Subspace::span(6, vs.iter().map(|x| c.vector(x)).collect());
            let a = g.classify_subspace(&Subspace::span(6, vs.clone())).unwrap();
            let b = c.space.classify_subspace(&v).unwrap();
            assert_eq!(b.class, *class);
            assert_eq!(a.complement_signature, b.complement_signature);
            assert_eq!(a.side_condition, b.side_condition);
        }
    }
}

#[test]
fn non_semidefinite_subspaces_are_refused() {
    let g = uu(&[1, 1]);
    let v = Subspace::span(6, vec![unit(6, 0), unit(6, 1), unit(6, 4)]);
    assert!(g.classify_subspace(&v).is_err());
}

#[test]
fn degenerate_forms_are_accepted_but_flagged() {
    let g = QuadraticSpace::diagonal(&[1, 0, -1]);
    assert!(!g.is_nondegenerate());
    assert_eq!(g.signature(), Signature::new(1, 1, 1));
}

#[test]
fn asymmetric_gram_is_rejected() {
    let m = Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(2), rat(0)]]).unwrap();
    assert!(QuadraticSpace::new(m).is_err());
}

#[test]
fn cyclotomic_arithmetic() {
    for l in [3u32, 4, 6] {
        let z = CyclotomicElement::zeta(l);
        let mut p = CyclotomicElement::rational(rat(1));
        for _ in 0..l {
            p = p * z.clone();
        }
        assert_eq!(p, CyclotomicElement::rational(rat(1)), "zeta_{l}^{l}");
        assert_eq!(z.norm(), rat(1));
        let a = CyclotomicElement::new(l, rat(2), rat(-3));
        let b = CyclotomicElement::new(l, rat(1), rat(5));
        assert_eq!((a.clone() * b.clone()).norm(), a.norm() * b.norm());
        assert_eq!((a.clone() * a.conj()).norm(), a.norm() * a.norm());
    }
    assert!(!CyclotomicElement::is_supported(5));
}

#[test]
fn mu4_eigenspace() {
    let s = QuadraticSpace::diagonal(&[2, 2, 2, 2, 2, 2, -2, -2]);
    let mut rho = Matrix::zeros(8, 8);
    for k in 0..4 {
        rho[(2 * k, 2 * k + 1)] = rat(-1);
        rho[(2 * k + 1, 2 * k)] = rat(1);
    }
    let e = eigenspace_chi(&s, &rho, 4).unwrap();
    assert_eq!(e.dim(), 4);
    assert_eq!(e.herm_signature, Signature::new(3, 1, 0));
    // The underlying rational form doubles every sign.
    assert_eq!(rational_hermitian_signature(&s, &e.chi_basis, 4), (Signature::new(3, 1, 0), Signature::new(6, 2, 0)));
    // rho must preserve the form and have order l.
    let mut bad = rho.clone();
    bad[(0, 1)] = rat(-2);
    assert!(eigenspace_chi(&s, &bad, 4).is_err());
}
