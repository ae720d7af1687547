//! Boundary-pair, K3 and Kulikov classifiers; discriminant forms; the tube integral.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use pdt::field::ratio;
use pdt::geomclass::{
    boundary_pair_type, canonical_kulikov_fibers, discriminant_form, k3_degeneration_type, kulikov_classify,
    singularities_for, smith_normal_form, tube_integral, weight_for_type, BoundaryPairDatum, ComponentKind,
    DoubleCurves, DualComplex, K3DegenerationType, KulikovFiber, SingularityLabel, MIN_POINTS,
};
use pdt::qspace::QuadraticSpace;

fn labels(s: &[&str]) -> Vec<SingularityLabel> {
    s.iter().map(|x| x.parse().unwrap()).collect()
}

#[test]
fn boundary_pairs_round_trip() {
    for t in 1..=3u8 {
        let w = weight_for_type(t).unwrap();
        assert_eq!(boundary_pair_type(&BoundaryPairDatum { weight_of_f: w, context: "x".into() }).unwrap(), t);
    }
    assert_eq!(weight_for_type(0), None);
    assert_eq!(weight_for_type(4), None);
}

#[test]
fn k3_types() {
    use K3DegenerationType::*;
    assert_eq!(k3_degeneration_type(&[]), FiniteMonodromy);
    assert_eq!(k3_degeneration_type(&labels(&["A1", "D4", "E8"])), FiniteMonodromy);
    assert_eq!(k3_degeneration_type(&labels(&["A2", "SimpleElliptic:3"])), Type2);
    assert_eq!(k3_degeneration_type(&labels(&["SimpleElliptic:1", "Cusp"])), Type3);
    assert_eq!(k3_degeneration_type(&labels(&["Cusp", "Other:T_pqr"])), Unknown);
    assert_eq!(Unknown.as_type(), None);
    assert_eq!(Type3.as_type(), Some(3));
}

#[test]
fn singularity_labels() {
    for good in ["A1", "A17", "D4", "E6", "E7", "E8", "Cusp", "Other", "Other:x", "SimpleElliptic:2"] {
        let l: SingularityLabel = good.parse().unwrap();
        assert_eq!(l.to_string().parse::<SingularityLabel>().unwrap(), l);
    }
    for bad in ["A0", "D3", "E9", "X2", "", "SimpleElliptic:x"] {
        assert!(bad.parse::<SingularityLabel>().is_err(), "{bad}");
    }
}

#[test]
fn kulikov_types_match_singularity_types() {
    for f in canonical_kulikov_fibers() {
        let t = kulikov_classify(&f).unwrap();
        let s = k3_degeneration_type(&singularities_for(f.dual_complex));
        assert_eq!(s.as_type(), Some(t));
    }
}

#[test]
fn inconsistent_fibers() {
    use ComponentKind::*;
    let bad = [
        KulikovFiber { components: vec![Rational], dual_complex: DualComplex::Point, double_curves: DoubleCurves::None },
        KulikovFiber { components: vec![Rational], dual_complex: DualComplex::Interval, double_curves: DoubleCurves::SmoothGenusOne },
        KulikovFiber {
            components: vec![EllipticRuled, Rational],
            dual_complex: DualComplex::Interval,
            double_curves: DoubleCurves::SmoothGenusOne,
        },
        KulikovFiber {
            components: vec![Rational, K3, Rational],
            dual_complex: DualComplex::Interval,
            double_curves: DoubleCurves::SmoothGenusOne,
        },
        KulikovFiber {
            components: vec![Rational, Rational],
            dual_complex: DualComplex::TriangulatedTwoSphere,
            double_curves: DoubleCurves::SmoothGenusOne,
        },
    ];
    for f in &bad {
        assert!(kulikov_classify(f).is_err(), "{f:?}");
    }
    let long_chain = KulikovFiber {
        components: vec![Rational, EllipticRuled, EllipticRuled, Rational],
        dual_complex: DualComplex::Interval,
        double_curves: DoubleCurves::SmoothGenusOne,
    };
    assert_eq!(kulikov_classify(&long_chain).unwrap(), 2);
}

#[test]
fn discriminant_forms() {
    // <2>: Z/2 with q = 1/2.
    let a1 = discriminant_form(&QuadraticSpace::diagonal(&[2])).unwrap();
    assert_eq!(a1.order, BigInt::from(2));
    assert_eq!(a1.elements[1].q_mod2, ratio(1, 2));
    assert!(!a1.has_even_overlattice());
    // U is unimodular.
    let u = discriminant_form(&QuadraticSpace::hyperbolic_plane()).unwrap();
    assert_eq!(u.order, BigInt::from(1));
    // <2> + <-2> is an index-2 sublattice of U.
    let d = discriminant_form(&QuadraticSpace::diagonal(&[2, -2])).unwrap();
    assert_eq!(d.order, BigInt::from(4));
    assert!(d.has_even_overlattice());
    // <8>: Z/8.
    let a = discriminant_form(&QuadraticSpace::diagonal(&[8])).unwrap();
    assert_eq!(a.order, BigInt::from(8));
    // x = 1/2 has x.x = 2, so q = 0.
    assert!(a.has_even_overlattice());
    // Odd and degenerate lattices are refused.
    assert!(discriminant_form(&QuadraticSpace::diagonal(&[1])).is_err());
    assert!(discriminant_form(&QuadraticSpace::diagonal(&[2, 0])).is_err());
}

#[test]
fn smith_form_of_a_diagonal_matrix() {
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let (d, _, _) = smith_normal_form(&[big(&[4, 0]), big(&[0, 6])]);
    assert_eq!(d, big(&[2, 12]));
}

#[test]
fn tube_integral_is_independent_of_epsilon() {
    for eps in [0.1, 1.0, 7.5] {
        let z = tube_integral(eps, 64).unwrap();
        assert!((z - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-9, "eps {eps}: {z}");
    }
    assert!(tube_integral(1.0, MIN_POINTS - 1).is_err());
    assert!(tube_integral(0.0, 64).is_err());
    assert!(tube_integral(f64::NAN, 64).is_err());
}
