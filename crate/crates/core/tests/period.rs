//! Period points, transvections and limits of one-parameter families.

mod common;

use std::f64::consts::PI;
use std::sync::Arc;

use common::*;
use num_complex::Complex64;
use pdt::error::Error;
use pdt::field::{rat, ratio, GaussianRational, Rational};
use pdt::monodromy::{classify_nilpotent, exp_nilpotent, nilpotent_from_pair, MonodromyOperator};
use pdt::period::{
    default_complement, functional_from_vector, hodge_norm, hodge_norm_exact, in_domain, in_open_set, limit_line,
    limit_mhs, psi_ef, psi_tau, same_component, tube_coords, untwist, ComplexVector, DomainWitness, LimitOptions,
    PeriodSample, PeriodSampleSet,
};
use pdt::qspace::{QuadraticSpace, Subspace, SubspaceClass};

type G = GaussianRational;

fn g(re: Rational, im: Rational) -> G {
    G::new(re, im)
}

/// Exact tube point `f1 + z - (z.z / 2) e1` on `U + U + <1> + <1>`.
fn exact_tube_point(space: &QuadraticSpace, z: &[G]) -> Vec<G> {
    let mut a = vec![g(rat(0), rat(0)), g(rat(1), rat(0))];
    a.extend(z.iter().cloned());
    let mut zz = vec![g(rat(0), rat(0)); 2];
    zz.extend(z.iter().cloned());
    let q = space.pair(&zz, &zz);
    a[0] = -q * g(ratio(1, 2), rat(0));
    a
}

fn im_over(a: &[G], s: &G) -> Vec<Rational> {
    a.iter().map(|x| (x.clone() / s.clone()).im).collect()
}

fn space6() -> Arc<QuadraticSpace> {
    Arc::new(uu(&[1, 1]))
}

/// `z = x + i y` with `y = (1, -1, 1/3, 0)` in the coordinates `e2 f2 g1 g2`, so `y.y < 0`.
fn base_z() -> Vec<G> {
    vec![
        g(ratio(1, 2), rat(1)),
        g(rat(0), rat(-1)),
        g(ratio(-1, 3), ratio(1, 3)),
        g(rat(2), rat(0)),
    ]
}

#[test]
fn tube_points_lie_in_the_domain() {
    let s = space6();
    let a = exact_tube_point(&s, &base_z());
    let av = ComplexVector::Exact(a.clone());
    assert!(in_open_set(&s, &av, 0.0).unwrap());
    assert!(hodge_norm_exact(&s, &a) > rat(0));
    let w = DomainWitness::new(&s, av.clone(), 0.0).unwrap();
    assert!(in_domain(&s, &av, &w, 0.0).unwrap());
    // Complex conjugation swaps the two components.
    let conj = ComplexVector::Exact(a.iter().map(|z| z.conj()).collect());
    assert!(in_open_set(&s, &conj, 0.0).unwrap());
    assert!(!in_domain(&s, &conj, &w, 0.0).unwrap());
    assert!(!same_component(&s, &av, &conj, 0.0).unwrap());
    // Numeric and exact agree.
    let num = ComplexVector::Numeric(av.to_numeric());
    assert!(same_component(&s, &num, &av, 1e-12).unwrap());
    assert!((hodge_norm(&s, &num) - hodge_norm(&s, &av)).abs() < 1e-12);
}

#[test]
fn real_vectors_and_zero_are_rejected() {
    let s = space6();
    let real = ComplexVector::Exact(ints(&[1, 0, 0, 0, 0, 0]).into_iter().map(|x| g(x, rat(0))).collect());
    assert!(!in_open_set(&s, &real, 0.0).unwrap());
    assert!(DomainWitness::new(&s, real, 0.0).is_err());
    let zero = ComplexVector::Exact(vec![g(rat(0), rat(0)); 6]);
    assert!(in_open_set(&s, &zero, 0.0).is_err());
    let short = ComplexVector::Exact(vec![g(rat(1), rat(0)); 5]);
    assert!(in_open_set(&s, &short, 0.0).is_err());
}

#[test]
fn psi_ef_translates_the_tube_coordinate() {
    let s = space6();
    let e = ints(&[1, 0, 0, 0, 0, 0]);
    let a = exact_tube_point(&s, &base_z());
    let mut r = rng(21);
    for _ in 0..20 {
        // f in e^perp: no f1 component.
        let mut f = random_gaussian_vec(&mut r, 6);
        f[1] = g(rat(0), rat(0));
        let m = psi_ef(&s, &e, &f, 0.0).unwrap();
        let b = m.mul_vec(&a);
        let ae = s.pair(&a, &e.iter().map(|x| g(x.clone(), rat(0))).collect::<Vec<_>>());
        let be = s.pair(&b, &e.iter().map(|x| g(x.clone(), rat(0))).collect::<Vec<_>>());
        assert_eq!(ae, be);
        // p_e(psi a) - p_e(a) - Im f is a multiple of e.
        let diff: Vec<Rational> = im_over(&b, &be)
            .iter()
            .zip(im_over(&a, &ae))
            .zip(&f)
            .map(|((x, y), fi)| x - y - fi.im.clone())
            .collect();
        assert!(diff[1..].iter().all(|x| *x == rat(0)), "{diff:?}");
    }
}

#[test]
fn tube_coordinates_and_cone() {
    let s = space6();
    let e = ints(&[1, 0, 0, 0, 0, 0]);
    let comp = default_complement(&s, &e).unwrap();
    assert_eq!(comp.len(), 4);
    let a = ComplexVector::Exact(exact_tube_point(&s, &base_z()));
    let t = tube_coords(&s, &a, &e, &comp, 1e-12).unwrap();
    assert!(t.in_cone && t.yy < 0.0);
    assert!(t.exact.is_some());
    let mut z2 = base_z();
    z2[0] = g(rat(0), rat(3));
    let b = ComplexVector::Exact(exact_tube_point(&s, &z2));
    let t2 = tube_coords(&s, &b, &e, &comp, 1e-12).unwrap();
    assert!(t.same_cone_component(&t2));
}

#[test]
fn hodge_norm_diverges_along_a_cone_direction() {
    let s = space6();
    let e = ints(&[1, 0, 0, 0, 0, 0]);
    let a = exact_tube_point(&s, &base_z());
    // Im f = e2 - f2 lies in the cone.
    let mut last = hodge_norm_exact(&s, &a);
    for t in 1..6 {
        let mut f = vec![g(rat(0), rat(0)); 6];
        f[2] = g(rat(0), rat(t));
        f[3] = g(rat(0), rat(-t));
        let b = psi_ef(&s, &e, &f, 0.0).unwrap().mul_vec(&a);
        let h = hodge_norm_exact(&s, &b);
        assert!(h > last);
        last = h;
    }
}

#[test]
fn psi_tau_rejects_bad_planes() {
    let s = space6();
    let e1 = ints(&[1, 0, 0, 0, 0, 0]);
    let f1 = ints(&[0, 1, 0, 0, 0, 0]);
    let tau = g(rat(0), rat(1));
    assert!(psi_tau(&s, &e1, &f1, &tau).is_err());
    assert!(psi_tau(&s, &e1, &e1, &tau).is_err());
    assert!(psi_tau(&s, &e1, &ints(&[0, 0, 1, 0, 0, 0]), &tau).is_ok());
    let mut f = vec![g(rat(0), rat(0)); 6];
    f[0] = g(rat(1), rat(0));
    f[1] = g(rat(0), rat(1));
    assert!(psi_ef(&s, &e1, &f, 0.0).is_err());
}

/// Samples of `exp(wN)(a0 + (s + kappa conj(s)) b)`; `kappa != 0` breaks
/// holomorphy in `s` while staying in the domain.
fn samples(kappa: f64, ws: &[Complex64]) -> (PeriodSampleSet, pdt::monodromy::NilpotentData, Vec<Complex64>) {
    let s = space6();
    let n = nilpotent_from_pair(&s, &ints(&[1, 0, 0, 0, 0, 0]), &ints(&[0, 0, 1, 0, 0, 0])).unwrap();
    let nd = classify_nilpotent(s.clone(), n.clone()).unwrap();
    let t = MonodromyOperator::new(s.clone(), exp_nilpotent(&n)).unwrap();
    let a0 = tube_point(&s, &[c(0.1, 0.5), c(0.2, -0.5), c(0.0, 0.0), c(0.0, 0.0)]);
    // b = g1 + i g2 is isotropic and orthogonal to a0.
    let beta = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.1, 0.0), c(0.0, 0.1)];
    let samples = ws
        .iter()
        .map(|&w| {
            let q = (Complex64::i() * 2.0 * PI * w).exp();
            let q = q + kappa * q.conj();
            let phi: Vec<Complex64> = a0.iter().zip(&beta).map(|(a, b)| a + q * b).collect();
            PeriodSample { w, alpha: ComplexVector::Numeric(nd.one_param(&w).mul_vec(&phi)) }
        })
        .collect();
    (PeriodSampleSet { monodromy: t, samples }, nd, a0)
}

fn ws(n: usize) -> Vec<Complex64> {
    (0..n).map(|k| c(0.21 * k as f64, 0.5 + 0.2 * k as f64)).collect()
}

#[test]
fn limit_of_a_synthetic_orbit() {
    let (ps, nd, a0) = samples(0.0, &ws(10));
    let lim = limit_line(&ps, &nd, &LimitOptions::default()).unwrap();
    assert!(line_distance(&lim.f_lim, &a0) < 1e-9);
    assert_eq!(lim.samples_used, 10);
}

#[test]
fn noisy_samples_do_not_converge() {
    let (ps, nd, _) = samples(0.5, &ws(10));
    let r = limit_line(&ps, &nd, &LimitOptions::default());
    assert!(matches!(r, Err(Error::NoConvergence { .. })), "{r:?}");
}

#[test]
fn too_few_samples_for_the_degree() {
    let (ps, nd, _) = samples(0.0, &ws(3));
    assert!(limit_line(&ps, &nd, &LimitOptions::default()).is_err());
}

#[test]
fn samples_off_the_upper_half_plane() {
    let (ps, nd, _) = samples(0.0, &[c(0.0, 1.0), c(0.5, -0.2)]);
    assert!(untwist(&ps, &nd, 1e-9).is_err());
}

#[test]
fn deck_transformation_consistency() {
    // P(w + 1) = T P(w) holds for a genuine orbit.
    let (ps, nd, _) = samples(0.0, &[c(0.1, 1.0), c(1.1, 1.0), c(-0.9, 1.0)]);
    let pts = untwist(&ps, &nd, 1e-9).unwrap();
    assert!(line_distance(&pts[0].phi, &pts[1].phi) < 1e-9);
    assert!((pts[0].s - (Complex64::i() * 2.0 * PI * c(0.1, 1.0)).exp()).norm() < 1e-15);
}

#[test]
fn limit_mhs_types() {
    let s = space6();
    let f = tube_point(&s, &[c(0.1, 0.5), c(0.2, -0.5), c(0.0, 0.1), c(0.3, 0.0)]);
    let type3 = Subspace::span(6, vec![unit(6, 0), unit(6, 4)]);
    let fun = functional_from_vector(&s, &type3, &f);
    let m = limit_mhs(&s, &type3, &fun, 1e-9).unwrap();
    assert_eq!(m.class, Some(SubspaceClass::Type3));
    assert_eq!(m.v0.dim(), 1);
    assert!(m.hodge_consistent);
    let type2 = Subspace::span(6, vec![unit(6, 0), unit(6, 2)]);
    let m = limit_mhs(&s, &type2, &functional_from_vector(&s, &type2, &f), 1e-9).unwrap();
    assert_eq!(m.class, Some(SubspaceClass::Type2));
    assert_eq!(m.pieces.iter().map(|p| p.weight).max(), Some(2));
}
