//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use num_complex::Complex64;
use pdt::field::{rat, GaussianRational, Rational};
use pdt::linalg::{kernel, Matrix};
use pdt::monodromy::{classify_nilpotent, DegenerationCase, NilpotentData};
use pdt::qspace::{ivec, QuadraticSpace, Subspace};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `U + U + diag(extra)` with basis `e1 f1 e2 f2 g1 ...`.
pub fn uu(extra: &[i64]) -> QuadraticSpace {
    let u = QuadraticSpace::hyperbolic_plane();
    let s = u.direct_sum(&u);
    if extra.is_empty() {
        s
    } else {
        s.direct_sum(&QuadraticSpace::diagonal(extra))
    }
}

pub fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![rat(0); d];
    v[i] = rat(1);
    v
}

pub fn random_rational(r: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    Rational::new(r.gen_range(-num..=num).into(), r.gen_range(1..=den).into())
}

pub fn random_gaussian(r: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::new(random_rational(r, 9, 5), random_rational(r, 9, 5))
}

pub fn random_gaussian_vec(r: &mut ChaCha8Rng, d: usize) -> Vec<GaussianRational> {
    (0..d).map(|_| random_gaussian(r)).collect()
}

/// A random invertible integer matrix: a product of elementary shears and a
/// permutation, so its inverse is integral too.
pub fn random_congruence(r: &mut ChaCha8Rng, d: usize) -> Matrix<Rational> {
    let mut s = Matrix::<Rational>::identity(d);
    for _ in 0..(2 * d) {
        let i = r.gen_range(0..d);
        let j = r.gen_range(0..d);
        if i == j {
            continue;
        }
        let c = rat(r.gen_range(-2..=2));
        let mut e = Matrix::<Rational>::identity(d);
        e[(i, j)] = c;
        s = s.mul(&e);
    }
    let mut perm: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        perm.swap(i, r.gen_range(0..=i));
    }
    let mut p = Matrix::<Rational>::zeros(d, d);
    for (i, &j) in perm.iter().enumerate() {
        p[(i, j)] = rat(1);
    }
    s.mul(&p)
}

/// A space `S^T G S` congruent to `g`, with the map `v -> S^{-1} v` carrying
/// vectors of `g` to vectors of the new space.
pub struct Congruent {
    pub space: Arc<QuadraticSpace>,
    pub s: Matrix<Rational>,
    pub s_inv: Matrix<Rational>,
}

impl Congruent {
    pub fn new(r: &mut ChaCha8Rng, g: &QuadraticSpace) -> Self {
        let s = random_congruence(r, g.dim());
        let s_inv = s.inverse().expect("invertible");
        let gram = s.transpose().mul(g.gram()).mul(&s);
        Congruent {
            space: Arc::new(QuadraticSpace::new(gram).expect("symmetric")),
            s,
            s_inv,
        }
    }

    pub fn vector(&self, v: &[Rational]) -> Vec<Rational> {
        self.s_inv.mul_vec(v)
    }

    pub fn endomorphism(&self, n: &Matrix<Rational>) -> Matrix<Rational> {
        self.s_inv.mul(n).mul(&self.s)
    }
}

/// `N a = (a.e) u - (a.u) e`, computed directly from the formula.
pub fn n_from_pair(space: &QuadraticSpace, e: &[Rational], u: &[Rational]) -> Matrix<Rational> {
    let d = space.dim();
    let cols: Vec<Vec<Rational>> = (0..d)
        .map(|j| {
            let a = unit(d, j);
            let ae = space.pair(&a, e);
            let au = space.pair(&a, u);
            (0..d).map(|i| ae.clone() * u[i].clone() - au.clone() * e[i].clone()).collect()
        })
        .collect();
    Matrix::from_cols(&cols, d)
}

/// A random nilpotent of the requested case on a space of signature
/// `(n, 2)` with `d <= max_dim`, presented in random coordinates.
pub fn random_nilpotent(r: &mut ChaCha8Rng, case: DegenerationCase, max_dim: usize) -> NilpotentData {
    let extra_len = r.gen_range(1..=max_dim.saturating_sub(4).max(1));
    let extra: Vec<i64> = (0..extra_len).map(|_| r.gen_range(1..=3)).collect();
    let g = uu(&extra);
    let d = g.dim();
    let (e, u) = match case {
        DegenerationCase::I => (vec![rat(0); d], vec![rat(0); d]),
        DegenerationCase::II => {
            let mut u = unit(d, 2);
            u[0] = rat(r.gen_range(-3..=3));
            (unit(d, 0), u)
        }
        DegenerationCase::III => loop {
            let mut u = vec![rat(0); d];
            u[0] = rat(r.gen_range(-3..=3));
            for x in u.iter_mut().skip(2) {
                *x = rat(r.gen_range(-2..=2));
            }
            if g.norm(&u) != rat(0) {
                break (unit(d, 0), u);
            }
        },
    };
    let c = Congruent::new(r, &g);
    let n = c.endomorphism(&n_from_pair(&g, &e, &u));
    let nd = classify_nilpotent(c.space.clone(), n).expect("type IV nilpotent");
    assert_eq!(nd.case, case);
    nd
}

pub fn image_of(m: &Matrix<Rational>) -> Subspace {
    let d = m.nrows();
    Subspace::span(d, (0..m.ncols()).map(|j| m.col(j)).collect())
}

pub fn kernel_of(m: &Matrix<Rational>) -> Subspace {
    Subspace::span(m.ncols(), kernel(&m.to_rows(), m.ncols()))
}

/// Image of a subspace under `m`.
pub fn push(m: &Matrix<Rational>, v: &Subspace) -> Subspace {
    Subspace::span(m.nrows(), v.basis().iter().map(|b| m.mul_vec(b)).collect())
}

/// Check the defining properties of the weight filtration of `n` centered at
/// 0, which determine it uniquely: `W` is increasing, exhaustive and
/// separated, `N W_k ⊆ W_{k-2}`, and `N^k` maps `W_k` onto `W_{-k}` modulo
/// `W_{-k-1}` with `dim Gr_k = dim Gr_{-k}`.
pub fn is_weight_filtration(n: &Matrix<Rational>, w: impl Fn(i32) -> Subspace, m: i32) -> Result<(), String> {
    let d = n.nrows();
    if w(-m - 1).dim() != 0 || w(m).dim() != d {
        return Err("not exhaustive and separated".into());
    }
    for k in -m..=m {
        if !w(k - 1).is_subspace_of(&w(k)) {
            return Err(format!("W_{} not inside W_{k}", k - 1));
        }
        if !push(n, &w(k)).is_subspace_of(&w(k - 2)) {
            return Err(format!("N W_{k} not inside W_{}", k - 2));
        }
    }
    let gr = |k: i32| w(k).dim() - w(k - 1).dim();
    for k in 1..=m {
        if gr(k) != gr(-k) {
            return Err(format!("dim Gr_{k} != dim Gr_-{k}"));
        }
        let nk = n.pow(k as u32);
        let onto = push(&nk, &w(k)).sum(&w(-k - 1)).expect("same ambient");
        if onto != w(-k) {
            return Err(format!("N^{k} does not map Gr_{k} onto Gr_-{k}"));
        }
    }
    Ok(())
}

/// Sine of the angle between two complex lines.
pub fn line_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let aa: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let bb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    let ab: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    (1.0 - ab.norm_sqr() / (aa * bb)).max(0.0).sqrt()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Bilinear form on complex vectors.
pub fn cdot(space: &QuadraticSpace, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let g = space.gram();
    let mut s = c(0.0, 0.0);
    for i in 0..a.len() {
        for j in 0..b.len() {
            s += a[i] * pdt::field::rat_to_f64(&g[(i, j)]) * b[j];
        }
    }
    s
}

/// The tube point `f1 + z - (z.z / 2) e1` of `U + U + diag(..)`, where `z`
/// lives on the coordinates after `e1 f1`.
pub fn tube_point(space: &QuadraticSpace, z: &[Complex64]) -> Vec<Complex64> {
    let d = space.dim();
    let mut zz = vec![c(0.0, 0.0); d];
    zz[2..].copy_from_slice(z);
    let q = cdot(space, &zz, &zz);
    let mut a = zz;
    a[0] = -q / 2.0;
    a[1] = c(1.0, 0.0);
    a
}

/// Lattice points of the box `[-b, b]^k`.
pub fn lattice_box(k: usize, b: i64) -> impl Iterator<Item = Vec<i64>> {
    let total = (2 * b + 1).pow(k as u32);
    (0..total).map(move |mut idx| {
        (0..k)
            .map(|_| {
                let x = idx % (2 * b + 1) - b;
                idx /= 2 * b + 1;
                x
            })
            .collect()
    })
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    ivec(v)
}
