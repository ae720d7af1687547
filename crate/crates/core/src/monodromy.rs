//! Unipotent monodromy: logarithm, the cases I/II/III, the `(e, u)` normal
//! form of `N`, one-parameter groups `exp(wN)` and limit weight filtrations.
//!
//! When `N != 0` there are rational vectors `e, u` with `e.e = e.u = 0` and
//! `N(a) = (a.e)u - (a.u)e`. Case II has `u.u = 0` (so `N^2 = 0`), case III has
//! `u.u != 0`. Weight indices are centered at 0.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{primitive_integer, rat, ratio, Field, Rational};
use crate::linalg::{kernel, lift, lift_vec, Matrix};
use crate::qspace::{QuadraticSpace, Subspace};

/// Default bound for [`unipotent_power`]; overridden by `PDT_MAX_ORDER`.
pub const DEFAULT_MAX_ORDER: u32 = 60;

/// A monodromy operator: an isometry `T` with `(T - 1)^3 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyOperator {
    space: Arc<QuadraticSpace>,
    t: Matrix<Rational>,
}

impl MonodromyOperator {
    pub fn new(space: Arc<QuadraticSpace>, t: Matrix<Rational>) -> Result<Self> {
        let d = space.dim();
        if t.nrows() != d || t.ncols() != d {
            return Err(Error::Mismatch(format!(
                "T is {}x{} but the space has dimension {d}",
                t.nrows(),
                t.ncols()
            )));
        }
        if t.transpose().mul(space.gram()).mul(&t) != *space.gram() {
            return Err(Error::malformed("T does not preserve the form"));
        }
        if !is_unipotent(&t) {
            return Err(Error::NeedsBaseChange);
        }
        Ok(MonodromyOperator { space, t })
    }

    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.t
    }
}

/// `(T - 1)^3 == 0`.
pub fn is_unipotent(t: &Matrix<Rational>) -> bool {
    let m = t.sub(&Matrix::identity(t.nrows()));
    m.pow(3).is_zero()
}

/// Maximum exponent for the finite-order search, read from `PDT_MAX_ORDER`.
pub fn max_order_from_env() -> u32 {
    std::env::var("PDT_MAX_ORDER")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&k| k > 0)
        .unwrap_or(DEFAULT_MAX_ORDER)
}

/// Smallest `k <= max` with `T^k` unipotent, together with `T^k`.
pub fn unipotent_power(t: &Matrix<Rational>, max: u32) -> Option<(u32, Matrix<Rational>)> {
    let mut p = t.clone();
    for k in 1..=max {
        if is_unipotent(&p) {
            return Some((k, p));
        }
        p = p.mul(t);
    }
    None
}

/// `exp(N) = 1 + N + N^2/2` for `N^3 = 0`.
pub fn exp_nilpotent<F: Field>(n: &Matrix<F>) -> Matrix<F> {
    let n2 = n.mul(n);
    Matrix::identity(n.nrows())
        .add(n)
        .add(&n2.scale(&F::from_rational(&ratio(1, 2))))
}

/// `N = log T = (T - 1) - (T - 1)^2 / 2`, verified by `exp(N) = T`.
pub fn log_unipotent(m: &MonodromyOperator) -> Result<Matrix<Rational>> {
    log_unipotent_matrix(&m.t)
}

pub fn log_unipotent_matrix(t: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let d = t.nrows();
    let x = t.sub(&Matrix::identity(d));
    let x2 = x.mul(&x);
    if !x2.mul(&x).is_zero() {
        return Err(Error::NeedsBaseChange);
    }
    let n = x.sub(&x2.scale(&ratio(1, 2)));
    debug_assert!(exp_nilpotent(&n) == *t);
    if exp_nilpotent(&n) != *t {
        return Err(Error::malformed("exp(log T) != T"));
    }
    Ok(n)
}

/// `N = u (Ge)^T - e (Gu)^T`, i.e. `N(a) = (a.e)u - (a.u)e`.
pub fn nilpotent_from_pair(space: &QuadraticSpace, e: &[Rational], u: &[Rational]) -> Result<Matrix<Rational>> {
    space.check_vector(e)?;
    space.check_vector(u)?;
    if !Field::is_zero(&space.pair(e, e)) || !Field::is_zero(&space.pair(e, u)) {
        return Err(Error::malformed("need e.e = e.u = 0"));
    }
    if Subspace::span(space.dim(), vec![e.to_vec(), u.to_vec()]).dim() != 2 {
        return Err(Error::malformed("e and u must be linearly independent"));
    }
    let ge = space.gram_vec(e);
    let gu = space.gram_vec(u);
    Ok(Matrix::outer(u, &ge).sub(&Matrix::outer(e, &gu)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegenerationCase {
    /// `N = 0`.
    I,
    /// `N != 0 = N^2`.
    II,
    /// `N^2 != 0 = N^3`.
    III,
}

impl DegenerationCase {
    pub fn name(&self) -> &'static str {
        match self {
            DegenerationCase::I => "I",
            DegenerationCase::II => "II",
            DegenerationCase::III => "III",
        }
    }
}

/// `N` together with its case and normal-form data.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentData {
    space: Arc<QuadraticSpace>,
    pub n: Matrix<Rational>,
    pub case: DegenerationCase,
    pub e: Option<Vec<Rational>>,
    pub u: Option<Vec<Rational>>,
    /// `span{e, u}`, zero in case I.
    pub j: Subspace,
    /// Radical of `J`.
    pub j0: Subspace,
    /// `u.u` (zero in cases I and II).
    pub uu: Rational,
}

impl NilpotentData {
    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    /// In case III, whether `u.u < 0`, the sign forced by polarization.
    pub fn polarized_sign(&self) -> Option<bool> {
        (self.case == DegenerationCase::III).then(|| self.uu < rat(0))
    }

    /// `exp(wN)` by the closed formula
    /// `a + w(a.e)u - w(a.u)e - w^2/2 (u.u)(a.e)e`, over any field containing `Q`.
    pub fn one_param<F: Field>(&self, w: &F) -> Matrix<F> {
        let d = self.space.dim();
        let (Some(e), Some(u)) = (&self.e, &self.u) else {
            return Matrix::identity(d);
        };
        let ge = self.space.gram_vec(e);
        let gu = self.space.gram_vec(u);
        let (e, u, ge, gu) = (lift_vec::<F>(e), lift_vec::<F>(u), lift_vec::<F>(&ge), lift_vec::<F>(&gu));
        let linear = Matrix::outer(&u, &ge).sub(&Matrix::outer(&e, &gu));
        let quad = Matrix::outer(&e, &ge);
        let half_uu = F::from_rational(&(self.uu.clone() * ratio(1, 2)));
        Matrix::identity(d)
            .add(&linear.scale(w))
            .sub(&quad.scale(&(w.clone() * w.clone() * half_uu)))
    }

    /// `exp(wN)` from the truncated exponential series (used as an oracle).
    pub fn exp_series<F: Field>(&self, w: &F) -> Matrix<F> {
        let n: Matrix<F> = lift(&self.n);
        exp_nilpotent(&n.scale(w))
    }

    /// The weight filtration from the closed formulas, cross-checked against
    /// [`jm_weight`].
    pub fn weight_filtration(&self) -> Result<WeightFiltration> {
        let full = self.space.full();
        let steps = match self.case {
            DegenerationCase::I => vec![(0, full)],
            DegenerationCase::II => {
                let jp = self.space.perp_unchecked(&self.j);
                vec![
                    (-2, self.space.zero()),
                    (-1, self.j.clone()),
                    (0, jp),
                    (1, full),
                ]
            }
            DegenerationCase::III => {
                let j0p = self.space.perp_unchecked(&self.j0);
                vec![
                    (-2, self.j0.clone()),
                    (-1, self.j0.clone()),
                    (0, j0p.clone()),
                    (1, j0p),
                    (2, full),
                ]
            }
        };
        for (k, w) in &steps {
            let oracle = jm_weight(&self.n, *k);
            if oracle != *w {
                return Err(Error::Classification(format!(
                    "closed-form W_{k} disagrees with the Jacobson-Morozov construction"
                )));
            }
        }
        Ok(WeightFiltration { steps })
    }
}

/// An increasing filtration `W_k`, listed by weight.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightFiltration {
    pub steps: Vec<(i32, Subspace)>,
}

impl WeightFiltration {
    /// `W_k`, extended by 0 below the first step and by the last step above.
    pub fn get(&self, k: i32) -> Subspace {
        let d = self.steps[0].1.ambient_dim();
        let mut cur = Subspace::zero(d);
        for (j, w) in &self.steps {
            if *j <= k {
                cur = w.clone();
            }
        }
        cur
    }
}

/// Column span of `m`.
pub fn image(m: &Matrix<Rational>) -> Subspace {
    let cols = (0..m.ncols()).map(|j| m.col(j)).collect();
    Subspace::span(m.nrows(), cols)
}

pub fn kernel_subspace(m: &Matrix<Rational>) -> Subspace {
    Subspace::span(m.ncols(), kernel(&m.to_rows(), m.ncols()))
}

/// The monodromy weight filtration of an arbitrary nilpotent `N`:
/// `W_k = sum_{j >= max(0, -k)} Im N^j ∩ Ker N^{k+j+1}`.
pub fn jm_weight(n: &Matrix<Rational>, k: i32) -> Subspace {
    let d = n.nrows();
    let mut powers = vec![Matrix::identity(d)];
    while !powers.last().unwrap().is_zero() {
        let next = powers.last().unwrap().mul(n);
        powers.push(next);
    }
    // powers[s] = N^s with N^{s} = 0 for the last entry.
    let nil = powers.len() - 1;
    let pow = |i: usize| -> Matrix<Rational> {
        if i < powers.len() {
            powers[i].clone()
        } else {
            Matrix::zeros(d, d)
        }
    };
    let mut w = Subspace::zero(d);
    let start = (-k).max(0) as usize;
    for j in start..=nil {
        let ker_exp = k + j as i32 + 1;
        if ker_exp <= 0 {
            continue;
        }
        let im = image(&pow(j));
        let ker = kernel_subspace(&pow(ker_exp as usize));
        w = w
            .sum(&im.intersect(&ker).expect("same ambient"))
            .expect("same ambient");
    }
    w
}

/// Classify `N` into case I/II/III and extract the canonical `(e, u)`.
pub fn classify_nilpotent(space: Arc<QuadraticSpace>, n: Matrix<Rational>) -> Result<NilpotentData> {
    let d = space.dim();
    if n.nrows() != d || n.ncols() != d {
        return Err(Error::Mismatch(format!(
            "N is {}x{} but the space has dimension {d}",
            n.nrows(),
            n.ncols()
        )));
    }
    let g = space.gram();
    if !n.transpose().mul(g).add(&g.mul(&n)).is_zero() {
        return Err(Error::NotTypeIv("N^T G + G N != 0".into()));
    }
    let n2 = n.mul(&n);
    if !n2.mul(&n).is_zero() {
        return Err(Error::NotTypeIv("N^3 != 0".into()));
    }
    if n.is_zero() {
        return Ok(NilpotentData {
            n,
            case: DegenerationCase::I,
            e: None,
            u: None,
            j: space.zero(),
            j0: space.zero(),
            uu: rat(0),
            space,
        });
    }
    let rank = n.rank();
    if rank != 2 {
        return Err(Error::NotTypeIv(format!("rank N = {rank}, expected 2")));
    }
    let im = image(&n);
    let ker = kernel_subspace(&n);
    let core = im.intersect(&ker)?;
    let Some(first) = core.basis().first() else {
        return Err(Error::NotTypeIv("Im N ∩ Ker N = 0".into()));
    };
    let e = primitive_integer(first);
    let ge = space.gram_vec(&e);
    let Some(i) = ge.iter().position(|x| !Field::is_zero(x)) else {
        return Err(Error::NotTypeIv("e lies in the radical of the form".into()));
    };
    // Test vector a = e_i, so a.e = (Ge)_i.
    let ae = ge[i].clone();
    let u: Vec<Rational> = n.col(i).into_iter().map(|x| x / ae.clone()).collect();
    let normal_form = nilpotent_from_pair(&space, &e, &u)
        .map_err(|err| Error::NotTypeIv(format!("normal form: {err}")))?;
    if normal_form != n {
        return Err(Error::NotTypeIv(
            "N(a) = (a.e)u - (a.u)e fails for the extracted pair".into(),
        ));
    }
    let uu = space.pair(&u, &u);
    let case = if Field::is_zero(&uu) {
        DegenerationCase::II
    } else {
        DegenerationCase::III
    };
    if (case == DegenerationCase::II) != n2.is_zero() {
        return Err(Error::NotTypeIv("u.u = 0 must match N^2 = 0".into()));
    }
    // G N^2 = -(u.u) (Ge)(Ge)^T, i.e. (N^2 a . a) = -(u.u)(a.e)^2.
    if g.mul(&n2) != Matrix::outer(&ge, &ge).scale(&(-uu.clone())) {
        return Err(Error::NotTypeIv("(N^2 a . a) = -(u.u)(a.e)^2 fails".into()));
    }
    let j = Subspace::span(d, vec![e.clone(), u.clone()]);
    let j0 = space.radical(&j)?;
    Ok(NilpotentData {
        n,
        case,
        e: Some(e),
        u: Some(u),
        j,
        j0,
        uu,
        space,
    })
}

/// Logarithm of the monodromy followed by classification.
pub fn analyze(m: &MonodromyOperator) -> Result<NilpotentData> {
    let n = log_unipotent(m)?;
    classify_nilpotent(m.space.clone(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRational;
    use crate::qspace::ivec;

    fn space() -> Arc<QuadraticSpace> {
        let u = QuadraticSpace::hyperbolic_plane();
        Arc::new(u.direct_sum(&u).direct_sum(&QuadraticSpace::diagonal(&[1, 1])))
    }

    fn case_ii() -> NilpotentData {
        let s = space();
        let n = nilpotent_from_pair(&s, &ivec(&[1, 0, 0, 0, 0, 0]), &ivec(&[0, 0, 1, 0, 0, 0])).unwrap();
        classify_nilpotent(s, n).unwrap()
    }

    fn case_iii() -> NilpotentData {
        // u = e2 - f2 has u.u = -2.
        let s = space();
        let n = nilpotent_from_pair(&s, &ivec(&[1, 0, 0, 0, 0, 0]), &ivec(&[0, 0, 1, -1, 0, 0])).unwrap();
        classify_nilpotent(s, n).unwrap()
    }

    #[test]
    fn identity_has_zero_log() {
        let s = space();
        let t = MonodromyOperator::new(s.clone(), Matrix::identity(6)).unwrap();
        let nd = analyze(&t).unwrap();
        assert_eq!(nd.case, DegenerationCase::I);
        assert!(nd.j.is_zero());
    }

    #[test]
    fn log_exp_roundtrip() {
        for nd in [case_ii(), case_iii()] {
            let t = exp_nilpotent(&nd.n);
            let m = MonodromyOperator::new(nd.space().clone(), t.clone()).unwrap();
            assert_eq!(log_unipotent(&m).unwrap(), nd.n);
            assert_eq!(nd.one_param(&rat(1)), t);
        }
        let t3 = exp_nilpotent(&case_iii().n);
        assert!(!t3.sub(&Matrix::identity(6)).pow(2).is_zero());
    }

    #[test]
    fn cases_and_subspaces() {
        let ii = case_ii();
        assert_eq!(ii.case, DegenerationCase::II);
        assert_eq!(ii.j.dim(), 2);
        assert_eq!(ii.j0, ii.j);
        let iii = case_iii();
        assert_eq!(iii.case, DegenerationCase::III);
        assert_eq!(iii.j0, Subspace::span(6, vec![ivec(&[1, 0, 0, 0, 0, 0])]));
        assert_eq!(iii.polarized_sign(), Some(true));
        assert!(!iii.n.mul(&iii.n).is_zero());
        let jp = iii.space().perp_unchecked(&iii.j);
        assert_eq!(kernel_subspace(&iii.n), jp);
    }

    #[test]
    fn filtrations_match_the_oracle() {
        let ii = case_ii().weight_filtration().unwrap();
        assert_eq!(ii.get(-1), case_ii().j);
        let iii = case_iii().weight_filtration().unwrap();
        assert_eq!(iii.get(-2), image(&case_iii().n.mul(&case_iii().n)));
        for nd in [case_ii(), case_iii()] {
            let w = nd.weight_filtration().unwrap();
            for k in -3..=3 {
                for b in w.get(k).basis() {
                    assert!(w.get(k - 2).contains(&nd.n.mul_vec(b)));
                }
            }
        }
    }

    #[test]
    fn one_param_is_a_group_over_gaussian_rationals() {
        let nd = case_iii();
        let w1 = GaussianRational::new(ratio(1, 3), rat(2));
        let w2 = GaussianRational::new(rat(-1), ratio(5, 7));
        let lhs = nd.one_param(&w1).mul(&nd.one_param(&w2));
        assert_eq!(lhs, nd.one_param(&(w1.clone() + w2)));
        assert_eq!(nd.one_param(&w1), nd.exp_series(&w1));
    }

    #[test]
    fn non_unipotent_needs_base_change() {
        let s = Arc::new(QuadraticSpace::diagonal(&[1, 1]));
        let minus = Matrix::identity(2).scale(&rat(-1));
        assert_eq!(
            MonodromyOperator::new(s, minus.clone()).unwrap_err(),
            Error::NeedsBaseChange
        );
        let (k, p) = unipotent_power(&minus, 60).unwrap();
        assert_eq!(k, 2);
        assert!(p.is_identity());
    }

    #[test]
    fn rank_four_is_rejected() {
        let s = space();
        let a = nilpotent_from_pair(&s, &ivec(&[1, 0, 0, 0, 0, 0]), &ivec(&[0, 0, 0, 0, 1, 0])).unwrap();
        let b = nilpotent_from_pair(&s, &ivec(&[0, 0, 1, 0, 0, 0]), &ivec(&[0, 0, 0, 0, 0, 1])).unwrap();
        let err = classify_nilpotent(s, a.add(&b)).unwrap_err();
        assert!(matches!(err, Error::NotTypeIv(_)));
    }
}
