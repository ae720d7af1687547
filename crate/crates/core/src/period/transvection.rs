use num_complex::Complex64;

use super::{bilinear, check_len, hermitian, ComplexVector};
use crate::error::{Error, Result};
use crate::field::{rat, rat_to_f64, ratio, ComplexScalar, Field, Rational};
use crate::linalg::{lift_vec, Matrix};
use crate::qspace::{QuadraticSpace, Subspace};

fn check_isotropic(space: &QuadraticSpace, v: &[Rational], name: &str) -> Result<()> {
    space.check_vector(v)?;
    if v.iter().all(Field::is_zero) {
        return Err(Error::malformed(format!("{name} is zero")));
    }
    if !Field::is_zero(&space.norm(v)) {
        return Err(Error::malformed(format!("{name} is not isotropic")));
    }
    Ok(())
}

/// `psi_tau(a) = a + tau((a.e0)e1 - (a.e1)e0)` for an isotropic plane `span{e0, e1}`.
pub fn psi_tau<C: ComplexScalar>(space: &QuadraticSpace, e0: &[Rational], e1: &[Rational], tau: &C) -> Result<Matrix<C>> {
    check_isotropic(space, e0, "e0")?;
    check_isotropic(space, e1, "e1")?;
    if !Field::is_zero(&space.pair(e0, e1)) {
        return Err(Error::malformed("e0.e1 != 0; the plane is not isotropic"));
    }
    if Subspace::span(space.dim(), vec![e0.to_vec(), e1.to_vec()]).dim() != 2 {
        return Err(Error::malformed("e0 and e1 are linearly dependent"));
    }
    let d = space.dim();
    let (ge0, ge1) = (space.gram_vec(e0), space.gram_vec(e1));
    let m = Matrix::outer(e1, &ge0).sub(&Matrix::outer(e0, &ge1));
    Ok(Matrix::identity(d).add(&m.map(C::from_rational).scale(tau)))
}

/// Right-hand side of the `psi_tau` norm identity:
/// `a.conj(a) - 4 Im(tau) Im((a.e0)(conj(a).e1))`.
pub fn psi_tau_norm_rhs<C: ComplexScalar>(space: &QuadraticSpace, alpha: &[C], e0: &[Rational], e1: &[Rational], tau: &C) -> C::Real {
    let e0c: Vec<C> = lift_vec(e0);
    let e1c: Vec<C> = lift_vec(e1);
    let alpha_bar: Vec<C> = alpha.iter().map(ComplexScalar::conj).collect();
    let a0 = bilinear(space, alpha, &e0c);
    let a1bar = bilinear(space, &alpha_bar, &e1c);
    let four = C::Real::from_int(4);
    hermitian(space, alpha, alpha).re() - four * tau.im() * (a0 * a1bar).im()
}

/// `psi_{e,f}(a) = a + (a.e)f - (a.f)e - (f.f)/2 (a.e)e` for isotropic `e`
/// and `f` in `e^perp`.
pub fn psi_ef<C: ComplexScalar>(space: &QuadraticSpace, e: &[Rational], f: &[C], tol: f64) -> Result<Matrix<C>> {
    check_isotropic(space, e, "e")?;
    if f.len() != space.dim() {
        return Err(Error::Mismatch("f has the wrong length".into()));
    }
    let ec: Vec<C> = lift_vec(e);
    if !bilinear(space, &ec, f).approx_zero(tol) {
        return Err(Error::malformed("e.f != 0"));
    }
    let d = space.dim();
    let ge: Vec<C> = lift_vec(&space.gram_vec(e));
    let gf: Vec<C> = {
        let g = space.gram();
        (0..d)
            .map(|i| {
                (0..d).fold(C::zero(), |acc, j| acc + C::from_rational(&g[(i, j)]) * f[j].clone())
            })
            .collect()
    };
    let ff = bilinear(space, f, f);
    let half = C::from_rational(&ratio(1, 2));
    Ok(Matrix::identity(d)
        .add(&Matrix::outer(f, &ge))
        .sub(&Matrix::outer(&ec, &gf))
        .sub(&Matrix::outer(&ec, &ge).scale(&(half * ff))))
}

/// Right-hand side of the `psi_{e,f}` norm identity,
/// `a.conj(a) + 4|a.e|^2 (p_e(a).y + y.y/2)` with `y = Im f`, written without
/// division as `a.conj(a) + 4 Im(conj(a.e)(a.y)) + 2|a.e|^2 (y.y)`.
pub fn psi_ef_norm_rhs<C: ComplexScalar>(space: &QuadraticSpace, alpha: &[C], e: &[Rational], f: &[C]) -> C::Real {
    let ec: Vec<C> = lift_vec(e);
    let a = bilinear(space, alpha, &ec);
    let y: Vec<C> = f.iter().map(|z| C::from_real(z.im())).collect();
    let ay = bilinear(space, alpha, &y);
    let yy = bilinear(space, &y, &y).re();
    let four = C::Real::from_int(4);
    let two = C::Real::from_int(2);
    hermitian(space, alpha, alpha).re() + four * (a.conj() * ay).im() + two * a.norm_sqr() * yy
}

/// Coordinates of `p_e(a) = Im(a / (a.e))` in `J^perp / J`, `J = span{e}`,
/// with respect to a chosen complement of `J` in `J^perp`.
#[derive(Clone, Debug, PartialEq)]
pub struct TubeCoords {
    pub y: Vec<f64>,
    /// Exact coordinates when the input was exact.
    pub exact: Option<Vec<Rational>>,
    /// `y.y` for the induced form.
    pub yy: f64,
    pub in_cone: bool,
    complement_gram: Vec<Vec<f64>>,
}

impl TubeCoords {
    /// The induced form between two points in the same chart.
    pub fn pairing(&self, other: &TubeCoords) -> f64 {
        let mut s = 0.0;
        for (i, a) in self.y.iter().enumerate() {
            for (j, b) in other.y.iter().enumerate() {
                s += a * self.complement_gram[i][j] * b;
            }
        }
        s
    }

    /// Two cone points lie in the same component of `y.y < 0` iff they pair negatively.
    pub fn same_cone_component(&self, other: &TubeCoords) -> bool {
        self.in_cone && other.in_cone && self.pairing(other) < 0.0
    }
}

/// A canonical complement of `span{e}` in `e^perp`: greedily chosen
/// reduced-echelon basis vectors of `e^perp`.
pub fn default_complement(space: &QuadraticSpace, e: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    check_isotropic(space, e, "e")?;
    let d = space.dim();
    let line = Subspace::span(d, vec![e.to_vec()]);
    let perp = space.perp_unchecked(&line);
    let mut chosen: Vec<Vec<Rational>> = vec![e.to_vec()];
    let mut out = Vec::new();
    for b in perp.basis() {
        let mut trial = chosen.clone();
        trial.push(b.clone());
        if Subspace::span(d, trial.clone()).dim() == trial.len() {
            chosen = trial;
            out.push(b.clone());
        }
    }
    Ok(out)
}

/// Rational left inverse rows for the basis `[e, c_1, ..., c_k]`; the rows for
/// the `c_j` give the complement coordinates.
fn coordinate_functionals(space: &QuadraticSpace, e: &[Rational], complement: &[Vec<Rational>]) -> Result<Matrix<Rational>> {
    let d = space.dim();
    let line = Subspace::span(d, vec![e.to_vec()]);
    let perp = space.perp_unchecked(&line);
    let mut cols = vec![e.to_vec()];
    for c in complement {
        space.check_vector(c)?;
        if !Field::is_zero(&space.pair(c, e)) {
            return Err(Error::malformed("complement vector not orthogonal to e"));
        }
        cols.push(c.clone());
    }
    let span = Subspace::span(d, cols.clone());
    if span.dim() != cols.len() || span != perp {
        return Err(Error::malformed(
            "complement together with e must be a basis of e^perp",
        ));
    }
    let b = Matrix::from_cols(&cols, d);
    let bt = b.transpose();
    let inv = bt
        .mul(&b)
        .inverse()
        .ok_or_else(|| Error::malformed("singular basis"))?;
    Ok(inv.mul(&bt))
}

/// Tube-domain coordinates of `a` for the isotropic vector `e`.
pub fn tube_coords(space: &QuadraticSpace, alpha: &ComplexVector, e: &[Rational], complement: &[Vec<Rational>], tol: f64) -> Result<TubeCoords> {
    check_len(space, alpha)?;
    check_isotropic(space, e, "e")?;
    let l = coordinate_functionals(space, e, complement)?;
    let k = complement.len();
    let cg: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| space.pair(&complement[i], &complement[j])).collect())
        .collect();
    let complement_gram: Vec<Vec<f64>> = cg
        .iter()
        .map(|r| r.iter().map(rat_to_f64).collect())
        .collect();
    match alpha {
        ComplexVector::Exact(v) => {
            let ec = lift_vec(e);
            let a = bilinear(space, v, &ec);
            if Field::is_zero(&a) {
                return Err(Error::OutsideChart("a.e = 0".into()));
            }
            let p: Vec<Rational> = v.iter().map(|z| (z.clone() / a.clone()).im).collect();
            let full = l.mul_vec(&p);
            let y: Vec<Rational> = full[1..].to_vec();
            let mut yy = rat(0);
            for i in 0..k {
                for j in 0..k {
                    yy += y[i].clone() * cg[i][j].clone() * y[j].clone();
                }
            }
            Ok(TubeCoords {
                y: y.iter().map(rat_to_f64).collect(),
                in_cone: yy < rat(0),
                yy: rat_to_f64(&yy),
                exact: Some(y),
                complement_gram,
            })
        }
        ComplexVector::Numeric(v) => {
            let ec: Vec<Complex64> = lift_vec(e);
            let a = bilinear(space, v, &ec);
            let scale = super::euclid(v) * super::euclid(&lift_vec::<Complex64>(&space.gram_vec(e)));
            if a.norm() <= tol * scale {
                return Err(Error::OutsideChart(format!("|a.e| = {:.3e}", a.norm())));
            }
            let p: Vec<f64> = v.iter().map(|z| (z / a).im).collect();
            let lf = l.map(rat_to_f64);
            let full = lf.mul_vec(&p);
            let y: Vec<f64> = full[1..].to_vec();
            let mut yy = 0.0;
            for i in 0..k {
                for j in 0..k {
                    yy += y[i] * complement_gram[i][j] * y[j];
                }
            }
            let ynorm: f64 = y.iter().map(|x| x * x).sum();
            Ok(TubeCoords {
                y,
                exact: None,
                yy,
                in_cone: yy < -tol * ynorm,
                complement_gram,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRational;
    use crate::period::{gvec, hodge_norm_exact};
    use crate::qspace::ivec;

    fn space() -> QuadraticSpace {
        let u = QuadraticSpace::hyperbolic_plane();
        u.direct_sum(&u).direct_sum(&QuadraticSpace::diagonal(&[2]))
    }

    fn alpha() -> Vec<GaussianRational> {
        gvec(&[(3, 1), (-2, 5), (1, -1), (0, 2), (4, 3)])
    }

    #[test]
    fn psi_tau_identity_exact() {
        let s = space();
        let (e0, e1) = (ivec(&[1, 0, 0, 0, 0]), ivec(&[0, 0, 1, 0, 0]));
        let tau = GaussianRational::new(ratio(2, 3), rat(1));
        let m = psi_tau(&s, &e0, &e1, &tau).unwrap();
        let a = alpha();
        let pa = m.mul_vec(&a);
        assert_eq!(-hodge_norm_exact(&s, &pa), psi_tau_norm_rhs(&s, &a, &e0, &e1, &tau));
        let g = s.gram().map(GaussianRational::from_rational);
        assert_eq!(m.transpose().mul(&g).mul(&m), g);
        let zero = psi_tau(&s, &e0, &e1, &GaussianRational::zero()).unwrap();
        assert!(zero.is_identity());
    }

    #[test]
    fn psi_ef_identity_exact() {
        let s = space();
        let e = ivec(&[1, 0, 0, 0, 0]);
        // f in e^perp: no f1 component.
        let f = gvec(&[(7, -2), (0, 0), (1, 3), (-2, 1), (1, 1)]);
        let m = psi_ef(&s, &e, &f, 0.0).unwrap();
        let a = alpha();
        let pa = m.mul_vec(&a);
        assert_eq!(-hodge_norm_exact(&s, &pa), psi_ef_norm_rhs(&s, &a, &e, &f));
        let g = s.gram().map(GaussianRational::from_rational);
        assert_eq!(m.transpose().mul(&g).mul(&m), g);
        let bad = gvec(&[(0, 0), (1, 0), (0, 0), (0, 0), (0, 0)]);
        assert!(psi_ef(&s, &e, &bad, 0.0).is_err());
    }

    #[test]
    fn psi_ef_group_law() {
        let s = space();
        let e = ivec(&[1, 0, 0, 0, 0]);
        let f1 = gvec(&[(1, 1), (0, 0), (2, 0), (0, -1), (1, 0)]);
        let f2 = gvec(&[(0, 3), (0, 0), (-1, 1), (1, 1), (0, 2)]);
        let sum: Vec<GaussianRational> = f1.iter().zip(&f2).map(|(a, b)| a + b).collect();
        let lhs = psi_ef(&s, &e, &f1, 0.0)
            .unwrap()
            .mul(&psi_ef(&s, &e, &f2, 0.0).unwrap());
        assert_eq!(lhs, psi_ef(&s, &e, &sum, 0.0).unwrap());
    }

    #[test]
    fn tube_coordinates_invert_the_chart() {
        let s = space();
        let e = ivec(&[1, 0, 0, 0, 0]);
        let comp = default_complement(&s, &e).unwrap();
        assert_eq!(comp.len(), 3);
        // a = f1 + z with z in span{e2, f2, g}: a.e = 1 and p_e(a) = Im z.
        let a = gvec(&[(5, 0), (1, 0), (2, 1), (-1, 3), (1, -2)]);
        let t = tube_coords(&s, &ComplexVector::Exact(a), &e, &comp, 0.0).unwrap();
        let y = t.exact.unwrap();
        let p = ivec(&[0, 0, 1, 3, -2]);
        let mut rebuilt = vec![rat(0); 5];
        for (c, v) in y.iter().zip(&comp) {
            for (r, x) in rebuilt.iter_mut().zip(v) {
                *r = r.clone() + c.clone() * x.clone();
            }
        }
        // Equal modulo e.
        let diff: Vec<Rational> = rebuilt.iter().zip(&p).map(|(a, b)| a - b).collect();
        assert!(Subspace::span(5, vec![e.clone()]).contains(&diff));
        let outside = ComplexVector::Exact(gvec(&[(1, 0), (0, 0), (0, 0), (0, 0), (0, 0)]));
        assert!(matches!(
            tube_coords(&s, &outside, &e, &comp, 0.0),
            Err(Error::OutsideChart(_))
        ));
    }
}
