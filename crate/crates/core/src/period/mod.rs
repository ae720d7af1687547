//! Complex vectors in `H ⊗ C`: the domain `H_+`, Hodge norms, component
//! tests, the transvections `psi_tau` and `psi_{e,f}`, tube coordinates,
//! untwisting of sampled period maps, limit lines and the limit mixed Hodge
//! structure on `V*`.
//!
//! Vectors come in two modes. Exact vectors have Gaussian-rational entries and
//! every predicate on them is decided exactly; numeric vectors use `f64` with a
//! relative tolerance (default [`MEMBERSHIP_TOL`]).

mod limit;
mod transvection;

pub use limit::{
    boundary_line, check_limit_orthogonality, functional_from_vector, limit_line, limit_mhs,
    normalize_line, untwist, LimitLine,
    LimitMhs, LimitOptions, OrthogonalityReport, PeriodSample, PeriodSampleSet, Untwisted,
    WeightPiece,
};
pub use transvection::{
    default_complement, psi_ef, psi_ef_norm_rhs, psi_tau, psi_tau_norm_rhs, tube_coords,
    TubeCoords,
};

use num_complex::Complex64;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{ComplexScalar, Field, GaussianRational, Rational};
use crate::qspace::QuadraticSpace;

/// Default tolerance for numeric membership predicates.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Default residual threshold for limit extrapolation.
pub const EXTRAPOLATION_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum ComplexVector {
    Exact(Vec<GaussianRational>),
    Numeric(Vec<Complex64>),
}

impl ComplexVector {
    pub fn len(&self) -> usize {
        match self {
            ComplexVector::Exact(v) => v.len(),
            ComplexVector::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ComplexVector::Exact(_))
    }

    pub fn to_numeric(&self) -> Vec<Complex64> {
        match self {
            ComplexVector::Exact(v) => v.iter().map(ComplexScalar::to_c64).collect(),
            ComplexVector::Numeric(v) => v.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ComplexVector::Exact(v) => v.iter().all(Field::is_zero),
            ComplexVector::Numeric(v) => v.iter().all(|z| z.norm() == 0.0),
        }
    }

    pub fn conj(&self) -> ComplexVector {
        match self {
            ComplexVector::Exact(v) => ComplexVector::Exact(v.iter().map(ComplexScalar::conj).collect()),
            ComplexVector::Numeric(v) => ComplexVector::Numeric(v.iter().map(|z| z.conj()).collect()),
        }
    }

    /// Euclidean norm of the numeric values.
    pub fn euclidean_norm(&self) -> f64 {
        euclid(&self.to_numeric())
    }
}

pub(crate) fn euclid(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `a . b` (complex bilinear).
pub fn bilinear<C: ComplexScalar>(space: &QuadraticSpace, a: &[C], b: &[C]) -> C {
    space.pair(a, b)
}

/// `a . conj(b)`.
pub fn hermitian<C: ComplexScalar>(space: &QuadraticSpace, a: &[C], b: &[C]) -> C {
    let bc: Vec<C> = b.iter().map(ComplexScalar::conj).collect();
    space.pair(a, &bc)
}

pub(crate) fn check_len(space: &QuadraticSpace, v: &ComplexVector) -> Result<()> {
    if v.len() != space.dim() {
        return Err(Error::Mismatch(format!(
            "vector of length {} in a space of dimension {}",
            v.len(),
            space.dim()
        )));
    }
    Ok(())
}

/// The Hodge norm `-a . conj(a)`.
pub fn hodge_norm(space: &QuadraticSpace, alpha: &ComplexVector) -> f64 {
    match alpha {
        ComplexVector::Exact(v) => -crate::field::rat_to_f64(&hermitian(space, v, v).re),
        ComplexVector::Numeric(v) => -hermitian(space, v, v).re,
    }
}

/// Exact Hodge norm of a Gaussian-rational vector.
pub fn hodge_norm_exact(space: &QuadraticSpace, alpha: &[GaussianRational]) -> Rational {
    -hermitian(space, alpha, alpha).re
}

/// Real and imaginary parts as real vectors.
fn frame<C: ComplexScalar>(v: &[C]) -> (Vec<C::Real>, Vec<C::Real>) {
    (v.iter().map(|z| z.re()).collect(), v.iter().map(|z| z.im()).collect())
}

fn gram2<R: Field>(space: &QuadraticSpace, x: &(Vec<R>, Vec<R>), y: &(Vec<R>, Vec<R>)) -> [R; 4] {
    [
        space.pair(&x.0, &y.0),
        space.pair(&x.0, &y.1),
        space.pair(&x.1, &y.0),
        space.pair(&x.1, &y.1),
    ]
}

fn det2<R: Field>(m: &[R; 4]) -> R {
    m[0].clone() * m[3].clone() - m[1].clone() * m[2].clone()
}

fn degenerate_exact(space: &QuadraticSpace, x: &(Vec<Rational>, Vec<Rational>)) -> bool {
    Field::is_zero(&det2(&gram2(space, x, x)))
}

fn degenerate_numeric(space: &QuadraticSpace, x: &(Vec<f64>, Vec<f64>), tol: f64) -> bool {
    let g = gram2(space, x, x);
    let scale = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    scale == 0.0 || det2(&g).abs() <= tol * scale * scale
}

/// Whether `alpha` and `beta` lie in the same component of the open set
/// `{a . conj(a) < 0}`: the pairing determinant between the real frames
/// `(Re a, Im a)` and `(Re b, Im b)` is positive.
pub fn same_component(space: &QuadraticSpace, alpha: &ComplexVector, beta: &ComplexVector, tol: f64) -> Result<bool> {
    check_len(space, alpha)?;
    check_len(space, beta)?;
    match (alpha, beta) {
        (ComplexVector::Exact(a), ComplexVector::Exact(b)) => {
            let (fa, fb) = (frame(a), frame(b));
            if degenerate_exact(space, &fa) || degenerate_exact(space, &fb) {
                return Err(Error::malformed("degenerate real frame (vector is real-proportional)"));
            }
            Ok(det2(&gram2(space, &fa, &fb)).is_positive())
        }
        _ => {
            let (fa, fb) = (frame(&alpha.to_numeric()), frame(&beta.to_numeric()));
            if degenerate_numeric(space, &fa, tol) || degenerate_numeric(space, &fb, tol) {
                return Err(Error::malformed("degenerate real frame (vector is real-proportional)"));
            }
            Ok(det2(&gram2(space, &fa, &fb)) > 0.0)
        }
    }
}

/// A base point fixing the component `H_+`.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainWitness {
    pub basepoint: ComplexVector,
}

impl DomainWitness {
    pub fn new(space: &QuadraticSpace, basepoint: ComplexVector, tol: f64) -> Result<Self> {
        check_len(space, &basepoint)?;
        if !in_open_set(space, &basepoint, tol)? {
            return Err(Error::malformed(
                "witness must satisfy a.a = 0 and a.conj(a) < 0",
            ));
        }
        Ok(DomainWitness { basepoint })
    }
}

/// `a . a = 0` and `a . conj(a) < 0`, without the component condition.
pub fn in_open_set(space: &QuadraticSpace, alpha: &ComplexVector, tol: f64) -> Result<bool> {
    check_len(space, alpha)?;
    if alpha.is_zero() {
        return Err(Error::malformed("zero vector"));
    }
    Ok(match alpha {
        ComplexVector::Exact(v) => {
            bilinear(space, v, v).is_zero() && hermitian(space, v, v).re.is_negative()
        }
        ComplexVector::Numeric(v) => {
            let n2 = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
            bilinear(space, v, v).norm() < tol * n2 && hermitian(space, v, v).re < 0.0
        }
    })
}

/// Membership in `H_+`: isotropic, negative Hodge norm, and in the witness's component.
pub fn in_domain(space: &QuadraticSpace, alpha: &ComplexVector, witness: &DomainWitness, tol: f64) -> Result<bool> {
    if !in_open_set(space, alpha, tol)? {
        return Ok(false);
    }
    same_component(space, alpha, &witness.basepoint, tol)
}

/// Parse-free helper: Gaussian-rational vector from integer pairs.
pub fn gvec(entries: &[(i64, i64)]) -> Vec<GaussianRational> {
    entries
        .iter()
        .map(|&(a, b)| GaussianRational::new(crate::field::rat(a), crate::field::rat(b)))
        .collect()
}
