//! Scalar fields used by the linear algebra layer.
//!
//! Exact fields (`Rational`, Gaussian rationals, [`CyclotomicElement`]) give
//! exact answers for ranks, kernels and signatures. The `f64` and
//! `Complex<f64>` impls exist so that closed-form matrices can be evaluated
//! numerically; they must not be fed to elimination routines that branch on
//! `is_zero`.
//!
//! [`CyclotomicElement`]: crate::qspace::CyclotomicElement

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type GaussianRational = Complex<Rational>;

/// Build an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Build `n/d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(q: &Rational) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or_else(|| {
        // Enormous numerators/denominators: divide in floating point after scaling.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&rat(n))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rational(q: &Rational) -> Self {
        rat_to_f64(q)
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        Complex::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Complex::new(One::one(), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Zero::zero())
    }
}

impl Field for Complex<f64> {
    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_rational(q: &Rational) -> Self {
        Complex::new(rat_to_f64(q), 0.0)
    }
}

/// A real field that can be ordered (rationals or doubles).
pub trait RealField: Field + PartialOrd {
    fn to_f64(&self) -> f64;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }
}

impl RealField for Rational {
    fn to_f64(&self) -> f64 {
        rat_to_f64(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
}

impl RealField for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Complex scalars with a distinguished real subfield: Gaussian rationals in
/// exact mode, `Complex<f64>` in numeric mode.
pub trait ComplexScalar: Field {
    type Real: RealField;

    fn new(re: Self::Real, im: Self::Real) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;

    fn conj(&self) -> Self {
        Self::new(self.re(), -self.im())
    }

    fn from_real(r: Self::Real) -> Self {
        Self::new(r, Self::Real::zero())
    }

    /// `|z|^2` in the real subfield.
    fn norm_sqr(&self) -> Self::Real {
        let (a, b) = (self.re(), self.im());
        a.clone() * a + b.clone() * b
    }

    /// Zero test used by validation code; exact scalars ignore `tol`.
    fn approx_zero(&self, tol: f64) -> bool;

    fn to_c64(&self) -> Complex<f64> {
        Complex::new(self.re().to_f64(), self.im().to_f64())
    }
}

impl ComplexScalar for GaussianRational {
    type Real = Rational;

    fn new(re: Rational, im: Rational) -> Self {
        Complex::new(re, im)
    }
    fn re(&self) -> Rational {
        self.re.clone()
    }
    fn im(&self) -> Rational {
        self.im.clone()
    }
    fn approx_zero(&self, _tol: f64) -> bool {
        Field::is_zero(self)
    }
}

impl ComplexScalar for Complex<f64> {
    type Real = f64;

    fn new(re: f64, im: f64) -> Self {
        Complex::new(re, im)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn im(&self) -> f64 {
        self.im
    }
    fn approx_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
}

/// Scale a rational vector to primitive integer coordinates with the first
/// nonzero entry positive. The zero vector is returned unchanged.
pub fn primitive_integer(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;

    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &scaled {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = scaled
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| if x.is_negative() { -BigInt::one() } else { BigInt::one() })
        .unwrap_or_else(BigInt::one);
    scaled
        .into_iter()
        .map(|x| Rational::from_integer(x / &g * &sign))
        .collect()
}
