use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::field::{rat, ratio, Field, Rational};

/// `a + b*zeta_l` in `Q(zeta_l)` for `l` in {1, 2, 3, 4, 6}.
///
/// These are exactly the `l` for which `Q(zeta_l)` has degree at most 2, so
/// `zeta^2 = t*zeta - 1` with `t = zeta + conj(zeta)` in {-1, 0, 1}. Elements
/// with `l <= 2` are rational and combine with elements of any level.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    l: u32,
    a: Rational,
    b: Rational,
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*z{}", self.a, self.b, self.l)
        }
    }
}

impl CyclotomicElement {
    pub fn is_supported(l: u32) -> bool {
        matches!(l, 1 | 2 | 3 | 4 | 6)
    }

    /// `a + b*zeta_l`. Panics for unsupported `l`, or `b != 0` with `l <= 2`.
    pub fn new(l: u32, a: Rational, b: Rational) -> Self {
        assert!(Self::is_supported(l), "unsupported cyclotomic level {l}");
        assert!(l > 2 || b.is_zero(), "zeta_{l} is rational");
        let l = if b.is_zero() { 1 } else { l };
        CyclotomicElement { l, a, b }
    }

    pub fn rational(a: Rational) -> Self {
        CyclotomicElement {
            l: 1,
            a,
            b: rat(0),
        }
    }

    /// The primitive root `zeta_l` itself.
    pub fn zeta(l: u32) -> Self {
        match l {
            1 => Self::rational(rat(1)),
            2 => Self::rational(rat(-1)),
            _ => Self::new(l, rat(0), rat(1)),
        }
    }

    pub fn level(&self) -> u32 {
        self.l
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `zeta + conj(zeta)`.
    fn trace_of_zeta(l: u32) -> Rational {
        match l {
            3 => rat(-1),
            4 => rat(0),
            6 => rat(1),
            _ => rat(2),
        }
    }

    fn common_level(&self, other: &Self) -> u32 {
        match (self.l, other.l) {
            (1, m) | (m, 1) => m,
            (m, n) if m == n => m,
            (m, n) => panic!("mixing Q(zeta_{m}) and Q(zeta_{n})"),
        }
    }

    fn make(l: u32, a: Rational, b: Rational) -> Self {
        let l = if b.is_zero() { 1 } else { l };
        CyclotomicElement { l, a, b }
    }

    /// Complex conjugation, `zeta -> zeta^{-1} = t - zeta`.
    pub fn conj(&self) -> Self {
        if self.b.is_zero() {
            return self.clone();
        }
        let t = Self::trace_of_zeta(self.l);
        Self::make(
            self.l,
            self.a.clone() + self.b.clone() * t,
            -self.b.clone(),
        )
    }

    /// Real part, `a + b*cos(2 pi / l)`.
    pub fn re(&self) -> Rational {
        if self.b.is_zero() {
            return self.a.clone();
        }
        self.a.clone() + self.b.clone() * Self::trace_of_zeta(self.l) * ratio(1, 2)
    }

    /// Field norm `x * conj(x)`, a nonnegative rational.
    pub fn norm(&self) -> Rational {
        let t = Self::trace_of_zeta(self.l);
        if self.b.is_zero() {
            return self.a.clone() * self.a.clone();
        }
        self.a.clone() * self.a.clone()
            + self.a.clone() * self.b.clone() * t
            + self.b.clone() * self.b.clone()
    }

    /// Numerical value as a complex number.
    pub fn to_c64(&self) -> num_complex::Complex64 {
        let a = crate::field::rat_to_f64(&self.a);
        let b = crate::field::rat_to_f64(&self.b);
        let theta = 2.0 * std::f64::consts::PI / f64::from(self.l);
        num_complex::Complex64::new(a + b * theta.cos(), b * theta.sin())
    }
}

impl Add for CyclotomicElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let l = self.common_level(&o);
        Self::make(l, self.a + o.a, self.b + o.b)
    }
}

impl Sub for CyclotomicElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let l = self.common_level(&o);
        Self::make(l, self.a - o.a, self.b - o.b)
    }
}

impl Neg for CyclotomicElement {
    type Output = Self;
    fn neg(self) -> Self {
        CyclotomicElement {
            l: self.l,
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Mul for CyclotomicElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let l = self.common_level(&o);
        // zeta^2 = t*zeta - 1
        let t = Self::trace_of_zeta(l);
        let bd = self.b.clone() * o.b.clone();
        let a = self.a.clone() * o.a.clone() - bd.clone();
        let b = self.a * o.b + self.b * o.a + bd * t;
        Self::make(l, a, b)
    }
}

impl Div for CyclotomicElement {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in Q(zeta)");
        let num = self * o.conj();
        Self::make(num.l, num.a / n.clone(), num.b / n)
    }
}

impl Field for CyclotomicElement {
    fn zero() -> Self {
        Self::rational(rat(0))
    }
    fn one() -> Self {
        Self::rational(rat(1))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_has_order_l() {
        for l in [3u32, 4, 6] {
            let z = CyclotomicElement::zeta(l);
            let mut p = CyclotomicElement::one();
            for k in 1..=l {
                p = p * z.clone();
                assert_eq!(p == CyclotomicElement::one(), k == l, "l={l} k={k}");
            }
        }
    }

    #[test]
    fn conjugate_is_inverse_of_zeta() {
        for l in [3u32, 4, 6] {
            let z = CyclotomicElement::zeta(l);
            assert_eq!(z.clone() * z.conj(), CyclotomicElement::one());
            assert_eq!(z.norm(), rat(1));
        }
    }

    #[test]
    fn division_and_numeric_value() {
        let x = CyclotomicElement::new(3, rat(2), rat(-5));
        let y = CyclotomicElement::new(3, ratio(1, 3), rat(7));
        let q = x.clone() / y.clone();
        assert_eq!(q * y.clone(), x);
        let prod = (x.clone() * y.clone()).to_c64();
        let expect = x.to_c64() * y.to_c64();
        assert!((prod - expect).norm() < 1e-12);
        assert!((x.re() - ratio(9, 2)).is_zero());
    }
}
