//! Numerical integration of `dz' ∧ dz'' / (z' - z'')^2` over the real
//! two-dimensional tube `z' - z'' = ε e^{iθ}`, `z' + z'' = t ε e^{iθ}` with
//! `θ ∈ [0, 2π]` and `t ∈ [-1, 1]`, oriented by `dθ ∧ dt`.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest accepted number of quadrature points per direction.
pub const MIN_POINTS: usize = 16;

/// Integrand density with respect to `dθ dt` at `(θ, t)`.
pub fn tube_density(epsilon: f64, theta: f64, t: f64) -> Complex64 {
    let rot = Complex64::from_polar(epsilon / 2.0, theta);
    let i = Complex64::i();
    let z1 = rot * (t + 1.0);
    let z2 = rot * (t - 1.0);
    // z' and z'' depend on θ through e^{iθ} and linearly on t.
    let (d1_theta, d1_t) = (i * z1, rot);
    let (d2_theta, d2_t) = (i * z2, rot);
    let jacobian = d1_theta * d2_t - d1_t * d2_theta;
    jacobian / ((z1 - z2) * (z1 - z2))
}

/// Trapezoid rule in the periodic variable `θ` times Gauss-Legendre in `t`,
/// `points` nodes in each direction. The exact value is `2πi`.
pub fn tube_integral(epsilon: f64, points: usize) -> Result<Complex64> {
    if points < MIN_POINTS {
        return Err(Error::malformed(format!(
            "tube integral needs at least {MIN_POINTS} quadrature points, got {points}"
        )));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::malformed(format!("epsilon must be positive, got {epsilon}")));
    }
    let rule = GaussLegendre::new(NonZeroUsize::new(points).expect("points >= 16"));
    let h = 2.0 * PI / points as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..points {
        let theta = h * k as f64;
        for (t, w) in rule.iter() {
            sum += tube_density(epsilon, theta, *t) * (*w * h);
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_is_two_pi_i() {
        let v = tube_integral(0.5, 64).unwrap();
        assert!((v - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-8);
        assert!(v.re.abs() < 1e-8);
    }

    #[test]
    fn refuses_bad_input() {
        assert!(tube_integral(1.0, 8).is_err());
        assert!(tube_integral(0.0, 32).is_err());
    }
}
