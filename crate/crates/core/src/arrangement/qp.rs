//! Exact convex quadratic programs `min Σ h_j z_j^2` subject to `A z >= r`
//! with all `h_j > 0`, solved by enumerating active sets of independent rows
//! and checking the KKT conditions over the rationals.

use crate::field::{Field, RealField, Rational};
use crate::linalg::{solve, Matrix};

/// The unique minimizer, or `None` when the constraints are infeasible.
pub(crate) fn minimize(h: &[Rational], a: &[Vec<Rational>], r: &[Rational]) -> Option<Vec<Rational>> {
    let k = h.len();
    let feasible = |z: &[Rational]| {
        a.iter()
            .zip(r)
            .all(|(row, ri)| crate::linalg::dot(row, z) >= *ri)
    };
    if k == 0 {
        return feasible(&[]).then(Vec::new);
    }
    let m = a.len();
    let mut chosen: Vec<usize> = Vec::new();
    for size in 0..=k.min(m) {
        if let Some(z) = search(h, a, r, size, 0, &mut chosen, &feasible) {
            return Some(z);
        }
    }
    None
}

fn search(
    h: &[Rational],
    a: &[Vec<Rational>],
    r: &[Rational],
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    feasible: &dyn Fn(&[Rational]) -> bool,
) -> Option<Vec<Rational>> {
    if chosen.len() == size {
        return kkt_point(h, a, r, chosen).filter(|z| feasible(z));
    }
    for i in start..a.len() {
        chosen.push(i);
        let independent = Matrix::from_rows(chosen.iter().map(|&j| a[j].clone()).collect())
            .map(|m| m.rank() == chosen.len())
            .unwrap_or(false);
        if independent {
            if let Some(z) = search(h, a, r, size, i + 1, chosen, feasible) {
                chosen.pop();
                return Some(z);
            }
        }
        chosen.pop();
    }
    None
}

/// Stationary point with the rows in `active` held at equality, provided all
/// multipliers are nonnegative.
fn kkt_point(h: &[Rational], a: &[Vec<Rational>], r: &[Rational], active: &[usize]) -> Option<Vec<Rational>> {
    let k = h.len();
    let two = Rational::from_int(2);
    // z = (1/2) H^{-1} A_S^T lambda.
    let scaled: Vec<Vec<Rational>> = active
        .iter()
        .map(|&i| (0..k).map(|j| a[i][j].clone() / (two.clone() * h[j].clone())).collect())
        .collect();
    let s = active.len();
    let mut m = Matrix::zeros(s, s);
    for (p, &i) in active.iter().enumerate() {
        for q in 0..s {
            m[(p, q)] = crate::linalg::dot(&a[i], &scaled[q]);
        }
    }
    let rhs: Vec<Rational> = active.iter().map(|&i| r[i].clone()).collect();
    let lambda = if s == 0 { Vec::new() } else { solve(&m, &rhs)? };
    if lambda.iter().any(RealField::is_negative) {
        return None;
    }
    let mut z = vec![Rational::zero(); k];
    for (q, l) in lambda.iter().enumerate() {
        for j in 0..k {
            z[j] = z[j].clone() + l.clone() * scaled[q][j].clone();
        }
    }
    Some(z)
}
