//! Bounded-height search for rational isotropic lines and planes.

use super::{IsotropicDatum, IsotropicKind};
use crate::field::{primitive_integer, rat, Field};
use crate::qspace::{QuadraticSpace, Subspace};

/// Isotropic lines spanned by primitive integer vectors with all coordinates
/// in `[-bound, bound]` (first nonzero coordinate positive), followed by the
/// isotropic planes spanned by pairs of them. The result is never claimed to
/// be a complete list of orbit representatives.
pub fn enumerate_isotropic(space: &QuadraticSpace, bound: u32) -> Vec<IsotropicDatum> {
    let d = space.dim();
    let b = bound as i64;
    let mut lines: Vec<Vec<crate::field::Rational>> = Vec::new();
    let mut coords = vec![-b; d];
    if d == 0 || b == 0 {
        return Vec::new();
    }
    loop {
        let v: Vec<_> = coords.iter().map(|&x| rat(x)).collect();
        let first = coords.iter().find(|&&x| x != 0);
        if matches!(first, Some(&x) if x > 0)
            && primitive_integer(&v) == v
            && Field::is_zero(&space.norm(&v))
        {
            lines.push(v);
        }
        let mut i = 0;
        while i < d {
            if coords[i] < b {
                coords[i] += 1;
                break;
            }
            coords[i] = -b;
            i += 1;
        }
        if i == d {
            break;
        }
    }
    lines.sort();

    let mut out: Vec<IsotropicDatum> = lines
        .iter()
        .map(|v| IsotropicDatum {
            kind: IsotropicKind::Line,
            subspace: Subspace::span(d, vec![v.clone()]),
        })
        .collect();
    let mut planes: Vec<Subspace> = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if Field::is_zero(&space.pair(&lines[i], &lines[j])) {
                let p = Subspace::span(d, vec![lines[i].clone(), lines[j].clone()]);
                if !planes.contains(&p) {
                    planes.push(p);
                }
            }
        }
    }
    planes.sort();
    out.extend(planes.into_iter().map(|subspace| IsotropicDatum {
        kind: IsotropicKind::Plane,
        subspace,
    }));
    out
}
