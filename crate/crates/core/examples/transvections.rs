//! The transvections `psi_tau` and `psi_{e,f}`: exact form preservation, the
//! Hodge norm identities, and the translation action on tube coordinates.

use pdt::field::{rat, ratio, GaussianRational};
use pdt::period::{
    default_complement, gvec, hermitian, psi_ef, psi_ef_norm_rhs, psi_tau, psi_tau_norm_rhs, tube_coords,
    ComplexVector,
};
use pdt::qspace::{ivec, QuadraticSpace};

fn main() -> pdt::Result<()> {
    let u = QuadraticSpace::hyperbolic_plane();
    let space = u.direct_sum(&u).direct_sum(&QuadraticSpace::diagonal(&[2]));
    let alpha = gvec(&[(3, 1), (-2, 5), (1, -1), (0, 2), (4, 3)]);

    let (e0, e1) = (ivec(&[1, 0, 0, 0, 0]), ivec(&[0, 0, 1, 0, 0]));
    let tau = GaussianRational::new(ratio(2, 3), rat(1));
    let m = psi_tau(&space, &e0, &e1, &tau)?;
    let image = m.mul_vec(&alpha);
    println!(
        "psi_tau: a.conj(a) = {}, identity rhs = {}",
        hermitian(&space, &image, &image).re,
        psi_tau_norm_rhs(&space, &alpha, &e0, &e1, &tau)
    );

    let e = ivec(&[1, 0, 0, 0, 0]);
    let f = gvec(&[(7, -2), (0, 0), (1, 3), (-2, 1), (1, 1)]);
    let m = psi_ef(&space, &e, &f, 0.0)?;
    let image = m.mul_vec(&alpha);
    println!(
        "psi_ef: a.conj(a) = {}, identity rhs = {}",
        hermitian(&space, &image, &image).re,
        psi_ef_norm_rhs(&space, &alpha, &e, &f)
    );

    let comp = default_complement(&space, &e)?;
    let before = tube_coords(&space, &ComplexVector::Exact(alpha), &e, &comp, 0.0)?;
    let after = tube_coords(&space, &ComplexVector::Exact(image), &e, &comp, 0.0)?;
    let shift: Vec<String> = after
        .exact
        .unwrap()
        .iter()
        .zip(before.exact.unwrap())
        .map(|(a, b)| (a - b).to_string())
        .collect();
    // Im f = (-2, 0, 3, 1, 1) is (3, 1, 1) on the complement (e2, f2, g) modulo e.
    println!("tube coordinates shift by {shift:?}, the coordinates of Im f");
    Ok(())
}
