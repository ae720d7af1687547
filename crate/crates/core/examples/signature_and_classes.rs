//! Signatures, radicals and the three classes of positive semidefinite
//! subspaces in a space of signature (n, 2).

use pdt::qspace::{ivec, QuadraticSpace, Subspace};

fn main() -> pdt::Result<()> {
    let u = QuadraticSpace::hyperbolic_plane();
    // Basis e1 f1 e2 f2 g with e_i.f_i = 1 and g.g = 1.
    let space = u.direct_sum(&u).direct_sum(&QuadraticSpace::diagonal(&[1]));
    let s = space.signature();
    println!("U + U + <1> has signature ({}, {}, {})", s.p, s.q, s.r);

    let cases = [
        ("positive line", vec![ivec(&[0, 0, 0, 0, 1])]),
        ("isotropic plane", vec![ivec(&[1, 0, 0, 0, 0]), ivec(&[0, 0, 1, 0, 0])]),
        ("isotropic + positive", vec![ivec(&[1, 0, 0, 0, 0]), ivec(&[0, 0, 0, 0, 1])]),
    ];
    for (name, basis) in cases {
        let v = Subspace::span(5, basis);
        let c = space.classify_subspace(&v)?;
        println!(
            "{name:22} class {} radical dim {} perp signature ({}, {}, {}) side condition {}",
            c.class.name(),
            c.radical.dim(),
            c.complement_signature.p,
            c.complement_signature.q,
            c.complement_signature.r,
            c.side_condition
        );
    }

    // An indefinite subspace with trivial radical is refused.
    let hyperbolic = Subspace::span(5, vec![ivec(&[1, 0, 0, 0, 0]), ivec(&[0, 1, 0, 0, 0])]);
    match space.classify_subspace(&hyperbolic) {
        Ok(c) => println!("unexpected class {}", c.class.name()),
        Err(e) => println!("span(e1, f1): {e}"),
    }

    let a = Subspace::span(5, vec![ivec(&[1, 0, 0, 0, 0]), ivec(&[0, 0, 1, 0, 0])]);
    let b = Subspace::span(5, vec![ivec(&[1, 0, 0, 0, 0]), ivec(&[0, 0, 0, 0, 1])]);
    println!("dim(A + B) = {}, dim(A n B) = {}", a.sum(&b)?.dim(), a.intersect(&b)?.dim());
    println!("dim A^perp = {}", space.orthogonal_complement(&a)?.dim());
    Ok(())
}
