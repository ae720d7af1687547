//! Strata of a ball-quotient arrangement for a `μ_4` action: no stratum has a
//! one-dimensional rational radical.

use pdt::field::{rat, Rational};
use pdt::linalg::Matrix;
use pdt::arrangement::ball_strata;
use pdt::qspace::{eigenspace_chi, ivec, CyclotomicElement, QuadraticSpace, Subspace};

fn main() -> pdt::Result<()> {
    let space = QuadraticSpace::diagonal(&[2, 2, 2, 2, 2, 2, -2, -2]);
    let mut rho = Matrix::<Rational>::zeros(8, 8);
    for b in 0..4 {
        rho[(2 * b, 2 * b + 1)] = rat(-1);
        rho[(2 * b + 1, 2 * b)] = rat(1);
    }
    let chi = eigenspace_chi(&space, &rho, 4)?;
    println!("H_chi: dim {}, hermitian signature ({}, {})", chi.dim(), chi.herm_signature.p, chi.herm_signature.q);

    let block = |b: usize| {
        let mut x = vec![0; 8];
        let mut y = vec![0; 8];
        x[2 * b] = 1;
        y[2 * b + 1] = 1;
        Subspace::span(8, vec![ivec(&x), ivec(&y)])
    };
    let members = [block(0), block(1)];
    let z = |a: i64, b: i64| CyclotomicElement::new(4, rat(a), rat(b));
    let line = vec![z(1, 0), z(0, -1), z(0, 0), z(0, 0), z(0, 0), z(0, 0), z(1, 0), z(0, -1)];

    let strata = ball_strata(&space, &chi, &members, &[line])?;
    for n in &strata.nodes {
        println!(
            "{:24} dim {} class {}",
            n.label,
            n.dim(),
            n.class.map_or("-", |c| c.name())
        );
    }
    println!("covers {:?}; Type3 nodes: {}", strata.covers, strata.type3_nodes());
    Ok(())
}
