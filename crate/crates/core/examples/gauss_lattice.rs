//! The Gauss lattice: `Z[i]` with the form `-2|z|^2` and `μ_4` acting by `i`.

use pdt::geomclass::gauss_lattice_report;
use pdt::linalg::Matrix;
use pdt::field::rat;
use pdt::qspace::{eigenspace_chi, QuadraticSpace};

fn main() -> pdt::Result<()> {
    let r = gauss_lattice_report();
    println!("signature ({}, {}, {})", r.signature.p, r.signature.q, r.signature.r);
    println!("action preserves the form: {}", r.preserves_form);
    println!("g^2 = -1: {}", r.g_squared_is_minus_one);
    println!("gamma.gamma = {}", r.self_intersection);
    println!("discriminant group of order {} with invariants {:?}", r.discriminant.order, r.discriminant.invariants);
    for e in &r.discriminant.elements {
        println!("  class {:?}: q = {} (mod 2: {})", e.coords, e.value, e.q_mod2);
    }
    println!("proper even overlattice exists: {}", r.has_even_overlattice);

    let space = QuadraticSpace::diagonal(&[-2, -2]);
    let rho = Matrix::from_rows(vec![vec![rat(0), rat(-1)], vec![rat(1), rat(0)]]).expect("2x2");
    let chi = eigenspace_chi(&space, &rho, 4)?;
    println!(
        "H_chi has dimension {} and hermitian signature ({}, {})",
        chi.dim(),
        chi.herm_signature.p,
        chi.herm_signature.q
    );
    Ok(())
}
