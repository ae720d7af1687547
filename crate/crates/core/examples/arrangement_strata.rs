//! Cone decomposition of `J^perp / J` and the strata poset of an arrangement,
//! printed as a DOT graph.

use std::sync::Arc;

use pdt::arrangement::{
    cone_decomposition, enumerate_isotropic, strata_poset, Arrangement, ConeOptions, IsotropicDatum, PosetView,
};
use pdt::qspace::{ivec, QuadraticSpace};

fn main() -> pdt::Result<()> {
    let u = QuadraticSpace::hyperbolic_plane();
    // e1 f1 e2 f2 g with g.g = 2; one hyperplane g^perp.
    let space = Arc::new(u.direct_sum(&u).direct_sum(&QuadraticSpace::diagonal(&[2])));
    let arr = Arrangement::from_normals(space.clone(), &[ivec(&[0, 0, 0, 0, 1])])?;
    println!("K1 = {:?}", arr.build_k1().iter().map(|s| s.dim()).collect::<Vec<_>>());

    let line = IsotropicDatum::line(&space, ivec(&[1, 0, 0, 0, 0]))?;
    let plane = IsotropicDatum::plane(&space, ivec(&[1, 0, 0, 0, 0]), ivec(&[0, 0, 1, 0, 0]))?;
    let dec = cone_decomposition(&arr, &line, &ConeOptions::default())?;
    for c in &dec.cells {
        println!("cell {} of dim {}, K_sigma dim {}", c.sign_string(), c.dim, c.k_sigma.dim());
    }

    for view in [PosetView::QuotientByK, PosetView::CellsWithFaces] {
        let p = strata_poset(&arr, &[line.clone(), plane.clone()], view, &ConeOptions::default())?;
        println!("{}: {} nodes, covers {:?}", view.name(), p.len(), p.covers);
        if view == PosetView::QuotientByK {
            print!("{}", p.to_dot());
        }
    }

    let found = enumerate_isotropic(&space, 1);
    println!("{} isotropic lines and planes with entries in [-1, 1]", found.len());
    Ok(())
}
