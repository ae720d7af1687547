//! Logarithms of unipotent monodromy, the three degeneration cases, and their
//! weight filtrations checked against the Jacobson-Morozov construction.

use std::sync::Arc;

use pdt::field::{rat, GaussianRational};
use pdt::monodromy::{analyze, exp_nilpotent, jm_weight, nilpotent_from_pair, MonodromyOperator};
use pdt::qspace::{ivec, QuadraticSpace};

fn main() -> pdt::Result<()> {
    let u = QuadraticSpace::hyperbolic_plane();
    // e1 f1 e2 f2 g1 g2 g3 with g1.g1 = g2.g2 = 1, g3.g3 = -1.
    let space = Arc::new(u.direct_sum(&u).direct_sum(&QuadraticSpace::diagonal(&[1, 1, -1])));
    let e = ivec(&[1, 0, 0, 0, 0, 0, 0]);
    let pairs = [
        ("trivial", ivec(&[0, 0, 0, 0, 0, 0, 0])),
        ("isotropic plane", ivec(&[0, 0, 1, 0, 0, 0, 0])),
        ("negative u", ivec(&[0, 0, 0, 0, 0, 0, 1])),
    ];
    for (name, u) in pairs {
        let n = if u.iter().all(|x| *x == rat(0)) {
            pdt::linalg::Matrix::zeros(7, 7)
        } else {
            nilpotent_from_pair(&space, &e, &u)?
        };
        let t = MonodromyOperator::new(space.clone(), exp_nilpotent(&n))?;
        let nd = analyze(&t)?;
        println!("{name}: case {} (u.u = {}, polarized {:?})", nd.case.name(), nd.uu, nd.polarized_sign());
        for (k, w) in nd.weight_filtration()?.steps {
            assert_eq!(w, jm_weight(&nd.n, k));
            println!("  W_{k:<2} dim {}", w.dim());
        }
        let w = GaussianRational::new(rat(1), rat(2));
        assert_eq!(nd.one_param(&w), nd.exp_series(&w));
    }
    println!("closed-form exp(wN) agrees with the exponential series at w = 1 + 2i");
    Ok(())
}
