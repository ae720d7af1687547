//! Untwisting a sampled period map and extrapolating its limit line, then the
//! orthogonality of the boundary line to the isotropic subspace.

use std::sync::Arc;

use num_complex::Complex64;
use pdt::monodromy::{classify_nilpotent, exp_nilpotent, nilpotent_from_pair, MonodromyOperator};
use pdt::period::{
    boundary_line, check_limit_orthogonality, functional_from_vector, hodge_norm, limit_line, limit_mhs, untwist,
    LimitOptions, PeriodSampleSet,
};
use pdt::qspace::{ivec, QuadraticSpace};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> pdt::Result<()> {
    let u = QuadraticSpace::hyperbolic_plane();
    let space = Arc::new(u.direct_sum(&u).direct_sum(&QuadraticSpace::diagonal(&[1, 1])));
    let n = nilpotent_from_pair(&space, &ivec(&[1, 0, 0, 0, 0, 0]), &ivec(&[0, 0, 1, 0, 0, 0]))?;
    let nd = classify_nilpotent(space.clone(), n.clone())?;
    let t = MonodromyOperator::new(space.clone(), exp_nilpotent(&n))?;

    // a(w) = exp(wN)(a0 + s b) with s = exp(2 pi i w).
    let a0 = [c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0)];
    let b = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.1, 0.0), c(0.0, 0.1)];
    let ws: Vec<Complex64> = (0..10).map(|k| c(0.05 * k as f64, 0.5 + 0.2 * k as f64)).collect();
    let ps = PeriodSampleSet::synthetic(t, &nd, &a0, &b, &ws);

    for p in untwist(&ps, &nd, 1e-9)?.iter().take(3) {
        println!("|s| = {:.3e}, phi[4] = {:.3e}", p.s.norm(), p.phi[4]);
    }
    let norms: Vec<f64> = ps.samples.iter().map(|s| hodge_norm(&space, &s.alpha)).collect();
    println!("Hodge norms grow: {:.2} .. {:.2}", norms[0], norms[norms.len() - 1]);

    let line = limit_line(&ps, &nd, &LimitOptions::default())?;
    let shown: Vec<String> = line.f_lim.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
    println!("F_lim = [{}] (residual {:.1e})", shown.join(", "), line.residual);
    let bl = boundary_line(&line.f_lim, &nd, 1e-12);
    let report = check_limit_orthogonality(&space, &bl, &nd.j, 1e-8)?;
    println!("boundary line orthogonal to J: {} (max ratio {:.1e})", report.passed, report.max_ratio);

    let mhs = limit_mhs(&space, &nd.j, &functional_from_vector(&space, &nd.j, &line.f_lim), 1e-9)?;
    for piece in &mhs.pieces {
        println!("  {} has dim {} and weight {}", piece.name, piece.dim, piece.weight);
    }
    Ok(())
}
