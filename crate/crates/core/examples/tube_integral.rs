//! The residue integral over the real torus in the tube: the value is `2 pi i`
//! for every radius.

use pdt::geomclass::tube_integral;

fn main() -> pdt::Result<()> {
    for eps in [0.5, 1.0, 2.0] {
        for points in [16, 64, 128] {
            let z = tube_integral(eps, points)?;
            let err = (z - num_complex::Complex64::new(0.0, 2.0 * std::f64::consts::PI)).norm();
            println!("eps {eps:4} points {points:4}: {:.12} + {:.12}i (error {err:.1e})", z.re, z.im);
        }
    }
    Ok(())
}
