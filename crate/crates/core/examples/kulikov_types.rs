//! Boundary pair types, K3 degeneration types from singularities, and
//! Kulikov central fibers.

use pdt::geomclass::{
    boundary_pair_type, canonical_kulikov_fibers, k3_degeneration_type, kulikov_classify, singularities_for,
    BoundaryPairDatum, SingularityLabel,
};

fn main() -> pdt::Result<()> {
    for w in 0..3 {
        let t = boundary_pair_type(&BoundaryPairDatum { weight_of_f: w, context: String::new() })?;
        println!("w(F) = {w} gives type {t}");
    }

    for list in [vec!["A1", "E6"], vec!["SimpleElliptic:2", "A3"], vec!["Cusp", "SimpleElliptic:1"], vec!["Other:x"]] {
        let sings = list.iter().map(|s| s.parse()).collect::<pdt::Result<Vec<SingularityLabel>>>()?;
        println!("{list:?} -> {}", k3_degeneration_type(&sings).name());
    }

    for f in canonical_kulikov_fibers() {
        let t = kulikov_classify(&f)?;
        let from_sings = k3_degeneration_type(&singularities_for(f.dual_complex));
        println!("{} fiber: type {t}, singularity side {}", f.dual_complex.name(), from_sings.name());
    }
    Ok(())
}
