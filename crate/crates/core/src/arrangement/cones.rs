//! Decomposition of the cone `C_J` attached to an isotropic line `J = <e>` by
//! the members of the arrangement that contain `J`.
//!
//! `J^perp / J` is modelled by the complement `C = <e, f>^perp` where
//! `f . e = 1`; it carries a Lorentzian form of signature `(n-1, 1)` and `C_J`
//! is the component of `{y : y.y < 0}` containing a witness `w`. Each member
//! `K_i ⊇ J` descends to a linear functional `a_i` on `C`. A cell is a sign
//! vector `σ` over those functionals whose realization
//! `{y ∈ C_J : sign(a_i . y) = σ_i}` is nonempty. Nonemptiness is decided
//! exactly: after diagonalizing the form on `L = {a_i . y = 0 : σ_i = 0}`
//! the question reduces to two strictly convex quadratic programs over `Q`.
//! Seeded random sampling runs first and supplies witnesses for the chambers
//! it hits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{qp, Arrangement, IsotropicDatum, IsotropicKind};
use crate::error::{Error, Result};
use crate::field::{primitive_integer, rat, Field, Rational, RealField};
use crate::linalg::{dot, kernel, Matrix};
use crate::qspace::{diagonalize, signature_of, Signature, Subspace};

/// Largest number of members through `J` handled by the exhaustive search.
pub const MAX_RELEVANT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn as_char(&self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    fn of(x: &Rational) -> Sign {
        if x.is_positive() {
            Sign::Plus
        } else if x.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    fn factor(&self) -> Rational {
        match self {
            Sign::Plus => rat(1),
            Sign::Minus => rat(-1),
            Sign::Zero => rat(0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConeOptions {
    pub seed: u64,
    /// Random lattice points tried before the exact search.
    pub samples: usize,
    /// Interior witness fixing the component of the cone: a vector of
    /// `J^perp` (ambient coordinates) with negative norm.
    pub witness: Option<Vec<Rational>>,
}

impl Default for ConeOptions {
    fn default() -> Self {
        ConeOptions {
            seed: 0,
            samples: 2000,
            witness: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeCell {
    /// Sign over the relevant members, in the order of `relevant`.
    pub sign: Vec<Sign>,
    /// Dimension of the cell as a cone in `C`.
    pub dim: usize,
    /// An interior point in coordinates of the complement basis.
    pub witness: Vec<Rational>,
    /// The same point in ambient coordinates.
    pub point: Vec<Rational>,
    /// `K_σ = J^perp ∩ (members vanishing on the cell)`.
    pub k_sigma: Subspace,
    pub from_sampling: bool,
}

impl ConeCell {
    pub fn sign_string(&self) -> String {
        self.sign.iter().map(Sign::as_char).collect()
    }

    /// `self` lies in the closure of `other`.
    pub fn is_face_of(&self, other: &ConeCell) -> bool {
        self.sign.len() == other.sign.len()
            && self
                .sign
                .iter()
                .zip(&other.sign)
                .all(|(a, b)| *a == Sign::Zero || a == b)
    }
}

impl fmt::Display for ConeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] dim {}", self.sign_string(), self.dim)
    }
}

#[derive(Clone, Debug)]
pub struct ConeDecomposition {
    /// Primitive generator of `J`.
    pub line: Vec<Rational>,
    pub f: Vec<Rational>,
    /// Basis `c_1..c_n` of the complement `C`.
    pub complement: Vec<Vec<Rational>>,
    /// Gram matrix of `C`.
    pub gram: Matrix<Rational>,
    pub complement_signature: Signature,
    /// Witness direction in complement coordinates.
    pub witness: Vec<Rational>,
    /// Indices of the members containing `J`.
    pub relevant: Vec<usize>,
    /// Descended functionals `a_i`, as coefficient vectors on `C`.
    pub functionals: Vec<Vec<Rational>>,
    /// Top-dimensional cells.
    pub chambers: Vec<ConeCell>,
    /// All cells, faces included, by increasing dimension.
    pub cells: Vec<ConeCell>,
    pub sampled_chambers: usize,
}

impl ConeDecomposition {
    pub fn ambient_dim(&self) -> usize {
        self.line.len()
    }

    /// Lift complement coordinates to the ambient space.
    pub fn lift(&self, y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient_dim()];
        for (c, yj) in self.complement.iter().zip(y) {
            for (o, ci) in out.iter_mut().zip(c) {
                *o = o.clone() + yj.clone() * ci.clone();
            }
        }
        out
    }

    fn norm(&self, y: &[Rational]) -> Rational {
        dot(y, &self.gram.mul_vec(y))
    }

    fn pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        dot(x, &self.gram.mul_vec(y))
    }

    /// Whether `y` (complement coordinates) lies in the open cone `C_J`.
    pub fn in_cone(&self, y: &[Rational]) -> bool {
        self.norm(y).is_negative() && self.pairing(y, &self.witness).is_negative()
    }

    /// Sign of `y` against every relevant functional.
    pub fn sign_of(&self, y: &[Rational]) -> Vec<Sign> {
        self.functionals.iter().map(|a| Sign::of(&dot(a, y))).collect()
    }

    /// Exact realization test: an interior point of the cell with sign `sign`,
    /// or `None` when the cell is empty.
    pub fn realize(&self, sign: &[Sign]) -> Option<Vec<Rational>> {
        let n = self.gram.nrows();
        let zero_rows: Vec<Vec<Rational>> = sign
            .iter()
            .zip(&self.functionals)
            .filter(|(s, _)| **s == Sign::Zero)
            .map(|(_, a)| a.clone())
            .collect();
        let l_basis = kernel(&zero_rows, n);
        let k = l_basis.len();
        if k == 0 {
            return None;
        }
        let b = Matrix::from_cols(&l_basis, n);
        let ql = b.transpose().mul(&self.gram).mul(&b);
        let (d, s) = diagonalize(&ql);
        let m = d.iter().position(RealField::is_negative)?;
        let mut p = b.mul(&s);
        let v0 = p.col(m);
        if self.pairing(&v0, &self.witness).is_positive() {
            for i in 0..n {
                p[(i, m)] = -p[(i, m)].clone();
            }
        }
        let pt = p.transpose();
        let rows: Vec<Vec<Rational>> = sign
            .iter()
            .zip(&self.functionals)
            .filter(|(s, _)| **s != Sign::Zero)
            .map(|(s, a)| pt.mul_vec(a).iter().map(|x| x.clone() * s.factor()).collect())
            .collect();

        // The open polyhedral cone {b_i . x > 0, x_m > 0} must be nonempty.
        let mut open_rows = rows.clone();
        let mut unit = vec![Rational::zero(); k];
        unit[m] = rat(1);
        open_rows.push(unit);
        let ones = vec![rat(1); open_rows.len()];
        let interior = qp::minimize(&vec![rat(1); k], &open_rows, &ones)?;

        // The slice x_m = 1 of its closure must meet the ellipsoid.
        let others: Vec<usize> = (0..k).filter(|&j| j != m).collect();
        let h: Vec<Rational> = others.iter().map(|&j| d[j].clone()).collect();
        let slice_rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| others.iter().map(|&j| r[j].clone()).collect())
            .collect();
        let slice_rhs: Vec<Rational> = rows.iter().map(|r| -r[m].clone()).collect();
        let xs = qp::minimize(&h, &slice_rows, &slice_rhs)?;
        let value = h
            .iter()
            .zip(&xs)
            .fold(Rational::zero(), |acc, (hj, xj)| acc + hj.clone() * xj.clone() * xj.clone());
        if value >= -d[m].clone() {
            return None;
        }
        let mut base = vec![Rational::zero(); k];
        for (idx, &j) in others.iter().enumerate() {
            base[j] = xs[idx].clone();
        }
        base[m] = rat(1);

        // Push the closest point slightly into the open polyhedral cone.
        let mut t = rat(1);
        for _ in 0..256 {
            let x: Vec<Rational> = base
                .iter()
                .zip(&interior)
                .map(|(bj, ij)| bj.clone() + t.clone() * ij.clone())
                .collect();
            let y = p.mul_vec(&x);
            if self.in_cone(&y) && self.sign_of(&y) == sign {
                return Some(positive_primitive(&y));
            }
            t /= rat(2);
        }
        None
    }
}

/// Primitive integral vector on the same ray.
fn positive_primitive(y: &[Rational]) -> Vec<Rational> {
    let p = primitive_integer(y);
    let first_negative = y.iter().find(|x| !Field::is_zero(*x)).is_some_and(RealField::is_negative);
    if first_negative {
        p.into_iter().map(|x| -x).collect()
    } else {
        p
    }
}

/// Cells of `Σ_J` for the isotropic line `line`.
pub fn cone_decomposition(arr: &Arrangement, line: &IsotropicDatum, opts: &ConeOptions) -> Result<ConeDecomposition> {
    if line.kind != IsotropicKind::Line {
        return Err(Error::malformed("cone decomposition needs an isotropic line"));
    }
    let space = arr.space();
    space.check_subspace(&line.subspace)?;
    let d = space.dim();
    let e = primitive_integer(&line.subspace.basis()[0]);
    let ge = space.gram_vec(&e);
    let i = ge.iter().position(|x| !Field::is_zero(x)).ok_or_else(|| {
        Error::malformed("isotropic line lies in the radical")
    })?;
    let mut f = vec![Rational::zero(); d];
    f[i] = rat(1) / ge[i].clone();
    let gf = space.gram_vec(&f);
    let complement = kernel(&[ge.clone(), gf], d);
    let n = complement.len();
    let mut gram = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            gram[(a, b)] = space.pair(&complement[a], &complement[b]);
        }
    }
    let complement_signature = signature_of(&gram)?;
    if complement_signature != Signature::new(n - 1, 1, 0) {
        return Err(Error::Classification(format!(
            "J^perp/J has signature {complement_signature}, expected ({},1,0)",
            n - 1
        )));
    }

    let relevant: Vec<usize> = arr
        .normals()
        .iter()
        .enumerate()
        .filter(|(_, nv)| Field::is_zero(&space.pair(nv, &e)))
        .map(|(k, _)| k)
        .collect();
    if relevant.len() > MAX_RELEVANT {
        return Err(Error::Unsupported(format!(
            "{} members contain J; at most {MAX_RELEVANT} are supported",
            relevant.len()
        )));
    }
    let functionals: Vec<Vec<Rational>> = relevant
        .iter()
        .map(|&k| complement.iter().map(|c| space.pair(&arr.normals()[k], c)).collect())
        .collect();

    let gram_inv = gram.inverse().expect("nondegenerate complement");
    let witness = match &opts.witness {
        Some(w) => {
            space.check_vector(w)?;
            if !Field::is_zero(&space.pair(w, &e)) {
                return Err(Error::malformed("cone witness is not orthogonal to J"));
            }
            let pairings: Vec<Rational> = complement.iter().map(|c| space.pair(c, w)).collect();
            gram_inv.mul_vec(&pairings)
        }
        None => {
            let (dg, s) = diagonalize(&gram);
            let m = dg.iter().position(RealField::is_negative).expect("Lorentzian");
            positive_primitive(&s.col(m))
        }
    };

    let mut dec = ConeDecomposition {
        line: e,
        f,
        complement,
        gram,
        complement_signature,
        witness,
        relevant,
        functionals,
        chambers: Vec::new(),
        cells: Vec::new(),
        sampled_chambers: 0,
    };
    if !dec.norm(&dec.witness).is_negative() {
        return Err(Error::malformed("cone witness must have negative norm"));
    }

    // Seeded sampling.
    let mut found: BTreeMap<Vec<Sign>, (Vec<Rational>, bool)> = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let radius = 8i64;
    for _ in 0..opts.samples {
        let y: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-radius..=radius))).collect();
        if !dec.in_cone(&y) {
            continue;
        }
        let s = dec.sign_of(&y);
        if s.contains(&Sign::Zero) {
            continue;
        }
        found.entry(s).or_insert_with(|| (positive_primitive(&y), true));
    }
    dec.sampled_chambers = found.len();

    // Exhaustive exact search over all strict sign vectors.
    let m = dec.relevant.len();
    for mask in 0u32..(1u32 << m) {
        let s: Vec<Sign> = (0..m)
            .map(|b| if mask >> b & 1 == 0 { Sign::Plus } else { Sign::Minus })
            .collect();
        if found.contains_key(&s) {
            continue;
        }
        if let Some(y) = dec.realize(&s) {
            found.insert(s, (y, false));
        }
    }
    let chamber_signs: Vec<Vec<Sign>> = found.keys().cloned().collect();

    // Faces: zero out subsets of chamber signs.
    let mut tried: BTreeSet<Vec<Sign>> = chamber_signs.iter().cloned().collect();
    for cs in &chamber_signs {
        for mask in 1u32..(1u32 << m) {
            let s: Vec<Sign> = cs
                .iter()
                .enumerate()
                .map(|(b, x)| if mask >> b & 1 == 1 { Sign::Zero } else { *x })
                .collect();
            if !tried.insert(s.clone()) {
                continue;
            }
            if let Some(y) = dec.realize(&s) {
                found.insert(s, (y, false));
            }
        }
    }

    let j_perp = space.perp_unchecked(&line.subspace);
    let mut cells: Vec<ConeCell> = Vec::new();
    for (sign, (witness, from_sampling)) in found {
        let mut k_sigma = j_perp.clone();
        for (s, &k) in sign.iter().zip(&dec.relevant) {
            if *s == Sign::Zero {
                k_sigma = k_sigma.intersect(&arr.hyperplanes()[k])?;
            }
        }
        let point = dec.lift(&witness);
        cells.push(ConeCell {
            dim: k_sigma.dim() - 1,
            sign,
            witness,
            point,
            k_sigma,
            from_sampling,
        });
    }
    cells.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.sign.cmp(&b.sign)));
    dec.chambers = cells.iter().filter(|c| c.dim == n).cloned().collect();
    dec.cells = cells;
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qspace::{ivec, QuadraticSpace};
    use std::sync::Arc;

    fn space(extra: &[i64]) -> Arc<QuadraticSpace> {
        let u = QuadraticSpace::hyperbolic_plane();
        Arc::new(u.direct_sum(&u).direct_sum(&QuadraticSpace::diagonal(extra)))
    }

    #[test]
    fn one_wall() {
        let s = space(&[2]);
        let arr = Arrangement::from_normals(s.clone(), &[ivec(&[0, 0, 0, 0, 1])]).unwrap();
        let j = IsotropicDatum::line(&s, ivec(&[1, 0, 0, 0, 0])).unwrap();
        let dec = cone_decomposition(&arr, &j, &ConeOptions::default()).unwrap();
        assert_eq!(dec.relevant, vec![0]);
        assert_eq!(dec.chambers.len(), 2);
        assert_eq!(dec.cells.len(), 3);
        let wall = &dec.cells[0];
        assert_eq!(wall.sign, vec![Sign::Zero]);
        assert_eq!(wall.k_sigma, Subspace::from_int_basis(5, &[&[1, 0, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0]]).unwrap());
        for c in &dec.cells {
            assert!(dec.in_cone(&c.witness));
            assert_eq!(dec.sign_of(&c.witness), c.sign);
            assert!(wall.is_face_of(c));
            // K_σ = J + span(L).
            let l = Subspace::span(5, vec![c.point.clone(), dec.line.clone()]);
            assert!(l.is_subspace_of(&c.k_sigma));
        }
    }

    #[test]
    fn empty_arrangement_gives_one_chamber() {
        let s = space(&[2]);
        let arr = Arrangement::new(s.clone(), vec![]).unwrap();
        let j = IsotropicDatum::line(&s, ivec(&[0, 0, 1, 0, 0])).unwrap();
        let dec = cone_decomposition(&arr, &j, &ConeOptions::default()).unwrap();
        assert_eq!(dec.cells.len(), 1);
        assert_eq!(dec.cells[0].k_sigma, s.perp_unchecked(&j.subspace));
    }

    #[test]
    fn wall_missing_the_cone() {
        // C = U + <2> with form 2 y1 y2 + 2 y3^2; walls y1 + y2 and y1 + y2 + 2 y3.
        let s = space(&[2]);
        let arr = Arrangement::from_normals(s.clone(), &[ivec(&[0, 0, 1, 1, 0]), ivec(&[0, 0, 1, 1, 1])]).unwrap();
        let j = IsotropicDatum::line(&s, ivec(&[1, 0, 0, 0, 0])).unwrap();
        let dec = cone_decomposition(&arr, &j, &ConeOptions::default()).unwrap();
        for c in &dec.cells {
            assert!(dec.in_cone(&c.witness));
            assert_eq!(dec.sign_of(&c.witness), c.sign);
        }
        // Brute force over a lattice box agrees on the chambers.
        let mut seen = BTreeSet::new();
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                for c in -12i64..=12 {
                    let y = ivec(&[a, b, c]);
                    if dec.in_cone(&y) {
                        let sg = dec.sign_of(&y);
                        if !sg.contains(&Sign::Zero) {
                            seen.insert(sg);
                        }
                    }
                }
            }
        }
        let exact: BTreeSet<Vec<Sign>> = dec.chambers.iter().map(|c| c.sign.clone()).collect();
        assert_eq!(seen, exact);
    }

    #[test]
    fn seed_changes_nothing_structural() {
        let s = space(&[2, 2]);
        let arr = Arrangement::from_normals(
            s.clone(),
            &[ivec(&[0, 0, 0, 0, 1, 0]), ivec(&[0, 0, 0, 0, 0, 1]), ivec(&[0, 0, 1, 1, 0, 0])],
        )
        .unwrap();
        let j = IsotropicDatum::line(&s, ivec(&[1, 0, 0, 0, 0, 0])).unwrap();
        let a = cone_decomposition(&arr, &j, &ConeOptions { seed: 1, ..Default::default() }).unwrap();
        let b = cone_decomposition(&arr, &j, &ConeOptions { seed: 99, samples: 0, witness: None }).unwrap();
        let sa: Vec<_> = a.cells.iter().map(|c| c.sign.clone()).collect();
        let sb: Vec<_> = b.cells.iter().map(|c| c.sign.clone()).collect();
        assert_eq!(sa, sb);
        assert_eq!(b.sampled_chambers, 0);
        assert_eq!(a.chambers.len(), 8);
    }

    #[test]
    fn rejects_planes_and_bad_witness() {
        let s = space(&[2]);
        let arr = Arrangement::new(s.clone(), vec![]).unwrap();
        let p = IsotropicDatum::plane(&s, ivec(&[1, 0, 0, 0, 0]), ivec(&[0, 0, 1, 0, 0])).unwrap();
        assert!(cone_decomposition(&arr, &p, &ConeOptions::default()).is_err());
        let j = IsotropicDatum::line(&s, ivec(&[1, 0, 0, 0, 0])).unwrap();
        let opts = ConeOptions { witness: Some(ivec(&[0, 0, 1, 1, 0])), ..Default::default() };
        assert!(cone_decomposition(&arr, &j, &opts).is_err());
        let opts = ConeOptions { witness: Some(ivec(&[0, 0, 1, -1, 0])), ..Default::default() };
        let dec = cone_decomposition(&arr, &j, &opts).unwrap();
        assert_eq!(dec.cells.len(), 1);
    }
}
