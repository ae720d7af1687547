//! Hyperplane arrangements in a rational quadratic space of signature `(n, 2)`
//! and the combinatorics of their boundary strata: the index set
//! `K1 ∪ K2 ∪ (∪_J Σ_J)`, the cone decompositions `Σ_J`, the strata poset,
//! hypothesis checkers, and the ball-quotient variant.
//!
//! Arrangements are explicit finite lists (orbit representatives); isotropic
//! data are supplied by the caller or by [`enumerate_isotropic`].

mod ball;
mod checks;
mod cones;
mod isotropic;
mod poset;
mod qp;

pub use ball::{ball_strata, BallNode, BallNodeKind, BallStrata};
pub use checks::{codim2_criterion, invar_hypothesis, Codim2Report, InvarReport, PlaneCheck, SubspaceWitness};
pub use cones::{cone_decomposition, ConeCell, ConeDecomposition, ConeOptions, Sign};
pub use isotropic::enumerate_isotropic;
pub use poset::{strata_poset, PosetView, StratumKind, StratumNode, StratumPoset};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{primitive_integer, Field, Rational};
use crate::qspace::{QuadraticSpace, Signature, Subspace};

/// A finite list of rational hyperplanes of signature `(n-1, 2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrangement {
    space: Arc<QuadraticSpace>,
    hyperplanes: Vec<Subspace>,
    normals: Vec<Vec<Rational>>,
}

impl Arrangement {
    pub fn new(space: Arc<QuadraticSpace>, hyperplanes: Vec<Subspace>) -> Result<Self> {
        let sig = space.signature();
        if sig.q != 2 || sig.r != 0 || sig.p < 2 {
            return Err(Error::Unsupported(format!(
                "arrangements need signature (n,2) with n >= 2, got {sig}"
            )));
        }
        let mut normals = Vec::with_capacity(hyperplanes.len());
        for (i, h) in hyperplanes.iter().enumerate() {
            space.check_subspace(h)?;
            if h.codim() != 1 {
                return Err(Error::malformed(format!(
                    "hyperplanes[{i}] has codimension {}",
                    h.codim()
                )));
            }
            let hs = space.restricted_signature(h)?;
            if hs != Signature::new(sig.p - 1, 2, 0) {
                return Err(Error::malformed(format!(
                    "hyperplanes[{i}] has signature {hs}, expected ({},2,0)",
                    sig.p - 1
                )));
            }
            if hyperplanes[..i].contains(h) {
                return Err(Error::malformed(format!("hyperplanes[{i}] is a duplicate")));
            }
            let perp = space.perp_unchecked(h);
            normals.push(primitive_integer(&perp.basis()[0]));
        }
        Ok(Arrangement {
            space,
            hyperplanes,
            normals,
        })
    }

    /// The arrangement `{n_i^perp}`.
    pub fn from_normals(space: Arc<QuadraticSpace>, normals: &[Vec<Rational>]) -> Result<Self> {
        let mut hs = Vec::new();
        for n in normals {
            space.check_vector(n)?;
            if n.iter().all(Field::is_zero) {
                return Err(Error::malformed("zero normal vector"));
            }
            hs.push(space.perp_unchecked(&Subspace::span(space.dim(), vec![n.clone()])));
        }
        Self::new(space, hs)
    }

    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    pub fn hyperplanes(&self) -> &[Subspace] {
        &self.hyperplanes
    }

    /// Primitive integral normal of each hyperplane.
    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Indices of the members containing `v`.
    pub fn members_containing(&self, v: &Subspace) -> Vec<usize> {
        self.hyperplanes
            .iter()
            .enumerate()
            .filter(|(_, h)| v.is_subspace_of(h))
            .map(|(i, _)| i)
            .collect()
    }

    /// All nonempty intersections of members (the whole space excluded), each
    /// with the indices of the members containing it.
    pub fn intersection_closure(&self) -> BTreeMap<Subspace, Vec<usize>> {
        let mut seen: BTreeMap<Subspace, Vec<usize>> = BTreeMap::new();
        let mut queue: Vec<Subspace> = Vec::new();
        for h in &self.hyperplanes {
            if !seen.contains_key(h) {
                seen.insert(h.clone(), Vec::new());
                queue.push(h.clone());
            }
        }
        while let Some(s) = queue.pop() {
            for h in &self.hyperplanes {
                if s.is_subspace_of(h) {
                    continue;
                }
                let t = s.intersect(h).expect("same ambient");
                if !seen.contains_key(&t) {
                    seen.insert(t.clone(), Vec::new());
                    queue.push(t);
                }
            }
        }
        for (s, members) in seen.iter_mut() {
            *members = self.members_containing(s);
        }
        seen
    }

    /// `K1`: intersections whose orthogonal complement is positive definite,
    /// sorted by decreasing dimension.
    pub fn build_k1(&self) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = self
            .intersection_closure()
            .into_keys()
            .filter(|s| {
                let perp = self.space.perp_unchecked(s);
                self.space
                    .restricted_signature(&perp)
                    .map(|sig| sig.is_positive_definite())
                    .unwrap_or(false)
            })
            .collect();
        out.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.cmp(b)));
        out
    }

    /// `K_J = J^perp ∩ (members containing J)` for an isotropic plane `J`.
    pub fn k_j_plane(&self, j: &IsotropicDatum) -> Result<Subspace> {
        if j.kind != IsotropicKind::Plane {
            return Err(Error::malformed("K_J needs an isotropic plane"));
        }
        self.space.check_subspace(&j.subspace)?;
        let mut k = self.space.perp_unchecked(&j.subspace);
        for i in self.members_containing(&j.subspace) {
            k = k.intersect(&self.hyperplanes[i])?;
        }
        Ok(k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsotropicKind {
    Line,
    Plane,
}

impl IsotropicKind {
    pub fn dim(&self) -> usize {
        match self {
            IsotropicKind::Line => 1,
            IsotropicKind::Plane => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            IsotropicKind::Line => "line",
            IsotropicKind::Plane => "plane",
        }
    }
}

/// A rational totally isotropic line or plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsotropicDatum {
    pub kind: IsotropicKind,
    pub subspace: Subspace,
}

impl IsotropicDatum {
    pub fn new(space: &QuadraticSpace, kind: IsotropicKind, subspace: Subspace) -> Result<Self> {
        space.check_subspace(&subspace)?;
        if subspace.dim() != kind.dim() {
            return Err(Error::malformed(format!(
                "isotropic {} must have dimension {}, got {}",
                kind.name(),
                kind.dim(),
                subspace.dim()
            )));
        }
        if !space.is_totally_isotropic(&subspace) {
            return Err(Error::malformed(format!(
                "the {} is not totally isotropic",
                kind.name()
            )));
        }
        Ok(IsotropicDatum { kind, subspace })
    }

    pub fn line(space: &QuadraticSpace, v: Vec<Rational>) -> Result<Self> {
        Self::new(space, IsotropicKind::Line, Subspace::span(space.dim(), vec![v]))
    }

    pub fn plane(space: &QuadraticSpace, a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        Self::new(space, IsotropicKind::Plane, Subspace::span(space.dim(), vec![a, b]))
    }

    /// Primitive integral generator of a line.
    pub fn generator(&self) -> Option<Vec<Rational>> {
        (self.kind == IsotropicKind::Line).then(|| primitive_integer(&self.subspace.basis()[0]))
    }
}

/// A vector `x` in `v` with `x.x <= 0` when the restricted form is not positive
/// definite, found from a congruence diagonalization.
pub(crate) fn nonpositive_vector(space: &QuadraticSpace, v: &Subspace) -> Option<Vec<Rational>> {
    let g = space.restricted_gram(v);
    let (d, s) = crate::qspace::diagonalize(&g);
    let j = d.iter().position(|x| *x <= Rational::from_integer(0.into()))?;
    Some(primitive_integer(&v.combination(&s.col(j))))
}

/// A vector `x` in `v` with `x.x > 0`, if any.
pub(crate) fn positive_vector(space: &QuadraticSpace, v: &Subspace) -> Option<Vec<Rational>> {
    let g = space.restricted_gram(v);
    let (d, s) = crate::qspace::diagonalize(&g);
    let j = d.iter().position(|x| *x > Rational::from_integer(0.into()))?;
    Some(primitive_integer(&v.combination(&s.col(j))))
}
