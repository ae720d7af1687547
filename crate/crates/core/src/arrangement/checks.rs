//! Checkers for two hypotheses on arrangements: the codimension-two
//! positivity criterion and the weaker condition that nonisotropic
//! two-dimensional intersections are not negative semidefinite.

use super::cones::{cone_decomposition, ConeOptions};
use super::{nonpositive_vector, positive_vector, Arrangement, IsotropicDatum, IsotropicKind};
use crate::error::Result;
use crate::field::Rational;
use crate::qspace::{Signature, Subspace};

/// A subspace together with its signature and a vector exhibiting the
/// property being reported.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceWitness {
    pub subspace: Subspace,
    pub signature: Signature,
    pub witness: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Codim2Report {
    pub dim: usize,
    /// `dim H >= 5`.
    pub dim_ok: bool,
    /// Two-dimensional intersections that are not positive definite, each
    /// with a vector `x` satisfying `x.x <= 0`.
    pub failing_planes: Vec<SubspaceWitness>,
    /// Nonzero intersections of any dimension that are negative semidefinite.
    pub negative_semidefinite: Vec<SubspaceWitness>,
    /// Cells of the supplied `Σ_J` with `dim K_σ = 2`.
    pub one_dimensional_cells: Vec<(usize, String)>,
    pub passed: bool,
}

/// `dim H >= 5` and every two-dimensional intersection of members is
/// positive definite.
pub fn codim2_criterion(arr: &Arrangement, lines: &[IsotropicDatum], opts: &ConeOptions) -> Result<Codim2Report> {
    let space = arr.space();
    let dim = space.dim();
    let mut failing_planes = Vec::new();
    let mut negative_semidefinite = Vec::new();
    for s in arr.intersection_closure().into_keys() {
        if s.is_zero() {
            continue;
        }
        let sig = space.restricted_signature(&s)?;
        if s.dim() == 2 && !sig.is_positive_definite() {
            let witness = nonpositive_vector(space, &s).expect("not positive definite");
            failing_planes.push(SubspaceWitness {
                subspace: s.clone(),
                signature: sig,
                witness,
            });
        }
        if sig.is_negative_semidefinite() {
            let witness = s.basis()[0].clone();
            negative_semidefinite.push(SubspaceWitness {
                subspace: s,
                signature: sig,
                witness,
            });
        }
    }
    let mut one_dimensional_cells = Vec::new();
    for (idx, j) in lines.iter().filter(|j| j.kind == IsotropicKind::Line).enumerate() {
        let dec = cone_decomposition(arr, j, opts)?;
        for c in dec.cells.iter().filter(|c| c.k_sigma.dim() == 2) {
            one_dimensional_cells.push((idx, c.sign_string()));
        }
    }
    let dim_ok = dim >= 5;
    Ok(Codim2Report {
        dim,
        dim_ok,
        passed: dim_ok && failing_planes.is_empty(),
        failing_planes,
        negative_semidefinite,
        one_dimensional_cells,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCheck {
    pub subspace: Subspace,
    pub signature: Signature,
    pub isotropic: bool,
    /// A vector with `x.x > 0` when one exists.
    pub positive_witness: Option<Vec<Rational>>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarReport {
    pub planes: Vec<PlaneCheck>,
    pub passed: bool,
}

/// Every nonisotropic two-dimensional intersection has `p >= 1`.
pub fn invar_hypothesis(arr: &Arrangement) -> Result<InvarReport> {
    let space = arr.space();
    let mut planes = Vec::new();
    for s in arr.intersection_closure().into_keys().filter(|s| s.dim() == 2) {
        let signature = space.restricted_signature(&s)?;
        let isotropic = space.is_totally_isotropic(&s);
        let positive_witness = positive_vector(space, &s);
        let passed = isotropic || signature.p >= 1;
        planes.push(PlaneCheck {
            subspace: s,
            signature,
            isotropic,
            positive_witness,
            passed,
        });
    }
    let passed = planes.iter().all(|p| p.passed);
    Ok(InvarReport { planes, passed })
}
