//! Strata for the ball-quotient variant: members of the arrangement are
//! hyperplanes of the `χ`-eigenspace `H_χ` cut out by rational sublattices,
//! and the index set is `K'1 ∪ K'2`.

use super::poset::PosetView;
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::{kernel, lift, lift_vec};
use crate::qspace::{
    herm, k_span, pair_k, rational_hermitian_signature, CyclotomicElement, EigenspaceData,
    QuadraticSpace, Signature, Subspace, SubspaceClass,
};

type K = CyclotomicElement;

#[derive(Clone, Debug, PartialEq)]
pub enum BallNodeKind {
    Interior,
    K1 { index: usize },
    K2 { line: usize },
}

impl BallNodeKind {
    pub fn tag(&self) -> &'static str {
        match self {
            BallNodeKind::Interior => "Interior",
            BallNodeKind::K1 { .. } => "K1",
            BallNodeKind::K2 { .. } => "K2",
        }
    }

    fn rank(&self) -> u8 {
        match self {
            BallNodeKind::Interior => 0,
            BallNodeKind::K2 { .. } => 1,
            BallNodeKind::K1 { .. } => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BallNode {
    pub kind: BallNodeKind,
    /// Canonical `Q(ζ)`-basis of the attached subspace of `H_χ`.
    pub basis: Vec<Vec<K>>,
    pub herm_signature: Signature,
    /// Signature of the rational form underlying the hermitian one.
    pub rational_signature: Signature,
    /// Type read off from the rational radical dimension.
    pub class: Option<SubspaceClass>,
    pub label: String,
}

impl BallNode {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BallStrata {
    pub view: PosetView,
    /// Canonical bases of the members `H_χ ∩ N_k^perp`.
    pub members: Vec<Vec<Vec<K>>>,
    pub nodes: Vec<BallNode>,
    pub covers: Vec<(usize, usize)>,
    pub le: Vec<Vec<bool>>,
}

impl BallStrata {
    pub fn count(&self, tag: &str) -> usize {
        self.nodes.iter().filter(|n| n.kind.tag() == tag).count()
    }

    /// Nodes whose rational radical is one-dimensional.
    pub fn type3_nodes(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.class == Some(SubspaceClass::Type3))
            .count()
    }
}

/// `H_χ ∩ (constraints)^perp` as a canonical `Q(ζ)`-basis.
fn cut(space: &QuadraticSpace, eigen: &EigenspaceData, constraints: &[Vec<K>]) -> Vec<Vec<K>> {
    let rows: Vec<Vec<K>> = constraints
        .iter()
        .map(|n| eigen.chi_basis.iter().map(|w| pair_k(space, w, n)).collect())
        .collect();
    let coeffs = kernel(&rows, eigen.dim());
    let vecs: Vec<Vec<K>> = coeffs.iter().map(|c| eigen.combination(c)).collect();
    k_span(&vecs)
}

fn contains(big: &[Vec<K>], small: &[Vec<K>]) -> bool {
    let mut all = big.to_vec();
    all.extend(small.iter().cloned());
    k_span(&all).len() == big.len()
}

fn class_of(r: usize) -> Option<SubspaceClass> {
    match r {
        0 => Some(SubspaceClass::Type1),
        1 => Some(SubspaceClass::Type3),
        2 => Some(SubspaceClass::Type2),
        _ => None,
    }
}

/// Build the ball strata poset. `normals[k]` is the rational sublattice whose
/// orthogonal complement in `H_χ` is the `k`-th member; `lines` are vectors of
/// `H_χ` spanning isotropic lines `J'`.
pub fn ball_strata(
    space: &QuadraticSpace,
    eigen: &EigenspaceData,
    normals: &[Subspace],
    lines: &[Vec<K>],
) -> Result<BallStrata> {
    let l = eigen.l;
    if l < 3 {
        return Err(Error::Unsupported(format!(
            "ball quotients need l in {{3,4,6}}, got {l}"
        )));
    }
    let hs = eigen.herm_signature;
    if hs.q != 1 || hs.r != 0 {
        return Err(Error::Unsupported(format!(
            "H_chi has hermitian signature {hs}; a ball needs (n,1,0)"
        )));
    }
    let d = space.dim();
    let node = |kind: BallNodeKind, basis: Vec<Vec<K>>, label: String| {
        let (h, raw) = rational_hermitian_signature(space, &basis, l);
        BallNode {
            class: class_of(raw.r),
            kind,
            basis,
            herm_signature: h,
            rational_signature: raw,
            label,
        }
    };

    let mut member_constraints: Vec<Vec<Vec<K>>> = Vec::new();
    let mut members = Vec::new();
    for (k, nsub) in normals.iter().enumerate() {
        space.check_subspace(nsub)?;
        let cons: Vec<Vec<K>> = nsub.basis().iter().map(|v| lift_vec::<K>(v)).collect();
        let basis = cut(space, eigen, &cons);
        if basis.len() + 1 != eigen.dim() {
            return Err(Error::malformed(format!(
                "members[{k}] has codimension {} in H_chi, expected 1",
                eigen.dim() - basis.len()
            )));
        }
        let (h, _) = rational_hermitian_signature(space, &basis, l);
        if h.q != 1 || h.r != 0 {
            return Err(Error::malformed(format!(
                "members[{k}] has hermitian signature {h}, expected hyperbolic"
            )));
        }
        member_constraints.push(cons);
        members.push(basis);
    }

    // Intersection closure of the members, keeping hyperbolic pieces.
    let mut closure: Vec<(Vec<Vec<K>>, Vec<usize>)> = Vec::new();
    let mut queue: Vec<Vec<usize>> = (0..members.len()).map(|k| vec![k]).collect();
    while let Some(set) = queue.pop() {
        let cons: Vec<Vec<K>> = set.iter().flat_map(|&k| member_constraints[k].clone()).collect();
        let basis = cut(space, eigen, &cons);
        if closure.iter().any(|(b, _)| *b == basis) {
            continue;
        }
        for k in 0..members.len() {
            if !contains(&members[k], &basis) {
                let mut next = set.clone();
                next.push(k);
                queue.push(next);
            }
        }
        closure.push((basis, set));
    }
    let mut k1: Vec<Vec<Vec<K>>> = closure
        .into_iter()
        .map(|(b, _)| b)
        .filter(|b| {
            let (h, _) = rational_hermitian_signature(space, b, l);
            !b.is_empty() && h.q == 1 && h.r == 0
        })
        .collect();
    k1.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| format!("{a:?}").cmp(&format!("{b:?}"))));

    let mut nodes = vec![node(BallNodeKind::Interior, Vec::new(), "Interior".into())];
    for (index, b) in k1.into_iter().enumerate() {
        let label = format!("K1[{index}] dim {}", b.len());
        nodes.push(node(BallNodeKind::K1 { index }, b, label));
    }

    let rho: crate::linalg::Matrix<K> = lift(&eigen.rho);
    let zeta = K::zeta(l);
    for (idx, j) in lines.iter().enumerate() {
        if j.len() != d {
            return Err(Error::Mismatch(format!("lines[{idx}] has length {}", j.len())));
        }
        if j.iter().all(Field::is_zero) {
            return Err(Error::malformed(format!("lines[{idx}] is zero")));
        }
        let zj: Vec<K> = j.iter().map(|x| zeta.clone() * x.clone()).collect();
        if rho.mul_vec(j) != zj {
            return Err(Error::malformed(format!("lines[{idx}] is not in H_chi")));
        }
        if !herm(space, j, j).is_zero() {
            return Err(Error::malformed(format!("lines[{idx}] is not isotropic for h")));
        }
        let a: Vec<Rational> = j.iter().map(|x| x.a().clone()).collect();
        let b: Vec<Rational> = j.iter().map(|x| x.b().clone()).collect();
        let real = Subspace::span(d, vec![a, b]);
        if real.dim() != 2 || !space.is_totally_isotropic(&real) {
            return Err(Error::malformed(format!(
                "J' + conj(J') for lines[{idx}] is not a rational isotropic plane"
            )));
        }
        let mut cons: Vec<Vec<K>> = real.basis().iter().map(|v| lift_vec::<K>(v)).collect();
        for (k, mc) in member_constraints.iter().enumerate() {
            if contains(&members[k], std::slice::from_ref(j)) {
                cons.extend(mc.iter().cloned());
            }
        }
        let basis = cut(space, eigen, &cons);
        let label = format!("K2[{idx}] dim {}", basis.len());
        nodes.push(node(BallNodeKind::K2 { line: idx }, basis, label));
    }

    let n = nodes.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        for jx in 0..n {
            le[i][jx] = i == jx
                || if nodes[i].basis == nodes[jx].basis {
                    nodes[i].kind.rank() < nodes[jx].kind.rank()
                } else {
                    contains(&nodes[jx].basis, &nodes[i].basis)
                };
        }
    }
    let mut covers = Vec::new();
    for i in 0..n {
        for jx in 0..n {
            if i != jx && le[i][jx] && !(0..n).any(|m| m != i && m != jx && le[i][m] && le[m][jx]) {
                covers.push((i, jx));
            }
        }
    }
    Ok(BallStrata {
        view: PosetView::QuotientByK,
        members,
        nodes,
        covers,
        le,
    })
}
