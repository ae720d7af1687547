//! The poset of boundary strata indexed by `K1 ∪ K2 ∪ (∪_J Σ_J)` plus the
//! interior. The order is inclusion of the attached subspaces `K`, except
//! inside a single `Σ_J` where it is the face relation of cones.

use std::fmt::Write as _;

use super::cones::{cone_decomposition, ConeCell, ConeOptions};
use super::{Arrangement, IsotropicDatum, IsotropicKind};
use crate::error::{Error, Result};
use crate::qspace::Subspace;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PosetView {
    /// Every cell of every `Σ_J`, faces included, is a node.
    #[default]
    CellsWithFaces,
    /// Cells of one `Σ_J` with the same `K_σ` are merged.
    QuotientByK,
}

impl PosetView {
    pub fn name(&self) -> &'static str {
        match self {
            PosetView::CellsWithFaces => "cells-with-faces",
            PosetView::QuotientByK => "quotient-by-k",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "cells-with-faces" | "cells" => Some(PosetView::CellsWithFaces),
            "quotient-by-k" | "quotient" => Some(PosetView::QuotientByK),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StratumKind {
    Interior,
    K1 { index: usize },
    K2 { plane: usize },
    /// Cells of `Σ_J` for the `line`-th isotropic line, given by sign strings.
    Sigma { line: usize, cells: Vec<String> },
}

impl StratumKind {
    pub fn tag(&self) -> &'static str {
        match self {
            StratumKind::Interior => "Interior",
            StratumKind::K1 { .. } => "K1",
            StratumKind::K2 { .. } => "K2",
            StratumKind::Sigma { .. } => "Sigma",
        }
    }

    fn rank(&self) -> u8 {
        match self {
            StratumKind::Interior => 0,
            StratumKind::Sigma { .. } => 1,
            StratumKind::K2 { .. } => 2,
            StratumKind::K1 { .. } => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StratumNode {
    pub kind: StratumKind,
    pub k: Subspace,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StratumPoset {
    pub view: PosetView,
    pub nodes: Vec<StratumNode>,
    /// Pairs `(i, j)` with `j` covering `i`.
    pub covers: Vec<(usize, usize)>,
    /// Transitively closed order, `le[i][j]` iff node `i` <= node `j`.
    pub le: Vec<Vec<bool>>,
}

impl StratumPoset {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn count(&self, tag: &str) -> usize {
        self.nodes.iter().filter(|n| n.kind.tag() == tag).count()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph strata {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{i}: {}\"];", n.label.replace('"', "'"));
        }
        for (a, b) in &self.covers {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

struct Pending {
    node: StratumNode,
    cells: Vec<ConeCell>,
}

/// Build the strata poset. `isotropics` lists representatives of the
/// isotropic lines and planes to include.
pub fn strata_poset(
    arr: &Arrangement,
    isotropics: &[IsotropicDatum],
    view: PosetView,
    opts: &ConeOptions,
) -> Result<StratumPoset> {
    let space = arr.space();
    let d = space.dim();
    let mut pending = vec![Pending {
        node: StratumNode {
            kind: StratumKind::Interior,
            k: Subspace::zero(d),
            label: "Interior".into(),
        },
        cells: vec![],
    }];
    for (index, k) in arr.build_k1().into_iter().enumerate() {
        pending.push(Pending {
            node: StratumNode {
                kind: StratumKind::K1 { index },
                label: format!("K1[{index}] dim {}", k.dim()),
                k,
            },
            cells: vec![],
        });
    }
    let planes: Vec<&IsotropicDatum> = isotropics.iter().filter(|j| j.kind == IsotropicKind::Plane).collect();
    let lines: Vec<&IsotropicDatum> = isotropics.iter().filter(|j| j.kind == IsotropicKind::Line).collect();
    for (plane, j) in planes.iter().enumerate() {
        let k = arr.k_j_plane(j)?;
        pending.push(Pending {
            node: StratumNode {
                kind: StratumKind::K2 { plane },
                label: format!("K2[{plane}] dim {}", k.dim()),
                k,
            },
            cells: vec![],
        });
    }
    for (line, j) in lines.iter().enumerate() {
        let dec = cone_decomposition(arr, j, opts)?;
        let mut groups: Vec<(Subspace, Vec<ConeCell>)> = Vec::new();
        for cell in dec.cells {
            match view {
                PosetView::CellsWithFaces => groups.push((cell.k_sigma.clone(), vec![cell])),
                PosetView::QuotientByK => match groups.iter_mut().find(|(k, _)| *k == cell.k_sigma) {
                    Some((_, g)) => g.push(cell),
                    None => groups.push((cell.k_sigma.clone(), vec![cell])),
                },
            }
        }
        for (k, cells) in groups {
            let signs: Vec<String> = cells.iter().map(ConeCell::sign_string).collect();
            pending.push(Pending {
                node: StratumNode {
                    label: format!("Sigma[{line}] {{{}}} dim {}", signs.join(","), k.dim()),
                    kind: StratumKind::Sigma { line, cells: signs },
                    k,
                },
                cells,
            });
        }
    }

    let n = pending.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            le[i][j] = i == j || related(&pending[i], &pending[j]);
        }
    }
    for m in 0..n {
        for i in 0..n {
            if le[i][m] {
                for j in 0..n {
                    if le[m][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if le[i][j] && le[j][i] {
                return Err(Error::Classification(format!(
                    "strata {i} and {j} are mutually comparable"
                )));
            }
        }
    }
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] && !(0..n).any(|m| m != i && m != j && le[i][m] && le[m][j]) {
                covers.push((i, j));
            }
        }
    }
    Ok(StratumPoset {
        view,
        nodes: pending.into_iter().map(|p| p.node).collect(),
        covers,
        le,
    })
}

fn related(a: &Pending, b: &Pending) -> bool {
    if let (StratumKind::Sigma { line: la, .. }, StratumKind::Sigma { line: lb, .. }) = (&a.node.kind, &b.node.kind) {
        if la == lb {
            return a.cells.iter().any(|x| b.cells.iter().any(|y| x.is_face_of(y)));
        }
    }
    let (ka, kb) = (&a.node.k, &b.node.k);
    if ka == kb {
        a.node.kind.rank() < b.node.kind.rank()
    } else {
        ka.is_subspace_of(kb)
    }
}
