//! Discriminant forms of integral lattices via the Smith normal form, and the
//! Gauss lattice `Z[i]` with the form `-2|z|^2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{rat, Rational};
use crate::linalg::Matrix;
use crate::qspace::{QuadraticSpace, Signature};

/// Largest discriminant group whose elements are enumerated.
pub const MAX_DISCRIMINANT_ORDER: u64 = 4096;

/// Smith normal form `U A V = D` of an integer matrix; returns the diagonal
/// of `D` together with the unimodular `U` and `V`.
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> (Vec<BigInt>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let r = a.len();
    let c = if r == 0 { 0 } else { a[0].len() };
    let mut m = a.to_vec();
    let ident = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect()
    };
    let mut u = ident(r);
    let mut v = ident(c);
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(diag, r.min(c), u, v);
            };
            m.swap(t, pi);
            u.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in (t + 1)..r {
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for j in 0..c {
                        let x = &q * &m[t][j];
                        m[i][j] -= x;
                    }
                    for j in 0..r {
                        let x = &q * &u[t][j];
                        u[i][j] -= x;
                    }
                }
                clean &= m[i][t].is_zero();
            }
            for j in (t + 1)..c {
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for i in 0..r {
                        let x = &q * &m[i][t];
                        m[i][j] -= x;
                    }
                    for i in 0..c {
                        let x = &q * &v[i][t];
                        v[i][j] -= x;
                    }
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = ((t + 1)..r).find(|&i| ((t + 1)..c).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            if let Some(i) = bad {
                for j in 0..c {
                    let x = m[i][j].clone();
                    m[t][j] += x;
                }
                for j in 0..r {
                    let x = u[i][j].clone();
                    u[t][j] += x;
                }
                continue;
            }
            break;
        }
        if m[t][t].is_negative() {
            for j in 0..c {
                m[t][j] = -m[t][j].clone();
            }
            for j in 0..r {
                u[t][j] = -u[t][j].clone();
            }
        }
        diag.push(m[t][t].clone());
    }
    (diag, u, v)
}

fn finish(
    mut diag: Vec<BigInt>,
    n: usize,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
) -> (Vec<BigInt>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    diag.resize(n, BigInt::zero());
    (diag, u, v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantElement {
    /// Coefficients on the cyclic generators.
    pub coords: Vec<u64>,
    /// A representative in `L*` with coordinates in `[0, 1)`.
    pub vector: Vec<Rational>,
    /// `x . x` of that representative.
    pub value: Rational,
    /// `x . x` reduced into `[0, 2)`.
    pub q_mod2: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantForm {
    /// Nontrivial Smith invariants `d_i > 1`.
    pub invariants: Vec<BigInt>,
    pub order: BigInt,
    pub elements: Vec<DiscriminantElement>,
    /// Indices of the nonzero elements with `q ≡ 0 mod 2`.
    pub isotropic: Vec<usize>,
}

impl DiscriminantForm {
    /// A nonzero isotropic class generates an isotropic subgroup, and these
    /// subgroups correspond to proper even overlattices.
    pub fn has_even_overlattice(&self) -> bool {
        !self.isotropic.is_empty()
    }
}

fn reduce_mod(x: &Rational, m: &Rational) -> Rational {
    let k = (x / m).floor();
    x - k * m
}

/// Discriminant group `L*/L` of an even nondegenerate integral lattice with
/// its quadratic form `q(x) = x.x mod 2Z`.
pub fn discriminant_form(space: &QuadraticSpace) -> Result<DiscriminantForm> {
    let n = space.dim();
    let g = space.gram();
    let mut int_gram = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if !g[(i, j)].is_integer() {
                return Err(Error::malformed("Gram matrix is not integral"));
            }
            int_gram[i][j] = g[(i, j)].to_integer();
        }
        if int_gram[i][i].is_odd() {
            return Err(Error::malformed("lattice is not even"));
        }
    }
    let ginv = g.inverse().ok_or_else(|| Error::Unsupported("degenerate lattice".into()))?;
    let (diag, u, _) = smith_normal_form(&int_gram);
    let order = diag.iter().fold(BigInt::one(), |acc, d| acc * d);
    if order > BigInt::from(MAX_DISCRIMINANT_ORDER) {
        return Err(Error::Unsupported(format!(
            "discriminant group of order {order} is too large to enumerate"
        )));
    }
    let umat = Matrix::from_rows(u.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect())
        .expect("square");
    let uinv = umat.inverse().expect("unimodular");
    let cyclic: Vec<(u64, Vec<Rational>)> = diag
        .iter()
        .enumerate()
        .filter(|(_, d)| **d > BigInt::one())
        .map(|(i, d)| {
            let col = uinv.col(i);
            (u64::try_from(d).expect("small order"), ginv.mul_vec(&col))
        })
        .collect();
    let invariants: Vec<BigInt> = cyclic.iter().map(|(d, _)| BigInt::from(*d)).collect();

    let mut elements = Vec::new();
    let mut coords = vec![0u64; cyclic.len()];
    loop {
        let mut vector = vec![rat(0); n];
        for ((_, gen), &a) in cyclic.iter().zip(&coords) {
            for (x, y) in vector.iter_mut().zip(gen) {
                *x = x.clone() + rat(a as i64) * y.clone();
            }
        }
        let vector: Vec<Rational> = vector.iter().map(|x| reduce_mod(x, &rat(1))).collect();
        let value = space.norm(&vector);
        let q_mod2 = reduce_mod(&value, &rat(2));
        elements.push(DiscriminantElement {
            coords: coords.clone(),
            vector,
            value,
            q_mod2,
        });
        let mut i = 0;
        while i < coords.len() {
            coords[i] += 1;
            if coords[i] < cyclic[i].0 {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
        if i == coords.len() {
            break;
        }
    }
    let isotropic = elements
        .iter()
        .enumerate()
        .filter(|(_, e)| e.coords.iter().any(|&c| c != 0) && e.q_mod2.is_zero())
        .map(|(i, _)| i)
        .collect();
    Ok(DiscriminantForm {
        invariants,
        order,
        elements,
        isotropic,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussLatticeReport {
    pub gram: Matrix<Rational>,
    pub action: Matrix<Rational>,
    pub signature: Signature,
    pub preserves_form: bool,
    /// `g^2 γ = -γ` for every `γ`.
    pub g_squared_is_minus_one: bool,
    pub discriminant: DiscriminantForm,
    pub has_even_overlattice: bool,
    /// `γ . γ` for the generator `γ = 1`.
    pub self_intersection: Rational,
}

/// The Gauss lattice `Z[i]` with form `-2|z|^2` and `μ_4` acting by `i`.
pub fn gauss_lattice_report() -> GaussLatticeReport {
    let space = QuadraticSpace::diagonal(&[-2, -2]);
    let action = Matrix::from_rows(vec![vec![rat(0), rat(-1)], vec![rat(1), rat(0)]]).expect("2x2");
    let preserves_form = action.transpose().mul(space.gram()).mul(&action) == *space.gram();
    let g2 = action.mul(&action);
    let g_squared_is_minus_one = g2 == Matrix::identity(2).scale(&rat(-1));
    let discriminant = discriminant_form(&space).expect("Gauss lattice is even and nondegenerate");
    GaussLatticeReport {
        signature: space.signature(),
        gram: space.gram().clone(),
        self_intersection: space.norm(&[rat(1), rat(0)]),
        has_even_overlattice: discriminant.has_even_overlattice(),
        discriminant,
        action,
        preserves_form,
        g_squared_is_minus_one,
    }
}
