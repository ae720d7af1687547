//! Rational quadratic spaces and their subspaces.
//!
//! Everything here is exact: Gram matrices, subspace bases and signatures are
//! computed over `Q` with arbitrary-precision rationals. Subspaces are kept in
//! reduced row-echelon form, so two [`Subspace`] values are equal exactly when
//! they span the same space.

mod cyclotomic;
mod eigen;

pub use cyclotomic::CyclotomicElement;
pub use eigen::{
    eigenspace_chi, herm, hermitian_signature, k_span, pair_k, rational_hermitian_signature,
    restriction_of_scalars, EigenspaceData,
};

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{rat, Field, Rational};
use crate::linalg::{dot, kernel, rref, Matrix};

/// Inertia indices `(p, q, r)`: positive, negative and zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize, r: usize) -> Self {
        Signature { p, q, r }
    }

    pub fn dim(&self) -> usize {
        self.p + self.q + self.r
    }

    pub fn is_positive_definite(&self) -> bool {
        self.q == 0 && self.r == 0
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.q == 0
    }

    pub fn is_negative_semidefinite(&self) -> bool {
        self.p == 0
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.r == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

/// Congruence diagonalization of a symmetric rational matrix.
///
/// Returns the diagonal `D` and an invertible `S` with `S^T G S = diag(D)`.
pub fn diagonalize(gram: &Matrix<Rational>) -> (Vec<Rational>, Matrix<Rational>) {
    let n = gram.nrows();
    let mut a = gram.clone();
    let mut s = Matrix::<Rational>::identity(n);

    // Column op col_j += f * col_k applied as a congruence: A <- M^T A M.
    fn add_multiple(
        a: &mut Matrix<Rational>,
        s: &mut Matrix<Rational>,
        j: usize,
        k: usize,
        f: &Rational,
    ) {
        let n = a.nrows();
        for i in 0..n {
            let v = a[(i, k)].clone();
            a[(i, j)] = a[(i, j)].clone() + f.clone() * v;
        }
        for i in 0..n {
            let v = a[(k, i)].clone();
            a[(j, i)] = a[(j, i)].clone() + f.clone() * v;
        }
        for i in 0..n {
            let v = s[(i, k)].clone();
            s[(i, j)] = s[(i, j)].clone() + f.clone() * v;
        }
    }

    fn swap(a: &mut Matrix<Rational>, s: &mut Matrix<Rational>, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = a.nrows();
        for c in 0..n {
            let t = a[(i, c)].clone();
            a[(i, c)] = a[(j, c)].clone();
            a[(j, c)] = t;
        }
        for r in 0..n {
            let t = a[(r, i)].clone();
            a[(r, i)] = a[(r, j)].clone();
            a[(r, j)] = t;
            let t = s[(r, i)].clone();
            s[(r, i)] = s[(r, j)].clone();
            s[(r, j)] = t;
        }
    }

    for k in 0..n {
        let pivot = (k..n).find(|&i| !Field::is_zero(&a[(i, i)]));
        match pivot {
            Some(i) => swap(&mut a, &mut s, i, k),
            None => {
                // All remaining diagonal entries vanish: use an off-diagonal pair.
                let pair = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !Field::is_zero(&a[(i, j)]));
                let Some((i, j)) = pair else { break };
                add_multiple(&mut a, &mut s, i, j, &rat(1));
                swap(&mut a, &mut s, i, k);
            }
        }
        let piv = a[(k, k)].clone();
        for j in k + 1..n {
            if Field::is_zero(&a[(k, j)]) {
                continue;
            }
            let f = -(a[(k, j)].clone() / piv.clone());
            add_multiple(&mut a, &mut s, j, k, &f);
        }
    }
    let d = (0..n).map(|i| a[(i, i)].clone()).collect();
    (d, s)
}

/// Exact signature of a symmetric rational matrix.
pub fn signature_of(gram: &Matrix<Rational>) -> Result<Signature> {
    if !gram.is_symmetric() {
        return Err(Error::malformed("Gram matrix is not symmetric"));
    }
    let (d, _) = diagonalize(gram);
    let p = d.iter().filter(|x| x.is_positive()).count();
    let q = d.iter().filter(|x| x.is_negative()).count();
    Ok(Signature::new(p, q, d.len() - p - q))
}

/// `Q^d` with a symmetric bilinear form, signature cached at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticSpace {
    gram: Matrix<Rational>,
    signature: Signature,
}

impl QuadraticSpace {
    pub fn new(gram: Matrix<Rational>) -> Result<Self> {
        if !gram.is_square() || gram.nrows() == 0 {
            return Err(Error::malformed("Gram matrix must be square and nonempty"));
        }
        let signature = signature_of(&gram)?;
        Ok(QuadraticSpace { gram, signature })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        let gram =
            Matrix::from_rows(rows).ok_or_else(|| Error::malformed("ragged Gram matrix"))?;
        Self::new(gram)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let d: Vec<Rational> = entries.iter().map(|&x| rat(x)).collect();
        Self::new(Matrix::diagonal(&d)).expect("diagonal forms are symmetric")
    }

    /// The hyperbolic plane `U` with Gram `[[0,1],[1,0]]`.
    pub fn hyperbolic_plane() -> Self {
        Self::from_int_rows(&[&[0, 1], &[1, 0]]).expect("valid")
    }

    pub fn direct_sum(&self, other: &QuadraticSpace) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut g = Matrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[(a + i, a + j)] = other.gram[(i, j)].clone();
            }
        }
        Self::new(g).expect("direct sum of symmetric forms is symmetric")
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.signature.is_nondegenerate()
    }

    /// `G v`, the covector `x -> x . v`.
    pub fn gram_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.gram.mul_vec(v)
    }

    /// The bilinear form `a^T G b`, over any field containing `Q`.
    pub fn pair<F: Field>(&self, a: &[F], b: &[F]) -> F {
        let mut acc = F::zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let g = &self.gram[(i, j)];
                if Field::is_zero(g) || y.is_zero() {
                    continue;
                }
                acc = acc + x.clone() * F::from_rational(g) * y.clone();
            }
        }
        acc
    }

    pub fn norm(&self, v: &[Rational]) -> Rational {
        self.pair(v, v)
    }

    pub fn check_vector(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Mismatch(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn check_subspace(&self, v: &Subspace) -> Result<()> {
        if v.ambient_dim() != self.dim() {
            return Err(Error::Mismatch(format!(
                "subspace of Q^{} used in a space of dimension {}",
                v.ambient_dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    pub fn zero(&self) -> Subspace {
        Subspace::zero(self.dim())
    }

    /// Gram matrix of the form restricted to the stored basis of `v`.
    pub fn restricted_gram(&self, v: &Subspace) -> Matrix<Rational> {
        let k = v.dim();
        let mut m = Matrix::zeros(k, k);
        let gb: Vec<Vec<Rational>> = v.basis().iter().map(|b| self.gram_vec(b)).collect();
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = dot(&v.basis()[i], &gb[j]);
            }
        }
        m
    }

    pub fn restricted_signature(&self, v: &Subspace) -> Result<Signature> {
        self.check_subspace(v)?;
        signature_of(&self.restricted_gram(v))
    }

    /// `V_0 = {x in V : x . y = 0 for all y in V}`.
    pub fn radical(&self, v: &Subspace) -> Result<Subspace> {
        self.check_subspace(v)?;
        let g = self.restricted_gram(v);
        let coeffs = kernel(&g.to_rows(), v.dim());
        Ok(Subspace::span(
            self.dim(),
            coeffs.iter().map(|c| v.combination(c)).collect(),
        ))
    }

    /// `V^perp`, computed as the kernel of `B G` where `B` holds the basis rows.
    pub fn orthogonal_complement(&self, v: &Subspace) -> Result<Subspace> {
        self.check_subspace(v)?;
        if !self.is_nondegenerate() {
            return Err(Error::Unsupported(
                "orthogonal complement in a degenerate ambient form".into(),
            ));
        }
        Ok(self.perp_unchecked(v))
    }

    /// `V^perp` without the nondegeneracy requirement.
    pub fn perp_unchecked(&self, v: &Subspace) -> Subspace {
        let rows: Vec<Vec<Rational>> = v.basis().iter().map(|b| self.gram_vec(b)).collect();
        if rows.is_empty() {
            return self.full();
        }
        Subspace::span(self.dim(), kernel(&rows, self.dim()))
    }

    pub fn is_totally_isotropic(&self, v: &Subspace) -> bool {
        self.restricted_gram(v).is_zero()
    }

    /// Classify a positive semidefinite subspace by the dimension of its radical.
    pub fn classify_subspace(&self, v: &Subspace) -> Result<Classification> {
        self.check_subspace(v)?;
        let amb = self.signature;
        if amb.q != 2 || amb.r != 0 {
            return Err(Error::Unsupported(format!(
                "ambient signature {amb} is not of the form (n,2,0)"
            )));
        }
        let restricted = self.restricted_signature(v)?;
        let radical = self.radical(v)?;
        if radical.dim() >= 3 {
            return Err(Error::Impossible(format!(
                "radical of dimension {} exceeds the number of negative directions",
                radical.dim()
            )));
        }
        if restricted.q > 0 {
            return Err(Error::Classification(format!(
                "restricted form {restricted} is not positive semidefinite"
            )));
        }
        let complement = self.orthogonal_complement(v)?;
        let complement_signature = self.restricted_signature(&complement)?;
        let (class, side_condition) = match radical.dim() {
            0 => (
                SubspaceClass::Type1,
                complement_signature == Signature::new(complement.dim().saturating_sub(2), 2, 0),
            ),
            // V^perp lies in V_0^perp, so it is positive semidefinite; its
            // isotropic vectors are exactly those of V_0.
            2 => (
                SubspaceClass::Type2,
                complement_signature.is_positive_semidefinite()
                    && self.radical(&complement)? == radical,
            ),
            _ => (SubspaceClass::Type3, true),
        };
        Ok(Classification {
            class,
            radical,
            complement,
            restricted,
            complement_signature,
            complement_negative_semidefinite: complement_signature.is_negative_semidefinite(),
            side_condition,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubspaceClass {
    /// `V_0 = 0`, `V` positive definite.
    Type1,
    /// `dim V_0 = 2`.
    Type2,
    /// `dim V_0 = 1`.
    Type3,
}

impl SubspaceClass {
    pub fn name(&self) -> &'static str {
        match self {
            SubspaceClass::Type1 => "Type1",
            SubspaceClass::Type2 => "Type2",
            SubspaceClass::Type3 => "Type3",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub class: SubspaceClass,
    pub radical: Subspace,
    pub complement: Subspace,
    pub restricted: Signature,
    pub complement_signature: Signature,
    /// Literal reading of the Type2 side condition. It holds exactly when
    /// `V^perp = V_0`, i.e. `V = V_0^perp`.
    pub complement_negative_semidefinite: bool,
    /// Type1: `V^perp` has signature `(dim V^perp - 2, 2)`.
    /// Type2: `V^perp` is semidefinite with radical `V_0`, so that
    /// `P(V^perp)` meets the closure of the domain only in `P(V_0)`.
    /// Type3: always true.
    pub side_condition: bool,
}

/// A subspace of `Q^d` in canonical reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(Q^{}; ", self.ambient_dim)?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, ")")
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    /// Deterministic total order: ambient dimension, then dimension, then the
    /// canonical basis entries.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient_dim, self.basis.len())
            .cmp(&(other.ambient_dim, other.basis.len()))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl Subspace {
    /// Span of arbitrary vectors (dependent vectors are dropped).
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        let vectors: Vec<Vec<Rational>> = vectors.into_iter().filter(|v| !v.is_empty()).collect();
        let basis = if vectors.is_empty() {
            Vec::new()
        } else {
            rref(&vectors).0
        };
        Subspace { ambient_dim, basis }
    }

    /// Span of linearly independent vectors; dependence is reported as an error.
    pub fn from_basis(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::Mismatch(format!(
                "basis vector of length {} in Q^{ambient_dim}",
                v.len()
            )));
        }
        let n = vectors.len();
        let s = Self::span(ambient_dim, vectors);
        if s.dim() != n {
            return Err(Error::malformed(format!(
                "basis vectors are linearly dependent (rank {} < {n})",
                s.dim()
            )));
        }
        Ok(s)
    }

    pub fn from_int_basis(ambient_dim: usize, vectors: &[&[i64]]) -> Result<Self> {
        Self::from_basis(
            ambient_dim,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn full(d: usize) -> Self {
        Self::span(d, Matrix::<Rational>::identity(d).to_rows())
    }

    pub fn zero(d: usize) -> Self {
        Subspace {
            ambient_dim: d,
            basis: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// `sum_i c_i b_i` over the stored basis.
    pub fn combination(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![rat(0); self.ambient_dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if Field::is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        if v.iter().all(Field::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(&rows).1.len() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Mismatch(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient_dim, v))
    }

    /// Euclidean annihilator `{x : b . x = 0 for all basis b}` (no form involved).
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        kernel(&self.basis, self.ambient_dim)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let mut rows = self.annihilator();
        rows.extend(other.annihilator());
        if rows.is_empty() {
            return Ok(Subspace::full(self.ambient_dim));
        }
        Ok(Subspace::span(self.ambient_dim, kernel(&rows, self.ambient_dim)))
    }

    /// Coordinates of `v` in the stored basis, or `None` when `v` is not in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let b = Matrix::from_cols(&self.basis, self.ambient_dim);
        crate::linalg::solve(&b, v)
    }
}

/// Sum of two subspaces.
pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

/// Intersection of two subspaces.
pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

/// Convenience: integer vector to rationals.
pub fn ivec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}
