use super::{signature_of, CyclotomicElement, QuadraticSpace, Signature};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::{kernel, lift, rref, Matrix};

type K = CyclotomicElement;

/// The `zeta_l`-eigenspace `H_chi` of a finite-order isometry.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenspaceData {
    pub rho: Matrix<Rational>,
    pub l: u32,
    /// A `Q(zeta_l)`-basis of `H_chi`, in reduced row-echelon form.
    pub chi_basis: Vec<Vec<CyclotomicElement>>,
    /// Signature of `h(a, b) = a . conj(b)` on `H_chi`.
    pub herm_signature: Signature,
}

impl EigenspaceData {
    pub fn dim(&self) -> usize {
        self.chi_basis.len()
    }

    /// Combination `sum_i c_i w_i` of the eigenbasis.
    pub fn combination(&self, coeffs: &[K]) -> Vec<K> {
        let d = self.rho.nrows();
        let mut out = vec![K::zero(); d];
        for (c, w) in coeffs.iter().zip(&self.chi_basis) {
            for (o, x) in out.iter_mut().zip(w) {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
        out
    }
}

/// Bilinear pairing `a^T G b` of vectors over `Q(zeta)`.
pub fn pair_k(space: &QuadraticSpace, a: &[K], b: &[K]) -> K {
    space.pair(a, b)
}

/// Hermitian pairing `h(a, b) = a . conj(b)`.
pub fn herm(space: &QuadraticSpace, a: &[K], b: &[K]) -> K {
    let bc: Vec<K> = b.iter().map(K::conj).collect();
    space.pair(a, &bc)
}

/// Reduce `Q(zeta)`-vectors to a canonical basis of their span.
pub fn k_span(vectors: &[Vec<K>]) -> Vec<Vec<K>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    rref(vectors).0
}

/// Symmetric rational Gram matrix of `Re h` on the `Q`-span of
/// `{w_i, zeta w_i}` (restriction of scalars). For `l <= 2` only `{w_i}` is used.
pub fn restriction_of_scalars(space: &QuadraticSpace, basis: &[Vec<K>], l: u32) -> Matrix<Rational> {
    let zeta = K::zeta(l);
    let mut qbasis: Vec<Vec<K>> = basis.to_vec();
    if l > 2 {
        qbasis.extend(
            basis
                .iter()
                .map(|w| w.iter().map(|x| zeta.clone() * x.clone()).collect::<Vec<_>>()),
        );
    }
    let n = qbasis.len();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = herm(space, &qbasis[i], &qbasis[j]).re();
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

/// Signature of the hermitian form on the `Q(zeta_l)`-span of `vectors`.
///
/// Computed from the rational signature of the restriction of scalars, which
/// doubles every inertia index when `l >= 3`.
pub fn hermitian_signature(space: &QuadraticSpace, vectors: &[Vec<K>], l: u32) -> Signature {
    let (s, _) = rational_hermitian_signature(space, vectors, l);
    s
}

/// Hermitian signature together with the raw signature of the rational
/// restriction of scalars.
pub fn rational_hermitian_signature(
    space: &QuadraticSpace,
    vectors: &[Vec<K>],
    l: u32,
) -> (Signature, Signature) {
    let basis = k_span(vectors);
    let m = restriction_of_scalars(space, &basis, l);
    let s = signature_of(&m).expect("restriction of scalars is symmetric");
    let h = if l > 2 {
        Signature::new(s.p / 2, s.q / 2, s.r / 2)
    } else {
        s
    };
    (h, s)
}

/// Compute `H_chi = ker(rho - zeta_l)` over `Q(zeta_l)` and its hermitian signature.
pub fn eigenspace_chi(space: &QuadraticSpace, rho: &Matrix<Rational>, l: u32) -> Result<EigenspaceData> {
    let d = space.dim();
    if !CyclotomicElement::is_supported(l) {
        return Err(Error::Unsupported(format!(
            "Q(zeta_{l}) has degree > 2; only l in {{1,2,3,4,6}} are supported"
        )));
    }
    if rho.nrows() != d || rho.ncols() != d {
        return Err(Error::Mismatch(format!(
            "rho is {}x{} but the space has dimension {d}",
            rho.nrows(),
            rho.ncols()
        )));
    }
    if !rho.pow(l).is_identity() {
        return Err(Error::malformed(format!("rho^{l} is not the identity")));
    }
    if rho.transpose().mul(space.gram()).mul(rho) != *space.gram() {
        return Err(Error::malformed("rho does not preserve the Gram matrix"));
    }
    let zeta = K::zeta(l);
    let rk: Matrix<K> = lift(rho);
    let shifted = rk.sub(&Matrix::identity(d).scale(&zeta));
    let chi_basis = k_span(&kernel(&shifted.to_rows(), d));
    for v in &chi_basis {
        let rv = rk.mul_vec(v);
        let zv: Vec<K> = v.iter().map(|x| zeta.clone() * x.clone()).collect();
        if rv != zv {
            return Err(Error::malformed("eigenvector check failed"));
        }
    }
    if l >= 3 {
        for a in &chi_basis {
            for b in &chi_basis {
                if !pair_k(space, a, b).is_zero() {
                    return Err(Error::malformed(
                        "H_chi is not isotropic for the bilinear form",
                    ));
                }
            }
        }
    }
    let herm_signature = hermitian_signature(space, &chi_basis, l);
    Ok(EigenspaceData {
        rho: rho.clone(),
        l,
        chi_basis,
        herm_signature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn rot() -> Vec<Vec<i64>> {
        vec![vec![0, -1], vec![1, 0]]
    }

    fn block_rho(blocks: usize) -> Matrix<Rational> {
        let mut m = Matrix::zeros(2 * blocks, 2 * blocks);
        for k in 0..blocks {
            for (i, row) in rot().iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    m[(2 * k + i, 2 * k + j)] = rat(x);
                }
            }
        }
        m
    }

    #[test]
    fn gauss_lattice_eigenspace() {
        let s = QuadraticSpace::diagonal(&[-2, -2]);
        let e = eigenspace_chi(&s, &block_rho(1), 4).unwrap();
        assert_eq!(e.dim(), 1);
        assert_eq!(e.herm_signature, Signature::new(0, 1, 0));
    }

    #[test]
    fn identity_has_no_primitive_eigenvalue() {
        let s = QuadraticSpace::diagonal(&[1, 1, -1]);
        let e = eigenspace_chi(&s, &Matrix::identity(3), 3).unwrap();
        assert_eq!(e.dim(), 0);
    }

    #[test]
    fn two_blocks_give_signature_one_one() {
        let s = QuadraticSpace::diagonal(&[2, 2, -2, -2]);
        let e = eigenspace_chi(&s, &block_rho(2), 4).unwrap();
        assert_eq!(e.herm_signature, Signature::new(1, 1, 0));
        let m = restriction_of_scalars(&s, &e.chi_basis, 4);
        assert_eq!(signature_of(&m).unwrap(), Signature::new(2, 2, 0));
    }

    #[test]
    fn invalid_inputs() {
        let s = QuadraticSpace::diagonal(&[-2, -2]);
        assert!(matches!(
            eigenspace_chi(&s, &block_rho(1), 5),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            eigenspace_chi(&s, &block_rho(1), 3),
            Err(Error::Malformed(_))
        ));
        let skew = QuadraticSpace::diagonal(&[1, 2]);
        assert!(matches!(
            eigenspace_chi(&skew, &block_rho(1), 4),
            Err(Error::Malformed(_))
        ));
    }
}
