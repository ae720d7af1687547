use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{bilinear, euclid, in_open_set, ComplexVector};
use crate::error::{Error, Result};
use crate::field::{rat_to_f64, Rational};
use crate::linalg::{lift, lift_vec, Matrix};
use crate::monodromy::{log_unipotent, MonodromyOperator, NilpotentData};
use crate::qspace::{QuadraticSpace, Subspace, SubspaceClass};

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodSample {
    pub w: Complex64,
    pub alpha: ComplexVector,
}

/// Finitely many values `a(w)` of a multivalued period map on the upper half-plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodSampleSet {
    pub monodromy: MonodromyOperator,
    pub samples: Vec<PeriodSample>,
}

impl PeriodSampleSet {
    /// Samples of `a(w) = exp(wN)(a0 + s b)`, `s = exp(2 pi i w)`.
    pub fn synthetic(monodromy: MonodromyOperator, nd: &NilpotentData, alpha0: &[Complex64], beta: &[Complex64], ws: &[Complex64]) -> Self {
        let samples = ws
            .iter()
            .map(|&w| {
                let s = (Complex64::i() * 2.0 * PI * w).exp();
                let phi: Vec<Complex64> = alpha0.iter().zip(beta).map(|(a, b)| a + s * b).collect();
                let alpha = nd.one_param(&w).mul_vec(&phi);
                PeriodSample {
                    w,
                    alpha: ComplexVector::Numeric(alpha),
                }
            })
            .collect();
        PeriodSampleSet { monodromy, samples }
    }
}

/// One untwisted sample `phi = exp(-wN) a(w)` at `s = exp(2 pi i w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Untwisted {
    pub w: Complex64,
    pub s: Complex64,
    pub phi: Vec<Complex64>,
}

/// Sine of the angle between two complex lines.
fn line_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let aa: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let bb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    if aa == 0.0 || bb == 0.0 {
        return if aa == bb { 0.0 } else { 1.0 };
    }
    let ab: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let c = ab / aa;
    let r: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (y - c * x).norm_sqr())
        .sum();
    (r / bb).sqrt()
}

fn check_nilpotent_matches(ps: &PeriodSampleSet, nd: &NilpotentData) -> Result<()> {
    let n = log_unipotent(&ps.monodromy)?;
    if n != nd.n {
        return Err(Error::Mismatch(
            "nilpotent data is not the logarithm of the sample monodromy".into(),
        ));
    }
    Ok(())
}

/// Untwist every sample and verify that samples whose parameters differ by a
/// nonzero integer give the same line.
pub fn untwist(ps: &PeriodSampleSet, nd: &NilpotentData, tol: f64) -> Result<Vec<Untwisted>> {
    check_nilpotent_matches(ps, nd)?;
    let space = ps.monodromy.space();
    let mut out = Vec::with_capacity(ps.samples.len());
    for (i, smp) in ps.samples.iter().enumerate() {
        if !(smp.w.im > 0.0) {
            return Err(Error::malformed(format!(
                "samples[{i}].w must lie in the upper half-plane"
            )));
        }
        if !in_open_set(space, &smp.alpha, tol)? {
            return Err(Error::malformed(format!(
                "samples[{i}].alpha violates a.a = 0, a.conj(a) < 0"
            )));
        }
        let phi = nd.one_param(&(-smp.w)).mul_vec(&smp.alpha.to_numeric());
        let s = (Complex64::i() * 2.0 * PI * smp.w).exp();
        out.push(Untwisted { w: smp.w, s, phi });
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let dw = out[j].w - out[i].w;
            let scale = 1.0 + out[i].w.norm().max(out[j].w.norm());
            let k = dw.re.round();
            let deck = k != 0.0 && (dw.re - k).abs() <= tol * scale && dw.im.abs() <= tol * scale;
            if !deck {
                continue;
            }
            let dist = line_distance(&out[i].phi, &out[j].phi);
            if dist > tol * scale * scale {
                return Err(Error::InconsistentSamples(format!(
                    "samples {i} and {j} differ by the deck transformation w -> w{k:+} but their \
                     untwisted lines differ (sin angle {dist:.3e}); expected P(w+1) = T P(w)"
                )));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitOptions {
    /// Degree of the least-squares polynomial in `s`.
    pub degree: usize,
    /// Maximum accepted relative residual.
    pub threshold: f64,
    /// Tolerance for the membership and consistency checks.
    pub tol: f64,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions {
            degree: 3,
            threshold: super::EXTRAPOLATION_TOL,
            tol: super::MEMBERSHIP_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitLine {
    /// Unit vector spanning `F_lim`, first nonzero coordinate positive real.
    pub f_lim: Vec<Complex64>,
    /// Relative Frobenius residual of the fit.
    pub residual: f64,
    pub degree: usize,
    pub samples_used: usize,
}

/// Scale to unit length with the first nonzero coordinate on the positive real axis.
pub fn normalize_line(v: &[Complex64]) -> Vec<Complex64> {
    let n = euclid(v);
    if n == 0.0 {
        return v.to_vec();
    }
    let max = v.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let lead = v
        .iter()
        .find(|z| z.norm() > 1e-12 * max)
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = lead.conj() / lead.norm();
    v.iter().map(|z| z * phase / n).collect()
}

/// Extrapolate the untwisted samples to `s = 0`.
pub fn limit_line(ps: &PeriodSampleSet, nd: &NilpotentData, opts: &LimitOptions) -> Result<LimitLine> {
    let mut pts = untwist(ps, nd, opts.tol)?;
    // One representative per value of s.
    pts.sort_by(|a, b| a.s.norm().total_cmp(&b.s.norm()));
    let mut uniq: Vec<Untwisted> = Vec::new();
    for p in pts {
        if !uniq
            .iter()
            .any(|q| (q.s - p.s).norm() <= opts.tol * (1.0 + q.s.norm()))
        {
            uniq.push(p);
        }
    }
    let m = uniq.len();
    let deg = opts.degree;
    if m < deg + 1 {
        return Err(Error::malformed(format!(
            "{m} distinct values of s cannot determine a degree-{deg} fit"
        )));
    }
    // Work with phi / phi_i for a fixed coordinate i, which removes any
    // holomorphic rescaling of the sampled representatives.
    let first = &uniq[0].phi;
    let idx = (0..first.len())
        .max_by(|&a, &b| first[a].norm().total_cmp(&first[b].norm()))
        .ok_or_else(|| Error::malformed("empty vectors"))?;
    let d = first.len();
    let smax = uniq.iter().fold(0.0f64, |acc, p| acc.max(p.s.norm()));
    let scale = if smax > 0.0 { smax } else { 1.0 };
    let mut vand = DMatrix::<Complex64>::zeros(m, deg + 1);
    let mut rhs = DMatrix::<Complex64>::zeros(m, d);
    for (r, p) in uniq.iter().enumerate() {
        let pivot = p.phi[idx];
        if pivot.norm() == 0.0 {
            return Err(Error::NoConvergence {
                residual: f64::INFINITY,
                threshold: opts.threshold,
                detail: "normalizing coordinate vanishes on a sample".into(),
            });
        }
        let t = p.s / scale;
        let mut tk = Complex64::new(1.0, 0.0);
        for k in 0..=deg {
            vand[(r, k)] = tk;
            tk *= t;
        }
        for c in 0..d {
            rhs[(r, c)] = p.phi[c] / pivot;
        }
    }
    let svd = vand.clone().svd(true, true);
    let coef = svd
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::NoConvergence {
            residual: f64::INFINITY,
            threshold: opts.threshold,
            detail: e.to_string(),
        })?;
    let fit = &vand * &coef;
    let residual = (fit - &rhs).norm() / rhs.norm();
    if !(residual <= opts.threshold) {
        return Err(Error::NoConvergence {
            residual,
            threshold: opts.threshold,
            detail: format!("degree {deg} fit on {m} samples"),
        });
    }
    let constant: Vec<Complex64> = (0..d).map(|c| coef[(0, c)]).collect();
    Ok(LimitLine {
        f_lim: normalize_line(&constant),
        residual,
        degree: deg,
        samples_used: m,
    })
}

/// The limit of the raw lines `P(w)` as `Im w -> infinity`: `N^k F_lim` for
/// the largest `k` with `N^k F_lim != 0`, normalized.
pub fn boundary_line(f_lim: &[Complex64], nd: &NilpotentData, tol: f64) -> Vec<Complex64> {
    let n: Matrix<Complex64> = lift(&nd.n);
    let nnorm = nd
        .n
        .to_rows()
        .iter()
        .flatten()
        .map(|x| rat_to_f64(x).powi(2))
        .sum::<f64>()
        .sqrt();
    let mut v = f_lim.to_vec();
    loop {
        let next = n.mul_vec(&v);
        if euclid(&next) <= tol * nnorm * euclid(&v) || euclid(&next) == 0.0 {
            break;
        }
        v = next;
    }
    normalize_line(&v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityReport {
    /// `max |v . F| / |F|` over the canonical basis of `V`.
    pub max_ratio: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Check `F ⊥ V` numerically.
pub fn check_limit_orthogonality(space: &QuadraticSpace, f: &[Complex64], v: &Subspace, tol: f64) -> Result<OrthogonalityReport> {
    space.check_subspace(v)?;
    if f.len() != space.dim() {
        return Err(Error::Mismatch("F has the wrong length".into()));
    }
    let fnorm = euclid(f);
    if fnorm == 0.0 {
        return Err(Error::malformed("F is the zero vector"));
    }
    let mut max_ratio = 0.0f64;
    for b in v.basis() {
        let bc: Vec<Complex64> = lift_vec(b);
        max_ratio = max_ratio.max(bilinear(space, &bc, f).norm() / fnorm);
    }
    Ok(OrthogonalityReport {
        max_ratio,
        tol,
        passed: max_ratio <= tol,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightPiece {
    pub name: &'static str,
    pub dim: usize,
    pub weight: usize,
}

/// The mixed Hodge structure on `V*` attached to a positive semidefinite `V`
/// and a line `F` in `V*`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitMhs {
    pub v0: Subspace,
    pub class: Option<SubspaceClass>,
    /// `(V/V_0)*` has weight 0; `V_0*` has weight `dim V_0`.
    pub pieces: Vec<WeightPiece>,
    /// Whether `F` restricts nontrivially to `V_0` (`None` when `V_0 = 0`).
    pub projects_nontrivially: Option<bool>,
    /// `V_0 = 0`, or `F` projects nontrivially to `V_0*`.
    pub hodge_consistent: bool,
}

/// The values `v_i . F` of the functional defined by a vector `F` on the
/// canonical basis of `V`.
pub fn functional_from_vector(space: &QuadraticSpace, v: &Subspace, f: &[Complex64]) -> Vec<Complex64> {
    v.basis()
        .iter()
        .map(|b| bilinear(space, &lift_vec::<Complex64>(b), f))
        .collect()
}

/// Assemble the limit structure on `V*`. `functional` lists the values of a
/// generator of `F` on the canonical basis of `V`.
pub fn limit_mhs(space: &QuadraticSpace, v: &Subspace, functional: &[Complex64], tol: f64) -> Result<LimitMhs> {
    space.check_subspace(v)?;
    if functional.len() != v.dim() {
        return Err(Error::Mismatch(format!(
            "functional has {} values but dim V = {}",
            functional.len(),
            v.dim()
        )));
    }
    let sig = space.restricted_signature(v)?;
    if !sig.is_positive_semidefinite() {
        return Err(Error::Classification(format!(
            "V has signature {sig}; the limit structure needs V positive semidefinite"
        )));
    }
    let fnorm = euclid(functional);
    if v.dim() > 0 && fnorm == 0.0 {
        return Err(Error::malformed("F must be spanned by a nonzero functional"));
    }
    let v0 = space.radical(v)?;
    let class = match v0.dim() {
        0 => Some(SubspaceClass::Type1),
        1 => Some(SubspaceClass::Type3),
        2 => Some(SubspaceClass::Type2),
        _ => None,
    };
    let mut pieces = Vec::new();
    if v.dim() > v0.dim() {
        pieces.push(WeightPiece {
            name: "(V/V0)*",
            dim: v.dim() - v0.dim(),
            weight: 0,
        });
    }
    if v0.dim() > 0 {
        pieces.push(WeightPiece {
            name: "V0*",
            dim: v0.dim(),
            weight: v0.dim(),
        });
    }
    let projects_nontrivially = if v0.is_zero() {
        None
    } else {
        let mut max = 0.0f64;
        for b in v0.basis() {
            let coords: Vec<Rational> = v
                .coordinates(b)
                .ok_or_else(|| Error::malformed("radical not contained in V"))?;
            let val: Complex64 = coords
                .iter()
                .zip(functional)
                .map(|(c, f)| f * rat_to_f64(c))
                .sum();
            max = max.max(val.norm());
        }
        Some(max > tol * fnorm)
    };
    Ok(LimitMhs {
        hodge_consistent: projects_nontrivially.unwrap_or(true),
        v0,
        class,
        pieces,
        projects_nontrivially,
    })
}
