//! Finite classifiers for boundary pairs and K3 degenerations, plus the Gauss
//! lattice and tube-integral computations of the `μ_4` worked example.

mod lattice;
mod tube;

pub use lattice::{
    discriminant_form, gauss_lattice_report, smith_normal_form, DiscriminantElement, DiscriminantForm,
    GaussLatticeReport, MAX_DISCRIMINANT_ORDER,
};
pub use tube::{tube_density, tube_integral, MIN_POINTS};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPairDatum {
    /// `w(F)`: the weight offset of the subquotient containing `F`.
    pub weight_of_f: i64,
    pub context: String,
}

/// Type of any smoothing of a boundary pair: `w(F) + 1`.
pub fn boundary_pair_type(d: &BoundaryPairDatum) -> Result<u8> {
    match d.weight_of_f {
        w @ 0..=2 => Ok(w as u8 + 1),
        w => Err(Error::NotBoundaryPair(w)),
    }
}

/// Inverse of [`boundary_pair_type`].
pub fn weight_for_type(t: u8) -> Option<i64> {
    (1..=3).contains(&t).then(|| t as i64 - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularityLabel {
    /// A rational double point `A_n` (n >= 1), `D_n` (n >= 4), `E_6`, `E_7`, `E_8`.
    Ade(String),
    /// Simple-elliptic singularity; the degree is carried as metadata.
    SimpleElliptic(u32),
    Cusp,
    Other(String),
}

impl FromStr for SingularityLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Cusp" {
            return Ok(SingularityLabel::Cusp);
        }
        if s == "Other" {
            return Ok(SingularityLabel::Other(String::new()));
        }
        if let Some(rest) = s.strip_prefix("Other:") {
            return Ok(SingularityLabel::Other(rest.to_string()));
        }
        if let Some(rest) = s.strip_prefix("SimpleElliptic") {
            let deg = rest.strip_prefix(':').unwrap_or(rest);
            let deg: u32 = deg
                .parse()
                .map_err(|_| Error::malformed(format!("bad simple-elliptic degree in {s:?}")))?;
            return Ok(SingularityLabel::SimpleElliptic(deg));
        }
        let (kind, idx) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let n: u32 = idx
            .parse()
            .map_err(|_| Error::malformed(format!("unknown singularity label {s:?}")))?;
        let ok = match kind {
            "A" => n >= 1,
            "D" => n >= 4,
            "E" => (6..=8).contains(&n),
            _ => false,
        };
        if ok {
            Ok(SingularityLabel::Ade(s.to_string()))
        } else {
            Err(Error::malformed(format!("unknown singularity label {s:?}")))
        }
    }
}

impl fmt::Display for SingularityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityLabel::Ade(s) => write!(f, "{s}"),
            SingularityLabel::SimpleElliptic(d) => write!(f, "SimpleElliptic:{d}"),
            SingularityLabel::Cusp => write!(f, "Cusp"),
            SingularityLabel::Other(s) if s.is_empty() => write!(f, "Other"),
            SingularityLabel::Other(s) => write!(f, "Other:{s}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K3DegenerationType {
    FiniteMonodromy,
    Type2,
    Type3,
    Unknown,
}

impl K3DegenerationType {
    pub fn name(&self) -> &'static str {
        match self {
            K3DegenerationType::FiniteMonodromy => "FiniteMonodromy",
            K3DegenerationType::Type2 => "Type2",
            K3DegenerationType::Type3 => "Type3",
            K3DegenerationType::Unknown => "Unknown",
        }
    }

    /// The degeneration type as an integer, finite monodromy counting as 1.
    pub fn as_type(&self) -> Option<u8> {
        match self {
            K3DegenerationType::FiniteMonodromy => Some(1),
            K3DegenerationType::Type2 => Some(2),
            K3DegenerationType::Type3 => Some(3),
            K3DegenerationType::Unknown => None,
        }
    }
}

/// Degeneration type of a K3 surface with the given singularities. An
/// unclassified singularity blocks the answer; otherwise a cusp dominates a
/// simple-elliptic point, which dominates rational double points.
pub fn k3_degeneration_type(sings: &[SingularityLabel]) -> K3DegenerationType {
    if sings.iter().any(|s| matches!(s, SingularityLabel::Other(_))) {
        K3DegenerationType::Unknown
    } else if sings.contains(&SingularityLabel::Cusp) {
        K3DegenerationType::Type3
    } else if sings.iter().any(|s| matches!(s, SingularityLabel::SimpleElliptic(_))) {
        K3DegenerationType::Type2
    } else {
        K3DegenerationType::FiniteMonodromy
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    K3,
    Rational,
    EllipticRuled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualComplex {
    Point,
    Interval,
    TriangulatedTwoSphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoubleCurves {
    None,
    SmoothGenusOne,
    RationalCycles,
}

macro_rules! named_enum {
    ($t:ty { $($v:ident => $s:literal),* $(,)? }) => {
        impl $t {
            pub fn name(&self) -> &'static str {
                match self { $(Self::$v => $s),* }
            }
        }
        impl FromStr for $t {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($s => Ok(Self::$v),)*
                    _ => Err(Error::malformed(format!(
                        concat!("unknown ", stringify!($t), " {:?}"), s
                    ))),
                }
            }
        }
    };
}

named_enum!(ComponentKind { K3 => "K3", Rational => "Rational", EllipticRuled => "EllipticRuled" });
named_enum!(DualComplex { Point => "Point", Interval => "Interval", TriangulatedTwoSphere => "TriangulatedTwoSphere" });
named_enum!(DoubleCurves { None => "None", SmoothGenusOne => "SmoothGenusOne", RationalCycles => "RationalCycles" });

/// Central fiber of a Kulikov model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KulikovFiber {
    pub components: Vec<ComponentKind>,
    pub dual_complex: DualComplex,
    pub double_curves: DoubleCurves,
}

impl KulikovFiber {
    /// Check the consistency rules for the dual complex, naming the first
    /// violated one.
    pub fn validate(&self) -> Result<()> {
        let fail = |rule: &str| Err(Error::malformed(format!("inconsistent Kulikov fiber: {rule}")));
        match self.dual_complex {
            DualComplex::Point => {
                if self.components != [ComponentKind::K3] {
                    return fail("Point requires exactly one K3 component");
                }
                if self.double_curves != DoubleCurves::None {
                    return fail("Point requires no double curves");
                }
            }
            DualComplex::Interval => {
                let c = &self.components;
                if c.len() < 2 {
                    return fail("Interval requires a chain of at least two components");
                }
                if c[0] != ComponentKind::Rational || c[c.len() - 1] != ComponentKind::Rational {
                    return fail("Interval requires rational end components");
                }
                if c[1..c.len() - 1].iter().any(|k| *k != ComponentKind::EllipticRuled) {
                    return fail("Interval requires elliptic ruled middle components");
                }
                if self.double_curves != DoubleCurves::SmoothGenusOne {
                    return fail("Interval requires smooth genus one double curves");
                }
            }
            DualComplex::TriangulatedTwoSphere => {
                if self.components.is_empty() || self.components.iter().any(|k| *k != ComponentKind::Rational) {
                    return fail("TriangulatedTwoSphere requires all components rational");
                }
                if self.double_curves != DoubleCurves::RationalCycles {
                    return fail("TriangulatedTwoSphere requires cycles of rational double curves");
                }
            }
        }
        Ok(())
    }
}

/// Type 1, 2 or 3 of a consistent Kulikov fiber.
pub fn kulikov_classify(f: &KulikovFiber) -> Result<u8> {
    f.validate()?;
    Ok(match f.dual_complex {
        DualComplex::Point => 1,
        DualComplex::Interval => 2,
        DualComplex::TriangulatedTwoSphere => 3,
    })
}

/// Canonical fibers of each type.
pub fn canonical_kulikov_fibers() -> [KulikovFiber; 3] {
    use ComponentKind::*;
    [
        KulikovFiber {
            components: vec![K3],
            dual_complex: DualComplex::Point,
            double_curves: DoubleCurves::None,
        },
        KulikovFiber {
            components: vec![Rational, EllipticRuled, Rational],
            dual_complex: DualComplex::Interval,
            double_curves: DoubleCurves::SmoothGenusOne,
        },
        KulikovFiber {
            components: vec![Rational; 4],
            dual_complex: DualComplex::TriangulatedTwoSphere,
            double_curves: DoubleCurves::RationalCycles,
        },
    ]
}

/// Singularity data matching a Kulikov dual complex: none, one
/// simple-elliptic point, one cusp.
pub fn singularities_for(d: DualComplex) -> Vec<SingularityLabel> {
    match d {
        DualComplex::Point => vec![],
        DualComplex::Interval => vec![SingularityLabel::SimpleElliptic(1)],
        DualComplex::TriangulatedTwoSphere => vec![SingularityLabel::Cusp],
    }
}
