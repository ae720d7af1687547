//! JSON reading and writing for the shared document shapes.
//!
//! Rationals are strings `"p/q"` (integers may also be plain numbers),
//! matrices are row-major arrays, a quadratic space is
//! `{"dim": d, "gram": [[...]]}`, a subspace is `{"basis": [[...]]}`. Complex
//! numbers are `[re, im]` floats or exact `{"re": "p/q", "im": "p/q"}`; an
//! element `a + b ζ_l` of a cyclotomic field is `{"a": .., "b": .., "l": l}`.
//! Every reader carries the JSON path of the value so schema errors can name
//! the offending location.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{GaussianRational, Rational};
use crate::linalg::Matrix;
use crate::period::ComplexVector;
use crate::qspace::{CyclotomicElement, QuadraticSpace, Signature, Subspace};

/// A JSON value together with its path from the document root.
#[derive(Clone, Copy, Debug)]
pub struct Doc<'a> {
    pub value: &'a Value,
    path: &'a str,
}

/// Owned path storage so child documents can borrow it.
pub struct Path(String);

impl Path {
    pub fn new(path: impl Into<String>) -> Self {
        Path(path.into())
    }
}

impl<'a> Doc<'a> {
    pub fn root(value: &'a Value) -> Self {
        Doc { value, path: "$" }
    }

    pub fn path(&self) -> &str {
        self.path
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::schema(self.path, msg)
    }

    fn child_path(&self, key: &str) -> Path {
        Path(format!("{}.{key}", self.path))
    }

    /// Borrow a child using path storage owned by the caller.
    pub fn with<'b>(value: &'b Value, path: &'b Path) -> Doc<'b> {
        Doc { value, path: &path.0 }
    }

    pub fn has(&self, key: &str) -> bool {
        self.value.get(key).is_some_and(|v| !v.is_null())
    }

    pub fn is_object(&self) -> bool {
        self.value.is_object()
    }

    /// Apply `f` to the required field `key`.
    pub fn field<T>(&self, key: &str, f: impl FnOnce(Doc<'_>) -> Result<T>) -> Result<T> {
        if !self.value.is_object() {
            return Err(self.err("expected an object"));
        }
        match self.value.get(key) {
            Some(v) if !v.is_null() => {
                let p = self.child_path(key);
                f(Doc::with(v, &p))
            }
            _ => Err(self.err(format!("missing field \"{key}\""))),
        }
    }

    /// Apply `f` to the optional field `key`.
    pub fn opt<T>(&self, key: &str, f: impl FnOnce(Doc<'_>) -> Result<T>) -> Result<Option<T>> {
        match self.value.get(key) {
            Some(v) if !v.is_null() => {
                let p = self.child_path(key);
                f(Doc::with(v, &p)).map(Some)
            }
            _ => Ok(None),
        }
    }

    /// Apply `f` to each array element.
    pub fn each<T>(&self, mut f: impl FnMut(Doc<'_>) -> Result<T>) -> Result<Vec<T>> {
        let arr = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        arr.iter()
            .enumerate()
            .map(|(i, v)| {
                let p = Path(format!("{}[{i}]", self.path));
                f(Doc::with(v, &p))
            })
            .collect()
    }

    pub fn str(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.err("expected a string"))
    }

    pub fn bool(&self) -> Result<bool> {
        self.value.as_bool().ok_or_else(|| self.err("expected a boolean"))
    }

    pub fn i64(&self) -> Result<i64> {
        self.value.as_i64().ok_or_else(|| self.err("expected an integer"))
    }

    pub fn usize(&self) -> Result<usize> {
        self.value
            .as_u64()
            .and_then(|x| usize::try_from(x).ok())
            .ok_or_else(|| self.err("expected a nonnegative integer"))
    }

    pub fn f64(&self) -> Result<f64> {
        if let Some(x) = self.value.as_f64() {
            return Ok(x);
        }
        if let Some(s) = self.value.as_str() {
            if let Ok(q) = parse_rational(s) {
                return Ok(crate::field::rat_to_f64(&q));
            }
        }
        Err(self.err("expected a number"))
    }

    pub fn rational(&self) -> Result<Rational> {
        match self.value {
            Value::String(s) => parse_rational(s).map_err(|m| self.err(m)),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Rational::from_integer(i.into()))
                } else if let Some(u) = n.as_u64() {
                    Ok(Rational::from_integer(u.into()))
                } else {
                    Err(self.err("exact rationals must be integers or \"p/q\" strings"))
                }
            }
            _ => Err(self.err("expected a rational (\"p/q\" string or integer)")),
        }
    }

    pub fn rational_vec(&self) -> Result<Vec<Rational>> {
        self.each(|d| d.rational())
    }

    pub fn rational_matrix(&self) -> Result<Matrix<Rational>> {
        let rows = self.each(|d| d.rational_vec())?;
        if rows.is_empty() {
            return Ok(Matrix::zeros(0, 0));
        }
        Matrix::from_rows(rows).ok_or_else(|| self.err("rows have different lengths"))
    }

    pub fn square_matrix(&self, d: usize) -> Result<Matrix<Rational>> {
        let m = self.rational_matrix()?;
        if m.nrows() != d || m.ncols() != d {
            return Err(self.err(format!("expected a {d}x{d} matrix, got {}x{}", m.nrows(), m.ncols())));
        }
        Ok(m)
    }

    /// `{"dim": d, "gram": [[...]]}`; `dim` is optional and checked when present.
    pub fn space(&self) -> Result<QuadraticSpace> {
        let gram = self.field("gram", |d| d.rational_matrix())?;
        if !gram.is_square() {
            return Err(self.err("gram must be square"));
        }
        if let Some(dim) = self.opt("dim", |d| d.usize())? {
            if dim != gram.nrows() {
                return Err(self.err(format!("dim is {dim} but gram is {}x{}", gram.nrows(), gram.ncols())));
            }
        }
        QuadraticSpace::new(gram).map_err(|e| self.err(e.to_string()))
    }

    /// A vector of length `d`.
    pub fn vector(&self, d: usize) -> Result<Vec<Rational>> {
        let v = self.rational_vec()?;
        if v.len() != d {
            return Err(self.err(format!("expected {d} entries, got {}", v.len())));
        }
        Ok(v)
    }

    /// `{"basis": [[...]]}` or a bare array of basis vectors.
    pub fn subspace(&self, d: usize) -> Result<Subspace> {
        let vecs = if self.value.is_object() {
            self.field("basis", |b| b.each(|v| v.vector(d)))?
        } else {
            self.each(|v| v.vector(d))?
        };
        Ok(Subspace::span(d, vecs))
    }

    pub fn c64(&self) -> Result<Complex64> {
        match self.value {
            Value::Array(a) if a.len() == 2 => {
                let parts = self.each(|x| x.f64())?;
                Ok(Complex64::new(parts[0], parts[1]))
            }
            Value::Object(_) => {
                let g = self.gaussian()?;
                Ok(crate::field::ComplexScalar::to_c64(&g))
            }
            Value::Number(_) | Value::String(_) => Ok(Complex64::new(self.f64()?, 0.0)),
            _ => Err(self.err("expected a complex number [re, im] or {\"re\", \"im\"}")),
        }
    }

    /// Exact `{"re": "p/q", "im": "p/q"}` (either part may be omitted) or an
    /// exact real.
    pub fn gaussian(&self) -> Result<GaussianRational> {
        match self.value {
            Value::Object(_) => {
                let re = self.opt("re", |d| d.rational())?.unwrap_or_default();
                let im = self.opt("im", |d| d.rational())?.unwrap_or_default();
                Ok(GaussianRational::new(re, im))
            }
            _ => Ok(GaussianRational::new(self.rational()?, Rational::default())),
        }
    }

    /// A complex vector of length `d`; exact when every entry is an exact
    /// object, numeric when every entry is a `[re, im]` pair.
    pub fn complex_vector(&self, d: usize) -> Result<ComplexVector> {
        let arr = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        if arr.len() != d {
            return Err(self.err(format!("expected {d} entries, got {}", arr.len())));
        }
        let exact = arr.iter().all(|v| v.is_object() || v.is_string());
        let numeric = arr.iter().all(|v| v.is_array() || v.is_number());
        if exact {
            Ok(ComplexVector::Exact(self.each(|x| x.gaussian())?))
        } else if numeric {
            Ok(ComplexVector::Numeric(self.each(|x| x.c64())?))
        } else {
            Err(self.err("complex vector mixes exact and floating-point entries"))
        }
    }

    /// `{"a": .., "b": .., "l": ..}`, a rational, or an exact `{"re","im"}`
    /// read as `a + b i` (level 4).
    pub fn cyclotomic(&self, l: u32) -> Result<CyclotomicElement> {
        match self.value {
            Value::Object(m) if m.contains_key("re") || m.contains_key("im") => {
                if l != 4 {
                    return Err(self.err("{\"re\",\"im\"} entries need l = 4"));
                }
                let g = self.gaussian()?;
                Ok(CyclotomicElement::new(4, g.re, g.im))
            }
            Value::Object(_) => {
                let a = self.opt("a", |d| d.rational())?.unwrap_or_default();
                let b = self.opt("b", |d| d.rational())?.unwrap_or_default();
                if let Some(ll) = self.opt("l", |d| d.usize())? {
                    if ll as u32 != l {
                        return Err(self.err(format!("element has level {ll}, expected {l}")));
                    }
                }
                if l <= 2 && b != Rational::default() {
                    return Err(self.err(format!("zeta_{l} is rational; b must be 0")));
                }
                Ok(CyclotomicElement::new(l, a, b))
            }
            _ => Ok(CyclotomicElement::rational(self.rational()?)),
        }
    }
}

/// Parse `"p/q"`, `"p"`, or a decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: num_bigint::BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: num_bigint::BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if q == num_bigint::BigInt::from(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n: num_bigint::BigInt = digits.parse().map_err(|_| format!("bad decimal {s:?}"))?;
        let d = num_bigint::BigInt::from(10).pow(fp.len() as u32);
        let q = Rational::new(n, d);
        return Ok(if neg { -q } else { q });
    }
    s.parse::<num_bigint::BigInt>()
        .map(Rational::from_integer)
        .map_err(|_| format!("bad rational {s:?}"))
}

pub fn rat(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn rat_vec(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn rat_matrix(m: &Matrix<Rational>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| rat_vec(r)).collect())
}

pub fn subspace(s: &Subspace) -> Value {
    json!({"dim": s.dim(), "basis": s.basis().iter().map(|v| rat_vec(v)).collect::<Vec<_>>()})
}

pub fn signature(s: &Signature) -> Value {
    json!({"p": s.p, "q": s.q, "r": s.r})
}

pub fn c64(z: &Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn c64_vec(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(c64).collect())
}

pub fn gaussian(z: &GaussianRational) -> Value {
    json!({"re": rat(&z.re), "im": rat(&z.im)})
}

pub fn complex_vector(v: &ComplexVector) -> Value {
    match v {
        ComplexVector::Exact(x) => Value::Array(x.iter().map(gaussian).collect()),
        ComplexVector::Numeric(x) => c64_vec(x),
    }
}

pub fn cyclotomic(x: &CyclotomicElement) -> Value {
    json!({"a": rat(x.a()), "b": rat(x.b()), "l": x.level()})
}

pub fn cyclotomic_vec(v: &[CyclotomicElement]) -> Value {
    Value::Array(v.iter().map(cyclotomic).collect())
}
