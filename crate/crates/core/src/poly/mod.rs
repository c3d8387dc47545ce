//! Dense univariate polynomials over a [`FieldSpec`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{same_field, FieldElement, FieldError, FieldSpec};
use crate::theory::Partition;

mod factor;
mod oracle;
pub(crate) mod raw;

pub use factor::Factorization;
pub use oracle::ORACLE_MAX_DEGREE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different fields")]
    Mismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation is undefined for the zero polynomial")]
    Zero,
    #[error("operation requires a nonconstant polynomial")]
    Constant,
    #[error("operation requires a monic polynomial")]
    NotMonic,
    #[error("formal degree {formal} is below the actual degree {actual}")]
    FormalDegree { formal: usize, actual: usize },
    #[error("degree {0} exceeds the oracle limit of {ORACLE_MAX_DEGREE}")]
    OracleDegree(usize),
    #[error("splitting field of degree {0} over F_p is too large for the oracle")]
    OracleField(u64),
    #[error("invalid coefficient list {0:?}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A polynomial with coefficients in `spec`, constant term first.
#[derive(Clone)]
pub struct Poly {
    spec: Arc<FieldSpec>,
    coeffs: Vec<u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.spec, &other.spec)
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.spec.q(), self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Builds a polynomial from coefficient encodings, trimming leading zeros.
    pub fn new(spec: &Arc<FieldSpec>, mut coeffs: Vec<u32>) -> Result<Self, PolyError> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= spec.q()) {
            return Err(FieldError::Encoding { enc: bad as u64, q: spec.q() }.into());
        }
        raw::trim(&mut coeffs);
        Ok(Poly { spec: Arc::clone(spec), coeffs })
    }

    pub(crate) fn from_raw(spec: &Arc<FieldSpec>, mut coeffs: Vec<u32>) -> Self {
        raw::trim(&mut coeffs);
        Poly { spec: Arc::clone(spec), coeffs }
    }

    pub fn from_elements(spec: &Arc<FieldSpec>, coeffs: &[FieldElement]) -> Result<Self, PolyError> {
        if coeffs.iter().any(|c| !same_field(spec, c.spec())) {
            return Err(PolyError::Mismatch);
        }
        Ok(Self::from_raw(spec, coeffs.iter().map(FieldElement::enc).collect()))
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        Poly { spec: Arc::clone(spec), coeffs: Vec::new() }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        Poly { spec: Arc::clone(spec), coeffs: vec![1] }
    }

    /// The polynomial `x`.
    pub fn x(spec: &Arc<FieldSpec>) -> Self {
        Poly { spec: Arc::clone(spec), coeffs: vec![0, 1] }
    }

    /// Parses the comma-separated encoding list used on the command line,
    /// constant term first: `"1,0,1"` is `x^2 + 1`.
    pub fn parse(spec: &Arc<FieldSpec>, text: &str) -> Result<Self, PolyError> {
        let coeffs = text
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PolyError::Parse(text.to_string()))?;
        Self::new(spec, coeffs)
    }

    /// Inverse of [`Poly::parse`]; the zero polynomial renders as `"0"`.
    pub fn to_coeff_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let s: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        s.join(",")
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    /// Coefficient encodings, constant term first.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        FieldElement::from_raw(&self.spec, self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        raw::degree(&self.coeffs)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().map(|&c| FieldElement::from_raw(&self.spec, c))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement, PolyError> {
        self.check_elem(x)?;
        Ok(FieldElement::from_raw(&self.spec, raw::eval(&self.spec, &self.coeffs, x.enc())))
    }

    /// Canonical order: by degree, then coefficients compared from the top down.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    fn check(&self, other: &Poly) -> Result<(), PolyError> {
        if same_field(&self.spec, &other.spec) {
            Ok(())
        } else {
            Err(PolyError::Mismatch)
        }
    }

    fn check_elem(&self, e: &FieldElement) -> Result<(), PolyError> {
        if same_field(&self.spec, e.spec()) {
            Ok(())
        } else {
            Err(PolyError::Mismatch)
        }
    }

    fn nonconstant(&self) -> Result<usize, PolyError> {
        match self.degree() {
            None => Err(PolyError::Zero),
            Some(0) => Err(PolyError::Constant),
            Some(m) => Ok(m),
        }
    }

    fn nonconstant_monic(&self) -> Result<usize, PolyError> {
        let m = self.nonconstant()?;
        if !self.is_monic() {
            return Err(PolyError::NotMonic);
        }
        Ok(m)
    }

    fn wrap(&self, coeffs: Vec<u32>) -> Poly {
        Poly { spec: Arc::clone(&self.spec), coeffs }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        Ok(self.wrap(raw::add(&self.spec, &self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        Ok(self.wrap(raw::sub(&self.spec, &self.coeffs, &other.coeffs)))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        Ok(self.wrap(raw::mul(&self.spec, &self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Poly, PolyError> {
        self.check_elem(c)?;
        Ok(self.wrap(raw::scale(&self.spec, &self.coeffs, c.enc())))
    }

    /// `(quotient, remainder)` with `deg r < deg g` or `r = 0`.
    pub fn div_rem(&self, g: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.check(g)?;
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (q, r) = raw::divrem(&self.spec, &self.coeffs, &g.coeffs);
        Ok((self.wrap(q), self.wrap(r)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        Ok(self.wrap(raw::gcd(&self.spec, &self.coeffs, &other.coeffs)))
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(&self.spec);
        for _ in 0..n {
            acc = acc.wrap(raw::mul(&self.spec, &acc.coeffs, &self.coeffs));
        }
        acc
    }

    /// Formal derivative; may be zero in characteristic `p`.
    pub fn derivative(&self) -> Result<Poly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::Zero);
        }
        let mut out = Vec::new();
        raw::derivative_into(&self.spec, &self.coeffs, &mut out);
        Ok(self.wrap(out))
    }

    /// Sylvester resultant of `self` and `g`, with `g` optionally padded to a
    /// formal degree so that leading zero coefficients count as rows.
    pub fn resultant(&self, g: &Poly, formal_deg_g: Option<usize>) -> Result<FieldElement, PolyError> {
        self.check(g)?;
        let n = self.degree().ok_or(PolyError::Zero)?;
        let actual = match (g.degree(), formal_deg_g) {
            (Some(d), Some(formal)) if formal < d => {
                return Err(PolyError::FormalDegree { formal, actual: d });
            }
            (Some(d), _) => d,
            (None, Some(formal)) => {
                // A zero row block makes the determinant vanish unless it is empty.
                let fs = &self.spec;
                let v = if n == 0 { fs.pow(self.coeffs[0], formal as u64) } else { 0 };
                return Ok(FieldElement::from_raw(&self.spec, v));
            }
            (None, None) => return Err(PolyError::Zero),
        };
        let fs = &self.spec;
        let mut a = self.coeffs.clone();
        let mut b = g.coeffs.clone();
        let res = raw::resultant_in_place(fs, &mut a, &mut b);
        let pad = formal_deg_g.map_or(0, |formal| formal - actual);
        let lead = *self.coeffs.last().unwrap();
        Ok(FieldElement::from_raw(fs, fs.mul(res, fs.pow(lead, pad as u64))))
    }

    /// `disc(f) = a_m^{2m-2} ∏_{i<j} (α_i - α_j)^2`, computed as
    /// `(-1)^{m(m-1)/2} Res(f, f') / a_m` with `f'` at formal degree `m - 1`.
    /// Linear polynomials have discriminant 1.
    pub fn discriminant(&self) -> Result<FieldElement, PolyError> {
        let m = self.nonconstant()?;
        let fs = &self.spec;
        if m == 1 {
            return Ok(FieldElement::from_raw(fs, 1));
        }
        if self.is_monic() {
            let mut ws = raw::Workspace::new();
            return Ok(FieldElement::from_raw(fs, ws.disc_monic(fs, &self.coeffs)));
        }
        let res = self.resultant(&self.derivative()?, Some(m - 1))?;
        let lead = *self.coeffs.last().unwrap();
        let v = fs.mul(raw::disc_sign(fs, m), fs.mul(res.enc(), fs.inv(lead)));
        Ok(FieldElement::from_raw(fs, v))
    }

    /// `γ_c(f) = c^{deg f} f(x / c)`.
    pub fn gamma(&self, c: &FieldElement) -> Result<Poly, PolyError> {
        self.check_elem(c)?;
        let m = self.degree().ok_or(PolyError::Zero)?;
        if c.is_zero() {
            return Err(FieldError::ZeroInverse.into());
        }
        let fs = &self.spec;
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| fs.mul(a, fs.pow(c.enc(), (m - i) as u64)))
            .collect();
        Ok(self.wrap(out))
    }

    /// `f(x + t)`, by Horner's rule in `(x + t)`.
    pub fn translate(&self, t: &FieldElement) -> Result<Poly, PolyError> {
        self.check_elem(t)?;
        if self.is_zero() {
            return Err(PolyError::Zero);
        }
        let fs = &self.spec;
        let shift = [t.enc(), 1];
        let mut acc: Vec<u32> = Vec::new();
        for &c in self.coeffs.iter().rev() {
            acc = raw::mul(fs, &acc, &shift);
            acc = raw::add(fs, &acc, &[c]);
        }
        Ok(self.wrap(acc))
    }

    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        self.nonconstant_monic()?;
        Ok(raw::Workspace::new().is_squarefree(&self.spec, &self.coeffs))
    }

    /// Degrees of the distinct irreducible factors, via distinct-degree
    /// splitting only; `None` when `f` is not squarefree.
    pub fn factorization_type(&self) -> Result<Option<Partition>, PolyError> {
        self.nonconstant_monic()?;
        let mut ws = raw::Workspace::new();
        if !ws.is_squarefree(&self.spec, &self.coeffs) {
            return Ok(None);
        }
        ws.factor_degrees(&self.spec, &self.coeffs);
        Ok(Some(Partition::from_sorted(ws.parts.clone())))
    }

    pub fn is_irreducible(&self) -> Result<bool, PolyError> {
        self.nonconstant()?;
        let mut monic = self.coeffs.clone();
        raw::make_monic(&self.spec, &mut monic);
        Ok(raw::Workspace::new().is_irreducible_monic(&self.spec, &monic))
    }

    /// `μ(f)`: 0 unless squarefree, otherwise `(-1)^{#irreducible factors}`.
    pub fn mobius(&self) -> Result<i32, PolyError> {
        Ok(match self.factorization_type()? {
            None => 0,
            Some(t) if t.len() % 2 == 0 => 1,
            Some(_) => -1,
        })
    }
}
