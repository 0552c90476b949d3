//! The first-order deformation `B = E ⊕ m` with `m² = 0`.
//!
//! `m` is modelled as `E^r` with a fixed basis, and the Kähler module
//! `Ω_{B/E}` is identified with `m` once and for all, so differentials are
//! plain [`MVector`]s.

use std::fmt;

use crate::error::{Error, Result};
use crate::padic::{iwasawa_log, p_exp, Field, FieldElement};

/// The field E together with `r = dim_E m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationContext {
    field: Field,
    dim: usize,
}

impl DeformationContext {
    pub fn new(field: Field, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dim m must be at least 1".into()));
        }
        Ok(DeformationContext { field, dim })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn zero_vector(&self) -> MVector {
        MVector { entries: vec![self.field.zero(); self.dim] }
    }

    /// The i-th basis vector `ε_i` of m.
    pub fn basis(&self, i: usize) -> MVector {
        let mut v = self.zero_vector();
        v.entries[i] = self.field.one();
        v
    }

    /// `(e, 0)`: the canonical section `E → B`.
    pub fn embed(&self, body: FieldElement) -> DeformationElement {
        DeformationElement { body, tangent: self.zero_vector() }
    }

    pub fn one(&self) -> DeformationElement {
        self.embed(self.field.one())
    }
}

/// An element of m (equivalently of `Ω_{B/E}`).
#[derive(Clone, PartialEq)]
pub struct MVector {
    entries: Vec<FieldElement>,
}

impl MVector {
    pub fn new(entries: Vec<FieldElement>) -> Result<Self> {
        let Some(first) = entries.first() else {
            return Err(Error::InvalidArgument("dim m must be at least 1".into()));
        };
        if entries.iter().any(|e| e.field() != first.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(MVector { entries })
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn field(&self) -> &Field {
        self.entries[0].field()
    }

    pub fn is_known_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_known_zero)
    }

    /// Known zero with every coordinate certified modulo `p^abs`.
    pub fn is_zero_mod(&self, abs: i64) -> bool {
        self.entries.iter().all(|e| e.is_zero_mod(abs))
    }

    pub fn abs_prec(&self) -> i64 {
        self.entries.iter().map(FieldElement::abs_prec).min().expect("dim >= 1")
    }

    pub fn valuation(&self) -> Option<i64> {
        self.entries.iter().filter_map(FieldElement::valuation).min()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::RingMismatch(format!("dim m = {} vs {}", self.dim(), other.dim())));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(MVector { entries })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(MVector { entries })
    }

    pub fn scale(&self, s: &FieldElement) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.try_mul(s)).collect::<Result<_>>()?;
        Ok(MVector { entries })
    }

    pub fn neg(&self) -> Self {
        MVector { entries: self.entries.iter().map(|e| -e).collect() }
    }

    pub fn to_field(&self, field: &Field) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.to_field(field)).collect::<Result<_>>()?;
        Ok(MVector { entries })
    }
}

impl fmt::Display for MVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Ring operations accepted by [`b_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BOp {
    Add,
    Mul,
    /// `a * b⁻¹`.
    Div,
}

pub fn b_arith(a: &DeformationElement, b: &DeformationElement, op: BOp) -> Result<DeformationElement> {
    match op {
        BOp::Add => a.try_add(b),
        BOp::Mul => a.try_mul(b),
        BOp::Div => a.try_div(b),
    }
}

/// `(e, m) ∈ E ⊕ m`.
#[derive(Clone, PartialEq)]
pub struct DeformationElement {
    body: FieldElement,
    tangent: MVector,
}

impl DeformationElement {
    pub fn new(body: FieldElement, tangent: MVector) -> Result<Self> {
        if body.field() != tangent.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(DeformationElement { body, tangent })
    }

    pub fn body(&self) -> &FieldElement {
        &self.body
    }

    pub fn tangent(&self) -> &MVector {
        &self.tangent
    }

    pub fn context(&self) -> DeformationContext {
        DeformationContext { field: self.body.field().clone(), dim: self.tangent.dim() }
    }

    pub fn is_unit(&self) -> bool {
        !self.body.is_known_zero()
    }

    pub fn is_known_zero(&self) -> bool {
        self.body.is_known_zero() && self.tangent.is_known_zero()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(DeformationElement { body: self.body.try_add(&other.body)?, tangent: self.tangent.try_add(&other.tangent)? })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(DeformationElement { body: self.body.try_sub(&other.body)?, tangent: self.tangent.try_sub(&other.tangent)? })
    }

    /// `(e, m)(e', m') = (ee', em' + e'm)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.tangent.check(&other.tangent)?;
        let body = self.body.try_mul(&other.body)?;
        let tangent = other.tangent.scale(&self.body)?.try_add(&self.tangent.scale(&other.body)?)?;
        Ok(DeformationElement { body, tangent })
    }

    /// `(e, m)⁻¹ = (e⁻¹, -e⁻² m)`.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let body = self.body.inv()?;
        let tangent = self.tangent.scale(&body.try_mul(&body)?)?.neg();
        Ok(DeformationElement { body, tangent })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// `(e, m)^n = (e^n, n e^(n-1) m)`.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        if n == 0 {
            return Ok(self.context().one());
        }
        let body = self.body.pow(n)?;
        let factor = self.body.pow(n - 1)?.try_mul(&self.body.field().from_int(n))?;
        Ok(DeformationElement { body, tangent: self.tangent.scale(&factor)? })
    }

    pub fn scale(&self, s: &FieldElement) -> Result<Self> {
        Ok(DeformationElement { body: self.body.try_mul(s)?, tangent: self.tangent.scale(s)? })
    }

    pub fn neg(&self) -> Self {
        DeformationElement { body: -&self.body, tangent: self.tangent.neg() }
    }

    pub fn to_field(&self, field: &Field) -> Result<Self> {
        Ok(DeformationElement { body: self.body.to_field(field)?, tangent: self.tangent.to_field(field)? })
    }
}

/// The Kähler differential: zero on E, the identity `m ≅ Ω_{B/E}` on m.
pub fn kahler_d(a: &DeformationElement) -> MVector {
    a.tangent.clone()
}

/// `d log a = d(a) / body(a)`.
pub fn dlog(a: &DeformationElement) -> Result<MVector> {
    if !a.is_unit() {
        return Err(Error::NotAUnit);
    }
    a.tangent.scale(&a.body.inv()?)
}

/// Logarithm on `B^×`: the Iwasawa logarithm on the body and `dlog` on the
/// tangent.
pub fn b_log(a: &DeformationElement) -> Result<DeformationElement> {
    if !a.is_unit() {
        return Err(Error::NotAUnit);
    }
    Ok(DeformationElement { body: iwasawa_log(&a.body)?, tangent: dlog(a)? })
}

/// `exp(e, m) = (exp e, exp(e) m)` for `v(e) >= 1`.
pub fn b_exp(a: &DeformationElement) -> Result<DeformationElement> {
    let body = p_exp(&a.body)?;
    let tangent = a.tangent.scale(&body)?;
    Ok(DeformationElement { body, tangent })
}

impl fmt::Display for DeformationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{body: {}, tangent: {}}}", self.body, self.tangent)
    }
}

impl fmt::Debug for DeformationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
