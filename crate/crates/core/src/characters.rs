//! Continuous characters of Q_p^× with values in E^× or B^×.
//!
//! Q_p^× is generated by `p`, the roots of unity `μ_{p-1}` and the principal
//! units `1 + pZ_p = γ₀^{Z_p}`, so a character is stored by its value at `p`,
//! its value at `γ₀ = 1 + p`, and an exponent `j` describing
//! `ζ ↦ ζ^j` on the Teichmüller generator `ζ = ω(g)`.

use std::fmt;

use serde::Serialize;

use crate::cohomology::Homomorphism;
use crate::deformation::{self, DeformationContext, DeformationElement, MVector};
use crate::error::{Error, Result};
use crate::padic::{fp_poly, iwasawa_log, p_exp, recognize_integer, Field, FieldElement, PadicScalar};

/// Rings a character may take values in: E itself or `B = E ⊕ m`.
pub trait CharRing: Clone + PartialEq + fmt::Debug + fmt::Display {
    type Context: Clone + PartialEq + fmt::Debug;

    fn context(&self) -> Self::Context;
    fn context_field(ctx: &Self::Context) -> &Field;
    fn embed(ctx: &Self::Context, e: FieldElement) -> Self;
    fn body(&self) -> &FieldElement;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    fn inv(&self) -> Result<Self>;
    fn pow(&self, n: i64) -> Result<Self>;
    fn scale(&self, s: &FieldElement) -> Result<Self>;
    /// Iwasawa logarithm (extended to `B^×` when `Self = B`).
    fn log(&self) -> Result<Self>;
    fn exp(&self) -> Result<Self>;
}

impl CharRing for FieldElement {
    type Context = Field;

    fn context(&self) -> Field {
        self.field().clone()
    }
    fn context_field(ctx: &Field) -> &Field {
        ctx
    }
    fn embed(_ctx: &Field, e: FieldElement) -> Self {
        e
    }
    fn body(&self) -> &FieldElement {
        self
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        FieldElement::try_mul(self, other)
    }
    fn inv(&self) -> Result<Self> {
        FieldElement::inv(self)
    }
    fn pow(&self, n: i64) -> Result<Self> {
        FieldElement::pow(self, n)
    }
    fn scale(&self, s: &FieldElement) -> Result<Self> {
        FieldElement::try_mul(self, s)
    }
    fn log(&self) -> Result<Self> {
        iwasawa_log(self)
    }
    fn exp(&self) -> Result<Self> {
        p_exp(self)
    }
}

impl CharRing for DeformationElement {
    type Context = DeformationContext;

    fn context(&self) -> DeformationContext {
        DeformationElement::context(self)
    }
    fn context_field(ctx: &DeformationContext) -> &Field {
        ctx.field()
    }
    fn embed(ctx: &DeformationContext, e: FieldElement) -> Self {
        ctx.embed(e)
    }
    fn body(&self) -> &FieldElement {
        DeformationElement::body(self)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        DeformationElement::try_mul(self, other)
    }
    fn inv(&self) -> Result<Self> {
        DeformationElement::inv(self)
    }
    fn pow(&self, n: i64) -> Result<Self> {
        DeformationElement::pow(self, n)
    }
    fn scale(&self, s: &FieldElement) -> Result<Self> {
        DeformationElement::scale(self, s)
    }
    fn log(&self) -> Result<Self> {
        deformation::b_log(self)
    }
    fn exp(&self) -> Result<Self> {
        deformation::b_exp(self)
    }
}

/// A continuous character `Q_p^× → R^×`.
#[derive(Clone, PartialEq)]
pub struct Character<R: CharRing> {
    at_p: R,
    teich: u64,
    at_gamma: R,
}

pub type FieldCharacter = Character<FieldElement>;
pub type DeformedCharacter = Character<DeformationElement>;

impl<R: CharRing> Character<R> {
    /// `teich` is reduced mod `p - 1`.
    pub fn new(at_p: R, teich: i64, at_gamma: R) -> Result<Self> {
        let ctx = at_p.context();
        if at_gamma.context() != ctx {
            return Err(Error::RingMismatch("values at p and gamma0 live in different rings".into()));
        }
        if at_p.body().is_known_zero() {
            return Err(Error::NotAUnit);
        }
        let field = R::context_field(&ctx);
        let principal = at_gamma.body().try_sub(&field.one())?;
        if principal.valuation().is_some_and(|v| v < 1) {
            return Err(Error::DiscontinuousCharacter);
        }
        let order = field.prime() as i64 - 1;
        Ok(Character { at_p, teich: teich.rem_euclid(order) as u64, at_gamma })
    }

    pub fn trivial(ctx: &R::Context) -> Self {
        let one = R::embed(ctx, R::context_field(ctx).one());
        Character { at_p: one.clone(), teich: 0, at_gamma: one }
    }

    /// The identity character `x`.
    pub fn identity(ctx: &R::Context) -> Self {
        let f = R::context_field(ctx);
        Character {
            at_p: R::embed(ctx, f.from_int(f.prime() as i64)),
            teich: 1 % (f.prime() - 1),
            at_gamma: R::embed(ctx, f.from_scalar(f.gamma0())),
        }
    }

    /// The absolute value `|x|`: `p ↦ 1/p`, trivial on units.
    pub fn abs(ctx: &R::Context) -> Self {
        let f = R::context_field(ctx);
        let one = R::embed(ctx, f.one());
        Character { at_p: R::embed(ctx, f.p_power(-1)), teich: 0, at_gamma: one }
    }

    pub fn context(&self) -> R::Context {
        self.at_p.context()
    }

    pub fn field(&self) -> Field {
        R::context_field(&self.context()).clone()
    }

    pub fn at_p(&self) -> &R {
        &self.at_p
    }

    pub fn teich(&self) -> u64 {
        self.teich
    }

    pub fn at_gamma(&self) -> &R {
        &self.at_gamma
    }

    fn order(&self) -> u64 {
        self.field().prime() - 1
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.context() != other.context() {
            return Err(Error::RingMismatch("characters over different rings".into()));
        }
        Ok(Character {
            at_p: self.at_p.try_mul(&other.at_p)?,
            teich: (self.teich + other.teich) % self.order(),
            at_gamma: self.at_gamma.try_mul(&other.at_gamma)?,
        })
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Character {
            at_p: self.at_p.inv()?,
            teich: (self.order() - self.teich) % self.order(),
            at_gamma: self.at_gamma.inv()?,
        })
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        Ok(Character {
            at_p: self.at_p.pow(n)?,
            teich: (self.teich as i128 * n as i128).rem_euclid(self.order() as i128) as u64,
            at_gamma: self.at_gamma.pow(n)?,
        })
    }

    /// `δ(q)` for a nonzero rational `q = p^n · ζ^j · ⟨u⟩`:
    /// `δ(p)^n · ζ^(teich·j) · exp(s · log δ(γ₀))` with
    /// `s = log⟨u⟩ / log γ₀ ∈ Z_p`.
    pub fn eval(&self, q: &PadicScalar) -> Result<R> {
        let ctx = self.context();
        let field = R::context_field(&ctx);
        let n = q.valuation().ok_or_else(|| Error::InvalidArgument("cannot evaluate a character at 0".into()))?;
        let u = q.shift(-n);
        let p = field.prime();
        let residue = u.unit_residue().expect("nonzero");
        let j = fp_poly::discrete_log(residue, field.teich_generator(), p).expect("generator is primitive");
        let torsion_exp = (self.teich * j) % (p - 1);
        let torsion = R::embed(&ctx, field.from_scalar(field.zeta().clone()).pow(torsion_exp as i64)?);
        let s = iwasawa_log(&field.from_scalar(u))?.try_div(&field.from_scalar(field.log_gamma0().clone()))?;
        let principal = self.at_gamma.log()?.scale(&s)?.exp()?;
        self.at_p.pow(n)?.try_mul(&torsion)?.try_mul(&principal)
    }

    /// `wt(δ) = -log δ(γ₀) / log_p γ₀`, so that `wt(x·|x|) = -1`.
    pub fn weight(&self) -> Result<R> {
        let field = self.field();
        let lg = field.from_scalar(field.log_gamma0().clone());
        self.at_gamma.log()?.scale(&(-lg.inv()?))
    }

    /// The weight computed from another principal unit `γ ≠ 1`:
    /// `-log δ(γ) / log_p γ`.
    pub fn weight_at(&self, gamma: &PadicScalar) -> Result<R> {
        let field = self.field();
        let g = field.from_scalar(gamma.clone());
        if g.try_sub(&field.one())?.valuation().is_none_or(|v| v < 1) {
            return Err(Error::InvalidArgument("gamma must be a nontrivial principal unit".into()));
        }
        let lg = iwasawa_log(&g)?;
        self.eval(gamma)?.log()?.scale(&(-lg.inv()?))
    }
}

impl Character<FieldElement> {
    /// The canonical lift to B with zero tangents.
    pub fn lift(&self, ctx: &DeformationContext) -> Result<DeformedCharacter> {
        if ctx.field() != self.at_p.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(Character { at_p: ctx.embed(self.at_p.clone()), teich: self.teich, at_gamma: ctx.embed(self.at_gamma.clone()) })
    }
}

impl Character<DeformationElement> {
    /// `δ = δ₀ · (1 + δ₁)`: the body character and the homomorphism
    /// `δ₁ = d log δ` into m.
    pub fn decompose(&self) -> Result<(FieldCharacter, Homomorphism<MVector>)> {
        let body = Character {
            at_p: self.at_p.body().clone(),
            teich: self.teich,
            at_gamma: self.at_gamma.body().clone(),
        };
        let tangent = Homomorphism::new(deformation::dlog(&self.at_p)?, deformation::dlog(&self.at_gamma)?)?;
        Ok((body, tangent))
    }

    /// Inverse of [`Character::decompose`].
    pub fn recompose(body: &FieldCharacter, tangent: &Homomorphism<MVector>) -> Result<Self> {
        let mk = |e: &FieldElement, m: &MVector| DeformationElement::new(e.clone(), m.scale(e)?);
        Ok(Character {
            at_p: mk(body.at_p(), tangent.at_p())?,
            teich: body.teich,
            at_gamma: mk(body.at_gamma(), tangent.at_gamma())?,
        })
    }

    /// `δ₀`, the reduction to E.
    pub fn body_character(&self) -> FieldCharacter {
        Character { at_p: self.at_p.body().clone(), teich: self.teich, at_gamma: self.at_gamma.body().clone() }
    }
}

impl<R: CharRing> fmt::Display for Character<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{at_p: {}, teich: {}, at_gamma: {}}}", self.at_p, self.teich, self.at_gamma)
    }
}

impl<R: CharRing> fmt::Debug for Character<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// How `η₀` sits relative to `δ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", content = "k", rename_all = "lowercase")]
pub enum PairCase {
    /// Neither twist pattern applies.
    First,
    /// `η₀ = (x·|x|) x^k δ₀`.
    Second(u32),
    /// `η₀ = x^(-k) δ₀`.
    Third(u32),
}

impl fmt::Display for PairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairCase::First => write!(f, "first"),
            PairCase::Second(k) => write!(f, "second({k})"),
            PairCase::Third(k) => write!(f, "third({k})"),
        }
    }
}

/// Classify the pair `(δ₀, η₀)` through `ρ = η₀ δ₀⁻¹`, recognizing twists
/// `k <= k_max`.
pub fn classify_pair(delta0: &FieldCharacter, eta0: &FieldCharacter, k_max: u64) -> Result<PairCase> {
    let rho = eta0.mul(&delta0.inv()?)?;
    let field = rho.field();
    let weight = rho.weight()?;
    let Some(w) = recognize_integer(&weight, k_max) else {
        if let Some(w) = recognize_integer(&weight, u32::MAX as u64) {
            log::warn!("weight {w} exceeds K_max = {k_max}; classified as first");
        }
        return Ok(PairCase::First);
    };
    let order = field.prime() as i64 - 1;
    let gamma0 = field.from_scalar(field.gamma0());
    let matches = |at_p_exp: i64, teich: i64, gamma_exp: i64| -> Result<bool> {
        Ok(rho.at_p() == &field.p_power(at_p_exp)
            && rho.teich() as i64 == teich.rem_euclid(order)
            && rho.at_gamma() == &gamma0.pow(gamma_exp)?)
    };
    if w <= -1 {
        let k = -w - 1;
        if matches(k, k + 1, k + 1)? {
            return Ok(PairCase::Second(k as u32));
        }
    } else {
        let k = w;
        if matches(-k, -k, -k)? {
            return Ok(PairCase::Third(k as u32));
        }
    }
    Ok(PairCase::First)
}
