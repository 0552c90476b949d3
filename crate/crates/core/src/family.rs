//! Differentials of B-valued characters along a first-order family, the
//! differential relation between `d log δ(p)` and `d wt(δ)`, and a verifier
//! for that relation on `ρ = ηδ⁻¹` in the second case.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{classify_pair, DeformedCharacter, FieldCharacter, PairCase};
use crate::cohomology::{hom_coeffs, l_inv, pure_tensor_analyze, tate_pair, Homomorphism, KummerClass, ProjectivePoint};
use crate::deformation::{dlog, DeformationContext, DeformationElement, MVector};
use crate::error::{Error, Result};
use crate::padic::{iwasawa_log, Field, FieldElement, PadicScalar};

fn log_gamma0(field: &Field) -> FieldElement {
    field.from_scalar(field.log_gamma0().clone())
}

fn certified_zero(v: &MVector) -> bool {
    v.is_zero_mod(v.field().certified_precision())
}

/// `d log δ(p) = δ₁(p) = ⟨ord_p, δ₁⟩`.
pub fn dlog_at_p(delta: &DeformedCharacter) -> Result<MVector> {
    dlog(delta.at_p())
}

/// `d wt(δ)`, the tangent of the weight computed over B. The value is
/// cross-checked against `-⟨log_p, δ₁⟩ = -δ₁(γ₀) / log γ₀`.
pub fn dwt(delta: &DeformedCharacter) -> Result<MVector> {
    let over_b = delta.weight()?.tangent().clone();
    let (_, tangent) = delta.decompose()?;
    let (log_coeff, _) = hom_coeffs(&tangent)?;
    let from_coeffs = log_coeff.neg();
    if !over_b.try_sub(&from_coeffs)?.is_zero_mod(delta.field().certified_precision()) {
        return Err(Error::PreconditionViolated(format!(
            "weight differential routes disagree: {over_b} vs {from_coeffs}"
        )));
    }
    Ok(over_b)
}

/// `d log δ(p) - L*(δ₁) · d wt(δ)`, which vanishes whenever `δ₁` is a pure
/// tensor with finite `L*`.
pub fn differential_relation_residual(delta: &DeformedCharacter) -> Result<MVector> {
    let (_, tangent) = delta.decompose()?;
    let report = pure_tensor_analyze(&tangent)?;
    if !report.is_pure {
        return Err(Error::PreconditionViolated("δ₁ is not a pure tensor".into()));
    }
    let Some(ProjectivePoint::Finite(lstar)) = report.lstar else {
        return Err(Error::PreconditionViolated("L*(δ₁) is infinite".into()));
    };
    dlog_at_p(delta)?.try_sub(&dwt(delta)?.scale(&lstar)?)
}

/// `c(q₀)`, which must vanish for a second-case specialization.
pub fn second_case_constraint(c: &Homomorphism<MVector>, q0: &KummerClass) -> Result<MVector> {
    tate_pair(q0, c)
}

/// `d log ρ(p) - L(q₀) · d wt(ρ)` without any hypothesis checks.
pub fn theorem_residual(rho: &DeformedCharacter, q0: &KummerClass) -> Result<MVector> {
    let l = match l_inv(q0)? {
        ProjectivePoint::Finite(l) => l,
        ProjectivePoint::Infinity => return Err(Error::CrystallineSpecialization),
    };
    dlog_at_p(rho)?.try_sub(&dwt(rho)?.scale(&l)?)
}

/// The Tate-curve L-invariant `log_p(q) / ord_p(q)` of a nonzero rational.
pub fn tate_l_invariant(field: &Field, q: &PadicScalar) -> Result<FieldElement> {
    let n = q.valuation().ok_or_else(|| Error::InvalidArgument("q must be nonzero".into()))?;
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    iwasawa_log(&field.from_scalar(q.clone()))?.try_div(&field.from_int(n))
}

/// The same invariant from Kummer coordinates: `b log γ₀ / a`.
pub fn tate_l_invariant_class(q: &KummerClass) -> Result<FieldElement> {
    if q.a().is_known_zero() {
        return Err(Error::ZeroValuation);
    }
    q.log()?.try_div(q.a())
}

/// A point of a family of pairs `(δ, η)` together with the Kummer class of
/// its specialization.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub ctx: DeformationContext,
    pub delta: DeformedCharacter,
    pub eta: DeformedCharacter,
    pub q0: KummerClass,
    pub label: String,
    pub k_max: u64,
}

impl Scenario {
    pub fn new(delta: DeformedCharacter, eta: DeformedCharacter, q0: KummerClass, label: impl Into<String>) -> Result<Self> {
        let ctx = delta.context();
        if eta.context() != ctx {
            return Err(Error::RingMismatch("δ and η live over different deformation rings".into()));
        }
        if q0.field() != ctx.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(Scenario { ctx, delta, eta, q0, label: label.into(), k_max: 100 })
    }

    pub fn field(&self) -> &Field {
        self.ctx.field()
    }

    pub fn with_k_max(mut self, k_max: u64) -> Self {
        self.k_max = k_max;
        self
    }

    /// `ρ = ηδ⁻¹`.
    pub fn rho(&self) -> Result<DeformedCharacter> {
        self.eta.mul(&self.delta.inv()?)
    }
}

fn display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn display_opt<T: fmt::Display, S: serde::Serializer>(v: &Option<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Outcome of [`theorem_verify`].
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub label: String,
    pub p: u64,
    pub degree: usize,
    pub r: usize,
    pub case: PairCase,
    pub l_invariant: ProjectivePoint,
    #[serde(serialize_with = "display")]
    pub dlog_p: MVector,
    #[serde(serialize_with = "display")]
    pub dwt: MVector,
    #[serde(serialize_with = "display")]
    pub residual: MVector,
    /// Whether `c = ρ₁` vanishes at the certified precision.
    pub c_is_zero: bool,
    /// For `c ≠ 0`: whether `c` is a pure tensor.
    pub c_is_pure: Option<bool>,
    /// For `c ≠ 0`: `L*(c)`, which must equal `L(q₀)`.
    pub lstar: Option<ProjectivePoint>,
    #[serde(serialize_with = "display_opt")]
    pub lstar_matches: Option<bool>,
    pub precision: u32,
    pub slack: u32,
    pub certified_precision: i64,
    pub pass: bool,
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario {} (p = {}, d = {}, r = {})", self.label, self.p, self.degree, self.r)?;
        writeln!(f, "  case: {}", self.case)?;
        writeln!(f, "  L(D0) = {}", self.l_invariant)?;
        writeln!(f, "  dlog rho(p) = {}", self.dlog_p)?;
        writeln!(f, "  dwt(rho) = {}", self.dwt)?;
        if self.c_is_zero {
            writeln!(f, "  rho_1 = 0")?;
        } else {
            writeln!(f, "  rho_1 pure tensor: {}", self.c_is_pure.unwrap_or(false))?;
            if let Some(l) = &self.lstar {
                writeln!(f, "  L*(rho_1) = {l} (matches L(D0): {})", self.lstar_matches.unwrap_or(false))?;
            }
        }
        writeln!(f, "  residual = {}", self.residual)?;
        writeln!(
            f,
            "  precision N = {}, slack s = {}, certified mod p^{}",
            self.precision, self.slack, self.certified_precision
        )?;
        write!(f, "  result: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Check the hypotheses on `s` and evaluate `d log ρ(p) - L(q₀) d wt(ρ)` for
/// `ρ = ηδ⁻¹`.
pub fn theorem_verify(s: &Scenario) -> Result<TheoremReport> {
    let field = s.field().clone();
    let case = classify_pair(&s.delta.body_character(), &s.eta.body_character(), s.k_max)?;
    if !matches!(case, PairCase::Second(_)) {
        return Err(Error::WrongCase(case.to_string()));
    }
    if s.q0.a().is_known_zero() {
        return Err(Error::CrystallineSpecialization);
    }
    let rho = s.rho()?;
    let (_, c) = rho.decompose()?;
    let constraint = second_case_constraint(&c, &s.q0)?;
    if !certified_zero(&constraint) {
        return Err(Error::InconsistentScenario(format!("c(q0) = {constraint}")));
    }
    let l = l_inv(&s.q0)?;
    let l_finite = l.finite().expect("a != 0").clone();
    let dlog_p = dlog_at_p(&rho)?;
    let dwt_v = dwt(&rho)?;
    let residual = dlog_p.try_sub(&dwt_v.scale(&l_finite)?)?;

    let cert = field.certified_precision();
    let c_is_zero = c.at_p().is_zero_mod(cert) && c.at_gamma().is_zero_mod(cert);
    let (c_is_pure, lstar, lstar_matches) = if c_is_zero {
        (None, None, None)
    } else {
        let report = pure_tensor_analyze(&c)?;
        let matches = report.lstar.as_ref().map(|ls| ls == &l);
        (Some(report.is_pure), report.lstar, matches)
    };
    let pass = certified_zero(&residual) && (c_is_zero || (c_is_pure == Some(true) && lstar_matches == Some(true)));
    Ok(TheoremReport {
        label: s.label.clone(),
        p: field.prime(),
        degree: field.degree(),
        r: s.ctx.dim(),
        case,
        l_invariant: l,
        dlog_p,
        dwt: dwt_v,
        residual,
        c_is_zero,
        c_is_pure,
        lstar,
        lstar_matches,
        precision: field.precision(),
        slack: field.slack(),
        certified_precision: cert,
        pass,
    })
}

/// Parameters for [`scenario_generate`].
#[derive(Clone, Debug)]
pub struct ScenarioParams {
    pub p: u64,
    pub degree: usize,
    pub r: usize,
    pub k: u32,
    pub precision: u32,
    /// Draw `c = 0`.
    pub zero_c: bool,
    /// Coordinates are drawn from `[-coord_bound, coord_bound]`.
    pub coord_bound: i64,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        ScenarioParams { p: 5, degree: 1, r: 1, k: 0, precision: 50, zero_c: false, coord_bound: 5 }
    }
}

fn random_element(field: &Field, rng: &mut ChaCha8Rng, bound: i64) -> FieldElement {
    let coords: Vec<i64> = (0..field.degree()).map(|_| rng.gen_range(-bound..=bound)).collect();
    field.from_ints(&coords).expect("degree-length coordinates")
}

fn random_nonzero(field: &Field, rng: &mut ChaCha8Rng, bound: i64) -> FieldElement {
    loop {
        let e = random_element(field, rng, bound);
        if !e.is_known_zero() {
            return e;
        }
    }
}

fn random_unit(field: &Field, rng: &mut ChaCha8Rng, bound: i64) -> FieldElement {
    loop {
        let e = random_element(field, rng, bound);
        if e.is_unit() {
            return e;
        }
    }
}

fn random_vector(ctx: &DeformationContext, rng: &mut ChaCha8Rng, bound: i64) -> MVector {
    MVector::new((0..ctx.dim()).map(|_| random_element(ctx.field(), rng, bound)).collect()).expect("dim >= 1")
}

fn random_nonzero_vector(ctx: &DeformationContext, rng: &mut ChaCha8Rng, bound: i64) -> MVector {
    loop {
        let v = random_vector(ctx, rng, bound);
        if !v.is_known_zero() {
            return v;
        }
    }
}

/// A random B-valued character whose body and tangent coordinates are
/// small.
pub fn random_character(ctx: &DeformationContext, rng: &mut ChaCha8Rng, bound: i64) -> Result<DeformedCharacter> {
    let field = ctx.field();
    let at_p = DeformationElement::new(random_unit(field, rng, bound), random_vector(ctx, rng, bound))?;
    let principal = field.one().try_add(&random_element(field, rng, bound).shift(1))?;
    let at_gamma = DeformationElement::new(principal, random_vector(ctx, rng, bound))?;
    let teich = rng.gen_range(0..field.prime() as i64 - 1);
    DeformedCharacter::new(at_p, teich, at_gamma)
}

/// The B-valued character `1 + c` with trivial body.
pub fn infinitesimal_character(ctx: &DeformationContext, c: &Homomorphism<MVector>) -> Result<DeformedCharacter> {
    DeformedCharacter::recompose(&FieldCharacter::trivial(ctx.field()), c)
}

/// `(x·|x|)·x^k`.
pub fn second_case_twist(field: &Field, k: u32) -> Result<FieldCharacter> {
    let x = FieldCharacter::identity(field);
    x.mul(&FieldCharacter::abs(field))?.mul(&x.pow(k as i64)?)
}

/// A scenario satisfying all hypotheses by construction:
/// `q₀ = p^a γ₀^b` with `a ≠ 0`, `h = a·log_p - (b log γ₀)·ord_p` and
/// `η = δ · (x|x|)x^k · (1 + h ⊗ μ)`.
pub fn scenario_generate(seed: u64, params: &ScenarioParams) -> Result<Scenario> {
    let field = Field::new(params.p, params.degree, None, params.precision)?;
    let ctx = DeformationContext::new(field.clone(), params.r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = params.coord_bound.max(1);
    let a = random_nonzero(&field, &mut rng, bound);
    let b = random_element(&field, &mut rng, bound);
    let q0 = KummerClass::new(a.clone(), b.clone())?;
    let h = Homomorphism::from_coeffs(a, -&b.try_mul(&log_gamma0(&field))?)?;
    let mu = if params.zero_c { ctx.zero_vector() } else { random_nonzero_vector(&ctx, &mut rng, bound) };
    let c = h.tensor(&mu)?;
    let delta = random_character(&ctx, &mut rng, bound)?;
    let twist = second_case_twist(&field, params.k)?.lift(&ctx)?;
    let eta = delta.mul(&twist)?.mul(&infinitesimal_character(&ctx, &c)?)?;
    let label = format!("p{}-d{}-r{}-k{}-seed{}", params.p, params.degree, params.r, params.k, seed);
    Scenario::new(delta, eta, q0, label)
}
