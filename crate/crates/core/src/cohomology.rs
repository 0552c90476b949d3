//! Coordinate models of `H¹(E)`, `H¹(E) ⊗ m` and `H¹(E(1))`.
//!
//! The pro-p completion of Q_p^× is topologically generated by `p` and
//! `γ₀ = 1 + p`, so:
//!
//! * a [`KummerClass`] `p^a γ₀^b` in `Q_p^{×,∧} ⊗ E ≅ H¹(E(1))` is stored as
//!   the pair `(a, b)`;
//! * a [`Homomorphism`] `Q_p^{×,∧} → V` (`V = E` or `V = m`) is stored by
//!   its values at `p` and `γ₀`;
//! * the Tate pairing is evaluation, `⟨p^a γ₀^b, c⟩ = a·c(p) + b·c(γ₀)`.
//!
//! The ordered basis of `H¹(E)` is `(log_p, ord_p)`, with `log_p(p) = 0`,
//! `log_p(γ₀) = log γ₀`, `ord_p(p) = 1` and `ord_p(γ₀) = 0`.

use std::fmt;

use serde::Serialize;

use crate::deformation::MVector;
use crate::error::{Error, Result};
use crate::linalg;
use crate::padic::{iwasawa_log, Field, FieldElement, PadicScalar};

/// E-vector spaces that homomorphisms may take values in.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn field(&self) -> &Field;
    fn zero_like(&self) -> Self;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn try_sub(&self, other: &Self) -> Result<Self>;
    fn scale(&self, s: &FieldElement) -> Result<Self>;
    fn is_known_zero(&self) -> bool;
    fn abs_prec(&self) -> i64;
    /// Coordinates in the fixed basis (one coordinate for `V = E`).
    fn coordinates(&self) -> Vec<FieldElement>;
}

impl Coefficient for FieldElement {
    fn field(&self) -> &Field {
        FieldElement::field(self)
    }
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        FieldElement::try_add(self, other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self> {
        FieldElement::try_sub(self, other)
    }
    fn scale(&self, s: &FieldElement) -> Result<Self> {
        self.try_mul(s)
    }
    fn is_known_zero(&self) -> bool {
        FieldElement::is_known_zero(self)
    }
    fn abs_prec(&self) -> i64 {
        FieldElement::abs_prec(self)
    }
    fn coordinates(&self) -> Vec<FieldElement> {
        vec![self.clone()]
    }
}

impl Coefficient for MVector {
    fn field(&self) -> &Field {
        MVector::field(self)
    }
    fn zero_like(&self) -> Self {
        MVector::new(vec![MVector::field(self).zero(); self.dim()]).expect("dim >= 1")
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        MVector::try_add(self, other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self> {
        MVector::try_sub(self, other)
    }
    fn scale(&self, s: &FieldElement) -> Result<Self> {
        MVector::scale(self, s)
    }
    fn is_known_zero(&self) -> bool {
        MVector::is_known_zero(self)
    }
    fn abs_prec(&self) -> i64 {
        MVector::abs_prec(self)
    }
    fn coordinates(&self) -> Vec<FieldElement> {
        self.entries().to_vec()
    }
}

/// The class `p^a γ₀^b` in `Q_p^{×,∧} ⊗_{Z_p} E ≅ H¹(E(1))`.
#[derive(Clone, PartialEq)]
pub struct KummerClass {
    a: FieldElement,
    b: FieldElement,
}

impl KummerClass {
    pub fn new(a: FieldElement, b: FieldElement) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(KummerClass { a, b })
    }

    /// The class of `p`.
    pub fn p(field: &Field) -> Self {
        KummerClass { a: field.one(), b: field.zero() }
    }

    /// The class of `γ₀`.
    pub fn gamma0(field: &Field) -> Self {
        KummerClass { a: field.zero(), b: field.one() }
    }

    /// The class of a nonzero rational `q = p^n u`: `a = n`,
    /// `b = log_p(u) / log_p(γ₀)`.
    pub fn from_rational(field: &Field, q: &PadicScalar) -> Result<Self> {
        let n = q.valuation().ok_or_else(|| Error::InvalidArgument("q must be nonzero".into()))?;
        let u = field.from_scalar(q.shift(-n));
        let b = iwasawa_log(&u)?.try_div(&field.from_scalar(field.log_gamma0().clone()))?;
        Ok(KummerClass { a: field.from_int(n), b })
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    /// Coefficient of `p`, which is also `ord_p` of the class.
    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    /// Coefficient of `γ₀`.
    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn ord(&self) -> FieldElement {
        self.a.clone()
    }

    /// `log_p` of the class, `b · log γ₀`.
    pub fn log(&self) -> Result<FieldElement> {
        self.b.try_mul(&self.field().from_scalar(self.field().log_gamma0().clone()))
    }

    pub fn is_known_zero(&self) -> bool {
        self.a.is_known_zero() && self.b.is_known_zero()
    }

    pub fn scale(&self, s: &FieldElement) -> Result<Self> {
        Ok(KummerClass { a: self.a.try_mul(s)?, b: self.b.try_mul(s)? })
    }

    /// The group law (written additively in these coordinates).
    pub fn combine(&self, other: &Self) -> Result<Self> {
        Ok(KummerClass { a: self.a.try_add(&other.a)?, b: self.b.try_add(&other.b)? })
    }
}

impl fmt::Display for KummerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{a: {}, b: {}}}", self.a, self.b)
    }
}

impl fmt::Debug for KummerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A continuous homomorphism `Q_p^{×,∧} → V`, determined by its values at
/// `p` and `γ₀` (torsion dies in the torsion-free target).
#[derive(Clone, PartialEq)]
pub struct Homomorphism<V> {
    at_p: V,
    at_gamma: V,
}

impl<V: Coefficient> Homomorphism<V> {
    pub fn new(at_p: V, at_gamma: V) -> Result<Self> {
        if at_p.field() != at_gamma.field() {
            return Err(Error::FieldMismatch);
        }
        if at_p.coordinates().len() != at_gamma.coordinates().len() {
            return Err(Error::RingMismatch("values live in different spaces".into()));
        }
        Ok(Homomorphism { at_p, at_gamma })
    }

    /// `log_p ⊗ log_coeff + ord_p ⊗ ord_coeff`.
    pub fn from_coeffs(log_coeff: V, ord_coeff: V) -> Result<Self> {
        let lg = log_coeff.field().from_scalar(log_coeff.field().log_gamma0().clone());
        Homomorphism::new(ord_coeff, log_coeff.scale(&lg)?)
    }

    pub fn at_p(&self) -> &V {
        &self.at_p
    }

    pub fn at_gamma(&self) -> &V {
        &self.at_gamma
    }

    pub fn field(&self) -> &Field {
        self.at_p.field()
    }

    pub fn is_known_zero(&self) -> bool {
        self.at_p.is_known_zero() && self.at_gamma.is_known_zero()
    }

    /// Coordinates `(⟨log_p, c⟩, ⟨ord_p, c⟩)`: `ord = c(p)`,
    /// `log = c(γ₀) / log_p γ₀`.
    pub fn coeffs(&self) -> Result<(V, V)> {
        let lg = self.field().from_scalar(self.field().log_gamma0().clone());
        Ok((self.at_gamma.scale(&lg.inv()?)?, self.at_p.clone()))
    }

    /// Evaluation on a Kummer class, `a·c(p) + b·c(γ₀)`.
    pub fn eval(&self, q: &KummerClass) -> Result<V> {
        self.at_p.scale(&q.a)?.try_add(&self.at_gamma.scale(&q.b)?)
    }

    /// Evaluation at a nonzero rational `q = p^n ζ ⟨u⟩`.
    pub fn eval_rational(&self, q: &PadicScalar) -> Result<V> {
        self.eval(&KummerClass::from_rational(self.field(), q)?)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(Homomorphism { at_p: self.at_p.try_add(&other.at_p)?, at_gamma: self.at_gamma.try_add(&other.at_gamma)? })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(Homomorphism { at_p: self.at_p.try_sub(&other.at_p)?, at_gamma: self.at_gamma.try_sub(&other.at_gamma)? })
    }

    pub fn scale(&self, s: &FieldElement) -> Result<Self> {
        Ok(Homomorphism { at_p: self.at_p.scale(s)?, at_gamma: self.at_gamma.scale(s)? })
    }
}

impl Homomorphism<FieldElement> {
    /// `log_p`: `p ↦ 0`, `γ₀ ↦ log γ₀`.
    pub fn log_p(field: &Field) -> Self {
        Homomorphism { at_p: field.zero(), at_gamma: field.from_scalar(field.log_gamma0().clone()) }
    }

    /// `ord_p`: `p ↦ 1`, `γ₀ ↦ 0`.
    pub fn ord_p(field: &Field) -> Self {
        Homomorphism { at_p: field.one(), at_gamma: field.zero() }
    }

    /// `h ⊗ μ ∈ H¹(E) ⊗ m`.
    pub fn tensor(&self, mu: &MVector) -> Result<Homomorphism<MVector>> {
        Ok(Homomorphism { at_p: mu.scale(&self.at_p)?, at_gamma: mu.scale(&self.at_gamma)? })
    }
}

impl Homomorphism<MVector> {
    pub fn dim(&self) -> usize {
        self.at_p.dim()
    }

    /// The i-th coordinate homomorphism `(1 ⊗ ε_i^*)(c)`.
    pub fn component(&self, i: usize) -> Homomorphism<FieldElement> {
        Homomorphism { at_p: self.at_p.entries()[i].clone(), at_gamma: self.at_gamma.entries()[i].clone() }
    }
}

impl<V: fmt::Display> fmt::Display for Homomorphism<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{at_p: {}, at_gamma: {}}}", self.at_p, self.at_gamma)
    }
}

impl<V: fmt::Display> fmt::Debug for Homomorphism<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A point of `P¹(E)`.
#[derive(Clone)]
pub enum ProjectivePoint {
    Finite(FieldElement),
    Infinity,
}

impl ProjectivePoint {
    /// `(u : v)`. A denominator indistinguishable from zero gives
    /// `Infinity`; `(0 : 0)` is rejected.
    pub fn from_coords(u: &FieldElement, v: &FieldElement) -> Result<Self> {
        if v.is_known_zero() {
            if u.is_known_zero() {
                return Err(Error::UndefinedInvariant);
            }
            return Ok(ProjectivePoint::Infinity);
        }
        Ok(ProjectivePoint::Finite(u.try_div(v)?))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjectivePoint::Infinity)
    }

    pub fn finite(&self) -> Option<&FieldElement> {
        match self {
            ProjectivePoint::Finite(x) => Some(x),
            ProjectivePoint::Infinity => None,
        }
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ProjectivePoint::Finite(a), ProjectivePoint::Finite(b)) => a == b,
            (ProjectivePoint::Infinity, ProjectivePoint::Infinity) => true,
            _ => false,
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(x) => write!(f, "{x}"),
            ProjectivePoint::Infinity => write!(f, "infinity"),
        }
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `(⟨log_p, c⟩, ⟨ord_p, c⟩)`.
pub fn hom_coeffs<V: Coefficient>(c: &Homomorphism<V>) -> Result<(V, V)> {
    c.coeffs()
}

/// The evaluation pairing `H¹(E(1)) × (H¹(E) ⊗ V) → V`.
pub fn tate_pair<V: Coefficient>(q: &KummerClass, c: &Homomorphism<V>) -> Result<V> {
    c.eval(q)
}

/// `L(q) = (log_p q : ord_p q) = (b log γ₀ : a)`.
pub fn l_inv(q: &KummerClass) -> Result<ProjectivePoint> {
    if q.is_known_zero() {
        return Err(Error::UndefinedInvariant);
    }
    ProjectivePoint::from_coords(&q.log()?, &q.ord())
}

/// `L*(h) = (-⟨ord_p, h⟩ : ⟨log_p, h⟩)`.
pub fn dual_l_inv(h: &Homomorphism<FieldElement>) -> Result<ProjectivePoint> {
    if h.is_known_zero() {
        return Err(Error::UndefinedInvariant);
    }
    let (log, ord) = h.coeffs()?;
    ProjectivePoint::from_coords(&-&ord, &log)
}

/// Whether the lines `E q` and `E h` annihilate each other.
pub fn orthogonal(q: &KummerClass, h: &Homomorphism<FieldElement>) -> Result<bool> {
    if q.is_known_zero() || h.is_known_zero() {
        return Err(Error::ZeroInput("orthogonality needs nonzero arguments".into()));
    }
    Ok(tate_pair(q, h)?.is_known_zero())
}

/// Outcome of [`pure_tensor_analyze`].
#[derive(Clone, Debug)]
pub struct PureTensorReport {
    pub is_pure: bool,
    /// Spans the annihilator of `c` in `H¹(E(1))`.
    pub q: Option<KummerClass>,
    /// Spans `L_c`; `c = h ⊗ m`.
    pub h: Option<Homomorphism<FieldElement>>,
    pub m: Option<MVector>,
    /// `L*(c) = (-⟨ord_p, c⟩ : ⟨log_p, c⟩)`.
    pub lstar: Option<ProjectivePoint>,
}

/// The (log, ord) coefficient vectors of `c`, as the rows of a `2 × r`
/// matrix.
fn coefficient_rows(c: &Homomorphism<MVector>) -> Result<[Vec<FieldElement>; 2]> {
    let (log, ord) = c.coeffs()?;
    Ok([log.entries().to_vec(), ord.entries().to_vec()])
}

/// Purity as proportionality of `⟨log_p, c⟩` and `⟨ord_p, c⟩` in m: every
/// 2×2 minor of the coefficient matrix vanishes.
pub fn pure_by_proportionality(c: &Homomorphism<MVector>) -> Result<bool> {
    let [log, ord] = coefficient_rows(c)?;
    for i in 0..log.len() {
        for j in i + 1..log.len() {
            let minor = log[i].try_mul(&ord[j])?.try_sub(&log[j].try_mul(&ord[i])?)?;
            if !minor.is_known_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Purity as the existence of a nonzero `q` with `(q ⊗ 1)(c) = 0`. Each
/// m-coordinate gives one equation `a c_j(p) + b c_j(γ₀) = 0`; the kernel
/// of the best-conditioned one is tested against the others.
pub fn pure_by_annihilator(c: &Homomorphism<MVector>) -> Result<Option<KummerClass>> {
    let field = c.field().clone();
    let pick = (0..c.dim())
        .flat_map(|j| {
            let comp = c.component(j);
            [comp.at_p.valuation(), comp.at_gamma.valuation()].into_iter().flatten().map(move |v| (v, j))
        })
        .min();
    let Some((_, j)) = pick else {
        return Ok(Some(KummerClass::p(&field)));
    };
    let comp = c.component(j);
    let q = KummerClass::new(comp.at_gamma.clone(), -&comp.at_p)?;
    if tate_pair(&q, c)?.is_known_zero() {
        Ok(Some(q))
    } else {
        Ok(None)
    }
}

/// `dim_E L_c`, the rank of the `2 × r` coefficient matrix.
pub fn pure_by_rank(c: &Homomorphism<MVector>) -> Result<usize> {
    let rows = coefficient_rows(c)?;
    linalg::rank(rows.to_vec())
}

/// Decide whether `c ∈ H¹(E) ⊗ m` is a pure tensor `h ⊗ m`, and if so return
/// the witnesses and `L*(c)`.
pub fn pure_tensor_analyze(c: &Homomorphism<MVector>) -> Result<PureTensorReport> {
    if c.is_known_zero() {
        return Err(Error::ZeroInput("c = 0".into()));
    }
    if c.dim() > 1 && !pure_by_proportionality(c)? {
        return Ok(PureTensorReport { is_pure: false, q: None, h: None, m: None, lstar: None });
    }
    let [log, ord] = coefficient_rows(c)?;
    // Column with the entry of smallest valuation spans L_c.
    let (_, j, pivot_in_log) = (0..log.len())
        .flat_map(|j| {
            [(log[j].valuation(), j, true), (ord[j].valuation(), j, false)]
                .into_iter()
                .filter_map(|(v, j, b)| v.map(|v| (v, j, b)))
        })
        .min_by_key(|&(v, j, b)| (v, j, !b))
        .expect("c is nonzero");
    let h = Homomorphism::from_coeffs(log[j].clone(), ord[j].clone())?;
    let pivot = if pivot_in_log { &log } else { &ord };
    let m = MVector::new(pivot.iter().map(|x| x.try_div(&pivot[j])).collect::<Result<_>>()?)?;
    let q = KummerClass::new(h.at_gamma.clone(), -&h.at_p)?;
    let lstar = ProjectivePoint::from_coords(&-&ord[j], &log[j])?;
    Ok(PureTensorReport { is_pure: true, q: Some(q), h: Some(h), m: Some(m), lstar: Some(lstar) })
}

/// `⟨ord_p, c⟩ + L*(c) ⟨log_p, c⟩`, which vanishes for every pure tensor
/// with finite `L*(c)`.
pub fn coefficient_relation_residual(c: &Homomorphism<MVector>) -> Result<MVector> {
    let report = pure_tensor_analyze(c)?;
    if !report.is_pure {
        return Err(Error::PreconditionViolated("c is not a pure tensor".into()));
    }
    let Some(ProjectivePoint::Finite(lstar)) = report.lstar else {
        return Err(Error::PreconditionViolated("L*(c) is infinite".into()));
    };
    let (log, ord) = c.coeffs()?;
    ord.try_add(&log.scale(&lstar)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::DeformationContext;

    fn q5() -> Field {
        Field::rationals(5, 40).unwrap()
    }

    fn lg(f: &Field) -> FieldElement {
        f.from_scalar(f.log_gamma0().clone())
    }

    #[test]
    fn coefficients_of_basis() {
        let f = q5();
        let (l, o) = hom_coeffs(&Homomorphism::log_p(&f)).unwrap();
        assert_eq!((l, o), (f.one(), f.zero()));
        let (l, o) = hom_coeffs(&Homomorphism::ord_p(&f)).unwrap();
        assert_eq!((l, o), (f.zero(), f.one()));
    }

    #[test]
    fn reconstruction_identity() {
        let f = q5();
        let c = Homomorphism::new(f.from_int(3), f.from_int(-7)).unwrap();
        let (l, o) = c.coeffs().unwrap();
        let rebuilt = Homomorphism::log_p(&f).scale(&l).unwrap().try_add(&Homomorphism::ord_p(&f).scale(&o).unwrap()).unwrap();
        assert_eq!(rebuilt, c);
    }

    #[test]
    fn pairing_matrix() {
        let f = q5();
        let p = KummerClass::p(&f);
        let g = KummerClass::gamma0(&f);
        let log = Homomorphism::log_p(&f);
        let ord = Homomorphism::ord_p(&f);
        assert!(tate_pair(&p, &log).unwrap().is_known_zero());
        assert_eq!(tate_pair(&p, &ord).unwrap(), f.one());
        assert_eq!(tate_pair(&g, &log).unwrap(), lg(&f));
        assert!(tate_pair(&g, &ord).unwrap().is_known_zero());
    }

    #[test]
    fn orthogonal_construction_pairs_to_zero() {
        let f = q5();
        let (a, b) = (f.from_int(3), f.from_int(-2));
        let q = KummerClass::new(a.clone(), b.clone()).unwrap();
        let h = Homomorphism::from_coeffs(a.clone(), -(&b * &lg(&f))).unwrap();
        assert!(tate_pair(&q, &h).unwrap().is_known_zero());
        assert!(orthogonal(&q, &h).unwrap());
        assert_eq!(l_inv(&q).unwrap(), dual_l_inv(&h).unwrap());
        assert_eq!(dual_l_inv(&h).unwrap(), ProjectivePoint::Finite((&b * &lg(&f)).try_div(&a).unwrap()));
    }

    #[test]
    fn invariants_of_basic_classes() {
        let f = q5();
        assert_eq!(l_inv(&KummerClass::p(&f)).unwrap(), ProjectivePoint::Finite(f.zero()));
        assert_eq!(l_inv(&KummerClass::gamma0(&f)).unwrap(), ProjectivePoint::Infinity);
        let q = KummerClass::new(f.from_int(2), f.one()).unwrap();
        assert_eq!(l_inv(&q).unwrap(), ProjectivePoint::Finite(lg(&f).try_div(&f.from_int(2)).unwrap()));
        assert_eq!(l_inv(&KummerClass::new(f.zero(), f.zero()).unwrap()).unwrap_err(), Error::UndefinedInvariant);
        assert_eq!(dual_l_inv(&Homomorphism::log_p(&f)).unwrap(), ProjectivePoint::Finite(f.zero()));
        assert_eq!(dual_l_inv(&Homomorphism::ord_p(&f)).unwrap(), ProjectivePoint::Infinity);
        assert!(orthogonal(&KummerClass::p(&f), &Homomorphism::log_p(&f)).unwrap());
        assert!(!orthogonal(&KummerClass::p(&f), &Homomorphism::ord_p(&f)).unwrap());
    }

    #[test]
    fn purity_examples() {
        let f = q5();
        let ctx = DeformationContext::new(f.clone(), 2).unwrap();
        // at_p = (1, 0), at_gamma = (0, log γ₀)
        let c = Homomorphism::new(ctx.basis(0), ctx.basis(1).scale(&lg(&f)).unwrap()).unwrap();
        assert!(!pure_tensor_analyze(&c).unwrap().is_pure);
        assert!(pure_by_annihilator(&c).unwrap().is_none());
        assert_eq!(pure_by_rank(&c).unwrap(), 2);

        let h = Homomorphism::log_p(&f).try_add(&Homomorphism::ord_p(&f)).unwrap();
        let mu = MVector::new(vec![f.from_int(1), f.from_int(2)]).unwrap();
        let c = h.tensor(&mu).unwrap();
        let rep = pure_tensor_analyze(&c).unwrap();
        assert!(rep.is_pure);
        assert_eq!(rep.lstar.unwrap(), ProjectivePoint::Finite(f.from_int(-1)));
        assert_eq!(pure_by_rank(&c).unwrap(), 1);
        let q = rep.q.unwrap();
        assert!(tate_pair(&q, &c).unwrap().is_known_zero());
        assert!(tate_pair(&q, &rep.h.unwrap()).unwrap().is_known_zero());

        let zero = Homomorphism::new(ctx.zero_vector(), ctx.zero_vector()).unwrap();
        assert!(matches!(pure_tensor_analyze(&zero), Err(Error::ZeroInput(_))));
    }

    #[test]
    fn coefficient_relation_examples() {
        let f = q5();
        let ctx = DeformationContext::new(f.clone(), 1).unwrap();
        let mu = ctx.basis(0);
        let c = Homomorphism::ord_p(&f).tensor(&mu).unwrap();
        assert!(matches!(coefficient_relation_residual(&c), Err(Error::PreconditionViolated(_))));
        let c = Homomorphism::log_p(&f).tensor(&mu).unwrap();
        assert!(coefficient_relation_residual(&c).unwrap().is_known_zero());
        let h = Homomorphism::log_p(&f).try_sub(&Homomorphism::ord_p(&f)).unwrap();
        let c = h.tensor(&mu).unwrap();
        assert_eq!(pure_tensor_analyze(&c).unwrap().lstar.unwrap(), ProjectivePoint::Finite(f.one()));
        assert!(coefficient_relation_residual(&c).unwrap().is_known_zero());
    }
}
