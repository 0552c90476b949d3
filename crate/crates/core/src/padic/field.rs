use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{self, PivotEntry};

use super::fp_poly;
use super::scalar::{PadicScalar, Qp};

/// Descriptor of an unramified extension `E = Q_p[x]/(f)` at a fixed
/// working precision.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

struct FieldInner {
    qp: Qp,
    degree: usize,
    /// Monic defining polynomial, low degree first, leading 1 included.
    modulus: Vec<i64>,
    /// Exact scalars `c_0 .. c_{d-1}` of `f = x^d + Σ c_i x^i`.
    reduction: Vec<PadicScalar>,
    generator: u64,
    log_gamma0: OnceLock<PadicScalar>,
    zeta: OnceLock<PadicScalar>,
}

impl Field {
    /// The unramified extension of degree `degree` over Q_p. Without an
    /// explicit `modulus` the smallest irreducible monic polynomial mod p is
    /// used (see [`fp_poly::default_irreducible`]).
    pub fn new(p: u64, degree: usize, modulus: Option<&[i64]>, precision: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::UnsupportedPrime(p));
        }
        let qp = Qp::new(p, precision)?;
        if degree == 0 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        let modulus: Vec<i64> = match modulus {
            Some(f) => {
                if f.len() != degree + 1 || f[degree] != 1 {
                    return Err(Error::InvalidPolynomial(format!(
                        "expected a monic polynomial of degree {degree}, got {f:?}"
                    )));
                }
                let reduced: Vec<u64> = f.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
                if !fp_poly::is_irreducible_mod_p(&reduced, p) {
                    return Err(Error::InvalidPolynomial(format!("{f:?} is reducible mod {p}")));
                }
                f.to_vec()
            }
            None => fp_poly::default_irreducible(p, degree).into_iter().map(|c| c as i64).collect(),
        };
        let reduction = modulus[..degree].iter().map(|&c| qp.from_int(c)).collect();
        Ok(Field(Arc::new(FieldInner {
            qp,
            degree,
            modulus,
            reduction,
            generator: fp_poly::primitive_root(p),
            log_gamma0: OnceLock::new(),
            zeta: OnceLock::new(),
        })))
    }

    /// Q_p itself.
    pub fn rationals(p: u64, precision: u32) -> Result<Self> {
        Field::new(p, 1, None, precision)
    }

    pub fn qp(&self) -> &Qp {
        &self.0.qp
    }

    pub fn prime(&self) -> u64 {
        self.0.qp.prime()
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.0.modulus
    }

    pub fn precision(&self) -> u32 {
        self.0.qp.cap()
    }

    pub fn slack(&self) -> u32 {
        self.0.qp.slack()
    }

    pub fn certified_precision(&self) -> i64 {
        self.0.qp.certified_precision()
    }

    /// Residue field size `q = p^d`.
    pub fn residue_size(&self) -> u128 {
        (self.prime() as u128).pow(self.degree() as u32)
    }

    /// The same field at another working precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        Field::new(self.prime(), self.degree(), Some(&self.0.modulus), precision)
    }

    /// `γ₀ = 1 + p`, the fixed topological generator of `1 + pZ_p`.
    pub fn gamma0(&self) -> PadicScalar {
        self.0.qp.from_int(1 + self.prime() as i64)
    }

    /// `log_p(γ₀)`, computed once per field.
    pub fn log_gamma0(&self) -> &PadicScalar {
        self.0.log_gamma0.get_or_init(|| {
            let g = self.from_scalar(self.gamma0());
            super::analytic::iwasawa_log(&g).expect("gamma0 is nonzero").coeffs[0].clone()
        })
    }

    /// The smallest primitive root `g` modulo p.
    pub fn teich_generator(&self) -> u64 {
        self.0.generator
    }

    /// `ζ = ω(g)`, a generator of the `(p-1)`-th roots of unity in Q_p.
    pub fn zeta(&self) -> &PadicScalar {
        self.0.zeta.get_or_init(|| {
            let g = self.from_int(self.0.generator as i64);
            super::analytic::teichmuller(&g).expect("generator is a unit").coeffs[0].clone()
        })
    }

    pub fn element(&self, coeffs: Vec<PadicScalar>) -> Result<FieldElement> {
        if coeffs.len() != self.degree() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| c.ring() != self.qp()) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { field: self.clone(), coeffs })
    }

    pub fn from_scalar(&self, s: PadicScalar) -> FieldElement {
        let mut coeffs = vec![self.0.qp.zero(); self.degree()];
        coeffs[0] = s;
        FieldElement { field: self.clone(), coeffs }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_scalar(self.0.qp.from_int(n))
    }

    /// Element with small integer coordinates in the power basis.
    pub fn from_ints(&self, coords: &[i64]) -> Result<FieldElement> {
        self.element(coords.iter().map(|&c| self.0.qp.from_int(c)).collect())
    }

    pub fn zero(&self) -> FieldElement {
        self.from_scalar(self.0.qp.zero())
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// `p^v` as an element of E.
    pub fn p_power(&self, v: i64) -> FieldElement {
        self.from_scalar(self.0.qp.p_power(v))
    }

    /// The class of x in `Q_p[x]/(f)` (for `d = 1` this is `-c_0`).
    pub fn generator(&self) -> FieldElement {
        if self.degree() == 1 {
            return self.from_scalar(-&self.0.reduction[0]);
        }
        let mut coeffs = vec![self.0.qp.zero(); self.degree()];
        coeffs[1] = self.0.qp.one();
        FieldElement { field: self.clone(), coeffs }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.qp == other.0.qp && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Field(p={}, d={}, f={:?}, N={})",
            self.prime(),
            self.degree(),
            self.0.modulus,
            self.precision()
        )
    }
}

/// The four field operations accepted by [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

/// An element of E in power-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    pub(crate) coeffs: Vec<PadicScalar>,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[PadicScalar] {
        &self.coeffs
    }

    /// Minimum of the coefficient valuations; `None` for a known zero.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(PadicScalar::valuation).min()
    }

    pub fn abs_prec(&self) -> i64 {
        self.coeffs.iter().map(PadicScalar::abs_prec).min().expect("degree >= 1")
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.iter().all(PadicScalar::is_known_zero)
    }

    /// Known zero modulo `p^abs` or better.
    pub fn is_zero_mod(&self, abs: i64) -> bool {
        self.is_known_zero() && self.abs_prec() >= abs
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// Whether the element lies in Q_p (all higher coordinates known zero).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(PadicScalar::is_known_zero)
    }

    pub fn congruent(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.congruent(b))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(FieldElement { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(FieldElement { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.field.degree();
        if d == 1 {
            let c = self.coeffs[0].try_mul(&other.coeffs[0])?;
            return Ok(FieldElement { field: self.field.clone(), coeffs: vec![c] });
        }
        let qp = self.field.qp();
        let mut prod = vec![qp.zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        Ok(FieldElement { field: self.field.clone(), coeffs: self.field.reduce(prod)? })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let field = &self.field;
        if field.degree() == 1 {
            let c = self.coeffs[0].inv()?;
            return Ok(FieldElement { field: field.clone(), coeffs: vec![c] });
        }
        // Solve M y = 1 where M is multiplication by the unit part.
        let unit = self.shift(-v);
        let d = field.degree();
        let mut columns = Vec::with_capacity(d);
        let mut col = unit;
        let x = field.generator();
        for j in 0..d {
            if j > 0 {
                col = col.try_mul(&x)?;
            }
            columns.push(col.coeffs.clone());
        }
        let matrix: Vec<Vec<PadicScalar>> =
            (0..d).map(|i| (0..d).map(|j| columns[j][i].clone()).collect()).collect();
        let rhs = field.one().coeffs;
        let y = linalg::solve(matrix, rhs)?;
        Ok(FieldElement { field: field.clone(), coeffs: y }.shift(-v))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut result = self.field.one();
        let mut base = self.clone();
        let mut e = n as u64;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                result = if first { base.clone() } else { result.try_mul(&base)? };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.shift(k)).collect() }
    }

    pub fn scale(&self, s: &PadicScalar) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.try_mul(s)).collect::<Result<_>>()?;
        Ok(FieldElement { field: self.field.clone(), coeffs })
    }

    pub fn truncate(&self, abs: i64) -> Self {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.truncate(abs)).collect() }
    }

    pub fn lift_precision(&self) -> Self {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.lift_precision()).collect() }
    }

    /// Re-home the element in the same field at another working precision.
    pub fn to_field(&self, field: &Field) -> Result<Self> {
        if field.prime() != self.field.prime() || field.modulus() != self.field.modulus() {
            return Err(Error::FieldMismatch);
        }
        let coeffs = self.coeffs.iter().map(|c| c.to_ring(field.qp())).collect::<Result<_>>()?;
        Ok(FieldElement { field: field.clone(), coeffs })
    }
}

impl Field {
    fn reduce(&self, mut prod: Vec<PadicScalar>) -> Result<Vec<PadicScalar>> {
        let d = self.degree();
        for k in (d..prod.len()).rev() {
            let top = std::mem::replace(&mut prod[k], self.0.qp.zero());
            if top.is_exact_zero() {
                continue;
            }
            for (i, c) in self.0.reduction.iter().enumerate() {
                if c.is_exact_zero() {
                    continue;
                }
                prod[k - d + i] = prod[k - d + i].try_sub(&top.try_mul(c)?)?;
            }
        }
        prod.truncate(d);
        Ok(prod)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.congruent(other)
    }
}

impl PivotEntry for PadicScalar {
    fn pivot_valuation(&self) -> Option<i64> {
        self.valuation()
    }
    fn minus_product(&self, a: &Self, b: &Self) -> Result<Self> {
        self.try_sub(&a.try_mul(b)?)
    }
    fn divided_by(&self, d: &Self) -> Result<Self> {
        self.try_div(d)
    }
}

impl PivotEntry for FieldElement {
    fn pivot_valuation(&self) -> Option<i64> {
        self.valuation()
    }
    fn minus_product(&self, a: &Self, b: &Self) -> Result<Self> {
        self.try_sub(&a.try_mul(b)?)
    }
    fn divided_by(&self, d: &Self) -> Result<Self> {
        self.try_div(d)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $call:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$call(rhs).expect("field elements from different fields")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_cases() {
        let q5 = Field::new(5, 1, None, 20).unwrap();
        assert_eq!(q5.degree(), 1);
        let e = Field::new(5, 2, Some(&[2, 1, 1]), 20).unwrap();
        assert_eq!(e.modulus(), &[2, 1, 1]);
        assert_eq!(Field::new(2, 1, None, 20).unwrap_err(), Error::UnsupportedPrime(2));
        assert!(matches!(Field::new(5, 2, Some(&[1, 0, 1]), 20), Err(Error::InvalidPolynomial(_))));
        assert!(matches!(Field::new(5, 2, Some(&[2, 1, 3]), 20), Err(Error::InvalidPolynomial(_))));
    }

    #[test]
    fn quadratic_arithmetic() {
        let e = Field::new(5, 2, Some(&[2, 1, 1]), 20).unwrap();
        let x = e.generator();
        // x^2 = -x - 2
        assert_eq!(x.pow(2).unwrap(), e.from_ints(&[-2, -1]).unwrap());
        let a = e.from_ints(&[3, 7]).unwrap();
        let b = e.from_ints(&[-4, 1]).unwrap();
        let q = a.try_div(&b).unwrap();
        assert_eq!(q.try_mul(&b).unwrap(), a);
        assert_eq!(a.inv().unwrap().try_mul(&a).unwrap(), e.one());
    }

    #[test]
    fn valuation_is_min_of_coefficients() {
        let e = Field::new(5, 2, Some(&[2, 1, 1]), 20).unwrap();
        // 5x + 25
        assert_eq!(e.from_ints(&[25, 5]).unwrap().valuation(), Some(1));
        let a = e.from_ints(&[25, 5]).unwrap();
        let b = e.from_ints(&[1, 50]).unwrap();
        assert_eq!(a.try_mul(&b).unwrap().valuation(), Some(1));
    }

    #[test]
    fn division_of_nonunits() {
        let e = Field::new(3, 2, None, 20).unwrap();
        let a = e.from_ints(&[9, 3]).unwrap();
        let inv = a.inv().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.try_mul(&a).unwrap(), e.one());
        assert_eq!(e.zero().inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn arith_dispatch() {
        let e = Field::rationals(5, 20).unwrap();
        let two = e.from_int(2);
        let three = e.from_int(3);
        assert_eq!(arith(&two, &three, ArithOp::Add).unwrap(), e.from_int(5));
        assert_eq!(arith(&two, &three, ArithOp::Sub).unwrap(), e.from_int(-1));
        assert_eq!(arith(&two, &three, ArithOp::Mul).unwrap(), e.from_int(6));
        assert_eq!(arith(&two, &e.zero(), ArithOp::Div).unwrap_err(), Error::DivisionByZero);
        let other = Field::rationals(7, 20).unwrap();
        assert_eq!(arith(&two, &other.one(), ArithOp::Add).unwrap_err(), Error::FieldMismatch);
    }
}
