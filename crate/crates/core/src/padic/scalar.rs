use std::cmp::{min, Ordering};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Absolute precision carried by an exact zero.
pub const EXACT: i64 = i64::MAX;

/// Default working precision in p-adic digits.
pub const DEFAULT_PRECISION: u32 = 50;

/// The prime together with the working precision `N_work`.
///
/// Every scalar carries its `Qp`; arithmetic between scalars with different
/// contexts is a [`Error::FieldMismatch`].
#[derive(Clone)]
pub struct Qp(Arc<QpInner>);

struct QpInner {
    p: u64,
    cap: u32,
    powers: Vec<BigUint>,
}

impl Qp {
    pub fn new(p: u64, cap: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::UnsupportedPrime(p));
        }
        if cap == 0 {
            return Err(Error::InvalidPrecision(cap));
        }
        let base = BigUint::from(p);
        let mut powers = Vec::with_capacity(cap as usize + 2);
        let mut acc = BigUint::one();
        for _ in 0..=cap + 1 {
            powers.push(acc.clone());
            acc *= &base;
        }
        Ok(Qp(Arc::new(QpInner { p, cap, powers })))
    }

    pub fn prime(&self) -> u64 {
        self.0.p
    }

    /// Working precision `N_work`.
    pub fn cap(&self) -> u32 {
        self.0.cap
    }

    /// Slack `s = 2 + ceil(log_p N_work)` used when certifying identities.
    pub fn slack(&self) -> u32 {
        let mut s = 0u32;
        let mut pow = 1u64;
        while pow < self.0.cap as u64 {
            pow = pow.saturating_mul(self.0.p);
            s += 1;
        }
        2 + s
    }

    /// Absolute precision at which identities are certified: `N_work - slack`.
    pub fn certified_precision(&self) -> i64 {
        self.0.cap as i64 - self.slack() as i64
    }

    pub(crate) fn pow_p(&self, k: u32) -> BigUint {
        match self.0.powers.get(k as usize) {
            Some(v) => v.clone(),
            None => BigUint::from(self.0.p).pow(k),
        }
    }

    /// Same prime, different working precision.
    pub fn with_cap(&self, cap: u32) -> Result<Self> {
        Qp::new(self.0.p, cap)
    }

    pub fn zero(&self) -> PadicScalar {
        PadicScalar { ring: self.clone(), repr: Repr::Zero { abs: EXACT } }
    }

    /// A zero known only modulo `p^abs`.
    pub fn known_zero(&self, abs: i64) -> PadicScalar {
        PadicScalar { ring: self.clone(), repr: Repr::Zero { abs } }
    }

    pub fn one(&self) -> PadicScalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> PadicScalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> PadicScalar {
        if n.is_zero() {
            return self.zero();
        }
        let (v, u) = split_p(n.magnitude(), self.0.p);
        let cap = self.0.cap;
        let modulus = self.pow_p(cap);
        let mut unit = u % &modulus;
        if n.sign() == Sign::Minus {
            unit = &modulus - unit;
        }
        PadicScalar {
            ring: self.clone(),
            repr: Repr::Nonzero { val: v as i64, unit, prec: cap },
        }
    }

    /// The rational number `num/den` at full working precision.
    pub fn from_rational(&self, num: &BigInt, den: &BigInt) -> Result<PadicScalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_bigint(num).try_div(&self.from_bigint(den))
    }

    /// `p^v * Σ digits[i] p^i`, known to relative precision `digits.len()`
    /// (capped at `N_work`). Digits must lie in `0..p`.
    pub fn from_digits(&self, digits: &[u64], v: i64) -> Result<PadicScalar> {
        let p = self.0.p;
        if digits.iter().any(|&d| d >= p) {
            return Err(Error::Parse(format!("digit out of range for p = {p}")));
        }
        let n = digits.len().min(self.0.cap as usize) as u32;
        if n == 0 {
            return Ok(self.zero());
        }
        let mut value = BigUint::zero();
        for (i, &d) in digits.iter().take(n as usize).enumerate() {
            value += BigUint::from(d) * self.pow_p(i as u32);
        }
        if value.is_zero() {
            return Ok(self.known_zero(v + n as i64));
        }
        let (t, u) = split_p(&value, p);
        Ok(PadicScalar {
            ring: self.clone(),
            repr: Repr::Nonzero { val: v + t as i64, unit: u, prec: n - t },
        })
    }

    /// `p^v`, exact to working precision.
    pub fn p_power(&self, v: i64) -> PadicScalar {
        PadicScalar {
            ring: self.clone(),
            repr: Repr::Nonzero { val: v, unit: BigUint::one(), prec: self.0.cap },
        }
    }
}

impl PartialEq for Qp {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.cap == other.0.cap)
    }
}

impl Eq for Qp {}

impl fmt::Debug for Qp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}(N={})", self.0.p, self.0.cap)
    }
}

#[derive(Clone, Debug)]
enum Repr {
    /// Indistinguishable from zero modulo `p^abs` (`abs == EXACT` for a true zero).
    Zero { abs: i64 },
    /// `p^val * unit`, with `unit` a residue modulo `p^prec` prime to p.
    Nonzero { val: i64, unit: BigUint, prec: u32 },
}

/// An element of Q_p at tracked precision (capped relative model).
#[derive(Clone)]
pub struct PadicScalar {
    ring: Qp,
    repr: Repr,
}

impl PadicScalar {
    pub fn ring(&self) -> &Qp {
        &self.ring
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime()
    }

    /// `None` for a known zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::Nonzero { val, .. } => Some(*val),
        }
    }

    /// Absolute precision: the element is known modulo `p^abs_prec`.
    pub fn abs_prec(&self) -> i64 {
        match &self.repr {
            Repr::Zero { abs } => *abs,
            Repr::Nonzero { val, prec, .. } => val + *prec as i64,
        }
    }

    pub fn rel_prec(&self) -> u32 {
        match &self.repr {
            Repr::Zero { .. } => 0,
            Repr::Nonzero { prec, .. } => *prec,
        }
    }

    /// Unit digits, `None` for a known zero.
    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::Nonzero { unit, .. } => Some(unit),
        }
    }

    pub fn is_known_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { abs: EXACT })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Forget everything beyond `p^abs`.
    pub fn truncate(&self, abs: i64) -> Self {
        match &self.repr {
            Repr::Zero { abs: a } => self.ring.known_zero(min(*a, abs)),
            Repr::Nonzero { val, unit, prec } => {
                if abs >= val + *prec as i64 {
                    self.clone()
                } else if abs <= *val {
                    self.ring.known_zero(abs)
                } else {
                    let prec = (abs - val) as u32;
                    PadicScalar {
                        ring: self.ring.clone(),
                        repr: Repr::Nonzero {
                            val: *val,
                            unit: unit % self.ring.pow_p(prec),
                            prec,
                        },
                    }
                }
            }
        }
    }

    /// Treat the stored digits as exact up to the working precision.
    pub fn lift_precision(&self) -> Self {
        match &self.repr {
            Repr::Zero { .. } => self.ring.zero(),
            Repr::Nonzero { val, unit, .. } => PadicScalar {
                ring: self.ring.clone(),
                repr: Repr::Nonzero { val: *val, unit: unit.clone(), prec: self.ring.cap() },
            },
        }
    }

    /// Move to another working precision for the same prime.
    pub fn to_ring(&self, ring: &Qp) -> Result<Self> {
        if ring.prime() != self.prime() {
            return Err(Error::FieldMismatch);
        }
        let repr = match &self.repr {
            Repr::Zero { abs } => Repr::Zero { abs: *abs },
            Repr::Nonzero { val, unit, prec } => {
                let prec = min(*prec, ring.cap());
                Repr::Nonzero { val: *val, unit: unit % ring.pow_p(prec), prec }
            }
        };
        Ok(PadicScalar { ring: ring.clone(), repr })
    }

    /// Congruence at the smaller of the two absolute precisions. Works across
    /// working precisions of the same prime.
    pub fn congruent(&self, other: &Self) -> bool {
        if self.prime() != other.prime() {
            return false;
        }
        let (a, b) = if self.ring.cap() <= other.ring.cap() {
            (self.clone(), other.to_ring(&self.ring).expect("same prime"))
        } else {
            (self.to_ring(&other.ring).expect("same prime"), other.clone())
        };
        (a - b).is_known_zero()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let ring = self.ring.clone();
        let repr = match (&self.repr, &other.repr) {
            (Repr::Zero { abs: x }, Repr::Zero { abs: y }) => Repr::Zero { abs: min(*x, *y) },
            (Repr::Zero { abs }, _) => return Ok(other.truncate(*abs)),
            (_, Repr::Zero { abs }) => return Ok(self.truncate(*abs)),
            (
                Repr::Nonzero { val: va, unit: ua, prec: pa },
                Repr::Nonzero { val: vb, unit: ub, prec: pb },
            ) => {
                let abs = min(va + *pa as i64, vb + *pb as i64);
                let vmin = min(*va, *vb);
                let m = (abs - vmin) as u32;
                let modulus = ring.pow_p(m);
                let shifted = |v: i64, u: &BigUint| -> BigUint {
                    let s = (v - vmin) as u32;
                    if s < m {
                        (u * ring.pow_p(s)) % &modulus
                    } else {
                        BigUint::zero()
                    }
                };
                let sum = (shifted(*va, ua) + shifted(*vb, ub)) % &modulus;
                if sum.is_zero() {
                    Repr::Zero { abs }
                } else {
                    let (t, u) = split_p(&sum, ring.prime());
                    Repr::Nonzero { val: vmin + t as i64, unit: u, prec: m - t }
                }
            }
        };
        Ok(PadicScalar { ring, repr })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Nonzero { val, unit, prec } => {
                let modulus = self.ring.pow_p(*prec);
                PadicScalar {
                    ring: self.ring.clone(),
                    repr: Repr::Nonzero { val: *val, unit: &modulus - unit, prec: *prec },
                }
            }
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Zero { abs: x }, Repr::Zero { abs: y }) => Repr::Zero { abs: x.saturating_add(*y) },
            (Repr::Zero { abs }, Repr::Nonzero { val, .. })
            | (Repr::Nonzero { val, .. }, Repr::Zero { abs }) => Repr::Zero { abs: sat_shift(*abs, *val) },
            (
                Repr::Nonzero { val: va, unit: ua, prec: pa },
                Repr::Nonzero { val: vb, unit: ub, prec: pb },
            ) => {
                let prec = min(*pa, *pb);
                Repr::Nonzero { val: va + vb, unit: (ua * ub) % self.ring.pow_p(prec), prec }
            }
        };
        Ok(PadicScalar { ring: self.ring.clone(), repr })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (vb, ub, pb) = match &other.repr {
            Repr::Zero { .. } => return Err(Error::DivisionByZero),
            Repr::Nonzero { val, unit, prec } => (*val, unit, *prec),
        };
        let repr = match &self.repr {
            Repr::Zero { abs } => Repr::Zero { abs: sat_shift(*abs, -vb) },
            Repr::Nonzero { val, unit, prec } => {
                let prec = min(*prec, pb);
                let modulus = self.ring.pow_p(prec);
                let inv = (ub % &modulus).modinv(&modulus).expect("unit is invertible");
                Repr::Nonzero { val: val - vb, unit: (unit * inv) % modulus, prec }
            }
        };
        Ok(PadicScalar { ring: self.ring.clone(), repr })
    }

    pub fn inv(&self) -> Result<Self> {
        self.ring.one().try_div(self)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(self.ring.one());
        }
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let repr = match &self.repr {
            Repr::Zero { abs } => Repr::Zero { abs: abs.saturating_mul(n) },
            Repr::Nonzero { val, unit, prec } => {
                let modulus = self.ring.pow_p(*prec);
                Repr::Nonzero {
                    val: val * n,
                    unit: unit.modpow(&BigUint::from(n as u64), &modulus),
                    prec: *prec,
                }
            }
        };
        Ok(PadicScalar { ring: self.ring.clone(), repr })
    }

    /// Multiply by `p^k` (exact shift of the valuation).
    pub fn shift(&self, k: i64) -> Self {
        let repr = match &self.repr {
            Repr::Zero { abs } => Repr::Zero { abs: sat_shift(*abs, k) },
            Repr::Nonzero { val, unit, prec } => Repr::Nonzero { val: val + k, unit: unit.clone(), prec: *prec },
        };
        PadicScalar { ring: self.ring.clone(), repr }
    }

    /// The element as a signed integer `p^v u` reduced to `(-p^m/2, p^m/2]`
    /// modulo `p^m`, `m = abs_prec - drop`. `None` if the valuation is
    /// negative or nothing is left after dropping digits.
    pub fn symmetric_residue(&self, drop: u32) -> Option<(BigInt, u32)> {
        let m = self.abs_prec().saturating_sub(drop as i64);
        let m = match &self.repr {
            Repr::Zero { abs } if *abs == EXACT => return Some((BigInt::zero(), u32::MAX)),
            _ => m,
        };
        if m <= 0 {
            return None;
        }
        let m = min(m, self.ring.cap() as i64 + 64) as u32;
        let modulus = self.ring.pow_p(m);
        let residue = match &self.repr {
            Repr::Zero { .. } => BigUint::zero(),
            Repr::Nonzero { val, unit, .. } => {
                if *val < 0 {
                    return None;
                }
                if *val as u64 >= m as u64 {
                    BigUint::zero()
                } else {
                    (unit * self.ring.pow_p(*val as u32)) % &modulus
                }
            }
        };
        let half = &modulus >> 1u32;
        let r = BigInt::from_biguint(Sign::Plus, residue.clone());
        let signed = if residue > half { r - BigInt::from_biguint(Sign::Plus, modulus) } else { r };
        Some((signed, m))
    }

    /// The unit part reduced mod p, `None` for a known zero.
    pub fn unit_residue(&self) -> Option<u64> {
        self.unit().map(|u| (u % BigUint::from(self.prime())).to_u64().expect("residue < p"))
    }

    /// Digits `d_0, d_1, ...` of the unit part (least significant first).
    pub fn unit_digits(&self) -> Vec<u64> {
        let mut out = Vec::new();
        if let Repr::Nonzero { unit, prec, .. } = &self.repr {
            let p = BigUint::from(self.prime());
            let mut u = unit.clone();
            for _ in 0..*prec {
                let (q, r) = u.div_rem(&p);
                out.push(r.to_u64().unwrap_or(0));
                u = q;
            }
        }
        out
    }
}

fn sat_shift(abs: i64, k: i64) -> i64 {
    if abs == EXACT {
        EXACT
    } else {
        abs + k
    }
}

/// `n = p^v * u` with `p ∤ u`. `n` must be nonzero.
pub(crate) fn split_p(n: &BigUint, p: u64) -> (u32, BigUint) {
    let p = BigUint::from(p);
    let mut v = 0;
    let mut u = n.clone();
    loop {
        let (q, r) = u.div_rem(&p);
        if !r.is_zero() {
            return (v, u);
        }
        u = q;
        v += 1;
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Equality is congruence at the minimum available precision. This is not
/// transitive across precision levels.
impl PartialEq for PadicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.congruent(other)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $call:ident) => {
        impl $trait<&PadicScalar> for &PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: &PadicScalar) -> PadicScalar {
                self.$call(rhs).expect("p-adic operands from different contexts")
            }
        }
        impl $trait<PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: PadicScalar) -> PadicScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        self.neg_ref()
    }
}

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        self.neg_ref()
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `p^v*u + O(p^A)` with `u` the symmetric representative of the unit digits.
impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime();
        match &self.repr {
            Repr::Zero { abs: EXACT } => write!(f, "0"),
            Repr::Zero { abs } => write!(f, "0 + O({p}^{abs})"),
            Repr::Nonzero { val, unit, prec } => {
                let modulus = self.ring.pow_p(*prec);
                let half = &modulus >> 1u32;
                let u = BigInt::from_biguint(Sign::Plus, unit.clone());
                let u = if *unit > half { u - BigInt::from_biguint(Sign::Plus, modulus) } else { u };
                let abs = val + *prec as i64;
                match val.cmp(&0) {
                    Ordering::Equal => write!(f, "{u} + O({p}^{abs})"),
                    _ if u.abs().is_one() && u.is_positive() => write!(f, "{p}^{val} + O({p}^{abs})"),
                    _ => write!(f, "{p}^{val}*{u} + O({p}^{abs})"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> Qp {
        Qp::new(5, 20).unwrap()
    }

    #[test]
    fn rejects_even_and_composite() {
        assert_eq!(Qp::new(2, 10).unwrap_err(), Error::UnsupportedPrime(2));
        assert!(Qp::new(9, 10).is_err());
        assert!(Qp::new(5, 0).is_err());
    }

    #[test]
    fn two_plus_three() {
        let r = q5();
        let s = r.from_int(2) + r.from_int(3);
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.unit().unwrap(), &BigUint::one());
    }

    #[test]
    fn fifty_squared() {
        let r = q5();
        let s = r.from_int(50) * r.from_int(50);
        assert_eq!(s.valuation(), Some(4));
        assert_eq!(s.unit_digits()[0], 4);
        assert_eq!(s, r.from_int(2500));
    }

    #[test]
    fn power_against_integer_oracle() {
        let r = Qp::new(5, 6).unwrap();
        let s = r.from_int(6).pow(5).unwrap();
        assert_eq!(s, r.from_int(7776));
        let (res, m) = s.symmetric_residue(0).unwrap();
        assert_eq!(m, 6);
        assert_eq!(res.mod_floor(&BigInt::from(15625)), BigInt::from(7776));
    }

    #[test]
    fn valuations() {
        let r = q5();
        assert_eq!(r.from_int(50).valuation(), Some(2));
        assert_eq!(r.from_rational(&1.into(), &5.into()).unwrap().valuation(), Some(-1));
        assert_eq!(r.zero().valuation(), None);
    }

    #[test]
    fn cancellation_loses_precision() {
        let r = q5();
        let a = r.from_int(1);
        let b = r.from_int(1).truncate(7);
        let d = &a - &b;
        assert!(d.is_known_zero());
        assert_eq!(d.abs_prec(), 7);
    }

    #[test]
    fn division_shifts_valuation() {
        let r = q5();
        let q = r.from_int(7).try_div(&r.from_int(25)).unwrap();
        assert_eq!(q.valuation(), Some(-2));
        assert_eq!(q.rel_prec(), 20);
        assert_eq!(q.try_mul(&r.from_int(25)).unwrap(), r.from_int(7));
        assert_eq!(r.one().try_div(&r.zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn known_zero_absorbs_small_elements() {
        let r = q5();
        let z = r.known_zero(3);
        assert_eq!(z, r.from_int(125));
        assert_ne!(r.known_zero(4), r.from_int(125));
    }

    #[test]
    fn digit_literals() {
        let r = q5();
        let a = r.from_digits(&[1, 2, 3], 1).unwrap();
        assert_eq!(a, r.from_int(5 * (1 + 2 * 5 + 3 * 25)));
        assert_eq!(a.abs_prec(), 4);
    }

    #[test]
    fn mismatched_contexts() {
        let a = q5().one();
        let b = Qp::new(5, 30).unwrap().one();
        assert_eq!(a.try_add(&b).unwrap_err(), Error::FieldMismatch);
        assert!(a.congruent(&b));
    }

    #[test]
    fn slack_formula() {
        let r = Qp::new(3, 50).unwrap();
        assert_eq!(r.slack(), 2 + 4);
        let r = Qp::new(11, 50).unwrap();
        assert_eq!(r.slack(), 2 + 2);
    }

    #[test]
    fn display() {
        let r = q5();
        assert_eq!(r.from_int(-1).to_string(), "-1 + O(5^20)");
        assert_eq!(r.from_int(50).to_string(), "5^2*2 + O(5^22)");
        assert_eq!(r.zero().to_string(), "0");
    }
}
