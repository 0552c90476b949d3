//! Teichmüller lifts, the Iwasawa logarithm, the exponential and integer
//! recognition on elements of an unramified extension E.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

use super::field::FieldElement;

/// The unique `(p^d - 1)`-th root of unity congruent to `a` mod p, computed
/// by iterating `x ↦ x^(p^d)` to a fixed point at working precision.
pub fn teichmuller(a: &FieldElement) -> Result<FieldElement> {
    if !a.is_unit() {
        return Err(Error::NotAUnit);
    }
    let field = a.field();
    let q = field.residue_size();
    let q = i64::try_from(q).map_err(|_| Error::InvalidArgument("residue field too large".into()))?;
    let mut x = a.lift_precision();
    for _ in 0..=field.precision() + 1 {
        let next = x.pow(q)?;
        if next.try_sub(&x)?.is_known_zero() {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// `log(1 + z)` for `v(z) >= 1`, summed until the tail is below the
/// precision of `z`.
fn log1p(z: &FieldElement) -> Result<FieldElement> {
    let Some(vz) = z.valuation() else {
        return Ok(z.clone());
    };
    if vz < 1 {
        return Err(Error::OutsideConvergenceDomain(vz));
    }
    let p = z.field().prime() as i64;
    let target = z.abs_prec();
    let mut sum = z.clone();
    let mut power = z.clone();
    let mut n: i64 = 1;
    loop {
        n += 1;
        // v(z^n / n) >= n*vz - floor(log_p n), increasing in n.
        if n * vz - floor_log(n, p) >= target {
            break;
        }
        power = power.try_mul(z)?;
        let term = power.scale(&z.field().qp().from_int(n).inv()?)?;
        sum = if n % 2 == 0 { sum.try_sub(&term)? } else { sum.try_add(&term)? };
    }
    // The omitted tail is only bounded modulo p^target.
    Ok(sum.truncate(target))
}

fn floor_log(n: i64, p: i64) -> i64 {
    let mut k = 0;
    let mut m = n;
    while m >= p {
        m /= p;
        k += 1;
    }
    k
}

/// The Iwasawa branch of the p-adic logarithm: `log_p(p) = 0` and
/// `log_p(ζ) = 0` for roots of unity.
///
/// Writes `a = p^v u` and uses `log u = log(u^(q-1)) / (q-1)`, which equals
/// `log⟨u⟩` because `u^(q-1) = ⟨u⟩^(q-1)` is a principal unit.
pub fn iwasawa_log(a: &FieldElement) -> Result<FieldElement> {
    let v = a.valuation().ok_or(Error::LogOfZero)?;
    let field = a.field();
    let unit = a.shift(-v);
    let q = field.residue_size();
    let q1 = i64::try_from(q - 1).map_err(|_| Error::InvalidArgument("residue field too large".into()))?;
    let principal = unit.pow(q1)?;
    let z = principal.try_sub(&field.one())?;
    let log = log1p(&z)?;
    log.scale(&field.qp().from_int(q1).inv()?)
}

/// `exp(a) = Σ a^n / n!` for `v(a) >= 1`.
pub fn p_exp(a: &FieldElement) -> Result<FieldElement> {
    let field = a.field();
    let Some(va) = a.valuation() else {
        return Ok(field.one().truncate(a.abs_prec()));
    };
    if va < 1 {
        return Err(Error::OutsideConvergenceDomain(va));
    }
    let p = field.prime() as i64;
    let target = a.abs_prec().min(field.precision() as i64);
    let mut sum = field.one().try_add(a)?;
    let mut term = a.clone();
    let mut n: i64 = 1;
    loop {
        n += 1;
        // v(a^n / n!) >= n*va - (n-1)/(p-1), increasing in n.
        if n * va - (n - 1) / (p - 1) >= target {
            break;
        }
        term = term.try_mul(a)?.scale(&field.qp().from_int(n).inv()?)?;
        sum = sum.try_add(&term)?;
    }
    Ok(sum.truncate(target))
}

/// The integer `k` with `|k| <= bound` such that `a ≡ k` modulo
/// `p^(abs_prec - slack)`, if there is one.
pub fn recognize_integer(a: &FieldElement, bound: u64) -> Option<i64> {
    let slack = a.field().slack();
    if !a.coeffs()[1..].iter().all(|c| c.is_known_zero()) {
        return None;
    }
    let (residue, m) = a.coeffs()[0].symmetric_residue(slack)?;
    // The window must be wide enough to tell ±bound apart.
    let p = a.field().prime();
    let width = BigInt::from(p).pow(m.min(4096));
    if width <= BigInt::from(2 * bound as u128 + 1) {
        return None;
    }
    let k = residue.to_i64()?;
    (k.unsigned_abs() <= bound).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Field;

    #[test]
    fn teichmuller_of_two_mod_25() {
        let q5 = Field::rationals(5, 20).unwrap();
        let w = teichmuller(&q5.from_int(2)).unwrap();
        assert_eq!(w.truncate(2), q5.from_int(7).truncate(2));
        assert_eq!(w.pow(4).unwrap(), q5.one());
        assert_eq!(teichmuller(&q5.one()).unwrap(), q5.one());
        assert_eq!(teichmuller(&q5.from_int(5)).unwrap_err(), Error::NotAUnit);
    }

    #[test]
    fn log_of_p_and_roots_of_unity() {
        let e = Field::new(5, 2, Some(&[2, 1, 1]), 30).unwrap();
        assert!(iwasawa_log(&e.from_int(5)).unwrap().is_known_zero());
        assert!(iwasawa_log(&e.from_int(125)).unwrap().is_known_zero());
        let zeta = teichmuller(&e.generator()).unwrap();
        assert!(iwasawa_log(&zeta).unwrap().is_known_zero());
        assert_eq!(iwasawa_log(&e.zero()).unwrap_err(), Error::LogOfZero);
    }

    #[test]
    fn log_is_additive() {
        let q5 = Field::rationals(5, 30).unwrap();
        let l6 = iwasawa_log(&q5.from_int(6)).unwrap();
        let l36 = iwasawa_log(&q5.from_int(36)).unwrap();
        assert_eq!(l36, l6.try_add(&l6).unwrap());
    }

    #[test]
    fn exp_basics() {
        let q5 = Field::rationals(5, 30).unwrap();
        assert_eq!(p_exp(&q5.zero()).unwrap(), q5.one());
        let l6 = iwasawa_log(&q5.from_int(6)).unwrap();
        assert_eq!(p_exp(&l6).unwrap(), q5.from_int(6));
        let e5 = p_exp(&q5.from_int(5)).unwrap();
        assert_eq!(e5.try_mul(&e5).unwrap(), p_exp(&q5.from_int(10)).unwrap());
        assert_eq!(p_exp(&q5.from_int(2)).unwrap_err(), Error::OutsideConvergenceDomain(0));
    }

    #[test]
    fn integer_recognition() {
        let q5 = Field::rationals(5, 50).unwrap();
        assert_eq!(recognize_integer(&q5.from_int(3), 100), Some(3));
        assert_eq!(recognize_integer(&q5.from_int(-7), 100), Some(-7));
        assert_eq!(recognize_integer(&q5.from_int(1000), 100), None);
        let l6 = iwasawa_log(&q5.from_int(6)).unwrap();
        assert_eq!(recognize_integer(&l6.try_div(&l6).unwrap(), 100), Some(1));
        assert_eq!(recognize_integer(&l6, 100), None);
        let half = q5.one().try_div(&q5.from_int(2)).unwrap();
        assert_eq!(recognize_integer(&half, 100), None);
    }
}
