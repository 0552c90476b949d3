//! Helpers shared by the integration tests: seeded generators and
//! independent big-integer oracles that do not go through the crate's
//! analytic functions.
#![allow(dead_code)]

use linv::cohomology::{Homomorphism, KummerClass};
use linv::deformation::{DeformationContext, MVector};
use linv::padic::{Field, FieldElement, PadicScalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PRIMES: [u64; 4] = [3, 5, 7, 11];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(field: &Field, rng: &mut ChaCha8Rng, bound: i64) -> FieldElement {
    let coords: Vec<i64> = (0..field.degree()).map(|_| rng.gen_range(-bound..=bound)).collect();
    field.from_ints(&coords).unwrap()
}

pub fn small_nonzero(field: &Field, rng: &mut ChaCha8Rng, bound: i64) -> FieldElement {
    loop {
        let e = small(field, rng, bound);
        if !e.is_known_zero() {
            return e;
        }
    }
}

/// A random element of `O_E` with every coordinate known to full precision.
pub fn random_integral(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    let p = field.prime();
    let n = field.precision() as usize;
    let coeffs = (0..field.degree())
        .map(|_| {
            let digits: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            field.qp().from_digits(&digits, 0).unwrap()
        })
        .collect();
    field.element(coeffs).unwrap()
}

pub fn random_unit(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    loop {
        let e = random_integral(field, rng);
        if e.is_unit() {
            return e;
        }
    }
}

pub fn small_vector(ctx: &DeformationContext, rng: &mut ChaCha8Rng, bound: i64) -> MVector {
    MVector::new((0..ctx.dim()).map(|_| small(ctx.field(), rng, bound)).collect()).unwrap()
}

pub fn small_nonzero_vector(ctx: &DeformationContext, rng: &mut ChaCha8Rng, bound: i64) -> MVector {
    loop {
        let v = small_vector(ctx, rng, bound);
        if !v.is_known_zero() {
            return v;
        }
    }
}

pub fn log_gamma0(field: &Field) -> FieldElement {
    field.from_scalar(field.log_gamma0().clone())
}

/// `h = a·log_p - (b log γ₀)·ord_p`, which annihilates `p^a γ₀^b`.
pub fn orthogonal_hom(q: &KummerClass) -> Homomorphism<FieldElement> {
    let field = q.field();
    Homomorphism::from_coeffs(q.a().clone(), -&q.b().try_mul(&log_gamma0(field)).unwrap()).unwrap()
}

/// The integer in `[0, p^m)` congruent to an integral scalar.
pub fn scalar_mod(s: &PadicScalar, m: u32) -> BigInt {
    let p = BigInt::from(s.prime());
    let modulus = p.pow(m);
    match (s.valuation(), s.unit()) {
        (Some(v), Some(u)) => {
            assert!(v >= 0, "scalar_mod needs an integral scalar");
            (BigInt::from(u.clone()) * p.pow(v as u32)).mod_floor(&modulus)
        }
        _ => BigInt::zero(),
    }
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

fn p_adic_valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// `log(1 + x) mod p^m` for an integer `x` divisible by `p`, summed term by
/// term as `x^n / n` with big integers.
pub fn log1p_oracle(p: u64, x: &BigInt, m: u32) -> BigInt {
    let pb = BigInt::from(p);
    assert!((x % &pb).is_zero());
    let modulus = pb.pow(m);
    let mut sum = BigInt::zero();
    let mut n: u64 = 1;
    loop {
        let e = p_adic_valuation(n, p);
        // v(x^n / n) >= n - e; once that passes m for all later n we stop.
        if n as i64 - (n as f64).log(p as f64).floor() as i64 > m as i64 + 1 {
            break;
        }
        let cofactor = n / p.pow(e);
        let numerator = x.pow(n as u32) / pb.pow(e);
        let term = numerator * inverse_mod(&BigInt::from(cofactor), &modulus);
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        n += 1;
    }
    sum.mod_floor(&modulus)
}

/// Number of leading p-adic digits on which two integers agree, capped at `m`.
pub fn agreeing_digits(a: &BigInt, b: &BigInt, p: u64, m: u32) -> u32 {
    let diff = (a - b).abs();
    if diff.is_zero() {
        return m;
    }
    let pb = BigInt::from(p);
    let mut d = diff;
    let mut k = 0;
    while (&d % &pb).is_zero() && k < m {
        d /= &pb;
        k += 1;
    }
    k
}
