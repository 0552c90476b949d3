//! Polynomials over F_p, just enough to test irreducibility and pick
//! defining polynomials.

type Poly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2)
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
    let mut a = a.clone();
    trim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while a.len() > dm {
        let top = a.len() - 1;
        let c = mulmod(a[top], lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            let idx = top - dm + i;
            a[idx] = (a[idx] + p - mulmod(c, mi, p)) % p;
        }
        trim(&mut a);
    }
    a
}

fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

fn powmod(base: &Poly, mut e: u128, m: &Poly, p: u64) -> Poly {
    let mut result = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Whether the polynomial with coefficients `coeffs` (low degree first) is
/// irreducible over F_p. Checks `gcd(f, x^(p^i) - x) = 1` for `i <= deg/2`.
pub fn is_irreducible_mod_p(coeffs: &[u64], p: u64) -> bool {
    let mut f: Poly = coeffs.iter().map(|c| c % p).collect();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let d = f.len() - 1;
    let x = vec![0u64, 1];
    let mut frob = x.clone();
    for _ in 1..=d / 2 {
        frob = powmod(&frob, p as u128, &f, p);
        let mut diff = frob.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if gcd(&f, &diff, p).len() > 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `d` over F_p, ordering
/// candidates `x^d + c_{d-1}x^{d-1} + ... + c_0` by the integer
/// `Σ c_i p^i`. Returns coefficients low degree first, leading 1 included.
pub fn default_irreducible(p: u64, d: usize) -> Vec<u64> {
    if d == 1 {
        return vec![0, 1];
    }
    let mut counter = vec![0u64; d];
    loop {
        let mut f = counter.clone();
        f.push(1);
        if f[0] != 0 && is_irreducible_mod_p(&f, p) {
            return f;
        }
        // increment, c_0 least significant
        let mut i = 0;
        loop {
            counter[i] += 1;
            if counter[i] < p {
                break;
            }
            counter[i] = 0;
            i += 1;
            assert!(i < d, "an irreducible polynomial of every degree exists");
        }
    }
}

/// Smallest primitive root modulo p.
pub fn primitive_root(p: u64) -> u64 {
    let n = p - 1;
    let mut factors = Vec::new();
    let mut m = n;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            factors.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&f| powmod_int(g, n / f, p) != 1))
        .unwrap_or(1)
}

pub fn powmod_int(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// Discrete logarithm of `a` to base `g` modulo p by exhaustive search.
pub fn discrete_log(a: u64, g: u64, p: u64) -> Option<u64> {
    let a = a % p;
    let mut x = 1 % p;
    for j in 0..p - 1 {
        if x == a {
            return Some(j);
        }
        x = mulmod(x, g, p);
    }
    None
}
