//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach stdout.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use linv::characters::FieldCharacter;
use linv::cohomology::{
    coefficient_relation_residual, dual_l_inv, l_inv, orthogonal, pure_by_annihilator, pure_by_proportionality,
    pure_by_rank, tate_pair, Homomorphism, KummerClass,
};
use linv::deformation::{DeformationContext, MVector};
use linv::family::{
    differential_relation_residual, infinitesimal_character, random_character, scenario_generate, tate_l_invariant,
    theorem_residual, theorem_verify, Scenario, ScenarioParams,
};
use linv::padic::{iwasawa_log, p_exp, teichmuller, Field, FieldElement};
use linv::Error;
use num_bigint::BigInt;
use num_integer::Integer;

const N: u32 = 50;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn certified(x: &FieldElement) -> bool {
    x.is_zero_mod(x.field().certified_precision())
}

fn certified_vec(x: &MVector) -> bool {
    x.is_zero_mod(x.field().certified_precision())
}

fn field(p: u64, d: usize) -> Field {
    Field::new(p, d, None, N).unwrap()
}

/// Generated second-case scenarios verify, within the time budget.
fn theorem_end_to_end() -> Outcome {
    let per_combo = 100u64;
    let start = Instant::now();
    let mut total = 0;
    let mut failures = Vec::new();
    for p in PRIMES {
        let mut per_prime = 0;
        for d in [1, 2] {
            for k in 0..=3 {
                let params = ScenarioParams { p, degree: d, r: 1, k, precision: N, ..Default::default() };
                for seed in 0..per_combo {
                    let s = scenario_generate(1000 * k as u64 + seed, &params).unwrap();
                    match theorem_verify(&s) {
                        Ok(r) if r.pass && certified_vec(&r.residual) => {}
                        Ok(r) => failures.push(r.label),
                        Err(e) => failures.push(format!("{}: {e}", s.label)),
                    }
                    per_prime += 1;
                }
            }
        }
        assert!(per_prime >= 100);
        total += per_prime;
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = failures.is_empty() && secs < 10.0;
    (ok, format!("{total} scenarios, {} failed, {secs:.2} s (limit 10 s) {:?}", failures.len(), failures.first()))
}

/// `d log δ(p) = L*(δ₁) d wt(δ)` for pure tensors with finite `L*`.
fn differential_relation() -> Outcome {
    let mut rng = rng(2);
    let mut count = 0;
    let mut bad = 0;
    for i in 0..120 {
        let p = PRIMES[i % 4];
        let ctx = DeformationContext::new(field(p, 1 + i % 2), 1 + (i / 4) % 2).unwrap();
        let f = ctx.field().clone();
        let body = random_character(&ctx, &mut rng, 5).unwrap().body_character().lift(&ctx).unwrap();
        let h = Homomorphism::from_coeffs(small_nonzero(&f, &mut rng, 5), small(&f, &mut rng, 5)).unwrap();
        let c = h.tensor(&small_nonzero_vector(&ctx, &mut rng, 5)).unwrap();
        let delta = body.mul(&infinitesimal_character(&ctx, &c).unwrap()).unwrap();
        count += 1;
        if !certified_vec(&differential_relation_residual(&delta).unwrap()) {
            bad += 1;
        }
    }
    (bad == 0, format!("{count} characters, {bad} nonzero residuals mod p^(N-s)"))
}

/// `⟨ord_p, c⟩ + L*(c)⟨log_p, c⟩ = 0` for pure tensors.
fn coefficient_relation() -> Outcome {
    let mut rng = rng(3);
    let mut bad = 0;
    let count = 120;
    for i in 0..count {
        let ctx = DeformationContext::new(field(PRIMES[i % 4], 1 + (i / 4) % 2), 1 + i % 2).unwrap();
        let f = ctx.field().clone();
        let h = Homomorphism::from_coeffs(small_nonzero(&f, &mut rng, 5), small(&f, &mut rng, 5)).unwrap();
        let c = h.tensor(&small_nonzero_vector(&ctx, &mut rng, 5)).unwrap();
        if !certified_vec(&coefficient_relation_residual(&c).unwrap()) {
            bad += 1;
        }
    }
    (bad == 0, format!("{count} pure tensors with r in {{1,2}}, {bad} nonzero residuals"))
}

/// The pairing of `(p, γ₀)` against `(log_p, ord_p)`.
fn pairing_matrix() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for p in PRIMES {
        let f = field(p, 1);
        let m = N - 1;
        let rows = [KummerClass::p(&f), KummerClass::gamma0(&f)];
        let cols = [Homomorphism::log_p(&f), Homomorphism::ord_p(&f)];
        let oracle_log = log1p_oracle(p, &BigInt::from(p), m);
        let expected = [[BigInt::from(0), BigInt::from(1)], [oracle_log, BigInt::from(0)]];
        let mut entries = [[f.zero(), f.zero()], [f.zero(), f.zero()]];
        for (i, q) in rows.iter().enumerate() {
            for (j, h) in cols.iter().enumerate() {
                let v = tate_pair(q, h).unwrap();
                if v.abs_prec() < m as i64 || scalar_mod(&v.coeffs()[0], m) != expected[i][j] {
                    ok = false;
                    notes.push(format!("p={p} entry ({i},{j}) = {v}"));
                }
                entries[i][j] = v;
            }
        }
        let det = entries[0][0].try_mul(&entries[1][1]).unwrap().try_sub(&entries[0][1].try_mul(&entries[1][0]).unwrap()).unwrap();
        if det.is_known_zero() {
            ok = false;
            notes.push(format!("p={p} singular"));
        }
    }
    (ok, format!("p in {{3,5,7,11}}, [[0,1],[log gamma0,0]] mod p^(N-1), det != 0 {notes:?}"))
}

fn equivalence_holds(q: &KummerClass, h: &Homomorphism<FieldElement>) -> bool {
    orthogonal(q, h).unwrap() == (l_inv(q).unwrap() == dual_l_inv(h).unwrap())
}

/// Orthogonality of `q` and `h` exactly when `L(q) = L*(h)`.
fn orthogonality_equivalence() -> Outcome {
    let mut checked = 0;
    let mut orth = 0;
    let mut bad = 0;
    let range: Vec<(i64, i64)> = (-2..=2).flat_map(|a| (-2..=2).map(move |b| (a, b))).filter(|&x| x != (0, 0)).collect();
    for p in PRIMES {
        let f = field(p, 1);
        for &(a, b) in &range {
            let q = KummerClass::new(f.from_int(a), f.from_int(b)).unwrap();
            for &(l, o) in &range {
                let h = Homomorphism::from_coeffs(f.from_int(l), f.from_int(o)).unwrap();
                checked += 1;
                orth += orthogonal(&q, &h).unwrap() as usize;
                bad += !equivalence_holds(&q, &h) as usize;
            }
        }
    }
    let mut rng = rng(5);
    for i in 0..100 {
        let f = field(PRIMES[i % 4], 1 + i % 2);
        let q = KummerClass::new(small(&f, &mut rng, 9), small_nonzero(&f, &mut rng, 9)).unwrap();
        let h = if i % 2 == 0 {
            orthogonal_hom(&q).scale(&small_nonzero(&f, &mut rng, 9)).unwrap()
        } else {
            Homomorphism::from_coeffs(small_nonzero(&f, &mut rng, 9), small(&f, &mut rng, 9)).unwrap()
        };
        checked += 1;
        orth += orthogonal(&q, &h).unwrap() as usize;
        bad += !equivalence_holds(&q, &h) as usize;
    }
    (bad == 0, format!("{checked} pairs ({orth} orthogonal), {bad} disagreements"))
}

/// Proportionality, annihilator and rank agree on purity.
fn pure_tensor_trichotomy() -> Outcome {
    let mut rng = rng(6);
    let mut bad = 0;
    let (mut pure, mut impure) = (0, 0);
    for i in 0..200 {
        let r = 1 + i % 2;
        let ctx = DeformationContext::new(field(PRIMES[i % 4], 1 + (i / 2) % 2), r).unwrap();
        let f = ctx.field().clone();
        let rand_h = |rng: &mut _| Homomorphism::from_coeffs(small(&f, rng, 5), small(&f, rng, 5)).unwrap();
        let (c, expected) = match (i / 8) % 3 {
            0 => {
                let h = loop {
                    let h = rand_h(&mut rng);
                    if !h.is_known_zero() {
                        break h;
                    }
                };
                (h.tensor(&small_nonzero_vector(&ctx, &mut rng, 5)).unwrap(), Some(true))
            }
            1 if r == 2 => {
                let a = small_nonzero(&f, &mut rng, 5);
                let b = small_nonzero(&f, &mut rng, 5);
                let h1 = Homomorphism::from_coeffs(a, f.zero()).unwrap();
                let h2 = Homomorphism::from_coeffs(f.zero(), b).unwrap();
                let c = h1.tensor(&ctx.basis(0)).unwrap().try_add(&h2.tensor(&ctx.basis(1)).unwrap()).unwrap();
                (c, Some(false))
            }
            _ => {
                let c = loop {
                    let c = Homomorphism::new(small_vector(&ctx, &mut rng, 5), small_vector(&ctx, &mut rng, 5)).unwrap();
                    if !c.is_known_zero() {
                        break c;
                    }
                };
                (c, None)
            }
        };
        let by_prop = pure_by_proportionality(&c).unwrap();
        let by_ann = pure_by_annihilator(&c).unwrap().is_some();
        let by_rank = pure_by_rank(&c).unwrap() <= 1;
        if by_prop != by_ann || by_ann != by_rank || expected.is_some_and(|e| e != by_prop) {
            bad += 1;
        }
        if by_prop {
            pure += 1;
        } else {
            impure += 1;
        }
    }
    (bad == 0, format!("200 tensors ({pure} pure, {impure} impure), {bad} disagreements"))
}

/// `L(E)` for `q_E = 11²·12` against a big-integer series for `log_11(12)`.
fn tate_curve_oracle() -> Outcome {
    let f = field(11, 1);
    let l = tate_l_invariant(&f, &f.qp().from_int(1452)).unwrap();
    let modulus = BigInt::from(11u32).pow(N);
    let oracle = (log1p_oracle(11, &BigInt::from(11), N) * BigInt::from(2).extended_gcd(&modulus).x).mod_floor(&modulus);
    let ours = scalar_mod(&l.coeffs()[0], N.min(l.abs_prec() as u32));
    let agree = agreeing_digits(&ours, &oracle, 11, l.abs_prec().min(N as i64) as u32);
    (agree >= N - 2, format!("{agree} agreeing digits (need >= {})", N - 2))
}

/// `wt(x|x|) = -1`, additivity and independence of the chosen generator.
fn weight_normalization() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for p in PRIMES {
        let f = field(p, 1);
        let xa = FieldCharacter::identity(&f).mul(&FieldCharacter::abs(&f)).unwrap();
        let diff = xa.weight().unwrap().try_add(&f.one()).unwrap();
        if !certified(&diff) {
            ok = false;
            notes.push(format!("p={p}: wt(x|x|)+1 = {diff}"));
        }
    }
    let mut rng = rng(8);
    let (mut add_bad, mut inv_bad) = (0, 0);
    for i in 0..100 {
        let ctx = DeformationContext::new(field(PRIMES[i % 4], 1 + i % 2), 1).unwrap();
        let f = ctx.field().clone();
        let d = random_character(&ctx, &mut rng, 5).unwrap().body_character();
        let e = random_character(&ctx, &mut rng, 5).unwrap().body_character();
        let sum = d.weight().unwrap().try_add(&e.weight().unwrap()).unwrap();
        if !certified(&d.mul(&e).unwrap().weight().unwrap().try_sub(&sum).unwrap()) {
            add_bad += 1;
        }
        let g2 = f.gamma0().try_mul(&f.gamma0()).unwrap();
        if !certified(&d.weight_at(&g2).unwrap().try_sub(&d.weight().unwrap()).unwrap()) {
            inv_bad += 1;
        }
        let b = random_character(&ctx, &mut rng, 5).unwrap();
        let over_b = b.weight_at(&g2).unwrap().try_sub(&b.weight().unwrap()).unwrap();
        if !(certified(over_b.body()) && certified_vec(over_b.tangent())) {
            inv_bad += 1;
        }
    }
    ok &= add_bad == 0 && inv_bad == 0;
    (ok, format!("wt(x|x|) = -1 for all p; 100 pairs: {add_bad} additivity, {inv_bad} gamma0^2 failures {notes:?}"))
}

/// Scenarios violating a hypothesis are rejected, and a perturbed `c`
/// gives a nonzero residual.
fn negative_controls() -> Outcome {
    let mut rng = rng(9);
    let (mut a_bad, mut b_bad, mut c_bad) = (0, 0, 0);
    let count = 60;
    for i in 0..count {
        let params = ScenarioParams { p: PRIMES[i % 4], degree: 1 + i % 2, k: (i % 4) as u32, ..Default::default() };
        let s = scenario_generate(500 + i as u64, &params).unwrap();
        let f = s.field().clone();
        let unit = loop {
            let u = small_nonzero(&f, &mut rng, 5);
            if u.is_unit() {
                break u;
            }
        };
        let bump = Homomorphism::ord_p(&f).tensor(&s.ctx.basis(0).scale(&unit).unwrap()).unwrap();
        let eta = s.eta.mul(&infinitesimal_character(&s.ctx, &bump).unwrap()).unwrap();
        let perturbed = Scenario::new(s.delta.clone(), eta, s.q0.clone(), "perturbed").unwrap();
        if !matches!(theorem_verify(&perturbed), Err(Error::InconsistentScenario(_))) {
            a_bad += 1;
        }
        let residual = theorem_residual(&perturbed.rho().unwrap(), &s.q0).unwrap();
        if residual.is_known_zero() || residual.valuation() != Some(0) {
            b_bad += 1;
        }
        let crystalline = KummerClass::new(f.zero(), small_nonzero(&f, &mut rng, 5)).unwrap();
        let s = Scenario::new(s.delta.clone(), s.eta.clone(), crystalline, "crystalline").unwrap();
        if theorem_verify(&s).unwrap_err() != Error::CrystallineSpecialization {
            c_bad += 1;
        }
    }
    (
        a_bad + b_bad + c_bad == 0,
        format!("{count} scenarios each: (a) {a_bad} accepted, (b) {b_bad} zero residuals, (c) {c_bad} accepted"),
    )
}

/// Logarithm, exponential and Teichmüller lifts on random elements, and
/// agreement between precisions `N` and `N + 10`.
fn padic_oracles() -> Outcome {
    let mut rng = rng(10);
    let mut failures = [0usize; 4];
    let per_prime = 500;
    for p in PRIMES {
        for i in 0..per_prime {
            let d = 1 + i % 2;
            let f = field(p, d);
            let hi = f.with_precision(N + 10).unwrap();
            let a = random_unit(&f, &mut rng);
            let b = random_unit(&f, &mut rng);
            let log_ab = iwasawa_log(&a.try_mul(&b).unwrap()).unwrap();
            let sum = iwasawa_log(&a).unwrap().try_add(&iwasawa_log(&b).unwrap()).unwrap();
            failures[0] += !certified(&log_ab.try_sub(&sum).unwrap()) as usize;

            let x = random_integral(&f, &mut rng).shift(1);
            let round = iwasawa_log(&p_exp(&x).unwrap()).unwrap();
            let u = f.one().try_add(&x).unwrap();
            let back = p_exp(&iwasawa_log(&u).unwrap()).unwrap();
            failures[1] += !(certified(&round.try_sub(&x).unwrap()) && certified(&back.try_sub(&u).unwrap())) as usize;

            let w = teichmuller(&a).unwrap();
            let frob = w.pow(f.residue_size() as i64).unwrap();
            let lifts = w.try_sub(&a).unwrap().valuation().is_none_or(|v| v >= 1);
            let fixed = teichmuller(&w).unwrap();
            failures[2] += !(certified(&frob.try_sub(&w).unwrap()) && lifts && certified(&fixed.try_sub(&w).unwrap())) as usize;

            let a_hi = random_unit(&hi, &mut rng);
            let a_lo = a_hi.to_field(&f).unwrap();
            let log_hi = iwasawa_log(&a_hi).unwrap().to_field(&f).unwrap();
            let teich_hi = teichmuller(&a_hi).unwrap().to_field(&f).unwrap();
            let stable = certified(&log_hi.try_sub(&iwasawa_log(&a_lo).unwrap()).unwrap())
                && certified(&teich_hi.try_sub(&teichmuller(&a_lo).unwrap()).unwrap());
            failures[3] += !stable as usize;
        }
    }
    (
        failures.iter().all(|&n| n == 0),
        format!(
            "{per_prime} elements per prime; failures: log hom {}, exp/log {}, Teichmuller {}, N vs N+10 {}",
            failures[0], failures[1], failures[2], failures[3]
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("theorem end-to-end", theorem_end_to_end),
        ("differential relation", differential_relation),
        ("coefficient relation", coefficient_relation),
        ("pairing matrix", pairing_matrix),
        ("orthogonality <=> equal invariants", orthogonality_equivalence),
        ("pure-tensor trichotomy", pure_tensor_trichotomy),
        ("Tate-curve oracle", tate_curve_oracle),
        ("weight normalization", weight_normalization),
        ("negative controls", negative_controls),
        ("p-adic oracle suite", padic_oracles),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            (false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        failed += !ok as usize;
        let status = if ok { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {name}: {detail} [{:.2} s]", i + 1, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
