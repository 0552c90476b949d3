//! Build a second-case family by hand, verify the differential relation on
//! it, then verify a batch of generated scenarios.

use linv::characters::DeformedCharacter;
use linv::cohomology::{Homomorphism, KummerClass};
use linv::deformation::DeformationContext;
use linv::family::{infinitesimal_character, scenario_generate, second_case_twist, theorem_verify, Scenario, ScenarioParams};
use linv::padic::Field;
use linv::Result;

fn main() -> Result<()> {
    let field = Field::rationals(5, 50)?;
    let ctx = DeformationContext::new(field.clone(), 1)?;
    let log_gamma0 = field.from_scalar(field.log_gamma0().clone());

    // q0 = p^2 γ₀ and c = (2 log_p - log γ₀ ord_p) ⊗ ε, so that c(q0) = 0.
    let q0 = KummerClass::new(field.from_int(2), field.from_int(1))?;
    let c = Homomorphism::from_coeffs(field.from_int(2), -&log_gamma0)?.tensor(&ctx.basis(0))?;
    let delta = DeformedCharacter::trivial(&ctx);
    let eta = second_case_twist(&field, 0)?.lift(&ctx)?.mul(&infinitesimal_character(&ctx, &c)?)?;
    let report = theorem_verify(&Scenario::new(delta, eta, q0, "hand-built")?)?;
    println!("{report}");

    let mut passed = 0;
    let total = 40;
    for seed in 0..total {
        let params = ScenarioParams { p: [3, 5, 7, 11][seed as usize % 4], degree: 2, k: (seed % 4) as u32, ..Default::default() };
        passed += theorem_verify(&scenario_generate(seed, &params)?)?.pass as u32;
    }
    println!("generated scenarios: {passed}/{total} passed");
    Ok(())
}
