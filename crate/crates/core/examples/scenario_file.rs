//! Write a generated scenario to JSON, read it back and verify it; then
//! break the second-case constraint and watch verification fail.
//!
//! The JSON printed here can be saved and passed to `linv verify <path>`.

use linv::family::{scenario_generate, theorem_verify, ScenarioParams};
use linv::literal::{scenario_from_json, ScenarioFile};
use linv::Result;

fn main() -> Result<()> {
    let params = ScenarioParams { p: 7, degree: 1, k: 2, precision: 12, ..Default::default() };
    let scenario = scenario_generate(42, &params)?;
    let mut file = ScenarioFile::from_scenario(&scenario);
    let text = serde_json::to_string_pretty(&file).expect("serializable");
    println!("{text}");

    let back = scenario_from_json(&text)?;
    println!("{}", theorem_verify(&back)?);

    file.q0 = serde_json::json!({ "a": 1, "b": 0 });
    let broken = file.to_scenario()?;
    match theorem_verify(&broken) {
        Err(e) => println!("modified q0: {e}"),
        Ok(r) => println!("modified q0 unexpectedly verified: {}", r.pass),
    }
    Ok(())
}
