// The full pipeline from a JSON config: classification, pair validation,
// weight and the criterion report.

use aperiodic::app::run_pipeline;
use aperiodic::config::RunConfig;
use aperiodic::error::Result;

pub fn run_example() -> Result<()> {
    let cfg = RunConfig::from_json(r#"{"group": {"kind": "Zd", "dim": 2}, "element": [1, 0], "seed": 3, "budgets": {"ts_samples": 100}}"#)?;
    let out = run_pipeline(&cfg);
    let report = &out.json["report"];
    println!("exit code {}", out.exit_code);
    println!("conditions {}", report["conditions"]);
    println!("implied properties {}", report["implied_properties"]);
    println!("notes {}", out.json["notes"]);
    for (name, body) in &out.csv {
        println!("{name}: {} rows", body.lines().count() - 1);
    }
    assert_eq!(out.exit_code, 0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
