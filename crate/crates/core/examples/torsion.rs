// Why torsion elements admit no hypercyclic weighted translation: the
// period cocycles multiply to one.

use aperiodic::aperiodicity::{classify, Budget};
use aperiodic::app::random_cyclic_weight;
use aperiodic::error::Result;
use aperiodic::fhc::{fhc_report, torsion_obstruction, FhcBudget, FhcSetup};
use aperiodic::group::{Group, GroupElement};
use aperiodic::operator::{SupportedFunction, WeightedTranslation};

pub fn run_example() -> Result<()> {
    let z6 = Group::cyclic(6)?;
    let a = GroupElement::Residue(2);
    let classification = classify(&z6, &a, &Budget::default())?;
    let w = random_cyclic_weight(&z6, 6, 0.5, 2.0, 11)?;
    let op = WeightedTranslation::new(&a, w)?;
    let everywhere = SupportedFunction::from_real((0..6).map(|r| (GroupElement::Residue(r), 1.0)));
    let obstruction = torsion_obstruction(&op, 1000, &everywhere)?;
    for e in &obstruction.entries {
        println!("x = {}: c = {:.6}, c' = {:.6}, c c' = {:.15}", e.x, e.c, e.c_inv, e.product);
    }
    let budget = FhcBudget { ts_samples: 100, ..FhcBudget::default() };
    let setup = FhcSetup::new(op, None, 512);
    let report = fhc_report(&setup, &classification, &[SupportedFunction::delta(z6.identity())], &[2.0], &budget);
    println!("order {}, verdict {}", obstruction.order, report.verdict);
    assert!(obstruction.identity_holds && !report.verdict);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
