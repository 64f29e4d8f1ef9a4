// A periodic point and a transitivity witness built from the two series.

use aperiodic::error::Result;
use aperiodic::fhc::{periodic_point, transitivity_witness, FhcSetup};
use aperiodic::group::{Group, GroupElement};
use aperiodic::operator::{SupportedFunction, WeightedTranslation};
use aperiodic::terminal::halfline_pair;
use aperiodic::weight::step_weight;

pub fn run_example() -> Result<()> {
    let z = Group::integers();
    let a = GroupElement::int(1);
    let pair = halfline_pair(&z, &a, 100.0)?;
    let op = WeightedTranslation::new(&a, step_weight(&pair, 0.5, 2.0)?)?;
    let setup = FhcSetup::new(op, Some(pair), 512);
    let phi = SupportedFunction::delta(z.identity());
    for truncation in [1, 5, 10] {
        let pp = periodic_point(&setup, &phi, 150, truncation, 2.0)?;
        println!("period 150, truncation {truncation:>2}: relative residual {:e}", pp.relative_residual);
    }
    let psi = SupportedFunction::from_real([(GroupElement::int(3), 1.0), (GroupElement::int(-5), 2.0)]);
    let tw = transitivity_witness(&setup, &phi, &psi, 300, 2.0)?;
    println!("n = 300: |x - phi| = {:e}, |T^n x - psi| = {:e}", tw.err_near, tw.err_hit);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
