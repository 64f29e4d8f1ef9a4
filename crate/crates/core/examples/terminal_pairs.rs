// Half-line, pulled-back and word-metric terminal pairs, validated on balls.

use std::sync::Arc;

use aperiodic::compact::CompactSet;
use aperiodic::error::Result;
use aperiodic::group::{Group, GroupElement};
use aperiodic::metric::WordMetric;
use aperiodic::terminal::{halfline_pair, halfline_pullback, validate_pair, word_metric_pair, Homomorphism, DEFAULT_MAX_SCAN, DEFAULT_WINDOW};

pub fn run_example() -> Result<()> {
    let z = Group::integers();
    let one = GroupElement::int(1);
    let pair = halfline_pair(&z, &one, 100.0)?;
    let report = validate_pair(&pair, &one, &[CompactSet::interval(-3, 3)?], 512);
    println!("Z half-lines on [-3,3]: validated = {}, N = {:?}", report.all_validated, report.compacts[0].n);

    let z2 = Group::lattice(2)?;
    let a = GroupElement::lattice(&[1, 1]);
    let metric = Arc::new(WordMetric::new(&z2)?);
    let balls: Vec<CompactSet> = (0..=4).map(|r| metric.ball(&z2.identity(), r)).collect::<Result<_>>()?;

    let pulled = halfline_pullback(&Homomorphism::projection(2, 0)?, &a, 10.0)?;
    let report = validate_pair(&pulled, &a, &balls, 512);
    println!("Z^2 pulled back along the first coordinate: validated = {}", report.all_validated);

    let wm = word_metric_pair(metric, &a, DEFAULT_WINDOW, DEFAULT_MAX_SCAN)?;
    let report = validate_pair(&wm, &a, &balls, 512);
    for c in &report.compacts {
        println!("Z^2 word-metric pair: N = {:?}, estimator = {:?}", c.n, c.estimator);
    }
    assert!(report.all_validated);

    let swapped = pair.swapped();
    let report = validate_pair(&swapped, &one, &[CompactSet::interval(-3, 3)?], 512);
    println!("swapped half-lines: validated = {}, first counterexample = {:?}", report.all_validated, report.compacts[0].counterexamples.first());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
