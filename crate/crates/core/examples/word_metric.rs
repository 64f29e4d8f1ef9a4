// Word lengths, balls and sphere growth in finitely generated groups.

use aperiodic::error::Result;
use aperiodic::group::{Group, GroupElement};
use aperiodic::metric::WordMetric;

pub fn run_example() -> Result<()> {
    let cases = [
        (Group::lattice(2)?, GroupElement::lattice(&[3, -4])),
        (Group::free2(), GroupElement::word("xyXy")?),
        (Group::heisenberg(), GroupElement::heis(0, 0, 4)),
    ];
    for (group, g) in cases {
        let metric = WordMetric::new(&group)?;
        let spheres = metric.sphere_sizes(4)?;
        println!("{}: |{g}| = {}, sphere sizes up to radius 4 = {spheres:?}", group.name(), metric.length(&g)?);
        assert_eq!(metric.ball(&group.identity(), 4)?.len(), spheres.iter().sum::<usize>());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
