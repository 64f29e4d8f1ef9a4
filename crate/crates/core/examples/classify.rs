// Torsion versus aperiodic, with escape certificates.

use aperiodic::aperiodicity::{classify, Budget};
use aperiodic::error::Result;
use aperiodic::group::{Group, GroupElement, Matrix};

pub fn run_example() -> Result<()> {
    let budget = Budget::default();
    let cases = [
        (Group::integers(), GroupElement::int(1)),
        (Group::cyclic(6)?, GroupElement::Residue(2)),
        (Group::lattice(2)?, GroupElement::lattice(&[1, 1])),
        (Group::free2(), GroupElement::word("xy")?),
        (Group::heisenberg(), GroupElement::heis(0, 0, 1)),
        (Group::general_linear(2)?, GroupElement::Matrix(Matrix::real_diag(&[2.0, 1.0]))),
        (Group::general_linear(2)?, GroupElement::Matrix(Matrix::real_diag(&[-1.0, 1.0]))),
        (Group::cylinder(), GroupElement::cylinder(1.0, 0.0)),
    ];
    for (group, a) in cases {
        let c = classify(&group, &a, &budget)?;
        let detail = match (c.order(), c.witness()) {
            (Some(k), _) => format!("order {k}"),
            (_, Some(w)) => format!("escape time {} on a compact of size {}", w.escape.n, w.escape.compact.len()),
            _ => "no certificate within budget".to_string(),
        };
        println!("{:>12} a = {a}: {} ({detail})", group.name(), c.verdict_name());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
