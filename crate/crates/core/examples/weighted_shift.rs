// The weighted translation and its inverse acting on finitely supported
// functions on Z.

use aperiodic::error::Result;
use aperiodic::group::{Group, GroupElement};
use aperiodic::operator::{Direction, SupportedFunction, WeightedTranslation};
use aperiodic::terminal::halfline_pair;
use aperiodic::weight::step_weight;

pub fn run_example() -> Result<()> {
    let z = Group::integers();
    let a = GroupElement::int(1);
    let w = step_weight(&halfline_pair(&z, &a, 100.0)?, 0.5, 2.0)?;
    let op = WeightedTranslation::new(&a, w)?;
    let phi = SupportedFunction::delta(z.identity());
    for n in [1, 100, 101, 150, 300] {
        let t = op.iterate(Direction::T, n, &phi)?;
        let s = op.iterate(Direction::S, n, &phi)?;
        println!("n = {n:>3}: |T^n phi|_inf = {:e}, |S^n phi|_inf = {:e}", t.norm_sup(), s.norm_sup());
    }
    let f = SupportedFunction::from_real([(GroupElement::int(-2), 1.5), (GroupElement::int(7), -0.25)]);
    let back = op.apply_t(&op.apply_s(&f)?)?;
    println!("TS f - f has sup norm {:e}", back.sub(&f).norm_sup());
    println!("cocycle c_0(150) = {:e}", op.cocycle_product(&z.identity(), 150)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
