// Spectral classification in GL(2,C) and the log-norm terminal pair.

use aperiodic::aperiodicity::spectral::{analyze, jordan_log_norm, jordan_log_norm_formula};
use aperiodic::compact::CompactSet;
use aperiodic::error::Result;
use aperiodic::group::{Group, GroupElement, Matrix};
use aperiodic::terminal::{gl_pair, validate_pair};

pub fn run_example() -> Result<()> {
    let gl = Group::general_linear(2)?;
    let diag = Matrix::real_diag(&[2.0, 1.0]);
    let analysis = analyze(&diag)?;
    println!("diag(2,1): branch {:?}, |lambda| = {:?}", analysis.branch, analysis.lambda_modulus());

    let a = GroupElement::Matrix(diag);
    let p = analysis.conjugator.clone().expect("aperiodic elements carry a conjugator");
    let pair = gl_pair(&gl, &a, &p, analysis.lambda_modulus().unwrap_or(2.0), 1.0)?;
    let shear = GroupElement::Matrix(Matrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]])?);
    let k = CompactSet::explicit(&gl, vec![gl.identity(), shear])?;
    let report = validate_pair(&pair, &a, &[k], 512);
    println!("log-norm pair: validated = {}, N = {:?}", report.all_validated, report.compacts[0].n);

    let jordan = Matrix::from_real_rows(&[&[-1.0, 1.0], &[0.0, -1.0]])?;
    let analysis = analyze(&jordan)?;
    let p = analysis.conjugator.clone().expect("Jordan blocks carry a chain basis");
    println!("[[-1,1],[0,-1]]: branch {:?}", analysis.branch);
    for n in [1, 10, 100, 1000] {
        let powered = jordan_log_norm(&jordan, &p, n)?;
        let formula = jordan_log_norm_formula(1.0, n);
        println!("  n = {n:>4}: powered {powered:.12}, closed form {formula:.12}");
        assert!((powered - formula).abs() < 1e-9);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
