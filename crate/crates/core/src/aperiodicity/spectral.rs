//! Eigenvalue analysis of `GL(n, ℂ)` elements.
//!
//! An invertible matrix generates a relatively compact subgroup exactly when
//! it is diagonalizable with every eigenvalue on the unit circle. The two
//! aperiodic branches each come with a conjugator `P` putting a useful
//! vector into the first columns:
//!
//! * off-circle: `P e₁` is an eigenvector for an eigenvalue `|λ| ≠ 1`, so
//!   `f(x) = ln‖(P⁻¹xP)e₁‖` satisfies `f(x·aⁿ) = f(x) + n·ln|λ|`;
//! * Jordan: `P e₁, P e₂` form a Jordan chain, so the second column of
//!   `P⁻¹aⁿP` is `nλⁿ⁻¹e₁ + λⁿe₂` and its log-norm is unbounded.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Matrix;

/// Modulus tolerance around the unit circle.
pub const UNIT_MODULUS_TOL: f64 = 1e-9;
const CLUSTER_TOL: f64 = 1e-6;
const RANK_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralBranch {
    OffCircle,
    Jordan,
    UnitCircleDiagonalizable,
}

#[derive(Clone, Debug)]
pub struct GlAnalysis {
    pub eigenvalues: Vec<Complex64>,
    pub diagonalizable: bool,
    pub branch: SpectralBranch,
    /// Eigenvalue driving the branch (absent on the unit-circle branch).
    pub lambda: Option<Complex64>,
    pub conjugator: Option<Matrix>,
}

impl GlAnalysis {
    pub fn is_aperiodic(&self) -> bool {
        self.branch != SpectralBranch::UnitCircleDiagonalizable
    }

    pub fn lambda_modulus(&self) -> Option<f64> {
        self.lambda.map(|l| l.norm())
    }

    /// Column of `P⁻¹xP` whose log-norm escapes under right translation.
    pub fn escape_column(&self) -> usize {
        match self.branch {
            SpectralBranch::Jordan => 1,
            _ => 0,
        }
    }
}

pub fn eigenvalues(a: &Matrix) -> Vec<Complex64> {
    let m = a.as_dmatrix().clone();
    match m.clone().schur().eigenvalues() {
        Some(v) => v.iter().copied().collect(),
        None => m.eigenvalues().map(|v| v.iter().copied().collect()).unwrap_or_default(),
    }
}

pub fn analyze(a: &Matrix) -> Result<GlAnalysis> {
    a.check_invertible()?;
    let n = a.dim();
    let eig = eigenvalues(a);
    if eig.len() != n {
        return Err(Error::InvalidElement("eigenvalue computation failed".into()));
    }
    let scale = a.as_dmatrix().iter().map(|z| z.norm()).fold(1.0, f64::max);

    // eigenvalue farthest from the unit circle in log scale
    let off = eig
        .iter()
        .copied()
        .filter(|l| (l.norm() - 1.0).abs() >= UNIT_MODULUS_TOL)
        .max_by(|x, y| x.norm().ln().abs().total_cmp(&y.norm().ln().abs()));

    let clusters = cluster(&eig);
    let mut defective: Option<Complex64> = None;
    for (center, mult) in &clusters {
        if *mult < 2 {
            continue;
        }
        let shifted = shift(a, *center);
        let geo = n - rank(&shifted, RANK_TOL * scale);
        if geo < *mult {
            defective = Some(*center);
            break;
        }
    }
    let diagonalizable = defective.is_none();

    if let Some(lambda) = off {
        let v = null_vector(&shift(a, lambda));
        let p = complete_basis(&[v])?;
        return Ok(GlAnalysis {
            eigenvalues: eig,
            diagonalizable,
            branch: SpectralBranch::OffCircle,
            lambda: Some(lambda),
            conjugator: Some(p),
        });
    }
    if let Some(lambda) = defective {
        let b = shift(a, lambda);
        let b2 = &b * &b;
        let kernel = null_space(&b2, 1e-6 * scale * scale);
        let v2 = kernel
            .into_iter()
            .max_by(|x, y| (&b * x).norm().total_cmp(&(&b * y).norm()))
            .ok_or_else(|| Error::InvalidElement("no generalized eigenvector found".into()))?;
        let v1 = &b * &v2;
        let p = complete_basis(&[v1, v2])?;
        return Ok(GlAnalysis {
            eigenvalues: eig,
            diagonalizable: false,
            branch: SpectralBranch::Jordan,
            lambda: Some(lambda),
            conjugator: Some(p),
        });
    }
    Ok(GlAnalysis {
        eigenvalues: eig,
        diagonalizable: true,
        branch: SpectralBranch::UnitCircleDiagonalizable,
        lambda: None,
        conjugator: None,
    })
}

/// `ln‖(P⁻¹xP)e_col‖`.
pub fn conjugated_log_column_norm(x: &Matrix, p: &Matrix, p_inv: &Matrix, col: usize) -> f64 {
    p_inv.mul(&x.mul(p)).column_norm(col).ln()
}

/// `|ln‖(P⁻¹aⁿP)e₂‖|` by direct matrix powering.
pub fn jordan_log_norm(a: &Matrix, p: &Matrix, n: u64) -> Result<f64> {
    let p_inv = p.inverse()?;
    let mut pow = Matrix::identity(a.dim());
    for _ in 0..n {
        pow = pow.mul(a);
    }
    Ok(conjugated_log_column_norm(&pow, p, &p_inv, 1).abs())
}

/// Closed form of the same quantity for a Jordan block with eigenvalue
/// modulus `m`: `|(n-1)·ln m + ln n + ½·ln(1 + m²/n²)|`.
pub fn jordan_log_norm_formula(modulus: f64, n: u64) -> f64 {
    let n = n as f64;
    ((n - 1.0) * modulus.ln() + n.ln() + 0.5 * (1.0 + modulus * modulus / (n * n)).ln()).abs()
}

fn shift(a: &Matrix, lambda: Complex64) -> DMatrix<Complex64> {
    let n = a.dim();
    a.as_dmatrix() - DMatrix::<Complex64>::identity(n, n) * lambda
}

fn cluster(eig: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    for &l in eig {
        match out.iter_mut().find(|(c, _)| (c - l).norm() < CLUSTER_TOL * l.norm().max(1.0)) {
            Some((c, members)) => {
                members.push(l);
                *c = members.iter().sum::<Complex64>() / members.len() as f64;
            }
            None => out.push((l, vec![l])),
        }
    }
    out.into_iter().map(|(c, m)| (c, m.len())).collect()
}

fn rank(m: &DMatrix<Complex64>, tol: f64) -> usize {
    m.clone().svd(false, false).singular_values.iter().filter(|&&s| s > tol).count()
}

/// Right singular vectors spanning the numerical kernel.
fn null_space(m: &DMatrix<Complex64>, tol: f64) -> Vec<DVector<Complex64>> {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= tol)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect()
}

/// Right singular vector of the smallest singular value.
fn null_vector(m: &DMatrix<Complex64>) -> DVector<Complex64> {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let (i, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .expect("nonempty");
    v_t.row(i).adjoint()
}

/// Invertible matrix whose leading columns are `cols`, padded with
/// standard basis vectors.
fn complete_basis(cols: &[DVector<Complex64>]) -> Result<Matrix> {
    let n = cols[0].len();
    let mut ortho: Vec<DVector<Complex64>> = Vec::new();
    let mut chosen: Vec<DVector<Complex64>> = Vec::new();
    let push = |v: &DVector<Complex64>, ortho: &mut Vec<DVector<Complex64>>, threshold: f64| -> bool {
        let mut r = v.clone();
        for q in ortho.iter() {
            let proj = q.dotc(&r);
            r -= q * proj;
        }
        let norm = r.norm();
        if norm > threshold * v.norm().max(f64::MIN_POSITIVE) {
            ortho.push(r / Complex64::new(norm, 0.0));
            true
        } else {
            false
        }
    };
    for c in cols {
        if !push(c, &mut ortho, 1e-9) {
            return Err(Error::InvalidElement("conjugator columns are dependent".into()));
        }
        chosen.push(c.clone());
    }
    for i in 0..n {
        if chosen.len() == n {
            break;
        }
        let e = DVector::<Complex64>::from_fn(n, |j, _| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
        if push(&e, &mut ortho, 0.1) {
            chosen.push(e);
        }
    }
    let m = DMatrix::from_columns(&chosen);
    let p = Matrix::from_dmatrix(m)?;
    p.check_invertible()?;
    Ok(p)
}
