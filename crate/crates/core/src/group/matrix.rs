use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entrywise absolute tolerance used for matrix equality.
pub const MATRIX_TOLERANCE: f64 = 1e-12;

/// Invertibility floor on `|det|`.
pub const DET_FLOOR: f64 = 1e-12;

/// Dense complex square matrix used for `GL(n, ℂ)` elements.
///
/// `Eq`, `Ord` and `Hash` compare entries bitwise so the type can key
/// ordered maps; tolerance-aware comparison lives in [`Matrix::approx_eq`].
#[derive(Clone, Debug)]
pub struct Matrix(DMatrix<Complex64>);

impl Matrix {
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(Error::InvalidElement(format!(
                "matrix must be square and nonempty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(Matrix(m))
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidElement("matrix rows have inconsistent length".into()));
        }
        Self::from_dmatrix(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        Matrix(DMatrix::identity(n, n))
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        Matrix(DMatrix::from_fn(n, n, |i, j| if i == j { entries[i] } else { Complex64::new(0.0, 0.0) }))
    }

    pub fn real_diag(entries: &[f64]) -> Self {
        let e: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diag(&e)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        Matrix(&self.0 * &other.0)
    }

    pub fn det(&self) -> Complex64 {
        self.0.determinant()
    }

    pub fn check_invertible(&self) -> Result<()> {
        let d = self.det().norm();
        if d.is_finite() && d > DET_FLOOR {
            Ok(())
        } else {
            Err(Error::SingularMatrix(d))
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.check_invertible()?;
        self.0
            .clone()
            .try_inverse()
            .map(Matrix)
            .ok_or_else(|| Error::SingularMatrix(self.det().norm()))
    }

    /// Euclidean norm of column `j`.
    pub fn column_norm(&self, j: usize) -> f64 {
        self.0.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Matrix, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Row-major `[[re, im], ...]` rows.
    pub fn to_rows(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| [self.0[(i, j)].re, self.0[(i, j)].im]).collect())
            .collect()
    }

    fn entry_cmp(&self, other: &Matrix) -> Ordering {
        self.dim().cmp(&other.dim()).then_with(|| {
            // nalgebra iterates column-major; any fixed order works here
            for (a, b) in self.0.iter().zip(other.0.iter()) {
                let o = a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.entry_cmp(other) == Ordering::Equal
    }
}

impl Eq for Matrix {}

impl PartialOrd for Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Matrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entry_cmp(other)
    }
}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim().hash(state);
        for z in self.0.iter() {
            z.re.to_bits().hash(state);
            z.im.to_bits().hash(state);
        }
    }
}
