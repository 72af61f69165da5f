//! Rank decisions for small dense complex matrices.

use nalgebra::DMatrix;

use crate::group::Complex;

/// Relative threshold for deciding that a singular value is zero.
pub const RANK_TOL: f64 = 1e-9;

/// Singular values in descending order. Empty for degenerate shapes.
pub fn singular_values(mat: &DMatrix<Complex>) -> Vec<f64> {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = mat.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

fn threshold(sv: &[f64]) -> f64 {
    RANK_TOL * sv.first().copied().unwrap_or(0.0).max(1.0)
}

/// Number of singular values above `1e-9 * max(1, sigma_max)`.
pub fn range_dim(mat: &DMatrix<Complex>) -> usize {
    let sv = singular_values(mat);
    let t = threshold(&sv);
    sv.iter().filter(|&&s| s > t).count()
}

/// `ncols - rank`.
pub fn kernel_dim(mat: &DMatrix<Complex>) -> usize {
    mat.ncols() - range_dim(mat)
}

/// Smallest singular value above the rank threshold, if any.
pub fn min_nonzero_singular_value(mat: &DMatrix<Complex>) -> Option<f64> {
    let sv = singular_values(mat);
    let t = threshold(&sv);
    sv.into_iter().rfind(|&s| s > t)
}

pub fn max_abs(mat: &DMatrix<Complex>) -> f64 {
    mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
