//! Floating-point symmetric eigenvalue helpers (backed by nalgebra).

use nalgebra::DMatrix;

/// Eigenvalues of a symmetric matrix in ascending order.
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    if m.nrows() == 1 {
        return m[(0, 0)];
    }
    m.clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

pub fn det(m: &DMatrix<f64>) -> f64 {
    m.clone().lu().determinant()
}

/// Roots of `t ↦ det(M0 + t·M1)` for symmetric `M0 ≻ 0`, via the
/// eigenvalues `μ` of `C⁻¹M1C⁻ᵀ` (`M0 = CCᵀ`): each nonzero `μ` gives `t = −1/μ`.
/// `None` when `M0` is not positive definite.
pub fn definite_pencil_roots(m0: &DMatrix<f64>, m1: &DMatrix<f64>) -> Option<Vec<f64>> {
    let chol = m0.clone().cholesky()?;
    let c = chol.l();
    let x = c.solve_lower_triangular(m1)?;
    let y = c.solve_lower_triangular(&x.transpose())?;
    let sym = (&y + &y.transpose()) * 0.5;
    let mu = sym_eigenvalues(&sym);
    let scale = mu.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut roots: Vec<f64> = mu
        .iter()
        .filter(|v| v.abs() > 1e-12 * scale)
        .map(|v| -1.0 / v)
        .collect();
    roots.sort_by(f64::total_cmp);
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_of_2x2() {
        let m = DMatrix::from_row_slice(2, 2, &[8.0, 4.0, 4.0, 2.0]);
        let ev = sym_eigenvalues(&m);
        assert!(ev[0].abs() < 1e-12);
        assert!((ev[1] - 10.0).abs() < 1e-12);
        assert!(det(&m).abs() < 1e-12);
        assert!(min_eigenvalue(&m).abs() < 1e-12);
    }
}
