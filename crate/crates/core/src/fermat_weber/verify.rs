use crate::config::FociConfig;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::pencil::build_planar_pencil;

use super::FwSolution;

/// Outcome of checking a Fermat-Weber solution against the pencil.
#[derive(Debug, Clone)]
pub struct FwVerification {
    /// `λ_min(L(x*, y*, d*))`; should vanish.
    pub min_eigenvalue: f64,
    pub eigen_tolerance: f64,
    /// Radius used for the infeasibility grid, `d* − δ`.
    pub shrunk_radius: f64,
    pub grid_points: usize,
    /// Grid points where `L(x, y, d* − δ)` is still positive semidefinite.
    pub feasible_points: usize,
    pub pass: bool,
}

pub fn verify_fw_via_pencil(cfg: &FociConfig, sol: &FwSolution) -> Result<FwVerification> {
    verify_fw_via_pencil_with(cfg, sol, 0.01, 101, Exec::default())
}

/// The pencil must be singular at `(x*, y*, d*)` and infeasible on a
/// `grid × grid` neighbourhood of `x*` once the radius drops to `d* − delta`.
pub fn verify_fw_via_pencil_with(
    cfg: &FociConfig,
    sol: &FwSolution,
    delta: f64,
    grid: usize,
    exec: Exec,
) -> Result<FwVerification> {
    if !cfg.is_planar() {
        return Err(Error::Unsupported("pencil verification is planar only".into()));
    }
    if cfg.k() > 8 {
        return Err(Error::Budget(format!("pencil of size 2^{} is too large to verify", cfg.k())));
    }
    let pencil = build_planar_pencil(cfg, true)?;
    let order: Vec<&str> = pencil.vars().iter().map(String::as_str).collect();
    let pf = pencil.to_f64();
    let values = |x: f64, y: f64, d: f64| -> Vec<f64> {
        order
            .iter()
            .map(|v| match *v {
                "x" => x,
                "y" => y,
                _ => d,
            })
            .collect()
    };
    let (xs, ys) = (sol.point[0], sol.point[1]);
    let min_eigenvalue = pf.min_eigenvalue(&values(xs, ys, sol.value));
    let eigen_tolerance = 1e-7 * (1.0 + sol.value);

    let shrunk = sol.value - delta;
    let half = 0.05 * cfg.diameter();
    let grid = grid.max(2);
    let step = 2.0 * half / (grid - 1) as f64;
    let flags = par::map_indexed(exec, grid * grid, |idx| {
        let (i, j) = (idx / grid, idx % grid);
        let x = xs - half + i as f64 * step;
        let y = ys - half + j as f64 * step;
        pf.min_eigenvalue(&values(x, y, shrunk)) >= 0.0
    });
    let feasible_points = flags.iter().filter(|&&f| f).count();
    Ok(FwVerification {
        min_eigenvalue,
        eigen_tolerance,
        shrunk_radius: shrunk,
        grid_points: grid * grid,
        feasible_points,
        pass: min_eigenvalue.abs() <= eigen_tolerance && feasible_points == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat_weber::solve_fw;

    #[test]
    fn triangle_certificate() {
        let cfg = FociConfig::planar_int(&[(0, 0), (4, 0), (1, 3)], 1).unwrap();
        let sol = solve_fw(&cfg).unwrap();
        let v = verify_fw_via_pencil_with(&cfg, &sol, 0.01, 21, Exec::Sequential).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn perturbed_point_fails() {
        let cfg = FociConfig::planar_int(&[(0, 0), (4, 0), (1, 3)], 1).unwrap();
        let mut sol = solve_fw(&cfg).unwrap();
        sol.value += 0.5;
        let v = verify_fw_via_pencil_with(&cfg, &sol, 0.01, 11, Exec::Sequential).unwrap();
        assert!(!v.pass);
    }
}
