//! The 2×2 representation of the classical ellipse, checked against the
//! 4×4 tensor-sum pencil.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{FociConfig, FociF64};
use crate::error::{Error, Result};
use crate::geometry::branches::Window;
use crate::linalg;
use crate::pencil::build_planar_pencil;

/// `(d² + (u₁−u₂)(2x−u₁−u₂) + (v₁−v₂)(2y−v₁−v₂))·I + 2d·[[x−u₂, y−v₂], [y−v₂, −x+u₂]]`.
pub fn small_ellipse_matrix(cfg: &FociConfig, x: f64, y: f64) -> Result<DMatrix<f64>> {
    if cfg.k() != 2 || !cfg.is_planar() {
        return Err(Error::invalid("the 2×2 representation needs two planar foci"));
    }
    let f = cfg.foci_f64();
    let (u1, v1, u2, v2) = (f[0][0], f[0][1], f[1][0], f[1][1]);
    let d = cfg.radius_f64();
    let s = d * d + (u1 - u2) * (2.0 * x - u1 - u2) + (v1 - v2) * (2.0 * y - v1 - v2);
    Ok(DMatrix::from_row_slice(
        2,
        2,
        &[s + 2.0 * d * (x - u2), 2.0 * d * (y - v2), 2.0 * d * (y - v2), s - 2.0 * d * (x - u2)],
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmallEllipseReport {
    /// `det(2×2) / det(L₂)` at the sample points.
    pub ratios: Vec<f64>,
    /// `(max − min) / |mean|` of the ratios.
    pub ratio_variation: f64,
    pub grid_points: usize,
    pub grid_mismatches: usize,
    pub pass: bool,
}

/// Proportionality of the two determinants at 10 random points and
/// agreement of the PSD region with the distance test on a 50×50 grid.
pub fn small_ellipse_lmi_check(cfg: &FociConfig, seed: u64) -> Result<SmallEllipseReport> {
    const SAMPLES: usize = 10;
    const GRID: usize = 50;
    let pencil = build_planar_pencil(cfg, false)?;
    if cfg.k() != 2 {
        return Err(Error::invalid("the 2×2 representation needs exactly two foci"));
    }
    let p = pencil.to_f64();
    let window = Window::for_region(cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ratios = Vec::with_capacity(SAMPLES);
    let scale = (1.0 + cfg.radius_f64()).powi(4);
    while ratios.len() < SAMPLES {
        let x = rng.random_range(window.xmin..window.xmax);
        let y = rng.random_range(window.ymin..window.ymax);
        let big = linalg::det(&p.eval(&[x, y]));
        // Near the curve both determinants vanish and the ratio is ill-conditioned.
        if big.abs() < 1e-3 * scale {
            continue;
        }
        ratios.push(linalg::det(&small_ellipse_matrix(cfg, x, y)?) / big);
    }
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let ratio_variation = (max - min) / mean.abs();

    let f = FociF64::from(cfg);
    let d = f.radius;
    let tol_dist = 1e-8 * (1.0 + d);
    let tol_eig = 1e-8 * (1.0 + d) * (1.0 + d);
    let mut mismatches = 0;
    for j in 0..GRID {
        for i in 0..GRID {
            let x = window.xmin + (window.xmax - window.xmin) * (i as f64 + 0.5) / GRID as f64;
            let y = window.ymin + (window.ymax - window.ymin) * (j as f64 + 0.5) / GRID as f64;
            let psd = linalg::min_eigenvalue(&small_ellipse_matrix(cfg, x, y)?) >= -tol_eig;
            let inside = f.distance_sum(&[x, y]) <= d + tol_dist;
            mismatches += (psd != inside) as usize;
        }
    }
    Ok(SmallEllipseReport {
        pass: mean.abs() > 0.0 && ratio_variation <= 1e-8 && mismatches == 0,
        ratios,
        ratio_variation,
        grid_points: GRID * GRID,
        grid_mismatches: mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ellipse() -> FociConfig {
        FociConfig::planar_int(&[(-1, 0), (1, 0)], 4).unwrap()
    }

    #[test]
    fn singular_on_boundary() {
        let m = small_ellipse_matrix(&ellipse(), 2.0, 0.0).unwrap();
        assert!(linalg::det(&m).abs() < 1e-9);
    }

    #[test]
    fn definite_inside() {
        let m = small_ellipse_matrix(&ellipse(), 0.0, 0.0).unwrap();
        assert!(linalg::min_eigenvalue(&m) > 0.0);
    }

    #[test]
    fn proportional_and_matching() {
        let r = small_ellipse_lmi_check(&ellipse(), 5).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.ratios[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn wrong_k() {
        let cfg = FociConfig::planar_int(&[(0, 0)], 1).unwrap();
        assert!(small_ellipse_lmi_check(&cfg, 0).is_err());
        assert!(small_ellipse_matrix(&cfg, 0.0, 0.0).is_err());
    }
}
