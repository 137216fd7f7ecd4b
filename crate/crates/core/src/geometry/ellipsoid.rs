//! Vanishing of the spatial tensor-sum determinant on the k-ellipsoid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{FociConfig, FociF64};
use crate::error::{Error, Result};
use crate::fermat_weber::solve_fw;
use crate::linalg;
use crate::pencil::{build_pencil, PencilF64};

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSample {
    pub point: Vec<f64>,
    /// `|det(x)| / max(|det(x − h·e)|, |det(x + h·e)|)` along the ray direction `e`.
    pub scaled_det: f64,
    /// Same ratio at an interior point on the ray (should stay away from 0).
    pub off_surface_scaled_det: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EllipsoidReport {
    pub samples: Vec<SurfaceSample>,
    pub max_scaled_det: f64,
    pub min_off_surface: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Samples the hypersurface `Σ wᵢ‖x − uᵢ‖ = d` by bisection along random rays
/// from the Fermat-Weber point and evaluates the pencil determinant there.
pub fn ellipsoid_vanishing_check(
    cfg: &FociConfig,
    samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<EllipsoidReport> {
    let n = cfg.dimension();
    if n < 2 {
        return Err(Error::invalid("ellipsoid check needs dimension ≥ 2"));
    }
    if (n + 1).pow(cfg.k() as u32) > 1024 {
        return Err(Error::Budget("spatial pencil larger than 1024".into()));
    }
    let fw = solve_fw(cfg)?;
    let f = FociF64::from(cfg);
    if f.radius <= fw.value {
        return Err(Error::invalid(format!(
            "radius {} does not exceed the minimum {}: no surface to sample",
            f.radius, fw.value
        )));
    }
    let pencil = build_pencil(cfg, false)?.to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let e: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = e.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(0.05..=1.0).contains(&norm) {
            continue;
        }
        let e: Vec<f64> = e.iter().map(|v| v / norm).collect();
        let at = |t: f64| -> Vec<f64> { fw.point.iter().zip(&e).map(|(c, v)| c + t * v).collect() };
        let t = bisect_surface(&f, &at)?;
        let h = 1e-3 * (1.0 + t);
        let point = at(t);
        out.push(SurfaceSample {
            scaled_det: scaled_det(&pencil, &at, t, h),
            off_surface_scaled_det: scaled_det(&pencil, &at, 0.8 * t, h),
            point,
        });
    }
    let max_scaled_det = out.iter().map(|s| s.scaled_det).fold(0.0, f64::max);
    let min_off_surface = out.iter().map(|s| s.off_surface_scaled_det).fold(f64::INFINITY, f64::min);
    Ok(EllipsoidReport {
        pass: max_scaled_det <= tolerance,
        samples: out,
        max_scaled_det,
        min_off_surface,
        tolerance,
    })
}

fn scaled_det(p: &PencilF64, at: &dyn Fn(f64) -> Vec<f64>, t: f64, h: f64) -> f64 {
    let det = |s: f64| linalg::det(&p.eval(&at(s))).abs();
    let neighbors = det(t - h).max(det(t + h));
    if neighbors == 0.0 {
        return f64::INFINITY;
    }
    det(t) / neighbors
}

/// Root of `t ↦ Σ wᵢ‖x(t) − uᵢ‖ − d` on `t > 0`, where `x(0)` is interior.
fn bisect_surface(f: &FociF64, at: &dyn Fn(f64) -> Vec<f64>) -> Result<f64> {
    let g = |t: f64| f.distance_sum(&at(t)) - f.radius;
    let mut hi = 1.0;
    while g(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::Degenerate("ray never leaves the region".into()));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
