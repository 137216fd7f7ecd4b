use crate::config::{FociConfig, FociF64};
use crate::error::{Error, Result};

use super::solve_fw;

const COARSE_ANGLES: usize = 720;

/// Boundary point minimizing `αx + βy` over the planar k-ellipse.
///
/// Boundary points are found by bisection along rays from the Fermat-Weber
/// point; the angle is optimized by a coarse scan and golden-section search.
pub fn boundary_support(cfg: &FociConfig, direction: [f64; 2]) -> Result<[f64; 2]> {
    if !cfg.is_planar() {
        return Err(Error::Unsupported("support points are planar only".into()));
    }
    let norm = direction[0].hypot(direction[1]);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::invalid("support direction must be nonzero and finite"));
    }
    let fw = solve_fw(cfg)?;
    let d = cfg.radius_f64();
    if d <= fw.value {
        return Err(Error::Degenerate(format!(
            "radius {d} does not exceed the Fermat-Weber value {}; the region has no interior",
            fw.value
        )));
    }
    let f = FociF64::from(cfg);
    let c = [fw.point[0], fw.point[1]];
    let ray = |theta: f64| -> [f64; 2] {
        let e = [theta.cos(), theta.sin()];
        let t = ray_exit(&f, c, e, d);
        [c[0] + t * e[0], c[1] + t * e[1]]
    };
    let objective = |theta: f64| {
        let p = ray(theta);
        direction[0] * p[0] + direction[1] * p[1]
    };
    let h = std::f64::consts::TAU / COARSE_ANGLES as f64;
    let best = (0..COARSE_ANGLES)
        .map(|i| (i, objective(i as f64 * h)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
        .0;
    let (mut a, mut b) = ((best as f64 - 1.0) * h, (best as f64 + 1.0) * h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    while b - a > 1e-13 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = objective(x2);
        }
    }
    Ok(ray(0.5 * (a + b)))
}

/// `t > 0` with `Σ wᵢ‖c + t·e − uᵢ‖ = d`, assuming the sum at `c` is below `d`.
fn ray_exit(f: &FociF64, c: [f64; 2], e: [f64; 2], d: f64) -> f64 {
    let g = |t: f64| f.distance_sum(&[c[0] + t * e[0], c[1] + t * e[1]]) - d;
    let mut hi = 1.0;
    while g(hi) < 0.0 {
        hi *= 2.0;
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
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_support() {
        let cfg = FociConfig::planar_int(&[(0, 0)], 2).unwrap();
        let p = boundary_support(&cfg, [1.0, 0.0]).unwrap();
        assert!((p[0] + 2.0).abs() < 1e-9 && p[1].abs() < 1e-6, "{p:?}");
    }

    #[test]
    fn ellipse_support() {
        // Foci (±1, 0), sum 4: semi-axes 2 and √3.
        let cfg = FociConfig::planar_int(&[(-1, 0), (1, 0)], 4).unwrap();
        let p = boundary_support(&cfg, [0.0, -1.0]).unwrap();
        assert!((p[1] - 3f64.sqrt()).abs() < 1e-9 && p[0].abs() < 1e-6, "{p:?}");
    }

    #[test]
    fn empty_region() {
        let cfg = FociConfig::planar_int(&[(-1, 0), (1, 0)], 2).unwrap();
        assert!(matches!(boundary_support(&cfg, [1.0, 0.0]), Err(Error::Degenerate(_))));
    }
}
