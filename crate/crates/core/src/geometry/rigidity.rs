//! Real-zero test along random lines through an interior point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{FociConfig, FociF64};
use crate::error::{Error, Result};
use crate::fermat_weber::solve_fw;
use crate::linalg;
use crate::par::{self, Exec};
use crate::pencil::{assignment, build_planar_pencil};
use crate::poly::{predicted_degree, restricted_determinant};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct RigidityReport {
    pub origin: [f64; 2],
    pub direction: [f64; 2],
    /// Degree of the curve, `2^k − |P(w)|`.
    pub expected_roots: usize,
    /// Degree of `t ↦ det L(origin + t·direction)`.
    pub degree: usize,
    /// Real roots counted with multiplicity.
    pub real_roots: usize,
    pub distinct_real_roots: usize,
    /// Directions discarded because the restriction lost degree.
    pub resamples: usize,
    pub pass: bool,
}

const MAX_RESAMPLES: usize = 5;

/// Checks `num_lines` random lines through an interior point; the region is
/// rigidly convex along a line when every root of the restricted
/// determinant is real.
pub fn rigidity_check(cfg: &FociConfig, num_lines: usize, seed: u64) -> Result<Vec<RigidityReport>> {
    rigidity_check_with(cfg, num_lines, seed, Exec::default())
}

pub fn rigidity_check_with(
    cfg: &FociConfig,
    num_lines: usize,
    seed: u64,
    exec: Exec,
) -> Result<Vec<RigidityReport>> {
    if !cfg.is_planar() {
        return Err(Error::invalid("rigidity check needs a planar configuration"));
    }
    if cfg.k() > 6 {
        return Err(Error::Budget(format!("rigidity check limited to k ≤ 6, got {}", cfg.k())));
    }
    let origin = interior_point(cfg)?;
    let pencil = build_planar_pencil(cfg, false)?;
    let expected = predicted_degree(cfg.k(), Some(cfg.weights()))? as usize;
    let bound = 1usize << cfg.k();
    let origin_f = [rational::to_f64(&origin[0]), rational::to_f64(&origin[1])];
    let at = assignment(&[("x", origin[0].clone()), ("y", origin[1].clone())]);
    let reports = par::map_indexed(exec, num_lines, |line| -> Result<RigidityReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (line as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut resamples = 0;
        loop {
            let (dx, dy) = rational_direction(&mut rng);
            let dir = assignment(&[("x", dx.clone()), ("y", dy.clone())]);
            let g = restricted_determinant(&pencil, &at, &dir, bound, Exec::Sequential)?;
            let degree = g.degree().unwrap_or(0);
            if degree < expected && resamples < MAX_RESAMPLES {
                resamples += 1;
                continue;
            }
            let (m0, m1) = pencil.line_restriction(&at, &dir)?;
            let approx = linalg::definite_pencil_roots(&m0.to_f64(), &m1.to_f64()).unwrap_or_default();
            // Sturm sequences are the exact fallback; they are slow at k = 5.
            let (real_roots, distinct_real_roots) = match g.certify_simple_real_roots(&approx) {
                Some(n) => (n, n),
                None => (g.count_real_roots_with_multiplicity(), g.count_distinct_real_roots()),
            };
            return Ok(RigidityReport {
                origin: origin_f,
                direction: [rational::to_f64(&dx), rational::to_f64(&dy)],
                expected_roots: expected,
                degree,
                real_roots,
                distinct_real_roots,
                resamples,
                pass: degree == expected && real_roots == degree,
            });
        }
    });
    reports.into_iter().collect()
}

/// Unit vector `((q²−p²)/(q²+p²), 2pq/(q²+p²))` with small random `p/q`.
fn rational_direction(rng: &mut ChaCha8Rng) -> (Rational, Rational) {
    let p: i64 = rng.random_range(-40..=40);
    let q: i64 = rng.random_range(1..=40);
    let n = q * q + p * p;
    (rational::ratio(q * q - p * p, n), rational::ratio(2 * p * q, n))
}

/// Dyadic rational near the Fermat-Weber point, strictly inside the region.
fn interior_point(cfg: &FociConfig) -> Result<[Rational; 2]> {
    let fw = solve_fw(cfg)?;
    let f = FociF64::from(cfg);
    if f.radius <= fw.value {
        return Err(Error::invalid(format!(
            "radius {} does not exceed the minimum {}; the region has no interior",
            f.radius, fw.value
        )));
    }
    for bits in [6u32, 10, 16, 24, 32, 40] {
        let p = [rational::dyadic(fw.point[0], bits), rational::dyadic(fw.point[1], bits)];
        let pf = [rational::to_f64(&p[0]), rational::to_f64(&p[1])];
        if f.distance_sum(&pf) < f.radius {
            return Ok(p);
        }
    }
    Err(Error::Degenerate("no rational interior point found near the Fermat-Weber point".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_lines_have_two_roots() {
        let cfg = FociConfig::planar_int(&[(1, -2)], 3).unwrap();
        let reports = rigidity_check(&cfg, 5, 11).unwrap();
        assert!(reports.iter().all(|r| r.pass && r.real_roots == 2));
    }

    #[test]
    fn needs_interior() {
        let cfg = FociConfig::planar_int(&[(0, 0), (4, 0)], 3).unwrap();
        assert!(rigidity_check(&cfg, 1, 0).is_err());
    }

    #[test]
    fn ellipse_lines() {
        let cfg = FociConfig::planar_int(&[(-1, 0), (1, 0)], 4).unwrap();
        let reports = rigidity_check(&cfg, 4, 3).unwrap();
        assert!(reports.iter().all(|r| r.pass && r.expected_roots == 2));
    }
}
