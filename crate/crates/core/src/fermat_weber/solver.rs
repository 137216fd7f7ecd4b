//! Damped Weiszfeld iteration with an explicit optimality test at the foci.

use crate::config::{dist, FociConfig, FociF64};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum FwStatus {
    /// Minimizer away from every focus; the gradient vanishes there.
    Interior,
    /// Minimizer at focus `j` (0-based): `‖Rⱼ‖ ≤ wⱼ`.
    AtFocus(usize),
    /// Collinear foci with balanced weights: every point of the segment is optimal.
    NonUniqueCollinear { from: Vec<f64>, to: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FwSolution {
    pub point: Vec<f64>,
    /// `d* = Σ wᵢ‖x* − uᵢ‖`.
    pub value: f64,
    pub status: FwStatus,
    /// Gradient norm for interior optima, `‖Rⱼ‖ = ‖Σ_{i≠j} wᵢ(uⱼ−uᵢ)/‖uⱼ−uᵢ‖‖`
    /// for an optimum at focus `j`.
    pub certificate: f64,
    pub iterations: usize,
    /// Objective after every iteration when requested.
    pub objective_trace: Vec<f64>,
}

impl FwSolution {
    /// Checks the optimality condition for the reported status.
    pub fn certificate_holds(&self, cfg: &FociConfig, tol: f64) -> bool {
        match self.status {
            FwStatus::Interior | FwStatus::NonUniqueCollinear { .. } => self.certificate <= tol,
            FwStatus::AtFocus(j) => {
                self.certificate <= crate::rational::to_f64(&cfg.weights()[j]) + tol
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct FwOptions {
    pub max_iterations: usize,
    /// Stop once a step is shorter than `step_tolerance · diameter`.
    pub step_tolerance: f64,
    /// Iterates closer than `focus_tolerance · diameter` to a focus are pushed off.
    pub focus_tolerance: f64,
    pub damping: f64,
    pub record_objective: bool,
}

impl Default for FwOptions {
    fn default() -> Self {
        FwOptions {
            max_iterations: 100_000,
            step_tolerance: 1e-12,
            focus_tolerance: 1e-9,
            damping: 1.0,
            record_objective: false,
        }
    }
}

pub fn solve_fw(cfg: &FociConfig) -> Result<FwSolution> {
    solve_fw_with(cfg, &FwOptions::default())
}

pub fn solve_fw_with(cfg: &FociConfig, opts: &FwOptions) -> Result<FwSolution> {
    let f = FociF64::from(cfg);
    let k = f.foci.len();
    let n = f.foci[0].len();
    let done = |point: Vec<f64>, status: FwStatus, certificate: f64, iterations, trace| {
        let value = f.distance_sum(&point);
        Ok(FwSolution { point, value, status, certificate, iterations, objective_trace: trace })
    };
    if k == 1 {
        return done(f.foci[0].clone(), FwStatus::AtFocus(0), 0.0, 0, Vec::new());
    }
    let diameter = cfg.diameter();

    if let Some(sol) = collinear_solution(&f, diameter) {
        return done(sol.0, sol.1, sol.2, 0, Vec::new());
    }

    let residuals: Vec<(Vec<f64>, f64, f64)> = (0..k).map(|j| focus_residual(&f, j)).collect();
    if let Some(j) = (0..k).find(|&j| residuals[j].1 <= f.weights[j]) {
        return done(f.foci[j].clone(), FwStatus::AtFocus(j), residuals[j].1, 0, Vec::new());
    }

    let total: f64 = f.weights.iter().sum();
    let mut x: Vec<f64> = (0..n)
        .map(|c| f.foci.iter().zip(&f.weights).map(|(u, w)| w * u[c]).sum::<f64>() / total)
        .collect();
    let mut trace = Vec::new();
    let eps = opts.focus_tolerance * diameter;
    for it in 1..=opts.max_iterations {
        if let Some(j) = (0..k).find(|&j| dist(&x, &f.foci[j]) <= eps) {
            // Not optimal at u_j (checked above): step along −R_j.
            let (r, norm, lip) = &residuals[j];
            let step = (norm - f.weights[j]) / lip;
            x = f.foci[j].iter().zip(r).map(|(u, rc)| u - step * rc / norm).collect();
        }
        let mut num = vec![0.0; n];
        let mut den = 0.0;
        for (u, w) in f.foci.iter().zip(&f.weights) {
            let coef = w / dist(&x, u);
            den += coef;
            for c in 0..n {
                num[c] += coef * u[c];
            }
        }
        let next: Vec<f64> = (0..n)
            .map(|c| x[c] + opts.damping * (num[c] / den - x[c]))
            .collect();
        let step = dist(&next, &x);
        x = next;
        if opts.record_objective {
            trace.push(f.distance_sum(&x));
        }
        if step < opts.step_tolerance * diameter {
            let g = gradient_norm(&f, &x);
            return done(x, FwStatus::Interior, g, it, trace);
        }
    }
    Err(Error::Divergence { iterations: opts.max_iterations, last: x })
}

/// `(Rⱼ, ‖Rⱼ‖, Σ_{i≠j} wᵢ/‖uⱼ−uᵢ‖)`.
fn focus_residual(f: &FociF64, j: usize) -> (Vec<f64>, f64, f64) {
    let n = f.foci[j].len();
    let mut r = vec![0.0; n];
    let mut lip = 0.0;
    for (i, (u, w)) in f.foci.iter().zip(&f.weights).enumerate() {
        if i == j {
            continue;
        }
        let dji = dist(&f.foci[j], u);
        lip += w / dji;
        for c in 0..n {
            r[c] += w * (f.foci[j][c] - u[c]) / dji;
        }
    }
    let norm = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    (r, norm, lip)
}

fn gradient_norm(f: &FociF64, x: &[f64]) -> f64 {
    let n = x.len();
    let mut g = vec![0.0; n];
    for (u, w) in f.foci.iter().zip(&f.weights) {
        let r = dist(x, u);
        if r == 0.0 {
            continue;
        }
        for c in 0..n {
            g[c] += w * (x[c] - u[c]) / r;
        }
    }
    g.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Weighted median along the common line, when all foci are collinear.
fn collinear_solution(f: &FociF64, diameter: f64) -> Option<(Vec<f64>, FwStatus, f64)> {
    let origin = &f.foci[0];
    let far = f
        .foci
        .iter()
        .max_by(|a, b| dist(a, origin).total_cmp(&dist(b, origin)))
        .unwrap();
    let len = dist(far, origin);
    let e: Vec<f64> = far.iter().zip(origin).map(|(a, b)| (a - b) / len).collect();
    let along = |p: &[f64]| -> f64 { p.iter().zip(origin).zip(&e).map(|((a, b), c)| (a - b) * c).sum() };
    let off_line = f.foci.iter().any(|p| {
        let t = along(p);
        let perp: f64 = p
            .iter()
            .zip(origin)
            .zip(&e)
            .map(|((a, b), c)| (a - b - t * c).powi(2))
            .sum::<f64>()
            .sqrt();
        perp > 1e-12 * diameter
    });
    if off_line {
        return None;
    }
    let mut order: Vec<usize> = (0..f.foci.len()).collect();
    order.sort_by(|&a, &b| along(&f.foci[a]).total_cmp(&along(&f.foci[b])));
    let total: f64 = f.weights.iter().sum();
    let mut cum = 0.0;
    for (pos, &idx) in order.iter().enumerate() {
        cum += f.weights[idx];
        if cum >= total / 2.0 - 1e-12 * total {
            if (cum - total / 2.0).abs() <= 1e-12 * total && pos + 1 < order.len() {
                let a = f.foci[idx].clone();
                let b = f.foci[order[pos + 1]].clone();
                let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 0.5 * (x + y)).collect();
                let g = gradient_norm(f, &mid);
                return Some((mid, FwStatus::NonUniqueCollinear { from: a, to: b }, g));
            }
            let (_, norm, _) = focus_residual(f, idx);
            return Some((f.foci[idx].clone(), FwStatus::AtFocus(idx), norm));
        }
    }
    unreachable!("cumulative weight reaches the total")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_focus() {
        let cfg = FociConfig::planar_int(&[(3, 4)], 1).unwrap();
        let s = solve_fw(&cfg).unwrap();
        assert_eq!(s.point, vec![3.0, 4.0]);
        assert_eq!(s.value, 0.0);
        assert_eq!(s.status, FwStatus::AtFocus(0));
    }

    #[test]
    fn collinear_cases() {
        let even = FociConfig::planar_int(&[(0, 0), (1, 0), (3, 0), (7, 0)], 1).unwrap();
        let s = solve_fw(&even).unwrap();
        assert!(matches!(s.status, FwStatus::NonUniqueCollinear { .. }));
        assert_eq!(s.point, vec![2.0, 0.0]);
        assert!((s.value - 9.0).abs() < 1e-12);
        let odd = FociConfig::planar_int(&[(0, 0), (5, 5), (1, 1)], 1).unwrap();
        let s = solve_fw(&odd).unwrap();
        assert_eq!(s.status, FwStatus::AtFocus(2));
    }

    #[test]
    fn obtuse_triangle_at_focus() {
        let cfg = FociConfig::from_f64(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 0.1]], None, 1.0).unwrap();
        let s = solve_fw(&cfg).unwrap();
        assert_eq!(s.status, FwStatus::AtFocus(2));
        assert!(s.certificate <= 1.0);
        assert!(s.certificate_holds(&cfg, 1e-9));
    }

    #[test]
    fn monotone_objective() {
        let cfg = FociConfig::planar_int(&[(0, 0), (10, 1), (3, 8), (-4, 5), (6, -7)], 1).unwrap();
        let opts = FwOptions { record_objective: true, ..Default::default() };
        let s = solve_fw_with(&cfg, &opts).unwrap();
        assert_eq!(s.status, FwStatus::Interior);
        assert!(s.objective_trace.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        assert!(s.certificate < 1e-6);
    }

    #[test]
    fn divergence_reported() {
        let cfg = FociConfig::planar_int(&[(0, 0), (10, 1), (3, 8), (-4, 5)], 1).unwrap();
        let opts = FwOptions { max_iterations: 1, step_tolerance: 0.0, ..Default::default() };
        assert!(matches!(solve_fw_with(&cfg, &opts), Err(Error::Divergence { .. })));
    }
}
