use crate::config::{FociConfig, FociF64};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::pencil::{build_pencil, PencilF64};

/// Precomputed floating-point pencil for repeated membership queries.
#[derive(Debug, Clone)]
pub struct MembershipOracle {
    pencil: PencilF64,
    foci: FociF64,
    tol: f64,
}

/// Outcome of a single query, with both independent tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub inside: bool,
    pub min_eigenvalue: f64,
    pub distance_slack: f64,
}

impl MembershipOracle {
    pub fn new(cfg: &FociConfig, tol: f64) -> Result<Self> {
        if cfg.k() > 10 {
            return Err(Error::Budget(format!("pencil of size 2^{} is too large", cfg.k())));
        }
        Ok(MembershipOracle {
            pencil: build_pencil(cfg, false)?.to_f64(),
            foci: FociF64::from(cfg),
            tol,
        })
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Eigenvalue test `λ_min ≥ −tol` against distance test `Σ wᵢrᵢ ≤ d + tol`;
    /// disagreement is a verification error.
    pub fn query(&self, point: &[f64]) -> Result<Membership> {
        if point.len() != self.foci.foci[0].len() {
            return Err(Error::invalid("point dimension does not match the foci"));
        }
        if point.iter().any(|v| v.is_nan()) {
            return Err(Error::NotANumber("point".into()));
        }
        let lam = self.pencil.min_eigenvalue(point);
        let slack = self.foci.radius - self.foci.distance_sum(point);
        let by_eig = lam >= -self.tol;
        let by_dist = slack >= -self.tol;
        if by_eig != by_dist {
            return Err(Error::Verification(format!(
                "membership disagreement at {point:?}: min eigenvalue {lam:e}, distance slack {slack:e}"
            )));
        }
        Ok(Membership { inside: by_eig, min_eigenvalue: lam, distance_slack: slack })
    }
}

/// Whether `point` lies in the closed region `Σ wᵢ‖p − uᵢ‖ ≤ d`.
pub fn contains(cfg: &FociConfig, point: &[f64]) -> Result<bool> {
    MembershipOracle::new(cfg, super::DEFAULT_TOL)?
        .query(point)
        .map(|m| m.inside)
}

#[derive(Debug, Clone, Default)]
pub struct MembershipSweep {
    pub points: usize,
    pub inside: usize,
    pub disagreements: usize,
    pub max_abs_gap: f64,
}

/// Runs both tests over many points, counting disagreements instead of failing.
pub fn membership_sweep(
    cfg: &FociConfig,
    points: &[Vec<f64>],
    tol: f64,
    exec: Exec,
) -> Result<MembershipSweep> {
    let oracle = MembershipOracle::new(cfg, tol)?;
    let results = par::map_slice(exec, points, |p| {
        let lam = oracle.pencil.min_eigenvalue(p);
        let slack = oracle.foci.radius - oracle.foci.distance_sum(p);
        (lam >= -tol, slack >= -tol, (lam - slack).abs())
    });
    let mut out = MembershipSweep { points: points.len(), ..Default::default() };
    for (a, b, gap) in results {
        out.inside += a as usize;
        out.disagreements += (a != b) as usize;
        out.max_abs_gap = out.max_abs_gap.max(gap);
    }
    Ok(out)
}
