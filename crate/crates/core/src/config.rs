//! Focus configurations.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// `k` weighted foci in `ℝⁿ` together with a radius `d`.
///
/// Coordinates, weights and radius are stored exactly; floating-point views
/// are produced on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct FociConfig {
    dimension: usize,
    foci: Vec<Vec<Rational>>,
    weights: Vec<Rational>,
    radius: Rational,
}

impl FociConfig {
    /// Validates `k ≥ 1`, a common dimension `n ≥ 1`, distinct foci,
    /// positive weights and `d ≥ 0`. Missing weights default to 1.
    pub fn new(
        foci: Vec<Vec<Rational>>,
        weights: Option<Vec<Rational>>,
        radius: Rational,
    ) -> Result<Self> {
        if foci.is_empty() {
            return Err(Error::invalid("at least one focus is required"));
        }
        let dimension = foci[0].len();
        if dimension == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if let Some(bad) = foci.iter().position(|f| f.len() != dimension) {
            return Err(Error::invalid(format!(
                "focus {} has {} coordinates, expected {dimension}",
                bad + 1,
                foci[bad].len()
            )));
        }
        for i in 0..foci.len() {
            for j in i + 1..foci.len() {
                if foci[i] == foci[j] {
                    return Err(Error::invalid("foci must be distinct"));
                }
            }
        }
        let weights = weights.unwrap_or_else(|| vec![rational::int(1); foci.len()]);
        if weights.len() != foci.len() {
            return Err(Error::invalid(format!(
                "{} weights given for {} foci",
                weights.len(),
                foci.len()
            )));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::invalid("weights must be strictly positive"));
        }
        if radius.is_negative() {
            return Err(Error::invalid("radius must be nonnegative"));
        }
        Ok(FociConfig { dimension, foci, weights, radius })
    }

    pub fn from_f64(foci: &[Vec<f64>], weights: Option<&[f64]>, radius: f64) -> Result<Self> {
        let foci = foci
            .iter()
            .map(|p| p.iter().map(|&v| rational::from_f64(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let weights = weights
            .map(|w| w.iter().map(|&v| rational::from_f64(v)).collect::<Result<Vec<_>>>())
            .transpose()?;
        Self::new(foci, weights, rational::from_f64(radius)?)
    }

    /// Planar configuration from integer coordinates.
    pub fn planar_int(foci: &[(i64, i64)], radius: i64) -> Result<Self> {
        let foci = foci
            .iter()
            .map(|&(u, v)| vec![rational::int(u), rational::int(v)])
            .collect();
        Self::new(foci, None, rational::int(radius))
    }

    /// Random distinct planar foci with integer coordinates in `[-range, range]`.
    pub fn random_planar(k: usize, range: i64, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        if ((2 * range + 1) * (2 * range + 1)) < k as i64 {
            return Err(Error::invalid("coordinate range too small for k distinct foci"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts: Vec<(i64, i64)> = Vec::with_capacity(k);
        while pts.len() < k {
            let p = (rng.random_range(-range..=range), rng.random_range(-range..=range));
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        Self::planar_int(&pts, 0)
    }

    pub fn with_radius(&self, radius: Rational) -> Result<Self> {
        if radius.is_negative() {
            return Err(Error::invalid("radius must be nonnegative"));
        }
        Ok(FociConfig { radius, ..self.clone() })
    }

    pub fn with_radius_f64(&self, radius: f64) -> Result<Self> {
        self.with_radius(rational::from_f64(radius)?)
    }

    pub fn with_weights(&self, weights: Vec<Rational>) -> Result<Self> {
        Self::new(self.foci.clone(), Some(weights), self.radius.clone())
    }

    pub fn k(&self) -> usize {
        self.foci.len()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_planar(&self) -> bool {
        self.dimension == 2
    }

    pub fn foci(&self) -> &[Vec<Rational>] {
        &self.foci
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn foci_f64(&self) -> Vec<Vec<f64>> {
        self.foci
            .iter()
            .map(|p| p.iter().map(rational::to_f64).collect())
            .collect()
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.weights.iter().map(rational::to_f64).collect()
    }

    pub fn radius_f64(&self) -> f64 {
        rational::to_f64(&self.radius)
    }

    pub fn unit_weights(&self) -> bool {
        self.weights.iter().all(|w| *w == rational::int(1))
    }

    /// Largest distance between two foci (1 for a single focus).
    pub fn diameter(&self) -> f64 {
        let f = self.foci_f64();
        let mut diam = 0.0f64;
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                diam = diam.max(dist(&f[i], &f[j]));
            }
        }
        if diam.is_zero() {
            1.0
        } else {
            diam
        }
    }

    /// `Σ wᵢ ‖p − uᵢ‖`.
    pub fn weighted_distance_sum(&self, p: &[f64]) -> f64 {
        FociF64::from(self).distance_sum(p)
    }
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Floating-point snapshot of a configuration for hot loops.
#[derive(Debug, Clone)]
pub struct FociF64 {
    pub foci: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub radius: f64,
}

impl FociF64 {
    pub fn distances(&self, p: &[f64]) -> Vec<f64> {
        self.foci.iter().map(|u| dist(p, u)).collect()
    }

    pub fn distance_sum(&self, p: &[f64]) -> f64 {
        self.foci
            .iter()
            .zip(&self.weights)
            .map(|(u, w)| w * dist(p, u))
            .sum()
    }
}

impl From<&FociConfig> for FociF64 {
    fn from(cfg: &FociConfig) -> Self {
        FociF64 { foci: cfg.foci_f64(), weights: cfg.weights_f64(), radius: cfg.radius_f64() }
    }
}
