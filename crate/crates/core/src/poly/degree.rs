//! Degrees of k-ellipse polynomials: the zero-sum signing count, exact
//! interpolation along lines, and the product-over-branches oracle.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::config::{dist, FociConfig};
use crate::error::{Error, Result};
use crate::matrix::bareiss_det;
use crate::par::{self, Exec};
use crate::pencil::{build_planar_pencil, AffinePencil, Assignment};
use crate::poly::sign::SignVector;
use crate::poly::univariate::UniPoly;
use crate::rational::{self, Rational};

/// `Π_σ (d − Σ (−1)^{σᵢ} wᵢ rᵢ(point))` over all `2^k` sign vectors.
pub fn product_formula_eval(cfg: &FociConfig, point: &[f64]) -> f64 {
    let foci = cfg.foci_f64();
    let w = cfg.weights_f64();
    let d = cfg.radius_f64();
    let wr: Vec<f64> = foci.iter().zip(&w).map(|(u, wi)| wi * dist(point, u)).collect();
    SignVector::all(cfg.k())
        .map(|s| d - s.signed_sum(&wr))
        .product()
}

pub const MAX_SIGNING_K: usize = 40;

/// `|P(w)|`: the number of `δ ∈ {−1,1}^k` with `Σ δᵢ wᵢ = 0`, by
/// meet-in-the-middle over exact integer-scaled weights.
pub fn zero_sum_signings(weights: &[Rational]) -> Result<u64> {
    let k = weights.len();
    if k > MAX_SIGNING_K {
        return Err(Error::Budget(format!(
            "zero-sum signing enumeration limited to k ≤ {MAX_SIGNING_K}, got {k}"
        )));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::invalid("weights must be strictly positive"));
    }
    let l = rational::lcm_of_denominators(weights);
    let scaled: Vec<BigInt> = weights
        .iter()
        .map(|w| (w * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let total: BigInt = scaled.iter().sum();
    if total.to_i128().is_none() {
        return Err(Error::Budget("scaled weights overflow 128-bit sums".into()));
    }
    let ints: Vec<i128> = scaled.iter().map(|v| v.to_i128().unwrap()).collect();
    let half = k / 2;
    let sums = |part: &[i128]| -> Vec<i128> {
        (0..1u64 << part.len())
            .map(|mask| {
                part.iter()
                    .enumerate()
                    .map(|(i, &w)| if mask >> i & 1 == 1 { -w } else { w })
                    .sum()
            })
            .collect()
    };
    let mut left: HashMap<i128, u64> = HashMap::new();
    for s in sums(&ints[..half]) {
        *left.entry(s).or_default() += 1;
    }
    Ok(sums(&ints[half..])
        .into_iter()
        .map(|s| left.get(&-s).copied().unwrap_or(0))
        .sum())
}

/// `2^k − |P(w)|`; unit weights when `weights` is `None`.
pub fn predicted_degree(k: usize, weights: Option<&[Rational]>) -> Result<u64> {
    let unit;
    let w = match weights {
        Some(w) => {
            if w.len() != k {
                return Err(Error::invalid(format!("{} weights given for k = {k}", w.len())));
            }
            w
        }
        None => {
            unit = vec![Rational::one(); k];
            &unit
        }
    };
    let count = zero_sum_signings(w)?;
    Ok((1u64 << k) - count)
}

/// Exact restriction `g(t) = det P(origin + t·direction)` for a pencil whose
/// variables are all fixed by `origin`, recovered by interpolation through
/// `t = 0, 1, …, degree_bound`.
pub fn restricted_determinant(
    pencil: &AffinePencil,
    origin: &Assignment<Rational>,
    direction: &Assignment<Rational>,
    degree_bound: usize,
    exec: Exec,
) -> Result<UniPoly> {
    let (m0, m1) = pencil.line_restriction(origin, direction)?;
    let m = m0.size();
    // One common scale turns every node matrix into an integer matrix.
    let l = rational::lcm_of_denominators(m0.entries().iter().chain(m1.entries()));
    let lr = Rational::from_integer(l.clone());
    let to_int = |v: &Rational| (v * &lr).to_integer();
    let a: Vec<BigInt> = m0.entries().iter().map(to_int).collect();
    let b: Vec<BigInt> = m1.entries().iter().map(to_int).collect();
    let values: Vec<Rational> = par::map_indexed(exec, degree_bound + 1, |t| {
        let t = BigInt::from(t);
        let rows: Vec<Vec<BigInt>> = (0..m)
            .map(|i| (0..m).map(|j| &a[i * m + j] + &t * &b[i * m + j]).collect())
            .collect();
        Rational::from_integer(bareiss_det(rows))
    });
    let g = UniPoly::interpolate_consecutive(&values);
    let scale = Rational::from_integer(num_traits::pow(l, m)).recip();
    Ok(g.scale(&scale))
}

/// Pythagorean directions `(a/c, b/c)` tried in order.
pub const DIRECTIONS: [(i64, i64, i64); 5] =
    [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29)];

#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub degree: usize,
    /// `(direction, degree of g along it)` for every direction evaluated.
    pub attempts: Vec<((i64, i64, i64), usize)>,
    /// `g(t) = p_k(t cos θ, t sin θ)` along the first direction attaining `degree`.
    pub restriction: UniPoly,
}

/// Degree of `p_k` in `(x, y)` from the restriction to lines through the origin.
pub fn degree_by_interpolation(cfg: &FociConfig) -> Result<usize> {
    degree_by_interpolation_report(cfg, Exec::default()).map(|r| r.degree)
}

/// Directions are tried in [`DIRECTIONS`] order until the largest degree seen
/// has been attained along two of them.
pub fn degree_by_interpolation_report(cfg: &FociConfig, exec: Exec) -> Result<DegreeReport> {
    let k = cfg.k();
    if k > 6 {
        return Err(Error::Budget(format!("interpolated degree limited to k ≤ 6, got {k}")));
    }
    let pencil = build_planar_pencil(cfg, false)?;
    let origin: Assignment<Rational> =
        [("x", Rational::zero()), ("y", Rational::zero())].iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let bound = 1usize << k;
    let mut attempts = Vec::new();
    let mut polys: Vec<UniPoly> = Vec::new();
    for &(a, b, c) in DIRECTIONS.iter() {
        let direction: Assignment<Rational> = [("x", rational::ratio(a, c)), ("y", rational::ratio(b, c))]
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        let g = restricted_determinant(&pencil, &origin, &direction, bound, exec)?;
        let deg = g.degree().unwrap_or(0);
        attempts.push(((a, b, c), deg));
        polys.push(g);
        let best = attempts.iter().map(|(_, d)| *d).max().unwrap();
        if attempts.iter().filter(|(_, d)| *d == best).count() >= 2 {
            let idx = attempts.iter().position(|(_, d)| *d == best).unwrap();
            return Ok(DegreeReport { degree: best, attempts, restriction: polys.swap_remove(idx) });
        }
    }
    Err(Error::Degenerate(format!(
        "no two directions agree on the top degree: {attempts:?}"
    )))
}
