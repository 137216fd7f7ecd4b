//! Exact determinant expansion of affine pencils.
//!
//! Two independent routes are provided: cofactor (Laplace) expansion with
//! minors memoized by column subset, and fraction-free Bareiss elimination
//! with exact multivariate division. They must agree term for term.

use std::collections::HashMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::pencil::AffinePencil;
use crate::poly::sparse::SparsePoly;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetStrategy {
    /// Cofactor up to size 8, Bareiss above.
    Auto,
    Cofactor,
    Bareiss,
}

/// Size limits for exact expansion.
#[derive(Debug, Clone, Copy)]
pub struct DetBudget {
    /// Largest pencil when only the spatial variables (and `d`) are symbolic.
    pub max_size: usize,
    /// Largest pencil when focus coordinates are symbolic too.
    pub max_symbolic_size: usize,
    /// Numeric pencils with at most this many variables count as non-symbolic.
    pub numeric_var_limit: usize,
    pub max_cofactor_size: usize,
}

impl Default for DetBudget {
    fn default() -> Self {
        DetBudget { max_size: 32, max_symbolic_size: 8, numeric_var_limit: 4, max_cofactor_size: 12 }
    }
}

/// The pencil as a matrix of affine polynomials in its own variables.
pub fn polynomial_matrix(p: &AffinePencil) -> Vec<Vec<SparsePoly>> {
    let m = p.size();
    let vars = p.vars();
    let coeffs: Vec<_> = p.coeffs().map(|(_, c)| c).collect();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let lin: Vec<Rational> = coeffs.iter().map(|c| c[(i, j)].clone()).collect();
                    SparsePoly::affine(vars, &p.constant_matrix()[(i, j)], &lin)
                })
                .collect()
        })
        .collect()
}

pub fn det_expand(p: &AffinePencil) -> Result<SparsePoly> {
    det_expand_with(p, DetStrategy::Auto, &DetBudget::default())
}

pub fn det_expand_with(
    p: &AffinePencil,
    strategy: DetStrategy,
    budget: &DetBudget,
) -> Result<SparsePoly> {
    let m = p.size();
    let symbolic = p.vars().len() > budget.numeric_var_limit;
    let limit = if symbolic { budget.max_symbolic_size } else { budget.max_size };
    if m > limit {
        return Err(Error::Budget(format!(
            "exact expansion of a {m}×{m} pencil in {} variables exceeds the limit of {limit}",
            p.vars().len()
        )));
    }
    let strategy = match strategy {
        DetStrategy::Auto if m <= 8 => DetStrategy::Cofactor,
        DetStrategy::Auto => DetStrategy::Bareiss,
        s => s,
    };
    let a = polynomial_matrix(p);
    match strategy {
        DetStrategy::Cofactor => {
            if m > budget.max_cofactor_size {
                return Err(Error::Budget(format!(
                    "cofactor expansion limited to size {}, got {m}",
                    budget.max_cofactor_size
                )));
            }
            Ok(cofactor_det(p.vars(), &a))
        }
        _ => bareiss_poly_det(p.vars(), a),
    }
}

/// Laplace expansion along rows, bottom-up over column subsets.
fn cofactor_det(vars: &[String], a: &[Vec<SparsePoly>]) -> SparsePoly {
    let m = a.len();
    if m == 0 {
        return SparsePoly::constant(vars, Rational::one());
    }
    // minors[S] = det(rows m-|S|.., columns S)
    let mut minors: HashMap<u32, SparsePoly> = HashMap::new();
    minors.insert(0, SparsePoly::constant(vars, Rational::one()));
    for size in 1..=m {
        let row = m - size;
        let mut next: HashMap<u32, SparsePoly> = HashMap::new();
        for (&sub, minor) in &minors {
            for (j, aij) in a[row].iter().enumerate() {
                let bit = 1u32 << j;
                if sub & bit != 0 || aij.is_zero() {
                    continue;
                }
                let set = sub | bit;
                // j is at position popcount(set below j) within the new column set.
                let pos = (set & (bit - 1)).count_ones();
                let mut term = aij * minor;
                if pos % 2 == 1 {
                    term = -&term;
                }
                let entry = next.entry(set).or_insert_with(|| SparsePoly::zero(vars));
                *entry = &*entry + &term;
            }
        }
        next.retain(|_, v| !v.is_zero());
        minors = next;
    }
    let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    minors.remove(&full).unwrap_or_else(|| SparsePoly::zero(vars))
}

fn bareiss_poly_det(vars: &[String], mut a: Vec<Vec<SparsePoly>>) -> Result<SparsePoly> {
    let n = a.len();
    if n == 0 {
        return Ok(SparsePoly::constant(vars, Rational::one()));
    }
    let mut negate = false;
    let mut prev = SparsePoly::constant(vars, Rational::one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(SparsePoly::zero(vars)),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = &(&row[j] * &pivot_row[k]) - &(&lead * &pivot_row[j]);
                row[j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::Verification("Bareiss step left a nonzero remainder".into())
                })?;
            }
            row[k] = SparsePoly::zero(vars);
        }
        prev = pivot_row[k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// `true` iff the coefficient of `d^(2^k)` is exactly 1 and no higher power of `d` occurs.
pub fn monic_in_d_check(p: &SparsePoly, k: usize) -> bool {
    let Some(di) = p.var_index("d") else { return false };
    let top = 1u32 << k;
    let max_d = p.terms().map(|(m, _)| m.exps()[di] as u32).max().unwrap_or(0);
    if max_d != top {
        return false;
    }
    let lead: Vec<_> = p.terms().filter(|(m, _)| m.exps()[di] as u32 == top).collect();
    lead.len() == 1
        && lead[0].1.is_one()
        && lead[0].0.exps().iter().enumerate().all(|(i, &e)| i == di || e == 0)
}

/// Total degree in the spatial variables `x`, `y`, `x1`, `x2`, ….
pub fn xy_degree(p: &SparsePoly) -> u32 {
    let idx: Vec<usize> = p
        .vars()
        .iter()
        .enumerate()
        .filter(|(_, v)| is_spatial_var(v))
        .map(|(i, _)| i)
        .collect();
    p.degree_in(&idx)
}

fn is_spatial_var(v: &str) -> bool {
    v == "x" || v == "y" || (v.len() > 1 && v.starts_with('x') && v[1..].chars().all(|c| c.is_ascii_digit()))
}
