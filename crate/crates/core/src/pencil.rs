//! Symmetric affine matrix pencils built as tensor sums of per-focus blocks.
//!
//! A pencil is `C + Σ_v v·M_v` with symmetric constant matrices `C` and
//! `M_v`, stored exactly. Block order is reversed when the planar and
//! spatial pencils are assembled so that focus `i` drives bit `i-1` of the
//! row index; this reproduces the classical 4×4 ellipse and 8×8 3-ellipse
//! matrices entry for entry.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::FociConfig;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};

pub type Assignment<T> = BTreeMap<String, T>;

/// Build an [`Assignment`] from `(name, value)` pairs.
pub fn assignment<T: Clone>(pairs: &[(&str, T)]) -> Assignment<T> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub const PENCIL_SCHEMA: &str = "kellipse.pencil/v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePencil {
    vars: Vec<String>,
    constant: RatMatrix,
    coeffs: Vec<RatMatrix>,
}

impl AffinePencil {
    pub fn new(vars: Vec<String>, constant: RatMatrix, coeffs: Vec<RatMatrix>) -> Result<Self> {
        if vars.len() != coeffs.len() {
            return Err(Error::invalid("one coefficient matrix per variable is required"));
        }
        let m = constant.size();
        if coeffs.iter().any(|c| c.size() != m) {
            return Err(Error::invalid("coefficient matrices differ in size"));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::invalid(format!("duplicate variable `{v}`")));
            }
        }
        if !constant.is_symmetric() {
            return Err(Error::NonSymmetric { index: 0 });
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_symmetric()) {
            return Err(Error::invalid(format!("coefficient matrix of `{}` is not symmetric", vars[i])));
        }
        Ok(AffinePencil { vars, constant, coeffs })
    }

    /// A pencil with no variables.
    pub fn constant(m: RatMatrix) -> Result<Self> {
        Self::new(Vec::new(), m, Vec::new())
    }

    pub fn size(&self) -> usize {
        self.constant.size()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn constant_matrix(&self) -> &RatMatrix {
        &self.constant
    }

    pub fn coeff(&self, var: &str) -> Option<&RatMatrix> {
        self.var_index(var).map(|i| &self.coeffs[i])
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&str, &RatMatrix)> {
        self.vars.iter().map(String::as_str).zip(&self.coeffs)
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Adds `var · I` (or `value · I` into the constant when `var` is `None`).
    pub fn add_identity(&self, var: Option<&str>, value: &Rational) -> AffinePencil {
        let mut out = self.clone();
        let id = RatMatrix::identity(self.size());
        match var {
            None => out.constant.add_scaled(&id, value),
            Some(name) => match out.var_index(name) {
                Some(i) => out.coeffs[i].add_scaled(&id, value),
                None => {
                    out.vars.push(name.to_string());
                    out.coeffs.push(id.scale(value));
                }
            },
        }
        out
    }

    /// Substitute a fixed value for `var`, folding it into the constant.
    pub fn fix(&self, var: &str, value: &Rational) -> Result<AffinePencil> {
        let i = self
            .var_index(var)
            .ok_or_else(|| Error::MissingVariable(var.to_string()))?;
        let mut out = self.clone();
        let c = out.coeffs.remove(i);
        out.vars.remove(i);
        out.constant.add_scaled(&c, value);
        Ok(out)
    }

    /// Same pencil with variables listed in `order` (missing ones get zero matrices).
    pub fn with_var_order(&self, order: &[&str]) -> Result<AffinePencil> {
        if let Some(v) = self.vars.iter().find(|v| !order.contains(&v.as_str())) {
            return Err(Error::invalid(format!("variable `{v}` missing from ordering")));
        }
        let coeffs = order
            .iter()
            .map(|v| self.coeff(v).cloned().unwrap_or_else(|| RatMatrix::zeros(self.size())))
            .collect();
        AffinePencil::new(order.iter().map(|s| s.to_string()).collect(), self.constant.clone(), coeffs)
    }

    fn check_assignment<T>(&self, point: &Assignment<T>) -> Result<()> {
        match self.vars.iter().find(|v| !point.contains_key(*v)) {
            Some(v) => Err(Error::MissingVariable(v.clone())),
            None => Ok(()),
        }
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, point: &Assignment<Rational>) -> Result<RatMatrix> {
        self.check_assignment(point)?;
        let mut out = self.constant.clone();
        for (v, c) in self.vars.iter().zip(&self.coeffs) {
            out.add_scaled(c, &point[v]);
        }
        Ok(out)
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, point: &Assignment<f64>) -> Result<DMatrix<f64>> {
        self.check_assignment(point)?;
        let mut values = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let x = point[v];
            if x.is_nan() {
                return Err(Error::NotANumber(v.clone()));
            }
            values.push(x);
        }
        Ok(self.to_f64().eval(&values))
    }

    /// Floating-point copy for repeated evaluation.
    pub fn to_f64(&self) -> PencilF64 {
        PencilF64 {
            constant: self.constant.to_f64(),
            coeffs: self.coeffs.iter().map(RatMatrix::to_f64).collect(),
        }
    }

    /// Restriction to the line `origin + t·direction`, returned as `(M₀, M₁)`
    /// with `M(t) = M₀ + t·M₁`. Variables absent from `direction` stay fixed.
    pub fn line_restriction(
        &self,
        origin: &Assignment<Rational>,
        direction: &Assignment<Rational>,
    ) -> Result<(RatMatrix, RatMatrix)> {
        let m0 = self.eval_exact(origin)?;
        let mut m1 = RatMatrix::zeros(self.size());
        for (v, c) in self.vars.iter().zip(&self.coeffs) {
            if let Some(s) = direction.get(v) {
                m1.add_scaled(c, s);
            }
        }
        Ok((m0, m1))
    }

    pub fn to_json(&self) -> PencilJson {
        let mut matrices = BTreeMap::new();
        matrices.insert("const".to_string(), matrix_strings(&self.constant));
        for (v, c) in self.vars.iter().zip(&self.coeffs) {
            matrices.insert(v.clone(), matrix_strings(c));
        }
        PencilJson {
            schema: PENCIL_SCHEMA.to_string(),
            size: self.size(),
            vars: self.vars.clone(),
            matrices,
        }
    }

    pub fn from_json(json: &PencilJson) -> Result<Self> {
        if json.schema != PENCIL_SCHEMA {
            return Err(Error::invalid(format!("unsupported pencil schema `{}`", json.schema)));
        }
        let parse = |name: &str| -> Result<RatMatrix> {
            let rows = json
                .matrices
                .get(name)
                .ok_or_else(|| Error::invalid(format!("pencil JSON lacks matrix `{name}`")))?;
            if rows.len() != json.size || rows.iter().any(|r| r.len() != json.size) {
                return Err(Error::invalid(format!("matrix `{name}` is not {0}×{0}", json.size)));
            }
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(RatMatrix::from_rows(rows))
        };
        let constant = parse("const")?;
        let coeffs = json.vars.iter().map(|v| parse(v)).collect::<Result<Vec<_>>>()?;
        Self::new(json.vars.clone(), constant, coeffs)
    }
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    m.rows().map(|r| r.iter().map(rational::format).collect()).collect()
}

/// Serialized pencil: `{schema, size, vars, matrices: {var | "const": rows}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PencilJson {
    pub schema: String,
    pub size: usize,
    pub vars: Vec<String>,
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

/// Floating-point pencil, evaluated with values in variable order.
#[derive(Debug, Clone)]
pub struct PencilF64 {
    constant: DMatrix<f64>,
    coeffs: Vec<DMatrix<f64>>,
}

impl PencilF64 {
    pub fn eval(&self, values: &[f64]) -> DMatrix<f64> {
        assert_eq!(values.len(), self.coeffs.len());
        let mut out = self.constant.clone();
        for (c, &v) in self.coeffs.iter().zip(values) {
            if v != 0.0 {
                out += c * v;
            }
        }
        out
    }

    pub fn min_eigenvalue(&self, values: &[f64]) -> f64 {
        linalg::min_eigenvalue(&self.eval(values))
    }
}

/// Left-to-right tensor sum `B₁ ⊕ B₂ ⊕ … ⊕ B_r` of symmetric affine blocks.
///
/// Variables are merged in order of first appearance.
pub fn tensor_sum(blocks: &[AffinePencil]) -> Result<AffinePencil> {
    if blocks.is_empty() {
        return Err(Error::invalid("tensor sum of an empty block list"));
    }
    for (i, b) in blocks.iter().enumerate() {
        let sym = b.constant.is_symmetric() && b.coeffs.iter().all(RatMatrix::is_symmetric);
        if !sym {
            return Err(Error::NonSymmetric { index: i });
        }
    }
    let mut vars: Vec<String> = Vec::new();
    for b in blocks {
        for v in &b.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    let part = |b: &AffinePencil, var: Option<&str>| -> RatMatrix {
        match var {
            None => b.constant.clone(),
            Some(v) => b.coeff(v).cloned().unwrap_or_else(|| RatMatrix::zeros(b.size())),
        }
    };
    let sum_for = |var: Option<&str>| -> RatMatrix {
        blocks[1..]
            .iter()
            .fold(part(&blocks[0], var), |acc, b| acc.tensor_sum(&part(b, var)))
    };
    let constant = sum_for(None);
    let coeffs = vars.iter().map(|v| sum_for(Some(v))).collect();
    Ok(AffinePencil { vars, constant, coeffs })
}

fn sym2(a: Rational, b: Rational, c: Rational) -> RatMatrix {
    RatMatrix::from_rows(vec![vec![a, b.clone()], vec![b, c]])
}

/// `w·[[x−u, y−v], [y−v, −x+u]]` for a numeric focus.
pub fn planar_block(focus: &[Rational], weight: &Rational) -> AffinePencil {
    let (u, v) = (&focus[0], &focus[1]);
    let z = Rational::zero();
    let w = weight.clone();
    AffinePencil {
        vars: vec!["x".into(), "y".into()],
        constant: sym2(-(u * &w), -(v * &w), u * &w),
        coeffs: vec![sym2(w.clone(), z.clone(), -w.clone()), sym2(z.clone(), w.clone(), z)],
    }
}

/// Planar block with the focus coordinates as variables `u{i}`, `v{i}`.
pub fn symbolic_planar_block(index: usize, weight: &Rational) -> AffinePencil {
    let w = weight.clone();
    let z = Rational::zero();
    AffinePencil {
        vars: vec!["x".into(), "y".into(), format!("u{index}"), format!("v{index}")],
        constant: RatMatrix::zeros(2),
        coeffs: vec![
            sym2(w.clone(), z.clone(), -w.clone()),
            sym2(z.clone(), w.clone(), z.clone()),
            sym2(-w.clone(), z.clone(), w.clone()),
            sym2(z.clone(), -w.clone(), z),
        ],
    }
}

/// Standard `(n+1)×(n+1)` block: first row and column `w·(x − u)`, zeros elsewhere.
pub fn spatial_block(focus: &[Rational], weight: &Rational) -> AffinePencil {
    let n = focus.len();
    let m = n + 1;
    let mut constant = RatMatrix::zeros(m);
    let mut coeffs = Vec::with_capacity(n);
    for (j, u) in focus.iter().enumerate() {
        constant[(0, j + 1)] = -(u * weight);
        constant[(j + 1, 0)] = -(u * weight);
        let mut c = RatMatrix::zeros(m);
        c[(0, j + 1)] = weight.clone();
        c[(j + 1, 0)] = weight.clone();
        coeffs.push(c);
    }
    AffinePencil { vars: spatial_vars(n), constant, coeffs }
}

pub fn spatial_vars(n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("x{j}")).collect()
}

/// Weighted planar pencil `d·I + w₁B₁ ⊕ … ⊕ w_kB_k` of size `2^k`.
///
/// With `d_symbolic` the radius is the third variable `d`; otherwise the
/// configured radius is folded into the constant.
pub fn build_planar_pencil(cfg: &FociConfig, d_symbolic: bool) -> Result<AffinePencil> {
    if cfg.dimension() != 2 {
        return Err(Error::invalid(format!(
            "planar pencil needs dimension 2, got {}",
            cfg.dimension()
        )));
    }
    let blocks: Vec<AffinePencil> = cfg
        .foci()
        .iter()
        .zip(cfg.weights())
        .rev()
        .map(|(f, w)| planar_block(f, w))
        .collect();
    let sum = tensor_sum(&blocks)?;
    Ok(if d_symbolic {
        sum.add_identity(Some("d"), &Rational::one())
    } else {
        sum.add_identity(None, cfg.radius())
    })
}

/// Planar pencil with every parameter symbolic: variables
/// `x, y, d, u1, v1, …, uk, vk`. Weights default to 1.
pub fn build_symbolic_planar_pencil(k: usize, weights: Option<&[Rational]>) -> Result<AffinePencil> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let one = Rational::one();
    let weight = |i: usize| weights.map_or(&one, |w| &w[i]);
    if weights.is_some_and(|w| w.len() != k) {
        return Err(Error::invalid("weight count does not match k"));
    }
    let blocks: Vec<AffinePencil> = (1..=k)
        .rev()
        .map(|i| symbolic_planar_block(i, weight(i - 1)))
        .collect();
    let sum = tensor_sum(&blocks)?.add_identity(Some("d"), &one);
    let mut order: Vec<String> = vec!["x".into(), "y".into(), "d".into()];
    for i in 1..=k {
        order.push(format!("u{i}"));
        order.push(format!("v{i}"));
    }
    let order: Vec<&str> = order.iter().map(String::as_str).collect();
    sum.with_var_order(&order)
}

/// Spatial pencil `d·I + U₁ ⊕ … ⊕ U_k` with the standard `(n+1)`-blocks.
pub fn build_spatial_pencil(
    cfg: &FociConfig,
    block_size: usize,
    d_symbolic: bool,
) -> Result<AffinePencil> {
    let n = cfg.dimension();
    if block_size != n + 1 {
        return Err(Error::Unsupported(format!(
            "only the standard block size n+1 = {} is implemented (got {block_size})",
            n + 1
        )));
    }
    let blocks: Vec<AffinePencil> = cfg
        .foci()
        .iter()
        .zip(cfg.weights())
        .rev()
        .map(|(f, w)| spatial_block(f, w))
        .collect();
    let sum = tensor_sum(&blocks)?;
    Ok(if d_symbolic {
        sum.add_identity(Some("d"), &Rational::one())
    } else {
        sum.add_identity(None, cfg.radius())
    })
}

/// Planar pencil for dimension 2, spatial standard pencil otherwise.
pub fn build_pencil(cfg: &FociConfig, d_symbolic: bool) -> Result<AffinePencil> {
    if cfg.is_planar() {
        build_planar_pencil(cfg, d_symbolic)
    } else {
        build_spatial_pencil(cfg, cfg.dimension() + 1, d_symbolic)
    }
}

/// Smallest eigenvalue of the pencil at a numeric point.
pub fn min_eigenvalue(p: &AffinePencil, point: &Assignment<f64>) -> Result<f64> {
    Ok(linalg::min_eigenvalue(&p.eval_f64(point)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn r(v: i64) -> Rational {
        int(v)
    }

    #[test]
    fn circle_pencil() {
        let cfg = FociConfig::planar_int(&[(0, 0)], 5).unwrap();
        let p = build_planar_pencil(&cfg, false).unwrap();
        let m = p.eval_exact(&assignment(&[("x", r(3)), ("y", r(4))])).unwrap();
        assert_eq!(m, RatMatrix::from_i64(&[&[8, 4], &[4, 2]]));
        assert!(m.det().is_zero());
    }

    #[test]
    fn zero_assignment_gives_constant() {
        let cfg = FociConfig::planar_int(&[(1, 2), (3, -1), (0, 5)], 7).unwrap();
        let p = build_planar_pencil(&cfg, true).unwrap();
        let zero = assignment(&[("x", r(0)), ("y", r(0)), ("d", r(0))]);
        assert_eq!(&p.eval_exact(&zero).unwrap(), p.constant_matrix());
    }

    #[test]
    fn missing_and_nan_rejected() {
        let cfg = FociConfig::planar_int(&[(0, 0)], 1).unwrap();
        let p = build_planar_pencil(&cfg, false).unwrap();
        assert!(matches!(
            p.eval_f64(&assignment(&[("x", 1.0)])),
            Err(Error::MissingVariable(v)) if v == "y"
        ));
        assert!(matches!(
            p.eval_f64(&assignment(&[("x", 1.0), ("y", f64::NAN)])),
            Err(Error::NotANumber(_))
        ));
    }

    #[test]
    fn non_symmetric_block_reports_index() {
        let good = AffinePencil::constant(RatMatrix::identity(2)).unwrap();
        let bad = AffinePencil {
            vars: vec![],
            constant: RatMatrix::from_i64(&[&[1, 2], &[3, 4]]),
            coeffs: vec![],
        };
        assert!(matches!(
            tensor_sum(&[good.clone(), good, bad]),
            Err(Error::NonSymmetric { index: 2 })
        ));
        assert!(tensor_sum(&[]).is_err());
    }

    #[test]
    fn dimension_errors() {
        let cfg = FociConfig::from_f64(&[vec![0.0, 0.0, 0.0]], None, 1.0).unwrap();
        assert!(build_planar_pencil(&cfg, false).is_err());
        assert!(matches!(build_spatial_pencil(&cfg, 3, false), Err(Error::Unsupported(_))));
    }

    #[test]
    fn spatial_size() {
        let cfg = FociConfig::from_f64(&[vec![0.0, 0.0], vec![1.0, 0.0]], None, 3.0).unwrap();
        assert_eq!(build_spatial_pencil(&cfg, 3, false).unwrap().size(), 9);
    }

    #[test]
    fn json_round_trip() {
        let p = build_symbolic_planar_pencil(2, None).unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back: PencilJson = serde_json::from_str(&text).unwrap();
        assert_eq!(AffinePencil::from_json(&back).unwrap(), p);
    }

    #[test]
    fn fix_folds_into_constant() {
        let cfg = FociConfig::planar_int(&[(1, 1), (2, 3)], 6).unwrap();
        let sym = build_planar_pencil(&cfg, true).unwrap();
        let fixed = build_planar_pencil(&cfg, false).unwrap();
        assert_eq!(sym.fix("d", &r(6)).unwrap(), fixed);
    }
}
